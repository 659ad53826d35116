#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod actuation;
pub mod cli;
pub mod fixtures;
pub mod lifetime;
pub mod logic;
pub mod netlist;
pub mod physics;
pub mod repro;
pub mod trace;
