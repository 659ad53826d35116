//! Boolean meaning of marble runs: abstract gate and adder functions, exit
//! classification and exhaustive truth tables.

mod channel;
mod classify;
mod semantics;
mod truth;

pub use channel::{Channel, SinkRegion};
pub use classify::{classify_exit, classify_model, ClassifyError, Exit, ModelClass};
pub use semantics::{full_adder, gate_semantics, half_adder, GateOutput};
pub use truth::{
    compare, evaluate_row, evaluate_truth_table, row_bits, Comparison, Expectation, RowStatus, TruthRow, TruthTable,
};
