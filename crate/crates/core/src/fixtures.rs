//! Bundled netlists.

use crate::netlist::{load, CircuitSpec, NetlistError};

/// Two-input collision gate with three output channels.
pub const GATE: &str = include_str!("../fixtures/gate.lmc");
/// The gate with both pass channels labelled SUM and the collide channel CARRY.
pub const HALF_ADDER: &str = include_str!("../fixtures/half_adder.lmc");
/// Two cascaded gates forming a one-bit full adder.
pub const FULL_ADDER: &str = include_str!("../fixtures/full_adder.lmc");
/// Offset ramps where a lone marble bounces back off the far ramp.
pub const REFLECTOR: &str = include_str!("../fixtures/reflector.lmc");

pub const ALL: [(&str, &str); 4] = [
    ("gate.lmc", GATE),
    ("half_adder.lmc", HALF_ADDER),
    ("full_adder.lmc", FULL_ADDER),
    ("reflector.lmc", REFLECTOR),
];

/// Text of a bundled netlist by file name.
pub fn text(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn gate() -> CircuitSpec {
    load(GATE).expect("bundled gate netlist is valid")
}

pub fn half_adder() -> CircuitSpec {
    load(HALF_ADDER).expect("bundled half-adder netlist is valid")
}

pub fn full_adder() -> CircuitSpec {
    load(FULL_ADDER).expect("bundled full-adder netlist is valid")
}

pub fn reflector() -> CircuitSpec {
    load(REFLECTOR).expect("bundled reflector netlist is valid")
}

/// Loads a bundled netlist by name.
pub fn load_named(name: &str) -> Option<Result<CircuitSpec, NetlistError>> {
    text(name).map(load)
}
