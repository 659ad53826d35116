use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Output channel a sink reports on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Channel {
    /// A·¬B: the A marble passed undisturbed.
    ANotB,
    /// ¬A·B: the B marble passed undisturbed.
    NotAB,
    /// A·B: the marbles met.
    AB,
    Sum,
    Carry,
}

impl Channel {
    pub const ALL: [Channel; 5] = [Channel::ANotB, Channel::NotAB, Channel::AB, Channel::Sum, Channel::Carry];

    /// Token used by the netlist grammar and in CSV headers.
    pub fn token(self) -> &'static str {
        match self {
            Channel::ANotB => "A_NOT_B",
            Channel::NotAB => "NOT_A_B",
            Channel::AB => "AB",
            Channel::Sum => "SUM",
            Channel::Carry => "CARRY",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Channel::ANotB => "A·¬B",
            Channel::NotAB => "¬A·B",
            Channel::AB => "A·B",
            Channel::Sum => "Sum",
            Channel::Carry => "Carry",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Channel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Channel::ALL
            .into_iter()
            .find(|c| c.token().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown channel `{s}`"))
    }
}

/// A catch line: a marble whose center falls through `floor` with x inside `x` ends here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SinkRegion {
    pub id: String,
    pub label: Channel,
    /// (lo, hi), mm.
    pub x: (f64, f64),
    /// mm.
    pub floor: f64,
}

impl SinkRegion {
    pub fn new(id: impl Into<String>, label: Channel, lo: f64, hi: f64, floor: f64) -> Self {
        Self { id: id.into(), label, x: (lo, hi), floor }
    }

    pub fn contains_x(&self, x: f64) -> bool {
        self.x.0 <= x && x <= self.x.1
    }

    /// Closed x-intervals share at least one point.
    pub fn overlaps(&self, other: &SinkRegion) -> bool {
        self.x.0 <= other.x.1 && other.x.0 <= self.x.1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for c in Channel::ALL {
            assert_eq!(c.token().parse::<Channel>().unwrap(), c);
        }
        assert!("XOR".parse::<Channel>().is_err());
    }

    #[test]
    fn overlap_is_symmetric() {
        let a = SinkRegion::new("a", Channel::Sum, -10.0, -2.0, -50.0);
        let b = SinkRegion::new("b", Channel::Carry, -2.0, 2.0, -50.0);
        let c = SinkRegion::new("c", Channel::Sum, 2.5, 10.0, -50.0);
        assert!(a.overlaps(&b) && b.overlaps(&a));
        assert!(!a.overlaps(&c) && !c.overlaps(&a));
    }
}
