use serde::{Deserialize, Serialize};

/// Outputs of the two-input interaction gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateOutput {
    pub pass_a: bool,
    pub pass_b: bool,
    pub collide: bool,
}

/// AND on the collide channel, AND-NOT on each pass channel.
pub fn gate_semantics(a: bool, b: bool) -> GateOutput {
    GateOutput { pass_a: a && !b, pass_b: !a && b, collide: a && b }
}

/// (sum, carry) from merging the two pass channels.
pub fn half_adder(a: bool, b: bool) -> (bool, bool) {
    let g = gate_semantics(a, b);
    (g.pass_a || g.pass_b, g.collide)
}

/// Two cascaded gates. The survivor of the first feeds the second; either collision is a carry.
pub fn full_adder(a: bool, b: bool, c_in: bool) -> (bool, bool) {
    let g1 = gate_semantics(a, b);
    let s1 = g1.pass_a || g1.pass_b;
    let g2 = gate_semantics(s1, c_in);
    (g2.pass_a || g2.pass_b, g1.collide || g2.collide)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: [bool; 2] = [false, true];

    #[test]
    fn gate_rows() {
        assert_eq!(gate_semantics(true, false), GateOutput { pass_a: true, pass_b: false, collide: false });
        assert_eq!(gate_semantics(true, true), GateOutput { pass_a: false, pass_b: false, collide: true });
        assert_eq!(gate_semantics(false, false), GateOutput { pass_a: false, pass_b: false, collide: false });
    }

    #[test]
    fn channels_exclusive() {
        for a in BITS {
            for b in BITS {
                let g = gate_semantics(a, b);
                assert!(!(g.pass_a && g.pass_b));
                assert!(!g.collide || (!g.pass_a && !g.pass_b));
            }
        }
    }

    #[test]
    fn half_adder_is_xor_and() {
        assert_eq!(half_adder(true, true), (false, true));
        assert_eq!(half_adder(true, false), (true, false));
        assert_eq!(half_adder(false, false), (false, false));
    }

    #[test]
    fn full_adder_is_arithmetic() {
        for a in BITS {
            for b in BITS {
                for c in BITS {
                    let (s, k) = full_adder(a, b, c);
                    assert_eq!(2 * k as u8 + s as u8, a as u8 + b as u8 + c as u8);
                }
            }
        }
        assert_eq!(full_adder(true, true, false), (false, true));
        assert_eq!(full_adder(false, true, false), (true, false));
        assert_eq!(full_adder(true, true, true), (true, true));
    }
}
