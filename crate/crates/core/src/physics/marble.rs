use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PhysicsError, Vec2};

/// Water density used for every mass conversion, mg per µL.
pub const WATER_DENSITY_MG_PER_UL: f64 = 1.0;

/// Coating mass of a typical Ni/UHDPE marble, mg.
pub const TYPICAL_COATING_MASS_MG: f64 = 2.5;

/// Droplet volume delivered by the syringe former, µL.
pub const STANDARD_DROPLET_UL: f64 = 11.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MarbleId(pub u32);

impl fmt::Display for MarbleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoatingKind {
    Bare,
    Ni,
    Uhdpe,
    NiUhdpe,
}

impl CoatingKind {
    pub const ALL: [CoatingKind; 4] = [
        CoatingKind::Bare,
        CoatingKind::Ni,
        CoatingKind::Uhdpe,
        CoatingKind::NiUhdpe,
    ];

    /// Token used by the netlist grammar.
    pub fn token(self) -> &'static str {
        match self {
            CoatingKind::Bare => "bare",
            CoatingKind::Ni => "ni",
            CoatingKind::Uhdpe => "uhdpe",
            CoatingKind::NiUhdpe => "ni_uhdpe",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        CoatingKind::ALL.into_iter().find(|k| k.token() == s)
    }

    pub fn is_magnetic(self) -> bool {
        matches!(self, CoatingKind::Ni | CoatingKind::NiUhdpe)
    }
}

impl fmt::Display for CoatingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Powder coating of a marble. Grain sizes are informational only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoatingSpec {
    pub kind: CoatingKind,
    pub magnetic_fraction: f64,
    /// Nickel grain size range, µm.
    pub ni_grain_um: Option<(f64, f64)>,
    /// UHDPE grain size, µm.
    pub uhdpe_grain_um: Option<f64>,
}

impl CoatingSpec {
    pub fn bare() -> Self {
        Self { kind: CoatingKind::Bare, magnetic_fraction: 0.0, ni_grain_um: None, uhdpe_grain_um: None }
    }

    pub fn ni() -> Self {
        Self { kind: CoatingKind::Ni, magnetic_fraction: 1.0, ni_grain_um: Some((4.0, 7.0)), uhdpe_grain_um: None }
    }

    pub fn uhdpe() -> Self {
        Self { kind: CoatingKind::Uhdpe, magnetic_fraction: 0.0, ni_grain_um: None, uhdpe_grain_um: Some(100.0) }
    }

    /// Hybrid coating. The Ni:UHDPE mix ratio is not known, so half is assumed.
    pub fn ni_uhdpe() -> Self {
        Self {
            kind: CoatingKind::NiUhdpe,
            magnetic_fraction: 0.5,
            ni_grain_um: Some((4.0, 7.0)),
            uhdpe_grain_um: Some(100.0),
        }
    }

    pub fn of_kind(kind: CoatingKind) -> Self {
        match kind {
            CoatingKind::Bare => Self::bare(),
            CoatingKind::Ni => Self::ni(),
            CoatingKind::Uhdpe => Self::uhdpe(),
            CoatingKind::NiUhdpe => Self::ni_uhdpe(),
        }
    }

    /// Checks that the magnetic fraction agrees with the kind.
    pub fn is_consistent(&self) -> bool {
        (0.0..=1.0).contains(&self.magnetic_fraction)
            && (self.magnetic_fraction > 0.0) == self.kind.is_magnetic()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MotionState {
    /// Rolling on a ramp; `arc` is the signed distance (mm) from the ramp anchor, downhill positive.
    OnRamp { ramp: usize, arc: f64 },
    Ballistic,
    Held { latch: usize },
    Merged { into: MarbleId },
    Sunk { sink: usize },
    Evaporated,
    Annihilated,
}

impl MotionState {
    pub fn is_terminal(&self) -> bool {
        matches!(
            self,
            MotionState::Merged { .. }
                | MotionState::Sunk { .. }
                | MotionState::Evaporated
                | MotionState::Annihilated
        )
    }

    /// Free to move and collide.
    pub fn is_mobile(&self) -> bool {
        matches!(self, MotionState::OnRamp { .. } | MotionState::Ballistic)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            MotionState::OnRamp { .. } => "on_ramp",
            MotionState::Ballistic => "ballistic",
            MotionState::Held { .. } => "held",
            MotionState::Merged { .. } => "merged",
            MotionState::Sunk { .. } => "sunk",
            MotionState::Evaporated => "evaporated",
            MotionState::Annihilated => "annihilated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marble {
    pub id: MarbleId,
    pub pos: Vec2,
    pub vel: Vec2,
    /// µL (1 µL = 1 mm³).
    pub volume: f64,
    pub coating: CoatingSpec,
    /// mg.
    pub coating_mass: f64,
    pub state: MotionState,
}

impl Marble {
    pub fn new(id: MarbleId, pos: Vec2, volume: f64, coating: CoatingSpec, coating_mass: f64) -> Self {
        Self { id, pos, vel: Vec2::ZERO, volume, coating, coating_mass, state: MotionState::Ballistic }
    }

    /// Radius in mm. Evaporated marbles have zero extent.
    pub fn radius(&self) -> f64 {
        if self.volume > 0.0 {
            radius_of(self.volume)
        } else {
            0.0
        }
    }

    /// Total mass in mg: water plus coating.
    pub fn mass(&self) -> f64 {
        self.volume * WATER_DENSITY_MG_PER_UL + self.coating_mass
    }

    pub fn momentum(&self) -> Vec2 {
        self.vel * self.mass()
    }

    /// Kinetic energy in mg·(m/s)² (= µJ).
    pub fn kinetic_energy(&self) -> f64 {
        0.5 * self.mass() * self.vel.norm_sq()
    }

    pub fn is_active(&self) -> bool {
        !self.state.is_terminal()
    }
}

fn radius_of(volume: f64) -> f64 {
    (3.0 * volume / (4.0 * PI)).cbrt()
}

/// Sphere radius (mm) for a liquid volume in µL.
pub fn marble_radius(volume: f64) -> Result<f64, PhysicsError> {
    if volume > 0.0 && volume.is_finite() {
        Ok(radius_of(volume))
    } else {
        Err(PhysicsError::Domain(format!("marble volume must be positive, got {volume} uL")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: bisection on (4/3)·π·r³ = V.
    fn radius_by_bisection(volume: f64) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, 10.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if 4.0 / 3.0 * PI * mid.powi(3) < volume {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn radius_examples() {
        for (v, expected) in [(11.6, 1.404), (10.0, 1.337), (23.2, 1.769)] {
            let r = marble_radius(v).unwrap();
            assert!((r - radius_by_bisection(v)).abs() < 1e-12);
            assert!((r - expected).abs() < 5e-4, "{v} uL -> {r}");
        }
        let unit = marble_radius(4.0 * PI / 3.0).unwrap();
        assert!((unit - 1.0).abs() < 1e-12);
    }

    #[test]
    fn radius_rejects_non_positive() {
        assert!(marble_radius(0.0).is_err());
        assert!(marble_radius(-1.0).is_err());
        assert!(marble_radius(f64::NAN).is_err());
    }

    #[test]
    fn coating_consistency() {
        for kind in CoatingKind::ALL {
            assert!(CoatingSpec::of_kind(kind).is_consistent());
            assert_eq!(CoatingKind::from_token(kind.token()), Some(kind));
        }
        let mut bad = CoatingSpec::bare();
        bad.magnetic_fraction = 0.2;
        assert!(!bad.is_consistent());
    }
}
