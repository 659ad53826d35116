use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PhysicsError;

/// How a pair of marbles interacts on contact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CollisionModel {
    /// Soft spheres: finite compression time before rebound.
    Ssm,
    /// Hard spheres: instantaneous rebound.
    Bbm,
    /// Every contact merges the pair.
    FusionOnly,
    /// Every contact destroys both marbles.
    Annihilate,
}

impl CollisionModel {
    pub fn token(self) -> &'static str {
        match self {
            CollisionModel::Ssm => "ssm",
            CollisionModel::Bbm => "bbm",
            CollisionModel::FusionOnly => "fusion",
            CollisionModel::Annihilate => "annihilate",
        }
    }
}

impl fmt::Display for CollisionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for CollisionModel {
    type Err = PhysicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ssm" => Ok(CollisionModel::Ssm),
            "bbm" => Ok(CollisionModel::Bbm),
            "fusion" | "fusion_only" => Ok(CollisionModel::FusionOnly),
            "annihilate" => Ok(CollisionModel::Annihilate),
            other => Err(PhysicsError::Domain(format!("unknown collision model `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicsConfig {
    /// Integration step, ms.
    pub dt: f64,
    /// Gravitational acceleration, m/s².
    pub g: f64,
    /// Relative normal speed at and above which marbles coalesce, m/s.
    pub v_coalesce: f64,
    /// Coefficient of restitution along the contact normal.
    pub restitution: f64,
    /// Time a soft-sphere pair stays compressed, ms.
    pub contact_duration: f64,
    pub collision_model: CollisionModel,
    /// Default rolling factor for ramps that do not set their own.
    pub rolling_factor: f64,
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        Self {
            dt: 0.05,
            g: 9.81,
            v_coalesce: 0.29,
            restitution: 0.8,
            contact_duration: 10.0,
            collision_model: CollisionModel::Ssm,
            rolling_factor: 5.0 / 7.0,
        }
    }
}

impl PhysicsConfig {
    pub fn validate(&self) -> Result<(), PhysicsError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(PhysicsError::Domain(format!("dt must be positive, got {}", self.dt)));
        }
        if !(0.0..=1.0).contains(&self.restitution) {
            return Err(PhysicsError::Domain(format!(
                "restitution must be in [0, 1], got {}",
                self.restitution
            )));
        }
        if !(self.v_coalesce > 0.0) {
            return Err(PhysicsError::Domain(format!(
                "v_coalesce must be positive, got {}",
                self.v_coalesce
            )));
        }
        if !(self.contact_duration >= 0.0 && self.contact_duration.is_finite()) {
            return Err(PhysicsError::Domain("contact duration must be non-negative".into()));
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(PhysicsError::Domain(format!("g must be non-negative, got {}", self.g)));
        }
        if !(self.rolling_factor > 0.0 && self.rolling_factor <= 1.0) {
            return Err(PhysicsError::Domain("rolling factor must be in (0, 1]".into()));
        }
        Ok(())
    }

    /// Gravity in the simulation's mm/ms² units.
    pub(crate) fn g_mm_per_ms2(&self) -> f64 {
        self.g * 1e-3
    }

    /// Number of whole ticks spanning `ms`, rounding a hair below to absorb float noise.
    pub fn ticks_for(&self, ms: f64) -> u64 {
        let n = ms / self.dt;
        if n <= 0.0 {
            0
        } else {
            (n - 1e-6).ceil() as u64
        }
    }
}
