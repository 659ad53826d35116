use serde::{Deserialize, Serialize};

use super::{PhysicsError, Vec2};

/// Downhill sense of a ramp along x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    PlusX,
    MinusX,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::PlusX => 1.0,
            Direction::MinusX => -1.0,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Direction::PlusX => "+x",
            Direction::MinusX => "-x",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "+x" => Some(Direction::PlusX),
            "-x" => Some(Direction::MinusX),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Direction::PlusX => Direction::MinusX,
            Direction::MinusX => Direction::PlusX,
        }
    }
}

/// A straight inclined track. `anchor` is the upper end of the running surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RampSegment {
    pub id: String,
    pub anchor: Vec2,
    pub slope_deg: f64,
    pub direction: Direction,
    pub length: f64,
    pub rolling_factor: f64,
}

impl RampSegment {
    pub fn validate(&self) -> Result<(), PhysicsError> {
        if !(self.slope_deg > 0.0 && self.slope_deg < 90.0) {
            return Err(PhysicsError::Domain(format!(
                "ramp {}: slope must be in (0, 90) deg, got {}",
                self.id, self.slope_deg
            )));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(PhysicsError::Domain(format!("ramp {}: length must be positive", self.id)));
        }
        if !(self.rolling_factor > 0.0 && self.rolling_factor <= 1.0) {
            return Err(PhysicsError::Domain(format!(
                "ramp {}: rolling factor must be in (0, 1], got {}",
                self.id, self.rolling_factor
            )));
        }
        if !self.anchor.is_finite() {
            return Err(PhysicsError::Domain(format!("ramp {}: anchor is not finite", self.id)));
        }
        Ok(())
    }

    /// Unit vector pointing downhill along the surface.
    pub fn tangent(&self) -> Vec2 {
        let th = self.slope_deg.to_radians();
        Vec2::new(self.direction.sign() * th.cos(), -th.sin())
    }

    /// Unit normal on the running (upper) side of the surface.
    pub fn normal(&self) -> Vec2 {
        let th = self.slope_deg.to_radians();
        Vec2::new(self.direction.sign() * th.sin(), th.cos())
    }

    /// Point on the surface line at arc position `arc`.
    pub fn surface_point(&self, arc: f64) -> Vec2 {
        self.anchor + self.tangent() * arc
    }

    /// Lower end of the running surface.
    pub fn lower_end(&self) -> Vec2 {
        self.surface_point(self.length)
    }

    /// Center of a marble of radius `r` resting at arc position `arc`.
    pub fn center_at(&self, arc: f64, r: f64) -> Vec2 {
        self.surface_point(arc) + self.normal() * r
    }

    /// Signed perpendicular distance of `p` from the surface line, positive on the running side.
    pub fn signed_distance(&self, p: Vec2) -> f64 {
        (p - self.anchor).dot(self.normal())
    }

    /// Arc coordinate of the foot of the perpendicular from `p`.
    pub fn project_arc(&self, p: Vec2) -> f64 {
        (p - self.anchor).dot(self.tangent())
    }

    /// The same ramp mirrored across `x = axis`.
    pub fn mirrored(&self, axis: f64, id: impl Into<String>) -> RampSegment {
        RampSegment {
            id: id.into(),
            anchor: self.anchor.mirror_x(axis),
            direction: self.direction.flipped(),
            ..self.clone()
        }
    }
}

/// Along-slope acceleration (m/s²) of a marble rolling on an incline, positive downhill.
///
/// The same value decelerates a marble travelling uphill.
pub fn ramp_acceleration(slope_deg: f64, rolling_factor: f64, g: f64) -> f64 {
    debug_assert!((0.0..90.0).contains(&slope_deg));
    debug_assert!(rolling_factor > 0.0 && rolling_factor <= 1.0);
    rolling_factor * g * slope_deg.to_radians().sin()
}
