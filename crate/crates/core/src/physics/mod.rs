//! Fixed-step 2D mechanics of liquid marbles: rolling on ramps, free flight,
//! contact detection and collision resolution.
//!
//! Units: lengths in mm, time in ms, speeds in m/s (= mm/ms), volumes in µL
//! and masses in mg. The plane is vertical with `y` up.

mod collision;
mod config;
mod marble;
mod ramp;
mod vec2;
mod world;

use thiserror::Error;

pub use collision::{classify_regime, coalesce, resolve_collision, CollisionOutcome, ContactEvent, Regime};
pub use config::{CollisionModel, PhysicsConfig};
pub use marble::{
    marble_radius, CoatingKind, CoatingSpec, Marble, MarbleId, MotionState, STANDARD_DROPLET_UL,
    TYPICAL_COATING_MASS_MG, WATER_DENSITY_MG_PER_UL,
};
pub use ramp::{ramp_acceleration, Direction, RampSegment};
pub use vec2::Vec2;
pub use world::{detect_contacts, step, CollisionRecord, OutcomeKind, SpawnRecord, World};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("logic error: {0}")]
    Logic(String),
    #[error("simulation integrity error at t = {time} ms: {detail}")]
    Integrity { time: f64, detail: String },
}
