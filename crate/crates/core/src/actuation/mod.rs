//! Time-domain control: droplet sources and electromagnet latches.

mod latch;
mod source;

pub(crate) use latch::capture_if_in_reach;
pub use latch::{latch_active, try_capture, ElectromagnetLatch, LatchWindow, DEFAULT_CAPTURE_RADIUS_MM};
pub use source::{emission_times, max_rate_ml_per_h, DropletSource, Emission, MAX_DROPS_PER_SECOND};
