use serde::{Deserialize, Serialize};

use crate::physics::{CoatingSpec, PhysicsError};

/// Fastest formation cadence of the syringe marble maker, per needle.
pub const MAX_DROPS_PER_SECOND: f64 = 8.0;

/// How a source decides when to emit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Emission {
    /// Syringe feed rate in mL/h; drops form back to back starting at t = 0.
    FeedRate(f64),
    /// Explicit emission times in ms, strictly increasing.
    Times(Vec<f64>),
}

/// A syringe-fed marble former at the top of a ramp.
///
/// Marbles appear fully coated at `entry`; the powder-bed phase is not simulated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DropletSource {
    pub id: String,
    pub ramp: String,
    /// Input bit this source represents.
    pub input: String,
    /// Arc position where marbles appear, mm.
    pub entry: f64,
    pub volume: f64,
    pub coating: CoatingSpec,
    pub coating_mass: f64,
    pub emission: Option<Emission>,
}

impl DropletSource {
    /// Feed period in ms for the configured rate, if any.
    pub fn period_ms(&self) -> Option<f64> {
        match self.emission {
            Some(Emission::FeedRate(rate)) => Some(period_ms(self.volume, rate)),
            _ => None,
        }
    }
}

fn period_ms(volume_ul: f64, rate_ml_per_h: f64) -> f64 {
    // mL/h -> µL/ms
    let ul_per_ms = rate_ml_per_h * 1000.0 / 3_600_000.0;
    volume_ul / ul_per_ms
}

/// Feed rate (mL/h) that forms `MAX_DROPS_PER_SECOND` drops of `volume_ul`.
pub fn max_rate_ml_per_h(volume_ul: f64) -> f64 {
    volume_ul * MAX_DROPS_PER_SECOND * 3600.0 / 1000.0
}

/// Emission times (ms) up to and including `horizon`.
pub fn emission_times(source: &DropletSource, horizon: f64) -> Result<Vec<f64>, PhysicsError> {
    match &source.emission {
        None => Err(PhysicsError::Config(format!(
            "source {} has neither a feed rate nor explicit emission times",
            source.id
        ))),
        Some(Emission::Times(ts)) => Ok(ts.iter().copied().filter(|&t| t <= horizon).collect()),
        Some(Emission::FeedRate(rate)) => {
            if !(*rate > 0.0) || !(source.volume > 0.0) {
                return Err(PhysicsError::Config(format!(
                    "source {}: feed rate and volume must be positive",
                    source.id
                )));
            }
            let period = period_ms(source.volume, *rate);
            Ok((0..)
                .map(|n| n as f64 * period)
                .take_while(|&t| t <= horizon)
                .collect())
        }
    }
}
