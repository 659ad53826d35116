use serde::{Deserialize, Serialize};

use crate::actuation::{DropletSource, ElectromagnetLatch};
use crate::lifetime::EvaporationTable;
use crate::logic::SinkRegion;
use crate::physics::{CoatingKind, CollisionModel, Direction, PhysicsConfig, RampSegment, Vec2};

/// Quiescence horizon used when a netlist does not set one, ms.
pub const DEFAULT_HORIZON_MS: f64 = 5000.0;

/// Physics and run settings a netlist may override. Unset fields keep their defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConfigOverrides {
    pub dt: Option<f64>,
    pub g: Option<f64>,
    pub v_coalesce: Option<f64>,
    pub restitution: Option<f64>,
    pub contact_duration: Option<f64>,
    pub model: Option<CollisionModel>,
    pub rolling_factor: Option<f64>,
    pub horizon: Option<f64>,
    pub evaporation: Option<bool>,
    pub evap_bare: Option<f64>,
    pub evap_ni: Option<f64>,
    pub evap_uhdpe: Option<f64>,
    pub evap_ni_uhdpe: Option<f64>,
}

impl ConfigOverrides {
    pub fn is_empty(&self) -> bool {
        *self == ConfigOverrides::default()
    }

    pub fn physics(&self) -> PhysicsConfig {
        let d = PhysicsConfig::default();
        PhysicsConfig {
            dt: self.dt.unwrap_or(d.dt),
            g: self.g.unwrap_or(d.g),
            v_coalesce: self.v_coalesce.unwrap_or(d.v_coalesce),
            restitution: self.restitution.unwrap_or(d.restitution),
            contact_duration: self.contact_duration.unwrap_or(d.contact_duration),
            collision_model: self.model.unwrap_or(d.collision_model),
            rolling_factor: self.rolling_factor.unwrap_or(d.rolling_factor),
        }
    }

    pub fn horizon_ms(&self) -> f64 {
        self.horizon.unwrap_or(DEFAULT_HORIZON_MS)
    }

    pub fn evaporation_table(&self) -> EvaporationTable {
        let mut t = EvaporationTable::default();
        for (kind, rate) in [
            (CoatingKind::Bare, self.evap_bare),
            (CoatingKind::Ni, self.evap_ni),
            (CoatingKind::Uhdpe, self.evap_uhdpe),
            (CoatingKind::NiUhdpe, self.evap_ni_uhdpe),
        ] {
            if let Some(r) = rate {
                t.set_rate(kind, r);
            }
        }
        t
    }
}

/// A ramp declaration. `k` falls back to the circuit-wide rolling factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RampDecl {
    pub id: String,
    pub anchor: Vec2,
    pub slope_deg: f64,
    pub direction: Direction,
    pub length: f64,
    pub k: Option<f64>,
}

impl RampDecl {
    pub fn segment(&self, default_k: f64) -> RampSegment {
        RampSegment {
            id: self.id.clone(),
            anchor: self.anchor,
            slope_deg: self.slope_deg,
            direction: self.direction,
            length: self.length,
            rolling_factor: self.k.unwrap_or(default_k),
        }
    }
}

/// A parsed circuit netlist.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub config: ConfigOverrides,
    pub ramps: Vec<RampDecl>,
    pub latches: Vec<ElectromagnetLatch>,
    pub sources: Vec<DropletSource>,
    pub sinks: Vec<SinkRegion>,
}

impl CircuitSpec {
    /// Input names in order of first appearance among the sources.
    pub fn inputs(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for s in &self.sources {
            if !out.contains(&s.input) {
                out.push(s.input.clone());
            }
        }
        out
    }

    pub fn ramp(&self, id: &str) -> Option<&RampDecl> {
        self.ramps.iter().find(|r| r.id == id)
    }

    /// Output labels present among the sinks, in canonical channel order.
    pub fn channels(&self) -> Vec<crate::logic::Channel> {
        let mut out: Vec<_> = self.sinks.iter().map(|s| s.label).collect();
        out.sort();
        out.dedup();
        out
    }
}
