//! Coating-dependent evaporation.
//!
//! Only initial evaporation rates are known for each coating, so the model
//! holds that rate constant for the whole life of a marble: volume falls
//! linearly until the marble dries out. Water is taken at exactly 1 mg/µL,
//! so a rate in mg/min is also a rate in µL/min. The coating mass is never
//! touched.

use serde::{Deserialize, Serialize};

use crate::physics::{CoatingKind, Marble, MotionState, PhysicsError, WATER_DENSITY_MG_PER_UL};

/// Initial evaporation rate per coating, mg/min, measured on 10 µL marbles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaporationTable {
    pub bare: f64,
    pub ni: f64,
    pub uhdpe: f64,
    pub ni_uhdpe: f64,
}

impl Default for EvaporationTable {
    fn default() -> Self {
        Self { bare: 0.1392, ni: 0.1133, uhdpe: 0.1107, ni_uhdpe: 0.0998 }
    }
}

impl EvaporationTable {
    pub fn rate(&self, kind: CoatingKind) -> f64 {
        match kind {
            CoatingKind::Bare => self.bare,
            CoatingKind::Ni => self.ni,
            CoatingKind::Uhdpe => self.uhdpe,
            CoatingKind::NiUhdpe => self.ni_uhdpe,
        }
    }

    pub fn set_rate(&mut self, kind: CoatingKind, rate: f64) {
        match kind {
            CoatingKind::Bare => self.bare = rate,
            CoatingKind::Ni => self.ni = rate,
            CoatingKind::Uhdpe => self.uhdpe = rate,
            CoatingKind::NiUhdpe => self.ni_uhdpe = rate,
        }
    }

    pub fn all_positive(&self) -> bool {
        CoatingKind::ALL.iter().all(|&k| self.rate(k) > 0.0 && self.rate(k).is_finite())
    }
}

/// Tabulated initial rate for a coating given by its grammar token (`bare`, `ni`, `uhdpe`, `ni_uhdpe`).
pub fn evaporation_rate(kind: &str) -> Result<f64, PhysicsError> {
    CoatingKind::from_token(kind)
        .map(|k| EvaporationTable::default().rate(k))
        .ok_or_else(|| PhysicsError::Domain(format!("unknown coating kind `{kind}`")))
}

/// Removes `minutes` worth of water at the table rate. Floors at zero and marks the marble evaporated.
pub fn apply_evaporation(marble: &Marble, minutes: f64, table: &EvaporationTable) -> Marble {
    let mut out = marble.clone();
    evaporate_in_place(&mut out, minutes, table);
    out
}

pub(crate) fn evaporate_in_place(marble: &mut Marble, minutes: f64, table: &EvaporationTable) {
    debug_assert!(minutes >= 0.0);
    if minutes <= 0.0 || marble.state == MotionState::Evaporated {
        return;
    }
    let loss = table.rate(marble.coating.kind) * minutes / WATER_DENSITY_MG_PER_UL;
    marble.volume = (marble.volume - loss).max(0.0);
    if marble.volume == 0.0 {
        marble.state = MotionState::Evaporated;
    }
}

/// Minutes until the marble dries out at a constant rate.
pub fn time_to_dryout(marble: &Marble, table: &EvaporationTable) -> Result<f64, PhysicsError> {
    if marble.state == MotionState::Evaporated || !(marble.volume > 0.0) {
        return Err(PhysicsError::Domain(format!("marble {} has already evaporated", marble.id)));
    }
    Ok(marble.volume * WATER_DENSITY_MG_PER_UL / table.rate(marble.coating.kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::{CoatingSpec, MarbleId, Vec2};

    fn drop_of(kind: CoatingKind, volume: f64) -> Marble {
        Marble::new(MarbleId(0), Vec2::ZERO, volume, CoatingSpec::of_kind(kind), 2.5)
    }

    #[test]
    fn table_values() {
        assert_eq!(evaporation_rate("bare").unwrap(), 0.1392);
        assert_eq!(evaporation_rate("ni_uhdpe").unwrap(), 0.0998);
        assert_eq!(evaporation_rate("ni").unwrap(), 0.1133);
        assert!(evaporation_rate("teflon").is_err());
    }

    #[test]
    fn linear_loss() {
        let t = EvaporationTable::default();
        let m = apply_evaporation(&drop_of(CoatingKind::Bare, 10.0), 10.0, &t);
        assert!((m.volume - 8.608).abs() < 1e-12);
        assert_eq!(m.coating_mass, 2.5);
        let same = apply_evaporation(&drop_of(CoatingKind::Bare, 10.0), 0.0, &t);
        assert_eq!(same.volume, 10.0);
        let dry = apply_evaporation(&drop_of(CoatingKind::NiUhdpe, 10.0), 200.0, &t);
        assert_eq!(dry.volume, 0.0);
        assert_eq!(dry.state, MotionState::Evaporated);
    }

    #[test]
    fn dryout_times() {
        let t = EvaporationTable::default();
        let times: Vec<f64> = CoatingKind::ALL
            .iter()
            .map(|&k| time_to_dryout(&drop_of(k, 10.0), &t).unwrap())
            .collect();
        // 10 / rate, computed by hand.
        let expected = [71.84, 88.26, 90.33, 100.20];
        for (got, want) in times.iter().zip(expected) {
            assert!((got - want).abs() < 0.01, "{got} vs {want}");
        }
        assert!(times[3] > times[2] && times[2] > times[1] && times[1] > times[0]);
    }

    #[test]
    fn dryout_of_evaporated_marble_fails() {
        let t = EvaporationTable::default();
        let dry = apply_evaporation(&drop_of(CoatingKind::Bare, 1.0), 60.0, &t);
        assert!(time_to_dryout(&dry, &t).is_err());
    }
}
