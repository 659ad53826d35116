use serde::{Deserialize, Serialize};

use crate::physics::{Marble, MotionState, RampSegment, Vec2};

pub const DEFAULT_CAPTURE_RADIUS_MM: f64 = 5.0;

/// A half-open on-window `[on, off)` in ms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatchWindow {
    pub on: f64,
    pub off: f64,
}

impl LatchWindow {
    pub fn new(on: f64, off: f64) -> Self {
        Self { on, off }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.on <= t && t < self.off
    }
}

/// Electromagnet that captures magnetic marbles at a hold point and releases them on schedule.
///
/// Field strength and coil specs are not modelled; capture is an instantaneous snap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElectromagnetLatch {
    pub id: String,
    pub ramp: String,
    /// Arc position of the hold point, mm.
    pub hold: f64,
    pub capture_radius: f64,
    pub schedule: Vec<LatchWindow>,
}

impl ElectromagnetLatch {
    pub fn new(id: impl Into<String>, ramp: impl Into<String>, hold: f64, schedule: Vec<LatchWindow>) -> Self {
        Self {
            id: id.into(),
            ramp: ramp.into(),
            hold,
            capture_radius: DEFAULT_CAPTURE_RADIUS_MM,
            schedule,
        }
    }

    /// Windows must be well-formed, ordered and pairwise disjoint.
    pub fn schedule_is_ordered(&self) -> bool {
        self.schedule.iter().all(|w| w.on.is_finite() && w.off.is_finite() && w.on < w.off)
            && self.schedule.windows(2).all(|p| p[0].off <= p[1].on)
    }

    pub(crate) fn active_at_tick(&self, tick: u64, ticks_for: impl Fn(f64) -> u64) -> bool {
        self.schedule
            .iter()
            .any(|w| ticks_for(w.on) <= tick && tick < ticks_for(w.off))
    }
}

pub fn latch_active(latch: &ElectromagnetLatch, t: f64) -> bool {
    latch.schedule.iter().any(|w| w.contains(t))
}

/// Snaps `marble` onto the hold point when the latch is on, the marble carries
/// ferromagnetic powder and it is within the capture radius. `ramp` must be the
/// ramp the marble is rolling on.
pub fn try_capture(
    latch: &ElectromagnetLatch,
    latch_index: usize,
    ramp: &RampSegment,
    marble: &mut Marble,
    t: f64,
) -> bool {
    latch_active(latch, t) && capture_if_in_reach(latch, latch_index, ramp, marble)
}

/// Capture test without the schedule check; the world evaluates schedules on ticks.
pub(crate) fn capture_if_in_reach(
    latch: &ElectromagnetLatch,
    latch_index: usize,
    ramp: &RampSegment,
    marble: &mut Marble,
) -> bool {
    let MotionState::OnRamp { arc, .. } = marble.state else {
        return false;
    };
    if ramp.id != latch.ramp
        || marble.coating.magnetic_fraction <= 0.0
        || (arc - latch.hold).abs() > latch.capture_radius
    {
        return false;
    }
    marble.state = MotionState::Held { latch: latch_index };
    marble.vel = Vec2::ZERO;
    marble.pos = ramp.center_at(latch.hold, marble.radius());
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::{CoatingSpec, Direction, MarbleId};

    fn ramp() -> RampSegment {
        RampSegment {
            id: "left".into(),
            anchor: Vec2::new(-100.0, 30.0),
            slope_deg: 16.0,
            direction: Direction::PlusX,
            length: 100.0,
            rolling_factor: 5.0 / 7.0,
        }
    }

    fn rolling(coating: CoatingSpec, arc: f64) -> Marble {
        let mut m = Marble::new(MarbleId(0), Vec2::ZERO, 11.6, coating, 2.5);
        m.state = MotionState::OnRamp { ramp: 0, arc };
        m.vel = ramp().tangent() * 0.3;
        m.pos = ramp().center_at(arc, m.radius());
        m
    }

    fn latch() -> ElectromagnetLatch {
        ElectromagnetLatch::new("em1", "left", 80.0, vec![LatchWindow::new(0.0, 500.0)])
    }

    #[test]
    fn window_is_half_open() {
        let l = latch();
        assert!(latch_active(&l, 250.0));
        assert!(latch_active(&l, 0.0));
        assert!(!latch_active(&l, 500.0));
        let empty = ElectromagnetLatch::new("e", "left", 0.0, vec![]);
        assert!(!latch_active(&empty, 0.0));
        assert!(!latch_active(&empty, 1e9));
    }

    #[test]
    fn captures_magnetic_marble_near_hold_point() {
        let mut m = rolling(CoatingSpec::ni_uhdpe(), 77.0);
        assert!(try_capture(&latch(), 3, &ramp(), &mut m, 100.0));
        assert_eq!(m.state, MotionState::Held { latch: 3 });
        assert_eq!(m.vel, Vec2::ZERO);
        let expected = ramp().center_at(80.0, m.radius());
        assert!((m.pos - expected).norm() < 1e-12);
    }

    #[test]
    fn ignores_non_magnetic_far_or_inactive() {
        let mut m = rolling(CoatingSpec::uhdpe(), 80.0);
        assert!(!try_capture(&latch(), 0, &ramp(), &mut m, 100.0));
        let mut m = rolling(CoatingSpec::ni(), 80.0);
        assert!(!try_capture(&latch(), 0, &ramp(), &mut m, 600.0));
        let mut m = rolling(CoatingSpec::ni(), 60.0);
        assert!(!try_capture(&latch(), 0, &ramp(), &mut m, 100.0));
        assert!(matches!(m.state, MotionState::OnRamp { .. }));
    }

    #[test]
    fn schedule_ordering() {
        let mut l = latch();
        assert!(l.schedule_is_ordered());
        l.schedule.push(LatchWindow::new(400.0, 700.0));
        assert!(!l.schedule_is_ordered());
    }
}
