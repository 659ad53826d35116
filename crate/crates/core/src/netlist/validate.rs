use std::fmt;

use serde::{Deserialize, Serialize};

use super::spec::CircuitSpec;
use crate::actuation::Emission;
use crate::physics::CoatingSpec;

/// A problem in an otherwise well-formed netlist. `ids` lists the declarations involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticError {
    pub ids: Vec<String>,
    pub message: String,
}

impl fmt::Display for SemanticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for SemanticError {}

fn err(out: &mut Vec<SemanticError>, ids: &[&str], message: String) {
    out.push(SemanticError { ids: ids.iter().map(|s| s.to_string()).collect(), message });
}

/// Checks everything the parser cannot: references, ranges, overlaps. Never fails; returns the list.
pub fn validate(spec: &CircuitSpec) -> Vec<SemanticError> {
    let mut out = Vec::new();
    let phys = spec.config.physics();
    if let Err(e) = phys.validate() {
        err(&mut out, &["config"], format!("config: {e}"));
    }
    let horizon = spec.config.horizon_ms();
    if !(horizon > 0.0) {
        err(&mut out, &["config"], format!("config: horizon must be positive, got {horizon}"));
    }
    if !spec.config.evaporation_table().all_positive() {
        err(&mut out, &["config"], "config: evaporation rates must be positive".into());
    }

    for r in &spec.ramps {
        if let Err(e) = r.segment(phys.rolling_factor).validate() {
            err(&mut out, &[&r.id], e.to_string());
        }
    }

    for l in &spec.latches {
        match spec.ramp(&l.ramp) {
            None => err(&mut out, &[&l.id, &l.ramp], format!("latch {} references unknown ramp {}", l.id, l.ramp)),
            Some(r) if !(0.0..=r.length).contains(&l.hold) => err(
                &mut out,
                &[&l.id, &l.ramp],
                format!("latch {} hold point {} mm is outside ramp {} (length {} mm)", l.id, l.hold, r.id, r.length),
            ),
            Some(_) => {}
        }
        if !l.schedule_is_ordered() {
            err(&mut out, &[&l.id], format!("latch {} windows must be well-formed, ordered and non-overlapping", l.id));
        }
        if !(l.capture_radius > 0.0) {
            err(&mut out, &[&l.id], format!("latch {} capture radius must be positive", l.id));
        }
    }

    if spec.sources.is_empty() {
        err(&mut out, &[], "circuit has no source".into());
    }
    for (i, s) in spec.sources.iter().enumerate() {
        match spec.ramp(&s.ramp) {
            None => err(&mut out, &[&s.id, &s.ramp], format!("source {} references unknown ramp {}", s.id, s.ramp)),
            Some(r) if !(0.0..=r.length).contains(&s.entry) => err(
                &mut out,
                &[&s.id, &s.ramp],
                format!("source {} entry point {} mm is outside ramp {}", s.id, s.entry, r.id),
            ),
            Some(_) => {}
        }
        if let Some(prev) = spec.sources[..i].iter().find(|p| p.input == s.input) {
            err(&mut out, &[&prev.id, &s.id], format!("input {} is bound to both {} and {}", s.input, prev.id, s.id));
        }
        if !(s.volume > 0.0) {
            err(&mut out, &[&s.id], format!("source {} volume must be positive", s.id));
        }
        if !(s.coating_mass >= 0.0) {
            err(&mut out, &[&s.id], format!("source {} coating mass must be non-negative", s.id));
        }
        if s.coating != CoatingSpec::of_kind(s.coating.kind) || !s.coating.is_consistent() {
            err(&mut out, &[&s.id], format!("source {} has a non-standard coating description", s.id));
        }
        match &s.emission {
            None => err(&mut out, &[&s.id], format!("source {} needs `t=` times or a `rate=`", s.id)),
            Some(Emission::FeedRate(r)) if !(*r > 0.0) => {
                err(&mut out, &[&s.id], format!("source {} feed rate must be positive", s.id))
            }
            Some(Emission::Times(ts)) => {
                if ts.is_empty() || ts[0] < 0.0 || ts.windows(2).any(|w| w[0] >= w[1]) {
                    err(&mut out, &[&s.id], format!("source {} times must be non-negative and strictly increasing", s.id));
                }
            }
            Some(_) => {}
        }
    }

    if spec.sinks.is_empty() {
        err(&mut out, &[], "circuit has no sink".into());
    }
    for (i, s) in spec.sinks.iter().enumerate() {
        if !(s.x.0 <= s.x.1) {
            err(&mut out, &[&s.id], format!("sink {} interval is empty", s.id));
        }
        for o in &spec.sinks[..i] {
            if o.overlaps(s) {
                err(&mut out, &[&o.id, &s.id], format!("sinks {} and {} overlap", o.id, s.id));
            }
        }
    }
    out
}
