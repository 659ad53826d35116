use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Channel, SinkRegion};
use crate::physics::{MarbleId, MotionState};
use crate::trace::Trace;

/// Where a marble ended up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Exit {
    Sink { sink: String, label: Channel },
    /// Dried out or destroyed before reaching a sink.
    Lost { state: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("marble {id} still in play at the end of the run ({state})")]
    Timeout { id: MarbleId, state: String },
    #[error("marble {id} ended at x = {x:.3} mm, y = {y:.3} mm, outside every sink")]
    Unclassified { id: MarbleId, x: f64, y: f64 },
    #[error("marble {0} has a broken merge chain")]
    BrokenChain(MarbleId),
    #[error("usage error: {0}")]
    Usage(String),
}

/// Exit channel for every marble in `trace`. Merged marbles report their successor's exit.
pub fn classify_exit(trace: &Trace, sinks: &[SinkRegion]) -> Result<BTreeMap<MarbleId, Exit>, ClassifyError> {
    let mut out = BTreeMap::new();
    for m in &trace.marbles {
        let mut cur = m;
        let mut hops = 0;
        while let MotionState::Merged { into } = cur.state {
            hops += 1;
            cur = match trace.marbles.get(into.0 as usize) {
                Some(next) if hops <= trace.marbles.len() => next,
                _ => return Err(ClassifyError::BrokenChain(m.id)),
            };
        }
        let exit = match cur.state {
            MotionState::Sunk { .. } => {
                let sink = sinks
                    .iter()
                    .find(|s| s.contains_x(cur.pos.x) && (cur.pos.y - s.floor).abs() < 1e-6)
                    .ok_or(ClassifyError::Unclassified { id: m.id, x: cur.pos.x, y: cur.pos.y })?;
                Exit::Sink { sink: sink.id.clone(), label: sink.label }
            }
            MotionState::Evaporated | MotionState::Annihilated => Exit::Lost { state: cur.state.tag().into() },
            s => return Err(ClassifyError::Timeout { id: m.id, state: s.tag().into() }),
        };
        out.insert(m.id, exit);
    }
    Ok(out)
}

/// Which collision model the traces look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelClass {
    Ssm,
    Bbm,
    Indeterminate,
}

/// Compares the final x of the collided run against two single-marble runs.
/// Inside both singles → SSM; outside → BBM.
pub fn classify_model(collided: &Trace, single_a: &Trace, single_b: &Trace) -> Result<ModelClass, ClassifyError> {
    if !collided.same_geometry(single_a) || !collided.same_geometry(single_b) {
        return Err(ClassifyError::Usage("traces come from different geometries".into()));
    }
    let finals = |t: &Trace| -> Vec<f64> {
        t.marbles.iter().filter(|m| !matches!(m.state, MotionState::Merged { .. })).map(|m| m.pos.x).collect()
    };
    let (fa, fb) = (finals(single_a), finals(single_b));
    if fa.len() != 1 || fb.len() != 1 {
        return Err(ClassifyError::Usage("single-marble traces must each hold exactly one marble".into()));
    }
    let (lo, hi) = if fa[0] <= fb[0] { (fa[0], fb[0]) } else { (fb[0], fa[0]) };
    let xs = finals(collided);
    if xs.is_empty() {
        return Ok(ModelClass::Indeterminate);
    }
    if xs.iter().all(|&x| lo < x && x < hi) {
        Ok(ModelClass::Ssm)
    } else if xs.iter().all(|&x| x < lo || x > hi) {
        Ok(ModelClass::Bbm)
    } else {
        Ok(ModelClass::Indeterminate)
    }
}
