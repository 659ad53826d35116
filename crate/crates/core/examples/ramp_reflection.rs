//! A lone marble crosses the gap, lands on a lower opposing ramp, rolls up, turns and comes back.

use marble_gate::fixtures;
use marble_gate::logic::classify_exit;
use marble_gate::netlist::{assignment, build_world};
use marble_gate::physics::MotionState;
use marble_gate::trace::run;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = fixtures::reflector();
    let w = build_world(&spec, &assignment(&[("A", true)]))?;
    let right = w.ramp_index("right").expect("reflector has a right ramp");
    let tr = run(w, 5000.0, 200.0)?;
    let mut last = "";
    for r in &tr.records {
        if r.state != last {
            println!("{:>8.2} ms  x={:+8.2} y={:+8.2}  vx={:+.3}  {}", r.t_ms, r.x, r.y, r.vx, r.state);
            last = &r.state;
        }
    }
    let turn = tr.records.iter().filter(|r| r.state == "on_ramp" && r.x > 0.0).min_by(|a, b| a.vx.abs().total_cmp(&b.vx.abs()));
    if let Some(t) = turn {
        println!("turns near x={:+.2} on ramp {}", t.x, tr.ramps[right].id);
    }
    let exits = classify_exit(&tr, &spec.sinks)?;
    for (id, e) in exits {
        println!("{id}: {e:?}");
    }
    assert!(matches!(tr.marbles[0].state, MotionState::Sunk { .. }));
    Ok(())
}
