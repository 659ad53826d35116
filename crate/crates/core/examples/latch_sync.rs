//! Two latches hold marbles that arrived at different times and drop them together.

use marble_gate::fixtures;
use marble_gate::netlist::{assignment, build_world};
use marble_gate::actuation::Emission;
use marble_gate::physics::MotionState;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut spec = fixtures::gate();
    // B is formed 150 ms late
    for s in &mut spec.sources {
        if s.input == "B" {
            s.emission = Some(Emission::Times(vec![150.0]));
        }
    }
    let mut w = build_world(&spec, &assignment(&[("A", true), ("B", true)]))?;
    let mut held_since = [None, None];
    let mut released = [None, None];
    while w.time() < 800.0 {
        w.advance()?;
        for (i, m) in w.marbles.iter().enumerate().take(2) {
            match m.state {
                MotionState::Held { .. } if held_since[i].is_none() => held_since[i] = Some(w.time()),
                MotionState::OnRamp { .. } if held_since[i].is_some() && released[i].is_none() => released[i] = Some(w.time()),
                _ => {}
            }
        }
    }
    for i in 0..2 {
        println!("m{i}: captured at {:.2} ms, released at {:.2} ms", held_since[i].unwrap_or(f64::NAN), released[i].unwrap_or(f64::NAN));
    }
    let (a, b) = (&w.marbles[0], &w.marbles[1]);
    println!("mirror deviation at t={:.0} ms: {:.2e} mm", w.time(), (a.pos.x + b.pos.x).abs().max((a.pos.y - b.pos.y).abs()));
    Ok(())
}
