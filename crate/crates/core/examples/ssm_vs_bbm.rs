//! Where a collided pair lands relative to the two lone-marble paths, under each collision model.

use marble_gate::fixtures;
use marble_gate::logic::classify_model;
use marble_gate::netlist::{assignment, build_world};
use marble_gate::physics::CollisionModel;
use marble_gate::trace::{run, Trace};

fn trace(model: CollisionModel, a: bool, b: bool) -> Trace {
    let mut spec = fixtures::gate();
    spec.config.model = Some(model);
    let w = build_world(&spec, &assignment(&[("A", a), ("B", b)])).expect("gate world");
    run(w, 5000.0, 120.0).expect("run")
}

fn main() {
    for model in [CollisionModel::Ssm, CollisionModel::Bbm] {
        let (a, b, ab) = (trace(model, true, false), trace(model, false, true), trace(model, true, true));
        let xs = |t: &Trace| t.marbles.iter().map(|m| format!("{:+.2}", m.pos.x)).collect::<Vec<_>>().join(" ");
        println!("{model}: lone A lands at {}, lone B at {}, pair at {}", xs(&a), xs(&b), xs(&ab));
        println!("  classified as {:?}", classify_model(&ab, &a, &b).expect("same geometry"));
    }
}
