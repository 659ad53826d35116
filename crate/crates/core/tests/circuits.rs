//! Whole-circuit behaviour on the bundled netlists.

use marble_gate::fixtures;
use marble_gate::logic::{
    classify_exit, classify_model, compare, evaluate_truth_table, Channel, ClassifyError, Exit, Expectation,
    ModelClass,
};
use marble_gate::netlist::{assignment, build_world, parse, serialize, validate, NetlistError};
use marble_gate::physics::{step, CollisionModel, MarbleId, MotionState, Vec2, World};
use marble_gate::trace::{run, Trace};

fn gate_run(a: bool, b: bool, model: Option<CollisionModel>) -> Trace {
    let mut spec = fixtures::gate();
    if model.is_some() {
        spec.config.model = model;
    }
    let w = build_world(&spec, &assignment(&[("A", a), ("B", b)])).unwrap();
    run(w, 5000.0, 120.0).unwrap()
}

#[test]
fn gate_fixture_parses_to_expected_shape() {
    let spec = parse(fixtures::GATE).unwrap();
    assert_eq!((spec.ramps.len(), spec.latches.len(), spec.sources.len(), spec.sinks.len()), (2, 2, 2, 3));
    assert!(validate(&spec).is_empty());
    assert_eq!(parse(&serialize(&spec)).unwrap(), spec);
}

#[test]
fn build_world_marble_counts() {
    let spec = fixtures::gate();
    for (a, b, n) in [(false, false, 0), (true, false, 1), (false, true, 1), (true, true, 2)] {
        let w = build_world(&spec, &assignment(&[("A", a), ("B", b)])).unwrap();
        assert_eq!(w.marbles.len(), n, "A={a} B={b}");
    }
}

#[test]
fn both_inputs_start_mirror_symmetric() {
    let w = build_world(&fixtures::gate(), &assignment(&[("A", true), ("B", true)])).unwrap();
    let (a, b) = (&w.marbles[0], &w.marbles[1]);
    assert_eq!(a.pos.x, -b.pos.x);
    assert_eq!(a.pos.y, b.pos.y);
    assert_eq!(a.vel.x, -b.vel.x);
    assert_eq!(a.volume, b.volume);
}

#[test]
fn missing_assignment_key_is_usage_error() {
    let err = build_world(&fixtures::gate(), &assignment(&[("A", true)])).unwrap_err();
    assert!(matches!(err, NetlistError::Usage(_)), "{err:?}");
}

#[test]
fn empty_row_completes_with_no_outputs() {
    let tr = gate_run(false, false, None);
    assert!(!tr.timed_out);
    assert!(tr.records.is_empty());
    assert!(classify_exit(&tr, &tr.sinks).unwrap().is_empty());
}

#[test]
fn lone_left_marble_is_a_and_not_b() {
    let tr = gate_run(true, false, None);
    let exits = classify_exit(&tr, &tr.sinks).unwrap();
    assert_eq!(exits[&MarbleId(0)], Exit::Sink { sink: "a_not_b".into(), label: Channel::ANotB });
}

#[test]
fn synchronized_pair_lands_in_collide_channel() {
    let tr = gate_run(true, true, None);
    assert_eq!(tr.collisions.len(), 1);
    let v = tr.collisions[0].relative_normal_speed;
    assert!(v < 0.29, "bounce regime expected, got {v}");
    let exits = classify_exit(&tr, &tr.sinks).unwrap();
    for id in [MarbleId(0), MarbleId(1)] {
        assert!(matches!(&exits[&id], Exit::Sink { label: Channel::AB, .. }));
    }
}

#[test]
fn fused_pair_is_attributed_through_the_merge() {
    let tr = gate_run(true, true, Some(CollisionModel::FusionOnly));
    let exits = classify_exit(&tr, &tr.sinks).unwrap();
    assert_eq!(exits.len(), 3);
    assert!(matches!(tr.marbles[0].state, MotionState::Merged { into: MarbleId(2) }));
    assert_eq!(exits[&MarbleId(0)], exits[&MarbleId(2)]);
    // a single merged marble lies between the singles
    let (a, b) = (gate_run(true, false, None), gate_run(false, true, None));
    let merged = gate_run(true, true, Some(CollisionModel::FusionOnly));
    assert_eq!(classify_model(&merged, &a, &b).unwrap(), ModelClass::Ssm);
}

#[test]
fn annihilation_leaves_nothing() {
    let tr = gate_run(true, true, Some(CollisionModel::Annihilate));
    let exits = classify_exit(&tr, &tr.sinks).unwrap();
    assert!(exits.values().all(|e| matches!(e, Exit::Lost { .. })));
}

#[test]
fn model_classification_follows_the_collision_model() {
    let (a, b) = (gate_run(true, false, None), gate_run(false, true, None));
    assert_eq!(classify_model(&gate_run(true, true, None), &a, &b).unwrap(), ModelClass::Ssm);
    let (ab, bb) = (gate_run(true, false, Some(CollisionModel::Bbm)), gate_run(false, true, Some(CollisionModel::Bbm)));
    assert_eq!(classify_model(&gate_run(true, true, Some(CollisionModel::Bbm)), &ab, &bb).unwrap(), ModelClass::Bbm);
}

#[test]
fn model_classification_rejects_mixed_geometry() {
    let spec = fixtures::reflector();
    let w = build_world(&spec, &assignment(&[("A", true)])).unwrap();
    let other = run(w, 5000.0, 120.0).unwrap();
    let (a, b) = (gate_run(true, false, None), gate_run(false, true, None));
    assert!(matches!(classify_model(&other, &a, &b), Err(ClassifyError::Usage(_))));
}

#[test]
fn timeout_is_reported_per_marble() {
    let w = build_world(&fixtures::gate(), &assignment(&[("A", true), ("B", false)])).unwrap();
    let tr = run(w, 100.0, 120.0).unwrap();
    assert!(tr.timed_out);
    assert!(matches!(classify_exit(&tr, &tr.sinks), Err(ClassifyError::Timeout { .. })));
}

#[test]
fn marble_outside_every_sink_is_unclassified() {
    let mut tr = gate_run(true, false, None);
    // land it on the floor line but in the gap between two sinks
    tr.marbles[0].pos = Vec2::new(3.05, -60.0);
    assert!(matches!(classify_exit(&tr, &tr.sinks), Err(ClassifyError::Unclassified { .. })));
}

#[test]
fn truth_tables_match_their_oracles() {
    for (spec, expect) in [
        (fixtures::gate(), Expectation::Gate),
        (fixtures::half_adder(), Expectation::Half),
        (fixtures::full_adder(), Expectation::Full),
    ] {
        let t = evaluate_truth_table(&spec, &spec.inputs()).unwrap();
        assert_eq!(t.rows.len(), 1 << expect.arity());
        let cmp = compare(&t, expect);
        assert!(cmp.passed(), "{expect:?}: {:?}", cmp.mismatches);
    }
}

#[test]
fn carry_sinks_never_both_occupied() {
    let spec = fixtures::full_adder();
    let t = evaluate_truth_table(&spec, &spec.inputs()).unwrap();
    for r in &t.rows {
        assert!(r.occupied_sinks(&spec, Channel::Carry) <= 1, "{:?}", r.inputs);
    }
}

#[test]
fn gate_table_fails_half_adder_expectation() {
    let spec = fixtures::gate();
    let t = evaluate_truth_table(&spec, &spec.inputs()).unwrap();
    assert!(!compare(&t, Expectation::Half).passed());
}

#[test]
fn truth_table_csv_layout() {
    let spec = fixtures::half_adder();
    let t = evaluate_truth_table(&spec, &spec.inputs()).unwrap();
    assert_eq!(t.to_csv(), "A,B,SUM,CARRY,status\n0,0,0,0,ok\n0,1,1,0,ok\n1,0,1,0,ok\n1,1,0,1,ok\n");
}

fn run_ticks(mut w: World, mut f: impl FnMut(&World)) {
    let end = w.config.ticks_for(5000.0);
    while !w.is_quiescent() && w.tick() < end {
        w.advance().unwrap();
        f(&w);
    }
}

#[test]
fn rolling_marbles_sit_one_radius_off_their_ramp() {
    for (a, b) in [(true, false), (true, true)] {
        let w = build_world(&fixtures::full_adder(), &assignment(&[("A", a), ("B", b), ("C_in", true)])).unwrap();
        run_ticks(w, |w| {
            for m in &w.marbles {
                if let MotionState::OnRamp { ramp, arc } = m.state {
                    let r = &w.ramps[ramp];
                    assert!((r.signed_distance(m.pos) - m.radius()).abs() < 1e-9);
                    assert!((0.0..=r.length).contains(&arc));
                }
                if let MotionState::Held { .. } = m.state {
                    assert_eq!(m.vel, Vec2::ZERO);
                }
            }
        });
    }
}

#[test]
fn water_is_conserved_without_evaporation() {
    let w = build_world(&fixtures::gate(), &assignment(&[("A", true), ("B", true)])).unwrap();
    let mut spec = fixtures::gate();
    spec.config.model = Some(CollisionModel::FusionOnly);
    let fused = build_world(&spec, &assignment(&[("A", true), ("B", true)])).unwrap();
    for w in [w, fused] {
        let v0 = w.total_volume();
        run_ticks(w, |w| assert!((w.total_volume() - v0).abs() < 1e-12));
    }
}

#[test]
fn stepping_is_deterministic() {
    let w0 = build_world(&fixtures::full_adder(), &assignment(&[("A", true), ("B", false), ("C_in", true)])).unwrap();
    let (mut a, mut b) = (w0.clone(), w0);
    for _ in 0..30_000 {
        a = step(&a).unwrap();
        b.advance().unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn lone_marble_reflects_off_the_lower_ramp() {
    let spec = fixtures::reflector();
    let mut w = build_world(&spec, &assignment(&[("A", true)])).unwrap();
    let right = w.ramp_index("right").unwrap();
    let tan = w.ramps[right].tangent();
    let mut speeds = Vec::new();
    let end = w.config.ticks_for(5000.0);
    while !w.is_quiescent() && w.tick() < end {
        w.advance().unwrap();
        if let MotionState::OnRamp { ramp, .. } = w.marbles[0].state {
            if ramp == right {
                speeds.push(w.marbles[0].vel.dot(tan));
            }
        }
    }
    // lands moving uphill, slows, turns and rolls back down
    assert!(speeds.len() > 10);
    assert!(speeds[0] < 0.0, "first tangential speed {}", speeds[0]);
    assert!(*speeds.last().unwrap() > 0.0);
    assert!(speeds.windows(2).all(|p| p[1] > p[0]), "steady downhill acceleration");
    let m = &w.marbles[0];
    assert!(matches!(m.state, MotionState::Sunk { .. }));
    assert!(m.pos.x < 0.0, "exits on the entry side, got x = {}", m.pos.x);
}
