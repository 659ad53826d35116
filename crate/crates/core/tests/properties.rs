//! Property suites: collision conservation laws, netlist round-trip, parser totality.

use proptest::prelude::*;

use marble_gate::actuation::{DropletSource, ElectromagnetLatch, Emission, LatchWindow};
use marble_gate::logic::{Channel, SinkRegion};
use marble_gate::netlist::{parse, parse_bytes, serialize, validate, CircuitSpec, ConfigOverrides, RampDecl};
use marble_gate::physics::{
    resolve_collision, CoatingKind, CoatingSpec, CollisionModel, CollisionOutcome, ContactEvent, Direction, Marble,
    MarbleId, PhysicsConfig, Vec2,
};

fn bare(mass: f64, speed: f64, angle: f64) -> Marble {
    let mut m = Marble::new(MarbleId(0), Vec2::ZERO, mass, CoatingSpec::bare(), 0.0);
    m.vel = Vec2::new(speed * angle.cos(), speed * angle.sin());
    m
}

fn model() -> impl Strategy<Value = CollisionModel> {
    prop_oneof![Just(CollisionModel::Ssm), Just(CollisionModel::Bbm), Just(CollisionModel::FusionOnly)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn collisions_conserve_momentum_and_never_gain_energy(
        m1 in 1.0f64..=30.0, m2 in 1.0f64..=30.0,
        s1 in 0.0f64..=1.0, s2 in 0.0f64..=1.0,
        a1 in 0.0f64..std::f64::consts::TAU, a2 in 0.0f64..std::f64::consts::TAU,
        an in 0.0f64..std::f64::consts::TAU,
        e in 0.0f64..=1.0,
        model in model(),
    ) {
        let mut a = bare(m1, s1, a1);
        let mut b = bare(m2, s2, a2);
        b.id = MarbleId(1);
        let mut n = Vec2::new(an.cos(), an.sin());
        if (a.vel - b.vel).dot(n) < 0.0 {
            n = -n;
        }
        let closing = (a.vel - b.vel).dot(n);
        prop_assume!(closing > 1e-12);
        a.pos = Vec2::ZERO;
        b.pos = n * (a.radius() + b.radius());
        let cfg = PhysicsConfig { restitution: e, collision_model: model, ..Default::default() };
        let ev = ContactEvent { a: a.id, b: b.id, relative_normal_speed: closing, normal: n, time: 0.0 };
        let p0 = a.momentum() + b.momentum();
        let scale = a.mass() * a.vel.norm() + b.mass() * b.vel.norm();
        let ke0 = a.kinetic_energy() + b.kinetic_energy();
        match resolve_collision(&a, &b, &ev, &cfg, MarbleId(2)).unwrap() {
            CollisionOutcome::Bounced { v1, v2, .. } => {
                prop_assert!(closing < cfg.v_coalesce);
                let p1 = v1 * a.mass() + v2 * b.mass();
                prop_assert!((p1 - p0).norm() <= 1e-9 * scale);
                let ke1 = 0.5 * (a.mass() * v1.norm_sq() + b.mass() * v2.norm_sq());
                prop_assert!(ke1 <= ke0 * (1.0 + 1e-12));
                // separation speed along the normal is e times the approach speed
                let sep = (v2 - v1).dot(n);
                prop_assert!((sep - e * closing).abs() <= 1e-9);
                // tangential components untouched
                let t = Vec2::new(-n.y, n.x);
                prop_assert!((v1.dot(t) - a.vel.dot(t)).abs() <= 1e-12);
                prop_assert!((v2.dot(t) - b.vel.dot(t)).abs() <= 1e-12);
            }
            CollisionOutcome::Coalesced { merged } => {
                prop_assert!(model == CollisionModel::FusionOnly || closing >= cfg.v_coalesce);
                prop_assert!((merged.momentum() - p0).norm() <= 1e-9 * scale);
                prop_assert!(merged.kinetic_energy() <= ke0 * (1.0 + 1e-12));
                prop_assert_eq!(merged.volume, a.volume + b.volume);
            }
            CollisionOutcome::Annihilated => prop_assert!(false, "annihilation not configured"),
        }
    }
}

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,6}"
}

fn num(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    lo..hi
}

fn config() -> impl Strategy<Value = ConfigOverrides> {
    (
        (
            proptest::option::of(num(0.001, 1.0)),
            proptest::option::of(num(0.0, 20.0)),
            proptest::option::of(num(0.01, 2.0)),
            proptest::option::of(0.0f64..=1.0),
            proptest::option::of(num(0.0, 100.0)),
            proptest::option::of(prop_oneof![
                Just(CollisionModel::Ssm),
                Just(CollisionModel::Bbm),
                Just(CollisionModel::FusionOnly),
                Just(CollisionModel::Annihilate)
            ]),
            proptest::option::of(num(0.05, 1.0)),
        ),
        (
            proptest::option::of(num(1.0, 1e5)),
            proptest::option::of(any::<bool>()),
            proptest::option::of(num(0.01, 1.0)),
            proptest::option::of(num(0.01, 1.0)),
            proptest::option::of(num(0.01, 1.0)),
            proptest::option::of(num(0.01, 1.0)),
        ),
    )
        .prop_map(|((dt, g, v, e, tau, model, k), (horizon, evaporation, eb, en, eu, enu))| ConfigOverrides {
            dt,
            g,
            v_coalesce: v,
            restitution: e,
            contact_duration: tau,
            model,
            rolling_factor: k,
            horizon,
            evaporation,
            evap_bare: eb,
            evap_ni: en,
            evap_uhdpe: eu,
            evap_ni_uhdpe: enu,
        })
}

fn ramp(i: usize) -> impl Strategy<Value = RampDecl> {
    (num(-300.0, 300.0), num(-300.0, 300.0), num(0.5, 89.5), any::<bool>(), num(1.0, 400.0), proptest::option::of(num(0.05, 1.0)))
        .prop_map(move |(x, y, slope, plus, length, k)| RampDecl {
            id: format!("r{i}"),
            anchor: Vec2::new(x, y),
            slope_deg: slope,
            direction: if plus { Direction::PlusX } else { Direction::MinusX },
            length,
            k,
        })
}

/// Specs built so that they validate: references resolve, windows ordered, sinks disjoint.
fn spec() -> impl Strategy<Value = CircuitSpec> {
    let ramps = (1usize..4).prop_flat_map(|n| (0..n).map(ramp).collect::<Vec<_>>());
    (config(), ramps, ident()).prop_flat_map(|(config, ramps, prefix)| {
        let nr = ramps.len();
        let latch = (0..nr, 0.0f64..=1.0, proptest::collection::vec((num(0.1, 100.0), num(0.0, 50.0)), 1..4), proptest::option::of(num(0.1, 20.0)));
        let source = (
            0..nr,
            0usize..4,
            proptest::option::of(0.0f64..=1.0),
            num(0.5, 50.0),
            proptest::option::of(num(0.0, 10.0)),
            prop_oneof![
                num(0.1, 400.0).prop_map(Emission::FeedRate),
                proptest::collection::vec(num(0.5, 300.0), 1..4).prop_map(|gaps| {
                    let mut t = 0.0;
                    Emission::Times(gaps.iter().map(|g| { let now = t; t += g; now }).collect())
                }),
            ],
        );
        let sink = (num(0.0, 50.0), num(0.01, 20.0), num(-500.0, 0.0), 0usize..5);
        (
            Just(config),
            Just(ramps),
            Just(prefix),
            proptest::collection::vec(latch, 0..4),
            proptest::collection::vec(source, 1..4),
            proptest::collection::vec(sink, 1..5),
        )
    })
    .prop_map(|(config, ramps, prefix, latches, sources, sinks)| {
        let latches = latches
            .into_iter()
            .enumerate()
            .map(|(i, (ri, frac, windows, capture))| {
                let mut t = 0.0;
                let schedule = windows
                    .into_iter()
                    .map(|(len, gap)| {
                        let w = LatchWindow::new(t, t + len);
                        t += len + gap;
                        w
                    })
                    .collect();
                let mut l = ElectromagnetLatch::new(format!("{prefix}_e{i}"), ramps[ri].id.clone(), frac * ramps[ri].length, schedule);
                if let Some(c) = capture {
                    l.capture_radius = c;
                }
                l
            })
            .collect();
        let sources = sources
            .into_iter()
            .enumerate()
            .map(|(i, (ri, kind, entry, volume, mass, emission))| {
                let kind = CoatingKind::ALL[kind];
                DropletSource {
                    id: format!("s{i}"),
                    ramp: ramps[ri].id.clone(),
                    input: format!("IN_{i}"),
                    entry: entry.map_or(0.0, |f| f * ramps[ri].length),
                    volume,
                    coating: CoatingSpec::of_kind(kind),
                    coating_mass: mass.unwrap_or(if kind == CoatingKind::Bare { 0.0 } else { 2.5 }),
                    emission: Some(emission),
                }
            })
            .collect();
        let mut x = -300.0;
        let sinks = sinks
            .into_iter()
            .enumerate()
            .map(|(i, (width, gap, floor, label))| {
                let s = SinkRegion::new(format!("k{i}"), Channel::ALL[label], x, x + width, floor);
                x += width + gap;
                s
            })
            .collect();
        CircuitSpec { config, ramps, latches, sources, sinks }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn serialize_then_parse_is_identity(s in spec()) {
        prop_assert!(validate(&s).is_empty(), "{:?}", validate(&s));
        let text = serialize(&s);
        let back = parse(&text);
        prop_assert_eq!(back.as_ref(), Ok(&s), "{}", text);
        // canonical form is a fixed point
        prop_assert_eq!(serialize(back.as_ref().unwrap()), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn parse_is_total_on_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..200)) {
        if let Err(errs) = parse_bytes(&bytes) {
            prop_assert!(!errs.is_empty());
            let text = String::from_utf8_lossy(&bytes);
            let lines = text.split('\n').count();
            for e in errs {
                prop_assert!(e.line >= 1 && e.line <= lines && e.column >= 1);
            }
        }
    }

    #[test]
    fn parse_is_total_on_netlist_like_text(text in "((config|ramp|em|source|sink|#)( [a-z_]{1,8}(=[-+0-9.e(),\\[\\]a-zA-Z_]{0,12})?){0,6}\n){0,6}") {
        let _ = parse(&text);
    }
}
