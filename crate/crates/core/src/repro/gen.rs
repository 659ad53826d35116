//! Random inputs for the property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::actuation::{DropletSource, ElectromagnetLatch, Emission, LatchWindow};
use crate::logic::{Channel, SinkRegion};
use crate::netlist::{CircuitSpec, ConfigOverrides, RampDecl};
use crate::physics::{
    CoatingKind, CoatingSpec, CollisionModel, ContactEvent, Direction, Marble, MarbleId, PhysicsConfig, Vec2,
};

fn maybe<R: Rng, T>(rng: &mut R, f: impl FnOnce(&mut R) -> T) -> Option<T> {
    if rng.gen_bool(0.5) {
        Some(f(rng))
    } else {
        None
    }
}

/// A random spec that passes validation.
pub fn random_spec<R: Rng>(rng: &mut R) -> CircuitSpec {
    let config = ConfigOverrides {
        dt: maybe(rng, |r| r.gen_range(0.001..1.0)),
        g: maybe(rng, |r| r.gen_range(0.0..20.0)),
        v_coalesce: maybe(rng, |r| r.gen_range(0.01..2.0)),
        restitution: maybe(rng, |r| r.gen_range(0.0..=1.0)),
        contact_duration: maybe(rng, |r| r.gen_range(0.0..100.0)),
        model: maybe(rng, |r| {
            *[CollisionModel::Ssm, CollisionModel::Bbm, CollisionModel::FusionOnly, CollisionModel::Annihilate]
                .choose(r)
                .unwrap()
        }),
        rolling_factor: maybe(rng, |r| r.gen_range(0.05..=1.0)),
        horizon: maybe(rng, |r| r.gen_range(1.0..1e5)),
        evaporation: maybe(rng, |r| r.gen_bool(0.5)),
        evap_bare: maybe(rng, |r| r.gen_range(0.01..1.0)),
        evap_ni: maybe(rng, |r| r.gen_range(0.01..1.0)),
        evap_uhdpe: maybe(rng, |r| r.gen_range(0.01..1.0)),
        evap_ni_uhdpe: maybe(rng, |r| r.gen_range(0.01..1.0)),
    };
    let ramps: Vec<RampDecl> = (0..rng.gen_range(1..4))
        .map(|i| RampDecl {
            id: format!("r{i}"),
            anchor: Vec2::new(rng.gen_range(-300.0..300.0), rng.gen_range(-300.0..300.0)),
            slope_deg: rng.gen_range(0.5..89.5),
            direction: if rng.gen_bool(0.5) { Direction::PlusX } else { Direction::MinusX },
            length: rng.gen_range(1.0..400.0),
            k: maybe(rng, |r| r.gen_range(0.05..=1.0)),
        })
        .collect();
    let latches = (0..rng.gen_range(0..4))
        .map(|i| {
            let ramp = ramps.choose(rng).unwrap();
            let mut t = rng.gen_range(0.0..100.0);
            let schedule = (0..rng.gen_range(1..4))
                .map(|_| {
                    let on = t;
                    let off = on + rng.gen_range(0.1..500.0);
                    t = off + rng.gen_range(0.0..100.0);
                    LatchWindow::new(on, off)
                })
                .collect();
            let mut l = ElectromagnetLatch::new(format!("e{i}"), ramp.id.clone(), rng.gen_range(0.0..=ramp.length), schedule);
            if rng.gen_bool(0.3) {
                l.capture_radius = rng.gen_range(0.1..20.0);
            }
            l
        })
        .collect();
    let sources = (0..rng.gen_range(1..4))
        .map(|i| {
            let ramp = ramps.choose(rng).unwrap();
            let kind = *CoatingKind::ALL.choose(rng).unwrap();
            let default_mass = if kind == CoatingKind::Bare { 0.0 } else { 2.5 };
            let emission = if rng.gen_bool(0.5) {
                Emission::FeedRate(rng.gen_range(0.1..400.0))
            } else {
                let mut t = rng.gen_range(0.0..50.0);
                Emission::Times(
                    (0..rng.gen_range(1..4))
                        .map(|_| {
                            let now = t;
                            t += rng.gen_range(0.5..500.0);
                            now
                        })
                        .collect(),
                )
            };
            DropletSource {
                id: format!("s{i}"),
                ramp: ramp.id.clone(),
                input: format!("IN{i}"),
                entry: if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..=ramp.length) },
                volume: rng.gen_range(0.5..50.0),
                coating: CoatingSpec::of_kind(kind),
                coating_mass: if rng.gen_bool(0.5) { default_mass } else { rng.gen_range(0.0..10.0) },
                emission: Some(emission),
            }
        })
        .collect();
    let mut x = rng.gen_range(-300.0..0.0);
    let sinks = (0..rng.gen_range(1..5))
        .map(|i| {
            let lo = x;
            let hi = lo + rng.gen_range(0.0..50.0);
            x = hi + rng.gen_range(0.01..20.0);
            SinkRegion::new(format!("k{i}"), *Channel::ALL.choose(rng).unwrap(), lo, hi, rng.gen_range(-500.0..0.0))
        })
        .collect();
    CircuitSpec { config, ramps, latches, sources, sinks }
}

/// Two touching bare marbles on a closing course, with a random model and restitution.
pub struct CollisionCase {
    pub m1: Marble,
    pub m2: Marble,
    pub event: ContactEvent,
    pub config: PhysicsConfig,
}

/// Masses 1–30 mg, speeds 0–1 m/s in random directions.
pub fn random_collision<R: Rng>(rng: &mut R) -> CollisionCase {
    loop {
        let marble = |id: u32, rng: &mut R| {
            let mut m = Marble::new(MarbleId(id), Vec2::ZERO, rng.gen_range(1.0..=30.0), CoatingSpec::bare(), 0.0);
            let (s, a) = (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..std::f64::consts::TAU));
            m.vel = Vec2::new(s * a.cos(), s * a.sin());
            m
        };
        let mut m1 = marble(0, rng);
        let mut m2 = marble(1, rng);
        let a = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut normal = Vec2::new(a.cos(), a.sin());
        let mut closing = (m1.vel - m2.vel).dot(normal);
        if closing < 0.0 {
            normal = -normal;
            closing = -closing;
        }
        if !(closing > 1e-12) {
            continue;
        }
        m1.pos = Vec2::ZERO;
        m2.pos = normal * (m1.radius() + m2.radius());
        let model = *[CollisionModel::Ssm, CollisionModel::Bbm, CollisionModel::FusionOnly].choose(rng).unwrap();
        let config = PhysicsConfig { restitution: rng.gen_range(0.0..=1.0), collision_model: model, ..Default::default() };
        let event = ContactEvent { a: m1.id, b: m2.id, relative_normal_speed: closing, normal, time: 0.0 };
        return CollisionCase { m1, m2, event, config };
    }
}

/// Random bytes, or a bundled netlist with a few bytes flipped, inserted or cut.
pub fn fuzz_bytes<R: Rng>(rng: &mut R) -> Vec<u8> {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(0..256);
        return (0..n).map(|_| rng.gen()).collect();
    }
    let (_, text) = crate::fixtures::ALL.choose(rng).unwrap();
    let mut b = text.as_bytes().to_vec();
    for _ in 0..rng.gen_range(1..8) {
        if b.is_empty() {
            break;
        }
        let i = rng.gen_range(0..b.len());
        match rng.gen_range(0..3) {
            0 => b[i] = rng.gen(),
            1 => b.insert(i, *b"()[]=,#-.e \n\xff".choose(rng).unwrap()),
            _ => {
                let j = (i + rng.gen_range(1..20)).min(b.len());
                b.drain(i..j);
            }
        }
    }
    b
}
