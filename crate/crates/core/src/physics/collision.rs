use serde::{Deserialize, Serialize};

use super::{CoatingKind, CoatingSpec, CollisionModel, Marble, MarbleId, MotionState, PhysicsConfig, PhysicsError, Vec2};

/// A detected approach between two marbles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactEvent {
    pub a: MarbleId,
    pub b: MarbleId,
    /// Closing speed along the normal, m/s. Positive while approaching.
    pub relative_normal_speed: f64,
    /// Unit vector from `a` towards `b`.
    pub normal: Vec2,
    /// ms.
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Bounce,
    Coalesce,
}

/// Hard speed threshold between rebound and coalescence.
pub fn classify_regime(relative_normal_speed: f64, config: &PhysicsConfig) -> Regime {
    if relative_normal_speed >= config.v_coalesce {
        Regime::Coalesce
    } else {
        Regime::Bounce
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CollisionOutcome {
    /// Post-rebound velocities. The pair separates at `release_time` (ms);
    /// for hard spheres that is the contact time itself.
    Bounced { v1: Vec2, v2: Vec2, release_time: f64 },
    Coalesced { merged: Marble },
    Annihilated,
}

/// Resolves one contact. A merged marble, if any, receives `merged_id`.
pub fn resolve_collision(
    m1: &Marble,
    m2: &Marble,
    event: &ContactEvent,
    config: &PhysicsConfig,
    merged_id: MarbleId,
) -> Result<CollisionOutcome, PhysicsError> {
    let closing = (m1.vel - m2.vel).dot(event.normal);
    if !(closing > 0.0) {
        return Err(PhysicsError::Logic(format!(
            "resolve_collision on non-approaching pair {}/{} (closing speed {closing})",
            m1.id, m2.id
        )));
    }
    let regime = match config.collision_model {
        CollisionModel::FusionOnly => Regime::Coalesce,
        CollisionModel::Annihilate => return Ok(CollisionOutcome::Annihilated),
        CollisionModel::Ssm | CollisionModel::Bbm => classify_regime(closing, config),
    };
    match regime {
        Regime::Coalesce => Ok(CollisionOutcome::Coalesced { merged: coalesce(m1, m2, merged_id)? }),
        Regime::Bounce => {
            let (w1, w2) = (1.0 / m1.mass(), 1.0 / m2.mass());
            let impulse = (1.0 + config.restitution) * closing / (w1 + w2);
            let v1 = m1.vel - event.normal * (impulse * w1);
            let v2 = m2.vel + event.normal * (impulse * w2);
            let release_time = match config.collision_model {
                CollisionModel::Ssm => event.time + config.contact_duration,
                _ => event.time,
            };
            Ok(CollisionOutcome::Bounced { v1, v2, release_time })
        }
    }
}

fn merged_coating(m1: &Marble, m2: &Marble) -> CoatingSpec {
    use CoatingKind::*;
    let (a, b) = (m1.coating, m2.coating);
    let kind = match (a.kind, b.kind) {
        (x, y) if x == y => x,
        (Bare, x) | (x, Bare) => x,
        _ => NiUhdpe,
    };
    let total = m1.coating_mass + m2.coating_mass;
    let (wa, wb) = if total > 0.0 {
        (m1.coating_mass / total, m2.coating_mass / total)
    } else {
        (0.5, 0.5)
    };
    CoatingSpec {
        kind,
        magnetic_fraction: a.magnetic_fraction * wa + b.magnetic_fraction * wb,
        ni_grain_um: a.ni_grain_um.or(b.ni_grain_um),
        uhdpe_grain_um: a.uhdpe_grain_um.or(b.uhdpe_grain_um),
    }
}

/// Merges two active marbles into one, conserving volume, coating mass and momentum.
pub fn coalesce(m1: &Marble, m2: &Marble, id: MarbleId) -> Result<Marble, PhysicsError> {
    for m in [m1, m2] {
        if m.state.is_terminal() {
            return Err(PhysicsError::Logic(format!(
                "cannot merge marble {} in state {}",
                m.id,
                m.state.tag()
            )));
        }
    }
    let (ma, mb) = (m1.mass(), m2.mass());
    let total = ma + mb;
    let mut merged = Marble::new(
        id,
        (m1.pos * ma + m2.pos * mb) * (1.0 / total),
        m1.volume + m2.volume,
        merged_coating(m1, m2),
        m1.coating_mass + m2.coating_mass,
    );
    merged.vel = (m1.momentum() + m2.momentum()) * (1.0 / total);
    merged.state = MotionState::Ballistic;
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn marble(id: u32, x: f64, vel: Vec2) -> Marble {
        let mut m = Marble::new(MarbleId(id), Vec2::new(x, 0.0), 11.6, CoatingSpec::ni_uhdpe(), 2.5);
        m.vel = vel;
        m
    }

    fn head_on(v1: Vec2, v2: Vec2) -> (Marble, Marble, ContactEvent) {
        let a = marble(0, -1.4, v1);
        let b = marble(1, 1.4, v2);
        let ev = ContactEvent {
            a: a.id,
            b: b.id,
            relative_normal_speed: (v1 - v2).x,
            normal: Vec2::new(1.0, 0.0),
            time: 100.0,
        };
        (a, b, ev)
    }

    #[test]
    fn regime_examples() {
        let c = PhysicsConfig::default();
        assert_eq!(classify_regime(0.21, &c), Regime::Bounce);
        assert_eq!(classify_regime(0.29, &c), Regime::Coalesce);
        assert_eq!(classify_regime(0.0, &c), Regime::Bounce);
    }

    #[test]
    fn symmetric_coalescence_cancels_lateral_momentum() {
        let (a, b, ev) = head_on(Vec2::new(0.15, -0.1), Vec2::new(-0.15, -0.1));
        let c = PhysicsConfig::default();
        let CollisionOutcome::Coalesced { merged } = resolve_collision(&a, &b, &ev, &c, MarbleId(2)).unwrap() else {
            panic!("expected coalescence at 0.30 m/s");
        };
        assert!(merged.vel.x.abs() < 1e-12);
        assert!((merged.vel.y + 0.1).abs() < 1e-12);
        assert!((merged.volume - 23.2).abs() < 1e-12);
        assert!((merged.coating_mass - 5.0).abs() < 1e-12);
        assert!((merged.radius() - 1.769).abs() < 5e-4);
    }

    #[test]
    fn elastic_hard_spheres_exchange_velocities() {
        let (a, b, ev) = head_on(Vec2::new(0.1, 0.0), Vec2::new(-0.05, 0.0));
        let c = PhysicsConfig { restitution: 1.0, collision_model: CollisionModel::Bbm, ..Default::default() };
        let CollisionOutcome::Bounced { v1, v2, release_time } =
            resolve_collision(&a, &b, &ev, &c, MarbleId(2)).unwrap()
        else {
            panic!("expected bounce");
        };
        // 1D elastic formula with equal masses: velocities swap.
        assert!((v1.x + 0.05).abs() < 1e-15);
        assert!((v2.x - 0.1).abs() < 1e-15);
        assert_eq!(release_time, 100.0);
        let ke = |u: f64, w: f64| 0.5 * a.mass() * (u * u + w * w);
        assert!((ke(0.1, -0.05) - ke(v1.x, v2.x)).abs() < 1e-15);
    }

    #[test]
    fn soft_spheres_hold_for_contact_duration() {
        let (a, b, ev) = head_on(Vec2::new(0.1, 0.0), Vec2::new(-0.1, 0.0));
        let c = PhysicsConfig::default();
        let CollisionOutcome::Bounced { release_time, v1, .. } =
            resolve_collision(&a, &b, &ev, &c, MarbleId(2)).unwrap()
        else {
            panic!("expected bounce");
        };
        assert_eq!(release_time, 110.0);
        assert!((v1.x + 0.08).abs() < 1e-15);
    }

    #[test]
    fn model_menu() {
        let (a, b, ev) = head_on(Vec2::new(0.01, 0.0), Vec2::new(-0.01, 0.0));
        let fusion = PhysicsConfig { collision_model: CollisionModel::FusionOnly, ..Default::default() };
        assert!(matches!(
            resolve_collision(&a, &b, &ev, &fusion, MarbleId(2)).unwrap(),
            CollisionOutcome::Coalesced { .. }
        ));
        let ann = PhysicsConfig { collision_model: CollisionModel::Annihilate, ..Default::default() };
        assert_eq!(resolve_collision(&a, &b, &ev, &ann, MarbleId(2)).unwrap(), CollisionOutcome::Annihilated);
    }

    #[test]
    fn receding_pair_is_a_logic_error() {
        let (a, b, ev) = head_on(Vec2::new(-0.1, 0.0), Vec2::new(0.1, 0.0));
        let err = resolve_collision(&a, &b, &ev, &PhysicsConfig::default(), MarbleId(2)).unwrap_err();
        assert!(matches!(err, PhysicsError::Logic(_)));
    }

    #[test]
    fn merging_a_sunk_marble_fails() {
        let a = marble(0, 0.0, Vec2::ZERO);
        let mut b = marble(1, 1.0, Vec2::ZERO);
        b.state = MotionState::Sunk { sink: 0 };
        assert!(coalesce(&a, &b, MarbleId(2)).is_err());
    }

    #[test]
    fn mixed_coatings_stay_consistent() {
        let mut a = marble(0, 0.0, Vec2::ZERO);
        a.coating = CoatingSpec::bare();
        a.coating_mass = 0.0;
        let mut b = marble(1, 1.0, Vec2::ZERO);
        b.coating = CoatingSpec::uhdpe();
        let m = coalesce(&a, &b, MarbleId(2)).unwrap();
        assert_eq!(m.coating.kind, CoatingKind::Uhdpe);
        assert!(m.coating.is_consistent());
        b.coating = CoatingSpec::ni();
        let mut c = marble(3, 2.0, Vec2::ZERO);
        c.coating = CoatingSpec::uhdpe();
        let m = coalesce(&b, &c, MarbleId(4)).unwrap();
        assert_eq!(m.coating.kind, CoatingKind::NiUhdpe);
        assert!(m.coating.is_consistent());
    }
}
