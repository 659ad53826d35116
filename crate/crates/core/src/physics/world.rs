use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{
    ramp_acceleration, resolve_collision, CoatingSpec, CollisionOutcome, ContactEvent, Marble, MarbleId,
    MotionState, PhysicsConfig, PhysicsError, RampSegment, Vec2,
};
use crate::actuation::{capture_if_in_reach, ElectromagnetLatch};
use crate::lifetime::{evaporate_in_place, EvaporationTable};
use crate::logic::SinkRegion;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OutcomeKind {
    Bounced,
    Coalesced { merged: MarbleId },
    Annihilated,
}

/// One resolved contact, kept for later inspection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionRecord {
    pub time: f64,
    pub a: MarbleId,
    pub b: MarbleId,
    pub relative_normal_speed: f64,
    pub normal: Vec2,
    pub outcome: OutcomeKind,
}

/// Which source produced a marble, and when.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpawnRecord {
    pub id: MarbleId,
    pub source: String,
    pub input: String,
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq)]
struct PendingSpawn {
    tick: u64,
    ramp: usize,
    arc: f64,
    volume: f64,
    coating: CoatingSpec,
    coating_mass: f64,
    source: String,
    input: String,
}

/// A soft-sphere pair in compressed contact. Normal motion is frozen until `release_tick`,
/// when each marble takes on its post-rebound normal velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ContactHold {
    a: MarbleId,
    b: MarbleId,
    normal: Vec2,
    release_tick: u64,
    va: Vec2,
    vb: Vec2,
}

/// Complete simulation state. Marble ids equal their index in `marbles`.
#[derive(Debug, Clone, PartialEq)]
pub struct World {
    pub config: PhysicsConfig,
    pub ramps: Vec<RampSegment>,
    pub latches: Vec<ElectromagnetLatch>,
    pub sinks: Vec<SinkRegion>,
    pub marbles: Vec<Marble>,
    /// Evaporation is off unless a table is set.
    pub evaporation: Option<EvaporationTable>,
    pub collisions: Vec<CollisionRecord>,
    pub spawns: Vec<SpawnRecord>,
    tick: u64,
    latch_ramp: Vec<usize>,
    pending: Vec<PendingSpawn>,
    holds: Vec<ContactHold>,
    in_contact: BTreeSet<(MarbleId, MarbleId)>,
}

fn pair(a: MarbleId, b: MarbleId) -> (MarbleId, MarbleId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl World {
    pub fn new(
        config: PhysicsConfig,
        ramps: Vec<RampSegment>,
        latches: Vec<ElectromagnetLatch>,
        sinks: Vec<SinkRegion>,
    ) -> Result<Self, PhysicsError> {
        config.validate()?;
        for r in &ramps {
            r.validate()?;
        }
        let mut latch_ramp = Vec::with_capacity(latches.len());
        for l in &latches {
            let idx = ramps
                .iter()
                .position(|r| r.id == l.ramp)
                .ok_or_else(|| PhysicsError::Config(format!("latch {} references unknown ramp {}", l.id, l.ramp)))?;
            if !(0.0..=ramps[idx].length).contains(&l.hold) {
                return Err(PhysicsError::Config(format!("latch {} hold point outside ramp {}", l.id, l.ramp)));
            }
            if !l.schedule_is_ordered() {
                return Err(PhysicsError::Config(format!("latch {} schedule is not ordered", l.id)));
            }
            latch_ramp.push(idx);
        }
        Ok(Self {
            config,
            ramps,
            latches,
            sinks,
            marbles: Vec::new(),
            evaporation: None,
            collisions: Vec::new(),
            spawns: Vec::new(),
            tick: 0,
            latch_ramp,
            pending: Vec::new(),
            holds: Vec::new(),
            in_contact: BTreeSet::new(),
        })
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    /// Current time, ms.
    pub fn time(&self) -> f64 {
        self.tick as f64 * self.config.dt
    }

    pub fn ramp_index(&self, id: &str) -> Option<usize> {
        self.ramps.iter().position(|r| r.id == id)
    }

    pub fn marble(&self, id: MarbleId) -> Option<&Marble> {
        self.marbles.get(id.0 as usize)
    }

    /// Adds a marble under a fresh id. Marbles on a ramp are snapped onto its surface.
    pub fn insert(&mut self, mut marble: Marble) -> Result<MarbleId, PhysicsError> {
        if !(marble.volume > 0.0) {
            return Err(PhysicsError::Domain(format!("marble volume must be positive, got {}", marble.volume)));
        }
        let id = MarbleId(self.marbles.len() as u32);
        marble.id = id;
        if let MotionState::OnRamp { ramp, arc } = marble.state {
            let r = self
                .ramps
                .get(ramp)
                .ok_or_else(|| PhysicsError::Config(format!("no ramp with index {ramp}")))?;
            marble.pos = r.center_at(arc, marble.radius());
            marble.vel = r.tangent() * marble.vel.dot(r.tangent());
        }
        self.marbles.push(marble);
        Ok(id)
    }

    /// Places a resting marble on a ramp now.
    pub fn spawn_on_ramp(
        &mut self,
        ramp: usize,
        arc: f64,
        volume: f64,
        coating: CoatingSpec,
        coating_mass: f64,
    ) -> Result<MarbleId, PhysicsError> {
        let mut m = Marble::new(MarbleId(0), Vec2::ZERO, volume, coating, coating_mass);
        m.state = MotionState::OnRamp { ramp, arc };
        self.insert(m)
    }

    /// Queues a marble to appear on `ramp` at time `at` (ms). Due spawns are placed immediately.
    #[allow(clippy::too_many_arguments)]
    pub fn schedule_spawn(
        &mut self,
        at: f64,
        ramp: usize,
        arc: f64,
        volume: f64,
        coating: CoatingSpec,
        coating_mass: f64,
        source: &str,
        input: &str,
    ) -> Result<(), PhysicsError> {
        if ramp >= self.ramps.len() {
            return Err(PhysicsError::Config(format!("no ramp with index {ramp}")));
        }
        let spawn = PendingSpawn {
            tick: self.config.ticks_for(at),
            ramp,
            arc,
            volume,
            coating,
            coating_mass,
            source: source.to_string(),
            input: input.to_string(),
        };
        let pos = self.pending.partition_point(|p| p.tick <= spawn.tick);
        self.pending.insert(pos, spawn);
        self.spawn_due()
    }

    pub fn pending_spawns(&self) -> usize {
        self.pending.len()
    }

    /// Every marble is terminal and nothing is waiting to spawn.
    pub fn is_quiescent(&self) -> bool {
        self.pending.is_empty() && self.holds.is_empty() && self.marbles.iter().all(|m| m.state.is_terminal())
    }

    /// Sum of volumes over marbles still holding their own water.
    pub fn total_volume(&self) -> f64 {
        self.marbles
            .iter()
            .filter(|m| !matches!(m.state, MotionState::Merged { .. } | MotionState::Evaporated))
            .map(|m| m.volume)
            .sum()
    }

    pub fn in_soft_contact(&self, id: MarbleId) -> bool {
        self.holds.iter().any(|h| h.a == id || h.b == id)
    }

    /// Releases every marble held by latch `latch`, returning how many started rolling.
    pub fn release_latch(&mut self, latch: usize) -> usize {
        let ramp = self.latch_ramp[latch];
        let hold = self.latches[latch].hold;
        let mut n = 0;
        for m in &mut self.marbles {
            if m.state == (MotionState::Held { latch }) {
                m.state = MotionState::OnRamp { ramp, arc: hold };
                m.vel = Vec2::ZERO;
                m.pos = self.ramps[ramp].center_at(hold, m.radius());
                n += 1;
            }
        }
        n
    }

    fn latch_active_now(&self, latch: usize) -> bool {
        let cfg = self.config;
        self.latches[latch].active_at_tick(self.tick, |ms| cfg.ticks_for(ms))
    }

    fn release_due_latches(&mut self) {
        for li in 0..self.latches.len() {
            if !self.latch_active_now(li) {
                self.release_latch(li);
            }
        }
    }

    fn spawn_due(&mut self) -> Result<(), PhysicsError> {
        let due = self.pending.partition_point(|p| p.tick <= self.tick);
        let now = self.time();
        for p in self.pending.drain(..due).collect::<Vec<_>>() {
            let id = self.spawn_on_ramp(p.ramp, p.arc, p.volume, p.coating, p.coating_mass)?;
            self.spawns.push(SpawnRecord { id, source: p.source, input: p.input, time: now });
        }
        Ok(())
    }

    fn hold_normal(&self, id: MarbleId) -> Option<Vec2> {
        self.holds.iter().find(|h| h.a == id || h.b == id).map(|h| h.normal)
    }

    /// Advances the world by one tick of `config.dt`.
    pub fn advance(&mut self) -> Result<(), PhysicsError> {
        self.release_due_latches();
        self.spawn_due()?;
        for i in 0..self.marbles.len() {
            if let Some(n) = self.hold_normal(self.marbles[i].id) {
                self.move_in_contact(i, n);
                continue;
            }
            match self.marbles[i].state {
                MotionState::OnRamp { ramp, arc } => self.roll(i, ramp, arc),
                MotionState::Ballistic => self.fly(i),
                _ => {}
            }
        }
        self.capture();
        self.evaporate();
        let t_end = (self.tick + 1) as f64 * self.config.dt;
        self.resolve_contacts(t_end)?;
        self.tick += 1;
        self.finish_holds();
        self.check_integrity()
    }

    fn roll(&mut self, i: usize, ri: usize, arc: f64) {
        let dt = self.config.dt;
        let ramp = &self.ramps[ri];
        let tan = ramp.tangent();
        let accel = ramp_acceleration(ramp.slope_deg, ramp.rolling_factor, self.config.g) * 1e-3;
        let m = &mut self.marbles[i];
        let prev = m.pos;
        let speed = m.vel.dot(tan) + accel * dt;
        let arc = arc + speed * dt;
        m.vel = tan * speed;
        m.pos = ramp.center_at(arc, m.radius());
        if arc > ramp.length || arc < 0.0 {
            m.state = MotionState::Ballistic;
        } else {
            m.state = MotionState::OnRamp { ramp: ri, arc };
        }
        self.check_sinks(i, prev);
    }

    fn fly(&mut self, i: usize) {
        let dt = self.config.dt;
        let g = self.config.g_mm_per_ms2();
        let m = &mut self.marbles[i];
        let prev = m.pos;
        m.vel.y -= g * dt;
        m.pos += m.vel * dt;
        if !self.try_land(i, prev) {
            self.check_sinks(i, prev);
        }
    }

    /// Free flight with motion along `normal` suppressed.
    fn move_in_contact(&mut self, i: usize, normal: Vec2) {
        let dt = self.config.dt;
        let g = Vec2::new(0.0, -self.config.g_mm_per_ms2());
        let m = &mut self.marbles[i];
        if m.state != MotionState::Ballistic {
            return;
        }
        let prev = m.pos;
        let g_t = g - normal * g.dot(normal);
        m.vel = m.vel - normal * m.vel.dot(normal) + g_t * dt;
        m.pos += m.vel * dt;
        self.check_sinks(i, prev);
    }

    /// Lands a falling marble on the running side of a ramp. Ramp end corners are not collidable.
    fn try_land(&mut self, i: usize, prev: Vec2) -> bool {
        let m = &self.marbles[i];
        let r = m.radius();
        for (ri, ramp) in self.ramps.iter().enumerate() {
            let d_prev = ramp.signed_distance(prev);
            let d_now = ramp.signed_distance(m.pos);
            if d_prev >= r - 1e-9 && d_now < r && m.vel.dot(ramp.normal()) < 0.0 {
                let arc = ramp.project_arc(m.pos);
                if (0.0..=ramp.length).contains(&arc) {
                    let tan = ramp.tangent();
                    let m = &mut self.marbles[i];
                    m.vel = tan * m.vel.dot(tan);
                    m.pos = ramp.center_at(arc, r);
                    m.state = MotionState::OnRamp { ramp: ri, arc };
                    return true;
                }
            }
        }
        false
    }

    fn check_sinks(&mut self, i: usize, prev: Vec2) {
        let m = &self.marbles[i];
        let now = m.pos;
        if !(prev.y > now.y) {
            return;
        }
        let mut best: Option<(usize, f64)> = None;
        for (si, sink) in self.sinks.iter().enumerate() {
            if prev.y > sink.floor && now.y <= sink.floor {
                let f = (prev.y - sink.floor) / (prev.y - now.y);
                let x = prev.x + f * (now.x - prev.x);
                if sink.contains_x(x) && best.is_none_or(|(b, _)| self.sinks[b].floor < sink.floor) {
                    best = Some((si, x));
                }
            }
        }
        if let Some((si, x)) = best {
            let m = &mut self.marbles[i];
            m.pos = Vec2::new(x, self.sinks[si].floor);
            m.state = MotionState::Sunk { sink: si };
        }
    }

    fn capture(&mut self) {
        for li in 0..self.latches.len() {
            if !self.latch_active_now(li) {
                continue;
            }
            let ri = self.latch_ramp[li];
            for i in 0..self.marbles.len() {
                let on_this_ramp = matches!(self.marbles[i].state, MotionState::OnRamp { ramp, .. } if ramp == ri);
                if on_this_ramp && !self.in_soft_contact(self.marbles[i].id) {
                    capture_if_in_reach(&self.latches[li], li, &self.ramps[ri], &mut self.marbles[i]);
                }
            }
        }
    }

    fn evaporate(&mut self) {
        let Some(table) = self.evaporation else {
            return;
        };
        let minutes = self.config.dt / 60_000.0;
        for m in self.marbles.iter_mut().filter(|m| m.is_active()) {
            evaporate_in_place(m, minutes, &table);
        }
    }

    fn resolve_contacts(&mut self, time: f64) -> Result<(), PhysicsError> {
        self.prune_contacts();
        let events = contacts_at(self, time);
        let mut touched = BTreeSet::new();
        for ev in events {
            if touched.contains(&ev.a) || touched.contains(&ev.b) {
                continue;
            }
            touched.insert(ev.a);
            touched.insert(ev.b);
            let (ia, ib) = (ev.a.0 as usize, ev.b.0 as usize);
            let merged_id = MarbleId(self.marbles.len() as u32);
            let outcome = resolve_collision(&self.marbles[ia], &self.marbles[ib], &ev, &self.config, merged_id)?;
            let kind = match outcome {
                CollisionOutcome::Bounced { v1, v2, release_time } => {
                    self.in_contact.insert(pair(ev.a, ev.b));
                    let release_tick = self.config.ticks_for(release_time);
                    if release_tick > self.tick + 1 {
                        for i in [ia, ib] {
                            let m = &mut self.marbles[i];
                            m.vel = m.vel - ev.normal * m.vel.dot(ev.normal);
                            if let MotionState::OnRamp { ramp, .. } = m.state {
                                let tan = self.ramps[ramp].tangent();
                                m.vel = tan * m.vel.dot(tan);
                            }
                        }
                        self.holds.push(ContactHold { a: ev.a, b: ev.b, normal: ev.normal, release_tick, va: v1, vb: v2 });
                    } else {
                        self.set_velocity(ia, v1);
                        self.set_velocity(ib, v2);
                    }
                    OutcomeKind::Bounced
                }
                CollisionOutcome::Coalesced { mut merged } => {
                    if let (MotionState::OnRamp { ramp: ra, .. }, MotionState::OnRamp { ramp: rb, .. }) =
                        (self.marbles[ia].state, self.marbles[ib].state)
                    {
                        if ra == rb {
                            let ramp = &self.ramps[ra];
                            let arc = ramp.project_arc(merged.pos).clamp(0.0, ramp.length);
                            merged.state = MotionState::OnRamp { ramp: ra, arc };
                        }
                    }
                    let id = self.insert(merged)?;
                    self.marbles[ia].state = MotionState::Merged { into: id };
                    self.marbles[ib].state = MotionState::Merged { into: id };
                    OutcomeKind::Coalesced { merged: id }
                }
                CollisionOutcome::Annihilated => {
                    self.marbles[ia].state = MotionState::Annihilated;
                    self.marbles[ib].state = MotionState::Annihilated;
                    OutcomeKind::Annihilated
                }
            };
            self.collisions.push(CollisionRecord {
                time,
                a: ev.a,
                b: ev.b,
                relative_normal_speed: ev.relative_normal_speed,
                normal: ev.normal,
                outcome: kind,
            });
        }
        Ok(())
    }

    /// Sets a velocity, letting the ramp absorb the component off its surface.
    fn set_velocity(&mut self, i: usize, v: Vec2) {
        let m = &mut self.marbles[i];
        m.vel = match m.state {
            MotionState::OnRamp { ramp, .. } => {
                let tan = self.ramps[ramp].tangent();
                tan * v.dot(tan)
            }
            _ => v,
        };
    }

    fn finish_holds(&mut self) {
        let tick = self.tick;
        let (due, rest): (Vec<_>, Vec<_>) = self.holds.iter().partition(|h| h.release_tick <= tick);
        self.holds = rest;
        for h in due {
            for (id, post) in [(h.a, h.va), (h.b, h.vb)] {
                let i = id.0 as usize;
                if !self.marbles[i].state.is_mobile() {
                    continue;
                }
                let cur = self.marbles[i].vel;
                let v = cur - h.normal * cur.dot(h.normal) + h.normal * post.dot(h.normal);
                self.set_velocity(i, v);
            }
        }
    }

    /// Forgets contact pairs that have separated or left play.
    fn prune_contacts(&mut self) {
        let marbles = &self.marbles;
        let holds = &self.holds;
        self.in_contact.retain(|&(a, b)| {
            let (ma, mb) = (&marbles[a.0 as usize], &marbles[b.0 as usize]);
            if ma.state.is_terminal() || mb.state.is_terminal() {
                return false;
            }
            holds.iter().any(|h| pair(h.a, h.b) == (a, b)) || (mb.pos - ma.pos).norm() <= ma.radius() + mb.radius()
        });
    }

    fn check_integrity(&self) -> Result<(), PhysicsError> {
        for m in &self.marbles {
            if !m.pos.is_finite() || !m.vel.is_finite() || !m.volume.is_finite() {
                return Err(PhysicsError::Integrity {
                    time: self.time(),
                    detail: format!("marble {} has non-finite state {:?}", m.id, m),
                });
            }
        }
        Ok(())
    }
}

fn contacts_at(world: &World, time: f64) -> Vec<ContactEvent> {
    let movers: Vec<&Marble> = world
        .marbles
        .iter()
        .filter(|m| m.state.is_mobile() && !world.in_soft_contact(m.id))
        .collect();
    let mut out = Vec::new();
    for (k, a) in movers.iter().enumerate() {
        for b in &movers[k + 1..] {
            if world.in_contact.contains(&pair(a.id, b.id)) {
                continue;
            }
            let d = b.pos - a.pos;
            if d.norm() > a.radius() + b.radius() {
                continue;
            }
            let Some(normal) = d.normalized() else { continue };
            let closing = (a.vel - b.vel).dot(normal);
            if closing > 0.0 {
                out.push(ContactEvent { a: a.id, b: b.id, relative_normal_speed: closing, normal, time });
            }
        }
    }
    out
}

/// Approaching pairs currently touching, excluding pairs already resolved during this approach.
pub fn detect_contacts(world: &World) -> Vec<ContactEvent> {
    contacts_at(world, world.time())
}

/// Pure form of [`World::advance`].
pub fn step(world: &World) -> Result<World, PhysicsError> {
    let mut next = world.clone();
    next.advance()?;
    Ok(next)
}
