//! Running a world to completion while sampling it, and rendering the samples
//! as CSV or an SVG overlay.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::logic::SinkRegion;
use crate::physics::{CollisionRecord, Marble, MarbleId, PhysicsError, RampSegment, SpawnRecord, World};

/// Default sampling rate, Hz.
pub const DEFAULT_SAMPLE_HZ: f64 = 120.0;

pub const CSV_HEADER: &str = "t_ms,id,x_mm,y_mm,vx_mps,vy_mps,state";

/// One sampled marble state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub t_ms: f64,
    pub id: MarbleId,
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
    pub state: String,
}

impl TraceRecord {
    fn of(t_ms: f64, m: &Marble) -> Self {
        Self { t_ms, id: m.id, x: m.pos.x, y: m.pos.y, vx: m.vel.x, vy: m.vel.y, state: m.state.tag().to_string() }
    }
}

/// Result of a run: samples, final marble states and the geometry they moved in.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
    pub marbles: Vec<Marble>,
    pub collisions: Vec<CollisionRecord>,
    pub spawns: Vec<SpawnRecord>,
    pub ramps: Vec<RampSegment>,
    pub sinks: Vec<SinkRegion>,
    pub end_ms: f64,
    /// The horizon was reached with marbles still in play or pending.
    pub timed_out: bool,
}

impl Trace {
    /// Samples of one marble, in time order.
    pub fn of_marble(&self, id: MarbleId) -> impl Iterator<Item = &TraceRecord> {
        self.records.iter().filter(move |r| r.id == id)
    }

    pub fn same_geometry(&self, other: &Trace) -> bool {
        self.ramps == other.ramps && self.sinks == other.sinks
    }
}

/// Advances `world` until quiescence or `horizon_ms`, sampling every live marble at
/// `sample_hz` plus one row when each marble reaches a terminal state.
pub fn run(mut world: World, horizon_ms: f64, sample_hz: f64) -> Result<Trace, PhysicsError> {
    if !(sample_hz > 0.0 && sample_hz.is_finite()) {
        return Err(PhysicsError::Domain(format!("sample rate must be positive, got {sample_hz}")));
    }
    let period_ms = 1000.0 / sample_hz;
    let cfg = world.config;
    let end_tick = cfg.ticks_for(horizon_ms);
    let mut records = Vec::new();
    let mut closed: Vec<bool> = Vec::new();
    let mut k: u64 = 0;
    let mut next_sample = 0u64;

    loop {
        let tick = world.tick();
        let t = world.time();
        closed.resize(world.marbles.len(), false);
        let sampling = tick == next_sample;
        for (i, m) in world.marbles.iter().enumerate() {
            if closed[i] {
                continue;
            }
            if m.state.is_terminal() {
                records.push(TraceRecord::of(t, m));
                closed[i] = true;
            } else if sampling {
                records.push(TraceRecord::of(t, m));
            }
        }
        if sampling {
            k += 1;
            next_sample = cfg.ticks_for(k as f64 * period_ms).max(tick + 1);
        }
        if world.is_quiescent() || tick >= end_tick {
            break;
        }
        world.advance()?;
    }

    let timed_out = !world.is_quiescent();
    Ok(Trace {
        records,
        end_ms: world.time(),
        timed_out,
        marbles: world.marbles,
        collisions: world.collisions,
        spawns: world.spawns,
        ramps: world.ramps,
        sinks: world.sinks,
    })
}

/// Folds -0.0 into 0.0 so it never prints as "-0.000".
fn nz(v: f64) -> f64 {
    v + 0.0
}

/// CSV with the fixed header; positions to 1e-6 mm, velocities to 1e-9 m/s.
pub fn to_csv(records: &[TraceRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{:.3},{},{:.6},{:.6},{:.9},{:.9},{}",
            r.t_ms,
            r.id,
            nz(r.x),
            nz(r.y),
            nz(r.vx),
            nz(r.vy),
            r.state
        );
    }
    out
}

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Static SVG: ramps as thick grey lines, sinks as dashed catch lines, one polyline per marble.
/// Coordinates are mm with y flipped.
pub fn to_svg(trace: &Trace) -> String {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for r in &trace.ramps {
        let (a, b) = (r.anchor, r.surface_point(r.length));
        xs.extend([a.x, b.x]);
        ys.extend([a.y, b.y]);
    }
    for s in &trace.sinks {
        xs.extend([s.x.0, s.x.1]);
        ys.push(s.floor);
    }
    for rec in &trace.records {
        xs.push(rec.x);
        ys.push(rec.y);
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
    let (mut x0, mut x1) = (fold(&xs, f64::min, f64::INFINITY), fold(&xs, f64::max, f64::NEG_INFINITY));
    let (mut y0, mut y1) = (fold(&ys, f64::min, f64::INFINITY), fold(&ys, f64::max, f64::NEG_INFINITY));
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-10.0, 10.0, -10.0, 10.0);
    }
    let pad = 5.0;
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.3} {:.3} {:.3} {:.3}" width="{:.0}mm" height="{:.0}mm">"#,
        x0 - pad,
        -y1 - pad,
        w,
        h,
        w,
        h
    );
    out.push_str("<g id=\"ramps\" stroke=\"#888\" stroke-width=\"1.2\" stroke-linecap=\"round\">\n");
    for r in &trace.ramps {
        let (a, b) = (r.anchor, r.surface_point(r.length));
        let _ = writeln!(
            out,
            r#"<line id="ramp-{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            r.id,
            nz(a.x),
            nz(-a.y),
            nz(b.x),
            nz(-b.y)
        );
    }
    out.push_str("</g>\n<g id=\"sinks\" stroke=\"#444\" stroke-width=\"0.8\" stroke-dasharray=\"2 1\">\n");
    for s in &trace.sinks {
        let _ = writeln!(
            out,
            r#"<line id="sink-{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"><title>{}</title></line>"#,
            s.id,
            nz(s.x.0),
            nz(-s.floor),
            nz(s.x.1),
            nz(-s.floor),
            s.label
        );
    }
    out.push_str("</g>\n<g id=\"marbles\" fill=\"none\" stroke-width=\"0.6\">\n");
    for m in &trace.marbles {
        let pts: Vec<String> = trace.of_marble(m.id).map(|r| format!("{:.3},{:.3}", nz(r.x), nz(-r.y))).collect();
        if pts.is_empty() {
            continue;
        }
        let _ = writeln!(
            out,
            r#"<polyline id="marble-{}" stroke="{}" points="{}"/>"#,
            m.id,
            PALETTE[m.id.0 as usize % PALETTE.len()],
            pts.join(" ")
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
