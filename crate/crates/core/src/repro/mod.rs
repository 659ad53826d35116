//! Acceptance suite: each criterion recomputes its measured values and sets
//! them against the expected ones.

pub mod gen;

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::actuation::{emission_times, max_rate_ml_per_h, DropletSource, Emission, LatchWindow};
use crate::fixtures;
use crate::lifetime::{time_to_dryout, EvaporationTable};
use crate::logic::{classify_model, compare, evaluate_truth_table, Channel, Expectation, ModelClass, TruthTable};
use crate::netlist::{assignment, build_world, parse, parse_bytes, serialize, validate, CircuitSpec};
use crate::physics::{
    coalesce, resolve_collision, CoatingKind, CoatingSpec, CollisionModel, CollisionOutcome, Marble, MarbleId,
    MotionState, OutcomeKind, Vec2, World,
};
use crate::trace::{run, to_csv, Trace, DEFAULT_SAMPLE_HZ};

/// One measured quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: String,
    pub expected: String,
    pub passed: bool,
}

fn check(name: impl Into<String>, measured: impl Into<String>, expected: impl Into<String>, passed: bool) -> Check {
    Check { name: name.into(), measured: measured.into(), expected: expected.into(), passed }
}

fn failure(name: &str, err: impl std::fmt::Display) -> Check {
    check(name, format!("error: {err}"), "no error", false)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub number: u8,
    pub key: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_ms: f64,
    pub checks: Vec<Check>,
}

/// (number, key, title) for every criterion.
pub const CRITERIA: [(u8, &str, &str); 11] = [
    (1, "gate", "gate truth table"),
    (2, "regimes", "bounce/coalesce thresholds"),
    (3, "ordering", "soft-sphere vs billiard-ball ordering"),
    (4, "coalescence", "coalescence bookkeeping"),
    (5, "half_adder", "half-adder truth table"),
    (6, "full_adder", "full-adder truth table"),
    (7, "sync", "latch synchronization"),
    (8, "evaporation", "evaporation rates and dry-out"),
    (9, "cadence", "droplet formation cadence"),
    (10, "determinism", "byte-identical traces"),
    (11, "properties", "randomized property suites"),
];

/// Runs one criterion by key.
pub fn run_criterion(key: &str) -> Option<CriterionReport> {
    let &(number, key, title) = CRITERIA.iter().find(|c| c.1 == key)?;
    let start = Instant::now();
    let checks = match key {
        "gate" => gate_table(),
        "regimes" => regimes(),
        "ordering" => ordering(),
        "coalescence" => coalescence(),
        "half_adder" => half_adder_table(),
        "full_adder" => full_adder_table(),
        "sync" => sync(),
        "evaporation" => evaporation(),
        "cadence" => cadence(),
        "determinism" => determinism(),
        _ => properties(),
    };
    let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
    Some(CriterionReport { number, key, title, passed, elapsed_ms: start.elapsed().as_secs_f64() * 1e3, checks })
}

/// Runs every criterion, or only those whose key is listed in `only` (comma separated).
pub fn run_all(only: Option<&str>) -> Result<Vec<CriterionReport>, String> {
    let keys: Vec<&str> = match only {
        None => CRITERIA.iter().map(|c| c.1).collect(),
        Some(list) => {
            let ks: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            if let Some(bad) = ks.iter().find(|k| !CRITERIA.iter().any(|c| c.1 == **k)) {
                let known: Vec<&str> = CRITERIA.iter().map(|c| c.1).collect();
                return Err(format!("unknown criterion `{bad}`; known: {}", known.join(", ")));
            }
            ks
        }
    };
    Ok(keys.into_iter().filter_map(run_criterion).collect())
}

pub fn report_text(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "[{}] {:>2} {} ({:.0} ms)",
            if r.passed { "PASS" } else { "FAIL" },
            r.number,
            r.title,
            r.elapsed_ms
        );
        for c in &r.checks {
            let _ = writeln!(
                out,
                "       {} {}: measured {}; expected {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.measured,
                c.expected
            );
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "{passed}/{} criteria passed", reports.len());
    out
}

pub fn report_json(reports: &[CriterionReport]) -> String {
    serde_json::to_string_pretty(reports).unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}"))
}

fn bits_label(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn table_checks(spec: &CircuitSpec, expect: Expectation, budget_ms: Option<f64>) -> (Vec<Check>, Option<TruthTable>) {
    let start = Instant::now();
    let table = match evaluate_truth_table(spec, &spec.inputs()) {
        Ok(t) => t,
        Err(e) => return (vec![failure("truth table", e)], None),
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let cmp = compare(&table, expect);
    let mut checks = vec![check(
        "rows matching",
        format!("{}/{}", cmp.matched, cmp.total),
        format!("{}/{}", cmp.total, cmp.total),
        cmp.passed(),
    )];
    for m in &cmp.mismatches {
        checks.push(check("mismatch", m.clone(), "none", false));
    }
    if let Some(budget) = budget_ms {
        checks.push(check("runtime", format!("{elapsed:.0} ms"), format!("< {budget:.0} ms"), elapsed < budget));
    }
    (checks, Some(table))
}

fn gate_table() -> Vec<Check> {
    let (mut checks, table) = table_checks(&fixtures::gate(), Expectation::Gate, Some(10_000.0));
    if let Some(t) = table {
        for r in &t.rows {
            let got: Vec<String> = t.channels.iter().map(|c| format!("{}={}", c, r.output(*c) as u8)).collect();
            let want: Vec<String> =
                Expectation::Gate.outputs(&r.inputs).iter().map(|(c, v)| format!("{}={}", c, *v as u8)).collect();
            let (got, want) = (got.join(" "), want.join(" "));
            let ok = r.status.is_ok() && got == want;
            checks.push(check(format!("A B = {}", bits_label(&r.inputs)), got, want, ok));
        }
    }
    checks
}

fn half_adder_table() -> Vec<Check> {
    table_checks(&fixtures::half_adder(), Expectation::Half, None).0
}

fn full_adder_table() -> Vec<Check> {
    let spec = fixtures::full_adder();
    let (mut checks, table) = table_checks(&spec, Expectation::Full, None);
    let Some(t) = table else { return checks };
    for (bits, want) in [([true, true, false], "10"), ([false, true, true], "10"), ([false, true, false], "01"), ([true, true, true], "11")] {
        let row = t.rows.iter().find(|r| r.inputs == bits);
        let got = row.map_or("missing".to_string(), |r| {
            format!("{}{}", r.output(Channel::Carry) as u8, r.output(Channel::Sum) as u8)
        });
        let name = format!("{}+{}+{}", bits[0] as u8, bits[1] as u8, bits[2] as u8);
        checks.push(check(name, got.clone(), want, got == want));
    }
    let worst = t.rows.iter().map(|r| r.occupied_sinks(&spec, Channel::Carry)).max().unwrap_or(0);
    checks.push(check("carry sinks hit in one row (max)", worst.to_string(), "<= 1", worst <= 1));
    checks
}

fn gate_world(spec: &CircuitSpec, a: bool, b: bool) -> Result<World, String> {
    build_world(spec, &assignment(&[("A", a), ("B", b)])).map_err(|e| e.to_string())
}

fn gate_trace(spec: &CircuitSpec, a: bool, b: bool) -> Result<Trace, String> {
    let w = gate_world(spec, a, b)?;
    run(w, spec.config.horizon_ms(), DEFAULT_SAMPLE_HZ).map_err(|e| e.to_string())
}

/// Relative normal speed and outcome of the first contact when both gate latches
/// hold their marbles `d` mm above the lower end of the ramp.
pub fn contact_at_release_distance(d: f64) -> Result<(f64, OutcomeKind), String> {
    let mut spec = fixtures::gate();
    for l in &mut spec.latches {
        let len = spec.ramps.iter().find(|r| r.id == l.ramp).map(|r| r.length).unwrap_or(0.0);
        l.hold = len - d;
    }
    let tr = gate_trace(&spec, true, true)?;
    tr.collisions
        .first()
        .map(|c| (c.relative_normal_speed, c.outcome))
        .ok_or_else(|| format!("no contact with release distance {d} mm"))
}

/// Smallest release distance (to 1e-9 mm) whose contact speed reaches `target`.
pub fn calibrate_release(target: f64) -> Result<(f64, f64, OutcomeKind), String> {
    let (mut lo, mut hi) = (1.0, 12.0);
    let (v_lo, _) = contact_at_release_distance(lo)?;
    let (mut v_hi, mut out_hi) = contact_at_release_distance(hi)?;
    if !(v_lo < target && target <= v_hi) {
        return Err(format!("target {target} m/s not bracketed by [{v_lo}, {v_hi}]"));
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        let (v, out) = contact_at_release_distance(mid)?;
        if v >= target {
            (hi, v_hi, out_hi) = (mid, v, out);
        } else {
            lo = mid;
        }
    }
    Ok((hi, v_hi, out_hi))
}

fn regimes() -> Vec<Check> {
    let slope = fixtures::gate().ramps[0].slope_deg.to_radians();
    let mut checks = Vec::new();
    for (target, want) in [(0.21, "bounced"), (0.29, "coalesced")] {
        match calibrate_release(target) {
            Ok((d, v, out)) => {
                let got = match out {
                    OutcomeKind::Bounced => "bounced",
                    OutcomeKind::Coalesced { .. } => "coalesced",
                    OutcomeKind::Annihilated => "annihilated",
                };
                checks.push(check(
                    format!("contact speed for {target} m/s"),
                    format!("{v:.5} m/s (release {d:.4} mm along ramp, {:.4} mm drop)", d * slope.sin()),
                    format!("[{target}, {:.3}] m/s", target + 2e-3),
                    v >= target && v - target <= 2e-3,
                ));
                checks.push(check(format!("regime at {target} m/s"), got, want, got == want));
            }
            Err(e) => checks.push(failure(&format!("calibration for {target} m/s"), e)),
        }
    }
    checks
}

fn model_class(spec: &CircuitSpec) -> Result<(ModelClass, Vec<f64>, f64, f64), String> {
    let ab = gate_trace(spec, true, true)?;
    let a = gate_trace(spec, true, false)?;
    let b = gate_trace(spec, false, true)?;
    let class = classify_model(&ab, &a, &b).map_err(|e| e.to_string())?;
    let xs = ab.marbles.iter().filter(|m| !matches!(m.state, MotionState::Merged { .. })).map(|m| m.pos.x).collect();
    Ok((class, xs, a.marbles[0].pos.x, b.marbles[0].pos.x))
}

fn ordering() -> Vec<Check> {
    let mut checks = Vec::new();
    for (model, want) in [(CollisionModel::Ssm, ModelClass::Ssm), (CollisionModel::Bbm, ModelClass::Bbm)] {
        let mut spec = fixtures::gate();
        spec.config.model = Some(model);
        match model_class(&spec) {
            Ok((class, xs, xa, xb)) => checks.push(check(
                format!("model {model}"),
                format!("{class:?}: collided x = {xs:.3?} mm, singles x = {xa:.3} / {xb:.3} mm"),
                format!("{want:?}"),
                class == want,
            )),
            Err(e) => checks.push(failure(&format!("model {model}"), e)),
        }
    }
    checks
}

fn rel_err(a: Vec2, b: Vec2) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn coalescence() -> Vec<Check> {
    let mut checks = Vec::new();
    let make = |id, x, vx| {
        let mut m = Marble::new(MarbleId(id), Vec2::new(x, 0.0), 11.6, CoatingSpec::ni_uhdpe(), 2.5);
        m.vel = Vec2::new(vx, -0.08);
        m.state = MotionState::Ballistic;
        m
    };
    let (m1, m2) = (make(0, -1.404, 0.16), make(1, 1.404, -0.16));
    match coalesce(&m1, &m2, MarbleId(2)) {
        Ok(m) => {
            checks.push(check("merged volume", format!("{} uL", m.volume), "23.2 uL (1e-9)", (m.volume - 23.2).abs() <= 1e-9));
            let e = rel_err(m.momentum(), m1.momentum() + m2.momentum());
            checks.push(check("momentum error", format!("{e:.2e}"), "<= 1e-9 relative", e <= 1e-9));
            checks.push(check("head-on |vx|", format!("{:.2e} m/s", m.vel.x.abs()), "< 1e-9 m/s", m.vel.x.abs() < 1e-9));
        }
        Err(e) => checks.push(failure("coalesce", e)),
    }

    // Same thing through the gate, forcing fusion at contact.
    let mut spec = fixtures::gate();
    spec.config.model = Some(CollisionModel::FusionOnly);
    match gate_world(&spec, true, true).and_then(|w| first_contact(w, spec.config.horizon_ms())) {
        Ok(Some(w)) => match w.collisions[0].outcome {
            OutcomeKind::Coalesced { merged } => {
                let m = &w.marbles[merged.0 as usize];
                let (a, b) = (&w.marbles[0], &w.marbles[1]);
                let e = rel_err(m.momentum(), a.momentum() + b.momentum());
                checks.push(check(
                    "gate fusion: volume, momentum error, |vx|",
                    format!("{} uL, {e:.2e}, {:.2e} m/s", m.volume, m.vel.x.abs()),
                    "23.2 uL, <= 1e-9, < 1e-9 m/s",
                    (m.volume - 23.2).abs() <= 1e-9 && e <= 1e-9 && m.vel.x.abs() < 1e-9,
                ));
            }
            other => checks.push(check("gate fusion outcome", format!("{other:?}"), "coalesced", false)),
        },
        Ok(None) => checks.push(check("gate fusion outcome", "no contact", "coalesced", false)),
        Err(e) => checks.push(failure("gate fusion run", e)),
    }
    checks
}

/// Steps until the first contact has been resolved.
fn first_contact(mut w: World, horizon: f64) -> Result<Option<World>, String> {
    let end = w.config.ticks_for(horizon);
    while w.collisions.is_empty() {
        if w.is_quiescent() || w.tick() >= end {
            return Ok(None);
        }
        w.advance().map_err(|e| e.to_string())?;
    }
    Ok(Some(w))
}

/// Position of a marble and whether it is still mobile; `None` before it exists.
type PairSample = [Option<(Vec2, bool)>; 2];

/// Positions of marbles 0 and 1 at every tick until quiescence.
fn tick_positions(mut w: World, horizon: f64) -> Result<Vec<PairSample>, String> {
    let end = w.config.ticks_for(horizon);
    let mut out = Vec::new();
    loop {
        let snap = |i: usize| w.marbles.get(i).map(|m| (m.pos, matches!(m.state, MotionState::Held { .. })));
        out.push([snap(0), snap(1)]);
        if w.is_quiescent() || w.tick() >= end {
            return Ok(out);
        }
        w.advance().map_err(|e| e.to_string())?;
    }
}

fn sync() -> Vec<Check> {
    let mut checks = Vec::new();
    let spec = fixtures::gate();
    let horizon = spec.config.horizon_ms();
    let run_ticks = |spec: &CircuitSpec, a, b| gate_world(spec, a, b).and_then(|w| tick_positions(w, horizon));

    match run_ticks(&spec, true, true) {
        Ok(ticks) => {
            let mut worst: f64 = 0.0;
            let mut n = 0;
            for t in &ticks {
                if let [Some((pa, _)), Some((pb, _))] = t {
                    worst = worst.max((pa.x + pb.x).abs()).max((pa.y - pb.y).abs());
                    n += 1;
                }
            }
            checks.push(check(
                "mirror deviation, equal off-times",
                format!("{worst:.3e} mm over {n} ticks"),
                "<= 1e-9 mm",
                worst <= 1e-9 && n > 0,
            ));
        }
        Err(e) => checks.push(failure("mirror run", e)),
    }

    let mut late = spec.clone();
    late.latches[1].schedule = vec![LatchWindow::new(0.0, 700.0)];
    let shift = spec.config.physics().ticks_for(100.0) as usize;
    match (run_ticks(&spec, false, true), run_ticks(&late, true, true)) {
        (Ok(reference), Ok(offset)) => {
            let release = |ticks: &[[Option<(Vec2, bool)>; 2]], i: usize| {
                ticks.iter().position(|t| t[i].is_some_and(|(_, held)| held)).and_then(|first_held| {
                    ticks[first_held..].iter().position(|t| t[i].is_some_and(|(_, held)| !held)).map(|k| k + first_held)
                })
            };
            // the lone reference marble has id 0; in the two-marble run B is id 1
            let (r0, r1) = (release(&reference, 0), release(&offset, 1));
            let dt = spec.config.physics().dt;
            let measured = match (r0, r1) {
                (Some(a), Some(b)) => (b as f64 - a as f64) * dt,
                _ => f64::NAN,
            };
            checks.push(check("release shift", format!("{measured:.6} ms"), "100 ms", (measured - 100.0).abs() < 1e-9));
            let mut worst: f64 = 0.0;
            let mut n = 0;
            if let Some(r0) = r0 {
                for (k, t) in reference.iter().enumerate().skip(r0) {
                    match (t[0], offset.get(k + shift).and_then(|o| o[1])) {
                        (Some((p, _)), Some((q, _))) => {
                            worst = worst.max((p - q).norm());
                            n += 1;
                        }
                        _ => break,
                    }
                }
            }
            checks.push(check(
                "shifted trajectory deviation",
                format!("{worst:.3e} mm over {n} ticks"),
                "0 mm (same motion 100 ms later)",
                worst <= 1e-9 && n > 100,
            ));
        }
        (Err(e), _) | (_, Err(e)) => checks.push(failure("offset runs", e)),
    }
    checks
}

fn evaporation() -> Vec<Check> {
    let table = EvaporationTable::default();
    let mut checks = Vec::new();
    let want_rates = [0.1392, 0.1133, 0.1107, 0.0998];
    let want_dry = [71.84, 88.26, 90.33, 100.20];
    let mut lives = Vec::new();
    for ((kind, rate), dry) in CoatingKind::ALL.into_iter().zip(want_rates).zip(want_dry) {
        let got = table.rate(kind);
        checks.push(check(format!("{} rate", kind.token()), format!("{got} mg/min"), format!("{rate} mg/min"), got == rate));
        let m = Marble::new(MarbleId(0), Vec2::ZERO, 10.0, CoatingSpec::of_kind(kind), 0.0);
        match time_to_dryout(&m, &table) {
            Ok(t) => {
                lives.push((kind, t));
                checks.push(check(
                    format!("{} dry-out of 10 uL", kind.token()),
                    format!("{t:.4} min"),
                    format!("{dry} min (0.01)"),
                    (t - dry).abs() <= 0.01,
                ));
            }
            Err(e) => checks.push(failure(kind.token(), e)),
        }
    }
    let longest = lives.iter().max_by(|a, b| a.1.total_cmp(&b.1)).map(|l| l.0);
    checks.push(check(
        "longest-lived coating",
        longest.map_or("none", |k| k.token()),
        "ni_uhdpe",
        longest == Some(CoatingKind::NiUhdpe),
    ));
    checks
}

fn cadence() -> Vec<Check> {
    let source = |rate| DropletSource {
        id: "s".into(),
        ramp: "r".into(),
        input: "A".into(),
        entry: 0.0,
        volume: 11.6,
        coating: CoatingSpec::ni_uhdpe(),
        coating_mass: 2.5,
        emission: Some(Emission::FeedRate(rate)),
    };
    let mut checks = Vec::new();
    let typical = source(7.0);
    let p = typical.period_ms().unwrap_or(f64::NAN);
    checks.push(check("period at 7.0 mL/h", format!("{p:.3} ms"), "5966 ms (1 ms)", (p - 5966.0).abs() <= 1.0));
    let max_rate = max_rate_ml_per_h(11.6);
    let fast = source(max_rate);
    let p = fast.period_ms().unwrap_or(f64::NAN);
    checks.push(check(
        format!("period at {max_rate:.2} mL/h"),
        format!("{p:.6} ms"),
        "125 ms",
        (p - 125.0).abs() < 1e-9,
    ));
    match emission_times(&fast, 999.0) {
        Ok(ts) => checks.push(check("drops in the first second", ts.len().to_string(), "8", ts.len() == 8)),
        Err(e) => checks.push(failure("emission times", e)),
    }
    checks
}

/// CSV trace of the gate with both inputs set.
pub fn gate_csv() -> Result<String, String> {
    gate_trace(&fixtures::gate(), true, true).map(|t| to_csv(&t.records))
}

fn determinism() -> Vec<Check> {
    match (gate_csv(), gate_csv()) {
        (Ok(a), Ok(b)) => vec![check(
            "two runs of A=1,B=1",
            format!("{} and {} bytes, identical: {}", a.len(), b.len(), a == b),
            "identical",
            a == b,
        )],
        (Err(e), _) | (_, Err(e)) => vec![failure("trace", e)],
    }
}

/// Momentum and energy laws over `n` random contacts. Returns the number of violations and the worst errors.
pub fn collision_laws(n: usize, seed: u64) -> (usize, f64, f64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut bad, mut worst_p, mut worst_e) = (0, 0.0f64, 0.0f64);
    for _ in 0..n {
        let c = gen::random_collision(&mut rng);
        let p0 = c.m1.momentum() + c.m2.momentum();
        let scale = c.m1.mass() * c.m1.vel.norm() + c.m2.mass() * c.m2.vel.norm();
        let ke0 = c.m1.kinetic_energy() + c.m2.kinetic_energy();
        let (p1, ke1) = match resolve_collision(&c.m1, &c.m2, &c.event, &c.config, MarbleId(2)) {
            Ok(CollisionOutcome::Bounced { v1, v2, .. }) => {
                let (m1, m2) = (c.m1.mass(), c.m2.mass());
                (v1 * m1 + v2 * m2, 0.5 * (m1 * v1.norm_sq() + m2 * v2.norm_sq()))
            }
            Ok(CollisionOutcome::Coalesced { merged }) => (merged.momentum(), merged.kinetic_energy()),
            _ => {
                bad += 1;
                continue;
            }
        };
        let dp = (p1 - p0).norm() / scale;
        let de = (ke1 - ke0) / ke0.max(f64::MIN_POSITIVE);
        worst_p = worst_p.max(dp);
        worst_e = worst_e.max(de);
        if dp > 1e-9 || de > 1e-9 {
            bad += 1;
        }
    }
    (bad, worst_p, worst_e)
}

/// Round-trips `n` random specs. Returns the number that failed to validate or did not survive.
pub fn round_trips(n: usize, seed: u64) -> usize {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .filter(|_| {
            let spec = gen::random_spec(&mut rng);
            !validate(&spec).is_empty() || parse(&serialize(&spec)).as_ref() != Ok(&spec)
        })
        .count()
}

/// Parses `n` fuzzed byte strings; returns (panics, accepted, rejected).
pub fn fuzz_parse(n: usize, seed: u64) -> (usize, usize, usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut panics, mut ok, mut rejected) = (0, 0, 0);
    let hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    for _ in 0..n {
        let bytes = gen::fuzz_bytes(&mut rng);
        match std::panic::catch_unwind(|| parse_bytes(&bytes)) {
            Ok(Ok(_)) => ok += 1,
            Ok(Err(errs)) if !errs.is_empty() => rejected += 1,
            _ => panics += 1,
        }
    }
    std::panic::set_hook(hook);
    (panics, ok, rejected)
}

fn properties() -> Vec<Check> {
    let (bad, wp, we) = collision_laws(1000, 0x5eed);
    let (panics, ok, rejected) = fuzz_parse(10_000, 0xf022);
    let rt = round_trips(500, 0xc0de);
    vec![
        check(
            "1000 random contacts",
            format!("{bad} violations; worst momentum error {wp:.2e}, worst energy gain {we:.2e}"),
            "0 violations",
            bad == 0,
        ),
        check("500 generated specs round-trip", format!("{rt} failures"), "0 failures", rt == 0),
        check(
            "10000 fuzzed inputs",
            format!("{panics} panics ({ok} parsed, {rejected} rejected)"),
            "0 panics",
            panics == 0,
        ),
    ]
}

/// Per-criterion pass flags keyed by number; handy for summaries.
pub fn summary(reports: &[CriterionReport]) -> BTreeMap<u8, bool> {
    reports.iter().map(|r| (r.number, r.passed)).collect()
}
