//! Command implementations behind the `marblegate` binary. Each returns a process exit code
//! and writes results to `out`, diagnostics to `err`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::fixtures;
use crate::logic::{classify_exit, compare, evaluate_truth_table, Exit, Expectation};
use crate::netlist::{build_world, load, CircuitSpec, NetlistError};
use crate::physics::{CollisionModel, MotionState};
use crate::repro;
use crate::trace::{run, to_csv, to_svg, DEFAULT_SAMPLE_HZ};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "marblegate", version, about = "Liquid-marble collision gate simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one input assignment and report where every marble went.
    Simulate {
        /// Netlist file; bundled names (gate.lmc, half_adder.lmc, full_adder.lmc, reflector.lmc) work too.
        netlist: PathBuf,
        /// Input bits, e.g. A=1,B=0.
        #[arg(long = "in", value_name = "ASSIGNMENT", default_value = "")]
        inputs: String,
        /// Write the sampled trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write a trajectory overlay as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Stop after this many ms even if marbles are still moving.
        #[arg(long, value_name = "MS")]
        until: Option<f64>,
        /// Override the collision model.
        #[arg(long, value_parser = parse_model)]
        model: Option<CollisionModel>,
        /// Accepted for scripts; the engine has no random state.
        #[arg(long)]
        seedless: bool,
        #[arg(long, value_name = "HZ", default_value_t = DEFAULT_SAMPLE_HZ)]
        sample_hz: f64,
    },
    /// Run every input assignment and print the truth table.
    Truthtable {
        netlist: PathBuf,
        /// Compare with an abstract function.
        #[arg(long, value_parser = parse_expect)]
        expect: Option<Expectation>,
        /// CSV instead of aligned text.
        #[arg(long)]
        csv: bool,
        #[arg(long, value_parser = parse_model)]
        model: Option<CollisionModel>,
    },
    /// Run the acceptance checks and report measured against expected values.
    Repro {
        /// Comma-separated criterion keys, e.g. evaporation,cadence.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_model(s: &str) -> Result<CollisionModel, String> {
    s.parse::<CollisionModel>().map_err(|e| e.to_string())
}

fn parse_expect(s: &str) -> Result<Expectation, String> {
    s.parse()
}

/// Parses `A=1,B=0`. Empty text is an empty assignment.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<String, bool>, String> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected NAME=0|1, got `{part}`"))?;
        let bit = match v.trim() {
            "1" => true,
            "0" => false,
            other => return Err(format!("input {k} must be 0 or 1, got `{other}`")),
        };
        if out.insert(k.trim().to_string(), bit).is_some() {
            return Err(format!("input {k} given twice"));
        }
    }
    Ok(out)
}

fn read_netlist(path: &Path) -> Result<String, String> {
    match std::fs::read(path) {
        Ok(bytes) => String::from_utf8(bytes).map_err(|_| format!("{}: not valid UTF-8", path.display())),
        Err(e) => path
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(fixtures::text)
            .filter(|_| path.parent().is_none_or(|p| p.as_os_str().is_empty()))
            .map(str::to_string)
            .ok_or_else(|| format!("{}: {e}", path.display())),
    }
}

fn report_netlist_error(err: &mut dyn Write, path: &Path, e: &NetlistError) {
    match e {
        NetlistError::Parse(list) => {
            for p in list {
                let _ = writeln!(err, "{}:{p}", path.display());
            }
        }
        NetlistError::Invalid(list) => {
            for s in list {
                let _ = writeln!(err, "{}: {s}", path.display());
            }
        }
        other => {
            let _ = writeln!(err, "{}: {other}", path.display());
        }
    }
}

fn load_spec(path: &Path, model: Option<CollisionModel>, err: &mut dyn Write) -> Option<CircuitSpec> {
    let text = match read_netlist(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return None;
        }
    };
    match load(&text) {
        Ok(mut spec) => {
            if model.is_some() {
                spec.config.model = model;
            }
            Some(spec)
        }
        Err(e) => {
            report_netlist_error(err, path, &e);
            None
        }
    }
}

pub fn run_cli(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Simulate { netlist, inputs, trace, svg, until, model, seedless: _, sample_hz } => {
            simulate(&netlist, &inputs, trace.as_deref(), svg.as_deref(), until, model, sample_hz, out, err)
        }
        Command::Truthtable { netlist, expect, csv, model } => truthtable(&netlist, expect, csv, model, out, err),
        Command::Repro { only, json } => repro_cmd(only.as_deref(), json, out, err),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn simulate(
    path: &Path,
    inputs: &str,
    trace_path: Option<&Path>,
    svg_path: Option<&Path>,
    until: Option<f64>,
    model: Option<CollisionModel>,
    sample_hz: f64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(spec) = load_spec(path, model, err) else { return EXIT_INPUT };
    let assignment = match parse_assignment(inputs) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let world = match build_world(&spec, &assignment) {
        Ok(w) => w,
        Err(e) => {
            report_netlist_error(err, path, &e);
            return EXIT_INPUT;
        }
    };
    let horizon = until.unwrap_or_else(|| spec.config.horizon_ms());
    let trace = match run(world, horizon, sample_hz) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_RUNTIME;
        }
    };
    for (p, body) in [(trace_path, trace_path.map(|_| to_csv(&trace.records))), (svg_path, svg_path.map(|_| to_svg(&trace)))] {
        if let (Some(p), Some(body)) = (p, body) {
            if let Err(e) = std::fs::write(p, body) {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                return EXIT_INPUT;
            }
        }
    }

    if trace.marbles.is_empty() {
        let _ = writeln!(out, "no marbles");
        return EXIT_OK;
    }
    for c in &trace.collisions {
        let _ = writeln!(
            out,
            "t={:.2} ms: {} and {} met at {:.4} m/s -> {:?}",
            c.time, c.a, c.b, c.relative_normal_speed, c.outcome
        );
    }
    let origin = |id| trace.spawns.iter().find(|s| s.id == id).map(|s| s.input.as_str()).unwrap_or("merged");
    match classify_exit(&trace, &spec.sinks) {
        Ok(exits) => {
            for (id, exit) in exits {
                let via = match trace.marbles[id.0 as usize].state {
                    MotionState::Merged { into } => format!(" (via {into})"),
                    _ => String::new(),
                };
                let dest = match exit {
                    Exit::Sink { sink, label } => format!("{label} [sink {sink}]"),
                    Exit::Lost { state } => state,
                };
                let _ = writeln!(out, "{id} ({}): {dest}{via}", origin(id));
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_RUNTIME
        }
    }
}

pub fn truthtable(
    path: &Path,
    expect: Option<Expectation>,
    csv: bool,
    model: Option<CollisionModel>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(spec) = load_spec(path, model, err) else { return EXIT_INPUT };
    let inputs = spec.inputs();
    if inputs.is_empty() {
        let _ = writeln!(err, "error: netlist declares no inputs");
        return EXIT_INPUT;
    }
    let table = match evaluate_truth_table(&spec, &inputs) {
        Ok(t) => t,
        Err(e) => {
            report_netlist_error(err, path, &e);
            return EXIT_INPUT;
        }
    };
    let _ = write!(out, "{}", if csv { table.to_csv() } else { table.to_text() });
    let mut code = EXIT_OK;
    if let Some(exp) = expect {
        let cmp = compare(&table, exp);
        for m in &cmp.mismatches {
            let _ = writeln!(err, "mismatch: {m}");
        }
        let _ = writeln!(err, "{}/{} rows match", cmp.matched, cmp.total);
        if !cmp.passed() {
            code = EXIT_INPUT;
        }
    }
    if table.has_timeout() || !table.all_ok() {
        code = EXIT_RUNTIME;
    }
    code
}

pub fn repro_cmd(only: Option<&str>, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let reports = match repro::run_all(only) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let _ = write!(out, "{}", if json { repro::report_json(&reports) + "\n" } else { repro::report_text(&reports) });
    if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_INPUT
    }
}
