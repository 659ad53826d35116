use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::classify::{classify_exit, ClassifyError, Exit};
use super::semantics::{full_adder, gate_semantics, half_adder};
use super::Channel;
use crate::netlist::{build_world, CircuitSpec, NetlistError};
use crate::trace::{run, Trace, DEFAULT_SAMPLE_HZ};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RowStatus {
    Ok,
    Timeout(String),
    Misclassified(String),
    Failed(String),
}

impl RowStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, RowStatus::Ok)
    }

    pub fn token(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Timeout(_) => "timeout",
            RowStatus::Misclassified(_) => "unclassified",
            RowStatus::Failed(_) => "error",
        }
    }
}

/// One input assignment and what the physics produced for it.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthRow {
    pub inputs: Vec<bool>,
    /// Channel bit: any marble reached a sink with this label.
    pub outputs: BTreeMap<Channel, bool>,
    /// Marbles caught per sink id.
    pub sink_hits: BTreeMap<String, usize>,
    pub status: RowStatus,
    pub trace: Option<Trace>,
}

impl TruthRow {
    pub fn output(&self, c: Channel) -> bool {
        self.outputs.get(&c).copied().unwrap_or(false)
    }

    /// Number of distinct sinks with label `c` that caught something.
    pub fn occupied_sinks(&self, spec: &CircuitSpec, c: Channel) -> usize {
        spec.sinks.iter().filter(|s| s.label == c && self.sink_hits.get(&s.id).copied().unwrap_or(0) > 0).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable {
    pub inputs: Vec<String>,
    pub channels: Vec<Channel>,
    pub rows: Vec<TruthRow>,
}

/// Bits of row `i` over `n` inputs, first input most significant.
pub fn row_bits(i: usize, n: usize) -> Vec<bool> {
    (0..n).map(|j| (i >> (n - 1 - j)) & 1 == 1).collect()
}

fn bit(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

/// Runs one row of the table.
pub fn evaluate_row(spec: &CircuitSpec, inputs: &[String], bits: &[bool]) -> TruthRow {
    let channels = spec.channels();
    let mut row = TruthRow {
        inputs: bits.to_vec(),
        outputs: channels.iter().map(|&c| (c, false)).collect(),
        sink_hits: BTreeMap::new(),
        status: RowStatus::Ok,
        trace: None,
    };
    let assignment: BTreeMap<String, bool> = inputs.iter().cloned().zip(bits.iter().copied()).collect();
    let world = match build_world(spec, &assignment) {
        Ok(w) => w,
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    let trace = match run(world, spec.config.horizon_ms(), DEFAULT_SAMPLE_HZ) {
        Ok(t) => t,
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    match classify_exit(&trace, &spec.sinks) {
        Ok(exits) => {
            for exit in exits.values() {
                if let Exit::Sink { sink, label } = exit {
                    row.outputs.insert(*label, true);
                    *row.sink_hits.entry(sink.clone()).or_default() += 1;
                }
            }
        }
        Err(e @ ClassifyError::Timeout { .. }) => row.status = RowStatus::Timeout(e.to_string()),
        Err(e) => row.status = RowStatus::Misclassified(e.to_string()),
    }
    row.trace = Some(trace);
    row
}

/// Runs all 2^n assignments of `inputs` in order. Row failures are kept in the table.
pub fn evaluate_truth_table(spec: &CircuitSpec, inputs: &[String]) -> Result<TruthTable, NetlistError> {
    let declared = spec.inputs();
    for i in inputs {
        if !declared.contains(i) {
            return Err(NetlistError::Usage(format!("{i} is not an input of this circuit")));
        }
    }
    if let Some(missing) = declared.iter().find(|d| !inputs.contains(d)) {
        return Err(NetlistError::Usage(format!("input {missing} is not listed")));
    }
    if inputs.len() > 16 {
        return Err(NetlistError::Usage("too many inputs for an exhaustive table".into()));
    }
    let n = inputs.len();
    let rows = (0..1usize << n).map(|i| evaluate_row(spec, inputs, &row_bits(i, n))).collect();
    Ok(TruthTable { inputs: inputs.to_vec(), channels: spec.channels(), rows })
}

impl TruthTable {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.status.is_ok())
    }

    pub fn has_timeout(&self) -> bool {
        self.rows.iter().any(|r| matches!(r.status, RowStatus::Timeout(_)))
    }

    /// Aligned plain text.
    pub fn to_text(&self) -> String {
        let mut cols: Vec<String> = self.inputs.clone();
        cols.push("|".into());
        cols.extend(self.channels.iter().map(|c| c.token().to_string()));
        let mut out = String::new();
        let _ = writeln!(out, "{}  status", cols.join(" "));
        for r in &self.rows {
            let mut cells: Vec<String> = Vec::new();
            for (name, b) in self.inputs.iter().zip(&r.inputs) {
                cells.push(format!("{:>w$}", bit(*b), w = name.len()));
            }
            cells.push("|".into());
            for c in &self.channels {
                cells.push(format!("{:>w$}", bit(r.output(*c)), w = c.token().len()));
            }
            let _ = write!(out, "{}  {}", cells.join(" "), r.status.token());
            match &r.status {
                RowStatus::Ok => {}
                RowStatus::Timeout(m) | RowStatus::Misclassified(m) | RowStatus::Failed(m) => {
                    let _ = write!(out, " ({m})");
                }
            }
            out.push('\n');
        }
        out
    }

    /// Columns: inputs, outputs, status.
    pub fn to_csv(&self) -> String {
        let mut head: Vec<&str> = self.inputs.iter().map(String::as_str).collect();
        head.extend(self.channels.iter().map(|c| c.token()));
        head.push("status");
        let mut out = head.join(",");
        out.push('\n');
        for r in &self.rows {
            let mut cells: Vec<String> = r.inputs.iter().map(|b| bit(*b).to_string()).collect();
            cells.extend(self.channels.iter().map(|c| bit(r.output(*c)).to_string()));
            cells.push(r.status.token().to_string());
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Which abstract function a table should implement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expectation {
    Gate,
    Half,
    Full,
}

impl std::str::FromStr for Expectation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gate" => Ok(Expectation::Gate),
            "half" => Ok(Expectation::Half),
            "full" => Ok(Expectation::Full),
            _ => Err(format!("unknown expectation `{s}` (gate|half|full)")),
        }
    }
}

impl Expectation {
    pub fn arity(self) -> usize {
        match self {
            Expectation::Full => 3,
            _ => 2,
        }
    }

    pub fn channels(self) -> Vec<Channel> {
        match self {
            Expectation::Gate => vec![Channel::ANotB, Channel::NotAB, Channel::AB],
            _ => vec![Channel::Sum, Channel::Carry],
        }
    }

    /// Expected channel bits for one row.
    pub fn outputs(self, bits: &[bool]) -> BTreeMap<Channel, bool> {
        match self {
            Expectation::Gate => {
                let g = gate_semantics(bits[0], bits[1]);
                BTreeMap::from([(Channel::ANotB, g.pass_a), (Channel::NotAB, g.pass_b), (Channel::AB, g.collide)])
            }
            Expectation::Half => {
                let (s, c) = half_adder(bits[0], bits[1]);
                BTreeMap::from([(Channel::Sum, s), (Channel::Carry, c)])
            }
            Expectation::Full => {
                let (s, c) = full_adder(bits[0], bits[1], bits[2]);
                BTreeMap::from([(Channel::Sum, s), (Channel::Carry, c)])
            }
        }
    }
}

/// Row-by-row comparison of a table with an abstract function.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub matched: usize,
    pub total: usize,
    pub mismatches: Vec<String>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.matched == self.total
    }
}

pub fn compare(table: &TruthTable, expect: Expectation) -> Comparison {
    let total = 1usize << expect.arity();
    let mut mismatches = Vec::new();
    let want = expect.channels();
    if table.inputs.len() != expect.arity() {
        mismatches.push(format!("table has {} inputs, expected {}", table.inputs.len(), expect.arity()));
    }
    if table.channels != want {
        let names = |cs: &[Channel]| cs.iter().map(|c| c.token()).collect::<Vec<_>>().join(",");
        mismatches.push(format!("table channels are {{{}}}, expected {{{}}}", names(&table.channels), names(&want)));
    }
    if !mismatches.is_empty() {
        return Comparison { matched: 0, total, mismatches };
    }
    let mut matched = 0;
    for r in &table.rows {
        let label: String = r.inputs.iter().map(|&b| bit(b)).collect();
        if !r.status.is_ok() {
            mismatches.push(format!("row {label}: {}", r.status.token()));
            continue;
        }
        let exp = expect.outputs(&r.inputs);
        let diffs: Vec<String> = exp
            .iter()
            .filter(|(c, v)| r.output(**c) != **v)
            .map(|(c, v)| format!("{c}={} (expected {})", bit(r.output(*c)), bit(*v)))
            .collect();
        if diffs.is_empty() {
            matched += 1;
        } else {
            mismatches.push(format!("row {label}: {}", diffs.join(", ")));
        }
    }
    Comparison { matched, total, mismatches }
}
