//! Writes a CSV trace and an SVG trajectory overlay of the colliding gate row.
//!
//!     cargo run --example svg_overlay -- /tmp/gate

use marble_gate::fixtures;
use marble_gate::netlist::{assignment, build_world};
use marble_gate::trace::{run, to_csv, to_svg, DEFAULT_SAMPLE_HZ};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stem = std::env::args().nth(1).unwrap_or_else(|| "gate_ab".into());
    let w = build_world(&fixtures::gate(), &assignment(&[("A", true), ("B", true)]))?;
    let tr = run(w, 5000.0, DEFAULT_SAMPLE_HZ)?;
    std::fs::write(format!("{stem}.csv"), to_csv(&tr.records))?;
    std::fs::write(format!("{stem}.svg"), to_svg(&tr))?;
    println!("{} samples over {:.1} ms -> {stem}.csv, {stem}.svg", tr.records.len(), tr.end_ms);
    Ok(())
}
