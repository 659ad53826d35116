//! Four input rows through the two-ramp collision gate.
//!
//!     cargo run --example gate_truth_table

use marble_gate::fixtures;
use marble_gate::logic::{compare, evaluate_truth_table, Expectation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = fixtures::gate();
    let table = evaluate_truth_table(&spec, &spec.inputs())?;
    print!("{}", table.to_text());
    let cmp = compare(&table, Expectation::Gate);
    println!("{}/{} rows match (A AND B, A AND NOT B, NOT A AND B)", cmp.matched, cmp.total);
    for r in &table.rows {
        if let Some(c) = r.trace.as_ref().and_then(|t| t.collisions.first()) {
            println!("row {:?}: contact at {:.1} ms, {:.4} m/s, {:?}", r.inputs, c.time, c.relative_normal_speed, c.outcome);
        }
    }
    Ok(())
}
