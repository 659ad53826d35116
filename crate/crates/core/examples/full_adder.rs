//! Two cascaded gates. Survivors of the first fall onto a link ramp and meet C_in at the second.

use marble_gate::fixtures;
use marble_gate::logic::{compare, evaluate_truth_table, Channel, Expectation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = fixtures::full_adder();
    let table = evaluate_truth_table(&spec, &spec.inputs())?;
    print!("{}", table.to_text());
    for r in &table.rows {
        let hits: Vec<String> = r.sink_hits.iter().map(|(s, n)| format!("{s}x{n}")).collect();
        println!("{:?}: {} (carry sinks occupied: {})", r.inputs, hits.join(" "), r.occupied_sinks(&spec, Channel::Carry));
    }
    let cmp = compare(&table, Expectation::Full);
    println!("{}/{} rows match", cmp.matched, cmp.total);
    Ok(())
}
