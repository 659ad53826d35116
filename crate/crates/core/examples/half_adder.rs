//! The gate with its two single-marble sinks wired to SUM and the collide sink to CARRY.

use marble_gate::fixtures;
use marble_gate::logic::{compare, evaluate_truth_table, half_adder, Expectation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = fixtures::half_adder();
    let table = evaluate_truth_table(&spec, &spec.inputs())?;
    print!("{}", table.to_text());
    for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
        let (s, c) = half_adder(a, b);
        println!("{} + {} = carry {} sum {}", a as u8, b as u8, c as u8, s as u8);
    }
    let cmp = compare(&table, Expectation::Half);
    println!("{}/{} rows match", cmp.matched, cmp.total);
    Ok(())
}
