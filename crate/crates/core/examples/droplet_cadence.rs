//! Emission times for a syringe feed rate, and the feed rate that hits the former's top speed.

use marble_gate::actuation::{emission_times, max_rate_ml_per_h, DropletSource, Emission, MAX_DROPS_PER_SECOND};
use marble_gate::physics::CoatingSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let volume = 11.6;
    let top = max_rate_ml_per_h(volume);
    println!("{MAX_DROPS_PER_SECOND} drops/s of {volume} µL needs {top:.3} mL/h");
    for rate in [top / 4.0, top] {
        let src = DropletSource {
            id: "s".into(),
            ramp: "r".into(),
            input: "A".into(),
            entry: 0.0,
            volume,
            coating: CoatingSpec::ni_uhdpe(),
            coating_mass: 2.5,
            emission: Some(Emission::FeedRate(rate)),
        };
        let ts = emission_times(&src, 1000.0)?;
        let shown: Vec<String> = ts.iter().map(|t| format!("{t:.0}")).collect();
        println!("{rate:>7.3} mL/h: period {:.1} ms, {} drops in 1 s at [{}]", src.period_ms().unwrap(), ts.len(), shown.join(", "));
    }
    Ok(())
}
