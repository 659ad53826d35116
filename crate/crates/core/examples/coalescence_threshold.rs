//! Sweeps how far above the ramp foot the latches hold their marbles and reports the
//! contact speed and outcome, then bisects for the release distance of a target speed.

use marble_gate::repro::{calibrate_release, contact_at_release_distance};

fn main() -> Result<(), String> {
    println!("release mm  contact m/s  outcome");
    for d in [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0] {
        let (v, out) = contact_at_release_distance(d)?;
        println!("{d:>10.1}  {v:>11.4}  {out:?}");
    }
    for target in [0.21, 0.29] {
        let (d, v, out) = calibrate_release(target)?;
        println!("target {target} m/s: release at {d:.4} mm gives {v:.5} m/s, {out:?}");
    }
    Ok(())
}
