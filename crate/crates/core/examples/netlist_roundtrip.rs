//! Parse a netlist, print its canonical form, and show what the validator says about a broken one.

use marble_gate::fixtures;
use marble_gate::netlist::{load, parse, serialize, NetlistError};

fn main() {
    let spec = parse(fixtures::GATE).expect("bundled gate parses");
    let canon = serialize(&spec);
    print!("{canon}");
    assert_eq!(parse(&canon).expect("canonical text parses"), spec);
    println!("# round trip ok");

    let broken = canon.replace("x=[-3,3]mm", "x=[-5,5]mm").replace("slope=16deg", "slope=16dog");
    match load(&broken) {
        Err(NetlistError::Parse(errs)) => errs.iter().for_each(|e| println!("parse error {e}")),
        other => println!("unexpected: {other:?}"),
    }
    let overlapping = canon.replace("x=[-3,3]mm", "x=[-5,5]mm");
    match load(&overlapping) {
        Err(NetlistError::Invalid(errs)) => errs.iter().for_each(|e| println!("invalid: {e}")),
        other => println!("unexpected: {other:?}"),
    }
}
