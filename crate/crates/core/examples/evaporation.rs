//! Volume loss per coating and time to dry out for a 10 µL marble.

use marble_gate::lifetime::{apply_evaporation, time_to_dryout, EvaporationTable};
use marble_gate::physics::{CoatingKind, CoatingSpec, Marble, MarbleId, Vec2};

fn main() {
    let table = EvaporationTable::default();
    println!("coating    mg/min   after 10 min (µL)   dry-out (min)");
    for kind in CoatingKind::ALL {
        let m = Marble::new(MarbleId(0), Vec2::ZERO, 10.0, CoatingSpec::of_kind(kind), 2.5);
        let later = apply_evaporation(&m, 10.0, &table);
        let dry = time_to_dryout(&m, &table).expect("wet marble");
        println!("{:<9}  {:.4}   {:>17.3}   {:>13.1}", kind.token(), table.rate(kind), later.volume, dry);
    }
}
