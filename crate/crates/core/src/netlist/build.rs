use std::collections::BTreeMap;

use super::spec::CircuitSpec;
use super::validate::validate;
use super::NetlistError;
use crate::actuation::emission_times;
use crate::physics::World;

/// Builds an input assignment from names and bits, e.g. `assignment(&[("A", true), ("B", false)])`.
pub fn assignment(bits: &[(&str, bool)]) -> BTreeMap<String, bool> {
    bits.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// A world with marbles scheduled only for sources whose input is set.
///
/// Every declared input must be assigned, and nothing else may be.
pub fn build_world(spec: &CircuitSpec, assignment: &BTreeMap<String, bool>) -> Result<World, NetlistError> {
    let errs = validate(spec);
    if !errs.is_empty() {
        return Err(NetlistError::Invalid(errs));
    }
    let inputs = spec.inputs();
    if let Some(missing) = inputs.iter().find(|i| !assignment.contains_key(*i)) {
        return Err(NetlistError::Usage(format!("no value given for input {missing}")));
    }
    if let Some(extra) = assignment.keys().find(|k| !inputs.contains(k)) {
        return Err(NetlistError::Usage(format!("{extra} is not an input of this circuit")));
    }

    let config = spec.config.physics();
    let ramps = spec.ramps.iter().map(|r| r.segment(config.rolling_factor)).collect();
    let mut world = World::new(config, ramps, spec.latches.clone(), spec.sinks.clone())?;
    if spec.config.evaporation == Some(true) {
        world.evaporation = Some(spec.config.evaporation_table());
    }
    let horizon = spec.config.horizon_ms();
    for s in spec.sources.iter().filter(|s| assignment[&s.input]) {
        let ramp = world.ramp_index(&s.ramp).expect("validated reference");
        for t in emission_times(s, horizon)? {
            world.schedule_spawn(t, ramp, s.entry, s.volume, s.coating, s.coating_mass, &s.id, &s.input)?;
        }
    }
    Ok(world)
}
