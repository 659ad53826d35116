use std::fmt::Write;

use super::spec::CircuitSpec;
use crate::actuation::{Emission, DEFAULT_CAPTURE_RADIUS_MM};
use crate::physics::{CoatingKind, TYPICAL_COATING_MASS_MG};

/// Canonical text: config first, then ramps, latches, sources, sinks, each in declaration order.
/// Numbers use the shortest representation that parses back to the same value.
pub fn serialize(spec: &CircuitSpec) -> String {
    let mut out = String::new();
    let c = &spec.config;
    if !c.is_empty() {
        out.push_str("config");
        let mut kv = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                let _ = write!(out, " {k}={v}");
            }
        };
        kv("dt", c.dt.map(|v| format!("{v}ms")));
        kv("g", c.g.map(|v| format!("{v}mps2")));
        kv("v_coalesce", c.v_coalesce.map(|v| format!("{v}mps")));
        kv("e", c.restitution.map(|v| format!("{v}")));
        kv("tau", c.contact_duration.map(|v| format!("{v}ms")));
        kv("model", c.model.map(|m| m.token().to_string()));
        kv("k", c.rolling_factor.map(|v| format!("{v}")));
        kv("horizon", c.horizon.map(|v| format!("{v}ms")));
        kv("evaporation", c.evaporation.map(|b| if b { "on" } else { "off" }.to_string()));
        kv("evap_bare", c.evap_bare.map(|v| format!("{v}mgpm")));
        kv("evap_ni", c.evap_ni.map(|v| format!("{v}mgpm")));
        kv("evap_uhdpe", c.evap_uhdpe.map(|v| format!("{v}mgpm")));
        kv("evap_ni_uhdpe", c.evap_ni_uhdpe.map(|v| format!("{v}mgpm")));
        out.push('\n');
    }
    for r in &spec.ramps {
        let _ = write!(
            out,
            "ramp {} anchor=({},{})mm slope={}deg dir={} length={}mm",
            r.id,
            r.anchor.x,
            r.anchor.y,
            r.slope_deg,
            r.direction.token(),
            r.length
        );
        if let Some(k) = r.k {
            let _ = write!(out, " k={k}");
        }
        out.push('\n');
    }
    for l in &spec.latches {
        let _ = write!(out, "em {} ramp={} at={}mm", l.id, l.ramp, l.hold);
        for w in &l.schedule {
            let _ = write!(out, " window=[{},{}]ms", w.on, w.off);
        }
        if l.capture_radius != DEFAULT_CAPTURE_RADIUS_MM {
            let _ = write!(out, " capture={}mm", l.capture_radius);
        }
        out.push('\n');
    }
    for s in &spec.sources {
        let _ = write!(
            out,
            "source {} ramp={} input={} volume={}uL coating={}",
            s.id,
            s.ramp,
            s.input,
            s.volume,
            s.coating.kind.token()
        );
        let default_mass = if s.coating.kind == CoatingKind::Bare { 0.0 } else { TYPICAL_COATING_MASS_MG };
        if s.coating_mass != default_mass {
            let _ = write!(out, " coating_mass={}mg", s.coating_mass);
        }
        if s.entry != 0.0 {
            let _ = write!(out, " at={}mm", s.entry);
        }
        match &s.emission {
            Some(Emission::FeedRate(r)) => {
                let _ = write!(out, " rate={r}mLph");
            }
            Some(Emission::Times(ts)) => {
                for t in ts {
                    let _ = write!(out, " t={t}ms");
                }
            }
            None => {}
        }
        out.push('\n');
    }
    for s in &spec.sinks {
        let _ = writeln!(out, "sink {} label={} x=[{},{}]mm y={}mm", s.id, s.label.token(), s.x.0, s.x.1, s.floor);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::parse;

    #[test]
    fn canonical_order_and_units() {
        let text = "\
sink s label=carry x=[-1,1]mm y=-5mm
source a ramp=r input=A volume=11.6uL coating=ni t=0ms t=12.5ms
ramp r anchor=(0.1,-2)mm slope=16deg dir=-x length=40mm
config tau=40ms e=0.8
";
        let out = serialize(&parse(text).unwrap());
        assert_eq!(
            out,
            "config e=0.8 tau=40ms\n\
ramp r anchor=(0.1,-2)mm slope=16deg dir=-x length=40mm\n\
source a ramp=r input=A volume=11.6uL coating=ni t=0ms t=12.5ms\n\
sink s label=CARRY x=[-1,1]mm y=-5mm\n"
        );
    }

    #[test]
    fn round_trip_preserves_awkward_floats() {
        let text = "ramp r anchor=(0.30000000000000004,-1e-300)mm slope=16.000000001deg dir=+x length=1e3mm k=0.7142857142857143\n";
        let spec = parse(text).unwrap();
        assert_eq!(parse(&serialize(&spec)).unwrap(), spec);
    }
}
