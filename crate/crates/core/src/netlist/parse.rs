use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::spec::{CircuitSpec, ConfigOverrides, RampDecl};
use crate::actuation::{DropletSource, ElectromagnetLatch, Emission, LatchWindow, DEFAULT_CAPTURE_RADIUS_MM};
use crate::logic::{Channel, SinkRegion};
use crate::physics::{CoatingKind, CoatingSpec, CollisionModel, Direction, Vec2, TYPICAL_COATING_MASS_MG};

/// A syntax error with a 1-based position in the source text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.token.is_empty() {
            write!(f, " (at `{}`)", self.token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy)]
struct Tok<'a> {
    col: usize,
    text: &'a str,
}

/// Splits on whitespace outside of `()` and `[]`. Columns are 1-based character offsets.
fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth <= 0 {
            if let Some((b, c)) = start.take() {
                out.push(Tok { col: c + 1, text: &line[b..byte] });
            }
            depth = 0;
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Tok { col: c + 1, text: &line[b..] });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
        && !s.starts_with('-')
}

struct Ctx {
    line: usize,
    errors: Vec<ParseError>,
}

impl Ctx {
    fn err(&mut self, col: usize, token: &str, message: impl Into<String>) {
        self.errors.push(ParseError {
            line: self.line,
            column: col,
            message: message.into(),
            token: token.to_string(),
        });
    }
}

fn number(s: &str) -> Option<f64> {
    let v: f64 = s.trim().parse().ok()?;
    v.is_finite().then_some(v)
}

fn quantity(v: &str, unit: &str) -> Option<f64> {
    number(v.strip_suffix(unit)?)
}

fn bracketed(v: &str, unit: &str, open: char, close: char) -> Option<(f64, f64)> {
    let inner = v.strip_suffix(unit)?.strip_prefix(open)?.strip_suffix(close)?;
    let (a, b) = inner.split_once(',')?;
    Some((number(a)?, number(b)?))
}

/// Key/value pairs of one declaration, consumed by the declaration parser.
struct Fields<'a> {
    pairs: Vec<(&'a str, &'a str, usize, bool)>,
}

impl<'a> Fields<'a> {
    fn collect(ctx: &mut Ctx, toks: &[Tok<'a>], repeatable: &[&str]) -> Self {
        let mut pairs: Vec<(&str, &str, usize, bool)> = Vec::new();
        for t in toks {
            match t.text.split_once('=') {
                Some((k, v)) if !k.is_empty() => {
                    if !repeatable.contains(&k) && pairs.iter().any(|p| p.0 == k) {
                        ctx.err(t.col, t.text, format!("duplicate key `{k}`"));
                        continue;
                    }
                    pairs.push((k, v, t.col + k.chars().count() + 1, false));
                }
                _ => ctx.err(t.col, t.text, "expected key=value"),
            }
        }
        Fields { pairs }
    }

    fn take(&mut self, key: &str) -> Option<(&'a str, usize)> {
        self.pairs.iter_mut().find(|p| p.0 == key && !p.3).map(|p| {
            p.3 = true;
            (p.1, p.2)
        })
    }

    fn take_all(&mut self, key: &str) -> Vec<(&'a str, usize)> {
        self.pairs
            .iter_mut()
            .filter(|p| p.0 == key && !p.3)
            .map(|p| {
                p.3 = true;
                (p.1, p.2)
            })
            .collect()
    }

    fn finish(self, ctx: &mut Ctx, keyword: &str) {
        for (k, _, col, used) in self.pairs {
            if !used {
                ctx.err(col.saturating_sub(k.chars().count() + 1), k, format!("unknown key `{k}` for `{keyword}`"));
            }
        }
    }
}

/// Fetches a required key and converts it, recording an error on failure.
fn required<T>(
    ctx: &mut Ctx,
    f: &mut Fields<'_>,
    key: &str,
    decl: Tok<'_>,
    expected: &str,
    conv: impl Fn(&str) -> Option<T>,
) -> Option<T> {
    match f.take(key) {
        None => {
            ctx.err(decl.col, decl.text, format!("missing required key `{key}`"));
            None
        }
        Some((v, col)) => convert(ctx, key, v, col, expected, conv),
    }
}

fn optional<T>(
    ctx: &mut Ctx,
    f: &mut Fields<'_>,
    key: &str,
    expected: &str,
    conv: impl Fn(&str) -> Option<T>,
) -> Result<Option<T>, ()> {
    match f.take(key) {
        None => Ok(None),
        Some((v, col)) => convert(ctx, key, v, col, expected, conv).map(Some).ok_or(()),
    }
}

fn convert<T>(ctx: &mut Ctx, key: &str, v: &str, col: usize, expected: &str, conv: impl Fn(&str) -> Option<T>) -> Option<T> {
    let r = conv(v);
    if r.is_none() {
        ctx.err(col, v, format!("malformed value for `{key}`: expected {expected}"));
    }
    r
}

fn ident(v: &str) -> Option<String> {
    is_ident(v).then(|| v.to_string())
}

fn parse_config(ctx: &mut Ctx, toks: &[Tok<'_>], cfg: &mut ConfigOverrides, seen: &mut BTreeSet<String>) {
    let f = Fields::collect(ctx, toks, &[]);
    for (k, v, col, _) in f.pairs {
        if !seen.insert(k.to_string()) {
            ctx.err(col.saturating_sub(k.chars().count() + 1), k, format!("duplicate config key `{k}`"));
            continue;
        }
        macro_rules! set {
            ($field:ident, $expected:expr, $conv:expr) => {{
                match convert(ctx, k, v, col, $expected, $conv) {
                    Some(x) => cfg.$field = Some(x),
                    None => {}
                }
            }};
        }
        match k {
            "dt" => set!(dt, "<ms>ms", |s| quantity(s, "ms")),
            "g" => set!(g, "<accel>mps2", |s| quantity(s, "mps2")),
            "v_coalesce" => set!(v_coalesce, "<speed>mps", |s| quantity(s, "mps")),
            "e" => set!(restitution, "a number", number),
            "tau" => set!(contact_duration, "<ms>ms", |s| quantity(s, "ms")),
            "model" => set!(model, "ssm|bbm|fusion|annihilate", |s| s.parse::<CollisionModel>().ok()),
            "k" => set!(rolling_factor, "a number", number),
            "horizon" => set!(horizon, "<ms>ms", |s| quantity(s, "ms")),
            "evaporation" => set!(evaporation, "on|off", |s| match s {
                "on" => Some(true),
                "off" => Some(false),
                _ => None,
            }),
            "evap_bare" => set!(evap_bare, "<rate>mgpm", |s| quantity(s, "mgpm")),
            "evap_ni" => set!(evap_ni, "<rate>mgpm", |s| quantity(s, "mgpm")),
            "evap_uhdpe" => set!(evap_uhdpe, "<rate>mgpm", |s| quantity(s, "mgpm")),
            "evap_ni_uhdpe" => set!(evap_ni_uhdpe, "<rate>mgpm", |s| quantity(s, "mgpm")),
            _ => ctx.err(col.saturating_sub(k.chars().count() + 1), k, format!("unknown config key `{k}`")),
        }
    }
}

fn parse_ramp(ctx: &mut Ctx, decl: Tok<'_>, id: String, toks: &[Tok<'_>]) -> Option<RampDecl> {
    let mut f = Fields::collect(ctx, toks, &[]);
    let anchor = required(ctx, &mut f, "anchor", decl, "(x,y)mm", |s| bracketed(s, "mm", '(', ')'));
    let slope = required(ctx, &mut f, "slope", decl, "<angle>deg", |s| quantity(s, "deg"));
    let dir = required(ctx, &mut f, "dir", decl, "+x or -x", Direction::from_token);
    let length = required(ctx, &mut f, "length", decl, "<length>mm", |s| quantity(s, "mm"));
    let k = optional(ctx, &mut f, "k", "a number", number);
    f.finish(ctx, "ramp");
    let (x, y) = anchor?;
    Some(RampDecl { id, anchor: Vec2::new(x, y), slope_deg: slope?, direction: dir?, length: length?, k: k.ok()? })
}

fn parse_em(ctx: &mut Ctx, decl: Tok<'_>, id: String, toks: &[Tok<'_>]) -> Option<ElectromagnetLatch> {
    let mut f = Fields::collect(ctx, toks, &["window"]);
    let ramp = required(ctx, &mut f, "ramp", decl, "a ramp id", ident);
    let at = required(ctx, &mut f, "at", decl, "<arc>mm", |s| quantity(s, "mm"));
    let windows = f.take_all("window");
    if windows.is_empty() {
        ctx.err(decl.col, decl.text, "missing required key `window`");
    }
    let mut schedule = Some(Vec::new());
    for (v, col) in windows {
        match convert(ctx, "window", v, col, "[on,off]ms", |s| bracketed(s, "ms", '[', ']')) {
            Some((on, off)) => {
                if let Some(s) = schedule.as_mut() {
                    s.push(LatchWindow::new(on, off));
                }
            }
            None => schedule = None,
        }
    }
    let capture = optional(ctx, &mut f, "capture", "<radius>mm", |s| quantity(s, "mm"));
    f.finish(ctx, "em");
    let mut latch = ElectromagnetLatch::new(id, ramp?, at?, schedule?);
    latch.capture_radius = capture.ok()?.unwrap_or(DEFAULT_CAPTURE_RADIUS_MM);
    Some(latch)
}

fn parse_source(ctx: &mut Ctx, decl: Tok<'_>, id: String, toks: &[Tok<'_>]) -> Option<DropletSource> {
    let mut f = Fields::collect(ctx, toks, &["t"]);
    let ramp = required(ctx, &mut f, "ramp", decl, "a ramp id", ident);
    let input = required(ctx, &mut f, "input", decl, "an input name", ident);
    let volume = required(ctx, &mut f, "volume", decl, "<volume>uL", |s| quantity(s, "uL"));
    let coating = required(ctx, &mut f, "coating", decl, "bare|ni|uhdpe|ni_uhdpe", CoatingKind::from_token);
    let coating_mass = optional(ctx, &mut f, "coating_mass", "<mass>mg", |s| quantity(s, "mg"));
    let entry = optional(ctx, &mut f, "at", "<arc>mm", |s| quantity(s, "mm"));
    let rate = optional(ctx, &mut f, "rate", "<rate>mLph", |s| quantity(s, "mLph"));
    let times = f.take_all("t");
    let mut parsed_times = Some(Vec::new());
    for (v, col) in &times {
        match convert(ctx, "t", v, *col, "<time>ms", |s| quantity(s, "ms")) {
            Some(t) => {
                if let Some(ts) = parsed_times.as_mut() {
                    ts.push(t);
                }
            }
            None => parsed_times = None,
        }
    }
    f.finish(ctx, "source");
    let rate = rate.ok()?;
    let parsed_times = parsed_times?;
    let emission = match (rate, parsed_times.is_empty()) {
        (Some(_), false) => {
            ctx.err(decl.col, decl.text, "`t` and `rate` are mutually exclusive");
            return None;
        }
        (Some(r), true) => Some(Emission::FeedRate(r)),
        (None, false) => Some(Emission::Times(parsed_times)),
        (None, true) => None,
    };
    let kind = coating?;
    let default_mass = if kind == CoatingKind::Bare { 0.0 } else { TYPICAL_COATING_MASS_MG };
    Some(DropletSource {
        id,
        ramp: ramp?,
        input: input?,
        entry: entry.ok()?.unwrap_or(0.0),
        volume: volume?,
        coating: CoatingSpec::of_kind(kind),
        coating_mass: coating_mass.ok()?.unwrap_or(default_mass),
        emission,
    })
}

fn parse_sink(ctx: &mut Ctx, decl: Tok<'_>, id: String, toks: &[Tok<'_>]) -> Option<SinkRegion> {
    let mut f = Fields::collect(ctx, toks, &[]);
    let label = required(ctx, &mut f, "label", decl, "a channel label", |s| s.parse::<Channel>().ok());
    let x = required(ctx, &mut f, "x", decl, "[lo,hi]mm", |s| bracketed(s, "mm", '[', ']'));
    let y = required(ctx, &mut f, "y", decl, "<floor>mm", |s| quantity(s, "mm"));
    f.finish(ctx, "sink");
    let (lo, hi) = x?;
    Some(SinkRegion::new(id, label?, lo, hi, y?))
}

/// Parses netlist text. All errors are collected in one pass; parsing never panics.
pub fn parse(text: &str) -> Result<CircuitSpec, Vec<ParseError>> {
    let mut spec = CircuitSpec::default();
    let mut ctx = Ctx { line: 0, errors: Vec::new() };
    let mut config_keys = BTreeSet::new();
    let mut ids: [BTreeSet<String>; 4] = Default::default();

    for (n, raw) in text.split('\n').enumerate() {
        ctx.line = n + 1;
        let line = strip_comment(raw.strip_suffix('\r').unwrap_or(raw));
        let toks = tokenize(line);
        let Some((&kw, rest)) = toks.split_first() else { continue };
        if kw.text == "config" {
            parse_config(&mut ctx, rest, &mut spec.config, &mut config_keys);
            continue;
        }
        let slot = match kw.text {
            "ramp" => 0,
            "em" => 1,
            "source" => 2,
            "sink" => 3,
            other => {
                ctx.err(kw.col, other, format!("unknown keyword `{other}`"));
                continue;
            }
        };
        let Some((&id_tok, fields)) = rest.split_first() else {
            ctx.err(kw.col, kw.text, format!("`{}` needs an id", kw.text));
            continue;
        };
        if !is_ident(id_tok.text) {
            ctx.err(id_tok.col, id_tok.text, "malformed id");
            continue;
        }
        if !ids[slot].insert(id_tok.text.to_string()) {
            ctx.err(id_tok.col, id_tok.text, format!("duplicate {} id `{}`", kw.text, id_tok.text));
            continue;
        }
        let id = id_tok.text.to_string();
        match slot {
            0 => spec.ramps.extend(parse_ramp(&mut ctx, kw, id, fields)),
            1 => spec.latches.extend(parse_em(&mut ctx, kw, id, fields)),
            2 => spec.sources.extend(parse_source(&mut ctx, kw, id, fields)),
            _ => spec.sinks.extend(parse_sink(&mut ctx, kw, id, fields)),
        }
    }
    if ctx.errors.is_empty() {
        Ok(spec)
    } else {
        Err(ctx.errors)
    }
}

/// Parses raw bytes; invalid UTF-8 is reported as a parse error at the offending position.
pub fn parse_bytes(bytes: &[u8]) -> Result<CircuitSpec, Vec<ParseError>> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            let line_start = valid.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
            let column = String::from_utf8_lossy(&valid[line_start..]).chars().count() + 1;
            Err(vec![ParseError { line, column, message: "invalid UTF-8".into(), token: String::new() }])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_is_empty_spec() {
        assert_eq!(parse("").unwrap(), CircuitSpec::default());
        assert_eq!(parse("\n# only a comment\n   \n").unwrap(), CircuitSpec::default());
    }

    #[test]
    fn missing_length_is_one_error() {
        let errs = parse("ramp left slope=16deg anchor=(0,0)mm dir=+x").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].message.contains("length"), "{}", errs[0]);
        assert_eq!((errs[0].line, errs[0].column), (1, 1));
    }

    #[test]
    fn all_errors_in_one_pass() {
        let text = "frobnicate x\nramp r slope=16 anchor=(0,0)mm dir=+x length=10mm\nsink s label=AB x=[0,1]mm y=0mm\nsink s label=AB x=[2,3]mm y=0mm\n";
        let errs = parse(text).unwrap_err();
        let lines: Vec<usize> = errs.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![1, 2, 4]);
        assert!(errs[1].message.contains("slope"));
        assert_eq!(errs[1].column, 8 + "slope=".len());
        assert!(errs[2].message.contains("duplicate"));
    }

    #[test]
    fn parses_every_declaration() {
        let text = "\
config dt=0.05ms tau=40ms model=bbm e=1 horizon=3000ms evaporation=on evap_bare=0.2mgpm
ramp left anchor=( -10 , 5 )mm slope=16deg dir=+x length=40mm k=0.7
em ea ramp=left at=35mm window=[0,300]ms window=[400,500]ms
source sa ramp=left input=A volume=11.6uL coating=ni_uhdpe t=0ms t=20ms
source sb ramp=left input=B volume=10uL coating=bare rate=7mLph
sink out label=SUM x=[-5,5]mm y=-40mm   # catch
";
        let spec = parse(text).unwrap();
        assert_eq!(spec.config.contact_duration, Some(40.0));
        assert_eq!(spec.config.model, Some(CollisionModel::Bbm));
        assert_eq!(spec.config.evaporation, Some(true));
        assert_eq!(spec.ramps[0].anchor, Vec2::new(-10.0, 5.0));
        assert_eq!(spec.ramps[0].k, Some(0.7));
        assert_eq!(spec.latches[0].schedule.len(), 2);
        assert_eq!(spec.sources[0].emission, Some(Emission::Times(vec![0.0, 20.0])));
        assert_eq!(spec.sources[0].coating_mass, 2.5);
        assert_eq!(spec.sources[1].coating_mass, 0.0);
        assert_eq!(spec.sources[1].emission, Some(Emission::FeedRate(7.0)));
        assert_eq!(spec.sinks[0].label, Channel::Sum);
        assert_eq!(spec.inputs(), vec!["A".to_string(), "B".to_string()]);
    }

    #[test]
    fn rejects_non_finite_and_wrong_units() {
        let errs = parse("ramp r anchor=(0,0)cm slope=NaNdeg dir=up length=infmm").unwrap_err();
        assert_eq!(errs.len(), 4);
        let errs = parse("source s ramp=r input=A volume=1uL coating=ni t=0ms rate=1mLph").unwrap_err();
        assert!(errs[0].message.contains("mutually exclusive"));
    }

    #[test]
    fn invalid_utf8_is_an_error_value() {
        let errs = parse_bytes(b"ramp r\n\xff\xfe").unwrap_err();
        assert_eq!((errs[0].line, errs[0].column), (2, 1));
    }
}
