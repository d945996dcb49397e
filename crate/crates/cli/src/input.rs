//! Turning flags into engine objects.

use std::collections::HashMap;
use std::fmt;

use egregium::catalog::{self, CatalogEntry, Kind};
use egregium::expr::{parse_list, parse_with_constants};
use egregium::intrinsic::MetricField;
use egregium::surfaces::{GraphSurface, ParametricSurface};
use egregium::Error;

use crate::{Constants, MetricSource, SurfaceSource};

#[derive(Debug)]
pub enum CliError {
    /// Flags that do not fit together or cannot be read.
    Usage(String),
    Engine(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Engine(e) if e.is_input_error() => 2,
            CliError::Engine(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<egregium::expr::ParseError> for CliError {
    fn from(e: egregium::expr::ParseError) -> Self {
        CliError::Engine(e.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn constants(c: &Constants) -> CliResult<HashMap<String, f64>> {
    let mut map = HashMap::new();
    let named = [("R", c.radius), ("Rmaj", c.rmaj), ("r", c.r), ("a", c.a), ("b", c.b), ("c", c.c)];
    for (name, value) in named {
        if let Some(v) = value {
            map.insert(name.to_string(), v);
        }
    }
    for item in &c.extra {
        let Some((name, value)) = item.split_once('=') else {
            return usage(format!("--const expects NAME=VALUE, got '{item}'"));
        };
        let value = scalar(value, &HashMap::new())?;
        map.insert(name.trim().to_string(), value);
    }
    Ok(map)
}

/// A constant expression such as `2*pi/3`.
pub fn scalar(text: &str, consts: &HashMap<String, f64>) -> CliResult<f64> {
    let expr = parse_with_constants(text.trim(), consts)?;
    Ok(expr.eval_f64(&[]).map_err(Error::from)?)
}

pub fn range(text: &str, consts: &HashMap<String, f64>) -> CliResult<(f64, f64)> {
    let Some((a, b)) = text.split_once(':') else {
        return usage(format!("range '{text}' is not of the form a:b"));
    };
    let (lo, hi) = (scalar(a, consts)?, scalar(b, consts)?);
    if !(lo < hi) {
        return usage(format!("range '{text}' is empty"));
    }
    Ok((lo, hi))
}

pub fn pair(text: &str, consts: &HashMap<String, f64>) -> CliResult<[f64; 2]> {
    let exprs = parse_list(text, 2, consts)?;
    let v = |i: usize| exprs[i].eval_f64(&[]).map_err(Error::from);
    Ok([v(0)?, v(1)?])
}

pub fn points(text: &str, consts: &HashMap<String, f64>) -> CliResult<Vec<[f64; 2]>> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(|s| pair(s, consts)).collect()
}

pub fn lookup(name: &str, kinds: &[Kind]) -> CliResult<&'static CatalogEntry> {
    let entry = catalog::lookup(name)?;
    if !kinds.contains(&entry.kind) {
        let wanted: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
        return usage(format!("catalog entry '{name}' is a {}, expected {}", entry.kind.name(), wanted.join(" or ")));
    }
    Ok(entry)
}

fn exactly_one(flags: &[(&str, bool)]) -> CliResult<()> {
    let given: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
    match given.len() {
        1 => Ok(()),
        0 => {
            let names: Vec<String> = flags.iter().map(|f| format!("--{}", f.0)).collect();
            usage(format!("one of {} is required", names.join(", ")))
        }
        _ => usage(format!("--{} and --{} cannot be combined", given[0], given[1])),
    }
}

pub struct ResolvedSurface {
    pub surface: ParametricSurface,
    pub entry: Option<&'static CatalogEntry>,
}

pub fn surface(src: &SurfaceSource, consts: &HashMap<String, f64>) -> CliResult<ResolvedSurface> {
    exactly_one(&[
        ("catalog", src.catalog.is_some()),
        ("graph", src.graph.is_some()),
        ("param", src.param.is_some()),
        ("implicit", src.implicit.is_some()),
    ])?;
    if src.implicit.is_some() {
        return usage("level-set surfaces have no chart to sample; give --graph or --param instead");
    }
    if let Some(name) = &src.catalog {
        let entry = lookup(name, &[Kind::Surface])?;
        let surface = entry.parametric(&entry.constants(consts))?;
        return Ok(ResolvedSurface { surface, entry: Some(entry) });
    }
    let surface = match (&src.graph, &src.param) {
        (Some(f), _) => GraphSurface::parse(f, consts)?.to_parametric(),
        (_, Some(text)) => {
            let [x, y, z]: [_; 3] = parse_list(text, 3, consts)?.try_into().expect("three expressions");
            ParametricSurface::new([x, y, z])?
        }
        _ => unreachable!("exactly one selector is present"),
    };
    Ok(ResolvedSurface { surface, entry: None })
}

pub struct ResolvedMetric {
    pub metric: MetricField,
    /// Present when the metric is induced by an embedding.
    pub surface: Option<ParametricSurface>,
    pub entry: Option<&'static CatalogEntry>,
}

pub fn metric(src: &MetricSource, consts: &HashMap<String, f64>) -> CliResult<ResolvedMetric> {
    let s = &src.surface;
    if let Some(text) = &src.metric {
        if s.catalog.is_some() || s.graph.is_some() || s.param.is_some() || s.implicit.is_some() {
            return usage("--metric cannot be combined with a surface selector");
        }
        return Ok(ResolvedMetric { metric: MetricField::parse(text, consts)?, surface: None, entry: None });
    }
    if let Some(name) = &s.catalog {
        let entry = lookup(name, &[Kind::Surface, Kind::Metric])?;
        if entry.kind == Kind::Metric {
            let metric = entry.metric(&entry.constants(consts))?;
            return Ok(ResolvedMetric { metric, surface: None, entry: Some(entry) });
        }
    }
    if s.catalog.is_none() && s.graph.is_none() && s.param.is_none() && s.implicit.is_none() {
        return usage("one of --metric, --catalog, --graph, --param is required");
    }
    let r = surface(s, consts)?;
    Ok(ResolvedMetric { metric: MetricField::induced(r.surface.clone()), surface: Some(r.surface), entry: r.entry })
}

/// Sampling ranges: explicit flags first, then the catalog range, then [-1, 1].
pub fn chart_ranges(
    range_u: &Option<String>,
    range_v: &Option<String>,
    entry: Option<&CatalogEntry>,
    consts: &HashMap<String, f64>,
) -> CliResult<[(f64, f64); 2]> {
    let fallback = |i: usize| entry.and_then(|e| e.range.get(i).copied()).unwrap_or((-1.0, 1.0));
    let u = range_u.as_deref().map_or(Ok(fallback(0)), |t| range(t, consts))?;
    let v = range_v.as_deref().map_or(Ok(fallback(1)), |t| range(t, consts))?;
    Ok([u, v])
}
