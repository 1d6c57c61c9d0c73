//! Run configuration and the small value parsers behind the CLI flags.

use std::path::PathBuf;

use ekron_core::ek::Route;
use ekron_core::laurent;
use ekron_core::stream::MAX_X;
use ekron_core::{FieldSpec, R_MAX};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?}; use json or csv")),
        }
    }
}

/// How checkpoints are placed below `x_max`.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckpointSpec {
    /// `count` points spanning `decades` decades, ending at `x_max`.
    Geometric { count: usize, decades: f64 },
    Explicit(Vec<f64>),
}

impl Default for CheckpointSpec {
    fn default() -> Self {
        CheckpointSpec::Geometric { count: laurent::DEFAULT_CHECKPOINTS, decades: laurent::DEFAULT_DECADES }
    }
}

impl CheckpointSpec {
    pub fn resolve(&self, x_max: u64) -> Vec<f64> {
        match self {
            CheckpointSpec::Geometric { count, decades } => {
                laurent::geometric_checkpoints(x_max as f64, *count, *decades)
            }
            CheckpointSpec::Explicit(v) => v.clone(),
        }
    }
}

impl std::str::FromStr for CheckpointSpec {
    type Err = String;

    /// `geom:N`, `geom:N:DECADES` or a comma-separated list of values.
    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(rest) = s.strip_prefix("geom:") {
            let mut parts = rest.split(':');
            let count: usize = parts
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| format!("bad checkpoint count in {s:?}"))?;
            let decades = match parts.next() {
                Some(d) => d.parse::<f64>().map_err(|_| format!("bad decade span in {s:?}"))?,
                None => laurent::DEFAULT_DECADES,
            };
            if count == 0 || !(decades > 0.0) {
                return Err(format!("checkpoint spec {s:?} must have N >= 1 and a positive span"));
            }
            return Ok(CheckpointSpec::Geometric { count, decades });
        }
        let values = s
            .split(',')
            .map(|v| parse_real(v.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CheckpointSpec::Explicit(values))
    }
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|_| format!("{s:?} is not a number"))
}

/// `1e7`, `10000000`: a positive integer in `[2, MAX_X]`.
pub fn parse_xmax(s: &str) -> Result<u64, String> {
    let v = parse_real(s)?;
    if v.fract() != 0.0 || v < 2.0 || v > MAX_X as f64 {
        return Err(format!("x_max {s:?} must be an integer in [2, {MAX_X}]"));
    }
    Ok(v as u64)
}

/// `a..b` (inclusive), `a..=b`, `a` or `a,b,c`; every order within `R_MAX`.
pub fn parse_orders(s: &str) -> Result<Vec<u32>, String> {
    let bad = || format!("bad order range {s:?}; use a..b or a,b,c");
    let orders: Vec<u32> = if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        (lo..=hi).collect()
    } else {
        s.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if let Some(&r) = orders.iter().find(|&&r| r > R_MAX) {
        return Err(format!("order {r} exceeds the limit {R_MAX}"));
    }
    let mut sorted = orders;
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

/// Signed inclusive range `a..b`.
pub fn parse_int_range(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("bad range {s:?}; use a..b");
    // the first '..' after a possible leading sign
    let split = s.get(1..).and_then(|t| t.find("..")).map(|i| i + 1).ok_or_else(bad)?;
    let (lo, hi) = (&s[..split], &s[split + 2..]);
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn parse_routes(s: &str) -> Result<Vec<Route>, String> {
    let mut routes = Vec::new();
    for name in s.split(',').filter(|n| !n.trim().is_empty()) {
        let route: Route = name.parse().map_err(|_| format!("unknown route {name:?}"))?;
        if !routes.contains(&route) {
            routes.push(route);
        }
    }
    if routes.is_empty() {
        return Err("at least one route is required".into());
    }
    Ok(routes)
}

/// Everything a command needs, already validated and resolved.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub fields: Vec<FieldSpec>,
    pub orders: Vec<u32>,
    pub x_max: u64,
    pub checkpoints: CheckpointSpec,
    pub routes: Vec<Route>,
    pub zeros: Option<PathBuf>,
    pub density_constant: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub threads: usize,
    pub export_stream: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(fields: Vec<FieldSpec>, orders: Vec<u32>, x_max: u64, routes: Vec<Route>) -> Self {
        RunConfig {
            fields,
            orders,
            x_max,
            checkpoints: CheckpointSpec::default(),
            routes,
            zeros: None,
            density_constant: 1.0,
            format: Format::Json,
            output: None,
            threads: 1,
            export_stream: None,
        }
    }

    /// Checks the invariants shared by every command.
    pub fn validate(&self) -> Result<(), CliError> {
        let invalid = |m: String| Err(CliError::Validation(m));
        if self.fields.is_empty() {
            return invalid("no fields selected".into());
        }
        if self.routes.is_empty() {
            return invalid("at least one route is required".into());
        }
        if self.orders.is_empty() {
            return invalid("no orders selected".into());
        }
        if let Some(&r) = self.orders.iter().find(|&&r| r > R_MAX) {
            return invalid(format!("order {r} exceeds the limit {R_MAX}"));
        }
        if self.routes.iter().any(|r| matches!(r, Route::Dirichlet | Route::Integral))
            && self.x_max < ekron_core::ek::MIN_X_MAX
        {
            return invalid(format!("x_max must be at least {}", ekron_core::ek::MIN_X_MAX));
        }
        for route in [Route::Integral, Route::ZeroSum] {
            if self.routes.contains(&route) && self.orders.contains(&0) {
                return invalid(format!("route {route} needs r >= 1"));
            }
        }
        let cps = self.checkpoints.resolve(self.x_max);
        if cps.is_empty() || cps.iter().any(|&x| !(x >= 2.0) || x > self.x_max as f64) {
            return invalid(format!("checkpoints must lie in [2, x_max = {}]", self.x_max));
        }
        if cps.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("checkpoints must be strictly increasing".into());
        }
        if !(self.density_constant > 0.0) {
            return invalid("density constant must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_ranges() {
        assert_eq!(parse_orders("0..2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_orders("0..=2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_orders("3").unwrap(), vec![3]);
        assert_eq!(parse_orders("3,1,1").unwrap(), vec![1, 3]);
        assert!(parse_orders("2..1").is_err());
        assert!(parse_orders("0..11").is_err());
    }

    #[test]
    fn signed_ranges() {
        assert_eq!(parse_int_range("-500..-3").unwrap(), (-500, -3));
        assert_eq!(parse_int_range("-50..=-3").unwrap(), (-50, -3));
        assert_eq!(parse_int_range("5..40").unwrap(), (5, 40));
        assert!(parse_int_range("-3..-50").is_err());
        assert!(parse_int_range("-3").is_err());
    }

    #[test]
    fn xmax_values() {
        assert_eq!(parse_xmax("1e7").unwrap(), 10_000_000);
        assert_eq!(parse_xmax("1000").unwrap(), 1000);
        assert!(parse_xmax("1.5").is_err());
        assert!(parse_xmax("1").is_err());
    }

    #[test]
    fn checkpoint_specs() {
        assert_eq!("geom:5".parse::<CheckpointSpec>().unwrap(), CheckpointSpec::Geometric { count: 5, decades: 2.0 });
        assert_eq!(
            "geom:4:3".parse::<CheckpointSpec>().unwrap(),
            CheckpointSpec::Geometric { count: 4, decades: 3.0 }
        );
        assert_eq!(
            "1e3,1e4,1e5".parse::<CheckpointSpec>().unwrap(),
            CheckpointSpec::Explicit(vec![1e3, 1e4, 1e5])
        );
        assert!("geom:0".parse::<CheckpointSpec>().is_err());
    }

    #[test]
    fn route_lists() {
        assert_eq!(parse_routes("dirichlet,ihara").unwrap(), vec![Route::Dirichlet, Route::Ihara]);
        assert_eq!(parse_routes("zerosum").unwrap(), vec![Route::ZeroSum]);
        assert!(parse_routes("").is_err());
        assert!(parse_routes("fast").is_err());
    }
}
