//! Text formats: splitting tables, zero tables, stream exports and result
//! records.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use ekron_core::ek::{EKEstimate, ZeroTable};
use ekron_core::{CoeffStream, Factor, FieldSpec, LocalSplitting, SplittingTable};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing header: {0}")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Core(#[from] ekron_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// Signature data declared in a splitting-table header.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableHeader {
    pub degree: Option<u32>,
    pub r1: Option<u32>,
    pub r2: Option<u32>,
    pub disc: Option<i128>,
}

fn parse_factor(text: &str, line: usize) -> Result<Factor, FormatError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(parse_err(line, format!("expected e,f,g but found {text:?}")));
    }
    let mut vals = [0u32; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| parse_err(line, format!("{part:?} is not a positive integer")))?;
        if *slot == 0 {
            return Err(parse_err(line, "e, f and g must be positive"));
        }
    }
    Ok(Factor::new(vals[0], vals[1], vals[2]))
}

/// Parses `key=value` pairs from a `#` comment line into `header`.
/// Returns `Ok(true)` if the line carried any recognised key.
fn parse_header_line(body: &str, line: usize, header: &mut TableHeader, default: &mut Option<Vec<Factor>>) -> Result<bool, FormatError> {
    let body = body.trim();
    if let Some(rule) = body.strip_prefix("default=") {
        let factors = rule
            .split(';')
            .map(|f| parse_factor(f, line))
            .collect::<Result<Vec<_>, _>>()?;
        *default = Some(factors);
        return Ok(true);
    }
    let mut seen = false;
    for pair in body.split(',') {
        let Some((key, value)) = pair.split_once('=') else { continue };
        let (key, value) = (key.trim(), value.trim());
        let bad = || parse_err(line, format!("bad value {value:?} for {key}"));
        match key {
            "n_K" | "n_k" | "degree" => header.degree = Some(value.parse().map_err(|_| bad())?),
            "r1" => header.r1 = Some(value.parse().map_err(|_| bad())?),
            "r2" => header.r2 = Some(value.parse().map_err(|_| bad())?),
            "disc" => header.disc = Some(value.parse().map_err(|_| bad())?),
            _ => continue,
        }
        seen = true;
    }
    Ok(seen)
}

/// Reads a splitting table.
///
/// ```text
/// # n_K=2, r1=0, r2=1, disc=-4
/// # default=1,1,2
/// 2,2,1,1
/// 3,1,2,1
/// ```
///
/// A prime with several factor shapes takes one row per shape, on
/// consecutive lines. The optional `default=` comment gives the shape of
/// every prime not listed (`;` separates factors).
pub fn load_splitting_table<R: BufRead>(source: R) -> Result<(TableHeader, SplittingTable), FormatError> {
    let mut header = TableHeader::default();
    let mut default_rule = None;
    let mut entries: BTreeMap<u64, (usize, LocalSplitting)> = BTreeMap::new();
    let mut current: Option<u64> = None;
    for (idx, text) in source.lines().enumerate() {
        let line = idx + 1;
        let text = text?;
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(body) = text.strip_prefix('#') {
            parse_header_line(body, line, &mut header, &mut default_rule)?;
            continue;
        }
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(parse_err(line, format!("expected p,e,f,g but found {text:?}")));
        }
        let p: u64 = parts[0].parse().map_err(|_| parse_err(line, format!("{:?} is not a prime", parts[0])))?;
        if !ekron_core::arith::is_prime(p) {
            return Err(parse_err(line, format!("{p} is not prime")));
        }
        let factor = parse_factor(&parts[1..].join(","), line)?;
        match entries.get_mut(&p) {
            Some((_, split)) if current == Some(p) => {
                if split.factors.iter().any(|f| f.e == factor.e && f.f == factor.f) {
                    return Err(parse_err(line, format!("duplicate shape for prime {p}; merge into g")));
                }
                split.factors.push(factor);
            }
            Some((first, _)) => {
                return Err(parse_err(line, format!("duplicate prime {p} (first listed on line {first})")));
            }
            None => {
                entries.insert(p, (line, LocalSplitting { p, factors: vec![factor] }));
            }
        }
        current = Some(p);
    }
    if entries.is_empty() && default_rule.is_none() {
        return Ok((header, SplittingTable::default()));
    }
    let degree = header.degree.ok_or(FormatError::MissingHeader("n_K"))?;
    for (first, split) in entries.values() {
        let sum = split.degree();
        if sum != degree as u64 {
            return Err(parse_err(*first, format!("prime {}: sum(e*f*g) = {sum}, expected n_K = {degree}", split.p)));
        }
    }
    let table = SplittingTable {
        entries: entries.into_iter().map(|(p, (_, split))| (p, split)).collect(),
        default_rule,
    };
    table.validate(degree)?;
    Ok((header, table))
}

/// Builds a custom field from a splitting table whose header declares
/// `n_K`, `r1`, `r2` and `disc`.
pub fn load_custom_field<R: BufRead>(source: R, label: String) -> Result<FieldSpec, FormatError> {
    let (header, table) = load_splitting_table(source)?;
    let r1 = header.r1.ok_or(FormatError::MissingHeader("r1"))?;
    let r2 = header.r2.ok_or(FormatError::MissingHeader("r2"))?;
    let disc = header.disc.ok_or(FormatError::MissingHeader("disc"))?;
    let degree = header.degree.ok_or(FormatError::MissingHeader("n_K"))?;
    if degree != r1 + 2 * r2 {
        return Err(FormatError::Core(ekron_core::Error::Domain("header n_K differs from r1 + 2*r2")));
    }
    Ok(FieldSpec::custom(r1, r2, disc, table, label)?)
}

/// Reads one positive ordinate per line, `#` comments allowed.
pub fn load_zero_table<R: BufRead>(source: R, label: String) -> Result<ZeroTable, FormatError> {
    let mut ordinates: Vec<f64> = Vec::new();
    let mut prev_line = 0;
    for (idx, text) in source.lines().enumerate() {
        let line = idx + 1;
        let text = text?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let v: f64 = text.parse().map_err(|_| parse_err(line, format!("{text:?} is not a number")))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(parse_err(line, "ordinates must be positive"));
        }
        if let Some(&last) = ordinates.last() {
            if v <= last {
                return Err(parse_err(line, format!("not increasing: {v} after {last} on line {prev_line}")));
            }
        }
        ordinates.push(v);
        prev_line = line;
    }
    Ok(ZeroTable::new(ordinates, label)?)
}

/// Writes nonzero coefficients as `n,value`.
pub fn write_stream_csv<W: Write>(mut out: W, stream: &CoeffStream) -> io::Result<()> {
    writeln!(out, "n,value")?;
    for (n, v) in stream.iter() {
        writeln!(out, "{n},{}", fmt_f64(v))?;
    }
    out.flush()
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tail_model: String,
    pub checkpoints: Vec<f64>,
    pub converged: bool,
}

/// One `(field, r, route)` result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub field: String,
    pub r: u32,
    pub route: String,
    pub value: f64,
    pub error_bar: f64,
    pub x_used: f64,
    pub raw_partial: f64,
    pub metadata: Metadata,
}

impl From<&EKEstimate> for Record {
    fn from(e: &EKEstimate) -> Self {
        Record {
            field: e.field_label.clone(),
            r: e.r,
            route: e.route.as_str().to_string(),
            value: e.value,
            error_bar: e.error_bar,
            x_used: e.x_used,
            raw_partial: e.raw_partial,
            metadata: Metadata {
                tail_model: e.tail_model.to_string(),
                checkpoints: e.partials.iter().map(|p| p.0).collect(),
                converged: e.converged,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeDoc {
    pub schema: u32,
    pub records: Vec<Record>,
}

pub const COMPUTE_CSV_HEADER: &str = "field,r,route,value,error_bar,x_used";

pub fn compute_csv(records: &[Record]) -> String {
    let mut out = String::from(COMPUTE_CSV_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&rec.field),
            rec.r,
            rec.route,
            fmt_f64(rec.value),
            fmt_f64(rec.error_bar),
            fmt_f64(rec.x_used)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(text: &str) -> Result<(TableHeader, SplittingTable), FormatError> {
        load_splitting_table(text.as_bytes())
    }

    #[test]
    fn header_and_row() {
        let (h, t) = table("# n_K=2\n5,1,1,2\n").unwrap();
        assert_eq!(h.degree, Some(2));
        assert_eq!(t.entries[&5].factors, vec![Factor::new(1, 1, 2)]);
        assert!(t.default_rule.is_none());
    }

    #[test]
    fn degree_violation_names_row() {
        let err = table("# n_K=2\n3,1,2,1\n5,1,1,3\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");
    }

    #[test]
    fn empty_source() {
        let (_, t) = table("").unwrap();
        assert!(t.entries.is_empty() && t.default_rule.is_none());
    }

    #[test]
    fn repeated_prime_shapes() {
        let (_, t) = table("# n_K=3\n# default=1,1,3\n7,1,1,1\n7,1,2,1\n11,1,3,1\n").unwrap();
        assert_eq!(t.entries[&7].factors.len(), 2);
        assert_eq!(t.default_rule, Some(vec![Factor::new(1, 1, 3)]));
        assert!(table("# n_K=2\n7,1,1,1\n11,1,2,1\n7,1,1,1\n").is_err());
        assert!(table("# n_K=2\n7,1,1,1\n7,1,1,1\n").is_err());
    }

    #[test]
    fn malformed_rows() {
        assert!(table("# n_K=2\n5,1,1\n").is_err());
        assert!(table("# n_K=2\n6,1,1,2\n").is_err());
        assert!(table("# n_K=2\n5,0,1,2\n").is_err());
        assert!(matches!(table("5,1,1,2\n"), Err(FormatError::MissingHeader(_))));
    }

    #[test]
    fn custom_field_from_table() {
        let text = "# n_K=2, r1=0, r2=1, disc=-4\n# default=1,1,2\n2,2,1,1\n3,1,2,1\n7,1,2,1\n";
        let k = load_custom_field(text.as_bytes(), "gauss-partial".into()).unwrap();
        assert_eq!((k.degree, k.r1, k.r2, k.disc), (2, 0, 1, -4));
        assert_eq!(k.split_prime(3).unwrap().factors, vec![Factor::new(1, 2, 1)]);
        assert_eq!(k.split_prime(5).unwrap().factors, vec![Factor::new(1, 1, 2)]);
        assert!(load_custom_field("# n_K=2\n".as_bytes(), String::new()).is_err());
    }

    #[test]
    fn zero_table_lines() {
        let z = load_zero_table("# zeros\n14.134725\n\n21.022040\n".as_bytes(), "t".into()).unwrap();
        assert_eq!(z.len(), 2);
        let err = load_zero_table("14.1\n21.0\n20.0\n".as_bytes(), "t".into()).unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");
        assert!(load_zero_table("abc\n".as_bytes(), "t".into()).is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("Q"), "Q");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, -0.18754623284036522, 1e-300, 123456.789] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }
}
