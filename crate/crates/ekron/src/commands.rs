//! The `compute`, `crosscheck` and `scan` commands.

use std::fs::File;
use std::io::{BufReader, BufWriter};

use ekron_core::bounds::bound_report;
use ekron_core::ek::{self, EKEstimate, EkOptions, Route, ZeroSumOptions, ZeroTable};
use ekron_core::stream::PhiTable;
use ekron_core::{arith, CoeffStream, FieldSpec};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::formats::{self, csv_field, fmt_f64, ComputeDoc, Record, SCHEMA_VERSION};
use crate::parallel;
use crate::CliError;

fn data_err(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

struct FieldData {
    lambda: Option<CoeffStream>,
    phi: Option<PhiTable>,
}

fn build_field_data(field: &FieldSpec, cfg: &RunConfig, cps: &[f64], threads: usize) -> Result<FieldData, CliError> {
    let needs_lambda = cfg.routes.iter().any(|r| matches!(r, Route::Dirichlet | Route::Integral));
    let lambda = if needs_lambda || cfg.export_stream.is_some() {
        Some(parallel::lambda_stream(field, cfg.x_max, threads).map_err(data_err)?)
    } else {
        None
    };
    let phi = if cfg.routes.contains(&Route::Ihara) {
        let r_max = cfg.orders.iter().copied().max().unwrap_or(0);
        Some(parallel::phi_table(field, cps, r_max, threads).map_err(data_err)?)
    } else {
        None
    };
    Ok(FieldData { lambda, phi })
}

fn run_job(
    field: &FieldSpec,
    data: &FieldData,
    r: u32,
    route: Route,
    opts: &EkOptions,
    zeros: Option<&ZeroTable>,
    zero_opts: &ZeroSumOptions,
) -> Result<EKEstimate, CliError> {
    let est = match route {
        Route::Dirichlet => ek::dirichlet_from_stream(data.lambda.as_ref().expect("lambda stream"), r, opts),
        Route::Integral => ek::ek_integral(data.lambda.as_ref().expect("lambda stream"), r, opts),
        Route::Ihara => ek::ihara_from_table(data.phi.as_ref().expect("phi table"), r, &field.label),
        Route::ZeroSum => ek::ek_zero_sum(field, r, zeros.expect("zero table"), zero_opts),
    };
    est.map_err(data_err)
}

fn load_zeros(cfg: &RunConfig) -> Result<Option<ZeroTable>, CliError> {
    if !cfg.routes.contains(&Route::ZeroSum) {
        return Ok(None);
    }
    let path = cfg.zeros.as_ref().ok_or_else(|| CliError::Data("zero table required (--zeros)".into()))?;
    let file = File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let table = formats::load_zero_table(BufReader::new(file), path.display().to_string())
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(Some(table))
}

/// Every `(field, r, route)` estimate, ordered by field, then `r`, then
/// route as listed in the configuration.
pub fn estimate_all(cfg: &RunConfig) -> Result<Vec<EKEstimate>, CliError> {
    cfg.validate()?;
    let zeros = load_zeros(cfg)?;
    if cfg.export_stream.is_some() && cfg.fields.len() != 1 {
        return Err(CliError::Validation("--export-stream needs a single field".into()));
    }
    let cps = cfg.checkpoints.resolve(cfg.x_max);
    let opts = EkOptions { checkpoints: Some(cps.clone()) };
    let zero_opts = ZeroSumOptions { density_constant: cfg.density_constant };
    let jobs: Vec<(u32, Route)> = cfg
        .orders
        .iter()
        .flat_map(|&r| cfg.routes.iter().map(move |&route| (r, route)))
        .collect();

    if cfg.fields.len() == 1 {
        let field = &cfg.fields[0];
        let data = build_field_data(field, cfg, &cps, cfg.threads)?;
        if let (Some(path), Some(stream)) = (&cfg.export_stream, &data.lambda) {
            let file = File::create(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            formats::write_stream_csv(BufWriter::new(file), stream).map_err(data_err)?;
        }
        let results = parallel::run_indexed(jobs.len(), cfg.threads, |i| {
            let (r, route) = jobs[i];
            run_job(field, &data, r, route, &opts, zeros.as_ref(), &zero_opts)
        });
        return results.into_iter().collect();
    }

    let per_field = parallel::run_indexed(cfg.fields.len(), cfg.threads, |i| {
        let field = &cfg.fields[i];
        let data = build_field_data(field, cfg, &cps, 1)?;
        jobs.iter()
            .map(|&(r, route)| run_job(field, &data, r, route, &opts, zeros.as_ref(), &zero_opts))
            .collect::<Result<Vec<_>, _>>()
    });
    let mut out = Vec::with_capacity(cfg.fields.len() * jobs.len());
    for block in per_field {
        out.extend(block?);
    }
    Ok(out)
}

pub fn compute(cfg: &RunConfig) -> Result<String, CliError> {
    let records: Vec<Record> = estimate_all(cfg)?.iter().map(Record::from).collect();
    Ok(match cfg.format {
        Format::Json => to_json(&ComputeDoc { schema: SCHEMA_VERSION, records })?,
        Format::Csv => formats::compute_csv(&records),
    })
}

fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(doc).map_err(data_err)?;
    text.push('\n');
    Ok(text)
}

/// Agreement of all routes for one `(field, r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossRow {
    pub field: String,
    pub r: u32,
    pub routes: Vec<String>,
    /// Largest pairwise `|Δ|`.
    pub max_abs_diff: f64,
    /// Summed error bars of the pair attaining `max_abs_diff`.
    pub error_bar_sum: f64,
    pub pass: bool,
    pub unconverged: Vec<String>,
    pub estimates: Vec<Record>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossDoc {
    pub schema: u32,
    pub rows: Vec<CrossRow>,
}

pub fn cross_rows(estimates: &[EKEstimate], routes_per_row: usize) -> Vec<CrossRow> {
    estimates
        .chunks(routes_per_row)
        .map(|group| {
            let mut max_abs_diff = 0.0f64;
            let mut error_bar_sum = 0.0;
            let mut pairs_ok = true;
            for (i, a) in group.iter().enumerate() {
                for b in &group[i + 1..] {
                    let diff = (a.value - b.value).abs();
                    let bars = a.error_bar + b.error_bar;
                    // NaN never passes
                    pairs_ok &= diff <= bars;
                    if diff > max_abs_diff || (diff == max_abs_diff && bars < error_bar_sum) {
                        max_abs_diff = diff;
                        error_bar_sum = bars;
                    }
                }
            }
            let unconverged: Vec<String> =
                group.iter().filter(|e| !e.converged).map(|e| e.route.to_string()).collect();
            CrossRow {
                field: group[0].field_label.clone(),
                r: group[0].r,
                routes: group.iter().map(|e| e.route.to_string()).collect(),
                max_abs_diff,
                error_bar_sum,
                pass: pairs_ok && unconverged.is_empty(),
                unconverged,
                estimates: group.iter().map(Record::from).collect(),
            }
        })
        .collect()
}

/// Report text and whether every row passed.
pub fn crosscheck(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    if cfg.routes.len() < 2 {
        return Err(CliError::Validation("crosscheck needs at least two routes".into()));
    }
    let estimates = estimate_all(cfg)?;
    let rows = cross_rows(&estimates, cfg.routes.len());
    let all_pass = rows.iter().all(|r| r.pass);
    let text = match cfg.format {
        Format::Json => to_json(&CrossDoc { schema: SCHEMA_VERSION, rows })?,
        Format::Csv => {
            let mut out = String::from("field,r,routes,max_abs_diff,error_bar_sum,status,unconverged\n");
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    csv_field(&row.field),
                    row.r,
                    row.routes.join(";"),
                    fmt_f64(row.max_abs_diff),
                    fmt_f64(row.error_bar_sum),
                    if row.pass { "pass" } else { "fail" },
                    row.unconverged.join(";")
                ));
            }
            out
        }
    };
    Ok((text, all_pass))
}

/// Quadratic fields with fundamental discriminant in `[lo, hi]`.
pub fn quadratic_family(lo: i64, hi: i64) -> Vec<FieldSpec> {
    (lo..=hi)
        .filter(|&d| arith::is_fundamental_discriminant(d))
        .filter_map(|d| FieldSpec::quadratic_from_discriminant(d).ok())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub field: String,
    pub disc: i64,
    pub r: u32,
    pub route: String,
    pub value: f64,
    pub error_bar: f64,
    pub x_used: f64,
    pub converged: bool,
    pub grh_main_term: f64,
    pub uncond_scale: f64,
    /// `|value| / uncond_scale`
    pub ratio: f64,
    /// `value / grh_main_term`
    pub grh_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanDoc {
    pub schema: u32,
    pub rows: Vec<ScanRow>,
}

pub const SCAN_CSV_HEADER: &str =
    "field,disc,r,route,value,error_bar,x_used,converged,grh_main_term,uncond_scale,ratio,grh_ratio";

pub fn scan_rows(cfg: &RunConfig) -> Result<Vec<ScanRow>, CliError> {
    if cfg.orders.contains(&0) {
        return Err(CliError::Validation("scan bound columns need r >= 1".into()));
    }
    let estimates = estimate_all(cfg)?;
    let per_field = cfg.orders.len() * cfg.routes.len();
    let mut rows = Vec::with_capacity(estimates.len());
    for (field, group) in cfg.fields.iter().zip(estimates.chunks(per_field)) {
        for est in group {
            let report = bound_report(field, est.r, est.value).map_err(data_err)?;
            rows.push(ScanRow {
                field: field.label.clone(),
                disc: field.disc as i64,
                r: est.r,
                route: est.route.to_string(),
                value: est.value,
                error_bar: est.error_bar,
                x_used: est.x_used,
                converged: est.converged,
                grh_main_term: report.grh_main_term,
                uncond_scale: report.uncond_scale,
                ratio: report.ratio,
                grh_ratio: est.value / report.grh_main_term,
            });
        }
    }
    Ok(rows)
}

pub fn scan(cfg: &RunConfig) -> Result<String, CliError> {
    if cfg.fields.is_empty() {
        return Err(CliError::Validation("no fundamental discriminants in range".into()));
    }
    let rows = scan_rows(cfg)?;
    Ok(match cfg.format {
        Format::Json => to_json(&ScanDoc { schema: SCHEMA_VERSION, rows })?,
        Format::Csv => {
            let mut out = String::from(SCAN_CSV_HEADER);
            out.push('\n');
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    csv_field(&row.field),
                    row.disc,
                    row.r,
                    row.route,
                    fmt_f64(row.value),
                    fmt_f64(row.error_bar),
                    fmt_f64(row.x_used),
                    row.converged,
                    fmt_f64(row.grh_main_term),
                    fmt_f64(row.uncond_scale),
                    fmt_f64(row.ratio),
                    fmt_f64(row.grh_ratio)
                ));
            }
            out
        }
    })
}
