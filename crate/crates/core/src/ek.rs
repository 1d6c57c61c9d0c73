//! Estimators for `γ_{K,r}` along four independent routes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::field::FieldSpec;
use crate::laurent::{self, LaurentRequest, TAIL_MODEL};
use crate::special::{f_orders, gamma_tilde_deriv};
use crate::stream::{lambda_stream, phi_table, CoeffStream, PhiTable, StreamKind};
use crate::sum::CompensatedSum;
use crate::{Error, Result, R_MAX};

/// Smallest `x_max` accepted by the Dirichlet and integral routes.
pub const MIN_X_MAX: u64 = 1_000;
/// Below this `x_max` an estimate is never reported as converged.
pub const CONVERGED_MIN_X: f64 = 1e4;
/// Default lower bound on the first tabulated zero.
pub const DEFAULT_MIN_FIRST_ZERO: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Dirichlet,
    Ihara,
    Integral,
    ZeroSum,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Dirichlet, Route::Ihara, Route::Integral, Route::ZeroSum];

    pub fn as_str(self) -> &'static str {
        match self {
            Route::Dirichlet => "dirichlet",
            Route::Ihara => "ihara",
            Route::Integral => "integral",
            Route::ZeroSum => "zero_sum",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dirichlet" => Ok(Route::Dirichlet),
            "ihara" => Ok(Route::Ihara),
            "integral" => Ok(Route::Integral),
            "zero_sum" | "zerosum" | "zero-sum" => Ok(Route::ZeroSum),
            _ => Err(Error::Unsupported("unknown route")),
        }
    }
}

/// One estimate of `γ_{K,r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EKEstimate {
    pub value: f64,
    pub route: Route,
    /// Largest `x` (or largest zero ordinate) that entered the estimate.
    pub x_used: f64,
    pub error_bar: f64,
    /// Un-extrapolated value at `x_used`.
    pub raw_partial: f64,
    pub r: u32,
    pub field_label: String,
    /// False when the tail fit was impossible or `x_used` is small.
    pub converged: bool,
    /// `(x, truncated estimate)` at every checkpoint.
    pub partials: Vec<(f64, f64)>,
    pub tail_model: &'static str,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EkOptions {
    /// Increasing checkpoints; `None` uses [`laurent::default_checkpoints`].
    pub checkpoints: Option<Vec<f64>>,
}

impl EkOptions {
    pub fn checkpoints_for(&self, x_max: u64) -> Vec<f64> {
        match &self.checkpoints {
            Some(c) => c.clone(),
            None => laurent::default_checkpoints(x_max as f64),
        }
    }
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(|k| k as f64).product()
}

fn sign(r: u32) -> f64 {
    if r.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_order(r: u32) -> Result<()> {
    if r > R_MAX {
        return Err(Error::OrderTooLarge { r, max: R_MAX });
    }
    Ok(())
}

/// Fits the tail of `partials`; falls back to the last value, flagged, when
/// the checkpoints cannot support a fit.
fn finish(
    route: Route,
    r: u32,
    field_label: String,
    partials: Vec<(f64, f64)>,
    raw_partial: f64,
) -> EKEstimate {
    let (x_used, last) = *partials.last().expect("at least one checkpoint");
    let (value, error_bar, fitted) = match laurent::extrapolate(r, &partials) {
        Ok(fit) => (fit.value, fit.error_bar, true),
        Err(_) => {
            let lo = partials.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let hi = partials.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            (last, hi - lo, false)
        }
    };
    EKEstimate {
        value,
        route,
        x_used,
        error_bar,
        raw_partial,
        r,
        field_label,
        converged: fitted && x_used >= CONVERGED_MIN_X,
        partials,
        tail_model: TAIL_MODEL,
    }
}

fn check_stream(stream: &CoeffStream) -> Result<()> {
    if stream.kind != StreamKind::VonMangoldt {
        return Err(Error::WrongStreamKind);
    }
    if stream.x_max < MIN_X_MAX {
        return Err(Error::Domain("x_max must be at least 1000"));
    }
    Ok(())
}

/// Dirichlet route: `γ_{K,r} = ((−1)^{r+1}/r!)·lim_x (Σ_{n≤x} Λ_K(n)(log n)^r/n − (log x)^{r+1}/(r+1))`.
///
/// The tail fit runs on the boundary-corrected partials (see
/// [`crate::laurent`]); `raw_partial` is the plain truncated formula at
/// `x_max`.
pub fn ek_dirichlet(field: &FieldSpec, r: u32, x_max: u64, opts: &EkOptions) -> Result<EKEstimate> {
    check_order(r)?;
    if x_max < MIN_X_MAX {
        return Err(Error::Domain("x_max must be at least 1000"));
    }
    let stream = lambda_stream(field, x_max)?;
    dirichlet_from_stream(&stream, r, opts)
}

/// [`ek_dirichlet`] on a prebuilt `Λ_K` stream.
pub fn dirichlet_from_stream(stream: &CoeffStream, r: u32, opts: &EkOptions) -> Result<EKEstimate> {
    check_order(r)?;
    check_stream(stream)?;
    let cps = opts.checkpoints_for(stream.x_max);
    let req = LaurentRequest::new(stream, 1.0, r, cps)?;
    let scale = sign(r + 1) / factorial(r);
    let sweep = laurent::partial_sweep(&req);
    let raw = scale * sweep.last().map_or(0.0, |p| p.raw);
    let partials = sweep.iter().map(|p| (p.x, scale * p.corrected)).collect();
    Ok(finish(Route::Dirichlet, r, stream.field_label.clone(), partials, raw))
}

/// Ihara-type route:
/// `γ_{K,r} + (−1)^r = ((−1)^{r+1}/r!)·lim_x (Φ_K(r, x) − f(r, x))`.
///
/// For `r = 0` this is Ihara's `γ_K = lim (log x − Φ_K(0, x)) − 1`.
pub fn ek_ihara(field: &FieldSpec, r: u32, x_max: u64, opts: &EkOptions) -> Result<EKEstimate> {
    check_order(r)?;
    if x_max < 2 {
        return Err(Error::Domain("x_max must be at least 2"));
    }
    let cps = opts.checkpoints_for(x_max);
    if cps.last().is_some_and(|&x| x > x_max as f64) {
        return Err(Error::OutOfRange { x: *cps.last().unwrap(), x_max: x_max as f64 });
    }
    let table = phi_table(field, &cps, r)?;
    ihara_from_table(&table, r, &field.label)
}

/// [`ek_ihara`] from a prebuilt `Φ` table covering order `r`.
pub fn ihara_from_table(table: &PhiTable, r: u32, field_label: &str) -> Result<EKEstimate> {
    check_order(r)?;
    if r > table.r_max() {
        return Err(Error::OrderTooLarge { r, max: table.r_max() });
    }
    let cps = table.checkpoints();
    if cps.is_empty() {
        return Err(Error::TooFewCheckpoints { got: 0, need: 1 });
    }
    let scale = sign(r + 1) / factorial(r);
    let mut partials = Vec::with_capacity(cps.len());
    let mut empty = false;
    for (c, &x) in cps.iter().enumerate() {
        let phi = table.get(r, c);
        let f = f_orders(x, r)?[r as usize];
        partials.push((x, scale * (phi.value - f) - sign(r)));
        empty = phi.term_count == 0;
    }
    let raw = partials.last().unwrap().1;
    let mut est = finish(Route::Ihara, r, String::from(field_label), partials, raw);
    if empty {
        est.converged = false;
    }
    Ok(est)
}

/// Integral route (`r ≥ 1`):
/// `γ_{K,r} = ((−1)^{r+1}/r!)·∫_1^∞ ((log t)^r − r(log t)^{r−1}) Δ_K(t)/t² dt`,
/// truncated at each checkpoint and extrapolated.
pub fn ek_integral(stream: &CoeffStream, r: u32, opts: &EkOptions) -> Result<EKEstimate> {
    check_order(r)?;
    if r == 0 {
        return Err(Error::Unsupported("integral route needs r >= 1"));
    }
    check_stream(stream)?;
    let cps = opts.checkpoints_for(stream.x_max);
    // validates ordering and range
    LaurentRequest::new(stream, 1.0, r, cps.clone())?;
    let partials = laurent::integral_sweep(stream, r, &cps)?;
    let raw = partials.last().map_or(0.0, |p| p.1);
    Ok(finish(Route::Integral, r, stream.field_label.clone(), partials, raw))
}

/// Imaginary parts `γ_j > 0` of nontrivial zeros `1/2 ± iγ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    pub source_label: String,
}

impl ZeroTable {
    pub fn new(ordinates: Vec<f64>, source_label: String) -> Result<Self> {
        Self::with_min_first(ordinates, source_label, DEFAULT_MIN_FIRST_ZERO)
    }

    /// Validates positivity, strict increase and `ordinates[0] > min_first`.
    pub fn with_min_first(ordinates: Vec<f64>, source_label: String, min_first: f64) -> Result<Self> {
        if let Some(bad) = ordinates.iter().position(|g| !g.is_finite() || *g <= 0.0) {
            return Err(Error::InvalidZeroTable(alloc::format!(
                "entry {} is not a positive finite number",
                bad + 1
            )));
        }
        if let Some(i) = ordinates.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidZeroTable(alloc::format!(
                "entries {} and {} are not strictly increasing",
                i + 1,
                i + 2
            )));
        }
        if let Some(&first) = ordinates.first() {
            if first <= min_first {
                return Err(Error::InvalidZeroTable(alloc::format!(
                    "first ordinate {first} is not above {min_first}"
                )));
            }
        }
        Ok(ZeroTable { ordinates, source_label })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSumOptions {
    /// Multiplier `c` in the heuristic zero density `c·(n_K log t + log|d_K|)`.
    pub density_constant: f64,
}

impl Default for ZeroSumOptions {
    fn default() -> Self {
        ZeroSumOptions { density_constant: 1.0 }
    }
}

/// `(−1)^r · 2·Re[(1/2 − iγ)^{−(r+1)}]`, the contribution of the pair
/// `1/2 ± iγ` to `Σ_ρ (−1)^r/(1−ρ)^{r+1}`.
pub fn zero_pair_term(gamma: f64, r: u32) -> f64 {
    let k = (r + 1) as f64;
    let modulus = libm::pow(0.25 + gamma * gamma, -k / 2.0);
    let arg = libm::atan2(-gamma, 0.5);
    sign(r) * 2.0 * modulus * libm::cos(k * arg)
}

/// Heuristic bound `c ∫_T^∞ (n_K log t + log|d_K|) t^{−(r+1)} dt` on the
/// omitted pairs above `T`.
pub fn zero_tail_bound(field: &FieldSpec, r: u32, top: f64, opts: &ZeroSumOptions) -> f64 {
    let rf = r as f64;
    let t_pow = libm::pow(top, -rf);
    let n = field.degree as f64;
    let log_integral = t_pow * (libm::log(top) / rf + 1.0 / (rf * rf));
    let plain_integral = t_pow / rf;
    opts.density_constant * (n * log_integral + field.log_abs_disc() * plain_integral)
}

/// Zero-sum route (`r ≥ 1`):
/// `γ_{K,r} = (−1)^{r+1} + Σ_ρ (−1)^r/(1−ρ)^{r+1} − Γ̃_K^{(r)}(1)/r!`.
pub fn ek_zero_sum(field: &FieldSpec, r: u32, zeros: &ZeroTable, opts: &ZeroSumOptions) -> Result<EKEstimate> {
    check_order(r)?;
    if r == 0 {
        return Err(Error::Unsupported("zero-sum route needs r >= 1"));
    }
    if zeros.is_empty() {
        return Err(Error::InvalidZeroTable(String::from("table is empty")));
    }
    // smallest terms first
    let pairs: CompensatedSum = zeros.ordinates.iter().rev().map(|&g| zero_pair_term(g, r)).collect();
    let archimedean = gamma_tilde_deriv(field, r)?.value / factorial(r);
    let mut total = CompensatedSum::new();
    total += sign(r + 1);
    total += pairs.value();
    total += -archimedean;
    let value = total.value();
    let top = *zeros.ordinates.last().unwrap();
    Ok(EKEstimate {
        value,
        route: Route::ZeroSum,
        x_used: top,
        error_bar: zero_tail_bound(field, r, top, opts),
        raw_partial: value,
        r,
        field_label: field.label.clone(),
        converged: true,
        partials: Vec::new(),
        tail_model: "heuristic zero density c*(n_K log t + log|d_K|)",
    })
}
