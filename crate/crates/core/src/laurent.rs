//! Laurent coefficients of `−L'/L` at `s = 1` from the Dirichlet
//! coefficients `b_n`.
//!
//! If `−L'/L(s) = Σ b_n n^{−s} = C/(s−1) + C_0 + Σ_{r≥1} (−1)^r C_r/r! (s−1)^r`
//! and `E(x) = Σ_{n≤x} b_n − Cx = O(x^b)` with `b < 1`, then for every `x ≥ 1`
//!
//! ```text
//! C_r = Σ_{n≤x} b_n (log n)^r / n − C (log x)^{r+1}/(r+1)
//!       − E(x) (log x)^r / x + ∫_x^∞ ((log t)^r − r (log t)^{r−1}) E(t)/t² dt
//! ```
//!
//! The first line alone tends to `C_r`; that is the *raw partial*. Keeping
//! the `E(x)` boundary term as well gives the *corrected partial*, which
//! removes the jump discontinuity of the raw partial at every `b_n` and
//! converges much faster in practice. Both are exposed; the routes in
//! [`crate::ek`] extrapolate the corrected one.

use alloc::vec::Vec;

use crate::stream::{CoeffStream, StreamKind};
use crate::sum::CompensatedSum;
use crate::{Error, Result, R_MAX};

/// Number of default checkpoints.
pub const DEFAULT_CHECKPOINTS: usize = 8;
/// Default checkpoints span `[x_max / 10^DEFAULT_DECADES, x_max]`.
pub const DEFAULT_DECADES: f64 = 2.0;
/// Minimum checkpoints for a tail fit.
pub const MIN_FIT_POINTS: usize = 3;

/// Description of the tail model, carried into result metadata.
pub const TAIL_MODEL: &str = "c + a*(log x)^(r+1)/sqrt(x), least squares";

#[inline]
pub(crate) fn powi(base: f64, exp: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `count` points geometrically spaced from `x_max / 10^decades` to
/// `x_max`, clamped below at 2 and deduplicated.
pub fn geometric_checkpoints(x_max: f64, count: usize, decades: f64) -> Vec<f64> {
    if count <= 1 {
        return alloc::vec![x_max];
    }
    let lo = (x_max / libm::pow(10.0, decades)).max(2.0).min(x_max);
    let ratio = libm::log(x_max / lo) / (count - 1) as f64;
    let mut out: Vec<f64> = (0..count)
        .map(|i| {
            if i == count - 1 {
                x_max
            } else {
                lo * libm::exp(ratio * i as f64)
            }
        })
        .collect();
    out.dedup();
    out
}

pub fn default_checkpoints(x_max: f64) -> Vec<f64> {
    geometric_checkpoints(x_max, DEFAULT_CHECKPOINTS, DEFAULT_DECADES)
}

/// A request for `C_r` of the series with coefficients `stream` and pole
/// residue `residue`.
#[derive(Debug, Clone)]
pub struct LaurentRequest<'a> {
    pub stream: &'a CoeffStream,
    pub residue: f64,
    pub r: u32,
    pub checkpoints: Vec<f64>,
}

impl<'a> LaurentRequest<'a> {
    pub fn new(stream: &'a CoeffStream, residue: f64, r: u32, checkpoints: Vec<f64>) -> Result<Self> {
        if r > R_MAX {
            return Err(Error::OrderTooLarge { r, max: R_MAX });
        }
        if checkpoints.iter().any(|&x| !(x >= 2.0)) {
            return Err(Error::Domain("checkpoints must be at least 2"));
        }
        if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("checkpoints must be strictly increasing"));
        }
        if let Some(&last) = checkpoints.last() {
            if last > stream.x_max as f64 {
                return Err(Error::OutOfRange { x: last, x_max: stream.x_max as f64 });
            }
        }
        Ok(LaurentRequest { stream, residue, r, checkpoints })
    }

    pub fn extrapolate(&self, partials: &[(f64, f64)]) -> Result<TailFit> {
        extrapolate(self.r, partials)
    }
}

/// Raw partial `Σ_{n≤x} b_n (log n)^r / n − C (log x)^{r+1}/(r+1)` for one `x`.
pub fn coeff_partial(req: &LaurentRequest<'_>, x: f64) -> Result<f64> {
    if !(x >= 2.0) || x > req.stream.x_max as f64 {
        return Err(Error::OutOfRange { x, x_max: req.stream.x_max as f64 });
    }
    Ok(partials_at(req.stream, req.residue, req.r, &[x])[0].raw)
}

/// Partials at one checkpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialPoint {
    pub x: f64,
    /// `Σ_{n≤x} b_n (log n)^r / n − C (log x)^{r+1}/(r+1)`
    pub raw: f64,
    /// `raw − E(x) (log x)^r / x`
    pub corrected: f64,
    /// `B(x) = Σ_{n≤x} b_n`
    pub summatory: f64,
}

/// Raw and corrected partials at every checkpoint of `req`, in one pass
/// over the stream (each checkpoint extends the previous prefix sums).
pub fn partial_sweep(req: &LaurentRequest<'_>) -> Vec<PartialPoint> {
    partials_at(req.stream, req.residue, req.r, &req.checkpoints)
}

fn partials_at(stream: &CoeffStream, residue: f64, r: u32, checkpoints: &[f64]) -> Vec<PartialPoint> {
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut weighted = CompensatedSum::new();
    let mut plain = CompensatedSum::new();
    let mut next = 0;
    let emit = |x: f64, weighted: &CompensatedSum, plain: &CompensatedSum| {
        let l = libm::log(x);
        let lr = powi(l, r);
        let mut raw = *weighted;
        raw += -residue * lr * l / (r + 1) as f64;
        let summatory = plain.value();
        let mut err = *plain;
        err += -residue * x;
        let mut corrected = raw;
        corrected += -err.value() * lr / x;
        PartialPoint { x, raw: raw.value(), corrected: corrected.value(), summatory }
    };
    for (n, b) in stream.iter() {
        let nf = n as f64;
        while next < checkpoints.len() && nf > checkpoints[next] {
            out.push(emit(checkpoints[next], &weighted, &plain));
            next += 1;
        }
        if next == checkpoints.len() {
            break;
        }
        plain += b;
        if r == 0 {
            weighted += b / nf;
        } else if n > 1 {
            weighted += b * powi(libm::log(nf), r) / nf;
        }
    }
    while next < checkpoints.len() {
        out.push(emit(checkpoints[next], &weighted, &plain));
        next += 1;
    }
    out
}

/// Result of fitting `value(x) = c + a·(log x)^{r+1}/√x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    /// Extrapolated limit `c`.
    pub value: f64,
    /// `max(largest fit residual, |last partial − c|)`.
    pub error_bar: f64,
    pub slope: f64,
    pub max_residual: f64,
}

/// Least-squares fit of the tail model to `(x, value)` pairs.
///
/// Requires at least three points spanning a decade in `x`.
pub fn extrapolate(r: u32, partials: &[(f64, f64)]) -> Result<TailFit> {
    if partials.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewCheckpoints { got: partials.len(), need: MIN_FIT_POINTS });
    }
    let (x0, y0) = partials[0];
    if partials.iter().all(|&(x, _)| x == x0) {
        return Err(Error::DegenerateFit);
    }
    let (xmin, xmax) = partials
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &(x, _)| (lo.min(x), hi.max(x)));
    // one decade, with slack for rounding in generated checkpoints
    if xmax < 10.0 * xmin * (1.0 - 1e-9) {
        return Err(Error::Domain("checkpoints must span at least one decade"));
    }
    let basis = |x: f64| powi(libm::log(x), r + 1) / libm::sqrt(x);
    let count = partials.len() as f64;
    // shift by the first value so a constant sequence fits exactly
    let y_mean = y0 + partials.iter().map(|&(_, y)| y - y0).sum::<f64>() / count;
    let p_mean = partials.iter().map(|&(x, _)| basis(x)).sum::<f64>() / count;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in partials {
        let dp = basis(x) - p_mean;
        sxx += dp * dp;
        sxy += dp * (y - y_mean);
    }
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit);
    }
    let slope = sxy / sxx;
    let value = y_mean - slope * p_mean;
    let max_residual = partials
        .iter()
        .map(|&(x, y)| libm::fabs(y - value - slope * basis(x)))
        .fold(0.0, f64::max);
    let last = partials.iter().fold(partials[0], |best, &p| if p.0 > best.0 { p } else { best });
    let error_bar = max_residual.max(libm::fabs(last.1 - value));
    Ok(TailFit { value, error_bar, slope, max_residual })
}

/// `H(t) = ∫ ((log t)^r − r (log t)^{r−1}) / t² dt = −(log t)^r / t`.
fn antiderivative(r: u32, t: f64) -> f64 {
    -powi(libm::log(t), r) / t
}

/// `P(t) = ∫_1^t ((log u)^r − r (log u)^{r−1}) / u du = (log t)^{r+1}/(r+1) − (log t)^r`.
fn main_integral(r: u32, t: f64) -> f64 {
    let l = libm::log(t);
    powi(l, r + 1) / (r + 1) as f64 - powi(l, r)
}

fn integral_scale(r: u32) -> f64 {
    let fact: f64 = (1..=r).map(|k| k as f64).product();
    if r % 2 == 1 {
        1.0 / fact
    } else {
        -1.0 / fact
    }
}

/// `((−1)^{r+1} / r!) ∫_1^x ((log t)^r − r (log t)^{r−1}) Δ_K(t) / t² dt` at
/// each checkpoint, with `Δ_K(t) = S(t) − t` and `S` the step function
/// `Σ_{n≤t} Λ_K(n)`. Between consecutive norms `S` is constant, so each
/// piece integrates exactly with the antiderivative `H`.
pub fn integral_sweep(stream: &CoeffStream, r: u32, checkpoints: &[f64]) -> Result<Vec<(f64, f64)>> {
    if r == 0 {
        return Err(Error::Unsupported("integral route needs r >= 1"));
    }
    if r > R_MAX {
        return Err(Error::OrderTooLarge { r, max: R_MAX });
    }
    if stream.kind != StreamKind::VonMangoldt {
        return Err(Error::WrongStreamKind);
    }
    if checkpoints.iter().any(|&x| !(x >= 1.0) || x > stream.x_max as f64) {
        return Err(Error::Domain("integral checkpoints must lie in [1, x_max]"));
    }
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("checkpoints must be nondecreasing"));
    }
    let scale = integral_scale(r);
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut steps = CompensatedSum::new();
    let mut level = CompensatedSum::new();
    let mut t_prev = 1.0;
    let mut h_prev = antiderivative(r, 1.0);
    let mut next = 0;
    let close_at = |x: f64, steps: &CompensatedSum, level: f64, h_prev: f64| {
        let mut total = *steps;
        total += level * (antiderivative(r, x) - h_prev);
        total += -main_integral(r, x);
        scale * total.value()
    };
    for (n, b) in stream.iter() {
        let nf = n as f64;
        while next < checkpoints.len() && nf > checkpoints[next] {
            let x = checkpoints[next];
            out.push((x, close_at(x, &steps, level.value(), h_prev)));
            next += 1;
        }
        if next == checkpoints.len() {
            break;
        }
        let h = antiderivative(r, nf);
        if nf > t_prev {
            steps += level.value() * (h - h_prev);
        }
        level += b;
        t_prev = nf;
        h_prev = h;
    }
    while next < checkpoints.len() {
        let x = checkpoints[next];
        out.push((x, close_at(x, &steps, level.value(), h_prev)));
        next += 1;
    }
    Ok(out)
}

/// Truncated integral route at `x_max`:
/// `((−1)^{r+1} / r!) ∫_1^{x_max} ((log t)^r − r (log t)^{r−1}) Δ_K(t)/t² dt`.
pub fn integral_route(stream: &CoeffStream, r: u32, x_max: f64) -> Result<f64> {
    Ok(integral_sweep(stream, r, &[x_max])?[0].1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::stream::lambda_stream;
    use alloc::string::String;
    use alloc::vec;

    fn empty_stream(x_max: u64) -> CoeffStream {
        CoeffStream::from_sparse(StreamKind::VonMangoldt, x_max, vec![], String::from("empty")).unwrap()
    }

    #[test]
    fn partial_at_two() {
        let s = lambda_stream(&FieldSpec::rational(), 100).unwrap();
        let req = LaurentRequest::new(&s, 1.0, 0, vec![2.0]).unwrap();
        let v = coeff_partial(&req, 2.0).unwrap();
        assert!((v + 0.346574).abs() < 1e-6);
        assert!((v + core::f64::consts::LN_2 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn empty_sum_is_minus_log() {
        let s = empty_stream(100);
        let req = LaurentRequest::new(&s, 1.0, 0, vec![2.0, 50.0]).unwrap();
        for x in [2.0, 7.5, 50.0] {
            assert!((coeff_partial(&req, x).unwrap() + libm::log(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn partial_out_of_range() {
        let s = empty_stream(100);
        let req = LaurentRequest::new(&s, 1.0, 0, vec![2.0]).unwrap();
        assert!(coeff_partial(&req, 101.0).is_err());
        assert!(coeff_partial(&req, 1.5).is_err());
        assert!(LaurentRequest::new(&s, 1.0, 0, vec![5.0, 3.0]).is_err());
        assert!(LaurentRequest::new(&s, 1.0, R_MAX + 1, vec![5.0]).is_err());
    }

    #[test]
    fn constant_sequence_extrapolates_to_itself() {
        let pts: Vec<(f64, f64)> = [1e3, 1e4, 1e5].iter().map(|&x| (x, 0.1)).collect();
        let fit = extrapolate(2, &pts).unwrap();
        assert_eq!(fit.value, 0.1);
        assert_eq!(fit.error_bar, 0.0);
    }

    #[test]
    fn extrapolation_preconditions() {
        assert_eq!(
            extrapolate(0, &[(1e3, 1.0), (1e4, 1.0)]),
            Err(Error::TooFewCheckpoints { got: 2, need: 3 })
        );
        assert_eq!(extrapolate(0, &[(1e3, 1.0), (1e3, 2.0), (1e3, 3.0)]), Err(Error::DegenerateFit));
        assert!(extrapolate(0, &[(1e3, 1.0), (2e3, 2.0), (3e3, 3.0)]).is_err());
    }

    #[test]
    fn exact_tail_model_is_recovered() {
        let r = 1;
        let pts: Vec<(f64, f64)> = geometric_checkpoints(1e7, 8, 2.0)
            .into_iter()
            .map(|x| (x, 0.25 - 3.0 * powi(libm::log(x), r + 1) / libm::sqrt(x)))
            .collect();
        let fit = extrapolate(r, &pts).unwrap();
        assert!((fit.value - 0.25).abs() < 1e-12);
        assert!((fit.slope + 3.0).abs() < 1e-9);
    }

    #[test]
    fn checkpoints_are_geometric() {
        let cps = default_checkpoints(1e7);
        assert_eq!(cps.len(), 8);
        assert!((cps[0] - 1e5).abs() < 1e-6);
        assert_eq!(*cps.last().unwrap(), 1e7);
        let ratio = cps[1] / cps[0];
        for w in cps.windows(2) {
            assert!((w[1] / w[0] - ratio).abs() < 1e-9);
        }
        assert_eq!(default_checkpoints(10.0), geometric_checkpoints(10.0, 8, 2.0));
        assert!(default_checkpoints(10.0)[0] >= 2.0);
    }

    #[test]
    fn integral_of_empty_stream() {
        let s = empty_stream(100);
        let e = core::f64::consts::E;
        let v = integral_route(&s, 1, e).unwrap();
        // Δ = −t, so the integral is −P(e) = 1/2 for r = 1
        assert!((v - 0.5).abs() < 1e-15);
        // r = 2: −(1/2)(2/3)
        let v = integral_route(&s, 2, e).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(integral_route(&s, 0, e), Err(Error::Unsupported(_))));
    }

    #[test]
    fn integral_equals_corrected_partial() {
        // Summation by parts: ∫_1^x (..) Δ/t² = raw − E(x)(log x)^r/x for r ≥ 1.
        let s = lambda_stream(&FieldSpec::quadratic(5).unwrap(), 200_000).unwrap();
        let cps = geometric_checkpoints(200_000.0, 6, 3.0);
        for r in 1..=4 {
            let req = LaurentRequest::new(&s, 1.0, r, cps.clone()).unwrap();
            let sweep = partial_sweep(&req);
            let integral = integral_sweep(&s, r, &cps).unwrap();
            let scale = integral_scale(r);
            for (p, (_, i)) in sweep.iter().zip(&integral) {
                let want = scale * p.corrected;
                assert!((i - want).abs() < 1e-9 * want.abs().max(1.0), "r={r} x={} {i} vs {want}", p.x);
            }
        }
    }

    #[test]
    fn sweep_matches_from_scratch() {
        let s = lambda_stream(&FieldSpec::cyclotomic(5).unwrap(), 100_000).unwrap();
        let cps = vec![100.0, 1000.0, 31_622.7, 100_000.0];
        let req = LaurentRequest::new(&s, 1.0, 2, cps.clone()).unwrap();
        let sweep = partial_sweep(&req);
        for p in sweep {
            let fresh = coeff_partial(&req, p.x).unwrap();
            assert!((p.raw - fresh).abs() <= 1e-12 * fresh.abs().max(1.0));
        }
    }
}
