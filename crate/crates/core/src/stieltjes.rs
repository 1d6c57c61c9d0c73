//! Laurent coefficients of `ζ_K` itself at `s = 1`:
//!
//! ```text
//! 𝔰_{K,n} = ((−1)^n/n!) lim_x (Σ_{N𝔞≤x} (log N𝔞)^n/N𝔞 − 𝔰_{K,−1} (log x)^{n+1}/(n+1))
//! ```
//!
//! with `𝔰_{K,−1}` the residue. For `n = 0` the displayed form adds
//! `𝔰_{K,−1}` to the limit; that shift is applied as written.

use alloc::string::String;
use alloc::vec::Vec;

use crate::field::FieldSpec;
use crate::laurent::{self, LaurentRequest};
use crate::stream::{ideal_count_stream, CoeffStream, StreamKind};
use crate::{Error, Result, R_MAX};

/// Smallest `x_max` for which the residue is estimated from the stream.
pub const MIN_RESIDUE_X: u64 = 1_000;
const RESIDUE_SAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct StieltjesEstimate {
    pub n: u32,
    pub value: f64,
    pub error_bar: f64,
    pub raw_partial: f64,
    pub x_used: f64,
    pub residue: f64,
    /// The residue was fitted from `Σ a_K(n)` rather than supplied.
    pub residue_estimated: bool,
    pub converged: bool,
    pub field_label: String,
}

fn check_stream(stream: &CoeffStream) -> Result<()> {
    if stream.kind != StreamKind::IdealCount {
        return Err(Error::WrongStreamKind);
    }
    Ok(())
}

/// Least-squares slope through the origin of `Σ_{n≤x} a_K(n)` over the
/// last two decades below `x_max`.
pub fn estimate_residue(stream: &CoeffStream) -> Result<f64> {
    check_stream(stream)?;
    if stream.x_max < MIN_RESIDUE_X {
        return Err(Error::Domain("x_max too small for residue estimation"));
    }
    let xs = laurent::geometric_checkpoints(stream.x_max as f64, RESIDUE_SAMPLES, 2.0);
    let req = LaurentRequest::new(stream, 0.0, 0, xs)?;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for p in laurent::partial_sweep(&req) {
        sxy += p.x * p.summatory;
        sxx += p.x * p.x;
    }
    Ok(sxy / sxx)
}

fn scale(n: u32) -> f64 {
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    if n.is_multiple_of(2) {
        1.0 / fact
    } else {
        -1.0 / fact
    }
}

fn shift(n: u32, residue: f64) -> f64 {
    if n == 0 {
        residue
    } else {
        0.0
    }
}

/// The truncated formula at one `x > 0`. The unit ideal (norm 1) is part of
/// the sum once `x ≥ 1`.
pub fn stieltjes_partial(stream: &CoeffStream, n: u32, residue: f64, x: f64) -> Result<f64> {
    check_stream(stream)?;
    if n > R_MAX {
        return Err(Error::OrderTooLarge { r: n, max: R_MAX });
    }
    if !(x > 0.0) || x > stream.x_max as f64 {
        return Err(Error::OutOfRange { x, x_max: stream.x_max as f64 });
    }
    let l = libm::log(x);
    let main = residue * laurent::powi(l, n + 1) / (n + 1) as f64;
    let mut head = 0.0;
    if x >= 2.0 {
        let req = LaurentRequest::new(stream, residue, n, alloc::vec![x])?;
        return Ok(scale(n) * laurent::partial_sweep(&req)[0].raw + shift(n, residue));
    }
    if x >= 1.0 && n == 0 {
        head = stream.value(1);
    }
    Ok(scale(n) * (head - main) + shift(n, residue))
}

/// `𝔰_{K,n}` from the ideal-count stream up to `x_max`, extrapolated with
/// the shared tail model. `residue = None` estimates it from the stream.
pub fn stieltjes_dedekind(
    field: &FieldSpec,
    n: u32,
    x_max: u64,
    residue: Option<f64>,
    checkpoints: Option<Vec<f64>>,
) -> Result<StieltjesEstimate> {
    if n > R_MAX {
        return Err(Error::OrderTooLarge { r: n, max: R_MAX });
    }
    if residue.is_none() && x_max < MIN_RESIDUE_X {
        return Err(Error::Domain("x_max too small for residue estimation"));
    }
    let stream = ideal_count_stream(field, x_max)?;
    stieltjes_from_stream(&stream, n, residue, checkpoints)
}

pub fn stieltjes_from_stream(
    stream: &CoeffStream,
    n: u32,
    residue: Option<f64>,
    checkpoints: Option<Vec<f64>>,
) -> Result<StieltjesEstimate> {
    check_stream(stream)?;
    if n > R_MAX {
        return Err(Error::OrderTooLarge { r: n, max: R_MAX });
    }
    let (res, estimated) = match residue {
        Some(v) => (v, false),
        None => (estimate_residue(stream)?, true),
    };
    let cps = checkpoints.unwrap_or_else(|| laurent::default_checkpoints(stream.x_max as f64));
    let req = LaurentRequest::new(stream, res, n, cps)?;
    let sweep = laurent::partial_sweep(&req);
    let s = scale(n);
    let last = sweep.last().ok_or(Error::TooFewCheckpoints { got: 0, need: 1 })?;
    let raw_partial = s * last.raw + shift(n, res);
    let x_used = last.x;
    let partials: Vec<(f64, f64)> = sweep.iter().map(|p| (p.x, s * p.corrected + shift(n, res))).collect();
    let (value, error_bar, fitted) = match laurent::extrapolate(n, &partials) {
        Ok(fit) => (fit.value, fit.error_bar, true),
        Err(_) => {
            let lo = partials.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let hi = partials.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            (partials.last().unwrap().1, hi - lo, false)
        }
    };
    Ok(StieltjesEstimate {
        n,
        value,
        error_bar,
        raw_partial,
        x_used,
        residue: res,
        residue_estimated: estimated,
        converged: fitted && x_used >= crate::ek::CONVERGED_MIN_X,
        field_label: stream.field_label.clone(),
    })
}
