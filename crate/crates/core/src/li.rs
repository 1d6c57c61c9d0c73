//! Li coefficients `λ_n` of a number field from its Euler-Kronecker
//! constants.
//!
//! With `u = s − 1`, the logarithmic derivative of the completed zeta
//! function expands as `Σ_j c_j u^j` where
//!
//! ```text
//! c_j = (−1)^j + δ_{j0} log A_K + (r₁/2) ψ^{(j)}(1/2)/(2^j j!) + r₂ ψ^{(j)}(1)/j! + γ_{K,j}
//! A_K = √|d_K| / (2^{r₂} π^{n_K/2})
//! ```
//!
//! so `log ξ_K(1 + u) = a₀ + Σ_{j≥1} a_j u^j` with `a_{j+1} = c_j/(j+1)`,
//! and `λ_n = n Σ_{k=0}^{n−1} C(n−1, k) a_{n−k}`. The constant `a₀` never
//! enters.

use alloc::string::String;
use alloc::vec::Vec;

use crate::ek::EKEstimate;
use crate::field::FieldSpec;
use crate::special::{polygamma_at, Point};
use crate::{Error, Result, R_MAX};

#[derive(Debug, Clone, PartialEq)]
pub struct LiCoefficient {
    pub n: u32,
    pub value: f64,
    /// First-order propagation of the input error bars.
    pub error_bar: f64,
    pub field_label: String,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `λ_n` from the signature, degree, `log|d_K|` and `γ_{K,0..n−1}`.
pub fn li_from_parts(r1: u32, r2: u32, degree: u32, log_abs_disc: f64, gammas: &[f64], n: u32) -> Result<f64> {
    Ok(li_weights(r1, r2, degree, log_abs_disc, gammas, n)?.0)
}

/// `(λ_n, ∂λ_n/∂γ_{K,j} for j < n)`.
fn li_weights(
    r1: u32,
    r2: u32,
    degree: u32,
    log_abs_disc: f64,
    gammas: &[f64],
    n: u32,
) -> Result<(f64, Vec<f64>)> {
    if n == 0 {
        return Err(Error::Domain("Li coefficients start at n = 1"));
    }
    if n > R_MAX {
        return Err(Error::OrderTooLarge { r: n, max: R_MAX });
    }
    if gammas.len() < n as usize {
        return Err(Error::MissingInputs { order: gammas.len() as u32 });
    }
    let pi = core::f64::consts::PI;
    let log_a = 0.5 * log_abs_disc - r2 as f64 * core::f64::consts::LN_2 - 0.5 * degree as f64 * libm::log(pi);
    let mut value = 0.0;
    let mut weights = Vec::with_capacity(n as usize);
    for j in 0..n {
        let fact = factorial(j);
        let mut c = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 {
            c += log_a;
        }
        c += r1 as f64 / 2.0 * polygamma_at(Point::Half, j)? / (libm::ldexp(1.0, j as i32) * fact);
        c += r2 as f64 * polygamma_at(Point::One, j)? / fact;
        c += gammas[j as usize];
        // a_{j+1} enters with k = n − j − 1
        let weight = n as f64 * binomial(n - 1, n - j - 1) / (j + 1) as f64;
        value += weight * c;
        weights.push(weight);
    }
    Ok((value, weights))
}

/// `λ_n` for `field` from estimates of `γ_{K,r}`, `r = 0..n−1`.
pub fn li_coefficient(field: &FieldSpec, n: u32, ek_inputs: &[EKEstimate]) -> Result<LiCoefficient> {
    if n > R_MAX {
        return Err(Error::OrderTooLarge { r: n, max: R_MAX });
    }
    let mut gammas = Vec::with_capacity(n as usize);
    let mut errors = Vec::with_capacity(n as usize);
    for r in 0..n {
        let est = ek_inputs.iter().find(|e| e.r == r).ok_or(Error::MissingInputs { order: r })?;
        gammas.push(est.value);
        errors.push(est.error_bar);
    }
    let (value, weights) = li_weights(field.r1, field.r2, field.degree, field.log_abs_disc(), &gammas, n)?;
    let error_bar = weights.iter().zip(&errors).map(|(w, e)| libm::fabs(*w) * e).sum();
    Ok(LiCoefficient { n, value, error_bar, field_label: field.label.clone() })
}
