//! Explicit main terms of the conditional and unconditional size bounds for
//! `γ_{K,r}`. The implied constants are unknown, so these are only
//! reported next to computed values, never asserted.

use alloc::string::String;

use crate::field::FieldSpec;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub r: u32,
    pub field_label: String,
    pub gamma_value: f64,
    pub grh_main_term: f64,
    pub uncond_scale: f64,
    /// `|gamma_value| / uncond_scale`
    pub ratio: f64,
}

fn check(log_abs_disc: f64, r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Domain("bounds need r >= 1"));
    }
    // |d| ≥ 3 within rounding of log 3
    if !(log_abs_disc >= libm::log(3.0) - 1e-12) {
        return Err(Error::Domain("iterated logarithms need |d_K| >= 3"));
    }
    Ok(())
}

/// `(2^{r+1}/r!)(log r + log₂|d| + 2 log₃|d|)^{r+1}·(∓1/(r+1))`, negative
/// for odd `r` (lower bound) and positive for even `r` (upper bound).
pub fn grh_main_term_from_log(log_abs_disc: f64, r: u32) -> Result<f64> {
    check(log_abs_disc, r)?;
    let log2 = libm::log(log_abs_disc);
    let log3 = libm::log(log2);
    let inner = libm::log(r as f64) + log2 + 2.0 * log3;
    let fact: f64 = (1..=r).map(|k| k as f64).product();
    let sign = if r % 2 == 1 { -1.0 } else { 1.0 };
    Ok(libm::ldexp(1.0, r as i32 + 1) / fact * libm::pow(inner, (r + 1) as f64) * sign / (r + 1) as f64)
}

/// `(4 log|d|)^{r+2}`.
pub fn uncond_scale_from_log(log_abs_disc: f64, r: u32) -> Result<f64> {
    check(log_abs_disc, r)?;
    Ok(libm::pow(4.0 * log_abs_disc, (r + 2) as f64))
}

pub fn grh_main_term(field: &FieldSpec, r: u32) -> Result<f64> {
    grh_main_term_from_log(field.log_abs_disc(), r)
}

pub fn uncond_scale(field: &FieldSpec, r: u32) -> Result<f64> {
    uncond_scale_from_log(field.log_abs_disc(), r)
}

pub fn bound_report(field: &FieldSpec, r: u32, gamma_value: f64) -> Result<BoundReport> {
    let grh = grh_main_term(field, r)?;
    let scale = uncond_scale(field, r)?;
    Ok(BoundReport {
        r,
        field_label: field.label.clone(),
        gamma_value,
        grh_main_term: grh,
        uncond_scale: scale,
        ratio: libm::fabs(gamma_value) / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::E;

    #[test]
    fn synthetic_iterated_logs() {
        let v = grh_main_term_from_log(libm::exp(E), 1).unwrap();
        assert!((v + 2.0 * (E + 2.0) * (E + 2.0)).abs() < 1e-12);
        assert!((v + 44.5).abs() < 0.05);
    }

    #[test]
    fn gaussian_scale() {
        let k = FieldSpec::quadratic(-1).unwrap();
        let s = uncond_scale(&k, 1).unwrap();
        assert!((s - libm::pow(4.0 * libm::log(4.0), 3.0)).abs() < 1e-12);
        assert!((s - 170.4).abs() < 0.2);
    }

    #[test]
    fn small_discriminants_rejected() {
        assert!(uncond_scale(&FieldSpec::rational(), 1).is_err());
        assert!(grh_main_term(&FieldSpec::rational(), 1).is_err());
        let k = FieldSpec::quadratic(-3).unwrap();
        assert!(grh_main_term(&k, 1).is_ok());
        assert!(grh_main_term(&k, 0).is_err());
    }

    #[test]
    fn parity_of_main_term() {
        let k = FieldSpec::quadratic(-5).unwrap();
        assert!(grh_main_term(&k, 1).unwrap() < 0.0);
        assert!(grh_main_term(&k, 2).unwrap() > 0.0);
    }
}
