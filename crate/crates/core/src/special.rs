//! Zeta values, polygamma values at 1 and 1/2, the archimedean term
//! `Γ̃_K^{(r)}(1)` and the elementary main term `f(r, x)` of the smoothed
//! prime-ideal sum.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::field::FieldSpec;
use crate::{Error, Result, R_MAX};

/// Euler's constant γ.
///
/// Oracle: `H_n − log n − 1/(2n) + Σ_k B_{2k}/(2k n^{2k})` at `n = 10^4`
/// with six Bernoulli corrections, evaluated in 50-digit arithmetic;
/// see `tests/oracles.rs` for the double-precision replay.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// `B_2, B_4, ..., B_20`.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn sign(r: u32) -> f64 {
    if r.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Hurwitz zeta `Σ_{k≥0} (k + a)^{−s}` for real `s > 1`, `a > 0`: a direct
/// sum of the first terms and an Euler-Maclaurin tail.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    const HEAD: u32 = 24;
    let n = HEAD as f64 + a;
    // tail Σ_{k≥N} (k + a)^{-s}
    let mut tail = libm::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * libm::pow(n, -s);
    let mut rising = s; // s (s+1) ... (s+2j-2)
    let mut fact = 2.0; // (2j)!
    let mut npow = libm::pow(n, -s - 1.0);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / fact * rising * npow;
        tail += term;
        if libm::fabs(term) < 1e-18 * tail {
            break;
        }
        let j = j as f64 + 1.0;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        npow /= n * n;
    }
    let head: f64 = (0..HEAD).rev().map(|k| libm::pow(k as f64 + a, -s)).sum();
    head + tail
}

/// `ζ(m)` for integers `m ≥ 2`.
pub fn zeta_value(m: u32) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain("zeta_value needs m >= 2"));
    }
    Ok(hurwitz_zeta(m as f64, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Point {
    One,
    Half,
}

/// `ψ^{(r)}` at `s = 1` or `s = 1/2`, from the zeta identities
/// `ψ^{(r)}(1) = (−1)^{r+1} r! ζ(r+1)` and
/// `ψ^{(r)}(1/2) = (−1)^{r+1} r! (2^{r+1} − 1) ζ(r+1)`.
pub fn polygamma_at(point: Point, r: u32) -> Result<f64> {
    if r > R_MAX {
        return Err(Error::OrderTooLarge { r, max: R_MAX });
    }
    if r == 0 {
        return Ok(match point {
            Point::One => -EULER_GAMMA,
            Point::Half => -EULER_GAMMA - 2.0 * core::f64::consts::LN_2,
        });
    }
    let base = sign(r + 1) * factorial(r) * zeta_value(r + 1)?;
    Ok(match point {
        Point::One => base,
        Point::Half => base * (libm::ldexp(1.0, r as i32 + 1) - 1.0),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaTildeValue {
    pub r: u32,
    pub value: f64,
    pub field_label: String,
}

/// `Γ̃_K^{(r)}(1) = (−1)^{r+1} r! [r₁ Σ_{k≥0} (1+2k)^{−(r+1)} + r₂ Σ_{k≥0} (1+k)^{−(r+1)}]`
/// for `r ≥ 1`, and `0` for `r = 0`.
pub fn gamma_tilde_deriv(field: &FieldSpec, r: u32) -> Result<GammaTildeValue> {
    if r > R_MAX {
        return Err(Error::OrderTooLarge { r, max: R_MAX });
    }
    let value = if r == 0 {
        0.0
    } else {
        let s = (r + 1) as f64;
        // Σ (1+2k)^{-s} = 2^{-s} ζ(s, 1/2)
        let odd = libm::pow(2.0, -s) * hurwitz_zeta(s, 0.5);
        let all = hurwitz_zeta(s, 1.0);
        sign(r + 1) * factorial(r) * (field.r1 as f64 * odd + field.r2 as f64 * all)
    };
    Ok(GammaTildeValue { r, value, field_label: field.label.clone() })
}

/// The archimedean constant `β_K = −{(r₁/2)(γ + log 4π) + r₂(γ + log 2π)}`.
/// Reported alongside other per-field data; no route consumes it.
pub fn beta_k(field: &FieldSpec) -> f64 {
    let pi = core::f64::consts::PI;
    -(field.r1 as f64 / 2.0 * (EULER_GAMMA + libm::log(4.0 * pi))
        + field.r2 as f64 * (EULER_GAMMA + libm::log(2.0 * pi)))
}

/// `f(r, x)` for `r = 0..=r_max` at one `x > 1`:
///
/// ```text
/// f(0, x) = log x
/// f(1, x) = 2 + ((1+x)/(1−x)) log x + (log x)²/2
/// f(r, x) = (log x)^{r+1}/(r+1) + ((1+x)/(1−x)) (log x)^r + r(r−1) f(r−2, x)
/// ```
pub fn f_orders(x: f64, r_max: u32) -> Result<Vec<f64>> {
    if !(x > 1.0) {
        return Err(Error::Domain("f(r, x) needs x > 1"));
    }
    if r_max > R_MAX {
        return Err(Error::OrderTooLarge { r: r_max, max: R_MAX });
    }
    let l = libm::log(x);
    let q = (1.0 + x) / (1.0 - x);
    let mut out: Vec<f64> = Vec::with_capacity(r_max as usize + 1);
    for r in 0..=r_max {
        let v = match r {
            0 => l,
            1 => 2.0 + q * l + 0.5 * l * l,
            _ => {
                let rf = r as f64;
                libm::pow(l, rf + 1.0) / (rf + 1.0)
                    + q * libm::pow(l, rf)
                    + rf * (rf - 1.0) * out[r as usize - 2]
            }
        };
        out.push(v);
    }
    Ok(out)
}

pub fn f_recursive(r: u32, x: f64) -> Result<f64> {
    Ok(f_orders(x, r)?[r as usize])
}

/// Per-owner memo for `f(r, x)` keyed by `(r, x.to_bits())`.
#[derive(Debug, Clone, Default)]
pub struct FMemo {
    table: BTreeMap<(u32, u64), f64>,
}

impl FMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, r: u32, x: f64) -> Result<f64> {
        if let Some(&v) = self.table.get(&(r, x.to_bits())) {
            return Ok(v);
        }
        let all = f_orders(x, r)?;
        for (order, v) in all.iter().enumerate() {
            self.table.insert((order as u32, x.to_bits()), *v);
        }
        Ok(all[r as usize])
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, PI};

    #[test]
    fn zeta_values() {
        assert!((zeta_value(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_value(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta_value(3).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-15);
        assert!((zeta_value(11).unwrap() - 1.000_494_188_604_119_5).abs() < 1e-15);
        assert!(zeta_value(1).is_err());
    }

    #[test]
    fn polygamma_examples() {
        assert!((polygamma_at(Point::One, 1).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((polygamma_at(Point::One, 0).unwrap() + 0.5772157).abs() < 1e-7);
        assert!((polygamma_at(Point::Half, 1).unwrap() - PI * PI / 2.0).abs() < 1e-14);
        // ψ''(1) = −2ζ(3)
        assert!((polygamma_at(Point::One, 2).unwrap() + 2.0 * 1.202_056_903_159_594_3).abs() < 1e-14);
        assert!(polygamma_at(Point::One, R_MAX + 1).is_err());
    }

    #[test]
    fn gamma_tilde_examples() {
        let q = FieldSpec::rational();
        assert!((gamma_tilde_deriv(&q, 1).unwrap().value - PI * PI / 8.0).abs() < 1e-14);
        let gauss = FieldSpec::quadratic(-1).unwrap();
        assert!((gamma_tilde_deriv(&gauss, 1).unwrap().value - PI * PI / 6.0).abs() < 1e-14);
        for k in [q, gauss, FieldSpec::cyclotomic(5).unwrap()] {
            assert_eq!(gamma_tilde_deriv(&k, 0).unwrap().value, 0.0);
        }
    }

    #[test]
    fn gamma_tilde_matches_polygamma_combination() {
        let fields = [
            FieldSpec::rational(),
            FieldSpec::quadratic(-1).unwrap(),
            FieldSpec::quadratic(5).unwrap(),
            FieldSpec::cyclotomic(5).unwrap(),
        ];
        for k in &fields {
            for r in 1..=8 {
                let closed = gamma_tilde_deriv(k, r).unwrap().value;
                let combo = k.r1 as f64 / 2f64.powi(r as i32 + 1) * polygamma_at(Point::Half, r).unwrap()
                    + k.r2 as f64 * polygamma_at(Point::One, r).unwrap();
                assert!((closed - combo).abs() <= 1e-12 * closed.abs().max(1.0), "{} r={r}", k.label);
            }
        }
    }

    #[test]
    fn f_examples() {
        assert!((f_recursive(0, E).unwrap() - 1.0).abs() < 1e-15);
        let q = (1.0 + E) / (1.0 - E);
        assert!((f_recursive(1, E).unwrap() - (2.5 + q)).abs() < 1e-15);
        assert!((f_recursive(1, E).unwrap() - 0.33602).abs() < 1e-4);
        assert!((f_recursive(2, E).unwrap() - (7.0 / 3.0 + q)).abs() < 1e-14);
        assert!((f_recursive(2, E).unwrap() - 0.16935).abs() < 1e-4);
        assert!(f_recursive(0, 1.0).is_err());
        assert!(f_recursive(2, 0.5).is_err());
    }

    #[test]
    fn memo_reuses_entries() {
        let mut memo = FMemo::new();
        let a = memo.get(5, 123.0).unwrap();
        assert_eq!(memo.len(), 6);
        assert_eq!(memo.get(5, 123.0).unwrap(), a);
        assert_eq!(memo.get(3, 123.0).unwrap(), f_recursive(3, 123.0).unwrap());
        assert_eq!(memo.len(), 6);
    }
}
