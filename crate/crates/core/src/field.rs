//! Analytic description of number fields and the splitting of rational
//! primes in them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::{Error, Result};

/// One shape of prime ideal above `p`: ramification index `e`, residue
/// degree `f`, and the number `g` of prime ideals with that shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

impl Factor {
    pub const fn new(e: u32, f: u32, g: u32) -> Self {
        Factor { e, f, g }
    }

    pub fn degree(&self) -> u64 {
        self.e as u64 * self.f as u64 * self.g as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSplitting {
    pub p: u64,
    pub factors: Vec<Factor>,
}

impl LocalSplitting {
    /// `Σ e·f·g` over all factors; equals the field degree.
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(Factor::degree).sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.factors.iter().all(|fac| fac.e == 1)
    }
}

/// Splitting data for a custom field, keyed by rational prime.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SplittingTable {
    pub entries: BTreeMap<u64, LocalSplitting>,
    /// Shape used for primes not present in `entries`.
    pub default_rule: Option<Vec<Factor>>,
}

impl SplittingTable {
    /// Checks every entry (and the default rule) against the declared degree.
    pub fn validate(&self, degree: u32) -> Result<()> {
        for split in self.entries.values() {
            let sum = split.degree();
            if sum != degree as u64 {
                return Err(Error::InvalidSplitting { p: split.p, sum, degree });
            }
        }
        if let Some(rule) = &self.default_rule {
            let sum: u64 = rule.iter().map(Factor::degree).sum();
            if sum != degree as u64 {
                return Err(Error::InvalidSplitting { p: 0, sum, degree });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldKind {
    Rational,
    /// Quadratic field of fundamental discriminant `D`.
    Quadratic { disc: i64 },
    /// Cyclotomic field `Q(ζ_m)`, canonical conductor `m`.
    Cyclotomic { conductor: u64 },
    Custom { table: Arc<SplittingTable> },
}

/// A number field described by its degree, signature, discriminant and a
/// rule for splitting rational primes.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    pub disc: i128,
    pub label: String,
    // φ(m) factorization for cyclotomic order computations.
    order_data: Option<(u64, Vec<(u64, u32)>)>,
}

impl FieldSpec {
    pub fn rational() -> Self {
        FieldSpec {
            kind: FieldKind::Rational,
            degree: 1,
            r1: 1,
            r2: 0,
            disc: 1,
            label: String::from("Q"),
            order_data: None,
        }
    }

    /// `Q(√d)` from a squarefree radicand `d ∉ {0, 1}`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidQuadratic(d));
        }
        if !arith::is_squarefree(d.unsigned_abs()) {
            return Err(Error::NotSquarefree(d));
        }
        let disc = if d.rem_euclid(4) == 1 {
            d
        } else {
            d.checked_mul(4).ok_or(Error::Overflow("quadratic discriminant"))?
        };
        Ok(Self::from_fundamental(disc, format!("Q(sqrt({d}))")))
    }

    /// Quadratic field from its fundamental discriminant `D` directly.
    pub fn quadratic_from_discriminant(disc: i64) -> Result<Self> {
        if !arith::is_fundamental_discriminant(disc) {
            return Err(Error::InvalidQuadratic(disc));
        }
        let d = if disc % 4 == 0 { disc / 4 } else { disc };
        Ok(Self::from_fundamental(disc, format!("Q(sqrt({d}))")))
    }

    fn from_fundamental(disc: i64, label: String) -> Self {
        let (r1, r2) = if disc > 0 { (2, 0) } else { (0, 1) };
        FieldSpec {
            kind: FieldKind::Quadratic { disc },
            degree: 2,
            r1,
            r2,
            disc: disc as i128,
            label,
            order_data: None,
        }
    }

    /// `Q(ζ_m)` for a canonical conductor `m ≥ 3`, `m ≢ 2 (mod 4)`.
    pub fn cyclotomic(m: u64) -> Result<Self> {
        if m < 3 || m % 4 == 2 {
            return Err(Error::NonCanonicalConductor(m));
        }
        let phi = arith::totient(m);
        let degree = u32::try_from(phi).map_err(|_| Error::Overflow("cyclotomic degree"))?;
        // |d| = m^φ / Π_{p|m} p^{φ/(p-1)} = Π_{p^a || m} p^{φ·a − φ/(p−1)}
        let mut abs: i128 = 1;
        for (p, a) in arith::factorize(m) {
            let exp = phi * a as u64 - phi / (p - 1);
            for _ in 0..exp {
                abs = abs
                    .checked_mul(p as i128)
                    .ok_or(Error::Overflow("cyclotomic discriminant"))?;
            }
        }
        let sign = if (phi / 2).is_multiple_of(2) { 1 } else { -1 };
        Ok(FieldSpec {
            kind: FieldKind::Cyclotomic { conductor: m },
            degree,
            r1: 0,
            r2: degree / 2,
            disc: sign * abs,
            label: format!("Q(zeta_{m})"),
            order_data: Some((phi, arith::factorize(phi))),
        })
    }

    /// A field whose splitting comes from a user table; the signature and
    /// discriminant cannot be inferred and must be declared.
    pub fn custom(r1: u32, r2: u32, disc: i128, table: SplittingTable, label: String) -> Result<Self> {
        let degree = r1 + 2 * r2;
        if degree == 0 {
            return Err(Error::Domain("custom field needs r1 + 2*r2 >= 1"));
        }
        if disc == 0 {
            return Err(Error::Domain("custom field discriminant must be nonzero"));
        }
        table.validate(degree)?;
        Ok(FieldSpec {
            kind: FieldKind::Custom { table: Arc::new(table) },
            degree,
            r1,
            r2,
            disc,
            label,
            order_data: None,
        })
    }

    pub fn log_abs_disc(&self) -> f64 {
        libm::log(self.disc.unsigned_abs() as f64)
    }

    /// Splitting of the rational prime `p`. Checks primality.
    pub fn split_prime(&self, p: u64) -> Result<LocalSplitting> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        self.split_prime_unchecked(p)
    }

    /// As [`split_prime`](Self::split_prime) but trusts that `p` is prime.
    /// Used by the sieves, which only ever pass primes.
    pub fn split_prime_unchecked(&self, p: u64) -> Result<LocalSplitting> {
        let factors = match &self.kind {
            FieldKind::Rational => vec![Factor::new(1, 1, 1)],
            FieldKind::Quadratic { disc } => match arith::kronecker(*disc, p) {
                1 => vec![Factor::new(1, 1, 2)],
                -1 => vec![Factor::new(1, 2, 1)],
                _ => vec![Factor::new(2, 1, 1)],
            },
            FieldKind::Cyclotomic { conductor } => self.split_cyclotomic(*conductor, p),
            FieldKind::Custom { table } => match table.entries.get(&p) {
                Some(split) => split.factors.clone(),
                None => table
                    .default_rule
                    .clone()
                    .ok_or(Error::InsufficientSplitting(p))?,
            },
        };
        Ok(LocalSplitting { p, factors })
    }

    fn split_cyclotomic(&self, m: u64, p: u64) -> Vec<Factor> {
        let (phi, phi_factors) = self
            .order_data
            .as_ref()
            .expect("cyclotomic field carries order data");
        if !m.is_multiple_of(p) {
            let f = arith::mult_order_with(p, m, *phi, phi_factors);
            return vec![Factor::new(1, f as u32, (phi / f) as u32)];
        }
        let mut rest = m;
        let mut pa = 1u64;
        while rest.is_multiple_of(p) {
            rest /= p;
            pa *= p;
        }
        let e = pa / p * (p - 1);
        let phi_rest = arith::totient(rest);
        let f = if rest == 1 { 1 } else { arith::mult_order(p, rest) };
        vec![Factor::new(e as u32, f as u32, (phi_rest / f) as u32)]
    }
}
