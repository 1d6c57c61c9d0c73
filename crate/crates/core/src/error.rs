use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `d` is 0, 1 or not squarefree.
    NotSquarefree(i64),
    InvalidQuadratic(i64),
    /// Cyclotomic conductor outside `m ≥ 3, m ≢ 2 (mod 4)`.
    NonCanonicalConductor(u64),
    NotPrime(u64),
    /// A custom field has no data for this prime and no fallback rule.
    InsufficientSplitting(u64),
    InvalidSplitting { p: u64, sum: u64, degree: u32 },
    /// A value overflowed the representable range (index or discriminant).
    Overflow(&'static str),
    /// Argument outside the mathematical domain of the operation.
    Domain(&'static str),
    OutOfRange { x: f64, x_max: f64 },
    OrderTooLarge { r: u32, max: u32 },
    Unsupported(&'static str),
    TooFewCheckpoints { got: usize, need: usize },
    DegenerateFit,
    MissingInputs { order: u32 },
    InvalidZeroTable(String),
    WrongStreamKind,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquarefree(d) => {
                write!(f, "{d} is not squarefree; pass the squarefree part of the radicand")
            }
            Error::InvalidQuadratic(d) => write!(f, "{d} does not define a quadratic field"),
            Error::NonCanonicalConductor(m) => {
                if *m % 4 == 2 {
                    write!(f, "conductor {m} is not canonical; Q(zeta_{m}) = Q(zeta_{}), use that", m / 2)
                } else {
                    write!(f, "conductor {m} is not canonical; need m >= 3 and m != 2 (mod 4)")
                }
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::InsufficientSplitting(p) => {
                write!(f, "insufficient splitting data: prime {p} not in table and no default rule")
            }
            Error::InvalidSplitting { p, sum, degree } => write!(
                f,
                "splitting of {p} has sum(e*f*g) = {sum}, expected field degree {degree}"
            ),
            Error::Overflow(what) => write!(f, "overflow: {what}"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::OutOfRange { x, x_max } => {
                write!(f, "x = {x} outside the computed range [.., {x_max}]")
            }
            Error::OrderTooLarge { r, max } => write!(f, "order r = {r} exceeds the limit {max}"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::TooFewCheckpoints { got, need } => {
                write!(f, "need at least {need} checkpoints, got {got}")
            }
            Error::DegenerateFit => write!(f, "degenerate tail fit: checkpoints do not vary"),
            Error::MissingInputs { order } => {
                write!(f, "missing Euler-Kronecker input for order r = {order}")
            }
            Error::InvalidZeroTable(msg) => write!(f, "invalid zero table: {msg}"),
            Error::WrongStreamKind => write!(f, "coefficient stream has the wrong kind"),
        }
    }
}

impl core::error::Error for Error {}
