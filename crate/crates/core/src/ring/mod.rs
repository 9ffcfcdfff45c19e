//! Exact arithmetic kernels: Laurent polynomials with big-integer
//! coefficients and truncated power series over a generic coefficient ring.

mod laurent;
mod series;

pub use laurent::{poly_arith, Alphabet, Exponents, LaurentPoly, PolyOp};
pub use series::{series_arith, SeriesOp, TruncatedSeries};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use thiserror::Error;

/// Default truncation order for generating-series computations.
pub const DEFAULT_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent vector has length {got}, alphabet has {expected} variables")]
    ExponentLength { expected: usize, got: usize },
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("constant term is not a unit")]
    NonUnitConstant,
    #[error("a series needs at least one coefficient")]
    EmptySeries,
    #[error("substitution power must be at least 1")]
    ZeroPower,
}

/// Commutative ring element usable as a power-series coefficient.
///
/// Elements carry whatever context they need (e.g. a variable alphabet), so
/// `zero_like`/`one_like` build neutral elements in the same ring as `self`.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, k: &BigInt) -> Self;
    /// Multiplicative inverse when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;
    /// True when `self` lives in the same ring as `other` (same alphabet, ...).
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
}

impl Coefficient for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, k: &BigInt) -> Self {
        self * k
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}
