use std::fmt;

use num_bigint::BigInt;

use super::{Coefficient, RingError};

/// Power series in `T` truncated after `T^order`.
///
/// Always holds exactly `order + 1` coefficients; index `i` is the
/// coefficient of `T^i`. Nothing beyond `T^order` is ever computed.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries<R> {
    order: usize,
    coeffs: Vec<R>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Div,
}

pub fn series_arith<R: Coefficient>(
    a: &TruncatedSeries<R>,
    b: &TruncatedSeries<R>,
    op: SeriesOp,
) -> Result<TruncatedSeries<R>, RingError> {
    match op {
        SeriesOp::Add => a.checked_add(b),
        SeriesOp::Mul => a.checked_mul(b),
        SeriesOp::Div => a.checked_div(b),
    }
}

impl<R: Coefficient> TruncatedSeries<R> {
    /// Pads with zeros or drops coefficients so that exactly `order + 1` remain.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Result<Self, RingError> {
        let first = coeffs.first().ok_or(RingError::EmptySeries)?.clone();
        if coeffs.iter().any(|c| !c.compatible(&first)) {
            return Err(RingError::AlphabetMismatch {
                left: vec![format!("{first:?}")],
                right: vec!["incompatible coefficient".into()],
            });
        }
        coeffs.resize(order + 1, first.zero_like());
        Ok(TruncatedSeries { order, coeffs })
    }

    pub fn constant(c: R, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        TruncatedSeries { order, coeffs }
    }

    /// The series `1` in the ring of `proto`.
    pub fn one(proto: &R, order: usize) -> Self {
        Self::constant(proto.one_like(), order)
    }

    /// `c * T^k` (zero when `k > order`).
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::constant(c.zero_like(), order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Re-truncates (or zero-extends) to a different order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, self.coeffs[0].zero_like());
        TruncatedSeries { order, coeffs }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), RingError> {
        if self.order != other.order {
            return Err(RingError::OrderMismatch(self.order, other.order));
        }
        if !self.coeffs[0].compatible(&other.coeffs[0]) {
            return Err(RingError::AlphabetMismatch {
                left: vec![format!("{:?}", self.coeffs[0])],
                right: vec![format!("{:?}", other.coeffs[0])],
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, R::plus))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, R::minus))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(self.order + 1 - i).enumerate() {
                if !b.is_zero_elem() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        TruncatedSeries {
            order: self.order,
            coeffs: out,
        }
    }

    /// Multiplicative inverse; the constant term must be a unit of the
    /// coefficient ring.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let c0_inv = self.coeffs[0]
            .unit_inverse()
            .ok_or(RingError::NonUnitConstant)?;
        let zero = c0_inv.zero_like();
        let mut inv = vec![zero; self.order + 1];
        inv[0] = c0_inv.clone();
        for k in 1..=self.order {
            // sum_{i=1..k} a_i * inv_{k-i}
            let mut acc = c0_inv.zero_like();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero_elem() {
                    acc = acc.plus(&a.times(&inv[k - i]));
                }
            }
            inv[k] = acc.times(&c0_inv).negated();
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: inv,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    pub fn negated(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(R::negated).collect(),
        }
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.times(c)).collect(),
        }
    }

    /// Nonnegative integer power.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.coeffs[0], self.order);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `a(c * T^m)` truncated at the same order.
    pub fn substitute(&self, scale: &R, power: usize) -> Result<Self, RingError> {
        if power == 0 {
            return Err(RingError::ZeroPower);
        }
        if !scale.compatible(&self.coeffs[0]) {
            return Err(RingError::AlphabetMismatch {
                left: vec![format!("{:?}", self.coeffs[0])],
                right: vec![format!("{scale:?}")],
            });
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero.clone(); self.order + 1];
        let mut scale_pow = scale.one_like();
        for (i, a) in self.coeffs.iter().enumerate() {
            let target = i * power;
            if target > self.order {
                break;
            }
            out[target] = a.times(&scale_pow);
            scale_pow = scale_pow.times(scale);
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// `(1 - c*T^k)^(-e)` for any integer `e`, via the generalized binomial
    /// series `sum_j binom(e + j - 1, j) (c T^k)^j`.
    pub fn one_minus_pow(c: &R, k: usize, e: &BigInt, order: usize) -> Self {
        assert!(k >= 1, "one_minus_pow needs k >= 1");
        let mut out = Self::constant(c.one_like(), order);
        let mut binom = BigInt::from(1);
        let mut c_pow = c.one_like();
        let mut j: usize = 1;
        while j * k <= order {
            // binom(e+j-1, j) = binom(e+j-2, j-1) * (e+j-1) / j, exact
            binom = binom * (e + BigInt::from(j - 1)) / BigInt::from(j);
            c_pow = c_pow.times(c);
            if binom == BigInt::from(0) {
                break;
            }
            out.coeffs[j * k] = c_pow.scaled(&binom);
            j += 1;
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == self.coeffs[0].one_like() && self.coeffs[1..].iter().all(R::is_zero_elem)
    }

    /// Index of the first coefficient where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
            .or_else(|| (self.order != other.order).then_some(self.order.min(other.order) + 1))
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<R: Coefficient + fmt::Display> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_elem() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*T")?,
                _ => write!(f, "({c})*T^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(T^{})", self.order + 1)
    }
}

impl<R: fmt::Debug> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("order", &self.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}
