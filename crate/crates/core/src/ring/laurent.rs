use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Coefficient, RingError};

/// Signed exponent per alphabet variable.
pub type Exponents = Vec<i64>;

/// Ordered list of variable names shared by every polynomial of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Alphabet(names.into_iter().map(Into::into).collect())
    }

    /// `{L}`: the Lefschetz class ring Z[L, L^-1].
    pub fn lefschetz() -> Self {
        Self::new(["L"])
    }

    /// `{u, v}`: the E-polynomial (Hodge-Deligne) realization ring.
    pub fn hodge() -> Self {
        Self::new(["u", "v"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exact Laurent polynomial with integer coefficients over a fixed alphabet.
///
/// Terms with zero coefficient are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Exponents, BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Exact `a op b`; fails when the alphabets differ.
pub fn poly_arith(a: &LaurentPoly, b: &LaurentPoly, op: PolyOp) -> Result<LaurentPoly, RingError> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_sub(b),
        PolyOp::Mul => a.checked_mul(b),
    }
}

impl LaurentPoly {
    pub fn zero(alphabet: &Alphabet) -> Self {
        LaurentPoly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        Self::constant(alphabet, BigInt::one())
    }

    pub fn constant(alphabet: &Alphabet, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(alphabet);
        p.insert(vec![0; alphabet.len()], c.into());
        p
    }

    /// `c * x_1^e_1 * ... * x_k^e_k`.
    pub fn monomial(
        alphabet: &Alphabet,
        exponents: Exponents,
        c: impl Into<BigInt>,
    ) -> Result<Self, RingError> {
        if exponents.len() != alphabet.len() {
            return Err(RingError::ExponentLength {
                expected: alphabet.len(),
                got: exponents.len(),
            });
        }
        let mut p = Self::zero(alphabet);
        p.insert(exponents, c.into());
        Ok(p)
    }

    /// The variable `name` raised to `power`.
    pub fn var_pow(alphabet: &Alphabet, name: &str, power: i64) -> Result<Self, RingError> {
        let idx = alphabet
            .index_of(name)
            .ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; alphabet.len()];
        e[idx] = power;
        Self::monomial(alphabet, e, 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(alphabet: &Alphabet, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut p = Self::zero(alphabet);
        for (e, c) in terms {
            if e.len() != alphabet.len() {
                return Err(RingError::ExponentLength {
                    expected: alphabet.len(),
                    got: e.len(),
                });
            }
            p.insert(e, c);
        }
        Ok(p)
    }

    fn insert(&mut self, e: Exponents, c: BigInt) {
        self.add_term(&e, &c);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[i64]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// `Some((exponents, coefficient))` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&Exponents, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn ensure_same_alphabet(&self, other: &Self) -> Result<(), RingError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(RingError::AlphabetMismatch {
                left: self.alphabet.names().to_vec(),
                right: other.alphabet.names().to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.ensure_same_alphabet(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.ensure_same_alphabet(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.ensure_same_alphabet(other)?;
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !Zero::is_zero(c));
        Ok(LaurentPoly {
            alphabet: self.alphabet.clone(),
            terms: acc,
        })
    }

    fn add_term(&mut self, e: &Exponents, c: &BigInt) {
        match self.terms.get_mut(e) {
            Some(slot) => {
                *slot += c;
                if Zero::is_zero(slot) {
                    self.terms.remove(e);
                }
            }
            None => {
                if !Zero::is_zero(c) {
                    self.terms.insert(e.clone(), c.clone());
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if Zero::is_zero(k) {
            return Self::zero(&self.alphabet);
        }
        LaurentPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.alphabet.len(), "shift length");
        LaurentPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.alphabet);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sum of all coefficients, i.e. evaluation at every variable = 1.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Ring map induced by sending each monomial `x^e` to `y^{f(e)}` in `target`.
    pub fn map_monomials<F>(&self, target: &Alphabet, f: F) -> Self
    where
        F: Fn(&[i64]) -> Exponents,
    {
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let image = f(e);
            assert_eq!(image.len(), target.len(), "monomial map produced wrong arity");
            out.add_term(&image, c);
        }
        out
    }

    /// Componentwise minimum exponent over all terms (all zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut m = vec![0; self.alphabet.len()];
        for (i, slot) in m.iter_mut().enumerate() {
            *slot = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
        }
        m
    }

    /// True when no variable appears with a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }
}

impl Coefficient for LaurentPoly {
    fn zero_like(&self) -> Self {
        Self::zero(&self.alphabet)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.alphabet)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
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
        self.scale(k)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        if !c.abs().is_one() {
            return None;
        }
        let inv: Exponents = e.iter().map(|x| -x).collect();
        LaurentPoly::monomial(&self.alphabet, inv, c.clone()).ok()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
    }
}

// Operator impls panic on alphabet mismatch; use the `checked_*` methods to
// recover from that case.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly + LaurentPoly")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly - LaurentPoly")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly * LaurentPoly")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in decreasing lexicographic exponent order, e.g. `L^4 + L^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .zip(self.alphabet.names())
                .filter(|(p, _)| **p != 0)
                .map(|(p, name)| {
                    if *p == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(k: i64) -> LaurentPoly {
        LaurentPoly::var_pow(&Alphabet::lefschetz(), "L", k).unwrap()
    }

    #[test]
    fn monomial_product() {
        assert_eq!(poly_arith(&l(1), &l(1), PolyOp::Mul).unwrap(), l(2));
    }

    #[test]
    fn subtraction_cancels() {
        let a = &l(2) + &l(3);
        assert_eq!(poly_arith(&a, &l(3), PolyOp::Sub).unwrap(), l(2));
        assert_eq!((&a - &a).num_terms(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let h = Alphabet::hodge();
        let u = LaurentPoly::var_pow(&h, "u", 1).unwrap();
        let v = LaurentPoly::var_pow(&h, "v", 1).unwrap();
        let got = poly_arith(&(&u + &v), &(&u - &v), PolyOp::Mul).unwrap();
        let want = &u.pow(2) - &v.pow(2);
        assert_eq!(got, want);
        assert_eq!(got.num_terms(), 2);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let u = LaurentPoly::var_pow(&Alphabet::hodge(), "u", 1).unwrap();
        assert!(matches!(
            poly_arith(&l(1), &u, PolyOp::Add),
            Err(RingError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn laurent_unit_inverse() {
        let inv = l(3).unit_inverse().unwrap();
        assert_eq!(&inv * &l(3), LaurentPoly::one(&Alphabet::lefschetz()));
        assert!((&l(1) + &l(0)).unit_inverse().is_none());
        assert!(l(1).scale(&BigInt::from(2)).unit_inverse().is_none());
    }

    #[test]
    fn display_orders_terms() {
        assert_eq!((&l(3) + &l(4)).to_string(), "L^4 + L^3");
        assert_eq!((&l(-1) - &l(0).scale(&BigInt::from(5))).to_string(), "-5 + L^-1");
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let a = Alphabet::lefschetz();
        let p = LaurentPoly::from_terms(
            &a,
            vec![
                (vec![1], BigInt::from(2)),
                (vec![1], BigInt::from(-2)),
                (vec![0], BigInt::from(3)),
            ],
        )
        .unwrap();
        assert_eq!(p, LaurentPoly::constant(&a, 3));
    }
}
