//! The rank-2 Picard lattice `Pic(X^[n]) = Z H~ + Z B` of a Picard-rank-1 K3
//! surface of degree `2d`, its Beauville-Bogomolov-Fujiki form, and the
//! isometric embedding into the Mukai lattice `H^0 + Pic(X) + H^4`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("half-degrees differ: {0} vs {1}")]
    DegreeMismatch(u64, u64),
    #[error("lattice parameters differ: {0:?} vs {1:?}")]
    ParamsMismatch(LatticeParams, LatticeParams),
    #[error("invalid lattice parameters d = {d}, n = {n}: need d >= 1 and n >= 2")]
    Invalid { d: u64, n: u64 },
}

/// `(d, n)`: `H^2 = 2d` on the K3 surface, `n` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeParams {
    pub d: u64,
    pub n: u64,
}

impl LatticeParams {
    pub fn new(d: u64, n: u64) -> Result<Self, LatticeError> {
        if d == 0 || n < 2 {
            return Err(LatticeError::Invalid { d, n });
        }
        Ok(LatticeParams { d, n })
    }

    fn two_d(&self) -> BigInt {
        BigInt::from(self.d) * 2
    }

    fn n_minus_one(&self) -> BigInt {
        BigInt::from(self.n) - 1
    }
}

/// `(r, c H, s)` in the Mukai lattice of a K3 surface with `H^2 = 2d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: BigInt,
    pub c: BigInt,
    pub s: BigInt,
    pub d: u64,
}

impl MukaiVector {
    pub fn new(r: impl Into<BigInt>, c: impl Into<BigInt>, s: impl Into<BigInt>, d: u64) -> Self {
        MukaiVector {
            r: r.into(),
            c: c.into(),
            s: s.into(),
            d,
        }
    }
}

/// Mukai pairing `(r, L, s).(r', L', s') = L.L' - r s' - s r'` with `H^2 = 2d`.
pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector) -> Result<BigInt, LatticeError> {
    if v.d != w.d {
        return Err(LatticeError::DegreeMismatch(v.d, w.d));
    }
    let h2 = BigInt::from(v.d) * 2;
    Ok(h2 * &v.c * &w.c - &v.r * &w.s - &v.s * &w.r)
}

/// `a H~ + b B` in `Pic(X^[n])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub a: BigInt,
    pub b: BigInt,
    pub params: LatticeParams,
}

impl DivisorClass {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, params: LatticeParams) -> Self {
        DivisorClass {
            a: a.into(),
            b: b.into(),
            params,
        }
    }

    /// `H~`, pull-back of the ample generator along the Hilbert-Chow morphism.
    pub fn h_tilde(params: LatticeParams) -> Self {
        Self::new(1, 0, params)
    }

    /// `B`, half the exceptional divisor.
    pub fn half_exceptional(params: LatticeParams) -> Self {
        Self::new(0, 1, params)
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// `a H~ + b B  ->  a (0, -H, 0) + b (-1, 0, 1 - n) = (-b, -a H, b (1 - n))`.
pub fn embed(divisor: &DivisorClass) -> MukaiVector {
    let p = divisor.params;
    let one_minus_n = -p.n_minus_one();
    MukaiVector {
        r: -divisor.b.clone(),
        c: -divisor.a.clone(),
        s: &divisor.b * one_minus_n,
        d: p.d,
    }
}

/// `q(a H~ + b B) = 2d a^2 - 2(n-1) b^2`.
pub fn bbf_q(divisor: &DivisorClass) -> BigInt {
    let p = divisor.params;
    p.two_d() * &divisor.a * &divisor.a - p.n_minus_one() * 2 * &divisor.b * &divisor.b
}

/// Bilinear form associated with [`bbf_q`]: `2d a a' - 2(n-1) b b'`.
pub fn bbf_pair(x: &DivisorClass, y: &DivisorClass) -> Result<BigInt, LatticeError> {
    let (px, py) = (x.params, y.params);
    if px != py {
        return Err(LatticeError::ParamsMismatch(px, py));
    }
    Ok(px.two_d() * &x.a * &y.a - px.n_minus_one() * 2 * &x.b * &y.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(d: u64, n: u64) -> LatticeParams {
        LatticeParams::new(d, n).unwrap()
    }

    #[test]
    fn mukai_examples() {
        let h = MukaiVector::new(0, -1, 0, 6);
        assert_eq!(mukai_pairing(&h, &h).unwrap(), BigInt::from(12));
        let b = MukaiVector::new(-1, 0, -7, 6);
        assert_eq!(mukai_pairing(&b, &b).unwrap(), BigInt::from(-14));
        let b5 = MukaiVector::new(-1, 0, 1 - 5, 6);
        assert_eq!(mukai_pairing(&h, &b5).unwrap(), BigInt::zero());
        let other = MukaiVector::new(0, 1, 0, 7);
        assert_eq!(
            mukai_pairing(&h, &other),
            Err(LatticeError::DegreeMismatch(6, 7))
        );
    }

    #[test]
    fn embedding_examples() {
        let p = params(6, 8);
        assert_eq!(embed(&DivisorClass::h_tilde(p)), MukaiVector::new(0, -1, 0, 6));
        assert_eq!(
            embed(&DivisorClass::half_exceptional(p)),
            MukaiVector::new(-1, 0, -7, 6)
        );
        assert_eq!(
            embed(&DivisorClass::new(7, -6, p)),
            MukaiVector::new(6, -7, 42, 6)
        );
    }

    #[test]
    fn bbf_examples() {
        let p = params(6, 8);
        assert_eq!(bbf_q(&DivisorClass::h_tilde(p)), BigInt::from(12));
        assert_eq!(bbf_q(&DivisorClass::half_exceptional(p)), BigInt::from(-14));
        assert_eq!(bbf_q(&DivisorClass::new(7, -6, p)), BigInt::from(84));
        let other = DivisorClass::h_tilde(params(6, 9));
        assert!(matches!(
            bbf_pair(&DivisorClass::h_tilde(p), &other),
            Err(LatticeError::ParamsMismatch(..))
        ));
    }

    #[test]
    fn invalid_params() {
        assert_eq!(LatticeParams::new(0, 3), Err(LatticeError::Invalid { d: 0, n: 3 }));
        assert_eq!(LatticeParams::new(2, 1), Err(LatticeError::Invalid { d: 2, n: 1 }));
    }

    proptest! {
        #[test]
        fn embedding_is_an_isometry(d in 1u64..100, n in 2u64..100, a in -1000i64..1000, b in -1000i64..1000,
                                    a2 in -1000i64..1000, b2 in -1000i64..1000) {
            let p = params(d, n);
            let x = DivisorClass::new(a, b, p);
            let y = DivisorClass::new(a2, b2, p);
            prop_assert_eq!(bbf_q(&x), mukai_pairing(&embed(&x), &embed(&x)).unwrap());
            prop_assert_eq!(bbf_pair(&x, &y).unwrap(), mukai_pairing(&embed(&x), &embed(&y)).unwrap());
            prop_assert_eq!(bbf_pair(&x, &y).unwrap(), bbf_pair(&y, &x).unwrap());
            prop_assert_eq!(bbf_pair(&x, &x).unwrap(), bbf_q(&x));
        }

        #[test]
        fn h_tilde_and_b_are_orthogonal(d in 1u64..1000, n in 2u64..1000) {
            let p = params(d, n);
            prop_assert!(bbf_pair(&DivisorClass::h_tilde(p), &DivisorClass::half_exceptional(p)).unwrap().is_zero());
        }
    }
}
