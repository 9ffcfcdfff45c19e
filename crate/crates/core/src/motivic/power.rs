//! Power structure `(A(T), M) -> A(T)^M` on series with constant term 1.
//!
//! Every such series factors uniquely as `prod_{k >= 1} (1 - T^k)^(-b_k)`.
//! Exponents are monomial-linear: `(1 - T^k)^(-sum c_w w) = prod_w
//! (1 - w T^k)^(-c_w)`, and `A^M` multiplies every `b_k` by `M`. Monomials
//! are treated as classes of even weight, i.e. no sign twist is applied.

use num_bigint::BigInt;

use super::{MotivicError, MotivicSeries};
use crate::ring::{Coefficient, LaurentPoly, TruncatedSeries};

/// `(1 - T^k)^(-b)` for a Laurent polynomial `b`.
pub fn exponent_factor(k: usize, b: &LaurentPoly, order: usize) -> MotivicSeries {
    let one = LaurentPoly::one(b.alphabet());
    let mut out = TruncatedSeries::one(&one, order);
    if k > order {
        return out;
    }
    for (exps, c) in b.terms() {
        let w = LaurentPoly::monomial(b.alphabet(), exps.clone(), 1)
            .expect("exponents come from the same alphabet");
        let factor = TruncatedSeries::one_minus_pow(&w, k, c, order);
        out = out.checked_mul(&factor).expect("same alphabet and order");
    }
    out
}

fn check_unit_constant(a: &MotivicSeries) -> Result<(), MotivicError> {
    let c0 = a.coeff(0);
    if *c0 != c0.one_like() {
        return Err(MotivicError::ConstantTermNotOne);
    }
    Ok(())
}

/// Exponents `[b_1, ..., b_order]` with `a = prod_k (1 - T^k)^(-b_k)`.
pub fn power_structure_decompose(a: &MotivicSeries) -> Result<Vec<LaurentPoly>, MotivicError> {
    check_unit_constant(a)?;
    let order = a.order();
    let mut rest = a.clone();
    let mut bs = Vec::with_capacity(order);
    for k in 1..=order {
        // (1 - T^k)^(-b) = 1 + b T^k + O(T^(k+1)), so b_k is read off directly
        let b = rest.coeff(k).clone();
        if !b.is_zero() {
            let inverse = exponent_factor(k, &b.scale(&BigInt::from(-1)), order);
            rest = rest.checked_mul(&inverse)?;
        }
        bs.push(b);
    }
    debug_assert!(rest.is_one());
    Ok(bs)
}

/// Inverse of [`power_structure_decompose`].
pub fn power_structure_recompose(
    bs: &[LaurentPoly],
    proto: &LaurentPoly,
    order: usize,
) -> Result<MotivicSeries, MotivicError> {
    let mut out = TruncatedSeries::one(proto, order);
    for (i, b) in bs.iter().enumerate() {
        if b.alphabet() != proto.alphabet() {
            return Err(MotivicError::ExponentAlphabet {
                exponent: b.alphabet().names().to_vec(),
                series: proto.alphabet().names().to_vec(),
            });
        }
        if !b.is_zero() {
            out = out.checked_mul(&exponent_factor(i + 1, b, order))?;
        }
    }
    Ok(out)
}

/// `a^m` in the power structure.
pub fn power_structure_pow(a: &MotivicSeries, m: &LaurentPoly) -> Result<MotivicSeries, MotivicError> {
    let proto = a.coeff(0);
    if m.alphabet() != proto.alphabet() {
        return Err(MotivicError::ExponentAlphabet {
            exponent: m.alphabet().names().to_vec(),
            series: proto.alphabet().names().to_vec(),
        });
    }
    let scaled: Vec<LaurentPoly> = power_structure_decompose(a)?
        .iter()
        .map(|b| b.checked_mul(m))
        .collect::<Result<_, _>>()?;
    power_structure_recompose(&scaled, proto, a.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Alphabet;
    use proptest::prelude::*;

    fn l_alph() -> Alphabet {
        Alphabet::lefschetz()
    }

    fn l(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(&l_alph(), vec![k], 1).unwrap()
    }

    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::constant(&l_alph(), v)
    }

    fn series(coeffs: Vec<LaurentPoly>, order: usize) -> MotivicSeries {
        TruncatedSeries::new(coeffs, order).unwrap()
    }

    #[test]
    fn geometric_series_decomposes_to_single_exponent() {
        let order = 6;
        let geo = series(vec![c(1); order + 1], order);
        let bs = power_structure_decompose(&geo).unwrap();
        assert_eq!(bs[0], c(1));
        assert!(bs[1..].iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn one_plus_t_exponents() {
        // 1 + T = (1 - T^2) / (1 - T)
        let bs = power_structure_decompose(&series(vec![c(1), c(1)], 4)).unwrap();
        assert_eq!(bs, vec![c(1), c(-1), c(0), c(0)]);
    }

    #[test]
    fn pow_by_lefschetz_monomial() {
        // (1 - T)^(-L) = sum L^j T^j
        let order = 5;
        let geo = series(vec![c(1); order + 1], order);
        let p = power_structure_pow(&geo, &l(1)).unwrap();
        for j in 0..=order {
            assert_eq!(*p.coeff(j), l(j as i64));
        }
    }

    #[test]
    fn non_unit_constant_rejected() {
        let s = series(vec![c(2), c(1)], 3);
        assert_eq!(power_structure_decompose(&s), Err(MotivicError::ConstantTermNotOne));
        let wrong = LaurentPoly::one(&Alphabet::hodge());
        assert!(matches!(
            power_structure_pow(&series(vec![c(1)], 3), &wrong),
            Err(MotivicError::ExponentAlphabet { .. })
        ));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i64..4, -4i64..5), 0..4).prop_map(|terms| {
            LaurentPoly::from_terms(&l_alph(), terms.into_iter().map(|(e, c)| (vec![e], BigInt::from(c))))
                .unwrap()
        })
    }

    fn arb_series(order: usize) -> impl Strategy<Value = MotivicSeries> {
        prop::collection::vec(arb_poly(), order).prop_map(move |mut tail| {
            tail.insert(0, c(1));
            series(tail, order)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn decompose_recompose_round_trip(a in arb_series(5)) {
            let bs = power_structure_decompose(&a).unwrap();
            prop_assert_eq!(power_structure_recompose(&bs, &c(1), 5).unwrap(), a);
        }

        #[test]
        fn power_structure_axioms(a in arb_series(5), b in arb_series(5), m in arb_poly(), m2 in arb_poly()) {
            // A^0 = 1, A^1 = A
            prop_assert!(power_structure_pow(&a, &c(0)).unwrap().is_one());
            prop_assert_eq!(power_structure_pow(&a, &c(1)).unwrap(), a.clone());
            // (AB)^M = A^M B^M
            let ab = a.checked_mul(&b).unwrap();
            prop_assert_eq!(
                power_structure_pow(&ab, &m).unwrap(),
                power_structure_pow(&a, &m).unwrap().checked_mul(&power_structure_pow(&b, &m).unwrap()).unwrap()
            );
            // A^(M + N) = A^M A^N
            let sum = m.checked_add(&m2).unwrap();
            prop_assert_eq!(
                power_structure_pow(&a, &sum).unwrap(),
                power_structure_pow(&a, &m).unwrap().checked_mul(&power_structure_pow(&a, &m2).unwrap()).unwrap()
            );
            // (A^M)^N = A^(MN)
            let prod = m.checked_mul(&m2).unwrap();
            prop_assert_eq!(
                power_structure_pow(&power_structure_pow(&a, &m).unwrap(), &m2).unwrap(),
                power_structure_pow(&a, &prod).unwrap()
            );
        }

        #[test]
        fn lefschetz_twist_is_substitution(m in arb_poly()) {
            // (1 - T)^(-L M) = ((1 - T)^(-M))(T -> L T)
            let geo = series(vec![c(1); 6], 5);
            let lm = l(1).checked_mul(&m).unwrap();
            let lhs = power_structure_pow(&geo, &lm).unwrap();
            let rhs = power_structure_pow(&geo, &m).unwrap().substitute(&l(1), 1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integer_exponent_matches_series_power(a in arb_series(5), k in 0u64..4) {
            prop_assert_eq!(power_structure_pow(&a, &c(k as i64)).unwrap(), a.pow(k));
        }
    }
}
