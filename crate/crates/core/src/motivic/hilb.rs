use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::partitions::partitions;
use super::{
    power_structure_pow, realize_series, HodgeProfile, MotivicError, MotivicSeries, Realization,
};
use crate::ring::{Alphabet, LaurentPoly, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HilbSource {
    AffineSpace,
    SurfaceFromEPolynomial,
    Symbolic,
}

/// `H_Z(T) = sum_n [Z^[n]] T^n` truncated at `T^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbSeries {
    pub series: MotivicSeries,
    /// Dimension of `Z` (not of `Z^[n]`).
    pub dim: u32,
    pub mode: Realization,
    pub source: HilbSource,
    /// Set when two independent constructions were compared and agreed.
    pub verified: bool,
}

impl HilbSeries {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        self.series.coeff(n)
    }

    /// Euler characteristics `chi(Z^[n])`, `n = 0..=order`.
    pub fn euler_specialization(&self) -> Vec<BigInt> {
        self.series.coeffs().iter().map(LaurentPoly::eval_at_ones).collect()
    }
}

fn route_check(left: &MotivicSeries, right: &MotivicSeries) -> Result<(), MotivicError> {
    match left.first_difference(right) {
        None => Ok(()),
        Some(index) => Err(MotivicError::RouteDisagreement {
            index,
            left: left.coeffs().get(index).map(|c| c.to_string()).unwrap_or_default(),
            right: right.coeffs().get(index).map(|c| c.to_string()).unwrap_or_default(),
        }),
    }
}

/// `[(A^2)^[n]] = sum_{lambda |- n} L^(n + len(lambda))`.
pub fn hilb_affine_plane_partition_sum(order: usize) -> MotivicSeries {
    let alph = Alphabet::lefschetz();
    let coeffs = (0..=order as u32)
        .map(|n| {
            LaurentPoly::from_terms(
                &alph,
                partitions(n)
                    .into_iter()
                    .map(|p| (vec![(n as usize + p.len()) as i64], BigInt::from(1))),
            )
            .expect("single-variable exponents")
        })
        .collect();
    TruncatedSeries::new(coeffs, order).expect("nonempty")
}

/// `prod_{m >= 1} (1 - L^(m+1) T^m)^(-1)`.
pub fn hilb_affine_plane_product(order: usize) -> MotivicSeries {
    let mode = Realization::ClassRing;
    let one = BigInt::from(1);
    let mut out = TruncatedSeries::one(&mode.lefschetz_power(0), order);
    for m in 1..=order {
        let w = mode.lefschetz_power(m as i64 + 1);
        let factor = TruncatedSeries::one_minus_pow(&w, m, &one, order);
        out = out.checked_mul(&factor).expect("same alphabet and order");
    }
    out
}

/// `H_{A^2}(T)` in the class ring, with the partition sum and the product
/// formula compared.
pub fn hilb_affine_plane(order: usize) -> Result<HilbSeries, MotivicError> {
    let product = hilb_affine_plane_product(order);
    route_check(&product, &hilb_affine_plane_partition_sum(order))?;
    Ok(HilbSeries {
        series: product,
        dim: 2,
        mode: Realization::ClassRing,
        source: HilbSource::AffineSpace,
        verified: true,
    })
}

/// E-polynomial of `sum_n [Sym^n Z] T^n = prod_{p,q} (1 - u^p v^q T)^(-h^{p,q})`.
pub fn sym_series_even(h: &HodgeProfile, order: usize) -> Result<MotivicSeries, MotivicError> {
    if let Some((p, q)) = h.odd_cohomology() {
        return Err(MotivicError::OddCohomology { p, q });
    }
    let alph = Alphabet::hodge();
    let mut out = TruncatedSeries::one(&LaurentPoly::one(&alph), order);
    for ((p, q), hpq) in h.entries() {
        let w = LaurentPoly::monomial(&alph, vec![p as i64, q as i64], 1)?;
        let factor = TruncatedSeries::one_minus_pow(&w, 1, &BigInt::from(hpq), order);
        out = out.checked_mul(&factor)?;
    }
    Ok(out)
}

fn check_surface(h: &HodgeProfile) -> Result<(), MotivicError> {
    if h.dim() != 2 {
        return Err(MotivicError::NotASurface(h.dim()));
    }
    if let Some((p, q)) = h.odd_cohomology() {
        return Err(MotivicError::OddCohomology { p, q });
    }
    Ok(())
}

/// `H_{A^2}(T)^((uv)^-2 e(X))` in the E-polynomial realization.
pub fn hilb_surface_series_route_a(h: &HodgeProfile, order: usize) -> Result<MotivicSeries, MotivicError> {
    check_surface(h)?;
    let affine = realize_series(&hilb_affine_plane(order)?.series);
    let exponent = h.e_polynomial().shift(&[-2, -2]);
    power_structure_pow(&affine, &exponent)
}

/// `prod_{m=1..order} Z_X((uv)^(m-1) T^m)` with `Z_X` from [`sym_series_even`].
pub fn hilb_surface_series_route_b(h: &HodgeProfile, order: usize) -> Result<MotivicSeries, MotivicError> {
    check_surface(h)?;
    let sym = sym_series_even(h, order)?;
    let mode = Realization::EPolynomial;
    let mut out = TruncatedSeries::one(&mode.lefschetz_power(0), order);
    for m in 1..=order {
        let twisted = sym.substitute(&mode.lefschetz_power(m as i64 - 1), m)?;
        out = out.checked_mul(&twisted)?;
    }
    Ok(out)
}

/// E-polynomial generating series of `X^[n]` for a surface with even
/// cohomology, computed by both routes; a disagreement is an error.
pub fn hilb_surface_series(h: &HodgeProfile, order: usize) -> Result<HilbSeries, MotivicError> {
    let a = hilb_surface_series_route_a(h, order)?;
    let b = hilb_surface_series_route_b(h, order)?;
    route_check(&a, &b)?;
    Ok(HilbSeries {
        series: a,
        dim: 2,
        mode: Realization::EPolynomial,
        source: HilbSource::SurfaceFromEPolynomial,
        verified: true,
    })
}

/// Whether `H_X` and `H_Y` agree through `T^order`.
pub fn l_equivalence_transfer_check(
    hx: &HodgeProfile,
    hy: &HodgeProfile,
    order: usize,
) -> Result<bool, MotivicError> {
    Ok(transfer_divergence(hx, hy, order)?.is_none())
}

/// First power of `T` where `H_X` and `H_Y` differ, if any up to `T^order`.
pub fn transfer_divergence(
    hx: &HodgeProfile,
    hy: &HodgeProfile,
    order: usize,
) -> Result<Option<usize>, MotivicError> {
    let sx = hilb_surface_series(hx, order)?;
    let sy = hilb_surface_series(hy, order)?;
    Ok(sx.series.first_difference(&sy.series))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(k: i64) -> LaurentPoly {
        Realization::ClassRing.lefschetz_power(k)
    }

    fn big_vec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn affine_plane_low_coefficients() {
        let h = hilb_affine_plane(6).unwrap();
        assert!(h.verified);
        assert_eq!(*h.coeff(0), l(0));
        assert_eq!(*h.coeff(1), l(2));
        assert_eq!(*h.coeff(2), &l(4) + &l(3));
        // (A^2)^[3]: partitions 3, 21, 111 -> L^4 + L^5 + L^6
        assert_eq!(*h.coeff(3), &(&l(4) + &l(5)) + &l(6));
    }

    #[test]
    fn affine_plane_routes_agree_to_twelve() {
        for order in 0..=12 {
            assert_eq!(
                hilb_affine_plane_product(order),
                hilb_affine_plane_partition_sum(order),
                "order {order}"
            );
        }
    }

    #[test]
    fn affine_plane_exponents_are_shifted_lefschetz() {
        let h = hilb_affine_plane(7).unwrap();
        let bs = super::super::power_structure_decompose(&h.series).unwrap();
        for (i, b) in bs.iter().enumerate() {
            assert_eq!(*b, l(i as i64 + 2), "b_{}", i + 1);
        }
    }

    #[test]
    fn sym_series_examples() {
        let order = 4;
        let point = sym_series_even(&HodgeProfile::point(), order).unwrap();
        let one = LaurentPoly::one(&Alphabet::hodge());
        assert!(point.coeffs().iter().all(|c| *c == one));

        let uv2 = Realization::EPolynomial.lefschetz_power(2);
        let a2 = sym_series_even(&HodgeProfile::affine_plane(), order).unwrap();
        for j in 0..=order {
            assert_eq!(*a2.coeff(j), uv2.pow(j as u32));
        }

        let k3 = sym_series_even(&HodgeProfile::k3(), order).unwrap();
        assert_eq!(*k3.coeff(1), HodgeProfile::k3().e_polynomial());
        assert_eq!(k3.coeff(1).eval_at_ones(), BigInt::from(24));
    }

    #[test]
    fn odd_cohomology_rejected() {
        let torus = HodgeProfile::new(2, [((0, 0), 1), ((1, 0), 2), ((0, 1), 2), ((1, 1), 4)]).unwrap();
        assert!(matches!(
            sym_series_even(&torus, 3),
            Err(MotivicError::OddCohomology { .. })
        ));
        assert!(matches!(
            hilb_surface_series(&HodgeProfile::point(), 3),
            Err(MotivicError::NotASurface(0))
        ));
    }

    #[test]
    fn k3_series_values() {
        let h = hilb_surface_series(&HodgeProfile::k3(), 4).unwrap();
        assert_eq!(h.euler_specialization(), big_vec(&[1, 24, 324, 3200, 25650]));
        assert_eq!(*h.coeff(1), HodgeProfile::k3().e_polynomial());
        assert_eq!(h.coeff(2).coefficient(&[1, 1]), BigInt::from(21));
    }

    #[test]
    fn euler_numbers_match_partition_expansion() {
        // prod (1 - T^m)^(-chi): coefficient n = sum over multisets of parts, computed independently
        fn oracle(chi: i64, order: usize) -> Vec<BigInt> {
            let mut c = vec![BigInt::from(0); order + 1];
            c[0] = BigInt::from(1);
            for m in 1..=order {
                for _ in 0..chi {
                    for n in m..=order {
                        let prev = c[n - m].clone();
                        c[n] += prev;
                    }
                }
            }
            c
        }
        for profile in [
            HodgeProfile::k3(),
            HodgeProfile::projective_plane(),
            HodgeProfile::quadric_surface(),
            HodgeProfile::abelian_even_part(),
        ] {
            let chi: i64 = profile.euler_characteristic().try_into().unwrap();
            let h = hilb_surface_series(&profile, 6).unwrap();
            assert_eq!(h.euler_specialization(), oracle(chi, 6));
        }
    }

    #[test]
    fn transfer_examples() {
        let k3 = HodgeProfile::k3();
        assert!(l_equivalence_transfer_check(&k3, &k3, 5).unwrap());
        let ab = HodgeProfile::abelian_even_part();
        assert!(!l_equivalence_transfer_check(&k3, &ab, 2).unwrap());
        assert_eq!(transfer_divergence(&k3, &ab, 2).unwrap(), Some(1));
        let a2 = HodgeProfile::affine_plane();
        assert!(l_equivalence_transfer_check(&a2, &a2, 6).unwrap());
    }

    #[test]
    fn affine_plane_as_surface_matches_direct_series() {
        let direct = realize_series(&hilb_affine_plane(6).unwrap().series);
        let via = hilb_surface_series(&HodgeProfile::affine_plane(), 6).unwrap();
        assert_eq!(via.series, direct);
    }
}
