use k3hilb::classify::{classify, Certificate, Verdict};
use k3hilb::cone::{movable_case, ConeTag};
use k3hilb::lattice::bbf_q;
use k3hilb::motivic::json::{series_from_json, series_to_json};
use k3hilb::motivic::{hilb_affine_plane, hilb_surface_series, realize_series, HodgeProfile, Realization};
use k3hilb::pell::{fundamental_pell, solve_case_b, PellProblem};
use k3hilb::BigInt;
use proptest::prelude::*;

#[test]
fn hilbert_series_start_with_one_and_the_class() {
    for h in [
        HodgeProfile::k3(),
        HodgeProfile::projective_plane(),
        HodgeProfile::quadric_surface(),
        HodgeProfile::affine_plane(),
    ] {
        let s = hilb_surface_series(&h, 5).unwrap();
        assert_eq!(*s.coeff(0), Realization::EPolynomial.lefschetz_power(0));
        assert_eq!(*s.coeff(1), h.e_polynomial());
        assert!(s.verified);
    }
    let a2 = hilb_affine_plane(5).unwrap();
    assert_eq!(*a2.coeff(1), Realization::ClassRing.lefschetz_power(2));
}

#[test]
fn series_json_round_trips_in_both_realizations() {
    let a2 = hilb_affine_plane(6).unwrap().series;
    for s in [a2.clone(), realize_series(&a2), hilb_surface_series(&HodgeProfile::k3(), 6).unwrap().series] {
        let text = serde_json::to_string(&series_to_json(&s)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(series_from_json(&v).unwrap(), s);
    }
}

#[test]
fn equal_degree_case_b_pairs_are_exactly_the_not_birational_ones() {
    for d in 1..=15u64 {
        for n in 3..=30u64 {
            let c = classify(d, d, n).unwrap();
            let case = movable_case(d, n).unwrap();
            assert_eq!(c.verdict == Verdict::NotBirational, case.tag == ConeTag::B, "d={d} n={n}");
        }
    }
}

proptest! {
    #[test]
    fn case_b_solutions_square_to_the_unit(n in 3u64..200, d in 1u64..200) {
        // (x sqrt(n-1) + y sqrt(d))^2 = (2(n-1)x^2 - 1) + 2xy sqrt(d(n-1)) is a unit
        if let Some(s) = solve_case_b(n, d).unwrap() {
            prop_assert!(PellProblem::case_b(n, d).is_solution(&s));
            let disc = BigInt::from(d) * BigInt::from(n - 1);
            let t = BigInt::from(2) * BigInt::from(n - 1) * &s.x * &s.x - 1;
            let u = BigInt::from(2) * &s.x * &s.y;
            prop_assert_eq!(&t * &t - &disc * &u * &u, BigInt::from(1));
            let fundamental = fundamental_pell(&disc).unwrap();
            prop_assert_eq!((t, u), (fundamental.x, fundamental.y));
        }
    }

    #[test]
    fn rays_have_the_predicted_norm(d in 1u64..300, n in 2u64..300) {
        let case = movable_case(d, n).unwrap();
        let two_d = BigInt::from(2 * d);
        match (case.tag, &case.ray) {
            (ConeTag::A, None) => {}
            (ConeTag::B, Some(r)) => prop_assert_eq!(bbf_q(r), two_d * BigInt::from(n - 1)),
            (ConeTag::C, Some(r)) => prop_assert_eq!(bbf_q(r), two_d),
            (tag, ray) => prop_assert!(false, "tag {:?} with ray {:?}", tag, ray),
        }
    }

    #[test]
    fn certificates_survive_json(dx in 1u64..60, dy in 1u64..60, n in 2u64..60) {
        let c = classify(dx, dy, n).unwrap();
        let back: Certificate = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert!(back.verify().is_ok());
        prop_assert_eq!(back, c);
    }
}
