//! Motivic generating series of Hilbert schemes of points.
//!
//! Classes live in the subring of `K0(Var)[L^-1]` generated by `L` and its
//! inverse (alphabet `{L}`), or in its E-polynomial realization
//! `Z[u, v, (uv)^-1]` with `L -> uv` (alphabet `{u, v}`). On both rings the
//! power structure is determined by `(1 - T)^(-w) = sum_j w^j T^j` for a
//! monomial `w` together with integer powers, which is what [`power`]
//! implements.

mod hilb;
mod hodge;
pub mod json;
pub mod partitions;
mod power;

pub use hilb::{
    hilb_affine_plane, hilb_affine_plane_partition_sum, hilb_affine_plane_product,
    hilb_surface_series, hilb_surface_series_route_a, hilb_surface_series_route_b,
    l_equivalence_transfer_check, sym_series_even, transfer_divergence, HilbSeries, HilbSource,
};
pub use hodge::HodgeProfile;
pub use power::{
    exponent_factor, power_structure_decompose, power_structure_pow, power_structure_recompose,
};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{Alphabet, LaurentPoly, RingError, TruncatedSeries};

pub type MotivicSeries = TruncatedSeries<LaurentPoly>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotivicError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("power structure needs a series with constant term 1")]
    ConstantTermNotOne,
    #[error("exponent alphabet {exponent:?} does not match series alphabet {series:?}")]
    ExponentAlphabet {
        exponent: Vec<String>,
        series: Vec<String>,
    },
    #[error("Hodge profile has nonzero odd cohomology h^{{{p},{q}}}")]
    OddCohomology { p: u32, q: u32 },
    #[error("Hodge numbers are not symmetric: h^{{{p},{q}}} != h^{{{q},{p}}}")]
    HodgeAsymmetry { p: u32, q: u32 },
    #[error("Hodge index ({p},{q}) exceeds dimension {dim}")]
    HodgeIndex { p: u32, q: u32, dim: u32 },
    #[error("expected a surface, got dimension {0}")]
    NotASurface(u32),
    #[error("independent routes disagree at T^{index}: {left} vs {right}")]
    RouteDisagreement {
        index: usize,
        left: String,
        right: String,
    },
    #[error("malformed series JSON: {0}")]
    Json(String),
    #[error("class is not in the {0:?} realization")]
    WrongRealization(Realization),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    /// Polynomials in `L = [A^1]` and `L^-1`.
    ClassRing,
    /// E-polynomials in `u, v`, with `L` realized as `uv`.
    EPolynomial,
}

impl Realization {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Realization::ClassRing => Alphabet::lefschetz(),
            Realization::EPolynomial => Alphabet::hodge(),
        }
    }

    /// Exponent vector of `L^k` in this realization.
    pub fn lefschetz_exponents(self, k: i64) -> Vec<i64> {
        match self {
            Realization::ClassRing => vec![k],
            Realization::EPolynomial => vec![k, k],
        }
    }

    pub fn lefschetz_power(self, k: i64) -> LaurentPoly {
        LaurentPoly::monomial(&self.alphabet(), self.lefschetz_exponents(k), 1)
            .expect("realization exponents match alphabet")
    }
}

/// An element of the localized class ring, or its E-polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotivicClass {
    value: LaurentPoly,
    mode: Realization,
}

impl MotivicClass {
    pub fn new(value: LaurentPoly, mode: Realization) -> Result<Self, MotivicError> {
        if *value.alphabet() != mode.alphabet() {
            return Err(MotivicError::WrongRealization(mode));
        }
        Ok(MotivicClass { value, mode })
    }

    /// `L^k`.
    pub fn lefschetz(mode: Realization, k: i64) -> Self {
        MotivicClass {
            value: mode.lefschetz_power(k),
            mode,
        }
    }

    pub fn value(&self) -> &LaurentPoly {
        &self.value
    }

    pub fn mode(&self) -> Realization {
        self.mode
    }

    /// Image under `L -> uv`; identity on E-polynomials.
    pub fn realize(&self) -> MotivicClass {
        match self.mode {
            Realization::EPolynomial => self.clone(),
            Realization::ClassRing => MotivicClass {
                value: realize_lefschetz(&self.value),
                mode: Realization::EPolynomial,
            },
        }
    }

    /// Topological Euler characteristic (all variables set to 1).
    pub fn euler_characteristic(&self) -> BigInt {
        self.value.eval_at_ones()
    }
}

/// `L -> uv` on a polynomial over `{L}`.
pub fn realize_lefschetz(p: &LaurentPoly) -> LaurentPoly {
    p.map_monomials(&Alphabet::hodge(), |e| vec![e[0], e[0]])
}

/// `L -> uv` coefficientwise.
pub fn realize_series(s: &MotivicSeries) -> MotivicSeries {
    s.map(realize_lefschetz)
}

/// Equality in the localized ring `K0(Var)[L^-1]`.
pub fn l_equivalent(x: &MotivicClass, y: &MotivicClass) -> Result<bool, MotivicError> {
    if x.mode != y.mode {
        return Err(MotivicError::WrongRealization(x.mode));
    }
    Ok(x.value == y.value)
}

/// Least `m >= 0` making `L^m x` and `L^m y` free of negative powers of `L`.
pub fn clearing_exponent(x: &MotivicClass, y: &MotivicClass) -> i64 {
    let lowest = |c: &MotivicClass| {
        c.value
            .terms()
            .map(|(e, _)| match c.mode {
                Realization::ClassRing => e[0],
                Realization::EPolynomial => e[0].min(e[1]),
            })
            .min()
            .unwrap_or(0)
    };
    (-lowest(x).min(lowest(y))).max(0)
}

/// `L^m ([X] - [Y]) = 0` with both sides first moved into the unlocalized
/// ring by multiplying with `L^m`.
pub fn l_equivalent_after(x: &MotivicClass, y: &MotivicClass, m: i64) -> Result<bool, MotivicError> {
    if x.mode != y.mode {
        return Err(MotivicError::WrongRealization(x.mode));
    }
    let shift = x.mode.lefschetz_exponents(m);
    let lx = x.value.shift(&shift);
    let ly = y.value.shift(&shift);
    if !lx.is_polynomial() || !ly.is_polynomial() {
        return Ok(false);
    }
    Ok(lx.checked_sub(&ly)?.is_zero())
}
