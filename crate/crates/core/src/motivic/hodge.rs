use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::MotivicError;
use crate::ring::{Alphabet, LaurentPoly};

/// Hodge numbers `h^{p,q}` of a variety of dimension `dim`.
///
/// Construction enforces `h^{p,q} = h^{q,p}`. The Serre-type symmetry
/// `h^{p,q} = h^{dim-p,dim-q}` holds only for smooth projective varieties, so
/// it is checked separately (the affine plane, encoded through its
/// compactly supported E-polynomial `u^2 v^2`, violates it).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeProfile {
    dim: u32,
    numbers: BTreeMap<(u32, u32), u64>,
}

impl HodgeProfile {
    pub fn new<I>(dim: u32, entries: I) -> Result<Self, MotivicError>
    where
        I: IntoIterator<Item = ((u32, u32), u64)>,
    {
        let mut numbers = BTreeMap::new();
        for ((p, q), h) in entries {
            if p > dim || q > dim {
                return Err(MotivicError::HodgeIndex { p, q, dim });
            }
            if h != 0 {
                numbers.insert((p, q), h);
            }
        }
        for (&(p, q), h) in &numbers {
            if numbers.get(&(q, p)) != Some(h) {
                return Err(MotivicError::HodgeAsymmetry { p, q });
            }
        }
        Ok(HodgeProfile { dim, numbers })
    }

    /// `h^{0,0} = h^{2,0} = h^{0,2} = h^{2,2} = 1`, `h^{1,1} = 20`.
    pub fn k3() -> Self {
        Self::new(2, [((0, 0), 1), ((2, 0), 1), ((0, 2), 1), ((1, 1), 20), ((2, 2), 1)])
            .expect("K3 Hodge diamond")
    }

    pub fn point() -> Self {
        Self::new(0, [((0, 0), 1)]).expect("point")
    }

    /// `A^2` through its class `L^2`, i.e. E-polynomial `u^2 v^2`.
    pub fn affine_plane() -> Self {
        Self::new(2, [((2, 2), 1)]).expect("affine plane")
    }

    pub fn projective_plane() -> Self {
        Self::new(2, [((0, 0), 1), ((1, 1), 1), ((2, 2), 1)]).expect("P^2")
    }

    /// `P^1 x P^1`.
    pub fn quadric_surface() -> Self {
        Self::new(2, [((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]).expect("P^1 x P^1")
    }

    /// Even-degree part of an abelian surface's diamond; Euler number 8.
    pub fn abelian_even_part() -> Self {
        Self::new(2, [((0, 0), 1), ((2, 0), 1), ((0, 2), 1), ((1, 1), 4), ((2, 2), 1)])
            .expect("abelian even part")
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn get(&self, p: u32, q: u32) -> u64 {
        self.numbers.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.numbers.iter().map(|(&k, &v)| (k, v))
    }

    /// First `(p, q)` with `p + q` odd and `h^{p,q} != 0`.
    pub fn odd_cohomology(&self) -> Option<(u32, u32)> {
        self.numbers.keys().find(|(p, q)| (p + q) % 2 == 1).copied()
    }

    pub fn is_serre_symmetric(&self) -> bool {
        self.numbers
            .iter()
            .all(|(&(p, q), h)| self.get(self.dim - p, self.dim - q) == *h)
    }

    /// `sum (-1)^{p+q} h^{p,q} u^p v^q`.
    pub fn e_polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            &Alphabet::hodge(),
            self.numbers.iter().map(|(&(p, q), &h)| {
                let sign = if (p + q) % 2 == 0 { 1 } else { -1 };
                (vec![p as i64, q as i64], BigInt::from(h) * sign)
            }),
        )
        .expect("two exponents per term")
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.e_polynomial().eval_at_ones()
    }
}
