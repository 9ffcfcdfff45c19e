//! Movable cone of `X^[n]` for a Picard-rank-1 K3 surface of degree `2d`.
//!
//! One extremal ray is always spanned by `H~` (Hilbert-Chow). The other ray
//! falls in exactly one of three cases:
//!
//! * **A**: `d(n-1)` is a perfect square; the ray is isotropic and comes from
//!   a rational Lagrangian fibration.
//! * **B**: `(n-1) X^2 - d Y^2 = 1` is solvable; the ray is
//!   `x1 (n-1) H~ - d y1 B` for the solution with least `x1`.
//! * **C**: otherwise; the ray is `x1' H~ - d y1' B` for the fundamental
//!   solution of `X^2 - d(n-1) Y^2 = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{bbf_q, DivisorClass, LatticeError, LatticeParams};
use crate::pell::{self, is_perfect_square, PellError, PellProblem, PellSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Pell(#[from] PellError),
    #[error("({x}, {y}) does not solve {equation}")]
    NotASolution { x: String, y: String, equation: String },
    #[error("cone case {0:?} carries no integral ray")]
    NoRay(ConeTag),
    #[error("movable-cone trichotomy violated at d = {d}, n = {n}: {what}")]
    Inconsistent { d: u64, n: u64, what: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeTag {
    A,
    B,
    C,
}

/// Which case of the trichotomy applies, with the primitive generator of the
/// non-Hilbert-Chow ray and the Pell data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeCase {
    pub tag: ConeTag,
    pub params: LatticeParams,
    pub ray: Option<DivisorClass>,
    pub pell: Option<PellSolution>,
}

pub fn movable_case(d: u64, n: u64) -> Result<ConeCase, ConeError> {
    let params = LatticeParams::new(d, n)?;
    let disc = BigInt::from(d) * BigInt::from(n - 1);
    let n1 = BigInt::from(n - 1);
    let dd = BigInt::from(d);
    let inconsistent = |what: &str| ConeError::Inconsistent {
        d,
        n,
        what: what.to_string(),
    };

    let case_b = pell::solve_case_b(n, d)?;
    if is_perfect_square(&disc).is_some() {
        if case_b.is_some() {
            return Err(inconsistent("square d(n-1) but the case-B equation is solvable"));
        }
        if pell::solve_case_c(n, d)?.is_some() {
            return Err(inconsistent("square d(n-1) but X^2 - d(n-1)Y^2 = 1 has a nontrivial solution"));
        }
        return Ok(ConeCase {
            tag: ConeTag::A,
            params,
            ray: None,
            pell: None,
        });
    }

    let (tag, sol, ray) = match case_b {
        Some(sol) => {
            let ray = DivisorClass::new(&sol.x * &n1, -(&dd * &sol.y), params);
            (ConeTag::B, sol, ray)
        }
        None => {
            let sol = pell::solve_case_c(n, d)?
                .ok_or_else(|| inconsistent("non-square d(n-1) without a Pell unit"))?;
            let ray = DivisorClass::new(sol.x.clone(), -(&dd * &sol.y), params);
            (ConeTag::C, sol, ray)
        }
    };
    if !ray.is_primitive() {
        return Err(inconsistent("extremal ray generator is not primitive"));
    }
    Ok(ConeCase {
        tag,
        params,
        ray: Some(ray),
        pell: Some(sol),
    })
}

/// `gcd(x1 (n-1), d y1) = 1` for a solution of `(n-1) X^2 - d Y^2 = 1`.
pub fn check_primitive_case_b(d: u64, n: u64, sol: &PellSolution) -> Result<bool, ConeError> {
    LatticeParams::new(d, n)?;
    let problem = PellProblem::case_b(n, d);
    if !problem.is_solution(sol) {
        return Err(ConeError::NotASolution {
            x: sol.x.to_string(),
            y: sol.y.to_string(),
            equation: format!("{} X^2 - {} Y^2 = 1", problem.a, problem.b),
        });
    }
    let a = &sol.x * BigInt::from(n - 1);
    let b = BigInt::from(d) * &sol.y;
    Ok(a.gcd(&b).is_one())
}

/// BBF norm of the stored ray: `2d(n-1)` in case B, `2d` in case C.
pub fn ray_q_norm(case: &ConeCase) -> Result<BigInt, ConeError> {
    case.ray
        .as_ref()
        .map(bbf_q)
        .ok_or(ConeError::NoRay(case.tag))
}

/// Primitive isotropic class `((n-1) H~ - k B) / g` with `k^2 = d(n-1)`; exists
/// exactly in case A.
pub fn isotropic_witness(d: u64, n: u64) -> Result<Option<DivisorClass>, ConeError> {
    let params = LatticeParams::new(d, n)?;
    let n1 = BigInt::from(n - 1);
    let Some(k) = is_perfect_square(&(BigInt::from(d) * &n1)) else {
        return Ok(None);
    };
    let g = n1.gcd(&k);
    Ok(Some(DivisorClass::new(&n1 / &g, -(k / g), params)))
}
