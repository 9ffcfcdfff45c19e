//! Exact solvers for the two Pell-type equations that govern the movable
//! cone of `X^[n]`:
//!
//! * `(n-1) X^2 - d Y^2 = 1`, solved through the generalized equation
//!   `U^2 - d(n-1) Y^2 = n-1` with `U = (n-1) X`;
//! * `X^2 - d(n-1) Y^2 = 1`, the ordinary Pell equation.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    #[error("{0} is a perfect square")]
    PerfectSquare(BigInt),
    #[error("{0} is negative")]
    Negative(BigInt),
    #[error("invalid parameters n = {n}, d = {d}: need n >= 2 and d >= 1")]
    InvalidParameters { n: u64, d: u64 },
    #[error("right-hand side must be nonzero")]
    ZeroRhs,
}

/// A positive solution `(x, y)` of some quadratic Diophantine equation.
///
/// `minimal` is set by the solvers in this module when no solution with a
/// smaller minimality key exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "crate::serde_bigint")]
    pub x: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub y: BigInt,
    #[serde(default, skip_serializing)]
    pub minimal: bool,
}

impl PellSolution {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        PellSolution {
            x: x.into(),
            y: y.into(),
            minimal: false,
        }
    }

    fn minimal(x: BigInt, y: BigInt) -> Self {
        PellSolution {
            x,
            y,
            minimal: true,
        }
    }
}

/// `a X^2 - b Y^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellProblem {
    pub a: BigInt,
    pub b: BigInt,
}

impl PellProblem {
    /// `(n-1) X^2 - d Y^2 = 1`.
    pub fn case_b(n: u64, d: u64) -> Self {
        PellProblem {
            a: BigInt::from(n) - 1,
            b: BigInt::from(d),
        }
    }

    /// `X^2 - d(n-1) Y^2 = 1`.
    pub fn case_c(n: u64, d: u64) -> Self {
        PellProblem {
            a: BigInt::one(),
            b: BigInt::from(d) * (BigInt::from(n) - 1),
        }
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x - &self.b * y * y
    }

    pub fn is_solution(&self, sol: &PellSolution) -> bool {
        self.evaluate(&sol.x, &sol.y).is_one()
    }
}

pub fn isqrt(m: &BigInt) -> BigInt {
    assert!(!m.is_negative(), "isqrt of a negative number");
    m.sqrt()
}

/// `Some(root)` when `m` is a perfect square.
pub fn is_perfect_square(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

/// `sqrt(D) = [a0; period, period, ...]` with the minimal period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub a0: BigInt,
    pub period: Vec<BigInt>,
}

fn check_nonsquare(d: &BigInt) -> Result<BigInt, PellError> {
    if d.is_negative() {
        return Err(PellError::Negative(d.clone()));
    }
    let r = d.sqrt();
    if &r * &r == *d {
        return Err(PellError::PerfectSquare(d.clone()));
    }
    Ok(r)
}

pub fn continued_fraction_sqrt(d: &BigInt) -> Result<ContinuedFraction, PellError> {
    let a0 = check_nonsquare(d)?;
    let two_a0 = &a0 * 2;
    let mut m = BigInt::zero();
    let mut den = BigInt::one();
    let mut a = a0.clone();
    let mut period = Vec::new();
    loop {
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        period.push(a.clone());
        if a == two_a0 {
            break;
        }
    }
    Ok(ContinuedFraction { a0, period })
}

/// Walks the convergents `p_k / q_k` of `sqrt(D)`, returning the first one
/// with `p^2 - D q^2 = target`, stopping after two full periods.
fn first_convergent_with_norm(d: &BigInt, target: i64) -> Result<Option<(BigInt, BigInt)>, PellError> {
    let cf = continued_fraction_sqrt(d)?;
    let target = BigInt::from(target);
    let (mut p_prev, mut p) = (BigInt::one(), cf.a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let steps = 2 * cf.period.len();
    for a in cf.period.iter().cycle().take(steps + 1) {
        if &p * &p - d * &q * &q == target {
            return Ok(Some((p, q)));
        }
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Ok(None)
}

/// Fundamental solution of `X^2 - D Y^2 = 1`.
///
/// The first convergent of `sqrt(D)` solving the equation is simultaneously
/// the solution with least `x`, least `y` and least `y/x > 0`.
pub fn fundamental_pell(d: &BigInt) -> Result<PellSolution, PellError> {
    let (x, y) = first_convergent_with_norm(d, 1)?
        .expect("the convergent at the end of the first or second period solves x^2 - Dy^2 = 1");
    Ok(PellSolution::minimal(x, y))
}

/// Least positive solution of `X^2 - D Y^2 = -1`, if any (odd period).
pub fn negative_pell(d: &BigInt) -> Result<Option<(BigInt, BigInt)>, PellError> {
    let cf = continued_fraction_sqrt(d)?;
    if cf.period.len() % 2 == 0 {
        return Ok(None);
    }
    first_convergent_with_norm(d, -1)
}

fn floor_quadratic(p: &BigInt, q: &BigInt, sqrt_floor: &BigInt) -> BigInt {
    // floor((p + sqrt(D)) / q) for non-square D and q != 0
    let num = p + sqrt_floor;
    if q.is_positive() {
        Integer::div_floor(&num, q)
    } else {
        let neg_q: BigInt = -q;
        let down: BigInt = Integer::div_floor(&num, &neg_q);
        -(down + BigInt::one())
    }
}

/// One representative per solution class of `x^2 - D y^2 = N` (D > 0 not a
/// square, N != 0), by the Lagrange-Matthews-Mollin continued-fraction method.
///
/// For each `f` with `f^2 | N` and `m = N / f^2`, the primitive classes of
/// `x^2 - D y^2 = m` correspond to residues `z` in `(-|m|/2, |m|/2]` with
/// `z^2 = D (mod |m|)`. Expanding `(z + sqrt(D)) / |m|` until the first
/// `Q_i = +-1` (or one full period) yields `G_{i-1}^2 - D B_{i-1}^2 = (-1)^i Q_i |m|`.
/// Every representative found this way lies in the classical box
/// `|x| <= sqrt(|N| (t+1) / 2)` of the fundamental unit `t + s sqrt(D)`, so no
/// class is missed and the search terminates after one period per residue.
pub fn generalized_pell_classes(d: &BigInt, n: &BigInt) -> Result<Vec<(BigInt, BigInt)>, PellError> {
    let sqrt_d = check_nonsquare(d)?;
    if n.is_zero() {
        return Err(PellError::ZeroRhs);
    }
    let neg_unit = negative_pell(d)?;
    let abs_n = n.abs();
    let mut out = Vec::new();
    let mut f = BigInt::one();
    while &f * &f <= abs_n {
        let f2 = &f * &f;
        if (&abs_n % &f2).is_zero() {
            let m = n / &f2;
            let abs_m = m.abs();
            let mut r = BigInt::zero();
            while r < abs_m {
                let z = if &r * 2 <= abs_m { r.clone() } else { &r - &abs_m };
                if ((&z * &z - d) % &abs_m).is_zero() {
                    if let Some((x, y)) = pqa_class_representative(d, &sqrt_d, &z, &abs_m, &m, neg_unit.as_ref()) {
                        out.push((&f * x, &f * y));
                    }
                }
                r += 1;
            }
        }
        f += 1;
    }
    Ok(out)
}

fn pqa_class_representative(
    d: &BigInt,
    sqrt_d: &BigInt,
    p0: &BigInt,
    q0: &BigInt,
    m: &BigInt,
    neg_unit: Option<&(BigInt, BigInt)>,
) -> Option<(BigInt, BigInt)> {
    let (mut g_prev2, mut g_prev1) = (-p0.clone(), q0.clone());
    let (mut b_prev2, mut b_prev1) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (p0.clone(), q0.clone());
    let mut seen: HashSet<(BigInt, BigInt)> = HashSet::new();
    loop {
        let a = floor_quadratic(&p, &q, sqrt_d);
        let g = &a * &g_prev1 + &g_prev2;
        let b = &a * &b_prev1 + &b_prev2;
        let p_next = &a * &q - &p;
        let q_next = (d - &p_next * &p_next) / &q;
        g_prev2 = std::mem::replace(&mut g_prev1, g);
        b_prev2 = std::mem::replace(&mut b_prev1, b);
        p = p_next;
        q = q_next;
        if q.abs().is_one() {
            let (r, s) = (&g_prev1, &b_prev1);
            let norm = r * r - d * s * s;
            if norm == *m {
                return Some((r.clone(), s.clone()));
            }
            if norm == -m {
                let (r1, s1) = neg_unit?;
                return Some((r * r1 + s * s1 * d, r * s1 + s * r1));
            }
            return None;
        }
        if !seen.insert((p.clone(), q.clone())) {
            return None;
        }
    }
}

/// For `N > 0`: moves `(x, y)` along its orbit `+-(x + y sqrt D) eps^k` to the
/// element with `x > 0`, `y > 0` and `x` least.
fn least_positive_in_orbit(d: &BigInt, unit: &PellSolution, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    // N > 0 forces |x| > sqrt(D)|y|, so x + y sqrt(D) has the sign of x.
    let (mut u, mut v) = if x.is_negative() {
        (-x.clone(), -y.clone())
    } else {
        (x.clone(), y.clone())
    };
    let (t, s) = (&unit.x, &unit.y);
    while !v.is_positive() {
        let nu = &u * t + &v * s * d;
        let nv = &u * s + &v * t;
        u = nu;
        v = nv;
    }
    loop {
        let pu = &u * t - &v * s * d;
        let pv = &v * t - &u * s;
        if pv.is_positive() {
            u = pu;
            v = pv;
        } else {
            break;
        }
    }
    (u, v)
}

/// Solution of `(n-1) X^2 - d Y^2 = 1` in positive integers with least `x`
/// (ties, possible only in degenerate cases, broken by least `y`).
///
/// With `U = (n-1) X` this is `U^2 - D Y^2 = n - 1` for `D = d(n-1)`. The
/// condition `(n-1) | U` is constant along each orbit under the unit group
/// because `t^2 = 1 (mod n-1)` for every unit `t + s sqrt(D)`, so filtering
/// the least positive element of each class is complete.
pub fn solve_case_b(n: u64, d: u64) -> Result<Option<PellSolution>, PellError> {
    if n < 2 || d < 1 {
        return Err(PellError::InvalidParameters { n, d });
    }
    let n1 = BigInt::from(n - 1);
    let disc = BigInt::from(d) * &n1;
    let problem = PellProblem::case_b(n, d);

    let mut candidates: Vec<(BigInt, BigInt)> = Vec::new();
    if let Some(k) = is_perfect_square(&disc) {
        // (U - kY)(U + kY) = n - 1 has finitely many factorizations.
        let mut e = BigInt::one();
        while &e * &e < n1 {
            if (&n1 % &e).is_zero() {
                let g = &n1 / &e;
                let diff = &g - &e;
                let sum = &g + &e;
                let two_k: BigInt = &k * 2;
                if sum.is_even() && (&diff % &two_k).is_zero() {
                    let u: BigInt = sum / 2;
                    let y: BigInt = diff / &two_k;
                    if (&u % &n1).is_zero() && y.is_positive() {
                        candidates.push((u / &n1, y));
                    }
                }
            }
            e += 1;
        }
    } else {
        let unit = fundamental_pell(&disc)?;
        for (x, y) in generalized_pell_classes(&disc, &n1)? {
            for (cx, cy) in [(x.clone(), y.clone()), (x.clone(), -y.clone())] {
                let (u, v) = least_positive_in_orbit(&disc, &unit, &cx, &cy);
                if (&u % &n1).is_zero() {
                    candidates.push((u / &n1, v));
                }
            }
        }
    }
    candidates.retain(|(x, y)| problem.evaluate(x, y).is_one());
    Ok(candidates
        .into_iter()
        .min()
        .map(|(x, y)| PellSolution::minimal(x, y)))
}

/// Fundamental solution of `X^2 - d(n-1) Y^2 = 1`; `None` when `d(n-1)` is a
/// perfect square (then only the trivial solution exists).
pub fn solve_case_c(n: u64, d: u64) -> Result<Option<PellSolution>, PellError> {
    if n < 2 || d < 1 {
        return Err(PellError::InvalidParameters { n, d });
    }
    let disc = BigInt::from(d) * BigInt::from(n - 1);
    match fundamental_pell(&disc) {
        Ok(s) => Ok(Some(s)),
        Err(PellError::PerfectSquare(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
