//! Birational-inequivalence classifier for `X^[n]`, `Y^[n]` where `X`, `Y`
//! are non-isomorphic, D- and L-equivalent K3 surfaces of Picard rank 1 and
//! degrees `2 d_X`, `2 d_Y`.
//!
//! A birational map `X^[n] -> Y^[n]` would induce a Hodge isometry of the
//! Picard lattices respecting movable cones. Swapping the Hilbert-Chow rays
//! would contradict `X != Y`, so the non-Hilbert-Chow ray of `X` would go to
//! `H~_Y`, forcing `q(ray_X) = 2 d_Y`. The certificate records that norm
//! chain with `d_X >= d_Y`. The verdict itself follows the criterion exactly:
//! not birational iff `d_X != d_Y`, or `d_X = d_Y`, `n > 2` and
//! `(n-1) X^2 - d Y^2 = 1` is solvable. Everything else is `Undetermined`.

pub mod expr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{isotropic_witness, movable_case, ConeError, ConeTag};
use crate::lattice::{bbf_q, DivisorClass};
use crate::pell::{PellProblem, PellSolution};
use expr::{evaluate, ExprError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("n must be at least 2, got {0}")]
    TooFewPoints(u64),
    #[error("half-degrees must be positive, got d_X = {d_x}, d_Y = {d_y}")]
    NonPositiveDegree { d_x: u64, d_y: u64 },
    #[error("hypothesis `{0}` is required and cannot be waived")]
    HypothesisWaived(&'static str),
    #[error("max_y must be at least 1")]
    EmptyFamily,
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Hypotheses on the input pair that are asserted by the caller, not
/// computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub non_isomorphic: bool,
    pub d_equivalent: bool,
    pub l_equivalent: bool,
}

impl Default for Hypotheses {
    fn default() -> Self {
        Hypotheses {
            non_isomorphic: true,
            d_equivalent: true,
            l_equivalent: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub d_x: u64,
    pub d_y: u64,
    pub n: u64,
    pub non_isomorphic: bool,
    pub d_equivalent: bool,
    pub l_equivalent: bool,
}

/// Labels after arranging `d_X >= d_Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub d_x: u64,
    pub d_y: u64,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayCoords {
    #[serde(with = "crate::serde_bigint")]
    pub a: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub b: BigInt,
}

impl From<&DivisorClass> for RayCoords {
    fn from(c: &DivisorClass) -> Self {
        RayCoords {
            a: c.a.clone(),
            b: c.b.clone(),
        }
    }
}

/// Serializable view of a [`crate::cone::ConeCase`]. `ray` is `a H~ + b B`;
/// `isotropic` is the primitive isotropic class in case A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSummary {
    pub tag: ConeTag,
    pub d: u64,
    pub n: u64,
    pub ray: Option<RayCoords>,
    pub isotropic: Option<RayCoords>,
    #[serde(with = "crate::serde_bigint")]
    pub q: BigInt,
    pub pell: Option<PellSolution>,
}

impl ConeSummary {
    pub fn compute(d: u64, n: u64) -> Result<Self, ClassifyError> {
        let case = movable_case(d, n)?;
        let isotropic = isotropic_witness(d, n)?;
        let q = match (&case.ray, &isotropic) {
            (Some(r), _) => bbf_q(r),
            (None, Some(w)) => bbf_q(w),
            (None, None) => unreachable!("case A always has an isotropic witness"),
        };
        Ok(ConeSummary {
            tag: case.tag,
            d,
            n,
            ray: case.ray.as_ref().map(RayCoords::from),
            isotropic: isotropic.as_ref().map(RayCoords::from),
            q,
            pell: case.pell.map(|p| PellSolution::new(p.x, p.y)),
        })
    }

    /// The generator whose norm enters the trace.
    fn generator(&self) -> &RayCoords {
        self.ray
            .as_ref()
            .or(self.isotropic.as_ref())
            .expect("every cone case carries a generator")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotBirational,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "degree_mismatch")]
    DegreeMismatch,
    #[serde(rename = "case_a_isotropy")]
    CaseAIsotropy,
    #[serde(rename = "case_b_norm_contradiction")]
    CaseBNormContradiction,
    #[serde(rename = "case_c_norm_contradiction")]
    CaseCNormContradiction,
}

impl Reason {
    fn for_tag(tag: ConeTag) -> Self {
        match tag {
            ConeTag::A => Reason::CaseAIsotropy,
            ConeTag::B => Reason::CaseBNormContradiction,
            ConeTag::C => Reason::CaseCNormContradiction,
        }
    }
}

/// Values of the variables appearing in the trace expressions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceBindings {
    #[serde(rename = "dX", with = "crate::serde_bigint")]
    pub d_x: BigInt,
    #[serde(rename = "dY", with = "crate::serde_bigint")]
    pub d_y: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub n: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub a: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub b: BigInt,
    pub x: Option<String>,
    pub y: Option<String>,
}

impl TraceBindings {
    fn env(&self) -> Result<expr::Bindings, ClassifyError> {
        let mut env = expr::Bindings::new();
        env.insert("dX".into(), self.d_x.clone());
        env.insert("dY".into(), self.d_y.clone());
        env.insert("n".into(), self.n.clone());
        env.insert("a".into(), self.a.clone());
        env.insert("b".into(), self.b.clone());
        for (k, v) in [("x", &self.x), ("y", &self.y)] {
            if let Some(v) = v {
                let parsed = v
                    .parse()
                    .map_err(|_| ClassifyError::Certificate(format!("binding {k} = {v:?} is not an integer")))?;
                env.insert(k.into(), parsed);
            }
        }
        Ok(env)
    }
}

/// One step of a norm chain: an expression and its exact value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow(pub String, #[serde(with = "crate::serde_bigint")] pub BigInt);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub source: String,
    pub statement: String,
}

/// Verdict with everything needed to re-check it.
///
/// `norm_trace` always starts with `q(ray_X)` and ends with `2*dY`; for
/// cases B and C the middle rows are the symbolic rewriting of the norm, the
/// Pell identity (value 1), and the closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub inputs: Inputs,
    pub normalized: Normalized,
    pub cone_case_x: ConeSummary,
    pub cone_case_y: ConeSummary,
    pub verdict: Verdict,
    pub reason: Option<Reason>,
    /// Which norm chain the trace follows, from the cone case of `X`.
    pub cone_argument: Reason,
    /// Whether the trace shows `q(ray_X) != 2 d_Y`.
    pub norm_contradiction: bool,
    pub bindings: TraceBindings,
    pub norm_trace: Vec<TraceRow>,
    pub narrative: Vec<String>,
    pub citations: Vec<Citation>,
}

fn citations() -> Vec<Citation> {
    [
        ("MR2353249, Prop. 8", "D-equivalent surfaces have D-equivalent Hilbert schemes of points (caller asserts D-equivalence of X, Y)"),
        ("Gusein-Zade, Luengo, Melle-Hernandez 2006, Corollary", "H_Z(T) = H_{A^dim Z}(T)^(L^(-dim Z)[Z]); L-equivalence of X, Y transfers to X^[n], Y^[n] (caller asserts L-equivalence of X, Y)"),
        ("Hassett-Lai 2018, Thm 4.1; Ito-Miura-Okawa-Ueda 2020, Thm 1.3", "very general degree-12 K3 surfaces with equivalent derived categories are L-equivalent"),
        ("MR3279532, Prop. 13.1", "movable cone of X^[n] for Picard rank 1: Hilbert-Chow ray and the A/B/C trichotomy"),
        ("MR1664696, Lemma 2.6", "a birational map of hyperkahler manifolds induces a Hodge isometry of H^2"),
        ("MR770463, Thm 2.1", "an isometry preserving the Hilbert-Chow exceptional divisors comes from an isomorphism X = Y"),
    ]
    .into_iter()
    .map(|(s, t)| Citation {
        source: s.into(),
        statement: t.into(),
    })
    .collect()
}

/// Classify with all hypotheses asserted.
pub fn classify(d_x: u64, d_y: u64, n: u64) -> Result<Certificate, ClassifyError> {
    classify_with(d_x, d_y, n, Hypotheses::default())
}

pub fn classify_with(d_x: u64, d_y: u64, n: u64, hyp: Hypotheses) -> Result<Certificate, ClassifyError> {
    if n < 2 {
        return Err(ClassifyError::TooFewPoints(n));
    }
    if d_x == 0 || d_y == 0 {
        return Err(ClassifyError::NonPositiveDegree { d_x, d_y });
    }
    for (flag, name) in [
        (hyp.non_isomorphic, "non_isomorphic"),
        (hyp.d_equivalent, "d_equivalent"),
        (hyp.l_equivalent, "l_equivalent"),
    ] {
        if !flag {
            return Err(ClassifyError::HypothesisWaived(name));
        }
    }

    let swapped = d_x < d_y;
    let (dx, dy) = if swapped { (d_y, d_x) } else { (d_x, d_y) };
    let cx = ConeSummary::compute(dx, n)?;
    let cy = ConeSummary::compute(dy, n)?;

    let gen = cx.generator().clone();
    let (px, py) = match &cx.pell {
        Some(p) => (Some(p.x.to_string()), Some(p.y.to_string())),
        None => (None, None),
    };
    let bindings = TraceBindings {
        d_x: dx.into(),
        d_y: dy.into(),
        n: n.into(),
        a: gen.a,
        b: gen.b,
        x: px,
        y: py,
    };
    let exprs: &[&str] = match cx.tag {
        ConeTag::A => &["2*dX*a^2 - 2*(n-1)*b^2", "2*dY"],
        ConeTag::B => &[
            "2*dX*a^2 - 2*(n-1)*b^2",
            "2*dX*(n-1)*((n-1)*x^2 - dX*y^2)",
            "(n-1)*x^2 - dX*y^2",
            "2*dX*(n-1)",
            "2*dY",
        ],
        ConeTag::C => &[
            "2*dX*a^2 - 2*(n-1)*b^2",
            "2*dX*(x^2 - dX*(n-1)*y^2)",
            "x^2 - dX*(n-1)*y^2",
            "2*dX",
            "2*dY",
        ],
    };
    let env = bindings.env()?;
    let norm_trace = exprs
        .iter()
        .map(|e| Ok(TraceRow(e.to_string(), evaluate(e, &env)?)))
        .collect::<Result<Vec<_>, ClassifyError>>()?;
    let norm_contradiction = norm_trace.first().map(|r| &r.1) != norm_trace.last().map(|r| &r.1);

    let case_b_solvable = dx == dy && cx.tag == ConeTag::B;
    let (verdict, reason) = if dx != dy {
        (Verdict::NotBirational, Some(Reason::DegreeMismatch))
    } else if n > 2 && case_b_solvable {
        (Verdict::NotBirational, Some(Reason::CaseBNormContradiction))
    } else {
        (Verdict::Undetermined, None)
    };
    let cone_argument = Reason::for_tag(cx.tag);
    let narrative = narrative(dx, dy, n, cx.tag, verdict, norm_contradiction);

    let cert = Certificate {
        inputs: Inputs {
            d_x,
            d_y,
            n,
            non_isomorphic: hyp.non_isomorphic,
            d_equivalent: hyp.d_equivalent,
            l_equivalent: hyp.l_equivalent,
        },
        normalized: Normalized {
            d_x: dx,
            d_y: dy,
            swapped,
        },
        cone_case_x: cx,
        cone_case_y: cy,
        verdict,
        reason,
        cone_argument,
        norm_contradiction,
        bindings,
        norm_trace,
        narrative,
        citations: citations(),
    };
    cert.verify()?;
    Ok(cert)
}

fn narrative(dx: u64, dy: u64, n: u64, tag: ConeTag, verdict: Verdict, contradiction: bool) -> Vec<String> {
    let mut out = vec![
        format!("Normalize so that d_X = {dx} >= d_Y = {dy}; n = {n}."),
        "A birational map would induce a Hodge isometry respecting movable cones. If it sent the Hilbert-Chow ray of X to that of Y, it would preserve the exceptional divisors and X, Y would be isomorphic, contrary to hypothesis.".to_string(),
        "Otherwise the second ray of X goes to H~_Y, so q(ray_X) = 2 d_Y.".to_string(),
    ];
    out.push(match tag {
        ConeTag::A => "X is in case A: the ray is isotropic, q = 0.".to_string(),
        ConeTag::B => "X is in case B: q(ray_X) = 2 d_X (n-1) by the Pell identity.".to_string(),
        ConeTag::C => "X is in case C: q(ray_X) = 2 d_X by the Pell identity.".to_string(),
    });
    out.push(if contradiction {
        "The trace shows q(ray_X) != 2 d_Y.".to_string()
    } else {
        "The trace shows q(ray_X) = 2 d_Y: no contradiction.".to_string()
    });
    if verdict == Verdict::Undetermined && contradiction {
        out.push("The criterion requires d_X != d_Y or a case-B Pell solution with n > 2; neither holds, so no verdict is drawn even though the isotropic-ray norm differs from 2 d_Y.".to_string());
    } else if verdict == Verdict::Undetermined {
        out.push("The criterion is silent here; birationality is not claimed.".to_string());
    }
    out
}

impl Certificate {
    /// Re-evaluates the norm trace and checks that it supports the verdict.
    pub fn verify(&self) -> Result<(), ClassifyError> {
        let fail = |m: String| Err(ClassifyError::Certificate(m));
        let env = self.bindings.env()?;
        for TraceRow(e, v) in &self.norm_trace {
            let got = evaluate(e, &env)?;
            if &got != v {
                return fail(format!("{e} evaluates to {got}, recorded {v}"));
            }
        }
        let norm = self.normalized.d_x;
        if self.bindings.d_x != norm.into() || self.bindings.d_y != self.normalized.d_y.into() {
            return fail("bindings disagree with normalized degrees".into());
        }
        if self.bindings.n != self.inputs.n.into() {
            return fail("bindings disagree with n".into());
        }
        let gen = self.cone_case_x.generator();
        if gen.a != self.bindings.a || gen.b != self.bindings.b {
            return fail("bindings disagree with the ray of X".into());
        }

        let rows: Vec<&BigInt> = self.norm_trace.iter().map(|r| &r.1).collect();
        let one = BigInt::from(1);
        match (self.cone_case_x.tag, rows.as_slice()) {
            (ConeTag::A, [q, _]) => {
                if *q != &BigInt::from(0) {
                    return fail("isotropic generator has nonzero norm".into());
                }
            }
            (tag @ (ConeTag::B | ConeTag::C), [q, sym, pell, closed, _]) => {
                if q != sym || q != closed || *pell != &one {
                    return fail("norm chain does not close".into());
                }
                let sol = self
                    .cone_case_x
                    .pell
                    .as_ref()
                    .ok_or_else(|| ClassifyError::Certificate("missing Pell solution".into()))?;
                let (d, n) = (self.normalized.d_x, self.inputs.n);
                let problem = if tag == ConeTag::B {
                    PellProblem::case_b(n, d)
                } else {
                    PellProblem::case_c(n, d)
                };
                let expect_a = if tag == ConeTag::B {
                    &sol.x * BigInt::from(n - 1)
                } else {
                    sol.x.clone()
                };
                if !problem.is_solution(sol) || gen.a != expect_a || gen.b != -(BigInt::from(d) * &sol.y) {
                    return fail("ray is not built from the recorded Pell solution".into());
                }
            }
            _ => return fail("trace has the wrong shape".into()),
        }
        let contradiction = rows.first() != rows.last();
        if contradiction != self.norm_contradiction {
            return fail("norm_contradiction flag disagrees with the trace".into());
        }
        if self.cone_argument != Reason::for_tag(self.cone_case_x.tag) {
            return fail("cone argument disagrees with the cone case".into());
        }

        let (dx, dy, n) = (self.normalized.d_x, self.normalized.d_y, self.inputs.n);
        match (self.verdict, self.reason) {
            (Verdict::NotBirational, Some(Reason::DegreeMismatch)) if dx != dy && contradiction => Ok(()),
            (Verdict::NotBirational, Some(Reason::CaseBNormContradiction))
                if dx == dy && n > 2 && self.cone_case_x.tag == ConeTag::B && contradiction =>
            {
                Ok(())
            }
            (Verdict::Undetermined, None) => Ok(()),
            (v, r) => fail(format!("verdict {v:?} with reason {r:?} is not supported by the trace")),
        }
    }
}

/// `n = 6 y^2 + 2` with the obvious solution `(1, y)` of `(n-1) X^2 - 6 Y^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub y: u64,
    pub n: u64,
    pub pell: PellSolution,
}

pub fn enumerate_family(max_y: u64) -> Result<Vec<FamilyMember>, ClassifyError> {
    if max_y < 1 {
        return Err(ClassifyError::EmptyFamily);
    }
    (1..=max_y)
        .map(|y| {
            let n = 6 * y * y + 2;
            let pell = PellSolution::new(1, y);
            if !PellProblem::case_b(n, 6).is_solution(&pell) {
                return Err(ClassifyError::Certificate(format!("(1, {y}) does not solve the equation at n = {n}")));
            }
            Ok(FamilyMember { y, n, pell })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pell::solve_case_b;

    #[test]
    fn headline_examples() {
        let c = classify(6, 6, 8).unwrap();
        assert_eq!(c.verdict, Verdict::NotBirational);
        assert_eq!(c.reason, Some(Reason::CaseBNormContradiction));
        let p = c.cone_case_x.pell.as_ref().unwrap();
        assert_eq!((p.x.clone(), p.y.clone()), (BigInt::from(1), BigInt::from(1)));
        let values: Vec<String> = c.norm_trace.iter().map(|r| r.1.to_string()).collect();
        assert_eq!(values, ["84", "84", "1", "84", "12"]);

        assert_eq!(classify(6, 6, 3).unwrap().verdict, Verdict::Undetermined);
        assert_eq!(classify(6, 6, 2).unwrap().verdict, Verdict::Undetermined);
    }

    #[test]
    fn degree_mismatch_example() {
        let c = classify(7, 6, 5).unwrap();
        assert_eq!(c.verdict, Verdict::NotBirational);
        assert_eq!(c.reason, Some(Reason::DegreeMismatch));
        // 7 * 4 = 28 is not a square; 4 X^2 - 7 Y^2 = 1 is solvable (X=4, Y=3)
        assert_eq!(c.cone_case_x.tag, ConeTag::B);
        assert_eq!(c.norm_trace[0].1, BigInt::from(56));
        assert_eq!(c.norm_trace.last().unwrap().1, BigInt::from(12));
    }

    #[test]
    fn errors_and_hypotheses() {
        assert_eq!(classify(6, 6, 1), Err(ClassifyError::TooFewPoints(1)));
        assert!(matches!(classify(0, 6, 3), Err(ClassifyError::NonPositiveDegree { .. })));
        let hyp = Hypotheses {
            l_equivalent: false,
            ..Hypotheses::default()
        };
        assert_eq!(
            classify_with(6, 6, 8, hyp),
            Err(ClassifyError::HypothesisWaived("l_equivalent"))
        );
    }

    #[test]
    fn soundness_grid() {
        for dx in 1..=40u64 {
            for dy in 1..=40u64 {
                for n in 2..=40u64 {
                    let c = classify(dx, dy, n).unwrap();
                    let direct = dx != dy || (n > 2 && solve_case_b(n, dx).unwrap().is_some());
                    assert_eq!(c.verdict == Verdict::NotBirational, direct, "({dx},{dy},{n})");
                    if dx < dy {
                        assert_eq!(c.verdict, classify(dy, dx, n).unwrap().verdict);
                    }
                }
            }
        }
    }

    #[test]
    fn tampered_certificate_rejected() {
        let mut c = classify(6, 6, 8).unwrap();
        c.norm_trace[3].1 = BigInt::from(12);
        assert!(c.verify().is_err());

        let mut c = classify(6, 6, 3).unwrap();
        c.verdict = Verdict::NotBirational;
        c.reason = Some(Reason::CaseCNormContradiction);
        assert!(c.verify().is_err());

        let mut c = classify(6, 6, 8).unwrap();
        c.bindings.y = Some("2".into());
        assert!(c.verify().is_err());
    }

    #[test]
    fn json_round_trip() {
        for (dx, dy, n) in [(6, 6, 8), (6, 6, 3), (1, 1, 2), (7, 6, 5), (4, 9, 5)] {
            let c = classify(dx, dy, n).unwrap();
            let text = serde_json::to_string(&c).unwrap();
            let back: Certificate = serde_json::from_str(&text).unwrap();
            assert_eq!(back, c);
            back.verify().unwrap();
        }
    }

    #[test]
    fn family() {
        let fam = enumerate_family(3).unwrap();
        let ns: Vec<u64> = fam.iter().map(|m| m.n).collect();
        assert_eq!(ns, [8, 26, 56]);
        for m in enumerate_family(20).unwrap() {
            assert_eq!(classify(6, 6, m.n).unwrap().verdict, Verdict::NotBirational);
        }
        assert_eq!(enumerate_family(0), Err(ClassifyError::EmptyFamily));
    }
}
