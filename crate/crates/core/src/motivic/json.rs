//! Canonical JSON for Laurent polynomials and truncated series.
//!
//! A polynomial is a list of terms `{"monomials": {"u": 1, "v": 1}, "c": "20"}`
//! in ascending exponent order, with zero exponents omitted and coefficients
//! written as decimal strings. A series is
//! `{"var": "T", "order": N, "alphabet": [...], "coeffs": [[term, ...], ...]}`
//! with one term list per power of `T`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{MotivicError, MotivicSeries};
use crate::ring::{Alphabet, LaurentPoly, RingError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub monomials: BTreeMap<String, i64>,
    #[serde(with = "crate::serde_bigint")]
    pub c: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub var: String,
    pub order: usize,
    pub alphabet: Vec<String>,
    pub coeffs: Vec<Vec<TermDoc>>,
}

pub fn poly_terms(p: &LaurentPoly) -> Vec<TermDoc> {
    let names = p.alphabet().names();
    p.terms()
        .map(|(exps, c)| TermDoc {
            monomials: names
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e != 0)
                .map(|(n, &e)| (n.clone(), e))
                .collect(),
            c: c.clone(),
        })
        .collect()
}

pub fn poly_from_terms(alphabet: &Alphabet, terms: &[TermDoc]) -> Result<LaurentPoly, RingError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let mut exps = vec![0i64; alphabet.len()];
        for (name, &e) in &t.monomials {
            let i = alphabet
                .index_of(name)
                .ok_or_else(|| RingError::UnknownVariable(name.clone()))?;
            exps[i] = e;
        }
        out.push((exps, t.c.clone()));
    }
    LaurentPoly::from_terms(alphabet, out)
}

impl From<&MotivicSeries> for SeriesDoc {
    fn from(s: &MotivicSeries) -> Self {
        SeriesDoc {
            var: "T".to_string(),
            order: s.order(),
            alphabet: s.coeff(0).alphabet().names().to_vec(),
            coeffs: s.coeffs().iter().map(poly_terms).collect(),
        }
    }
}

impl TryFrom<&SeriesDoc> for MotivicSeries {
    type Error = MotivicError;

    fn try_from(doc: &SeriesDoc) -> Result<Self, MotivicError> {
        let alphabet = Alphabet::new(doc.alphabet.iter().cloned());
        let coeffs = doc
            .coeffs
            .iter()
            .map(|terms| poly_from_terms(&alphabet, terms))
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs = if coeffs.is_empty() {
            vec![LaurentPoly::zero(&alphabet)]
        } else {
            coeffs
        };
        Ok(TruncatedSeries::new(coeffs, doc.order)?)
    }
}

pub fn series_to_json(s: &MotivicSeries) -> serde_json::Value {
    serde_json::to_value(SeriesDoc::from(s)).expect("plain data serializes")
}

pub fn series_from_json(v: &serde_json::Value) -> Result<MotivicSeries, MotivicError> {
    let doc: SeriesDoc =
        serde_json::from_value(v.clone()).map_err(|e| MotivicError::Json(e.to_string()))?;
    MotivicSeries::try_from(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motivic::{hilb_surface_series, HodgeProfile};

    #[test]
    fn k3_series_round_trip() {
        let s = hilb_surface_series(&HodgeProfile::k3(), 3).unwrap().series;
        let v = series_to_json(&s);
        assert_eq!(v["var"], "T");
        assert_eq!(v["order"], 3);
        let t1 = &v["coeffs"][1];
        assert!(t1
            .as_array()
            .unwrap()
            .iter()
            .any(|t| t["monomials"] == serde_json::json!({"u": 1, "v": 1}) && t["c"] == "20"));
        assert_eq!(series_from_json(&v).unwrap(), s);
    }

    #[test]
    fn key_order_is_stable() {
        let s = crate::motivic::hilb_affine_plane(1).unwrap().series;
        let text = serde_json::to_string(&series_to_json(&s)).unwrap();
        assert_eq!(
            text,
            r#"{"var":"T","order":1,"alphabet":["L"],"coeffs":[[{"monomials":{},"c":"1"}],[{"monomials":{"L":2},"c":"1"}]]}"#
        );
    }

    #[test]
    fn unknown_variable_rejected() {
        let v = serde_json::json!({"var": "T", "order": 0, "alphabet": ["L"],
            "coeffs": [[{"monomials": {"q": 1}, "c": "1"}]]});
        assert!(series_from_json(&v).is_err());
    }
}
