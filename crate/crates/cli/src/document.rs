//! `MultivectorDocument`, the JSON interchange form of a multivector.
//!
//! ```json
//! {"p":2,"q":0,"field":"C","terms":[{"blade":[],"re":1.0,"im":0.0},{"blade":[1,2],"re":0.5,"im":-2.0}]}
//! ```
//!
//! Floats are written in shortest round-trip form and read back exactly, so
//! `decode(encode(m)) == m` bit for bit.

use std::collections::BTreeSet;

use cliffq::{Blade, FieldTag, Multivector, Scalar, Signature};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("term {term}: {message}")]
    Term { term: usize, message: String },
    #[error("{0}")]
    Invalid(#[from] cliffq::Error),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl From<FieldTag> for Field {
    fn from(f: FieldTag) -> Self {
        match f {
            FieldTag::Real => Field::Real,
            FieldTag::Complex => Field::Complex,
        }
    }
}

impl From<Field> for FieldTag {
    fn from(f: Field) -> Self {
        match f {
            Field::Real => FieldTag::Real,
            Field::Complex => FieldTag::Complex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocTerm {
    /// Ascending 1-based generator indices; empty for the scalar part.
    pub blade: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultivectorDocument {
    pub p: usize,
    pub q: usize,
    pub field: Field,
    pub terms: Vec<DocTerm>,
}

impl MultivectorDocument {
    /// Terms in (grade, blade) order; exact zeros are already absent.
    pub fn from_multivector(u: &Multivector) -> Self {
        let mut terms: Vec<(Blade, Scalar)> = u.terms().collect();
        terms.sort_by_key(|(b, _)| (b.grade(), b.mask()));
        MultivectorDocument {
            p: u.sig().p(),
            q: u.sig().q(),
            field: u.field().into(),
            terms: terms.into_iter().map(|(b, c)| DocTerm { blade: b.indices(), re: c.re, im: c.im }).collect(),
        }
    }

    pub fn to_multivector(&self) -> Result<Multivector, DocumentError> {
        let sig = Signature::new(self.p, self.q)?;
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            let bad = |message: String| DocumentError::Term { term: i, message };
            if t.blade.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("blade indices must be strictly increasing".into()));
            }
            if let Some(k) = t.blade.iter().find(|k| **k == 0 || **k > sig.n()) {
                return Err(bad(format!("generator {k} out of range 1..={}", sig.n())));
            }
            if self.field == Field::Real && t.im != 0.0 {
                return Err(bad("field \"R\" requires im = 0".into()));
            }
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(bad("coefficients must be finite".into()));
            }
            let blade = Blade::from_indices(&t.blade)?;
            if !seen.insert(blade) {
                return Err(bad(format!("duplicate blade {blade}")));
            }
            terms.push((blade, Scalar::new(t.re, t.im)));
        }
        Ok(Multivector::from_terms(sig, self.field.into(), terms)?)
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

pub fn decode(text: &str) -> Result<Multivector, DocumentError> {
    MultivectorDocument::from_json(text)?.to_multivector()
}

pub fn encode(u: &Multivector) -> String {
    MultivectorDocument::from_multivector(u).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(json: &str) -> Result<Multivector, DocumentError> {
        decode(json)
    }

    #[test]
    fn encodes_sorted_terms() {
        let sig = Signature::new(3, 0).unwrap();
        let u = Multivector::from_terms(
            sig,
            FieldTag::Real,
            [
                (Blade::from_indices(&[1, 2]).unwrap(), Scalar::new(2.0, 0.0)),
                (Blade::from_indices(&[3]).unwrap(), Scalar::new(-0.5, 0.0)),
                (Blade::IDENTITY, Scalar::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(
            encode(&u),
            r#"{"p":3,"q":0,"field":"R","terms":[{"blade":[],"re":1.0,"im":0.0},{"blade":[3],"re":-0.5,"im":0.0},{"blade":[1,2],"re":2.0,"im":0.0}]}"#
        );
        assert_eq!(decode(&encode(&u)).unwrap(), u);
    }

    #[test]
    fn exact_round_trip_of_awkward_floats() {
        let sig = Signature::new(1, 1).unwrap();
        let xs = [0.1, 1.0 / 3.0, f64::MIN_POSITIVE, 5e-324, f64::MAX, -1e300, 123456789.12345679];
        for (k, x) in xs.iter().enumerate() {
            let u = Multivector::from_terms(
                sig,
                FieldTag::Complex,
                [(Blade::from_mask(k as u32 % 4), Scalar::new(*x, -*x / 7.0))],
            )
            .unwrap();
            let back = decode(&encode(&u)).unwrap();
            let (b0, c0) = u.terms().next().unwrap();
            let (b1, c1) = back.terms().next().unwrap();
            assert_eq!(b0, b1);
            assert_eq!(c0.re.to_bits(), c1.re.to_bits());
            assert_eq!(c0.im.to_bits(), c1.im.to_bits());
        }
    }

    #[test]
    fn zero_terms_dropped() {
        let u = doc(r#"{"p":1,"q":0,"field":"R","terms":[{"blade":[1],"re":0.0,"im":0.0}]}"#).unwrap();
        assert!(u.is_empty());
    }

    #[test]
    fn im_defaults_to_zero() {
        let u = doc(r#"{"p":1,"q":0,"field":"R","terms":[{"blade":[1],"re":2}]}"#).unwrap();
        assert_eq!(u.len(), 1);
    }

    #[test]
    fn rejects_invalid_documents() {
        let cases = [
            (r#"{"p":2,"q":0,"field":"R","terms":[{"blade":[2,1],"re":1,"im":0}]}"#, "strictly increasing"),
            (r#"{"p":2,"q":0,"field":"R","terms":[{"blade":[1,1],"re":1,"im":0}]}"#, "strictly increasing"),
            (r#"{"p":2,"q":0,"field":"R","terms":[{"blade":[3],"re":1,"im":0}]}"#, "out of range"),
            (r#"{"p":2,"q":0,"field":"R","terms":[{"blade":[0],"re":1,"im":0}]}"#, "out of range"),
            (r#"{"p":2,"q":0,"field":"R","terms":[{"blade":[1],"re":1,"im":1}]}"#, "requires im = 0"),
            (
                r#"{"p":2,"q":0,"field":"C","terms":[{"blade":[1],"re":1,"im":0},{"blade":[1],"re":1,"im":0}]}"#,
                "duplicate",
            ),
            (r#"{"p":0,"q":0,"field":"R","terms":[]}"#, "signature"),
            (r#"{"p":2,"q":0,"field":"Q","terms":[]}"#, "malformed"),
            (r#"{"p":2,"q":0,"field":"R","terms":[],"x":1}"#, "malformed"),
            (r#"{"p":2,"q":0,"field":"R","terms":[{"blade":[1],"re":1e999,"im":0}]}"#, "malformed"),
            (r#"{"p":2,"q":0}"#, "malformed"),
        ];
        for (json, needle) in cases {
            let e = doc(json).unwrap_err().to_string();
            assert!(e.contains(needle), "{json}: {e}");
        }
    }
}
