//! JSON form of a quotient-algebra presentation.
//!
//! ```json
//! {
//!   "variables": [{"name": "a", "degree": 1}, {"name": "b", "degree": 2}],
//!   "relations": [[[3, 0]], [[0, 2]]],
//!   "degree_cap": 8
//! }
//! ```
//!
//! Each relation is a list of exponent vectors, one per term, ordered like
//! `variables`. `degree_cap` is optional and defaults to the largest
//! relation degree plus four.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::algebra::QuotientAlgebra;
use super::polynomial::Polynomial;
use super::ring::{GradedVariable, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub variables: Vec<GradedVariable>,
    pub relations: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
}

impl Presentation {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("presentation: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn build(&self) -> Result<QuotientAlgebra> {
        let ring = PolyRing::new(self.variables.clone())?;
        let relations = self
            .relations
            .iter()
            .map(|terms| {
                let terms: Vec<&[u32]> = terms.iter().map(Vec::as_slice).collect();
                Polynomial::from_exponents(&ring, &terms)
            })
            .collect::<Result<Vec<_>>>()?;
        let cap = match self.degree_cap {
            Some(c) => c,
            None => {
                relations
                    .iter()
                    .filter_map(Polynomial::degree)
                    .max()
                    .unwrap_or(0)
                    + 4
            }
        };
        QuotientAlgebra::new(ring, relations, cap)
    }
}

impl From<&QuotientAlgebra> for Presentation {
    fn from(a: &QuotientAlgebra) -> Self {
        Presentation {
            variables: a.ring().variables().to_vec(),
            relations: a
                .relations()
                .iter()
                .map(|r| r.terms().rev().map(|m| m.exponents().to_vec()).collect())
                .collect(),
            degree_cap: Some(a.degree_cap()),
        }
    }
}
