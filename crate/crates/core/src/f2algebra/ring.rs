use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedVariable {
    pub name: String,
    pub degree: u32,
}

impl GradedVariable {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GradedVariable {
            name: name.into(),
            degree,
        }
    }
}

/// A graded polynomial ring over F2 with an ordered list of commuting
/// variables. The declaration order fixes the monomial order tie-break.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    variables: Vec<GradedVariable>,
}

impl PolyRing {
    pub fn new(variables: Vec<GradedVariable>) -> Result<Arc<Self>> {
        let mut seen = HashSet::new();
        for v in &variables {
            if v.degree == 0 {
                return Err(Error::InvalidPresentation(format!(
                    "variable `{}` must have positive degree",
                    v.name
                )));
            }
            if !is_identifier(&v.name) {
                return Err(Error::InvalidPresentation(format!(
                    "variable name `{}` is not an identifier",
                    v.name
                )));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        Ok(Arc::new(PolyRing { variables }))
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn with_variables(vars: &[(&str, u32)]) -> Result<Arc<Self>> {
        Self::new(
            vars.iter()
                .map(|&(n, d)| GradedVariable::new(n, d))
                .collect(),
        )
    }

    pub fn variables(&self) -> &[GradedVariable] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn one(&self) -> Monomial {
        Monomial {
            degree: 0,
            exponents: vec![0; self.nvars()].into_boxed_slice(),
        }
    }

    pub fn monomial(&self, exponents: &[u32]) -> Result<Monomial> {
        if exponents.len() != self.nvars() {
            return Err(Error::VariableMismatch);
        }
        let mut degree: u32 = 0;
        for (e, v) in exponents.iter().zip(&self.variables) {
            let d = e.checked_mul(v.degree).ok_or(Error::ExponentOverflow)?;
            degree = degree.checked_add(d).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial {
            degree,
            exponents: exponents.into(),
        })
    }

    /// `var^power` for the variable at `index`.
    pub fn power(&self, index: usize, power: u32) -> Result<Monomial> {
        let mut e = vec![0; self.nvars()];
        e[index] = power;
        self.monomial(&e)
    }

    /// All monomials of the given weighted degree, in descending monomial
    /// order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate(0, degree, &mut exps, &mut |e| {
            out.push(Monomial {
                degree,
                exponents: e.into(),
            })
        });
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    fn enumerate(&self, var: usize, remaining: u32, exps: &mut [u32], f: &mut impl FnMut(&[u32])) {
        if var == self.nvars() {
            if remaining == 0 {
                f(exps);
            }
            return;
        }
        let w = self.variables[var].degree;
        let mut e = 0;
        while e * w <= remaining {
            exps[var] = e;
            self.enumerate(var + 1, remaining - e * w, exps, f);
            e += 1;
        }
        exps[var] = 0;
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents
            .iter()
            .zip(&self.variables)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| {
                if e == 1 {
                    v.name.clone()
                } else {
                    format!("{}^{}", v.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector together with its cached weighted degree.
///
/// The derived ordering compares degree first and then exponents
/// lexicographically, which is the graded order with the first declared
/// variable largest.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Box<[u32]>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exponents = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Box<[u32]>>>()?;
        Ok(Monomial {
            degree: self
                .degree
                .checked_add(other.degree)
                .ok_or(Error::ExponentOverflow)?,
            exponents,
        })
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exponents: self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial, ring: &PolyRing) -> Monomial {
        let e: Vec<u32> = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        ring.monomial(&e)
            .expect("lcm of valid monomials stays within degree bounds")
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(other.exponents.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drops one factor of variable `index`; `None` if it does not occur.
    pub(crate) fn without_one(&self, index: usize, var_degree: u32) -> Option<Monomial> {
        if self.exponents[index] == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents[index] -= 1;
        Some(Monomial {
            degree: self.degree - var_degree,
            exponents,
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents)
    }
}
