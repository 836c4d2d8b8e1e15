use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::ring::{is_identifier, Monomial, PolyRing};

/// A polynomial with coefficients in F2, stored as its set of terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeSet<Monomial>,
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::from_monomial(ring, ring.one())
    }

    pub fn from_monomial(ring: &Arc<PolyRing>, m: Monomial) -> Self {
        let mut p = Self::zero(ring);
        p.terms.insert(m);
        p
    }

    /// Sum of the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials(ring: &Arc<PolyRing>, monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Self::zero(ring);
        for m in monomials {
            p.toggle(m);
        }
        p
    }

    pub fn from_exponents(ring: &Arc<PolyRing>, terms: &[&[u32]]) -> Result<Self> {
        let ms = terms
            .iter()
            .map(|e| ring.monomial(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_monomials(ring, ms))
    }

    pub fn variable(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::parse(format!("unknown variable `{name}`")))?;
        Ok(Self::from_monomial(ring, ring.power(i, 1)?))
    }

    /// Parses sums of products such as `x^2*y + y^3 + 1`.
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::parse("empty polynomial"));
        }
        let mut p = Self::zero(ring);
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::parse(format!("missing term in `{text}`")));
            }
            let mut exps = vec![0u32; ring.nvars()];
            let mut zero = false;
            for factor in term.split(['*', ' ']).filter(|f| !f.is_empty()) {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => {
                        let e: u32 = e
                            .trim()
                            .parse()
                            .map_err(|_| Error::parse(format!("bad exponent in `{factor}`")))?;
                        (b.trim(), e)
                    }
                    None => (factor, 1),
                };
                match base {
                    "1" => {}
                    "0" => zero = true,
                    name if is_identifier(name) => {
                        let i = ring
                            .index_of(name)
                            .ok_or_else(|| Error::parse(format!("unknown variable `{name}`")))?;
                        exps[i] = exps[i].checked_add(exp).ok_or(Error::ExponentOverflow)?;
                    }
                    other => return Err(Error::parse(format!("unexpected factor `{other}`"))),
                }
            }
            if !zero {
                p.toggle(ring.monomial(&exps)?);
            }
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.last()
    }

    /// True when all terms share one degree. The zero polynomial counts as
    /// homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<u32> {
        if self.is_homogeneous() {
            self.leading().map(Monomial::degree)
        } else {
            None
        }
    }

    pub(crate) fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<Monomial> {
        self.terms.pop_last()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::VariableMismatch);
        }
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Polynomial) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::VariableMismatch);
        }
        let mut out = Polynomial::zero(&self.ring);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.checked_mul(b)?);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.ring);
        for a in &self.terms {
            out.terms.insert(a.checked_mul(m)?);
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|m| self.ring.fmt_monomial(m))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
