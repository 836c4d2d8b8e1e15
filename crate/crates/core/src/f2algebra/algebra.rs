use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

use super::groebner::{buchberger, reduce};
use super::polynomial::Polynomial;
use super::ring::{Monomial, PolyRing};

/// Graded-commutative quotient `F2[vars] / (relations)` with its reduced
/// Gröbner basis and the standard monomials materialized up to a degree cap.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    ring: Arc<PolyRing>,
    relations: Vec<Polynomial>,
    groebner: Vec<Polynomial>,
    degree_cap: u32,
    standard: Vec<Vec<Monomial>>,
}

/// Answer of a nilpotency query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nilpotency {
    /// Largest `n` with `w^n != 0`.
    Index(u32),
    /// `w^n` was still nonzero for every `n` whose degree fits in the cap.
    AtLeast { lower_bound: u32, cap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub top: u32,
    pub series: Vec<usize>,
    pub palindromic: bool,
    pub top_dimension: usize,
    pub holds: bool,
}

impl QuotientAlgebra {
    pub fn new(ring: Arc<PolyRing>, relations: Vec<Polynomial>, degree_cap: u32) -> Result<Self> {
        for r in &relations {
            if **r.ring() != *ring {
                return Err(Error::VariableMismatch);
            }
            if !r.is_homogeneous() {
                return Err(Error::InvalidPresentation(format!(
                    "relation `{r}` is not homogeneous"
                )));
            }
        }
        let groebner = buchberger(&relations, None)?;
        let mut alg = QuotientAlgebra {
            ring,
            relations,
            groebner,
            degree_cap,
            standard: Vec::new(),
        };
        alg.standard = (0..=degree_cap)
            .map(|d| alg.compute_standard(d))
            .collect();
        Ok(alg)
    }

    /// Shorthand for monomial-ideal presentations: one pure power per entry
    /// of `powers`, given as `(variable index, exponent)`.
    pub fn truncated_polynomial(
        ring: Arc<PolyRing>,
        powers: &[(usize, u32)],
        degree_cap: u32,
    ) -> Result<Self> {
        let relations = powers
            .iter()
            .map(|&(i, e)| Ok(Polynomial::from_monomial(&ring, ring.power(i, e)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, relations, degree_cap)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.groebner
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Same presentation with standard monomials materialized to a new cap.
    pub fn with_degree_cap(&self, degree_cap: u32) -> Self {
        let mut alg = QuotientAlgebra {
            ring: Arc::clone(&self.ring),
            relations: self.relations.clone(),
            groebner: self.groebner.clone(),
            degree_cap,
            standard: Vec::new(),
        };
        alg.standard = (0..=degree_cap)
            .map(|d| alg.compute_standard(d))
            .collect();
        alg
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self
            .groebner
            .iter()
            .any(|g| g.leading().expect("basis elements are nonzero").divides(m))
    }

    fn compute_standard(&self, degree: u32) -> Vec<Monomial> {
        let mut ms: Vec<Monomial> = self
            .ring
            .monomials_of_degree(degree)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect();
        ms.sort();
        ms
    }

    /// Standard monomials of one degree, ascending. Degrees beyond the cap
    /// are computed on demand.
    pub fn standard_monomials(&self, degree: u32) -> Vec<Monomial> {
        match self.standard.get(degree as usize) {
            Some(ms) => ms.clone(),
            None => self.compute_standard(degree),
        }
    }

    pub fn dimension_in_degree(&self, degree: u32) -> usize {
        match self.standard.get(degree as usize) {
            Some(ms) => ms.len(),
            None => self.compute_standard(degree).len(),
        }
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if **p.ring() != *self.ring {
            return Err(Error::VariableMismatch);
        }
        reduce(p, &self.groebner)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Dimensions of degrees `0..=cap`; `cap` may not exceed the degree cap.
    pub fn poincare_series(&self, cap: u32) -> Result<Vec<usize>> {
        if cap > self.degree_cap {
            return Err(Error::domain(format!(
                "series requested through degree {cap} but the algebra is materialized only through {}",
                self.degree_cap
            )));
        }
        Ok(self.series_through(cap))
    }

    pub(crate) fn series_through(&self, top: u32) -> Vec<usize> {
        (0..=top).map(|d| self.dimension_in_degree(d)).collect()
    }

    /// For each variable, the least `e` with `var^e` a leading monomial.
    fn pure_power_bounds(&self) -> Vec<Option<u32>> {
        (0..self.ring.nvars())
            .map(|i| {
                self.groebner
                    .iter()
                    .filter_map(|g| {
                        let lt = g.leading().expect("nonzero");
                        let e = lt.exponents();
                        let pure = e.iter().enumerate().all(|(j, &x)| j == i || x == 0);
                        (pure && e[i] > 0).then_some(e[i])
                    })
                    .min()
            })
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.pure_power_bounds().iter().all(Option::is_some)
    }

    /// Every standard monomial, ascending, when the quotient is finite.
    pub fn all_standard_monomials(&self) -> Option<Vec<Monomial>> {
        let bounds: Vec<u32> = self
            .pure_power_bounds()
            .into_iter()
            .collect::<Option<Vec<_>>>()?;
        let mut out = Vec::new();
        let mut exps = vec![0u32; bounds.len()];
        loop {
            let m = self
                .ring
                .monomial(&exps)
                .expect("box monomials are bounded by relation exponents");
            if self.is_standard(&m) {
                out.push(m);
            }
            // odometer over the exponent box
            let mut i = 0;
            loop {
                if i == exps.len() {
                    out.sort();
                    return Some(out);
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    pub fn total_dimension(&self) -> Option<usize> {
        self.all_standard_monomials().map(|v| v.len())
    }

    /// Largest degree carrying a nonzero class, when finite.
    pub fn top_degree(&self) -> Option<u32> {
        self.all_standard_monomials()
            .map(|v| v.iter().map(Monomial::degree).max().unwrap_or(0))
    }

    /// Largest `n` with `w^n` nonzero in the quotient.
    ///
    /// For a finite quotient the answer is exact. Otherwise powers are
    /// examined while their degree stays within the degree cap, and a lower
    /// bound is reported if none vanished.
    pub fn nilpotency_index(&self, w: &Polynomial) -> Result<Nilpotency> {
        let w = self.normal_form(w)?;
        if w.is_zero() {
            return Ok(Nilpotency::Index(0));
        }
        let deg = match w.degree() {
            Some(d) if d > 0 => d,
            _ => {
                return Err(Error::domain(
                    "nilpotency index needs a homogeneous class of positive degree",
                ))
            }
        };
        let limit = self.top_degree().unwrap_or(self.degree_cap);
        let mut power = w.clone();
        let mut n = 1u32;
        loop {
            let next_degree = deg.saturating_mul(n + 1);
            if next_degree > limit {
                if self.is_finite() {
                    return Ok(Nilpotency::Index(n));
                }
                return Ok(Nilpotency::AtLeast {
                    lower_bound: n,
                    cap: self.degree_cap,
                });
            }
            power = self.normal_form(&power.mul(&w)?)?;
            if power.is_zero() {
                return Ok(Nilpotency::Index(n));
            }
            n += 1;
        }
    }

    /// Palindromic series on `[0, top]` with a one-dimensional top degree.
    pub fn poincare_duality_check(&self, top: u32) -> DualityReport {
        let series = self.series_through(top);
        let palindromic = series.iter().eq(series.iter().rev());
        let top_dimension = *series.last().expect("series has degree 0");
        DualityReport {
            top,
            palindromic,
            top_dimension,
            holds: palindromic && top_dimension == 1,
            series,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(vars: &[(&str, u32)], rels: &[&str], cap: u32) -> QuotientAlgebra {
        let r = PolyRing::with_variables(vars).unwrap();
        let rels = rels
            .iter()
            .map(|s| Polynomial::parse(&r, s).unwrap())
            .collect();
        QuotientAlgebra::new(r, rels, cap).unwrap()
    }

    fn poly(a: &QuotientAlgebra, s: &str) -> Polynomial {
        Polynomial::parse(a.ring(), s).unwrap()
    }

    #[test]
    fn normal_forms_in_truncated_algebra() {
        let a = alg(&[("a", 1), ("b", 2)], &["a^3", "b^2"], 6);
        assert!(a.normal_form(&poly(&a, "a^3")).unwrap().is_zero());
        assert_eq!(a.normal_form(&poly(&a, "a^2*b")).unwrap(), poly(&a, "a^2*b"));
    }

    #[test]
    fn normal_form_against_non_monomial_basis() {
        let a = alg(&[("x", 1), ("y", 1)], &["x^2 + x*y", "y^3"], 6);
        assert_eq!(a.normal_form(&poly(&a, "x^2")).unwrap(), poly(&a, "x*y"));
    }

    #[test]
    fn series_examples() {
        let a = alg(&[("a", 1), ("b", 2)], &["a^3", "b^2"], 6);
        assert_eq!(a.poincare_series(4).unwrap(), vec![1, 1, 2, 1, 1]);
        let b = alg(&[("x", 1), ("y", 2), ("z", 2)], &["x^2", "y^2", "z^2"], 6);
        assert_eq!(b.poincare_series(5).unwrap(), vec![1, 1, 2, 2, 1, 1]);
        let trivial = alg(&[], &[], 0);
        assert_eq!(trivial.poincare_series(0).unwrap(), vec![1]);
        assert_eq!(trivial.total_dimension(), Some(1));
        assert!(a.poincare_series(7).is_err());
    }

    #[test]
    fn nilpotency_examples() {
        let a = alg(&[("a", 1), ("b", 2)], &["a^3", "b^2"], 6);
        assert_eq!(a.nilpotency_index(&poly(&a, "a")).unwrap(), Nilpotency::Index(2));
        assert_eq!(a.nilpotency_index(&poly(&a, "0")).unwrap(), Nilpotency::Index(0));
        let t = alg(&[("t", 1)], &["t^6"], 9);
        assert_eq!(t.nilpotency_index(&poly(&t, "t")).unwrap(), Nilpotency::Index(5));
        let x = alg(&[("x", 1), ("y", 2), ("z", 2)], &["x^2", "y^2", "z^3"], 11);
        assert_eq!(x.nilpotency_index(&poly(&x, "x")).unwrap(), Nilpotency::Index(1));
        assert!(x.nilpotency_index(&poly(&x, "x + y")).is_err());
    }

    #[test]
    fn non_nilpotent_class_reports_lower_bound() {
        let a = alg(&[("t", 1)], &[], 6);
        assert_eq!(
            a.nilpotency_index(&poly(&a, "t")).unwrap(),
            Nilpotency::AtLeast { lower_bound: 6, cap: 6 }
        );
    }

    #[test]
    fn duality_examples() {
        let p31 = alg(&[("a", 1), ("b", 2)], &["a^4", "b^2"], 9);
        let r = p31.poincare_duality_check(5);
        assert!(r.holds);
        assert_eq!(r.series, vec![1, 1, 2, 2, 1, 1]);
        let p21 = alg(&[("a", 1), ("b", 2)], &["a^3", "b^2"], 8);
        let r = p21.poincare_duality_check(4);
        assert!(r.holds);
        assert_eq!(r.series, vec![1, 1, 2, 1, 1]);
        let x2 = alg(&[("x", 1)], &["x^2"], 4);
        assert!(!x2.poincare_duality_check(2).holds);
    }

    #[test]
    fn finiteness_and_top_degree() {
        let a = alg(&[("x", 1), ("y", 1)], &["x^2 + x*y", "y^3"], 6);
        assert!(a.is_finite());
        assert_eq!(a.total_dimension(), Some(6));
        assert_eq!(a.top_degree(), Some(3));
        let b = alg(&[("x", 1), ("y", 1)], &["x*y"], 6);
        assert!(!b.is_finite());
        assert_eq!(b.total_dimension(), None);
    }

    #[test]
    fn rejects_inhomogeneous_relations() {
        let r = PolyRing::with_variables(&[("x", 1), ("y", 2)]).unwrap();
        let rel = Polynomial::parse(&r, "x + y").unwrap();
        assert!(QuotientAlgebra::new(r, vec![rel], 4).is_err());
    }
}
