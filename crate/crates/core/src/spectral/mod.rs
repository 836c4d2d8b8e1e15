//! First-quadrant cohomological Leray–Serre spectral sequences over F2 with
//! simple coefficients.
//!
//! `E_2^{p,q} = H^p(base) (x) H^q(fiber)`. Differentials are determined by
//! transgressions of fiber generators: `d_r(1 (x) u) = tau (x) 1` with
//! `r = deg u + 1`, extended as a derivation that kills base classes. On a
//! tensor monomial `B (x) F`,
//!
//! ```text
//! d_r(B (x) F) = sum over generators u_i transgressing at page r with odd
//!                exponent e_i in F of  (B * tau_i) (x) F / u_i
//! ```
//!
//! Each cell tracks the cycles `Z_r` and boundaries `B_r` as subspaces of its
//! E2 tensor basis, so `E_r = Z_r / B_r` and representatives are always
//! honest E2 vectors.

mod cases;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2algebra::{Monomial, Polynomial, QuotientAlgebra};
use crate::linalg::{F2Matrix, F2Vec, Reducer, Span};

pub use cases::{
    case1, case1_spec, case2, case2_spec, compare_presentation, example2_algebra,
    presentation1, presentation2, presentation2_ring, regular_sequence_dimension, CaseRun,
    Comparison,
};

#[derive(Debug, Clone)]
pub struct Transgression {
    pub generator: String,
    pub page: u32,
    pub target: Polynomial,
}

/// Declares `d_page(1 (x) fiber_monomial) = 0`, overriding the derivation.
#[derive(Debug, Clone)]
pub struct ForcedZero {
    pub fiber_monomial: Monomial,
    pub page: u32,
}

#[derive(Debug, Clone)]
pub struct FibrationSpec {
    base: QuotientAlgebra,
    fiber: QuotientAlgebra,
    transgressions: Vec<Transgression>,
    forced_zero: Vec<ForcedZero>,
    generator_index: Vec<usize>,
}

impl FibrationSpec {
    pub fn new(
        base: QuotientAlgebra,
        fiber: QuotientAlgebra,
        transgressions: Vec<Transgression>,
        forced_zero: Vec<ForcedZero>,
    ) -> Result<Self> {
        if !fiber.is_finite() {
            return Err(Error::domain("the fiber algebra must be finite-dimensional"));
        }
        let mut generator_index = Vec::new();
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::new();
        for t in transgressions {
            let i = fiber.ring().index_of(&t.generator).ok_or_else(|| {
                Error::domain(format!("`{}` is not a fiber generator", t.generator))
            })?;
            if !seen.insert(i) {
                return Err(Error::domain(format!(
                    "generator `{}` transgresses twice",
                    t.generator
                )));
            }
            let degree = fiber.ring().variables()[i].degree;
            if t.page != degree + 1 {
                return Err(Error::domain(format!(
                    "`{}` has degree {degree} and must transgress at page {}, not {}",
                    t.generator,
                    degree + 1,
                    t.page
                )));
            }
            if **t.target.ring() != **base.ring() {
                return Err(Error::VariableMismatch);
            }
            if !t.target.is_zero() && t.target.degree() != Some(degree + 1) {
                return Err(Error::domain(format!(
                    "target of `{}` must be homogeneous of degree {}",
                    t.generator,
                    degree + 1
                )));
            }
            if !t.target.is_homogeneous() {
                return Err(Error::domain(format!(
                    "target of `{}` is not homogeneous",
                    t.generator
                )));
            }
            let target = base.normal_form(&t.target)?;
            generator_index.push(i);
            normalized.push(Transgression { target, ..t });
        }
        for z in &forced_zero {
            if z.fiber_monomial.exponents().len() != fiber.ring().nvars() {
                return Err(Error::VariableMismatch);
            }
        }
        Ok(FibrationSpec {
            base,
            fiber,
            transgressions: normalized,
            forced_zero,
            generator_index,
        })
    }

    pub fn base(&self) -> &QuotientAlgebra {
        &self.base
    }

    pub fn fiber(&self) -> &QuotientAlgebra {
        &self.fiber
    }

    pub fn transgressions(&self) -> &[Transgression] {
        &self.transgressions
    }

    pub fn forced_zero(&self) -> &[ForcedZero] {
        &self.forced_zero
    }

    /// Largest transgression page, or 2 when there are none.
    pub fn max_page(&self) -> u32 {
        self.transgressions.iter().map(|t| t.page).max().unwrap_or(2)
    }

    pub fn fiber_top_degree(&self) -> u32 {
        self.fiber.top_degree().unwrap_or(0)
    }

    /// Smallest admissible total-degree cap.
    pub fn minimum_cap(&self) -> u32 {
        self.fiber_top_degree() + self.max_page() + 1
    }

    fn is_forced_zero(&self, page: u32, f: &Monomial) -> bool {
        self.forced_zero
            .iter()
            .any(|z| z.page == page && z.fiber_monomial == *f)
    }

    /// `D_r(B (x) F)` as a set of tensor monomials; `F` need not be standard.
    fn derivation(&self, page: u32, b: &Monomial, f: &Monomial) -> Result<BTreeSet<(Monomial, Monomial)>> {
        let mut out = BTreeSet::new();
        if self.is_forced_zero(page, f) {
            return Ok(out);
        }
        for (t, &i) in self.transgressions.iter().zip(&self.generator_index) {
            if t.page != page || f.exponents()[i].is_multiple_of(2) {
                continue;
            }
            let var_degree = self.fiber.ring().variables()[i].degree;
            let rest = f
                .without_one(i, var_degree)
                .expect("odd exponent is positive");
            let base_part = self.base.normal_form(&t.target.mul_monomial(b)?)?;
            let fiber_part = self
                .fiber
                .normal_form(&Polynomial::from_monomial(self.fiber.ring(), rest))?;
            for bm in base_part.terms() {
                for fm in fiber_part.terms() {
                    let key = (bm.clone(), fm.clone());
                    if !out.remove(&key) {
                        out.insert(key);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The derivation must kill every fiber relation, otherwise it does not
    /// descend to the quotient.
    fn check_well_defined(&self) -> Result<()> {
        let one = self.base.ring().one();
        let mut pages: Vec<u32> = self.transgressions.iter().map(|t| t.page).collect();
        pages.sort_unstable();
        pages.dedup();
        for &r in &pages {
            for g in self.fiber.groebner_basis() {
                let mut total = BTreeSet::new();
                for term in g.terms() {
                    for key in self.derivation(r, &one, term)? {
                        if !total.remove(&key) {
                            total.insert(key);
                        }
                    }
                }
                if let Some((b, f)) = total.iter().next() {
                    return Err(Error::InconsistentDifferential {
                        page: r,
                        p: b.degree(),
                        q: f.degree(),
                        reason: format!(
                            "d_{r} does not vanish on the fiber relation {g}; the derivation \
                             is not well defined on the quotient"
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Dimension of one cell of a page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageCell {
    pub p: u32,
    pub q: u32,
    pub dim: usize,
    /// Leading tensor label of each basis representative.
    #[serde(skip)]
    pub basis: Vec<String>,
}

/// `d_r` from `source` to `target` in the representative bases of `E_r`.
#[derive(Debug, Clone)]
pub struct DifferentialBlock {
    pub source: (u32, u32),
    pub target: (u32, u32),
    pub matrix: F2Matrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct BigradedPage {
    pub page: u32,
    pub cells: Vec<PageCell>,
    /// Total-degree series through `exact_through`.
    pub series: Vec<usize>,
    #[serde(skip)]
    pub exact_through: u32,
    #[serde(skip)]
    pub differentials: Vec<DifferentialBlock>,
}

impl BigradedPage {
    pub fn dim(&self, p: u32, q: u32) -> usize {
        self.cells
            .iter()
            .find(|c| c.p == p && c.q == q)
            .map_or(0, |c| c.dim)
    }

    pub fn total_degree(&self, d: u32) -> usize {
        self.cells
            .iter()
            .filter(|c| c.p + c.q == d)
            .map(|c| c.dim)
            .sum()
    }

    /// `sum_{p+q=d} (-1)^p dim E^{p,q}`.
    pub fn alternating_sum(&self, d: u32) -> i64 {
        self.cells
            .iter()
            .filter(|c| c.p + c.q == d)
            .map(|c| if c.p % 2 == 0 { c.dim as i64 } else { -(c.dim as i64) })
            .sum()
    }

    pub fn has_nonzero_differential(&self) -> bool {
        self.differentials.iter().any(|b| !b.matrix.is_zero())
    }

    /// Total rank of `d_r` between total degrees `d` and `d + 1`.
    pub fn differential_rank_from(&self, d: u32) -> usize {
        self.differentials
            .iter()
            .filter(|b| b.source.0 + b.source.1 == d)
            .map(|b| b.matrix.rank())
            .sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralRun {
    pub cap: u32,
    /// Pages `E_2, E_3, ..`; the last one is `E_infinity` through `exact_through`.
    pub pages: Vec<BigradedPage>,
    /// First page from which every differential vanishes.
    pub degeneration_page: u32,
    pub exact_through: u32,
}

impl SpectralRun {
    pub fn e2(&self) -> &BigradedPage {
        &self.pages[0]
    }

    pub fn final_page(&self) -> &BigradedPage {
        self.pages.last().expect("at least E2")
    }

    pub fn page(&self, r: u32) -> Option<&BigradedPage> {
        self.pages.iter().find(|p| p.page == r)
    }

    /// `E_infinity` series through `top`.
    pub fn series_through(&self, top: u32) -> Result<Vec<usize>> {
        if top > self.exact_through {
            return Err(Error::domain(format!(
                "series requested through {top}, computed exactly only through {}",
                self.exact_through
            )));
        }
        Ok(self.final_page().series[..=top as usize].to_vec())
    }
}

struct Cell {
    labels: Vec<(Monomial, Monomial)>,
    index: HashMap<(Monomial, Monomial), usize>,
    z: Span,
    b: Span,
}

impl Cell {
    fn len(&self) -> usize {
        self.labels.len()
    }

    fn reps(&self) -> Vec<F2Vec> {
        let mut quotient = self.b.clone();
        self.z.basis().filter(|v| quotient.insert(v)).cloned().collect()
    }
}

fn label(spec: &FibrationSpec, b: &Monomial, f: &Monomial) -> String {
    format!(
        "{} ⊗ {}",
        spec.base.ring().fmt_monomial(b),
        spec.fiber.ring().fmt_monomial(f)
    )
}

fn build_cells(spec: &FibrationSpec, cap: u32) -> BTreeMap<(u32, u32), Cell> {
    let top = spec.fiber_top_degree();
    let mut cells = BTreeMap::new();
    for p in 0..=cap {
        let base = spec.base.standard_monomials(p);
        for q in 0..=top.min(cap - p) {
            let fiber = spec.fiber.standard_monomials(q);
            let mut labels: Vec<(Monomial, Monomial)> = base
                .iter()
                .flat_map(|b| fiber.iter().map(move |f| (b.clone(), f.clone())))
                .collect();
            labels.sort();
            let index = labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), i))
                .collect();
            let n = labels.len();
            let mut z = Span::new(n);
            for i in 0..n {
                z.insert(&F2Vec::unit(n, i));
            }
            cells.insert(
                (p, q),
                Cell {
                    labels,
                    index,
                    z,
                    b: Span::new(n),
                },
            );
        }
    }
    cells
}

fn snapshot(
    spec: &FibrationSpec,
    page: u32,
    cells: &BTreeMap<(u32, u32), Cell>,
    exact_through: u32,
    differentials: Vec<DifferentialBlock>,
) -> BigradedPage {
    let mut out = Vec::new();
    let mut series = vec![0usize; exact_through as usize + 1];
    for (&(p, q), cell) in cells {
        let reps = cell.reps();
        if reps.is_empty() {
            continue;
        }
        if p + q <= exact_through {
            series[(p + q) as usize] += reps.len();
        }
        let basis = reps
            .iter()
            .map(|v| {
                let (b, f) = &cell.labels[v.first_one().expect("nonzero rep")];
                label(spec, b, f)
            })
            .collect();
        out.push(PageCell {
            p,
            q,
            dim: reps.len(),
            basis,
        });
    }
    BigradedPage {
        page,
        cells: out,
        series,
        exact_through,
        differentials,
    }
}

/// The E2 page through total degree `cap`.
pub fn build_e2(spec: &FibrationSpec, cap: u32) -> Result<BigradedPage> {
    check_cap(spec, cap)?;
    let cells = build_cells(spec, cap);
    Ok(snapshot(spec, 2, &cells, cap, Vec::new()))
}

fn check_cap(spec: &FibrationSpec, cap: u32) -> Result<()> {
    if cap < spec.minimum_cap() {
        return Err(Error::domain(format!(
            "cap {cap} is too small: need at least fiber top degree {} + last page {} + 1 = {}",
            spec.fiber_top_degree(),
            spec.max_page(),
            spec.minimum_cap()
        )));
    }
    Ok(())
}

struct CellStep {
    key: (u32, u32),
    reps: Vec<F2Vec>,
    rep_images: Vec<F2Vec>,
    boundary_images: Vec<F2Vec>,
}

/// Applies `D_r` to a vector in the E2 basis of `source`, landing in `target`.
fn apply(
    spec: &FibrationSpec,
    page: u32,
    source: &Cell,
    target: &Cell,
    v: &F2Vec,
) -> Result<F2Vec> {
    let mut out = F2Vec::zeros(target.len());
    for i in v.ones() {
        let (b, f) = &source.labels[i];
        for key in spec.derivation(page, b, f)? {
            let j = target.index.get(&key).ok_or_else(|| Error::InconsistentDifferential {
                page,
                p: key.0.degree(),
                q: key.1.degree(),
                reason: "image term lies outside the target cell".into(),
            })?;
            out.flip(*j);
        }
    }
    Ok(out)
}

/// Runs the spectral sequence through total degree `cap`.
///
/// Every cell of total degree below `cap` is exact on every page; only the
/// outgoing differentials of the top diagonal are truncated.
pub fn run(spec: &FibrationSpec, cap: u32) -> Result<SpectralRun> {
    check_cap(spec, cap)?;
    spec.check_well_defined()?;
    let exact_through = cap - 1;
    let mut cells = build_cells(spec, cap);
    let mut pages = Vec::new();
    let mut last_nonzero = None;
    for r in 2..=spec.max_page() {
        let active = spec.transgressions.iter().any(|t| t.page == r);
        if !active {
            pages.push(snapshot(spec, r, &cells, exact_through, Vec::new()));
            continue;
        }
        let targets: Vec<((u32, u32), (u32, u32))> = cells
            .keys()
            .filter_map(|&(p, q)| {
                let t = (p + r, (q + 1).checked_sub(r)?);
                (t.0 + t.1 <= cap && cells.contains_key(&t)).then_some(((p, q), t))
            })
            .collect();
        let steps: Vec<CellStep> = targets
            .par_iter()
            .map(|&(s, t)| -> Result<CellStep> {
                let source = &cells[&s];
                let target = &cells[&t];
                let reps = source.reps();
                let rep_images = reps
                    .iter()
                    .map(|v| apply(spec, r, source, target, v))
                    .collect::<Result<Vec<_>>>()?;
                let boundary_images = source
                    .b
                    .basis()
                    .map(|v| apply(spec, r, source, target, v))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CellStep {
                    key: s,
                    reps,
                    rep_images,
                    boundary_images,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut blocks = Vec::new();
        let mut new_z: BTreeMap<(u32, u32), Span> = BTreeMap::new();
        let mut new_b: BTreeMap<(u32, u32), Vec<F2Vec>> = BTreeMap::new();
        for (step, &(_, t)) in steps.iter().zip(&targets) {
            let (p, q) = step.key;
            let target = &cells[&t];
            let target_reps = target.reps();
            let mut reducer = Reducer::new(target.len(), target_reps.len());
            for v in target.b.basis() {
                reducer.insert_tagged(v.clone(), F2Vec::zeros(target_reps.len()));
            }
            for (i, v) in target_reps.iter().enumerate() {
                reducer.insert_tagged(v.clone(), F2Vec::unit(target_reps.len(), i));
            }
            for img in &step.boundary_images {
                let (residue, tag) = reducer.reduce(img);
                if !residue.is_zero() || !tag.is_zero() {
                    return Err(Error::InconsistentDifferential {
                        page: r,
                        p,
                        q,
                        reason: format!("d_{r} sends a boundary to a nonzero class"),
                    });
                }
            }
            let mut columns = Vec::new();
            for img in &step.rep_images {
                let (residue, tag) = reducer.reduce(img);
                if !residue.is_zero() {
                    return Err(Error::InconsistentDifferential {
                        page: r,
                        p,
                        q,
                        reason: format!("d_{r} sends a cycle outside the cycles of E_{r}"),
                    });
                }
                columns.push(tag);
            }
            let matrix = F2Matrix::from_columns(target_reps.len(), &columns);
            let mut z = cells[&step.key].b.clone();
            for combo in matrix.kernel() {
                let mut v = F2Vec::zeros(cells[&step.key].len());
                for i in combo.ones() {
                    v.add_assign(&step.reps[i]);
                }
                z.insert(&v);
            }
            new_z.insert(step.key, z);
            new_b.entry(t).or_default().extend(step.rep_images.iter().cloned());
            blocks.push(DifferentialBlock {
                source: step.key,
                target: t,
                matrix,
            });
        }

        for first in &blocks {
            if let Some(second) = blocks.iter().find(|b| b.source == first.target) {
                if !second.matrix.mul(&first.matrix).is_zero() {
                    return Err(Error::InconsistentDifferential {
                        page: r,
                        p: first.source.0,
                        q: first.source.1,
                        reason: format!("d_{r} composed with itself is nonzero"),
                    });
                }
            }
        }
        if blocks
            .iter()
            .any(|b| b.source.0 + b.source.1 < cap && !b.matrix.is_zero())
        {
            last_nonzero = Some(r);
        }
        pages.push(snapshot(spec, r, &cells, exact_through, blocks));

        for (key, z) in new_z {
            cells.get_mut(&key).expect("cell exists").z = z;
        }
        for (key, images) in new_b {
            let cell = cells.get_mut(&key).expect("cell exists");
            for v in images {
                cell.b.insert(&v);
            }
        }
    }
    pages.push(snapshot(
        spec,
        spec.max_page() + 1,
        &cells,
        exact_through,
        Vec::new(),
    ));
    Ok(SpectralRun {
        cap,
        pages,
        degeneration_page: last_nonzero.map_or(2, |r| r + 1),
        exact_through,
    })
}
