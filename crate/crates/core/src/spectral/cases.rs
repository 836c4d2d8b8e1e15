//! Borel fibrations for free involutions on `P(m, n)` with trivial action on
//! mod-2 cohomology, and the algebras they are compared against.
//!
//! Case 1: `P(m, n) -> M -> RP^infinity`, `d_2(1 (x) a) = t^2 (x) 1`, `m` odd.
//!
//! Case 2: `S^m x CP^n -> M -> B(Z2 x Z2)` with fiber classes `c` (degree
//! `m`) and `d` (degree 2), `d_3(1 (x) d) = g`, `d_{m+1}(1 (x) c) = f` and
//! `d_5(1 (x) d^2) = 0`, `n` odd.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2algebra::{PolyRing, Polynomial, QuotientAlgebra};
use crate::spaces::dold_cohomology;

use super::{run, FibrationSpec, ForcedZero, SpectralRun, Transgression};

#[derive(Debug, Clone, Serialize)]
pub struct CaseRun {
    pub run: SpectralRun,
    /// Manifold dimension `m + 2n`.
    pub dimension: u32,
    /// `E_infinity` series through `dimension`.
    pub series: Vec<usize>,
    pub total_dimension: usize,
    /// Case 2 only: whether `f, g` is a regular sequence in `F2[x, y]`.
    pub regular_sequence: Option<bool>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub equal: bool,
    pub first_mismatch: Option<u32>,
    pub expected: Vec<usize>,
    pub observed: Vec<usize>,
}

fn require_odd(name: &str, value: u32) -> Result<()> {
    if value.is_multiple_of(2) {
        return Err(Error::domain(format!("{name} must be odd, got {value}")));
    }
    Ok(())
}

fn polynomial_ring(vars: &[(&str, u32)], cap: u32) -> Result<QuotientAlgebra> {
    QuotientAlgebra::new(PolyRing::with_variables(vars)?, Vec::new(), cap)
}

fn default_cap(spec: &FibrationSpec, dimension: u32) -> u32 {
    (dimension + spec.max_page() + 1).max(spec.minimum_cap())
}

fn finish(
    spec: &FibrationSpec,
    dimension: u32,
    cap: Option<u32>,
    regular_sequence: Option<bool>,
    warnings: Vec<String>,
) -> Result<CaseRun> {
    let cap = cap.unwrap_or_else(|| default_cap(spec, dimension));
    if cap <= dimension {
        return Err(Error::domain(format!(
            "cap {cap} must exceed the manifold dimension {dimension}"
        )));
    }
    let run = run(spec, cap)?;
    let series = run.series_through(dimension)?;
    Ok(CaseRun {
        total_dimension: series.iter().sum(),
        run,
        dimension,
        series,
        regular_sequence,
        warnings,
    })
}

pub fn case1_spec(m: u32, n: u32) -> Result<FibrationSpec> {
    require_odd("m", m)?;
    let base = polynomial_ring(&[("t", 1)], m + 2 * n + 4)?;
    let target = Polynomial::parse(base.ring(), "t^2")?;
    FibrationSpec::new(
        base,
        dold_cohomology(m, n)?,
        vec![Transgression {
            generator: "a".into(),
            page: 2,
            target,
        }],
        Vec::new(),
    )
}

pub fn case1(m: u32, n: u32, cap: Option<u32>) -> Result<CaseRun> {
    let spec = case1_spec(m, n)?;
    finish(&spec, m + 2 * n, cap, None, Vec::new())
}

fn f_and_g(
    ring: &std::sync::Arc<PolyRing>,
    m: u32,
    alpha: [bool; 2],
    beta: [bool; 2],
) -> Result<(Polynomial, Polynomial)> {
    let (x, y) = (
        ring.index_of("x").expect("x"),
        ring.index_of("y").expect("y"),
    );
    let mono = |ex: u32, ey: u32| -> Result<Polynomial> {
        let mut e = vec![0u32; ring.nvars()];
        e[x] = ex;
        e[y] = ey;
        Ok(Polynomial::from_monomial(ring, ring.monomial(&e)?))
    };
    let mut f = mono(m + 1, 0)?;
    if alpha[0] {
        f = f.add(&mono(m, 1)?)?;
    }
    if alpha[1] {
        f = f.add(&mono(m - 1, 2)?)?;
    }
    let mut g = mono(0, 3)?;
    if beta[0] {
        g = g.add(&mono(1, 2)?)?;
    }
    if beta[1] {
        g = g.add(&mono(2, 1)?)?;
    }
    Ok((f, g))
}

pub fn case2_spec(m: u32, n: u32, alpha: [bool; 2], beta: [bool; 2]) -> Result<FibrationSpec> {
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    require_odd("n", n)?;
    let base = polynomial_ring(&[("x", 1), ("y", 1)], m + 2 * n + 4)?;
    let (f, g) = f_and_g(base.ring(), m, alpha, beta)?;
    let fiber_ring = PolyRing::with_variables(&[("c", m), ("d", 2)])?;
    let fiber = QuotientAlgebra::truncated_polynomial(
        fiber_ring.clone(),
        &[(0, 2), (1, n + 1)],
        m + 2 * n + 4,
    )?;
    FibrationSpec::new(
        base,
        fiber,
        vec![
            Transgression {
                generator: "d".into(),
                page: 3,
                target: g,
            },
            Transgression {
                generator: "c".into(),
                page: m + 1,
                target: f,
            },
        ],
        vec![ForcedZero {
            fiber_monomial: fiber_ring.power(1, 2)?,
            page: 5,
        }],
    )
}

/// `dim F2[x, y] / (f, g)` when finite. It equals `3(m + 1)` exactly when
/// `f, g` is a regular sequence.
pub fn regular_sequence_dimension(m: u32, alpha: [bool; 2], beta: [bool; 2]) -> Result<Option<usize>> {
    let ring = PolyRing::with_variables(&[("x", 1), ("y", 1)])?;
    let (f, g) = f_and_g(&ring, m, alpha, beta)?;
    let a = QuotientAlgebra::new(ring, vec![f, g], m + 6)?;
    Ok(a.total_dimension())
}

/// `h` is not used by the spectral sequence; it enters only through
/// [`presentation2`].
pub fn case2(
    m: u32,
    n: u32,
    alpha: [bool; 2],
    beta: [bool; 2],
    cap: Option<u32>,
) -> Result<CaseRun> {
    let spec = case2_spec(m, n, alpha, beta)?;
    let dim = regular_sequence_dimension(m, alpha, beta)?;
    let regular = dim == Some(3 * (m as usize + 1));
    let mut warnings = Vec::new();
    if !regular {
        warnings.push(format!(
            "f and g do not form a regular sequence (dim F2[x,y]/(f,g) = {}); E_infinity is \
             not finite and need not match the presentation",
            dim.map_or_else(|| "infinite".to_string(), |d| d.to_string())
        ));
    }
    finish(&spec, m + 2 * n, cap, Some(regular), warnings)
}

/// `F2[x, y, z] / (x^2, y^{(m+1)/2}, z^{n+1})`, degrees 1, 2, 2; `m` odd.
pub fn presentation1(m: u32, n: u32) -> Result<QuotientAlgebra> {
    require_odd("m", m)?;
    let ring = PolyRing::with_variables(&[("x", 1), ("y", 2), ("z", 2)])?;
    QuotientAlgebra::truncated_polynomial(
        ring,
        &[(0, 2), (1, m.div_ceil(2)), (2, n + 1)],
        m + 2 * n + 4,
    )
}

/// The ring `F2[x, y, z]` with degrees 1, 1, 4 used by [`presentation2`].
pub fn presentation2_ring() -> Result<std::sync::Arc<PolyRing>> {
    PolyRing::with_variables(&[("x", 1), ("y", 1), ("z", 4)])
}

/// `F2[x, y, z] / (f, g, z^{(n+1)/2} + h)`, degrees 1, 1, 4; `n` odd.
///
/// `h` must be zero or homogeneous of degree `2n + 2` with every power of
/// `z` at most `(n - 1) / 2`.
pub fn presentation2(
    m: u32,
    n: u32,
    alpha: [bool; 2],
    beta: [bool; 2],
    h: Option<&Polynomial>,
) -> Result<QuotientAlgebra> {
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    require_odd("n", n)?;
    let ring = presentation2_ring()?;
    let (f, g) = f_and_g(&ring, m, alpha, beta)?;
    let mut third = Polynomial::from_monomial(&ring, ring.power(2, n.div_ceil(2))?);
    if let Some(h) = h {
        if **h.ring() != *ring {
            return Err(Error::VariableMismatch);
        }
        if !h.is_zero() {
            if !h.is_homogeneous() || h.degree() != Some(2 * n + 2) {
                return Err(Error::domain(format!(
                    "h must be homogeneous of degree {}",
                    2 * n + 2
                )));
            }
            if h.terms().any(|t| t.exponents()[2] > (n - 1) / 2) {
                return Err(Error::domain(format!(
                    "h may contain z only up to the power {}",
                    (n - 1) / 2
                )));
            }
        }
        third = third.add(h)?;
    }
    QuotientAlgebra::new(ring, vec![f, g, third], m + 2 * n + 4)
}

/// `F2[x, y, z] / (x^3, y^{(n+1)/2}, z^{m+1})`, degrees 1, 4, 1; `n` odd.
pub fn example2_algebra(m: u32, n: u32) -> Result<QuotientAlgebra> {
    require_odd("n", n)?;
    let ring = PolyRing::with_variables(&[("x", 1), ("y", 4), ("z", 1)])?;
    QuotientAlgebra::truncated_polynomial(
        ring,
        &[(0, 3), (1, n.div_ceil(2)), (2, m + 1)],
        m + 2 * n + 4,
    )
}

/// Degreewise comparison of `series` against the series of `a` through `cap`.
pub fn compare_presentation(series: &[usize], a: &QuotientAlgebra, cap: u32) -> Result<Comparison> {
    if series.len() <= cap as usize {
        return Err(Error::domain(format!(
            "series has {} terms, comparison needs {}",
            series.len(),
            cap + 1
        )));
    }
    let expected = a.series_through(cap);
    let observed = series[..=cap as usize].to_vec();
    let first_mismatch = expected
        .iter()
        .zip(&observed)
        .position(|(e, o)| e != o)
        .map(|i| i as u32);
    Ok(Comparison {
        equal: first_mismatch.is_none(),
        first_mismatch,
        expected,
        observed,
    })
}
