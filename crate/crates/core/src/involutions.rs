//! Floating-point models of the explicit actions on `S^m x CP^n` and on the
//! Dold manifold `P(m, n) = S^m x CP^n / ((x, z) ~ (-x, conj z))`.
//!
//! Property checks are sampled: points are normalized Gaussian vectors drawn
//! from a ChaCha8 stream per chunk, so a report is reproducible from its
//! seed regardless of thread count. Sampled freeness is evidence only.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 20_240_601;
const CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct CpPoint(pub Vec<Complex64>);

/// A representative `(x, z)` of a point of `P(m, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoldPoint {
    pub x: SpherePoint,
    pub z: CpPoint,
}

impl SpherePoint {
    pub fn normalized(coords: Vec<f64>) -> Self {
        let norm = coords.iter().map(|v| v * v).sum::<f64>().sqrt();
        SpherePoint(coords.into_iter().map(|v| v / norm).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len() - 1
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn antipode(&self) -> Self {
        SpherePoint(self.0.iter().map(|v| -v).collect())
    }
}

impl CpPoint {
    pub fn normalized(coords: Vec<Complex64>) -> Self {
        let norm = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        CpPoint(coords.into_iter().map(|c| c / norm).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn conj(&self) -> Self {
        CpPoint(self.0.iter().map(|c| c.conj()).collect())
    }
}

pub fn sphere_equal(x: &SpherePoint, y: &SpherePoint, tol: f64) -> bool {
    x.0.len() == y.0.len() && x.0.iter().zip(&y.0).all(|(a, b)| (a - b).abs() <= tol)
}

/// `|<z, w>| >= 1 - tol` for unit representatives.
pub fn projective_equal(z: &CpPoint, w: &CpPoint, tol: f64) -> bool {
    if z.0.len() != w.0.len() {
        return false;
    }
    let inner: Complex64 = z.0.iter().zip(&w.0).map(|(a, b)| a.conj() * b).sum();
    inner.norm() >= 1.0 - tol
}

/// Equality on `S^m x CP^n`.
pub fn cover_equal(p: &DoldPoint, q: &DoldPoint, tol: f64) -> bool {
    sphere_equal(&p.x, &q.x, tol) && projective_equal(&p.z, &q.z, tol)
}

/// The involution defining the Dold manifold.
pub fn sigma(p: &DoldPoint) -> DoldPoint {
    DoldPoint {
        x: p.x.antipode(),
        z: p.z.conj(),
    }
}

/// Equality on `P(m, n)`: directly or after applying [`sigma`].
pub fn dold_equal(p: &DoldPoint, q: &DoldPoint, tol: f64) -> bool {
    cover_equal(p, q, tol) || cover_equal(&sigma(p), q, tol)
}

/// `[z_0, .., z_n] -> [-conj z_1, conj z_0, .., -conj z_n, conj z_{n-1}]`.
pub fn t1(z: &CpPoint) -> Result<CpPoint> {
    if z.0.len() % 2 == 1 {
        return Err(Error::domain(format!("T1 needs n odd, got n = {}", z.n())));
    }
    let mut out = Vec::with_capacity(z.0.len());
    for pair in z.0.chunks(2) {
        out.push(-pair[1].conj());
        out.push(pair[0].conj());
    }
    Ok(CpPoint(out))
}

/// `(x_0, .., x_m) -> (-x_1, x_0, .., -x_m, x_{m-1})`.
pub fn t2(x: &SpherePoint) -> Result<SpherePoint> {
    if x.0.len() % 2 == 1 {
        return Err(Error::domain(format!("T2 needs m odd, got m = {}", x.m())));
    }
    let mut out = Vec::with_capacity(x.0.len());
    for pair in x.0.chunks(2) {
        out.push(-pair[1]);
        out.push(pair[0]);
    }
    Ok(SpherePoint(out))
}

/// `[z_0, z_1, ..] -> [conj z_1, conj z_0, ..]`.
fn swap_conj(z: &CpPoint) -> Result<CpPoint> {
    if z.0.len() % 2 == 1 {
        return Err(Error::domain(format!("needs n odd, got n = {}", z.n())));
    }
    let mut out = Vec::with_capacity(z.0.len());
    for pair in z.0.chunks(2) {
        out.push(pair[1].conj());
        out.push(pair[0].conj());
    }
    Ok(CpPoint(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// `id x T1`, `n` odd.
    T1,
    /// `T2 x id`, `m` odd.
    T2,
    /// `T2 x T1`, `m` and `n` odd.
    T3,
    /// The order-four generator `(T2 x, [conj z_1, conj z_0, ..])`, `m`, `n` odd.
    Z4,
    /// `a = antipode x id`, `b = id x T1`, `n` odd.
    Z2Z2,
    /// `id x conj`, which fixes real points; a non-free control.
    Conjugation,
}

impl ActionKind {
    pub const ALL: [ActionKind; 6] = [
        ActionKind::T1,
        ActionKind::T2,
        ActionKind::T3,
        ActionKind::Z4,
        ActionKind::Z2Z2,
        ActionKind::Conjugation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActionKind::T1 => "T1",
            ActionKind::T2 => "T2",
            ActionKind::T3 => "T3",
            ActionKind::Z4 => "Z4",
            ActionKind::Z2Z2 => "Z2Z2",
            ActionKind::Conjugation => "conjugation",
        }
    }

    pub fn check_parity(self, m: u32, n: u32) -> Result<()> {
        let (need_m, need_n) = match self {
            ActionKind::T1 | ActionKind::Z2Z2 => (false, true),
            ActionKind::T2 => (true, false),
            ActionKind::T3 | ActionKind::Z4 => (true, true),
            ActionKind::Conjugation => (false, false),
        };
        if need_m && m.is_multiple_of(2) {
            return Err(Error::domain(format!("{} needs m odd, got m = {m}", self.name())));
        }
        if need_n && n.is_multiple_of(2) {
            return Err(Error::domain(format!("{} needs n odd, got n = {n}", self.name())));
        }
        Ok(())
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ActionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::parse(format!(
                    "unknown action `{s}`; expected T1, T2, T3, Z4, Z2Z2 or conjugation"
                ))
            })
    }
}

impl Serialize for ActionKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The lift of `T1`, `T2` or `T3` to `S^m x CP^n`, applied to a representative.
pub fn induced_involution_on_dold(kind: ActionKind, p: &DoldPoint) -> Result<DoldPoint> {
    match kind {
        ActionKind::T1 => Ok(DoldPoint {
            x: p.x.clone(),
            z: t1(&p.z)?,
        }),
        ActionKind::T2 => Ok(DoldPoint {
            x: t2(&p.x)?,
            z: p.z.clone(),
        }),
        ActionKind::T3 => Ok(DoldPoint {
            x: t2(&p.x)?,
            z: t1(&p.z)?,
        }),
        other => Err(Error::domain(format!(
            "{other} is not one of the involutions T1, T2, T3"
        ))),
    }
}

pub fn example_z4_generator(p: &DoldPoint) -> Result<DoldPoint> {
    Ok(DoldPoint {
        x: t2(&p.x)?,
        z: swap_conj(&p.z)?,
    })
}

/// The generators `a` and `b` of the Klein-group action.
pub fn example_z2z2_generators(p: &DoldPoint) -> Result<(DoldPoint, DoldPoint)> {
    let a = DoldPoint {
        x: p.x.antipode(),
        z: p.z.clone(),
    };
    let b = DoldPoint {
        x: p.x.clone(),
        z: t1(&p.z)?,
    };
    Ok((a, b))
}

fn example_a(p: &DoldPoint) -> Result<DoldPoint> {
    Ok(example_z2z2_generators(p)?.0)
}

fn example_b(p: &DoldPoint) -> Result<DoldPoint> {
    Ok(example_z2z2_generators(p)?.1)
}

fn conjugation(p: &DoldPoint) -> Result<DoldPoint> {
    Ok(DoldPoint {
        x: p.x.clone(),
        z: p.z.conj(),
    })
}

pub fn sample_sphere<R: Rng>(rng: &mut R, m: usize) -> SpherePoint {
    SpherePoint::normalized((0..=m).map(|_| rng.sample(StandardNormal)).collect())
}

pub fn sample_cp<R: Rng>(rng: &mut R, n: usize) -> CpPoint {
    CpPoint::normalized(
        (0..=n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect(),
    )
}

/// A sample whose projective coordinate is real, fixed by conjugation.
pub fn sample_real_cp<R: Rng>(rng: &mut R, n: usize) -> CpPoint {
    CpPoint::normalized(
        (0..=n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), 0.0))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvolutionReport {
    pub action: ActionKind,
    pub m: u32,
    pub n: u32,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// The order relation: `g^2 = 1` on `P(m, n)` for T1–T3, `g^4 = 1` on the
    /// cover for Z4, `a^2 = b^2 = 1` and `ab = ba` for Z2Z2, `c^2 = 1` for
    /// the conjugation control.
    pub involution_ok: bool,
    /// No sampled point is fixed by any nonidentity group element.
    pub free_ok: bool,
    pub order_failures: usize,
    pub fixed_points: usize,
    pub max_norm_error: f64,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    order_failures: usize,
    fixed_points: usize,
    max_norm_error: f64,
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        Tally {
            order_failures: self.order_failures + other.order_failures,
            fixed_points: self.fixed_points + other.fixed_points,
            max_norm_error: self.max_norm_error.max(other.max_norm_error),
        }
    }

    fn norms(&mut self, p: &DoldPoint) {
        self.max_norm_error = self
            .max_norm_error
            .max((p.x.norm() - 1.0).abs())
            .max((p.z.norm() - 1.0).abs());
    }
}

type Map = fn(&DoldPoint) -> Result<DoldPoint>;

fn apply_n(map: Map, p: &DoldPoint, times: usize) -> Result<DoldPoint> {
    let mut q = p.clone();
    for _ in 0..times {
        q = map(&q)?;
    }
    Ok(q)
}

fn check_point(kind: ActionKind, p: &DoldPoint, tol: f64, tally: &mut Tally) -> Result<()> {
    match kind {
        ActionKind::T1 | ActionKind::T2 | ActionKind::T3 => {
            let q = induced_involution_on_dold(kind, p)?;
            let back = induced_involution_on_dold(kind, &q)?;
            tally.norms(&q);
            tally.order_failures += usize::from(!dold_equal(&back, p, tol));
            tally.fixed_points += usize::from(dold_equal(&q, p, tol));
        }
        ActionKind::Z4 => {
            let g: Map = example_z4_generator;
            let powers = [apply_n(g, p, 1)?, apply_n(g, p, 2)?, apply_n(g, p, 3)?];
            tally.norms(&powers[0]);
            tally.order_failures += usize::from(!cover_equal(&apply_n(g, p, 4)?, p, tol));
            tally.fixed_points += usize::from(powers.iter().any(|q| cover_equal(q, p, tol)));
        }
        ActionKind::Z2Z2 => {
            let a = example_a(p)?;
            let b = example_b(p)?;
            let ab = example_a(&b)?;
            let ba = example_b(&a)?;
            tally.norms(&ab);
            let order = cover_equal(&example_a(&a)?, p, tol)
                && cover_equal(&example_b(&b)?, p, tol)
                && cover_equal(&ab, &ba, tol);
            tally.order_failures += usize::from(!order);
            tally.fixed_points +=
                usize::from([&a, &b, &ab].iter().any(|q| cover_equal(q, p, tol)));
        }
        ActionKind::Conjugation => {
            let q = conjugation(p)?;
            tally.norms(&q);
            tally.order_failures += usize::from(!cover_equal(&conjugation(&q)?, p, tol));
            tally.fixed_points += usize::from(cover_equal(&q, p, tol));
        }
    }
    Ok(())
}

/// Sampled order and freeness checks for `kind` on `S^m x CP^n` or
/// `P(m, n)`. For the conjugation control every eighth sample has a real
/// projective coordinate.
pub fn check_action(
    kind: ActionKind,
    m: u32,
    n: u32,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<InvolutionReport> {
    kind.check_parity(m, n)?;
    let chunks = samples.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Tally> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let mut tally = Tally::default();
            let count = CHUNK.min(samples - c * CHUNK);
            for i in 0..count {
                let x = sample_sphere(&mut rng, m as usize);
                let z = if kind == ActionKind::Conjugation && i % 8 == 0 {
                    sample_real_cp(&mut rng, n as usize)
                } else {
                    sample_cp(&mut rng, n as usize)
                };
                check_point(kind, &DoldPoint { x, z }, tol, &mut tally)?;
            }
            Ok(tally)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    Ok(InvolutionReport {
        action: kind,
        m,
        n,
        samples,
        seed,
        tol,
        involution_ok: tally.order_failures == 0,
        free_ok: tally.fixed_points == 0,
        order_failures: tally.order_failures,
        fixed_points: tally.fixed_points,
        max_norm_error: tally.max_norm_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn projective_equality() {
        let e0 = CpPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let i0 = CpPoint(vec![c(0.0, 1.0), c(0.0, 0.0)]);
        let e1 = CpPoint(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(projective_equal(&e0, &i0, DEFAULT_TOL));
        assert!(!projective_equal(&e0, &e1, DEFAULT_TOL));
        let z = CpPoint(vec![c(0.5, 0.5), c(0.5, -0.5)]);
        assert!(!projective_equal(&z, &z.conj(), DEFAULT_TOL));
    }

    #[test]
    fn formulas() {
        let e0 = CpPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let e1 = CpPoint(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(projective_equal(&t1(&e0).unwrap(), &e1, DEFAULT_TOL));
        assert!(t1(&CpPoint(vec![c(1.0, 0.0); 3])).is_err());

        let x = SpherePoint(vec![1.0, 0.0]);
        assert_eq!(t2(&x).unwrap(), SpherePoint(vec![0.0, 1.0]));
        assert_eq!(t2(&t2(&x).unwrap()).unwrap(), x.antipode());
        assert!(t2(&SpherePoint(vec![1.0, 0.0, 0.0])).is_err());

        let p = DoldPoint { x, z: e0.clone() };
        let q = induced_involution_on_dold(ActionKind::T2, &p).unwrap();
        assert!(dold_equal(&q, &DoldPoint { x: SpherePoint(vec![0.0, 1.0]), z: e0 }, DEFAULT_TOL));
    }

    #[test]
    fn sigma_identifies_representatives() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = DoldPoint {
            x: sample_sphere(&mut rng, 3),
            z: sample_cp(&mut rng, 2),
        };
        assert!(dold_equal(&p, &sigma(&p), DEFAULT_TOL));
        assert!(!cover_equal(&p, &sigma(&p), DEFAULT_TOL));
    }

    #[test]
    fn t1_is_a_free_involution() {
        let r = check_action(ActionKind::T1, 1, 1, 2000, DEFAULT_SEED, DEFAULT_TOL).unwrap();
        assert!(r.involution_ok && r.free_ok);
        assert!(r.max_norm_error < 1e-12);
    }

    #[test]
    fn t2_squares_to_the_antipode_on_the_sphere() {
        // (T2 x id)^2 = (-x, z), which is (x, conj z) on P(m, n), not (x, z).
        let r = check_action(ActionKind::T2, 1, 1, 500, DEFAULT_SEED, DEFAULT_TOL).unwrap();
        assert!(r.free_ok);
        assert_eq!(r.order_failures, 500);
    }

    #[test]
    fn examples_and_control() {
        let z4 = check_action(ActionKind::Z4, 1, 1, 1000, 7, DEFAULT_TOL).unwrap();
        assert!(z4.involution_ok && z4.free_ok);
        let k = check_action(ActionKind::Z2Z2, 1, 1, 1000, 7, DEFAULT_TOL).unwrap();
        assert!(k.involution_ok && k.free_ok);
        let ctl = check_action(ActionKind::Conjugation, 1, 1, 1000, 7, DEFAULT_TOL).unwrap();
        assert!(ctl.involution_ok);
        assert!(!ctl.free_ok);
        assert_eq!(ctl.fixed_points, 125);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = check_action(ActionKind::T3, 3, 3, 3000, 11, DEFAULT_TOL).unwrap();
        let b = check_action(ActionKind::T3, 3, 3, 3000, 11, DEFAULT_TOL).unwrap();
        assert_eq!(a, b);
        assert!(check_action(ActionKind::T3, 2, 3, 10, 11, DEFAULT_TOL).is_err());
        assert_eq!("z2z2".parse::<ActionKind>().unwrap(), ActionKind::Z2Z2);
        assert!("T4".parse::<ActionKind>().is_err());
    }
}
