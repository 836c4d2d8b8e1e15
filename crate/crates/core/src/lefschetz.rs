//! Sign automorphisms of the integral cohomology of `prod S^{d_i} x CP^{n_i}`
//! and the rank searches built on their Lefschetz numbers.
//!
//! A sign automorphism sends `a_i -> xi_i a_i` (the projective class) and
//! `b_i -> lambda_i b_i` (the sphere class). As a vector over F2 it is encoded
//! as `(xi_1, .., xi_k, lambda_1, .., lambda_k)` with bit 1 meaning `-1`;
//! composition is bitwise addition.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2algebra::{PolyRing, Polynomial, QuotientAlgebra};
use crate::spaces::{mu, product_cohomology, Flavor, GeneratorKind, ProductSpace};

/// Largest `k` accepted by the rank search (`2k <= 12`).
pub const MAX_SEARCH_FACTORS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignAutomorphism {
    pub xi: Vec<Sign>,
    pub lambda: Vec<Sign>,
}

impl SignAutomorphism {
    pub fn identity(k: usize) -> Self {
        SignAutomorphism {
            xi: vec![Sign::Plus; k],
            lambda: vec![Sign::Plus; k],
        }
    }

    pub fn k(&self) -> usize {
        self.xi.len()
    }

    pub fn from_bits(k: usize, bits: u64) -> Self {
        SignAutomorphism {
            xi: (0..k).map(|i| Sign::from_bit(bits >> i & 1 == 1)).collect(),
            lambda: (0..k).map(|i| Sign::from_bit(bits >> (k + i) & 1 == 1)).collect(),
        }
    }

    pub fn bits(&self) -> u64 {
        let k = self.k();
        let mut out = 0u64;
        for (i, s) in self.xi.iter().enumerate() {
            out |= u64::from(s.is_minus()) << i;
        }
        for (i, s) in self.lambda.iter().enumerate() {
            out |= u64::from(s.is_minus()) << (k + i);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.bits() == 0
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.k() != other.k() {
            return Err(Error::domain("composing sign automorphisms of different lengths"));
        }
        Ok(Self::from_bits(self.k(), self.bits() ^ other.bits()))
    }

    /// Checks the pattern against `x`: sphere flavor, matching length,
    /// `xi_j = -1` only for odd `n_j`, `lambda_i = -1` only for `d_i > 0`.
    pub fn validate(&self, x: &ProductSpace) -> Result<()> {
        if x.flavor() != Flavor::SphereCp {
            return Err(Error::domain(
                "sign automorphisms are defined for products of even spheres and projective spaces",
            ));
        }
        if self.k() != x.k() || self.lambda.len() != x.k() {
            return Err(Error::domain(format!(
                "sign pattern has {} factors, space has {}",
                self.k(),
                x.k()
            )));
        }
        for (j, f) in x.factors().iter().enumerate() {
            if self.xi[j].is_minus() && f.cp_dim % 2 == 0 {
                return Err(Error::InvalidSign(format!(
                    "xi_{} = -1 needs an odd projective dimension, n_{} = {}",
                    j + 1,
                    j + 1,
                    f.cp_dim
                )));
            }
            if self.lambda[j].is_minus() && f.sphere_dim == 0 {
                return Err(Error::InvalidSign(format!(
                    "lambda_{} = -1 on a zero-dimensional sphere",
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SignAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xi: String = self.xi.iter().map(|s| s.symbol()).collect();
        let lambda: String = self.lambda.iter().map(|s| s.symbol()).collect();
        write!(f, "{xi}/{lambda}")
    }
}

/// Parses `"<xi signs>/<lambda signs>"`, e.g. `"-+/++"`.
impl FromStr for SignAutomorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (xi, lambda) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::parse(format!("sign pattern `{s}` needs the form xi/lambda")))?;
        let signs = |part: &str| {
            part.chars()
                .map(|c| match c {
                    '+' => Ok(Sign::Plus),
                    '-' => Ok(Sign::Minus),
                    _ => Err(Error::parse(format!("unexpected `{c}` in sign pattern `{s}`"))),
                })
                .collect::<Result<Vec<_>>>()
        };
        let (xi, lambda) = (signs(xi)?, signs(lambda)?);
        if xi.len() != lambda.len() || xi.is_empty() {
            return Err(Error::parse(format!(
                "sign pattern `{s}` needs the same positive number of xi and lambda signs"
            )));
        }
        Ok(SignAutomorphism { xi, lambda })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignSubgroup {
    pub basis: Vec<SignAutomorphism>,
}

impl SignSubgroup {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// All `2^rank` elements, identity first.
    pub fn elements(&self) -> Vec<SignAutomorphism> {
        let k = self.basis.first().map_or(0, SignAutomorphism::k);
        let bits: Vec<u64> = self.basis.iter().map(SignAutomorphism::bits).collect();
        (0u64..1 << bits.len())
            .map(|mask| {
                let v = bits
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0, |acc, (_, b)| acc ^ b);
                SignAutomorphism::from_bits(k, v)
            })
            .collect()
    }
}

/// Product formula `prod_i (1 + xi_i + .. + xi_i^{n_i}) (1 + lambda_i)`.
/// A zero-dimensional sphere contributes no `(1 + lambda_i)` factor, so the
/// value then refers to one component.
pub fn lefschetz_number(g: &SignAutomorphism, x: &ProductSpace) -> Result<i64> {
    g.validate(x)?;
    let mut tau = 1i64;
    for (i, f) in x.factors().iter().enumerate() {
        let cp = if g.xi[i].is_minus() {
            i64::from(f.cp_dim % 2 == 0)
        } else {
            i64::from(f.cp_dim) + 1
        };
        let sphere = if f.sphere_dim == 0 {
            1
        } else {
            1 + g.lambda[i].value()
        };
        tau = tau
            .checked_mul(cp * sphere)
            .ok_or_else(|| Error::ResourceLimit("Lefschetz number overflows i64".into()))?;
    }
    Ok(tau)
}

/// Default cap on the number of basis monomials the trace oracle materializes.
pub const DEFAULT_TRACE_LIMIT: usize = 1 << 20;

/// Alternating trace of `g` over the monomial basis of the cohomology ring.
pub fn trace_oracle(g: &SignAutomorphism, x: &ProductSpace, limit: usize) -> Result<i64> {
    g.validate(x)?;
    let size = x
        .factors()
        .iter()
        .try_fold(1usize, |acc, f| {
            let sphere = if f.sphere_dim > 0 { 2 } else { 1 };
            acc.checked_mul((f.cp_dim as usize + 1) * sphere)
        })
        .unwrap_or(usize::MAX);
    if size > limit {
        return Err(Error::ResourceLimit(format!(
            "trace oracle basis has {size} monomials, limit is {limit}"
        )));
    }
    let algebra = product_cohomology(x)?;
    let gens = x.generators();
    let basis = algebra
        .all_standard_monomials()
        .ok_or_else(|| Error::domain("cohomology ring is not finite"))?;
    let mut total = 0i64;
    for m in &basis {
        let mut sign = if m.degree() % 2 == 0 { 1 } else { -1 };
        for (e, gen) in m.exponents().iter().zip(&gens) {
            let s = match gen.kind {
                GeneratorKind::Projective => g.xi[gen.factor],
                GeneratorKind::Sphere => g.lambda[gen.factor],
            };
            if s.is_minus() && e % 2 == 1 {
                sign = -sign;
            }
        }
        total += sign;
    }
    Ok(total)
}

/// Coordinates (bit positions) where a `-1` is allowed on `x`.
pub fn valid_coordinates(x: &ProductSpace) -> Vec<usize> {
    let k = x.k();
    let mut out = Vec::new();
    for (i, f) in x.factors().iter().enumerate() {
        if f.cp_dim % 2 == 1 {
            out.push(i);
        }
    }
    for (i, f) in x.factors().iter().enumerate() {
        if f.sphere_dim > 0 {
            out.push(k + i);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxRankResult {
    pub rank: usize,
    pub certificate: SignSubgroup,
    pub candidates_examined: u64,
}

/// Default number of candidate subspaces the rank search may examine.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Largest rank of a subgroup of valid sign automorphisms whose nonidentity
/// elements all have vanishing Lefschetz number.
///
/// Subspaces of the valid coordinate space are enumerated through reduced
/// row echelon forms from the top dimension down. The certificate is the
/// lexicographically least echelon basis at the winning dimension, with rows
/// compared as bit strings in coordinate order `(xi_1.., lambda_1..)`.
pub fn max_free_rank_bruteforce(x: &ProductSpace, budget: u64) -> Result<MaxRankResult> {
    if x.flavor() != Flavor::SphereCp {
        return Err(Error::domain(
            "the rank search runs on products of even spheres and projective spaces",
        ));
    }
    let k = x.k();
    if k > MAX_SEARCH_FACTORS {
        return Err(Error::ResourceLimit(format!(
            "rank search supports at most {MAX_SEARCH_FACTORS} factors, got {k}"
        )));
    }
    let coords = valid_coordinates(x);
    let v = coords.len();
    let mut examined = 0u64;
    let vanishes = |bits: u64| -> Result<bool> {
        Ok(lefschetz_number(&SignAutomorphism::from_bits(k, bits), x)? == 0)
    };
    for r in (0..=v).rev() {
        let mut best: Option<Vec<u64>> = None;
        for pivots in combinations(v, r) {
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|row| {
                    let p = pivots[row];
                    let pivots = &pivots;
                    (p + 1..v)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            if free.len() >= 64 {
                return Err(Error::ResourceLimit("rank search space too large".into()));
            }
            for fill in 0u64..1 << free.len() {
                examined += 1;
                if examined > budget {
                    return Err(Error::ResourceLimit(format!(
                        "rank search exceeded its budget of {budget} candidate subspaces"
                    )));
                }
                let mut rows = vec![0u64; r];
                for (row, &p) in pivots.iter().enumerate() {
                    rows[row] |= 1 << coords[p];
                }
                for (j, &(row, c)) in free.iter().enumerate() {
                    if fill >> j & 1 == 1 {
                        rows[row] |= 1 << coords[c];
                    }
                }
                if !all_nonidentity_vanish(&rows, &vanishes)? {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some(b) => compare_bases(&rows, b, 2 * k) == Ordering::Less,
                };
                if better {
                    best = Some(rows);
                }
            }
        }
        if let Some(rows) = best {
            return Ok(MaxRankResult {
                rank: r,
                certificate: SignSubgroup {
                    basis: rows
                        .into_iter()
                        .map(|b| SignAutomorphism::from_bits(k, b))
                        .collect(),
                },
                candidates_examined: examined,
            });
        }
    }
    unreachable!("the zero subspace always qualifies")
}

fn all_nonidentity_vanish(rows: &[u64], vanishes: &impl Fn(u64) -> Result<bool>) -> Result<bool> {
    // Gray-code walk over the span.
    let mut v = 0u64;
    for i in 1u64..1 << rows.len() {
        v ^= rows[i.trailing_zeros() as usize];
        if !vanishes(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn compare_bases(a: &[u64], b: &[u64], width: usize) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        for bit in 0..width {
            match ((x >> bit) & 1).cmp(&((y >> bit) & 1)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
    }
    Ordering::Equal
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// `k_0 + sum mu(n_i)` for the sphere flavor, `sum mu(n_i)` otherwise.
///
/// For the Dold and `RP x CP` flavors the bound is proved only when every
/// first parameter is even; see [`theorem_bound_applies`].
pub fn theorem_bound(x: &ProductSpace) -> u32 {
    let mus: u32 = x.factors().iter().map(|f| mu(f.cp_dim)).sum();
    match x.flavor() {
        Flavor::SphereCp => x.k0() as u32 + mus,
        Flavor::Dold | Flavor::RpCp => mus,
    }
}

pub fn theorem_bound_applies(x: &ProductSpace) -> bool {
    match x.flavor() {
        Flavor::SphereCp => true,
        Flavor::Dold | Flavor::RpCp => x.factors().iter().all(|f| f.sphere_dim % 2 == 0),
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Free p-rank for mod 2 cohomologically trivial actions: the bound for
/// `p = 2`, zero for odd primes.
pub fn frk_table(x: &ProductSpace, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(if p == 2 { theorem_bound(x) } else { 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CarlssonReport {
    pub betti_sum: u64,
    pub threshold: u64,
    pub holds: bool,
}

pub fn carlsson_check(x: &ProductSpace) -> CarlssonReport {
    let betti_sum = x.betti_sum();
    let threshold = 1u64.checked_shl(theorem_bound(x)).unwrap_or(u64::MAX);
    CarlssonReport {
        betti_sum,
        threshold,
        holds: betti_sum >= threshold,
    }
}

/// Default number of matrices the rigidity search may enumerate.
pub const DEFAULT_RIGIDITY_BUDGET: u64 = 10_000_000;

/// Integer matrices `A = I (mod 2)` with entries in `[-bound, bound]` and
/// `A^p = I`, other than `I` itself. Rows are listed in row-major order.
pub fn mod2_rigidity_search(
    size: usize,
    p: u32,
    entry_bound: i64,
    budget: u64,
) -> Result<Vec<Vec<Vec<i64>>>> {
    if p.is_multiple_of(2) || !is_prime(u64::from(p)) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    if size == 0 || entry_bound < 1 {
        return Err(Error::domain("size and entry bound must be positive"));
    }
    let odd: Vec<i64> = (-entry_bound..=entry_bound).filter(|v| v % 2 != 0).collect();
    let even: Vec<i64> = (-entry_bound..=entry_bound).filter(|v| v % 2 == 0).collect();
    let choices: Vec<&[i64]> = (0..size * size)
        .map(|i| if i / size == i % size { &odd[..] } else { &even[..] })
        .collect();
    let total = choices
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .unwrap_or(u64::MAX);
    if total > budget {
        return Err(Error::ResourceLimit(format!(
            "rigidity search needs {total} matrices, budget is {budget}"
        )));
    }
    let mut found = Vec::new();
    let mut digits = vec![0usize; size * size];
    loop {
        let a: Vec<i128> = digits
            .iter()
            .zip(&choices)
            .map(|(&d, c)| i128::from(c[d]))
            .collect();
        if !is_identity(&a, size) && power_is_identity(&a, size, p) {
            found.push(
                a.chunks(size)
                    .map(|row| row.iter().map(|&v| v as i64).collect())
                    .collect(),
            );
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(found);
            }
            digits[i] += 1;
            if digits[i] < choices[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn is_identity(a: &[i128], n: usize) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, &v)| v == i128::from(i / n == i % n))
}

/// Overflow means the power cannot be the identity.
fn power_is_identity(a: &[i128], n: usize, p: u32) -> bool {
    let mut acc = a.to_vec();
    for _ in 1..p {
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    let term = match acc[i * n + l].checked_mul(a[l * n + j]) {
                        Some(t) => t,
                        None => return false,
                    };
                    s = match s.checked_add(term) {
                        Some(t) => t,
                        None => return false,
                    };
                }
                next[i * n + j] = s;
            }
        }
        acc = next;
    }
    is_identity(&acc, n)
}

/// `F2[x] (x) Lambda(y)` with `deg x = 2`, `deg y = 1`: the mod-2 cohomology
/// of the classifying space of the cyclic group of order four.
pub fn bz4_cohomology() -> Result<QuotientAlgebra> {
    let ring = PolyRing::with_variables(&[("x", 2), ("y", 1)])?;
    QuotientAlgebra::truncated_polynomial(ring, &[(1, 2)], 12)
}

pub fn bz2_ring() -> Result<std::sync::Arc<PolyRing>> {
    PolyRing::with_variables(&[("t", 1)])
}

/// Restriction to the order-two subgroup: `x -> t^2`, `y -> 0`.
pub fn bz4_restriction(class: &Polynomial) -> Result<Polynomial> {
    let source = bz4_cohomology()?;
    if **class.ring() != **source.ring() {
        return Err(Error::VariableMismatch);
    }
    let reduced = source.normal_form(class)?;
    let target = bz2_ring()?;
    let mut image = Polynomial::zero(&target);
    for m in reduced.terms() {
        let e = m.exponents();
        if e[1] == 0 {
            let t = Polynomial::from_monomial(&target, target.power(0, 2 * e[0])?);
            image = image.add(&t)?;
        }
    }
    Ok(image)
}
