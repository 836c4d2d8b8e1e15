//! Catalog of the spaces under study and their mod-2 cohomology.
//!
//! Descriptor grammar (whitespace is ignored):
//!
//! ```text
//! space  := factor ('*' factor)*
//! factor := 'P(' m ',' n ')'          Dold manifold P(m, n)
//!         | 'S(' d ')x' 'CP(' n ')'   S^d x CP^n, d even
//!         | 'RP(' m ')x' 'CP(' n ')'  RP^m x CP^n
//! ```
//!
//! All factors of one product must share a flavor, e.g. `P(2,1)*P(4,3)` or
//! `S(2)xCP(1)*S(4)xCP(2)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2algebra::{GradedVariable, PolyRing, Polynomial, QuotientAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    /// Products of `S^d x CP^n` with even `d`.
    SphereCp,
    /// Products of Dold manifolds `P(m, n)`.
    Dold,
    /// Products of `RP^m x CP^n`; same mod-2 ring as the Dold case.
    RpCp,
}

/// One factor: `sphere_dim` is `d` in `S^d`, `P(d, n)` or `RP^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Factor {
    pub sphere_dim: u32,
    pub cp_dim: u32,
}

impl Factor {
    pub fn new(sphere_dim: u32, cp_dim: u32) -> Self {
        Factor { sphere_dim, cp_dim }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProductSpace {
    flavor: Flavor,
    factors: Vec<Factor>,
}

/// Role of a ring generator inside a product presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// The projective-space class: degree 2 for the sphere flavor.
    Projective,
    /// The sphere class (sphere flavor) or the degree-one class (Dold).
    Sphere,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// The generator's `truncation`-th power is the first one to vanish.
    pub truncation: u32,
    pub factor: usize,
    pub kind: GeneratorKind,
}

impl ProductSpace {
    pub fn new(flavor: Flavor, factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::domain("a product needs at least one factor"));
        }
        for f in &factors {
            match flavor {
                Flavor::SphereCp if f.sphere_dim % 2 == 1 => {
                    return Err(Error::domain(format!(
                        "S^{} is odd-dimensional; only even spheres are supported",
                        f.sphere_dim
                    )))
                }
                Flavor::Dold | Flavor::RpCp if f.sphere_dim + f.cp_dim == 0 => {
                    return Err(Error::domain("P(0,0) is not defined; need m + n > 0"))
                }
                _ => {}
            }
        }
        Ok(ProductSpace { flavor, factors })
    }

    pub fn sphere_cp(factors: &[(u32, u32)]) -> Result<Self> {
        Self::new(
            Flavor::SphereCp,
            factors.iter().map(|&(d, n)| Factor::new(d, n)).collect(),
        )
    }

    pub fn dold(factors: &[(u32, u32)]) -> Result<Self> {
        Self::new(
            Flavor::Dold,
            factors.iter().map(|&(m, n)| Factor::new(m, n)).collect(),
        )
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Number of factors `k`.
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    /// Number of factors with a positive-dimensional sphere.
    pub fn k0(&self) -> usize {
        self.factors.iter().filter(|f| f.sphere_dim > 0).count()
    }

    pub fn manifold_dimension(&self) -> u32 {
        self.factors.iter().map(|f| f.sphere_dim + 2 * f.cp_dim).sum()
    }

    /// Connected components. Only `S^0` factors disconnect the space.
    pub fn component_count(&self) -> u64 {
        match self.flavor {
            Flavor::SphereCp => 1u64 << (self.k() - self.k0()),
            Flavor::Dold | Flavor::RpCp => 1,
        }
    }

    /// Ring generators of the (component) cohomology, in presentation order.
    /// Generators whose first power already vanishes are omitted.
    pub fn generators(&self) -> Vec<Generator> {
        let single = self.k() == 1;
        let name = |base: &str, i: usize| {
            if single {
                base.to_string()
            } else {
                format!("{base}{}", i + 1)
            }
        };
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            match self.flavor {
                Flavor::SphereCp => {
                    if f.cp_dim > 0 {
                        out.push(Generator {
                            name: name("a", i),
                            degree: 2,
                            truncation: f.cp_dim + 1,
                            factor: i,
                            kind: GeneratorKind::Projective,
                        });
                    }
                    if f.sphere_dim > 0 {
                        out.push(Generator {
                            name: name("b", i),
                            degree: f.sphere_dim,
                            truncation: 2,
                            factor: i,
                            kind: GeneratorKind::Sphere,
                        });
                    }
                }
                Flavor::Dold | Flavor::RpCp => {
                    if f.sphere_dim > 0 {
                        out.push(Generator {
                            name: name("a", i),
                            degree: 1,
                            truncation: f.sphere_dim + 1,
                            factor: i,
                            kind: GeneratorKind::Sphere,
                        });
                    }
                    if f.cp_dim > 0 {
                        out.push(Generator {
                            name: name("b", i),
                            degree: 2,
                            truncation: f.cp_dim + 1,
                            factor: i,
                            kind: GeneratorKind::Projective,
                        });
                    }
                }
            }
        }
        out
    }

    /// Sum of mod-2 Betti numbers of the whole space (all components).
    pub fn betti_sum(&self) -> u64 {
        let per_factor: u64 = self
            .factors
            .iter()
            .map(|f| {
                let n = u64::from(f.cp_dim) + 1;
                match self.flavor {
                    Flavor::SphereCp => 2 * n,
                    Flavor::Dold | Flavor::RpCp => (u64::from(f.sphere_dim) + 1) * n,
                }
            })
            .product();
        per_factor
    }

    /// Poincaré polynomial of the whole space as a coefficient vector.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let mut acc = vec![1u64];
        for f in &self.factors {
            let factor_series = factor_series(self.flavor, f);
            acc = convolve(&acc, &factor_series);
        }
        acc
    }
}

fn factor_series(flavor: Flavor, f: &Factor) -> Vec<u64> {
    let (d, n) = (f.sphere_dim as usize, f.cp_dim as usize);
    let cp: Vec<u64> = (0..=2 * n).map(|i| u64::from(i % 2 == 0)).collect();
    let first: Vec<u64> = match flavor {
        Flavor::SphereCp => {
            let mut s = vec![0u64; d + 1];
            s[0] += 1;
            s[d] += 1;
            s
        }
        Flavor::Dold | Flavor::RpCp => vec![1; d + 1],
    };
    convolve(&first, &cp)
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match self.flavor {
                Flavor::SphereCp => format!("S({})xCP({})", x.sphere_dim, x.cp_dim),
                Flavor::Dold => format!("P({},{})", x.sphere_dim, x.cp_dim),
                Flavor::RpCp => format!("RP({})xCP({})", x.sphere_dim, x.cp_dim),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl FromStr for ProductSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse("empty space descriptor"));
        }
        let mut flavor = None;
        let mut factors = Vec::new();
        for part in compact.split('*') {
            let (fl, factor) = parse_factor(part)?;
            match flavor {
                None => flavor = Some(fl),
                Some(prev) if prev != fl => {
                    return Err(Error::parse(format!(
                        "factor `{part}` mixes flavors within one product"
                    )))
                }
                _ => {}
            }
            factors.push(factor);
        }
        ProductSpace::new(flavor.expect("at least one factor"), factors)
    }
}

fn parse_call<'a>(text: &'a str, head: &str) -> Option<(&'a str, &'a str)> {
    let rest = text.strip_prefix(head)?.strip_prefix('(')?;
    let close = rest.find(')')?;
    Some((&rest[..close], &rest[close + 1..]))
}

fn parse_u32(text: &str, context: &str) -> Result<u32> {
    text.parse()
        .map_err(|_| Error::parse(format!("expected a non-negative integer in `{context}`")))
}

fn parse_factor(part: &str) -> Result<(Flavor, Factor)> {
    let bad = || Error::parse(format!("cannot parse factor `{part}`"));
    if let Some((args, rest)) = parse_call(part, "P") {
        if !rest.is_empty() {
            return Err(bad());
        }
        let (m, n) = args.split_once(',').ok_or_else(bad)?;
        return Ok((
            Flavor::Dold,
            Factor::new(parse_u32(m, part)?, parse_u32(n, part)?),
        ));
    }
    let (flavor, args, rest) = if let Some((a, r)) = parse_call(part, "RP") {
        (Flavor::RpCp, a, r)
    } else if let Some((a, r)) = parse_call(part, "S") {
        (Flavor::SphereCp, a, r)
    } else {
        return Err(bad());
    };
    let cp = rest.strip_prefix('x').ok_or_else(bad)?;
    let (n, tail) = parse_call(cp, "CP").ok_or_else(bad)?;
    if !tail.is_empty() {
        return Err(bad());
    }
    Ok((flavor, Factor::new(parse_u32(args, part)?, parse_u32(n, part)?)))
}

/// Default materialization cap: manifold dimension plus four.
pub fn default_cap(dimension: u32) -> u32 {
    dimension + 4
}

/// `F2[a, b] / (a^{m+1}, b^{n+1})` with `deg a = 1`, `deg b = 2`.
///
/// A generator whose first power vanishes is dropped, so `P(0, n)` gives the
/// ring of `CP^n` and `P(m, 0)` that of `RP^m`.
pub fn dold_cohomology(m: u32, n: u32) -> Result<QuotientAlgebra> {
    let space = ProductSpace::dold(&[(m, n)])?;
    product_cohomology(&space)
}

/// Künneth presentation of a product; for the sphere flavor with `S^0`
/// factors this is the algebra of one component (see
/// [`ProductSpace::component_count`]).
pub fn product_cohomology(space: &ProductSpace) -> Result<QuotientAlgebra> {
    let gens = space.generators();
    let ring = PolyRing::new(
        gens.iter()
            .map(|g| GradedVariable::new(g.name.clone(), g.degree))
            .collect(),
    )?;
    let relations = gens
        .iter()
        .enumerate()
        .map(|(i, g)| Ok(Polynomial::from_monomial(&ring, ring.power(i, g.truncation)?)))
        .collect::<Result<Vec<_>>>()?;
    QuotientAlgebra::new(ring, relations, default_cap(space.manifold_dimension()))
}

/// Euler characteristic of the whole space.
pub fn euler_characteristic(space: &ProductSpace) -> i64 {
    space
        .factors()
        .iter()
        .map(|f| {
            let n = i64::from(f.cp_dim) + 1;
            match space.flavor() {
                Flavor::SphereCp => 2 * n,
                Flavor::Dold | Flavor::RpCp => {
                    if f.sphere_dim % 2 == 0 {
                        n
                    } else {
                        0
                    }
                }
            }
        })
        .product()
}

/// Whether the explicit constructions give `P(m, n)` a free involution.
pub fn admits_free_involution(m: u32, n: u32) -> Result<bool> {
    if m + n == 0 {
        return Err(Error::domain("P(0,0) is not defined; need m + n > 0"));
    }
    Ok(m % 2 == 1 || n % 2 == 1)
}

/// 1 for odd `n`, 0 for even `n`.
pub fn mu(n: u32) -> u32 {
    n % 2
}

/// 0 for even `m`, 1 for `m = 1 mod 4`, 2 for `m = 3 mod 4`.
pub fn eta(m: u32) -> u32 {
    match m % 4 {
        1 => 1,
        3 => 2,
        _ => 0,
    }
}

/// Conjectured free 2-rank of a product of Dold manifolds `P(m_i, n_i)`.
/// This is an open question, not a theorem.
pub fn conjectured_frk2_dold_general(factors: &[(u32, u32)]) -> u32 {
    factors.iter().map(|&(m, n)| eta(m) + mu(n)).sum()
}
