#![allow(dead_code)]

use dold_core::f2algebra::{PolyRing, Polynomial};
use dold_core::linalg::{F2Matrix, F2Vec};
use rand::Rng;
use std::sync::Arc;

/// Quotient dimension in degree `d` as `#monomials - rank` of the matrix
/// spanned by all monomial multiples of the relations landing in degree `d`.
pub fn macaulay_dimension(ring: &Arc<PolyRing>, relations: &[Polynomial], d: u32) -> usize {
    let monomials = ring.monomials_of_degree(d);
    let rows: Vec<F2Vec> = relations
        .iter()
        .filter(|r| !r.is_zero())
        .flat_map(|r| {
            let e = r.degree().unwrap();
            let multipliers = if e <= d { ring.monomials_of_degree(d - e) } else { Vec::new() };
            multipliers.into_iter().map(move |u| r.mul_monomial(&u).unwrap())
        })
        .map(|p| {
            let mut v = F2Vec::zeros(monomials.len());
            for t in p.terms() {
                let i = monomials.iter().position(|m| m == t).unwrap();
                v.flip(i);
            }
            v
        })
        .collect();
    monomials.len() - F2Matrix::from_rows(monomials.len(), rows).rank()
}

/// A random homogeneous presentation: up to three variables of degree at
/// most 3 and up to three relations of degree at most 4.
pub fn random_presentation<R: Rng>(rng: &mut R) -> (Arc<PolyRing>, Vec<Polynomial>) {
    let nvars = rng.random_range(1..=3);
    let names = ["x", "y", "z"];
    let vars: Vec<(&str, u32)> = (0..nvars).map(|i| (names[i], rng.random_range(1..=3))).collect();
    let ring = PolyRing::with_variables(&vars).unwrap();
    let mut relations = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        let candidates: Vec<u32> = (1..=4)
            .filter(|&e| !ring.monomials_of_degree(e).is_empty())
            .collect();
        let e = candidates[rng.random_range(0..candidates.len())];
        let monomials = ring.monomials_of_degree(e);
        let mut terms: Vec<_> = monomials.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
        if terms.is_empty() {
            terms.push(monomials[rng.random_range(0..monomials.len())].clone());
        }
        relations.push(Polynomial::from_monomials(&ring, terms));
    }
    (ring, relations)
}
