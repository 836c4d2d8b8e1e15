//! Buchberger's algorithm over F2 for the graded monomial order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::polynomial::Polynomial;
use super::ring::{Monomial, PolyRing};

/// Full multivariate division remainder of `p` by `basis`.
///
/// Every term of the result is divisible by no leading monomial of `basis`.
pub fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    let mut work = p.clone();
    let mut rem = Polynomial::zero(p.ring());
    while let Some(t) = work.pop_leading() {
        let divisor = basis.iter().find(|g| {
            g.leading()
                .map(|lt| lt.divides(&t))
                .unwrap_or(false)
        });
        match divisor {
            Some(g) => {
                let lt = g.leading().expect("nonzero divisor");
                let q = t.div(lt).expect("checked divisibility");
                for s in g.terms().rev().skip(1) {
                    work.toggle(s.checked_mul(&q)?);
                }
            }
            None => rem.toggle(t),
        }
    }
    Ok(rem)
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    lcm_degree: u32,
    i: usize,
    j: usize,
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, ring: &PolyRing) -> Result<Polynomial> {
    let lf = f.leading().expect("nonzero");
    let lg = g.leading().expect("nonzero");
    let l = lf.lcm(lg, ring);
    let mut s = f.mul_monomial(&l.div(lf).expect("lcm"))?;
    s.add_assign_unchecked(&g.mul_monomial(&l.div(lg).expect("lcm"))?);
    Ok(s)
}

/// Reduced Gröbner basis of the ideal generated by `relations`.
///
/// With `degree_bound = Some(b)` only S-pairs whose lcm has degree at most
/// `b` are processed. For homogeneous input the result then agrees with the
/// true reduced basis in every degree up to `b`.
pub fn buchberger(relations: &[Polynomial], degree_bound: Option<u32>) -> Result<Vec<Polynomial>> {
    let Some(first) = relations.first() else {
        return Ok(Vec::new());
    };
    let ring: Arc<PolyRing> = Arc::clone(first.ring());
    if relations.iter().any(|r| **r.ring() != *ring) {
        return Err(Error::VariableMismatch);
    }

    let mut basis: Vec<Polynomial> = Vec::new();
    for r in relations {
        let r = reduce(r, &basis)?;
        if !r.is_zero() {
            basis.push(r);
        }
    }

    let mut pairs = BinaryHeap::new();
    let push_pairs = |pairs: &mut BinaryHeap<Reverse<Pair>>, basis: &[Polynomial], j: usize| {
        let lj = basis[j].leading().expect("nonzero");
        for (i, g) in basis.iter().enumerate().take(j) {
            let li = g.leading().expect("nonzero");
            if li.is_coprime(lj) {
                continue;
            }
            let lcm_degree = li.lcm(lj, &ring).degree();
            if degree_bound.is_some_and(|b| lcm_degree > b) {
                continue;
            }
            pairs.push(Reverse(Pair { lcm_degree, i, j }));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut pairs, &basis, j);
    }

    while let Some(Reverse(Pair { i, j, .. })) = pairs.pop() {
        let s = s_polynomial(&basis[i], &basis[j], &ring)?;
        let r = reduce(&s, &basis)?;
        if !r.is_zero() {
            basis.push(r);
            push_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    interreduce(basis)
}

fn interreduce(mut basis: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    basis.sort_by(|a, b| a.leading().cmp(&b.leading()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lt = g.leading().expect("nonzero").clone();
        let redundant = minimal
            .iter()
            .any(|h| h.leading().expect("nonzero").divides(&lt));
        if !redundant {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let lt: Monomial = g.leading().expect("nonzero").clone();
        let mut tail = g.clone();
        tail.toggle(lt.clone());
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, h)| h.clone())
            .collect();
        let mut r = reduce(&tail, &others)?;
        r.toggle(lt);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| a.leading().cmp(&b.leading()));
    Ok(reduced)
}
