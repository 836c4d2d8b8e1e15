mod common;

use common::{macaulay_dimension, random_presentation};
use dold_core::f2algebra::{Polynomial, QuotientAlgebra};
use dold_core::lefschetz::{lefschetz_number, trace_oracle, SignAutomorphism, DEFAULT_TRACE_LIMIT};
use dold_core::spaces::{dold_cohomology, euler_characteristic, product_cohomology};
use dold_core::ProductSpace;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn algebra_from_seed(seed: u64) -> QuotientAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ring, relations) = random_presentation(&mut rng);
    QuotientAlgebra::new(ring, relations, 8).unwrap()
}

fn random_element(a: &QuotientAlgebra, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = a.ring();
    let terms: Vec<_> = (0..=5)
        .flat_map(|d| ring.monomials_of_degree(d))
        .filter(|_| rng.random_bool(0.3))
        .collect();
    Polynomial::from_monomials(ring, terms)
}

fn sphere_space() -> impl Strategy<Value = ProductSpace> {
    prop::collection::vec((0u32..=2, 0u32..=3), 1..=3)
        .prop_map(|f| {
            let f: Vec<(u32, u32)> = f.into_iter().map(|(h, n)| (2 * h, n)).collect();
            ProductSpace::sphere_cp(&f).unwrap()
        })
}

fn valid_sign(x: &ProductSpace, bits: u64) -> SignAutomorphism {
    let k = x.k();
    let mut g = SignAutomorphism::from_bits(k, bits);
    for (i, f) in x.factors().iter().enumerate() {
        if f.cp_dim % 2 == 0 {
            g.xi[i] = dold_core::Sign::Plus;
        }
        if f.sphere_dim == 0 {
            g.lambda[i] = dold_core::Sign::Plus;
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_standard(seed in any::<u64>(), elem in any::<u64>()) {
        let a = algebra_from_seed(seed);
        let p = random_element(&a, elem);
        let nf = a.normal_form(&p).unwrap();
        prop_assert_eq!(a.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(nf.terms().all(|m| a.is_standard(m)));
    }

    #[test]
    fn squaring_is_additive(seed in any::<u64>(), e1 in any::<u64>(), e2 in any::<u64>()) {
        let a = algebra_from_seed(seed);
        let p = random_element(&a, e1);
        let q = random_element(&a, e2);
        let lhs = a.normal_form(&p.add(&q).unwrap().pow(2).unwrap()).unwrap();
        let rhs = a.normal_form(&p.pow(2).unwrap().add(&q.pow(2).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_dimensions_match_macaulay(seed in any::<u64>()) {
        let a = algebra_from_seed(seed);
        let series = a.poincare_series(8).unwrap();
        for d in 0..=8u32 {
            prop_assert_eq!(series[d as usize], macaulay_dimension(a.ring(), a.relations(), d));
        }
    }

    #[test]
    fn lefschetz_matches_trace(x in sphere_space(), bits in any::<u64>()) {
        let g = valid_sign(&x, bits);
        let tau = lefschetz_number(&g, &x).unwrap();
        prop_assert_eq!(tau, trace_oracle(&g, &x, DEFAULT_TRACE_LIMIT).unwrap());
        let forced = x.factors().iter().enumerate().any(|(i, f)| {
            g.lambda[i].is_minus() || (f.cp_dim % 2 == 1 && g.xi[i].is_minus())
        });
        prop_assert_eq!(tau == 0, forced);
    }

    #[test]
    fn identity_trace_is_euler_characteristic(x in sphere_space()) {
        prop_assume!(x.k0() == x.k());
        let id = SignAutomorphism::identity(x.k());
        prop_assert_eq!(lefschetz_number(&id, &x).unwrap(), euler_characteristic(&x));
    }

    #[test]
    fn composition_is_bitwise_addition(k in 1usize..=6, a in any::<u64>(), b in any::<u64>()) {
        let mask = (1u64 << (2 * k)) - 1;
        let ga = SignAutomorphism::from_bits(k, a & mask);
        let gb = SignAutomorphism::from_bits(k, b & mask);
        prop_assert_eq!(ga.compose(&gb).unwrap().bits(), (a ^ b) & mask);
    }

    #[test]
    fn product_series_is_convolution(x in sphere_space()) {
        let a = product_cohomology(&x).unwrap();
        let top = x.manifold_dimension();
        let series = a.poincare_series(top).unwrap();
        let whole = x.poincare_polynomial();
        let components = x.component_count() as usize;
        for d in 0..=top as usize {
            prop_assert_eq!((series[d] * components) as u64, whole[d]);
        }
        prop_assert!(a.poincare_duality_check(top).holds);
    }

    #[test]
    fn descriptors_round_trip(x in sphere_space()) {
        let text = x.to_string();
        prop_assert_eq!(text.parse::<ProductSpace>().unwrap(), x);
    }
}

#[test]
fn dold_rings_are_poincare_duality_algebras() {
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            if m + n == 0 {
                continue;
            }
            let a = dold_cohomology(m, n).unwrap();
            assert_eq!(a.total_dimension(), Some(((m + 1) * (n + 1)) as usize));
            assert!(a.poincare_duality_check(m + 2 * n).holds, "P({m},{n})");
            let chi = euler_characteristic(&ProductSpace::dold(&[(m, n)]).unwrap());
            assert_eq!(chi == 0, m % 2 == 1);
        }
    }
}
