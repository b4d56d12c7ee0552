mod common;

use common::*;
use galspin::exact::Coeff;
use galspin::op_algebra::fock::matrix_element;
use galspin::op_algebra::{Ladder, Monomial, OperatorExpr, Statistics};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn stats_strategy() -> impl Strategy<Value = Statistics> {
    prop_oneof![Just(Statistics::Bose), Just(Statistics::Fermi)]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_order_is_idempotent(seed: u64, stats in stats_strategy()) {
        let e = random_expr(&mut rng(seed), stats);
        let again = OperatorExpr::from_monomials(space(), stats, e.monomials()).unwrap();
        prop_assert_eq!(again, e);
    }

    #[test]
    fn adjoint_is_an_involution(seed: u64, stats in stats_strategy()) {
        let e = random_expr(&mut rng(seed), stats);
        prop_assert_eq!(e.adjoint().adjoint(), e);
    }

    #[test]
    fn adjoint_reverses_products(seed: u64, stats in stats_strategy()) {
        let mut r = rng(seed);
        let (a, b) = (random_expr(&mut r, stats), random_expr(&mut r, stats));
        let lhs = a.multiply(&b, stats).unwrap().adjoint();
        let rhs = b.adjoint().multiply(&a.adjoint(), stats).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_bilinear(seed: u64, stats in stats_strategy()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_expr(&mut r, stats), random_expr(&mut r, stats), random_expr(&mut r, stats));
        let k = random_coeff(&mut r);
        let left = a.scale(&k).add(&c).unwrap().bracket(&b, stats).unwrap();
        let expect = a.bracket(&b, stats).unwrap().scale(&k).add(&c.bracket(&b, stats).unwrap()).unwrap();
        prop_assert_eq!(left, expect);
        let right = b.bracket(&a.scale(&k).add(&c).unwrap(), stats).unwrap();
        let expect = b.bracket(&a, stats).unwrap().scale(&k).add(&b.bracket(&c, stats).unwrap()).unwrap();
        prop_assert_eq!(right, expect);
    }

    #[test]
    fn bracket_matches_its_definition(seed: u64, stats in stats_strategy()) {
        let mut r = rng(seed);
        let (a, b) = (random_expr(&mut r, stats), random_expr(&mut r, stats));
        let ab = a.multiply(&b, stats).unwrap();
        let ba = b.multiply(&a, stats).unwrap();
        let sign = Coeff::from_integer(stats.bracket_sign() as i64);
        prop_assert_eq!(a.bracket(&b, stats).unwrap(), ab.add(&ba.scale(&sign)).unwrap());
    }

    #[test]
    fn multiplication_is_associative(seed: u64, stats in stats_strategy()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_expr(&mut r, stats), random_expr(&mut r, stats), random_expr(&mut r, stats));
        let left = a.multiply(&b, stats).unwrap().multiply(&c, stats).unwrap();
        let right = a.multiply(&b.multiply(&c, stats).unwrap(), stats).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fermi_ladders_are_nilpotent(k in 0usize..3, create: bool) {
        let m = modes()[k];
        let l = if create { Ladder::create(m) } else { Ladder::annihilate(m) };
        let sq = OperatorExpr::from_monomials(space(), Statistics::Fermi, [Monomial::new(Coeff::one(), vec![l, l])]).unwrap();
        prop_assert!(sq.is_zero());
    }

    #[test]
    fn symbolic_matrix_elements_match_dense_fock(seed: u64, stats in stats_strategy()) {
        let mut r = rng(seed);
        let monos = random_monomials(&mut r);
        let expr = OperatorExpr::from_monomials(space(), stats, monos.clone()).unwrap();
        // kets with at most one quantum per mode; four factors then stay below the cutoff
        let fock = DenseFock::new(stats, 6);
        for ket_idx in 0..fock.dim {
            let occ = fock.occupations(ket_idx);
            if occ.iter().any(|&n| n > 1) {
                continue;
            }
            let out = fock.apply(&monos, &fock.basis(ket_idx));
            for bra_idx in 0..fock.dim {
                let sym = matrix_element(&expr, &fock_state(&fock.occupations(bra_idx)), &fock_state(&occ));
                prop_assert!((sym - out[bra_idx]).norm() <= 1e-12, "bra {:?} ket {:?}: {} vs {}", fock.occupations(bra_idx), occ, sym, out[bra_idx]);
            }
        }
    }
}
