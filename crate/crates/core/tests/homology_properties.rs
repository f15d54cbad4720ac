mod support;

use eqfix_core::catalog;
use eqfix_core::complex::{betti_numbers, homology_integral, homology_mod_p, Subcomplex};
use eqfix_core::pseudo::{is_homology_equivalence, mapping_cone, mapping_torus};
use eqfix_core::{Int, IntChainMap};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mapping_torus_matches_wang(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, h) = support::random_self_map(&mut rng);
        let t = mapping_torus(&c, &h).unwrap();
        prop_assert!(t.is_boundary_square_zero());
        prop_assert_eq!(t.euler_characteristic(), 0);
        let betti = betti_numbers(&t);
        prop_assert_eq!(alternating(&betti), 0);
        prop_assert_eq!(betti, support::wang_betti(&c, &h));
    }

    #[test]
    fn euler_poincare_on_subcomplexes(seed in any::<u64>(), which in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = &support::targets()[which];
        let picks: Vec<usize> = (0..y.len()).filter(|_| rng.gen_bool(0.4)).collect();
        let a = Subcomplex::closure_of(y, &picks);
        let c = a.chain_complex::<Int>();
        prop_assert_eq!(alternating(&betti_numbers(&c)), a.euler_characteristic());
        prop_assert_eq!(betti_numbers(&c), support::rational_betti(&c));
        for p in [2u64, 3] {
            prop_assert_eq!(alternating(&homology_mod_p(&c, p)), a.euler_characteristic());
        }
    }

    #[test]
    fn inclusion_exclusion(seed in any::<u64>(), which in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = &support::targets()[which];
        let pa: Vec<usize> = (0..y.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let pb: Vec<usize> = (0..y.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let a = Subcomplex::closure_of(y, &pa);
        let b = Subcomplex::closure_of(y, &pb);
        prop_assert_eq!(
            a.union(&b).euler_characteristic() + a.intersection(&b).euler_characteristic(),
            a.euler_characteristic() + b.euler_characteristic()
        );
        let comps: i64 = a.components().iter().map(|k| k.euler_characteristic()).sum();
        prop_assert_eq!(comps, a.euler_characteristic());
    }

    #[test]
    fn cone_detects_equivalences(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, h) = support::random_self_map(&mut rng);
        let cone = mapping_cone(&h);
        prop_assert_eq!(cone.euler_characteristic(), 0);
        let acyclic_rationally = support::rational_betti(&cone).iter().all(|&b| b == 0);
        if is_homology_equivalence(&h) {
            prop_assert!(acyclic_rationally);
        }
        let double = IntChainMap::scalar(&c, Int::from(2)).compose(&h).unwrap();
        if !c.is_empty() {
            prop_assert!(!is_homology_equivalence(&double) || c.ranks().iter().all(|&r| r == 0));
        }
    }
}

#[test]
fn catalog_homology() {
    let betti = |x: &eqfix_core::complex::CwComplex| betti_numbers(&x.chain_complex::<Int>());
    assert_eq!(betti(&catalog::circle()), vec![1, 1]);
    assert_eq!(betti(&catalog::sphere2()), vec![1, 0, 1]);
    assert_eq!(betti(&catalog::disk()), vec![1, 0, 0]);
    let rp2 = homology_integral(&catalog::projective_plane().chain_complex::<Int>());
    assert_eq!(rp2[1].torsion, vec![Int::from(2)]);
}
