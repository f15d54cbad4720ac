mod support;

use eqfix_core::catalog;
use eqfix_core::group::{
    all_subgroups, factorize, normal_subgroups, normalizer, sylow_subgroups, FiniteGroup, Subgroup,
};
use eqfix_core::oliver::{classify, degree_zero_coefficients, degree_zero_solution, OliverClass};
use eqfix_core::trace::rank_of_orbit_module;
use eqfix_core::{Int, Rational};
use num_traits::One;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("C6", FiniteGroup::cyclic(6)),
        ("S3", catalog::symmetric(3)),
        ("S4", catalog::symmetric(4)),
        ("A4", catalog::alternating(4)),
        ("A5", catalog::alternating(5)),
        ("D5", catalog::dihedral(5)),
        ("C12", FiniteGroup::cyclic(12)),
        ("S3xC3", catalog::group_by_name("S3xC3").unwrap()),
    ]
}

fn relabeled(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> FiniteGroup {
    let mut rest: Vec<usize> = (1..g.order()).collect();
    rest.shuffle(rng);
    let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
    g.relabel(&perm).unwrap()
}

#[test]
fn classification_matches_exhaustive_search() {
    for (name, g) in small_groups() {
        assert_eq!(classify(&g).unwrap().name(), support::classify_by_search(&g), "{name}");
    }
}

#[test]
fn lattice_matches_pair_closures() {
    for (name, g) in small_groups() {
        let ours: Vec<Vec<usize>> = all_subgroups(&g).unwrap().iter().map(|s| s.elements().to_vec()).collect();
        let mut oracle: Vec<Vec<usize>> =
            support::subgroups_by_pairs(&g).into_iter().map(|s| s.into_iter().collect()).collect();
        let mut sorted = ours.clone();
        sorted.sort();
        oracle.sort();
        assert_eq!(sorted, oracle, "{name}");
        let whole: std::collections::BTreeSet<usize> = g.elements().collect();
        let normals = oracle.iter().filter(|s| support::is_normal_in(&g, &s.iter().copied().collect(), &whole)).count();
        assert_eq!(normal_subgroups(&g).len(), normals, "{name}");
    }
}

#[test]
fn classification_survives_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in small_groups() {
        let base = classify(&g).unwrap();
        for _ in 0..20 {
            let h = relabeled(&g, &mut rng);
            let c = classify(&h).unwrap();
            assert_eq!(c.name(), base.name(), "{name}");
            if let (
                OliverClass::NontrivialUnknown { p_subgroup: p0, h_subgroup: h0 },
                OliverClass::NontrivialUnknown { p_subgroup: p1, h_subgroup: h1 },
            ) = (&base, &c)
            {
                assert_eq!((p0.order(), h0.order()), (p1.order(), h1.order()));
            }
        }
    }
}

#[test]
fn sylow_counts() {
    for (name, g) in catalog::non_prime_power_groups() {
        if g.order() > 60 {
            continue;
        }
        for (p, k) in factorize(g.order() as u64) {
            let syl = sylow_subgroups(&g, p).unwrap();
            let n_p = syl.len() as u64;
            assert_eq!(n_p % p, 1, "{name} p={p}");
            assert_eq!((g.order() as u64 / p.pow(k)) % n_p, 0, "{name} p={p}");
            assert!(syl.iter().all(|s| s.order() as u64 == p.pow(k)));
            assert_eq!(g.order() / normalizer(&g, &syl[0]).order(), syl.len(), "{name}");
        }
    }
}

#[test]
fn catalog_degree_zero() {
    for (name, g) in catalog::non_prime_power_groups() {
        let sol = degree_zero_solution(&g).unwrap();
        assert_eq!(sol.check(), 0, "{name}");
    }
}

#[test]
fn orbit_module_ranks() {
    for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order() <= 24) {
        for h in all_subgroups(&g).unwrap() {
            let r = rank_of_orbit_module::<Rational>(&g, &h);
            assert!(r.coefficients().iter().all(support::nonnegative), "{name}");
            assert!(r.total().is_one(), "{name}");
            assert_eq!(r.rational_dimension(), Rational::from_integer(Int::from(g.order() / h.order())), "{name}");
        }
        let trivial = rank_of_orbit_module::<Rational>(&g, &Subgroup::trivial());
        assert!(trivial.coefficient_of(0).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn degree_zero_on_random_lists(raw in prop::collection::vec(1i64..5000, 1..6), extra in 1i64..5000) {
        let g = raw.iter().fold(0, |a, &b| support::abs_gcd(a, b));
        // append a coprime entry so the list is always solvable
        let mut ms = raw.clone();
        let mut e = extra;
        while support::abs_gcd(g, e) != 1 {
            e += 1;
        }
        ms.push(e);
        let a = degree_zero_coefficients(&ms).unwrap();
        prop_assert_eq!(1 + a.iter().zip(&ms).map(|(x, m)| x * m).sum::<i64>(), 0);
        if g > 1 {
            prop_assert!(degree_zero_coefficients(&raw).is_err());
        }
    }
}
