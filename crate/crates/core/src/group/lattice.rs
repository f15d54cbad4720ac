//! Subgroup lattice operations: enumeration, conjugacy, Sylow theory,
//! normalizers, quotients and complements.

use std::collections::HashSet;

use super::arith::is_prime;
use super::{FiniteGroup, GroupHom, Subgroup};
use crate::error::{Error, Result};

/// Largest group order for which the full subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 400;

/// Every subgroup exactly once, sorted by order and then by element list.
pub fn all_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    all_subgroups_capped(group, DEFAULT_SUBGROUP_CAP)
}

/// Layer-wise generation: start from the trivial subgroup and repeatedly
/// join each subgroup of the current layer with a cyclic subgroup it does
/// not contain.
pub fn all_subgroups_capped(group: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if group.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    // one generator per distinct cyclic subgroup
    let mut cyclic_gens = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in group.elements().skip(1) {
        if seen_cyclic.insert(Subgroup::generated_by(group, &[x])) {
            cyclic_gens.push(x);
        }
    }
    let trivial = Subgroup::trivial();
    let mut found: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut layer: Vec<(Subgroup, Vec<usize>)> = vec![(trivial, Vec::new())];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (h, gens) in &layer {
            for &c in &cyclic_gens {
                if h.contains(c) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(c);
                let k = Subgroup::generated_by(group, &g2);
                if found.insert(k.clone()) {
                    next.push((k, g2));
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Normal subgroups, obtained as joins of normal closures of single
/// elements; no order cap beyond the table cap. Sorted like
/// [`all_subgroups`].
pub fn normal_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let classes = conjugacy_classes(group);
    let mut closures: Vec<Subgroup> = Vec::new();
    for class in classes.iter().skip(1) {
        let k = Subgroup::generated_by(group, class);
        if !closures.contains(&k) {
            closures.push(k);
        }
    }
    let trivial = Subgroup::trivial();
    let mut found: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut layer = vec![trivial];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for h in &layer {
            for k in &closures {
                if k.is_subgroup_of(h) {
                    continue;
                }
                let gens: Vec<usize> = h.elements().iter().chain(k.elements()).copied().collect();
                let j = Subgroup::generated_by(group, &gens);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    out
}

/// Orbits of the conjugation action, each sorted, ordered by smallest
/// element (so the identity class comes first).
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut class: Vec<usize> = group.elements().map(|g| group.conjugate(g, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            assigned[y] = true;
        }
        classes.push(class);
    }
    classes
}

/// `{g : gHg⁻¹ = H}`.
pub fn normalizer(group: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let elements = group
        .elements()
        .filter(|&g| h.elements().iter().all(|&x| h.contains(group.conjugate(g, x))))
        .collect();
    Subgroup::from_sorted_unchecked(elements)
}

fn p_part(order: usize, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as usize;
    if !order.is_multiple_of(p) {
        return Err(Error::PrimeDoesNotDivideOrder { p: p as u64, order });
    }
    let mut q = 1;
    let mut m = order;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
    }
    Ok(q)
}

/// One Sylow `p`-subgroup, grown one step at a time inside normalizers.
pub fn sylow_subgroup(group: &FiniteGroup, p: u64) -> Result<Subgroup> {
    let target = p_part(group.order(), p)?;
    let p = p as usize;
    let mut current = Subgroup::trivial();
    while current.order() < target {
        let n = normalizer(group, &current);
        // an element whose coset in N(P)/P has order p
        let step = n.elements().iter().copied().find_map(|g| {
            if current.contains(g) {
                return None;
            }
            let mut x = g;
            let mut k = 1;
            while !current.contains(x) {
                x = group.mul(x, g);
                k += 1;
            }
            if k % p != 0 {
                return None;
            }
            // g^(k/p) has coset order exactly p
            Some(group.pow(g, k / p))
        });
        let step = step.expect("N(P)/P has order divisible by p while P is not Sylow");
        let mut gens: Vec<usize> = current.elements().to_vec();
        gens.push(step);
        current = Subgroup::generated_by(group, &gens);
    }
    Ok(current)
}

/// All Sylow `p`-subgroups (the conjugates of one), sorted.
pub fn sylow_subgroups(group: &FiniteGroup, p: u64) -> Result<Vec<Subgroup>> {
    let s = sylow_subgroup(group, p)?;
    let mut all: Vec<Subgroup> = group.elements().map(|g| s.conjugate_by(group, g)).collect();
    all.sort();
    all.dedup();
    Ok(all)
}

/// Coset group `G/N` and the projection. Cosets are numbered by their
/// smallest element, so the identity coset is 0.
pub fn quotient(group: &FiniteGroup, normal: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !normal.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    let n = group.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &k in normal.elements() {
            coset[group.mul(x, k)] = id;
        }
    }
    let table: Vec<Vec<usize>> =
        reps.iter().map(|&a| reps.iter().map(|&b| coset[group.mul(a, b)]).collect()).collect();
    let q = FiniteGroup::from_multiplication_table(&table)?;
    let proj = GroupHom::new_unchecked(group.clone(), q.clone(), coset);
    Ok((q, proj))
}

/// Subgroups `S` with `|S|·|N| = |G|` and `S ∩ N = 1`.
pub fn complements(group: &FiniteGroup, normal: &Subgroup) -> Result<Vec<Subgroup>> {
    complements_capped(group, normal, DEFAULT_SUBGROUP_CAP)
}

pub fn complements_capped(group: &FiniteGroup, normal: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
    if !normal.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    if normal.is_trivial() {
        return Ok(vec![Subgroup::whole(group)]);
    }
    let want = group.order() / normal.order();
    Ok(all_subgroups_capped(group, cap)?
        .into_iter()
        .filter(|s| s.order() == want && s.intersection(normal).is_trivial())
        .collect())
}

/// Whether some element of `h` generates it.
pub fn is_cyclic(group: &FiniteGroup, h: &Subgroup) -> bool {
    h.elements().iter().any(|&x| group.element_order(x) == h.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, gens: &[&[usize]]) -> FiniteGroup {
        let gens: Vec<Vec<usize>> = gens.iter().map(|g| g.to_vec()).collect();
        FiniteGroup::from_permutation_generators(degree, &gens).unwrap()
    }

    fn s3() -> FiniteGroup {
        perm(3, &[&[1, 0, 2], &[1, 2, 0]])
    }

    fn a5() -> FiniteGroup {
        perm(5, &[&[1, 2, 3, 4, 0], &[1, 2, 0, 3, 4]])
    }

    fn v4() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    /// Brute-force oracle: every subset that is closed under multiplication.
    fn subgroups_by_subsets(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 16);
        (0u32..(1 << n))
            .filter(|&mask| {
                mask & 1 == 1
                    && (0..n).all(|a| {
                        mask >> a & 1 == 0 || (0..n).all(|b| mask >> b & 1 == 0 || mask >> g.mul(a, b) & 1 == 1)
                    })
            })
            .count()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&FiniteGroup::cyclic(2)).unwrap().len(), 2);
        let s = all_subgroups(&s3()).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.iter().map(|h| h.order()).collect::<Vec<_>>(), vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(all_subgroups(&v4()).unwrap().len(), 5);
        for g in [s3(), v4(), FiniteGroup::cyclic(12), perm(4, &[&[1, 0, 2, 3], &[0, 1, 3, 2]])] {
            assert_eq!(all_subgroups(&g).unwrap().len(), subgroups_by_subsets(&g));
        }
        let s4 = perm(4, &[&[1, 0, 2, 3], &[1, 2, 3, 0]]);
        assert_eq!(all_subgroups(&s4).unwrap().len(), 30);
        assert_eq!(all_subgroups(&a5()).unwrap().len(), 59);
    }

    #[test]
    fn subgroup_cap() {
        assert!(matches!(all_subgroups_capped(&a5(), 50), Err(Error::OrderCapExceeded { cap: 50 })));
    }

    #[test]
    fn conjugacy_class_sizes() {
        let sizes = |g: &FiniteGroup| {
            let mut v: Vec<usize> = conjugacy_classes(g).iter().map(|c| c.len()).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(sizes(&FiniteGroup::cyclic(5)), vec![1; 5]);
        assert_eq!(sizes(&s3()), vec![1, 2, 3]);
        assert_eq!(sizes(&a5()), vec![1, 12, 12, 15, 20]);
        assert_eq!(conjugacy_classes(&a5())[0], vec![0]);
    }

    #[test]
    fn sylow() {
        let g = s3();
        assert_eq!(sylow_subgroups(&g, 3).unwrap().len(), 1);
        let twos = sylow_subgroups(&g, 2).unwrap();
        assert_eq!(twos.len(), 3);
        assert!(twos.iter().all(|h| h.order() == 2));
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(sylow_subgroups(&z4, 2).unwrap(), vec![Subgroup::whole(&z4)]);
        assert!(matches!(sylow_subgroups(&g, 5), Err(Error::PrimeDoesNotDivideOrder { .. })));
        assert!(matches!(sylow_subgroups(&g, 4), Err(Error::NotPrime(4))));
        let a = a5();
        assert_eq!(sylow_subgroups(&a, 2).unwrap().len(), 5);
        assert_eq!(sylow_subgroups(&a, 3).unwrap().len(), 10);
        assert_eq!(sylow_subgroups(&a, 5).unwrap().len(), 6);
    }

    #[test]
    fn normalizers() {
        let g = s3();
        let transposition = Subgroup::generated_by(&g, &[1]);
        assert_eq!(transposition.order(), 2);
        assert_eq!(normalizer(&g, &transposition), transposition);
        let rot = sylow_subgroup(&g, 3).unwrap();
        assert_eq!(normalizer(&g, &rot).order(), 6);
        let a = a5();
        let p2 = sylow_subgroup(&a, 2).unwrap();
        assert_eq!(normalizer(&a, &p2).order(), 12);
    }

    #[test]
    fn quotients() {
        let g = s3();
        let (q, _) = quotient(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(q.order(), 1);
        let rot = sylow_subgroup(&g, 3).unwrap();
        let (q, proj) = quotient(&g, &rot).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.kernel(), rot);
        assert!(proj.is_surjective());
        let z6 = FiniteGroup::cyclic(6);
        let two = Subgroup::from_elements(&z6, &[0, 3]).unwrap();
        let (q, _) = quotient(&z6, &two).unwrap();
        assert_eq!(q.order(), 3);
        assert!(is_cyclic(&q, &Subgroup::whole(&q)));
        assert!(matches!(quotient(&g, &Subgroup::generated_by(&g, &[1])), Err(Error::NotNormal)));
    }

    #[test]
    fn complement_examples() {
        let v = v4();
        assert_eq!(complements(&v, &Subgroup::trivial()).unwrap(), vec![Subgroup::whole(&v)]);
        let factor = Subgroup::from_elements(&v, &[0, 2]).unwrap();
        assert_eq!(complements(&v, &factor).unwrap().len(), 2);
        let z4 = FiniteGroup::cyclic(4);
        let half = Subgroup::from_elements(&z4, &[0, 2]).unwrap();
        assert!(complements(&z4, &half).unwrap().is_empty());
    }

    #[test]
    fn cyclicity() {
        let v = v4();
        assert!(!is_cyclic(&v, &Subgroup::whole(&v)));
        let z6 = FiniteGroup::cyclic(6);
        assert!(is_cyclic(&z6, &Subgroup::whole(&z6)));
    }

    #[test]
    fn normal_subgroups_match_lattice_filter() {
        let s4 = perm(4, &[&[1, 0, 2, 3], &[1, 2, 3, 0]]);
        for g in [s3(), v4(), s4, a5(), FiniteGroup::cyclic(12)] {
            let filtered: Vec<Subgroup> =
                all_subgroups(&g).unwrap().into_iter().filter(|h| h.is_normal_in(&g)).collect();
            assert_eq!(normal_subgroups(&g), filtered);
        }
    }
}
