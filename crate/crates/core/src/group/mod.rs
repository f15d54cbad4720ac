//! Finite groups given by full multiplication tables.
//!
//! Elements are the indices `0..order`; index 0 is always the identity.
//! Subgroups, homomorphisms and the usual lattice operations live in the
//! submodules and are re-exported here.

mod arith;
mod hom;
mod lattice;
mod subgroup;

use std::collections::{HashMap, HashSet};

pub use arith::{factorize, is_prime, is_prime_power, OrderKind};
pub use hom::GroupHom;
pub use lattice::{
    all_subgroups, all_subgroups_capped, complements, complements_capped, conjugacy_classes,
    is_cyclic, normal_subgroups, normalizer, quotient, sylow_subgroup, sylow_subgroups,
    DEFAULT_SUBGROUP_CAP,
};
pub use subgroup::Subgroup;

use crate::error::{Error, NotAGroup, Result};

/// Largest order accepted when building a full multiplication table.
pub const DEFAULT_ORDER_CAP: usize = 10080;

/// Tables up to this order get a full associativity scan; larger ones use
/// Light's test against a generating set.
const FULL_SCAN_LIMIT: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup { order: 1, mul: vec![0], inv: vec![0] }
    }

    /// Validates a square table of element indices.
    pub fn from_multiplication_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup(NotAGroup::Empty));
        }
        if n > DEFAULT_ORDER_CAP {
            return Err(Error::OrderCapExceeded { cap: DEFAULT_ORDER_CAP });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(NotAGroup::NotSquare { row: r, len: row.len() }));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup(NotAGroup::EntryOutOfRange { row: r, col: c, value: v }));
                }
                mul.push(v as u32);
            }
        }
        Self::from_flat(n, mul).map_err(Error::NotAGroup)
    }

    fn from_flat(n: usize, mul: Vec<u32>) -> std::result::Result<Self, NotAGroup> {
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(NotAGroup::IdentityNotZero { element: x });
            }
        }
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..n {
                let v = at(r, c);
                if seen[v] {
                    return Err(NotAGroup::NotLatin { row: r });
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let v = at(r, c);
                if seen[v] {
                    return Err(NotAGroup::NotLatin { row: c });
                }
                seen[v] = true;
            }
        }
        let mut inv = vec![0u32; n];
        for g in 0..n {
            let h = (0..n).find(|&h| at(g, h) == 0).ok_or(NotAGroup::NoInverse { element: g })?;
            if at(h, g) != 0 {
                return Err(NotAGroup::NoInverse { element: g });
            }
            inv[g] = h as u32;
        }
        let middles: Vec<usize> = if n <= FULL_SCAN_LIMIT {
            (0..n).collect()
        } else {
            greedy_generators(n, &mul)
        };
        for a in 0..n {
            for &b in &middles {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(NotAGroup::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, mul, inv })
    }

    /// Closure of permutation generators on `{0..degree-1}`, capped at
    /// [`DEFAULT_ORDER_CAP`].
    pub fn from_permutation_generators(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutation_generators_capped(degree, generators, DEFAULT_ORDER_CAP)
    }

    /// Elements are ordered by word length in the generators, then
    /// lexicographically by image list. The product `a*b` is the composition
    /// "apply `b`, then `a`".
    pub fn from_permutation_generators_capped(
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} has length {} but degree is {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidPermutation(format!("generator {i} is not a bijection")));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut fresh: Vec<Vec<usize>> = Vec::new();
            let mut fresh_set: HashSet<Vec<usize>> = HashSet::new();
            for &e in &layer {
                for g in generators {
                    let p: Vec<usize> = elements[e].iter().map(|&x| g[x]).collect();
                    if !index.contains_key(&p) && fresh_set.insert(p.clone()) {
                        fresh.push(p);
                    }
                }
            }
            fresh.sort();
            layer.clear();
            for p in fresh {
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                index.insert(p.clone(), elements.len());
                layer.push(elements.len());
                elements.push(p);
            }
        }
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        let mut buf = vec![0usize; degree];
        for a in &elements {
            for b in &elements {
                for x in 0..degree {
                    buf[x] = a[b[x]];
                }
                mul.push(index[&buf] as u32);
            }
        }
        let mut inv = vec![0u32; n];
        for (i, p) in elements.iter().enumerate() {
            let mut q = vec![0usize; degree];
            for (x, &y) in p.iter().enumerate() {
                q[y] = x;
            }
            inv[i] = index[&q] as u32;
        }
        Ok(FiniteGroup { order: n, mul, inv })
    }

    /// Cyclic group of order `n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
        let inv = (0..n).map(|a| ((n - a) % n) as u32).collect();
        FiniteGroup { order: n, mul, inv }
    }

    /// Direct product; the pair `(a, b)` has index `a * |right| + b`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Self {
        let (n, m) = (left.order, right.order);
        let order = n * m;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let a = left.mul(x / m, y / m);
                let b = right.mul(x % m, y % m);
                mul.push((a * m + b) as u32);
            }
        }
        let inv = (0..order).map(|x| (left.inv(x / m) * m + right.inv(x % m)) as u32).collect();
        FiniteGroup { order, mul, inv }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// The isomorphic group whose element `relabel[x]` plays the role of `x`.
    /// `relabel` must be a permutation fixing 0.
    pub fn relabel(&self, relabel: &[usize]) -> Result<Self> {
        let n = self.order;
        if relabel.len() != n || relabel.first() != Some(&0) {
            return Err(Error::InvalidPermutation("relabeling must fix the identity".into()));
        }
        let mut back = vec![usize::MAX; n];
        for (x, &y) in relabel.iter().enumerate() {
            if y >= n || back[y] != usize::MAX {
                return Err(Error::InvalidPermutation("relabeling is not a bijection".into()));
            }
            back[y] = x;
        }
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = relabel[self.mul(back[a], back[b])] as u32;
            }
        }
        let inv = (0..n).map(|a| relabel[self.inv(back[a])] as u32).collect();
        Ok(FiniteGroup { order: n, mul, inv })
    }
}

fn greedy_generators(n: usize, mul: &[u32]) -> Vec<usize> {
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for cand in 1..n {
        if inside[cand] {
            continue;
        }
        gens.push(cand);
        // re-close under right multiplication by all generators
        let mut queue: Vec<usize> = members.clone();
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = mul[x * n + s] as usize;
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push(y);
                }
            }
        }
        if members.len() == n {
            break;
        }
    }
    gens
}
