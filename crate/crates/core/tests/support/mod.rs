//! Random generators and independent oracles shared by the property suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use eqfix_core::catalog;
use eqfix_core::complex::{Cell, CwComplex, GCWComplex};
use eqfix_core::euler::{CellularMap, EulerProfile};
use eqfix_core::group::FiniteGroup;
use eqfix_core::{Int, IntChainComplex, IntChainMap, Rational};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn theta() -> CwComplex {
    let cells = vec![
        Cell { id: 0, dim: 0 },
        Cell { id: 1, dim: 0 },
        Cell { id: 2, dim: 1 },
        Cell { id: 3, dim: 1 },
        Cell { id: 4, dim: 1 },
    ];
    let b = vec![(0, -1), (1, 1)];
    CwComplex::new(cells, vec![(2, b.clone()), (3, b.clone()), (4, b)]).unwrap()
}

pub fn path(k: u64) -> CwComplex {
    let mut cells: Vec<Cell> = (0..=k).map(|id| Cell { id, dim: 0 }).collect();
    cells.extend((0..k).map(|e| Cell { id: 100 + e, dim: 1 }));
    let boundary = (0..k).map(|e| (100 + e, vec![(e, -1), (e + 1, 1)])).collect();
    CwComplex::new(cells, boundary).unwrap()
}

/// Regular connected targets.
pub fn targets() -> Vec<CwComplex> {
    vec![catalog::point(), catalog::interval(), catalog::circle(), catalog::disk(), catalog::sphere2(), theta(), path(3)]
}

#[derive(Default)]
struct MapBuilder {
    cells: Vec<Cell>,
    boundary: Vec<(u64, Vec<(u64, i64)>)>,
    carrier: Vec<(u64, u64)>,
    next: u64,
}

impl MapBuilder {
    /// Copies the listed cells of `y` (closed under faces) carried identically;
    /// returns the id offset.
    fn copy(&mut self, y: &CwComplex, cells: &[usize]) -> u64 {
        let base = self.next;
        self.next += y.len() as u64;
        for &t in cells {
            let id = base + t as u64;
            self.cells.push(Cell { id, dim: y.dim(t) });
            self.carrier.push((id, y.id(t)));
            let faces: Vec<(u64, i64)> = y.boundary(t).iter().map(|&(f, k)| (base + f as u64, k)).collect();
            if !faces.is_empty() {
                self.boundary.push((id, faces));
            }
        }
        base
    }

    fn fresh(&mut self, dim: usize, carrier: u64) -> u64 {
        let id = self.next;
        self.next += 1;
        self.cells.push(Cell { id, dim });
        self.carrier.push((id, carrier));
        id
    }
}

/// Builds a face-compatible cellular map onto `y`: a copy of `y`, `n` copies
/// of random closed cells, χ-neutral whiskers and occasional stray points.
pub fn random_map<R: Rng>(rng: &mut R, y: &CwComplex, n: u64) -> CellularMap {
    let mut b = MapBuilder::default();
    let all: Vec<usize> = (0..y.len()).collect();
    let base = b.copy(y, &all);
    for _ in 0..rng.gen_range(0..4) {
        let root = rng.gen_range(0..y.len());
        for _ in 0..n {
            b.copy(y, &y.closure(root));
        }
    }
    for _ in 0..rng.gen_range(0..4) {
        // vertex and edge both carried by τ, the edge ending on the copy of
        // a vertex of τ
        let tau = rng.gen_range(0..y.len());
        if y.dim(tau) == 0 {
            continue;
        }
        let verts: Vec<usize> = y.closure(tau).into_iter().filter(|&t| y.dim(t) == 0).collect();
        let v = *verts.choose(rng).unwrap();
        let w = b.fresh(0, y.id(tau));
        let e = b.fresh(1, y.id(tau));
        b.boundary.push((e, vec![(w, -1), (base + v as u64, 1)]));
    }
    if rng.gen_bool(0.25) {
        b.fresh(0, y.id(rng.gen_range(0..y.len())));
    }
    let source = CwComplex::new(b.cells, b.boundary).unwrap();
    CellularMap::from_ids(source, y.clone(), &b.carrier).unwrap()
}

/// Nonzero open profile whose total is (or is not) `≡ χ(Y) mod n`.
pub fn random_open_profile<R: Rng>(rng: &mut R, y: &CwComplex, n: u64, congruent: bool) -> EulerProfile {
    loop {
        let mut open: Vec<i64> = (0..y.len()).map(|_| rng.gen_range(-4..=4)).collect();
        let total: i64 = open.iter().sum();
        let chi = y.euler_characteristic();
        let fix = if n == 0 { chi - total } else { (chi - total).rem_euclid(n as i64) };
        let shift = if congruent { fix } else if n == 0 { fix + rng.gen_range(1..4) * if rng.gen() { 1 } else { -1 } } else { fix + rng.gen_range(1..n as i64) };
        let k = rng.gen_range(0..y.len());
        open[k] += shift;
        if open.iter().any(|&v| v != 0) {
            return EulerProfile::from_open_values(y.clone(), &open).unwrap();
        }
    }
}

/// Exact rank over the rationals by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() / pivot.clone();
                for k in c..cols {
                    let v = m[rank][k].clone() * f.clone();
                    m[r][k] = m[r][k].clone() - v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the rational null space, one vector per free column.
pub fn null_space(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for k in 0..cols {
            m[rank][k] = m[rank][k].clone() / pivot.clone();
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let v = m[rank][k].clone() * f.clone();
                    m[r][k] = m[r][k].clone() - v;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

fn to_q(m: &eqfix_core::IntMatrix) -> Vec<Vec<Rational>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Rational::from_integer).collect()).collect()
}

fn columns(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

fn apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|r| r.iter().zip(v).fold(Rational::zero(), |a, (x, y)| a + x.clone() * y.clone())).collect()
}

/// `dim ker(h_* − 1)` on `H_d(C; Q)`, via cycles `z` with `(h − 1) z` a boundary.
fn fixed_dimension(c: &IntChainComplex, h: &IntChainMap, d: usize) -> usize {
    let n = c.rank(d);
    if n == 0 {
        return 0;
    }
    let dd = to_q(&c.boundary(d));
    let z = if dd.is_empty() { (0..n).map(|i| unit(n, i)).collect() } else { null_space(&dd, n) };
    let b = columns(&to_q(&c.boundary(d + 1)), c.rank(d + 1));
    let hm = to_q(&h.matrix(d));
    let shifted: Vec<Vec<Rational>> = z
        .iter()
        .map(|v| apply(&hm, v).into_iter().zip(v).map(|(x, y)| x - y.clone()).collect())
        .collect();
    let mut all = b.clone();
    all.extend(shifted);
    let with = if all.is_empty() { 0 } else { rational_rank(&all) };
    let without = if b.is_empty() { 0 } else { rational_rank(&b) };
    z.len() - (with - without) - without
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Rational Betti numbers of the mapping torus from the Wang sequence:
/// `b_d(T) = dim ker(h_* − 1 | H_d) + dim coker(h_* − 1 | H_{d−1})`.
pub fn wang_betti(c: &IntChainComplex, h: &IntChainMap) -> Vec<usize> {
    let top = c.len();
    let f: Vec<usize> = (0..top).map(|d| fixed_dimension(c, h, d)).collect();
    (0..=top).map(|d| f.get(d).copied().unwrap_or(0) + if d == 0 { 0 } else { f[d - 1] }).collect()
}

pub fn rational_betti(c: &IntChainComplex) -> Vec<usize> {
    (0..c.len())
        .map(|d| {
            let dd = to_q(&c.boundary(d));
            let up = to_q(&c.boundary(d + 1));
            let kernel = c.rank(d) - if dd.is_empty() { 0 } else { rational_rank(&dd) };
            kernel - if up.is_empty() { 0 } else { rational_rank(&up) }
        })
        .collect()
}

/// Chain self-maps from group actions, scalars and their products.
pub fn random_self_map<R: Rng>(rng: &mut R) -> (IntChainComplex, IntChainMap) {
    let models: Vec<GCWComplex> = vec![
        GCWComplex::with_trivial_group(catalog::point()),
        catalog::conjugation_circle(),
        catalog::free_z2_circle(),
        catalog::free_gamma_circles(),
        catalog::square_cover().cover().clone(),
        GCWComplex::with_trivial_group(catalog::sphere2()),
        GCWComplex::with_trivial_group(catalog::projective_plane()),
        GCWComplex::with_trivial_group(catalog::disk()),
    ];
    let y = models.choose(rng).unwrap();
    let c = y.complex().chain_complex::<Int>();
    let mut h = IntChainMap::from_action(y, rng.gen_range(0..y.group().order()));
    for _ in 0..rng.gen_range(0..3) {
        let next = match rng.gen_range(0..3) {
            0 => IntChainMap::from_action(y, rng.gen_range(0..y.group().order())),
            1 => IntChainMap::scalar(&c, Int::from(rng.gen_range(-2..=3))),
            _ => IntChainMap::identity(&c),
        };
        h = next.compose(&h).unwrap();
    }
    (c, h)
}

/// Every subgroup, from closures of all pairs of elements.
pub fn subgroups_by_pairs(g: &FiniteGroup) -> Vec<BTreeSet<usize>> {
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for a in g.elements() {
        for b in g.elements() {
            out.insert(closure(g, &[a, b]));
        }
    }
    out.into_iter().collect()
}

pub fn closure(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn is_normal_in(g: &FiniteGroup, n: &BTreeSet<usize>, within: &BTreeSet<usize>) -> bool {
    within.iter().all(|&x| n.iter().all(|&y| n.contains(&g.mul(g.mul(x, y), g.inv(x)))))
}

pub fn prime_power_or_one(n: usize) -> bool {
    let Some(p) = (2..=n).find(|p| n.is_multiple_of(*p)) else { return true };
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// `A/B` cyclic for `B ⊴ A`: some coset has order `|A|/|B|`.
pub fn section_cyclic(g: &FiniteGroup, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    let want = a.len() / b.len();
    a.iter().any(|&x| {
        let mut y = x;
        let mut k = 1;
        while !b.contains(&y) {
            y = g.mul(y, x);
            k += 1;
        }
        k == want
    })
}

/// Brute-force classification: `"Zero"`, `"One"` or `"NontrivialUnknown"`,
/// using chains `P ⊴ H ⊴ G` with `P` normal only in `H`.
pub fn classify_by_search(g: &FiniteGroup) -> &'static str {
    let subs = subgroups_by_pairs(g);
    let whole: BTreeSet<usize> = g.elements().collect();
    let zero = subs
        .iter()
        .any(|p| prime_power_or_one(p.len()) && is_normal_in(g, p, &whole) && section_cyclic(g, &whole, p));
    if zero {
        return "Zero";
    }
    for h in subs.iter().filter(|h| is_normal_in(g, h, &whole) && prime_power_or_one(g.order() / h.len())) {
        for p in subs.iter().filter(|p| prime_power_or_one(p.len()) && p.is_subset(h)) {
            if is_normal_in(g, p, h) && section_cyclic(g, h, p) {
                return "NontrivialUnknown";
            }
        }
    }
    "One"
}

pub fn abs_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}
