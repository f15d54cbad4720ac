//! Euler-characteristic calculus for cellular maps `f: F → Y`.
//!
//! A profile records `e(σ) = χ(f⁻¹(σ̄))` for each closed cell of `Y`.
//! Internally the work is done with open-cell values
//! `o(τ) = χ_c(f⁻¹(τ°))`, related by `e(σ) = Σ_{τ ≤ σ} o(τ)`; the global
//! `χ(F)` is then `Σ o(τ)`. Cone moves glue contractible cones onto `F` and
//! only shift open-cell values, so they never change `χ(F)`.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::complex::{sign_of_dim, CwComplex, GCWComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::oliver::Modulus;
use crate::scalar::congruent;

/// A cellular map given by the carrier cell of each source cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMap {
    pub source: CwComplex,
    pub target: CwComplex,
    /// Target cell index for each source cell index.
    pub carrier: Vec<usize>,
}

impl CellularMap {
    pub fn new(source: CwComplex, target: CwComplex, carrier: Vec<usize>) -> Result<Self> {
        if carrier.len() != source.len() || carrier.iter().any(|&t| t >= target.len()) {
            return Err(Error::InvalidInput("carrier must name a target cell for every source cell".into()));
        }
        Ok(CellularMap { source, target, carrier })
    }

    /// Carriers given as `(source id, target id)` pairs.
    pub fn from_ids(source: CwComplex, target: CwComplex, carrier: &[(u64, u64)]) -> Result<Self> {
        let mut by_index = vec![usize::MAX; source.len()];
        for &(s, t) in carrier {
            let i = source.index_of(s).ok_or_else(|| Error::InvalidInput(format!("unknown source cell {s}")))?;
            let j = target.index_of(t).ok_or_else(|| Error::InvalidInput(format!("unknown target cell {t}")))?;
            by_index[i] = j;
        }
        Self::new(source, target, by_index)
    }

    /// Identity of a complex onto itself.
    pub fn identity(x: &CwComplex) -> Self {
        CellularMap { source: x.clone(), target: x.clone(), carrier: (0..x.len()).collect() }
    }
}

/// Closed-cell preimage Euler characteristics over a target complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerProfile {
    target: CwComplex,
    values: Vec<i64>,
}

impl EulerProfile {
    pub fn new(target: CwComplex, values: Vec<i64>) -> Result<Self> {
        if values.len() != target.len() {
            return Err(Error::InvalidInput(format!(
                "profile has {} values for {} cells",
                values.len(),
                target.len()
            )));
        }
        Ok(EulerProfile { target, values })
    }

    pub fn from_open_values(target: CwComplex, open: &[i64]) -> Result<Self> {
        if open.len() != target.len() {
            return Err(Error::InvalidInput("open values do not match the target".into()));
        }
        let values = (0..target.len()).map(|i| target.closure(i).iter().map(|&t| open[t]).sum()).collect();
        Ok(EulerProfile { target, values })
    }

    pub fn target(&self) -> &CwComplex {
        &self.target
    }

    /// Closed values indexed like the target's cells.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, cell: usize) -> i64 {
        self.values[cell]
    }

    /// Möbius inversion over the face poset.
    pub fn open_values(&self) -> Vec<i64> {
        let x = &self.target;
        let mut order: Vec<usize> = (0..x.len()).collect();
        order.sort_by_key(|&i| (x.dim(i), i));
        let mut open = vec![0i64; x.len()];
        for i in order {
            let below: i64 = x.closure(i).iter().filter(|&&t| t != i).map(|&t| open[t]).sum();
            open[i] = self.values[i] - below;
        }
        open
    }

    /// `χ(F)`.
    pub fn total(&self) -> i64 {
        self.open_values().iter().sum()
    }

    /// Whether every closed value is `≡ 1 mod n`.
    pub fn is_balanced(&self, n: u64) -> bool {
        self.values.iter().all(|&v| congruent(v, 1, n))
    }

    /// `(cell id, value)` pairs in id order.
    pub fn by_id(&self) -> BTreeMap<u64, i64> {
        (0..self.target.len()).map(|i| (self.target.id(i), self.values[i])).collect()
    }
}

/// `e(σ)` as the alternating count of source cells carried into `σ̄`.
pub fn profile_from_map(f: &CellularMap) -> Result<EulerProfile> {
    let y = &f.target;
    let closures: Vec<Vec<bool>> = (0..y.len())
        .map(|i| {
            let mut m = vec![false; y.len()];
            for t in y.closure(i) {
                m[t] = true;
            }
            m
        })
        .collect();
    for c in 0..f.source.len() {
        let host = &closures[f.carrier[c]];
        if f.source.boundary(c).iter().any(|&(face, _)| !host[f.carrier[face]]) {
            return Err(Error::CarrierNotFaceCompatible { cell: f.source.id(c) });
        }
    }
    let mut open = vec![0i64; y.len()];
    for c in 0..f.source.len() {
        open[f.carrier[c]] += sign_of_dim(f.source.dim(c));
    }
    EulerProfile::from_open_values(y.clone(), &open)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalGlobalReport {
    pub chi_source: i64,
    pub chi_target: i64,
    pub modulus: u64,
    pub target_regular: bool,
    /// `χ(F) ≡ χ(Y) mod n`.
    pub holds: bool,
}

/// Checks `e(σ) ≡ 1 mod n` on every cell, then accumulates `χ(F)` cell by
/// cell in skeleton order by inclusion–exclusion against each cell's
/// boundary.
pub fn check_local_global(profile: &EulerProfile, n: u64) -> Result<LocalGlobalReport> {
    let y = profile.target();
    let bad: Vec<u64> =
        (0..y.len()).filter(|&i| !congruent(profile.value(i), 1, n)).map(|i| y.id(i)).collect();
    if !bad.is_empty() {
        return Err(Error::HypothesisFails { cells: bad });
    }
    let open = profile.open_values();
    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by_key(|&i| (y.dim(i), i));
    let mut chi_source = 0i64;
    for i in order {
        let boundary_part: i64 = y.closure(i).iter().filter(|&&t| t != i).map(|&t| open[t]).sum();
        chi_source += profile.value(i) - boundary_part;
    }
    let chi_target = y.euler_characteristic();
    Ok(LocalGlobalReport {
        chi_source,
        chi_target,
        modulus: n,
        target_regular: y.is_regular(),
        holds: congruent(chi_source, chi_target, n),
    })
}

/// `(a, b)` with `a + 2b = delta_sigma` and `a + 3b = delta_boundary`.
pub fn solve_cone_system(delta_sigma: i64, delta_boundary: i64) -> (i64, i64) {
    let b = delta_boundary - delta_sigma;
    (3 * delta_sigma - 2 * delta_boundary, b)
}

/// `(a, b, c)` with `a + 2b + c = delta_sigma`, `a + 3b + c = delta_v0` and
/// `c = delta_v1`.
pub fn solve_cone_system_dangling(delta_sigma: i64, delta_v0: i64, delta_v1: i64) -> (i64, i64, i64) {
    let c = delta_v1;
    let b = delta_v0 - delta_sigma;
    (delta_sigma - 2 * b - c, b, c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    /// Two cones along a path into a top cell `σ`.
    Standard,
    /// Standard move plus a third cone running across a dangling edge.
    Dangling,
    /// Last remaining top cell is an edge at the anchor.
    BaseEdge,
    /// Last remaining top cell has dimension at least 2; one cone dips into
    /// it and returns to the anchor.
    BaseBounce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeMove {
    pub kind: MoveKind,
    pub sigma: u64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub anchor: u64,
    /// Point of `∂σ` where the cones enter `σ`.
    pub kappa: Option<u64>,
    /// Cells crossed from the anchor to `kappa`, alternating vertex and
    /// edge (or the fold cell when the anchor already lies on `∂σ`).
    pub path: Vec<u64>,
    pub fold: Option<u64>,
    /// Changes to open-cell values, by cell id.
    pub deltas: BTreeMap<u64, i64>,
}

impl ConeMove {
    /// Sum of all deltas; zero because cones are contractible.
    pub fn euler_change(&self) -> i64 {
        self.deltas.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rebalance {
    pub moves: Vec<ConeMove>,
    pub profile: EulerProfile,
}

/// Rewrites a profile by cone moves until every closed value is `≡ 1 mod n`,
/// peeling top cells in order of decreasing dimension, then id.
pub fn rebalance_profile(profile: &EulerProfile, n: u64) -> Result<Rebalance> {
    let y = profile.target();
    if y.is_empty() {
        return Err(Error::TargetDisconnected);
    }
    if !y.is_regular() {
        return Err(Error::NotRegular);
    }
    if !y.is_connected() {
        return Err(Error::TargetDisconnected);
    }
    let mut open = profile.open_values();
    if open.iter().all(|&v| v == 0) {
        return Err(Error::EmptySource);
    }
    let chi_source: i64 = open.iter().sum();
    let chi_target = y.euler_characteristic();
    if !congruent(chi_source, chi_target, n) {
        return Err(Error::GlobalCongruenceFails { chi_source, chi_target, modulus: n });
    }
    if profile.is_balanced(n) {
        return Ok(Rebalance { moves: Vec::new(), profile: profile.clone() });
    }

    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by_key(|&i| (y.dim(i), y.id(i)));
    let first = order.into_iter().find(|&i| open[i] != 0).expect("nonzero value");
    let anchor = y.closure(first).into_iter().filter(|&t| y.dim(t) == 0).min_by_key(|&t| y.id(t)).expect("vertex");

    let mut r = Rebalancer { y, open: &mut open, active: vec![true; y.len()], anchor, moves: Vec::new() };
    r.run()?;
    let moves = r.moves;
    let profile = EulerProfile::from_open_values(y.clone(), &open)?;
    debug_assert!(profile.is_balanced(n));
    Ok(Rebalance { moves, profile })
}

struct Rebalancer<'a> {
    y: &'a CwComplex,
    open: &'a mut Vec<i64>,
    active: Vec<bool>,
    anchor: usize,
    moves: Vec<ConeMove>,
}

impl Rebalancer<'_> {
    fn closed(&self, cells: &[usize]) -> i64 {
        cells.iter().map(|&t| self.open[t]).sum()
    }

    fn top_cells(&self) -> Vec<usize> {
        let y = self.y;
        let mut tops: Vec<usize> = (0..y.len())
            .filter(|&i| self.active[i] && y.cofaces(i).iter().all(|&c| !self.active[c]))
            .collect();
        tops.sort_by_key(|&i| (std::cmp::Reverse(y.dim(i)), y.id(i)));
        tops
    }

    fn connected_without(&self, removed: &[usize]) -> bool {
        let cells: Vec<usize> = (0..self.y.len()).filter(|&i| self.active[i] && !removed.contains(&i)).collect();
        Subcomplex::from_cells_unchecked(self.y, &cells).components().len() == 1
    }

    /// The free endpoint of a dangling edge, with the attached endpoint.
    fn dangling_ends(&self, sigma: usize) -> Option<(usize, usize)> {
        let y = self.y;
        if y.dim(sigma) != 1 {
            return None;
        }
        let ends: Vec<usize> = y.boundary(sigma).iter().map(|&(v, _)| v).collect();
        let free = |v: usize| y.cofaces(v).iter().all(|&c| c == sigma || !self.active[c]);
        match (free(ends[0]), free(ends[1])) {
            (false, true) => Some((ends[0], ends[1])),
            (true, false) => Some((ends[1], ends[0])),
            _ => None,
        }
    }

    fn apply(&mut self, mv: &ConeMove) {
        for (&id, &d) in &mv.deltas {
            let i = self.y.index_of(id).expect("cell of the target");
            self.open[i] += d;
        }
    }

    fn run(&mut self) -> Result<()> {
        loop {
            let tops = self.top_cells();
            if tops.len() == 1 {
                let beta = tops[0];
                match self.y.dim(beta) {
                    0 => return Ok(()),
                    1 => {
                        self.base_edge(beta);
                        return Ok(());
                    }
                    _ => {
                        self.base_bounce(beta);
                        self.active[beta] = false;
                        continue;
                    }
                }
            }
            let beta = *tops
                .iter()
                .find(|&&t| self.y.closure(t).contains(&self.anchor))
                .ok_or_else(|| Error::InvalidComplex("anchor left the active complex".into()))?;
            let mut chosen = None;
            for &s in tops.iter().filter(|&&t| t != beta) {
                if let Some(ends) = self.dangling_ends(s) {
                    chosen = Some((s, Some(ends)));
                    break;
                }
                if self.connected_without(&[s]) {
                    chosen = Some((s, None));
                    break;
                }
            }
            let (sigma, dangling) =
                chosen.ok_or_else(|| Error::InvalidComplex("no removable top cell".into()))?;
            let mv = self.peel(sigma, beta, dangling)?;
            self.apply(&mv);
            self.moves.push(mv);
            self.active[sigma] = false;
            if let Some((_, v1)) = dangling {
                self.active[v1] = false;
            }
        }
    }

    /// Shortest 1-skeleton path from the anchor to `∂σ` outside `σ̄`. Returns
    /// the cells crossed after the anchor, ending at `κ`; the last edge is
    /// the fold.
    fn path_to(&self, sigma_closure: &[usize], beta: usize) -> Result<(Vec<usize>, usize, usize)> {
        let y = self.y;
        let in_sigma = |c: usize| sigma_closure.contains(&c);
        if in_sigma(self.anchor) {
            let candidates = (0..y.len()).filter(|&r| {
                self.active[r] && r != self.anchor && !in_sigma(r) && y.closure(r).contains(&self.anchor)
            });
            let fold = candidates
                .min_by_key(|&r| (y.dim(r) != 1, y.id(r)))
                .unwrap_or(beta);
            return Ok((vec![fold, self.anchor], self.anchor, fold));
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; y.len()];
        let mut seen = vec![false; y.len()];
        seen[self.anchor] = true;
        let mut queue = VecDeque::from([self.anchor]);
        while let Some(v) = queue.pop_front() {
            let mut edges: Vec<usize> =
                y.cofaces(v).iter().copied().filter(|&e| self.active[e] && y.dim(e) == 1 && !in_sigma(e)).collect();
            edges.sort_by_key(|&e| y.id(e));
            for e in edges {
                let Some(&(w, _)) = y.boundary(e).iter().find(|&&(w, _)| w != v) else { continue };
                if seen[w] || !self.active[w] {
                    continue;
                }
                seen[w] = true;
                prev[w] = Some((v, e));
                if in_sigma(w) {
                    let mut cells = vec![w];
                    let mut cur = w;
                    while let Some((p, edge)) = prev[cur] {
                        cells.push(edge);
                        if p != self.anchor {
                            cells.push(p);
                        }
                        cur = p;
                    }
                    cells.reverse();
                    let fold = cells[cells.len() - 2];
                    return Ok((cells, w, fold));
                }
                queue.push_back(w);
            }
        }
        Err(Error::InvalidComplex("no path from the anchor to the boundary of a top cell".into()))
    }

    fn peel(&self, sigma: usize, beta: usize, dangling: Option<(usize, usize)>) -> Result<ConeMove> {
        let y = self.y;
        let closure = y.closure(sigma);
        let boundary: Vec<usize> = closure.iter().copied().filter(|&t| t != sigma).collect();
        let (path, kappa, fold) = self.path_to(&closure, beta)?;
        let mut deltas: BTreeMap<usize, i64> = BTreeMap::new();
        let along = |x: i64, deltas: &mut BTreeMap<usize, i64>| {
            for &cell in &path {
                bump(deltas, cell, if y.dim(cell) == 0 { x } else { -x });
            }
        };
        let e_sigma = self.closed(&closure);
        let e_boundary = self.closed(&boundary);
        let mv = match dangling {
            None => {
                let ds = 1 - e_sigma;
                let db = (1 - sign_of_dim(y.dim(sigma))) - e_boundary;
                let (a, b) = solve_cone_system(ds, db);
                along(a, &mut deltas);
                along(b, &mut deltas);
                bump(&mut deltas, sigma, -b);
                bump(&mut deltas, kappa, 2 * b);
                bump(&mut deltas, fold, -b);
                (MoveKind::Standard, a, b, 0)
            }
            Some((v0, v1)) => {
                debug_assert_eq!(kappa, v0);
                let ds = 1 - e_sigma;
                let dv0 = 1 - self.open[v0];
                let dv1 = 1 - self.open[v1];
                let (a, b, c) = solve_cone_system_dangling(ds, dv0, dv1);
                along(a, &mut deltas);
                along(b, &mut deltas);
                along(c, &mut deltas);
                bump(&mut deltas, sigma, -b - c);
                bump(&mut deltas, kappa, 2 * b);
                bump(&mut deltas, fold, -b);
                bump(&mut deltas, v1, c);
                (MoveKind::Dangling, a, b, c)
            }
        };
        let (kind, a, b, c) = mv;
        Ok(ConeMove {
            kind,
            sigma: y.id(sigma),
            a,
            b,
            c,
            anchor: y.id(self.anchor),
            kappa: Some(y.id(kappa)),
            path: path.iter().map(|&p| y.id(p)).collect(),
            fold: Some(y.id(fold)),
            deltas: deltas.into_iter().filter(|&(_, d)| d != 0).map(|(k, d)| (y.id(k), d)).collect(),
        })
    }

    fn base_edge(&mut self, beta: usize) {
        let y = self.y;
        let u = self.anchor;
        let w = y.boundary(beta).iter().map(|&(v, _)| v).find(|&v| v != u).expect("regular edge");
        let b = 1 - self.open[u];
        let c = 1 - self.open[w];
        let deltas: BTreeMap<u64, i64> = [(y.id(beta), -b - c), (y.id(u), b), (y.id(w), c)]
            .into_iter()
            .filter(|&(_, d)| d != 0)
            .collect();
        let mv = ConeMove {
            kind: MoveKind::BaseEdge,
            sigma: y.id(beta),
            a: 0,
            b,
            c,
            anchor: y.id(u),
            kappa: None,
            path: Vec::new(),
            fold: None,
            deltas,
        };
        if !mv.deltas.is_empty() {
            self.apply(&mv);
            self.moves.push(mv);
        }
    }

    fn base_bounce(&mut self, beta: usize) {
        let y = self.y;
        let boundary: Vec<usize> = y.closure(beta).into_iter().filter(|&t| t != beta).collect();
        let b = (1 - sign_of_dim(y.dim(beta))) - self.closed(&boundary);
        if b == 0 {
            return;
        }
        let mv = ConeMove {
            kind: MoveKind::BaseBounce,
            sigma: y.id(beta),
            a: 0,
            b,
            c: 0,
            anchor: y.id(self.anchor),
            kappa: None,
            path: Vec::new(),
            fold: None,
            deltas: BTreeMap::from([(y.id(beta), -b), (y.id(self.anchor), b)]),
        };
        self.apply(&mv);
        self.moves.push(mv);
    }
}

fn bump(deltas: &mut BTreeMap<usize, i64>, cell: usize, d: i64) {
    *deltas.entry(cell).or_insert(0) += d;
}

/// `(χ(F_C) − χ(C))` over the components `C` of `Y^G`, labeled by the
/// smallest cell id of each component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficitVector {
    pub components: Vec<u64>,
    pub entries: Vec<i64>,
}

impl DeficitVector {
    pub fn new(components: Vec<u64>, entries: Vec<i64>) -> Result<Self> {
        if components.len() != entries.len() {
            return Err(Error::ComponentMismatch { expected: components.len(), got: entries.len() });
        }
        Ok(DeficitVector { components, entries })
    }

    /// Components labeled `0..k`.
    pub fn unlabeled(entries: Vec<i64>) -> Self {
        DeficitVector { components: (0..entries.len() as u64).collect(), entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }
}

pub fn deficit_vector(fixed_euler: &[i64], y: &GCWComplex) -> Result<DeficitVector> {
    let fixed = y.fixed_subcomplex(&Subgroup::whole(y.group()));
    let comps = fixed.components();
    if comps.len() != fixed_euler.len() {
        return Err(Error::ComponentMismatch { expected: comps.len(), got: fixed_euler.len() });
    }
    Ok(DeficitVector {
        components: comps.iter().map(|c| c.ids()[0]).collect(),
        entries: comps.iter().zip(fixed_euler).map(|(c, &f)| f - c.euler_characteristic()).collect(),
    })
}

pub fn negate(v: &DeficitVector) -> DeficitVector {
    DeficitVector { components: v.components.clone(), entries: v.entries.iter().map(|e| -e).collect() }
}

pub fn add(v: &DeficitVector, w: &DeficitVector) -> Result<DeficitVector> {
    if v.components != w.components {
        return Err(Error::ComponentMismatch { expected: v.len(), got: w.len() });
    }
    Ok(DeficitVector {
        components: v.components.clone(),
        entries: v.entries.iter().zip(&w.entries).map(|(a, b)| a + b).collect(),
    })
}

/// Position of a deficit vector relative to `n_G Z^A ⊂ N_Y ⊂ {n_G | Σ a_C}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NyMembership {
    InLowerBound,
    InUpperBoundOnly,
    OutsideUpperBound,
    Indeterminate,
}

pub fn ny_membership(v: &DeficitVector, modulus: Modulus) -> NyMembership {
    let Some(n) = modulus.known() else {
        return NyMembership::Indeterminate;
    };
    if v.entries.iter().all(|&e| congruent(e, 0, n)) {
        NyMembership::InLowerBound
    } else if !congruent(v.sum(), 0, n) {
        NyMembership::OutsideUpperBound
    } else {
        NyMembership::InUpperBoundOnly
    }
}
