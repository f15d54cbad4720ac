//! Finite CW-complexes with cellular group actions.
//!
//! A [`CwComplex`] is a list of cells with integer incidences. A
//! [`GCWComplex`] adds a finite group acting by signed cell permutations:
//! `g·c = ±c'`. The action is admissible when a cell fixed by `g` carries
//! sign `+1`, which makes every fixed set `X^H` a subcomplex.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, FiniteGroup, Subgroup};
use crate::linalg::{rank_mod_p, smith_invariants, Matrix};
use crate::scalar::{from_i64, ExactInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub id: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwComplex {
    cells: Vec<Cell>,
    index: HashMap<u64, usize>,
    boundary: Vec<Vec<(usize, i64)>>,
    cofaces: Vec<Vec<usize>>,
    repeated_faces: bool,
}

impl CwComplex {
    /// Cells are re-ordered by id. Incidences naming the same face twice are
    /// summed (and the complex is then not regular).
    pub fn new(cells: Vec<Cell>, boundary: Vec<(u64, Vec<(u64, i64)>)>) -> Result<Self> {
        let mut cells = cells;
        cells.sort_by_key(|c| c.id);
        if let Some(w) = cells.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::InvalidComplex(format!("duplicate cell id {}", w[0].id)));
        }
        let index: HashMap<u64, usize> = cells.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
        let mut merged: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); cells.len()];
        let mut repeated_faces = false;
        for (id, faces) in boundary {
            let &i = index.get(&id).ok_or_else(|| Error::InvalidComplex(format!("unknown cell {id}")))?;
            for (fid, coeff) in faces {
                let &j = index.get(&fid).ok_or_else(|| Error::InvalidComplex(format!("unknown face {fid}")))?;
                let e = merged[i].entry(j).or_insert(0);
                if *e != 0 {
                    repeated_faces = true;
                }
                *e += coeff;
            }
        }
        let boundary: Vec<Vec<(usize, i64)>> = merged
            .into_iter()
            .map(|m| m.into_iter().filter(|&(_, c)| c != 0).collect())
            .collect();
        let mut cofaces = vec![Vec::new(); cells.len()];
        for (i, faces) in boundary.iter().enumerate() {
            for &(j, _) in faces {
                cofaces[j].push(i);
            }
        }
        Ok(CwComplex { cells, index, boundary, cofaces, repeated_faces })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn id(&self, i: usize) -> u64 {
        self.cells[i].id
    }

    pub fn dim(&self, i: usize) -> usize {
        self.cells[i].dim
    }

    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Nonzero incidences `(face index, coefficient)`.
    pub fn boundary(&self, i: usize) -> &[(usize, i64)] {
        &self.boundary[i]
    }

    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    pub fn incidence(&self, cell: usize, face: usize) -> i64 {
        self.boundary[cell].iter().find(|&&(j, _)| j == face).map_or(0, |&(_, c)| c)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// Sorted indices of the closed cell: the cell and all iterated faces.
    pub fn closure(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![i];
        seen[i] = true;
        let mut out = Vec::new();
        while let Some(c) = stack.pop() {
            out.push(c);
            for &(f, _) in &self.boundary[c] {
                if !seen[f] {
                    seen[f] = true;
                    stack.push(f);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|c| sign_of_dim(c.dim)).sum()
    }

    pub fn is_connected(&self) -> bool {
        Subcomplex::whole(self).components().len() == 1
    }

    /// Combinatorial regularity: incidences are ±1 with no repeated faces,
    /// faces have dimension one less, each 1-cell has two distinct endpoints
    /// of opposite sign, and each closed cell has the Euler characteristic of
    /// a disk with sphere boundary.
    pub fn is_regular(&self) -> bool {
        if self.repeated_faces {
            return false;
        }
        for (i, cell) in self.cells.iter().enumerate() {
            let faces = &self.boundary[i];
            if faces.iter().any(|&(j, c)| c.abs() != 1 || self.dim(j) + 1 != cell.dim) {
                return false;
            }
            match cell.dim {
                0 => {}
                1 => {
                    if faces.len() != 2 || faces[0].1 + faces[1].1 != 0 {
                        return false;
                    }
                }
                _ => {
                    let chi: i64 = self.closure(i).iter().map(|&j| sign_of_dim(self.dim(j))).sum();
                    if chi != 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Boundary-level checks: faces have dimension one less and `∂∘∂ = 0`.
    pub fn boundary_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, cell) in self.cells.iter().enumerate() {
            for &(j, _) in &self.boundary[i] {
                if self.dim(j) + 1 != cell.dim {
                    out.push(Violation::BoundaryDimension { cell: cell.id, face: self.id(j) });
                }
            }
            let mut sq: BTreeMap<usize, i64> = BTreeMap::new();
            for &(j, a) in &self.boundary[i] {
                for &(k, b) in &self.boundary[j] {
                    *sq.entry(k).or_insert(0) += a * b;
                }
            }
            for (k, v) in sq {
                if v != 0 {
                    out.push(Violation::BoundarySquareNonzero { cell: cell.id, face: self.id(k), value: v });
                }
            }
        }
        out
    }

    pub fn chain_complex<I: ExactInt>(&self) -> ChainComplex<I> {
        Subcomplex::whole(self).chain_complex()
    }
}

pub(crate) fn sign_of_dim(d: usize) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A face-closed set of cells of a parent complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex<'a> {
    parent: &'a CwComplex,
    member: Vec<bool>,
    cells: Vec<usize>,
}

impl<'a> Subcomplex<'a> {
    /// Fails when `cells` is not closed under faces.
    pub fn new(parent: &'a CwComplex, cells: &[usize]) -> Result<Self> {
        let s = Self::from_cells_unchecked(parent, cells);
        for &c in &s.cells {
            if let Some(&(f, _)) = parent.boundary(c).iter().find(|&&(f, _)| !s.member[f]) {
                return Err(Error::InvalidComplex(format!(
                    "cell {} has face {} outside the subcomplex",
                    parent.id(c),
                    parent.id(f)
                )));
            }
        }
        Ok(s)
    }

    pub(crate) fn from_cells_unchecked(parent: &'a CwComplex, cells: &[usize]) -> Self {
        let mut member = vec![false; parent.len()];
        for &c in cells {
            member[c] = true;
        }
        let cells = (0..parent.len()).filter(|&i| member[i]).collect();
        Subcomplex { parent, member, cells }
    }

    /// Smallest subcomplex containing `cells`.
    pub fn closure_of(parent: &'a CwComplex, cells: &[usize]) -> Self {
        let mut all = Vec::new();
        for &c in cells {
            all.extend(parent.closure(c));
        }
        Self::from_cells_unchecked(parent, &all)
    }

    pub fn whole(parent: &'a CwComplex) -> Self {
        Subcomplex { parent, member: vec![true; parent.len()], cells: (0..parent.len()).collect() }
    }

    pub fn empty(parent: &'a CwComplex) -> Self {
        Subcomplex { parent, member: vec![false; parent.len()], cells: Vec::new() }
    }

    pub fn parent(&self) -> &'a CwComplex {
        self.parent
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn ids(&self) -> Vec<u64> {
        self.cells.iter().map(|&c| self.parent.id(c)).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.member[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|&c| sign_of_dim(self.parent.dim(c))).sum()
    }

    pub fn union(&self, other: &Subcomplex<'a>) -> Subcomplex<'a> {
        let cells: Vec<usize> = self.cells.iter().chain(&other.cells).copied().collect();
        Self::from_cells_unchecked(self.parent, &cells)
    }

    pub fn intersection(&self, other: &Subcomplex<'a>) -> Subcomplex<'a> {
        let cells: Vec<usize> = self.cells.iter().copied().filter(|&c| other.member[c]).collect();
        Self::from_cells_unchecked(self.parent, &cells)
    }

    pub fn is_subset_of(&self, other: &Subcomplex<'a>) -> bool {
        self.cells.iter().all(|&c| other.member[c])
    }

    /// Connected components under the face relation, ordered by smallest
    /// cell.
    pub fn components(&self) -> Vec<Subcomplex<'a>> {
        let n = self.parent.len();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let next = uf[y];
                uf[y] = r;
                y = next;
            }
            r
        }
        for &c in &self.cells {
            for &(f, _) in self.parent.boundary(c) {
                if self.member[f] {
                    let (a, b) = (find(&mut uf, c), find(&mut uf, f));
                    if a != b {
                        uf[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &c in &self.cells {
            let r = find(&mut uf, c);
            groups.entry(r).or_default().push(c);
        }
        let mut comps: Vec<Subcomplex<'a>> =
            groups.into_values().map(|cells| Self::from_cells_unchecked(self.parent, &cells)).collect();
        comps.sort_by_key(|s| s.cells[0]);
        comps
    }

    /// Cellular chain complex; the basis in each degree is ordered by cell id.
    pub fn chain_complex<I: ExactInt>(&self) -> ChainComplex<I> {
        let top = self.cells.iter().map(|&c| self.parent.dim(c)).max();
        let Some(top) = top else {
            return ChainComplex::empty();
        };
        let mut basis: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for &c in &self.cells {
            basis[self.parent.dim(c)].push(c);
        }
        let pos: HashMap<usize, usize> =
            basis.iter().flat_map(|b| b.iter().enumerate().map(|(k, &c)| (c, k))).collect();
        let mut boundaries = Vec::with_capacity(top);
        for d in 1..=top {
            let mut m = Matrix::zeros(basis[d - 1].len(), basis[d].len());
            for (col, &c) in basis[d].iter().enumerate() {
                for &(f, coeff) in self.parent.boundary(c) {
                    if let Some(&row) = pos.get(&f) {
                        if self.parent.dim(f) + 1 == d {
                            m.set(row, col, from_i64(coeff));
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        let ids = basis.iter().map(|b| b.iter().map(|&c| self.parent.id(c)).collect()).collect();
        ChainComplex {
            ranks: basis.iter().map(Vec::len).collect(),
            boundaries,
            basis: Some(ids),
        }
    }

    /// Standalone complex on the same cells and ids.
    pub fn to_complex(&self) -> CwComplex {
        let cells = self.cells.iter().map(|&c| self.parent.cells[c]).collect();
        let boundary = self
            .cells
            .iter()
            .map(|&c| {
                let faces =
                    self.parent.boundary(c).iter().map(|&(f, k)| (self.parent.id(f), k)).collect();
                (self.parent.id(c), faces)
            })
            .collect();
        CwComplex::new(cells, boundary).expect("subcomplex of a valid complex")
    }
}

/// Graded free modules with boundary matrices `∂_d : C_d → C_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<I> {
    ranks: Vec<usize>,
    /// `boundaries[d-1]` is `∂_d`, for `d = 1..=top`.
    boundaries: Vec<Matrix<I>>,
    basis: Option<Vec<Vec<u64>>>,
}

impl<I: ExactInt> ChainComplex<I> {
    pub fn empty() -> Self {
        ChainComplex { ranks: Vec::new(), boundaries: Vec::new(), basis: None }
    }

    /// `boundaries[k]` is `∂_{k+1}`; checks shapes and `∂∘∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix<I>>) -> Result<Self> {
        if !ranks.is_empty() && boundaries.len() + 1 != ranks.len() {
            return Err(Error::NotAChainComplex(format!(
                "{} ranks need {} boundary matrices, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (k, m) in boundaries.iter().enumerate() {
            if m.rows() != ranks[k] || m.cols() != ranks[k + 1] {
                return Err(Error::NotAChainComplex(format!("boundary in degree {} has wrong shape", k + 1)));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(Error::NotAChainComplex(format!("boundary squares to nonzero in degree {}", k + 1)));
            }
        }
        Ok(ChainComplex { ranks, boundaries, basis: None })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    /// Number of degrees stored (`top + 1`).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn basis_ids(&self) -> Option<&[Vec<u64>]> {
        self.basis.as_deref()
    }

    /// `∂_d` as an owned matrix; zero outside the stored range.
    pub fn boundary(&self, d: usize) -> Matrix<I> {
        if d >= 1 && d <= self.boundaries.len() {
            self.boundaries[d - 1].clone()
        } else {
            Matrix::zeros(if d == 0 { 0 } else { self.rank(d - 1) }, self.rank(d))
        }
    }

    pub fn boundary_ref(&self, d: usize) -> Option<&Matrix<I>> {
        if d >= 1 {
            self.boundaries.get(d - 1)
        } else {
            None
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(d, &r)| sign_of_dim(d) * r as i64).sum()
    }

    pub fn is_boundary_square_zero(&self) -> bool {
        (1..self.boundaries.len()).all(|k| self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero())
    }
}

/// One homology group `Z^betti ⊕ ⨁ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup<I> {
    pub betti: usize,
    pub torsion: Vec<I>,
}

impl<I: ExactInt> HomologyGroup<I> {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Integral homology in degrees `0..len`, via Smith normal form.
pub fn homology_integral<I: ExactInt>(c: &ChainComplex<I>) -> Vec<HomologyGroup<I>> {
    let invariants: Vec<Vec<I>> = (0..=c.len()).map(|d| match c.boundary_ref(d) {
        Some(m) => smith_invariants(m),
        None => Vec::new(),
    }).collect();
    (0..c.len())
        .map(|d| {
            let r_out = invariants[d].len();
            let into = &invariants[d + 1];
            let betti = c.rank(d) - r_out - into.len();
            let torsion = into.iter().filter(|x| !x.is_one()).cloned().collect();
            HomologyGroup { betti, torsion }
        })
        .collect()
}

/// Betti numbers over `F_p` in degrees `0..len`.
pub fn homology_mod_p<I: ExactInt>(c: &ChainComplex<I>, p: u64) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=c.len())
        .map(|d| c.boundary_ref(d).map_or(0, |m| rank_mod_p(m, p)))
        .collect();
    (0..c.len()).map(|d| c.rank(d) - ranks[d] - ranks[d + 1]).collect()
}

/// Betti numbers over the rationals.
pub fn betti_numbers<I: ExactInt>(c: &ChainComplex<I>) -> Vec<usize> {
    homology_integral(c).into_iter().map(|h| h.betti).collect()
}

/// A failed G-CW condition, reported by cell id and group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    BoundaryDimension { cell: u64, face: u64 },
    BoundarySquareNonzero { cell: u64, face: u64, value: i64 },
    ActionNotBijective { element: usize },
    ActionDimension { element: usize, cell: u64 },
    ActionNotHomomorphism { g: usize, h: usize, cell: u64 },
    BoundaryNotEquivariant { element: usize, cell: u64 },
    Inadmissible { element: usize, cell: u64 },
    FixedFaceMoved { element: usize, cell: u64, face: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A CW complex with a signed cellular action of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCWComplex {
    complex: CwComplex,
    group: FiniteGroup,
    /// `action[g][c] = (c', s)` means `g·c = s·c'`.
    action: Vec<Vec<(usize, i8)>>,
}

/// Signed image entries `(cell id, image id, sign)` for one group element.
pub type ActionEntries = Vec<(u64, u64, i8)>;

impl GCWComplex {
    /// Trivial group acting trivially.
    pub fn with_trivial_group(complex: CwComplex) -> Self {
        let action = vec![(0..complex.len()).map(|c| (c, 1)).collect()];
        GCWComplex { complex, group: FiniteGroup::trivial(), action }
    }

    /// Any group acting trivially.
    pub fn with_trivial_action(complex: CwComplex, group: FiniteGroup) -> Self {
        let row: Vec<(usize, i8)> = (0..complex.len()).map(|c| (c, 1)).collect();
        let action = vec![row; group.order()];
        GCWComplex { complex, group, action }
    }

    /// Builds the action from entries for some elements. Cells not listed
    /// for an element are fixed with sign `+1`; elements not listed are
    /// filled in as products of listed ones. Consistency is left to
    /// [`GCWComplex::validate`].
    pub fn new(complex: CwComplex, group: FiniteGroup, entries: &BTreeMap<usize, ActionEntries>) -> Result<Self> {
        let m = complex.len();
        let mut known: Vec<Option<Vec<(usize, i8)>>> = vec![None; group.order()];
        let mut gens = Vec::new();
        for (&g, list) in entries {
            if g >= group.order() {
                return Err(Error::InvalidComplex(format!("action given for unknown element {g}")));
            }
            let mut row: Vec<(usize, i8)> = (0..m).map(|c| (c, 1)).collect();
            for &(id, image, sign) in list {
                let c = complex.index_of(id).ok_or_else(|| Error::InvalidComplex(format!("unknown cell {id}")))?;
                let d = complex.index_of(image).ok_or_else(|| Error::InvalidComplex(format!("unknown cell {image}")))?;
                if sign != 1 && sign != -1 {
                    return Err(Error::InvalidComplex(format!("sign {sign} is not ±1")));
                }
                row[c] = (d, sign);
            }
            known[g] = Some(row);
            gens.push(g);
        }
        if known[0].is_none() {
            known[0] = Some((0..m).map(|c| (c, 1)).collect());
        }
        let mut queue: Vec<usize> = (0..group.order()).filter(|&g| known[g].is_some()).collect();
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = group.mul(x, s);
                if known[y].is_none() {
                    let ax = known[x].as_ref().expect("known");
                    let as_ = known[s].as_ref().expect("known");
                    known[y] = Some(compose(ax, as_));
                    queue.push(y);
                }
            }
        }
        let action = known
            .into_iter()
            .enumerate()
            .map(|(g, row)| row.ok_or_else(|| Error::InvalidComplex(format!("action of element {g} is not determined"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GCWComplex { complex, group, action })
    }

    /// Full action table by cell index.
    pub fn from_action_table(complex: CwComplex, group: FiniteGroup, action: Vec<Vec<(usize, i8)>>) -> Result<Self> {
        if action.len() != group.order() || action.iter().any(|r| r.len() != complex.len()) {
            return Err(Error::InvalidComplex("action table has the wrong shape".into()));
        }
        if action.iter().flatten().any(|&(c, s)| c >= complex.len() || (s != 1 && s != -1)) {
            return Err(Error::InvalidComplex("action table entry out of range".into()));
        }
        Ok(GCWComplex { complex, group, action })
    }

    pub fn complex(&self) -> &CwComplex {
        &self.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `g·c = s·c'` as `(c', s)`.
    pub fn act(&self, g: usize, c: usize) -> (usize, i8) {
        self.action[g][c]
    }

    pub fn action_table(&self) -> &[Vec<(usize, i8)>] {
        &self.action
    }

    /// Checks every G-CW condition and lists each violation.
    pub fn validate(&self) -> ValidationReport {
        let x = &self.complex;
        let mut violations = x.boundary_violations();
        let n = self.group.order();
        let m = x.len();
        for g in 0..n {
            let row = &self.action[g];
            let mut hit = vec![false; m];
            for &(d, _) in row {
                hit[d] = true;
            }
            if hit.iter().any(|&h| !h) {
                violations.push(Violation::ActionNotBijective { element: g });
                continue;
            }
            for c in 0..m {
                let (d, s) = row[c];
                if x.dim(d) != x.dim(c) {
                    violations.push(Violation::ActionDimension { element: g, cell: x.id(c) });
                }
                if d == c && s != 1 {
                    violations.push(Violation::Inadmissible { element: g, cell: x.id(c) });
                }
                if d == c {
                    if let Some(&(f, _)) = x.boundary(c).iter().find(|&&(f, _)| row[f].0 != f) {
                        violations.push(Violation::FixedFaceMoved { element: g, cell: x.id(c), face: x.id(f) });
                    }
                }
                // ∂(g·c) against g·∂c
                let mut lhs: BTreeMap<usize, i64> = BTreeMap::new();
                for &(f, k) in x.boundary(d) {
                    *lhs.entry(f).or_insert(0) += s as i64 * k;
                }
                let mut rhs: BTreeMap<usize, i64> = BTreeMap::new();
                for &(f, k) in x.boundary(c) {
                    let (f2, s2) = row[f];
                    *rhs.entry(f2).or_insert(0) += s2 as i64 * k;
                }
                lhs.retain(|_, v| *v != 0);
                rhs.retain(|_, v| *v != 0);
                if lhs != rhs {
                    violations.push(Violation::BoundaryNotEquivariant { element: g, cell: x.id(c) });
                }
            }
        }
        'hom: for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                let composed = compose(&self.action[g], &self.action[h]);
                if let Some(c) = (0..m).find(|&c| composed[c] != self.action[gh][c]) {
                    violations.push(Violation::ActionNotHomomorphism { g, h, cell: x.id(c) });
                    break 'hom;
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn stabilizer(&self, c: usize) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.group.elements().filter(|&g| self.action[g][c].0 == c).collect())
    }

    /// Sorted orbit of a cell.
    pub fn orbit(&self, c: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.group.elements().map(|g| self.action[g][c].0).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// All orbits, ordered by smallest cell.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.complex.len()];
        let mut out = Vec::new();
        for c in 0..self.complex.len() {
            if !seen[c] {
                let o = self.orbit(c);
                for &d in &o {
                    seen[d] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// `X^H`: cells whose stabilizer contains `H`.
    pub fn fixed_subcomplex(&self, h: &Subgroup) -> Subcomplex<'_> {
        let cells: Vec<usize> = (0..self.complex.len())
            .filter(|&c| h.elements().iter().all(|&g| self.action[g][c].0 == c))
            .collect();
        let s = Subcomplex::from_cells_unchecked(&self.complex, &cells);
        debug_assert!(Subcomplex::new(&self.complex, &cells).is_ok(), "fixed set of an invalid complex");
        s
    }

    /// Alternating count of orbits of cells whose stabilizer is conjugate to
    /// `H`.
    pub fn delta_invariant(&self, h: &Subgroup) -> i64 {
        self.orbits()
            .iter()
            .filter(|o| self.stabilizer(o[0]).is_conjugate_to(&self.group, h, self.group.elements()))
            .map(|o| sign_of_dim(self.complex.dim(o[0])))
            .sum()
    }

    /// Orbit complex `X/H` with trivial action.
    pub fn quotient_complex(&self, h: &Subgroup) -> QuotientComplex {
        let x = &self.complex;
        let m = x.len();
        let mut orient: Vec<Option<(usize, i8)>> = vec![None; m];
        let mut reps = Vec::new();
        for c in 0..m {
            if orient[c].is_some() {
                continue;
            }
            reps.push(c);
            for &g in h.elements() {
                let (d, s) = self.action[g][c];
                if orient[d].is_none() {
                    orient[d] = Some((c, s));
                }
            }
        }
        let orient: Vec<(usize, i8)> = orient.into_iter().map(|o| o.expect("every cell lies in an orbit")).collect();
        let cells = reps.iter().map(|&c| x.cells[c]).collect();
        let boundary = reps
            .iter()
            .map(|&c| {
                let faces = x
                    .boundary(c)
                    .iter()
                    .map(|&(f, k)| {
                        let (r, s) = orient[f];
                        (x.id(r), k * s as i64)
                    })
                    .collect();
                (x.id(c), faces)
            })
            .collect();
        let complex = CwComplex::new(cells, boundary).expect("orbit complex of a valid complex");
        let cell_map = orient.iter().map(|&(r, s)| (complex.index_of(x.id(r)).expect("rep"), s)).collect();
        QuotientComplex { complex, cell_map }
    }

    /// `Σ_(H) δ_H·|G:H|` over conjugacy classes of subgroups; equals `χ(X)`.
    pub fn orbit_type_euler_sum(&self, subgroups: &[Subgroup]) -> i64 {
        let mut reps: Vec<&Subgroup> = Vec::new();
        for h in subgroups {
            if !reps.iter().any(|r| r.is_conjugate_to(&self.group, h, self.group.elements())) {
                reps.push(h);
            }
        }
        reps.iter()
            .map(|h| self.delta_invariant(h) * (self.group.order() / h.order()) as i64)
            .sum()
    }

    /// Conjugacy classes of the acting group.
    pub fn group_classes(&self) -> Vec<Vec<usize>> {
        conjugacy_classes(&self.group)
    }
}

/// `X/H` together with the cell map `c ↦ ±[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientComplex {
    pub complex: CwComplex,
    /// For each cell of `X`, the quotient cell index and orientation sign.
    pub cell_map: Vec<(usize, i8)>,
}

fn compose(outer: &[(usize, i8)], inner: &[(usize, i8)]) -> Vec<(usize, i8)> {
    inner
        .iter()
        .map(|&(d, s1)| {
            let (e, s2) = outer[d];
            (e, s1 * s2)
        })
        .collect()
}

impl<I: ExactInt> HomologyGroup<I> {
    /// Number of `Z/p^k` summands for a prime `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        let p: I = from_i64(p as i64);
        self.torsion.iter().filter(|t| t.is_multiple_of(&p) && !t.is_zero()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::Int;

    #[test]
    fn point_and_circle() {
        let pt = catalog::point();
        assert_eq!(pt.euler_characteristic(), 1);
        let c = catalog::circle();
        assert_eq!(c.euler_characteristic(), 0);
        assert!(c.is_regular());
        let cc: ChainComplex<i64> = c.chain_complex();
        let d1 = cc.boundary(1);
        assert_eq!((d1.rows(), d1.cols()), (2, 2));
        for col in 0..2 {
            assert_eq!((0..2).map(|r| *d1.get(r, col)).sum::<i64>(), 0);
        }
        let h = homology_integral(&cc);
        assert_eq!(h.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(homology_mod_p(&cc, 3), vec![1, 1]);
    }

    #[test]
    fn interval_boundary() {
        let i = catalog::interval();
        let cc: ChainComplex<i64> = i.chain_complex();
        assert_eq!(cc.boundary(1).to_rows(), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn sphere_and_projective_plane() {
        let s2 = catalog::sphere2();
        assert_eq!(s2.euler_characteristic(), 2);
        let h = homology_integral(&s2.chain_complex::<Int>());
        assert_eq!(h.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 0, 1]);
        assert!(h.iter().all(|g| g.torsion.is_empty()));

        let rp2 = catalog::projective_plane();
        assert!(!rp2.is_regular());
        let cc = rp2.chain_complex::<Int>();
        let h = homology_integral(&cc);
        assert_eq!(h[0], HomologyGroup { betti: 1, torsion: vec![] });
        assert_eq!(h[1], HomologyGroup { betti: 0, torsion: vec![Int::from(2)] });
        assert_eq!(h[2], HomologyGroup { betti: 0, torsion: vec![] });
        assert_eq!(homology_mod_p(&cc, 2), vec![1, 1, 1]);
        assert_eq!(homology_mod_p(&cc, 3), vec![1, 0, 0]);
        assert_eq!(homology_mod_p(&catalog::point().chain_complex::<Int>(), 7), vec![1]);
    }

    #[test]
    fn validation_examples() {
        assert!(GCWComplex::with_trivial_group(catalog::point()).validate().is_valid());
        let swap = catalog::free_z2_circle();
        assert!(swap.validate().is_valid(), "{:?}", swap.validate());
        let conj = catalog::conjugation_circle();
        assert!(conj.validate().is_valid(), "{:?}", conj.validate());

        // perturb: reverse the sign on one edge so the action no longer
        // commutes with the boundary
        let mut table = conj.action_table().to_vec();
        let e0 = conj.complex().index_of(2).unwrap();
        table[1][e0].1 = -table[1][e0].1;
        let bad = GCWComplex::from_action_table(conj.complex().clone(), conj.group().clone(), table).unwrap();
        let report = bad.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::BoundaryNotEquivariant { element: 1, cell: 2 })));
    }

    #[test]
    fn inadmissible_reflection_is_reported() {
        // Z2 flipping an interval's edge onto itself with sign -1 and
        // swapping its endpoints
        let x = catalog::interval();
        let g = FiniteGroup::cyclic(2);
        let entries = BTreeMap::from([(1usize, vec![(0, 1, 1), (1, 0, 1), (2, 2, -1)])]);
        let y = GCWComplex::new(x, g, &entries).unwrap();
        let r = y.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Inadmissible { element: 1, cell: 2 })));
    }

    #[test]
    fn fixed_sets_and_components() {
        let conj = catalog::conjugation_circle();
        let whole = conj.fixed_subcomplex(&Subgroup::trivial());
        assert_eq!(whole.len(), 4);
        let fixed = conj.fixed_subcomplex(&Subgroup::whole(conj.group()));
        assert_eq!(fixed.ids(), vec![0, 1]);
        assert_eq!(fixed.components().len(), 2);
        assert_eq!(Subcomplex::whole(conj.complex()).components().len(), 1);
        let free = catalog::free_z2_circle();
        assert!(free.fixed_subcomplex(&Subgroup::whole(free.group())).is_empty());
    }

    #[test]
    fn delta_examples() {
        let pt = GCWComplex::with_trivial_action(catalog::point(), FiniteGroup::cyclic(3));
        assert_eq!(pt.delta_invariant(&Subgroup::whole(pt.group())), 1);
        let free = catalog::free_z2_circle();
        assert_eq!(free.delta_invariant(&Subgroup::whole(free.group())), 0);
        let conj = catalog::conjugation_circle();
        assert_eq!(conj.delta_invariant(&Subgroup::whole(conj.group())), 2);
        assert_eq!(conj.delta_invariant(&Subgroup::trivial()), -1);
    }

    #[test]
    fn quotients() {
        let conj = catalog::conjugation_circle();
        let q = conj.quotient_complex(&Subgroup::trivial());
        assert_eq!(q.complex, *conj.complex());
        let q = conj.quotient_complex(&Subgroup::whole(conj.group()));
        assert_eq!(q.complex.len(), 3);
        assert_eq!(q.complex.euler_characteristic(), 1);
        assert!(q.complex.is_connected());
        let two_points = CwComplex::new(vec![Cell { id: 0, dim: 0 }, Cell { id: 1, dim: 0 }], vec![]).unwrap();
        let swap = GCWComplex::new(
            two_points,
            FiniteGroup::cyclic(2),
            &BTreeMap::from([(1usize, vec![(0, 1, 1), (1, 0, 1)])]),
        )
        .unwrap();
        assert_eq!(swap.quotient_complex(&Subgroup::whole(swap.group())).complex.len(), 1);
    }

    #[test]
    fn bad_construction() {
        assert!(CwComplex::new(vec![Cell { id: 0, dim: 0 }, Cell { id: 0, dim: 1 }], vec![]).is_err());
        assert!(CwComplex::new(vec![Cell { id: 0, dim: 0 }], vec![(0, vec![(5, 1)])]).is_err());
        let x = catalog::circle();
        assert!(Subcomplex::new(&x, &[x.index_of(2).unwrap()]).is_err());
        assert!(ChainComplex::<i64>::new(vec![1, 1], vec![]).is_err());
    }

    #[test]
    fn boundary_violations_reported() {
        // a 1-cell whose boundary is a single vertex with coefficient 1 is
        // fine for ∂∘∂ but a 2-cell over it breaks ∂∘∂ = 0
        let x = CwComplex::new(
            vec![Cell { id: 0, dim: 0 }, Cell { id: 1, dim: 1 }, Cell { id: 2, dim: 2 }, Cell { id: 3, dim: 0 }],
            vec![(1, vec![(0, 1)]), (2, vec![(1, 1), (3, 1)])],
        )
        .unwrap();
        let v = x.boundary_violations();
        assert!(v.contains(&Violation::BoundaryDimension { cell: 2, face: 3 }));
        assert!(v.contains(&Violation::BoundarySquareNonzero { cell: 2, face: 0, value: 1 }));
    }
}
