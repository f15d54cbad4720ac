//! Extensions `1 → π → Γ → G → 1`, splitting classes and finite covers.
//!
//! A [`CoverModel`] is a Γ-complex on which the kernel `π` acts freely; its
//! base `X/π` carries the induced G-action. A fixed component `C` of the
//! base lifts to components `Ĉ` upstairs, and the pointwise stabilizer
//! `Γ_Ĉ` is a complement of `π`. Its class under `π`-conjugation depends
//! only on `C`.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{GCWComplex, QuotientComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::group::{complements_capped, quotient, FiniteGroup, GroupHom, Subgroup, DEFAULT_SUBGROUP_CAP};

/// `1 → π → Γ → G → 1` with the projection given explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    projection: GroupHom,
    kernel: Subgroup,
}

impl ExtensionData {
    /// `map[γ]` is the image of `γ` in `G`; the map must be a surjective
    /// homomorphism with kernel exactly `π`.
    pub fn new(total: FiniteGroup, kernel: &[usize], quotient: FiniteGroup, map: Vec<usize>) -> Result<Self> {
        let kernel = Subgroup::from_elements(&total, kernel)?;
        let projection = GroupHom::new(total, quotient, map)?;
        if !projection.is_surjective() {
            return Err(Error::NotAHomomorphism("projection onto G is not surjective".into()));
        }
        if projection.kernel() != kernel {
            return Err(Error::InvalidInput("kernel of the projection differs from π".into()));
        }
        Ok(ExtensionData { projection, kernel })
    }

    /// `G = Γ/π` with cosets numbered by their smallest element.
    pub fn from_quotient(total: FiniteGroup, kernel: &[usize]) -> Result<Self> {
        let k = Subgroup::from_elements(&total, kernel)?;
        let (_, projection) = quotient(&total, &k)?;
        Ok(ExtensionData { projection, kernel: k })
    }

    /// `π = 1`, `Γ = G`.
    pub fn trivial(group: FiniteGroup) -> Self {
        Self::from_quotient(group, &[0]).expect("trivial kernel is normal")
    }

    pub fn total(&self) -> &FiniteGroup {
        self.projection.source()
    }

    pub fn quotient(&self) -> &FiniteGroup {
        self.projection.target()
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    pub fn project(&self, gamma: usize) -> usize {
        self.projection.apply(gamma)
    }

    /// Smallest preimage of each element of `G`.
    pub fn lifts(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.quotient().order()];
        for g in self.total().elements().rev() {
            out[self.project(g)] = g;
        }
        out
    }
}

/// A `π`-conjugacy class of complements of `π` in `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingClass {
    pub id: usize,
    pub representatives: Vec<Subgroup>,
}

impl SplittingClass {
    pub fn contains(&self, s: &Subgroup) -> bool {
        self.representatives.contains(s)
    }
}

fn pi_conjugates(e: &ExtensionData, s: &Subgroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = e.kernel().elements().iter().map(|&a| s.conjugate_by(e.total(), a)).collect();
    out.sort();
    out.dedup();
    out
}

/// All complements of `π`, grouped into `π`-conjugacy classes numbered in
/// order of their smallest complement.
pub fn splitting_classes(e: &ExtensionData) -> Result<Vec<SplittingClass>> {
    let comps = complements_capped(e.total(), e.kernel(), DEFAULT_SUBGROUP_CAP)?;
    if comps.is_empty() {
        return Err(Error::NoComplement);
    }
    let mut classes: Vec<SplittingClass> = Vec::new();
    for s in comps {
        if classes.iter().any(|c| c.contains(&s)) {
            continue;
        }
        classes.push(SplittingClass { id: classes.len(), representatives: pi_conjugates(e, &s) });
    }
    Ok(classes)
}

/// A Γ-complex with `π` acting freely, and its base with the G-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverModel {
    cover: GCWComplex,
    extension: ExtensionData,
    base: QuotientComplex,
    base_action: GCWComplex,
}

impl CoverModel {
    pub fn new(cover: GCWComplex, extension: ExtensionData) -> Result<Self> {
        if cover.group() != extension.total() {
            return Err(Error::InvalidCover("the cover's group is not Γ".into()));
        }
        let report = cover.validate();
        if !report.is_valid() {
            return Err(Error::InvalidCover(format!("{:?}", report.violations[0])));
        }
        let x = cover.complex();
        for &a in extension.kernel().elements().iter().skip(1) {
            if let Some(c) = (0..x.len()).find(|&c| cover.act(a, c).0 == c) {
                return Err(Error::InvalidCover(format!("kernel element {a} fixes cell {}", x.id(c))));
            }
        }
        let base = cover.quotient_complex(extension.kernel());
        let reps: Vec<usize> = {
            let mut r = vec![usize::MAX; base.complex.len()];
            for c in (0..x.len()).rev() {
                r[base.cell_map[c].0] = c;
            }
            r
        };
        let table: Vec<Vec<(usize, i8)>> = extension
            .lifts()
            .iter()
            .map(|&gamma| {
                reps.iter()
                    .enumerate()
                    .map(|(b, &r)| {
                        // rep r lies over b with sign cell_map[r].1 = +1
                        debug_assert_eq!(base.cell_map[r], (b, 1));
                        let (img, s1) = cover.act(gamma, r);
                        let (bimg, s2) = base.cell_map[img];
                        (bimg, s1 * s2)
                    })
                    .collect()
            })
            .collect();
        let base_action = GCWComplex::from_action_table(base.complex.clone(), extension.quotient().clone(), table)?;
        let report = base_action.validate();
        if !report.is_valid() {
            return Err(Error::InvalidCover(format!("induced action on the base: {:?}", report.violations[0])));
        }
        Ok(CoverModel { cover, extension, base, base_action })
    }

    /// `Γ = G`, `π = 1`: the base is the complex itself.
    pub fn trivial(x: GCWComplex) -> Result<Self> {
        let e = ExtensionData::trivial(x.group().clone());
        Self::new(x, e)
    }

    pub fn cover(&self) -> &GCWComplex {
        &self.cover
    }

    pub fn extension(&self) -> &ExtensionData {
        &self.extension
    }

    /// The base `X/π` with the induced G-action.
    pub fn base(&self) -> &GCWComplex {
        &self.base_action
    }

    /// Base cell under each cover cell, with orientation sign.
    pub fn cell_map(&self) -> &[(usize, i8)] {
        &self.base.cell_map
    }

    /// Components of `base^H` for a subgroup `H ≤ G`, as sorted base cell
    /// index lists.
    pub fn fixed_components(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        self.base_action.fixed_subcomplex(h).components().iter().map(|c| c.cells().to_vec()).collect()
    }

    /// Components of the preimage of a set of base cells.
    pub fn lifts(&self, base_cells: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.base.complex.len()];
        for &b in base_cells {
            inside[b] = true;
        }
        let x = self.cover.complex();
        let cells: Vec<usize> = (0..x.len()).filter(|&c| inside[self.base.cell_map[c].0]).collect();
        Subcomplex::from_cells_unchecked(x, &cells).components().iter().map(|c| c.cells().to_vec()).collect()
    }

    /// Elements of `within` fixing every listed cover cell.
    fn pointwise_stabilizer(&self, cells: &[usize], within: impl Iterator<Item = usize>) -> Subgroup {
        Subgroup::from_sorted_unchecked(within.filter(|&g| cells.iter().all(|&c| self.cover.act(g, c).0 == c)).collect())
    }

    /// `Γ_Ĉ` for a lift, checked constant along the lift and a complement.
    fn lift_stabilizer(&self, lift: &[usize], component_id: u64) -> Result<Subgroup> {
        let gamma = self.extension.total();
        let s = self.pointwise_stabilizer(lift, gamma.elements());
        if lift.iter().any(|&c| self.cover.stabilizer(c) != s) {
            return Err(Error::InconsistentStabilizer { component: component_id });
        }
        if s.order() != self.extension.quotient().order() || !s.intersection(self.extension.kernel()).is_trivial() {
            return Err(Error::NotAComplement { component: component_id });
        }
        Ok(s)
    }
}

/// Splitting data for one component `C` of `base^G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSplitting {
    pub component: usize,
    /// Base cell ids of `C`.
    pub cells: Vec<u64>,
    /// Cover cell ids of the chosen lift `Ĉ`.
    pub lift: Vec<u64>,
    pub stabilizer: Subgroup,
    pub class_id: usize,
}

fn ids(x: &crate::complex::CwComplex, cells: &[usize]) -> Vec<u64> {
    cells.iter().map(|&c| x.id(c)).collect()
}

fn class_of(classes: &[SplittingClass], s: &Subgroup, component_id: u64) -> Result<usize> {
    classes.iter().find(|c| c.contains(s)).map(|c| c.id).ok_or(Error::NotAComplement { component: component_id })
}

/// Every lift of the component with index `component` of `base^G`, with its
/// stabilizer.
pub fn component_lifts(m: &CoverModel, component: usize) -> Result<Vec<(Vec<u64>, Subgroup)>> {
    let comps = m.fixed_components(&Subgroup::whole(m.extension.quotient()));
    let c = comps.get(component).ok_or(Error::ComponentMismatch { expected: comps.len(), got: component + 1 })?;
    let base_id = m.base_action.complex().id(c[0]);
    m.lifts(c)
        .into_iter()
        .map(|lift| Ok((ids(m.cover.complex(), &lift), m.lift_stabilizer(&lift, base_id)?)))
        .collect()
}

/// For each component `C` of `base^G`, the class of `Γ_Ĉ` for its first lift.
pub fn component_splittings(m: &CoverModel) -> Result<Vec<ComponentSplitting>> {
    let comps = m.fixed_components(&Subgroup::whole(m.extension.quotient()));
    if comps.is_empty() {
        return Ok(Vec::new());
    }
    let classes = splitting_classes(&m.extension)?;
    let base = m.base_action.complex();
    comps
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let base_id = base.id(c[0]);
            let lift = m.lifts(c).into_iter().next().expect("nonempty preimage");
            let s = m.lift_stabilizer(&lift, base_id)?;
            Ok(ComponentSplitting {
                component: k,
                cells: ids(base, c),
                lift: ids(m.cover.complex(), &lift),
                class_id: class_of(&classes, &s, base_id)?,
                stabilizer: s,
            })
        })
        .collect()
}

/// Distinct components receive distinct classes; relative to the supplied
/// cover.
pub fn is_weakly_g_connected(assignments: &[ComponentSplitting]) -> bool {
    let mut seen = std::collections::HashSet::new();
    assignments.iter().all(|a| seen.insert(a.class_id))
}

/// Compatible pair `(Γ_Ĉ, Γ_D̂)` for `C ⊆ D`, `D` a component of `base^P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSplitting {
    pub component: usize,
    pub d_component: usize,
    /// Smallest base cell id of `D`.
    pub d_label: u64,
    pub stabilizer_c: Subgroup,
    pub stabilizer_d: Subgroup,
    pub class_id: usize,
}

/// Pairs read off a common lift `Ĉ ⊆ D̂`, classified under simultaneous
/// `π`-conjugation; ids in order of first appearance.
pub fn pair_splitting_classes(m: &CoverModel, p: &Subgroup) -> Result<Vec<PairSplitting>> {
    let g = m.extension.quotient();
    if !p.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let base = m.base_action.complex();
    let cs = m.fixed_components(&Subgroup::whole(g));
    let ds = m.fixed_components(p);
    let gamma = m.extension.total();
    let pullback = m.extension.projection().preimage(p);
    let mut keys: Vec<(Subgroup, Subgroup)> = Vec::new();
    let mut out = Vec::new();
    for (k, c) in cs.iter().enumerate() {
        let base_id = base.id(c[0]);
        let d_index = ds.iter().position(|d| d.binary_search(&c[0]).is_ok()).expect("X^G ⊆ X^P");
        let d = &ds[d_index];
        let c_lift = m.lifts(c).into_iter().next().expect("nonempty preimage");
        let d_lift = m
            .lifts(d)
            .into_iter()
            .find(|l| l.binary_search(&c_lift[0]).is_ok())
            .expect("lift of D through the lift of C");
        let sc = m.lift_stabilizer(&c_lift, base_id)?;
        let sd = m.pointwise_stabilizer(&d_lift, pullback.elements().iter().copied());
        if sd.order() != p.order() {
            return Err(Error::NotAComplement { component: base.id(d[0]) });
        }
        let canonical = m
            .extension
            .kernel()
            .elements()
            .iter()
            .map(|&a| (sc.conjugate_by(gamma, a), sd.conjugate_by(gamma, a)))
            .min()
            .expect("π is nonempty");
        let class_id = match keys.iter().position(|key| *key == canonical) {
            Some(i) => i,
            None => {
                keys.push(canonical);
                keys.len() - 1
            }
        };
        out.push(PairSplitting {
            component: k,
            d_component: d_index,
            d_label: base.id(d[0]),
            stabilizer_c: sc,
            stabilizer_d: sd,
            class_id,
        });
    }
    Ok(out)
}

/// Base component index containing each base cell of `base^G`.
pub fn component_index(m: &CoverModel) -> HashMap<usize, usize> {
    m.fixed_components(&Subgroup::whole(m.extension.quotient()))
        .iter()
        .enumerate()
        .flat_map(|(k, c)| c.iter().map(move |&b| (b, k)))
        .collect()
}
