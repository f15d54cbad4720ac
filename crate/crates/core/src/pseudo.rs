//! Chain-level pseudo-equivalence checks, Smith conditions, mapping tori
//! and the combined obstruction verdict.

use serde::Serialize;

use crate::complex::{homology_integral, homology_mod_p, ChainComplex, GCWComplex};
use crate::cover::{component_splittings, is_weakly_g_connected, CoverModel};
use crate::error::{Error, Result};
use crate::euler::DeficitVector;
use crate::group::{all_subgroups, is_cyclic, FiniteGroup, OrderKind, Subgroup};
use crate::linalg::Matrix;
use crate::oliver::{classify, Modulus, OliverClass};
use crate::scalar::{congruent, ExactInt};
use crate::trace::{compwise_trace_check, cyclic_trace_check, CompwiseReport, CyclicReport};
use crate::Int;

/// Degreewise matrices `f_d : C_d → D_d` commuting with the boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<I> {
    source: ChainComplex<I>,
    target: ChainComplex<I>,
    maps: Vec<Matrix<I>>,
}

impl<I: ExactInt> ChainMap<I> {
    /// `maps[d]` has shape `rank D_d × rank C_d`; missing degrees are zero.
    pub fn new(source: ChainComplex<I>, target: ChainComplex<I>, maps: Vec<Matrix<I>>) -> Result<Self> {
        let top = source.len().max(target.len());
        let mut full = Vec::with_capacity(top);
        for d in 0..top {
            let m = maps.get(d).cloned().unwrap_or_else(|| Matrix::zeros(target.rank(d), source.rank(d)));
            if m.rows() != target.rank(d) || m.cols() != source.rank(d) {
                return Err(Error::InvalidInput(format!("chain map in degree {d} has the wrong shape")));
            }
            full.push(m);
        }
        if maps.len() > top && maps[top..].iter().any(|m| !m.is_zero()) {
            return Err(Error::InvalidInput("chain map has entries above the top degree".into()));
        }
        for d in 1..top {
            let lhs = target.boundary(d).mul(&full[d]);
            let rhs = full[d - 1].mul(&source.boundary(d));
            if lhs != rhs {
                return Err(Error::InvalidInput(format!("map does not commute with the boundary in degree {d}")));
            }
        }
        Ok(ChainMap { source, target, maps: full })
    }

    pub fn identity(c: &ChainComplex<I>) -> Self {
        let maps = (0..c.len()).map(|d| Matrix::identity(c.rank(d))).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn zero(source: &ChainComplex<I>, target: &ChainComplex<I>) -> Self {
        let top = source.len().max(target.len());
        let maps = (0..top).map(|d| Matrix::zeros(target.rank(d), source.rank(d))).collect();
        ChainMap { source: source.clone(), target: target.clone(), maps }
    }

    /// `k·id`.
    pub fn scalar(c: &ChainComplex<I>, k: I) -> Self {
        let maps = (0..c.len()).map(|d| Matrix::<I>::identity(c.rank(d)).map(|x: &I| x.clone() * k.clone())).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    /// The cellular chain automorphism of `g`.
    pub fn from_action(y: &GCWComplex, g: usize) -> Self {
        let x = y.complex();
        let c = x.chain_complex::<I>();
        let top = c.len();
        let mut pos = vec![0usize; x.len()];
        let mut seen = vec![0usize; top];
        for i in 0..x.len() {
            pos[i] = seen[x.dim(i)];
            seen[x.dim(i)] += 1;
        }
        let mut maps: Vec<Matrix<I>> = (0..top).map(|d| Matrix::zeros(c.rank(d), c.rank(d))).collect();
        for i in 0..x.len() {
            let (j, s) = y.act(g, i);
            maps[x.dim(i)].set(pos[j], pos[i], crate::scalar::from_i64(s as i64));
        }
        ChainMap { source: c.clone(), target: c, maps }
    }

    pub fn source(&self) -> &ChainComplex<I> {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex<I> {
        &self.target
    }

    pub fn matrix(&self, d: usize) -> Matrix<I> {
        self.maps.get(d).cloned().unwrap_or_else(|| Matrix::zeros(self.target.rank(d), self.source.rank(d)))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap<I>) -> Result<Self> {
        if first.target.ranks() != self.source.ranks() {
            return Err(Error::InvalidInput("chain maps are not composable".into()));
        }
        let top = first.source.len().max(self.target.len());
        let maps = (0..top).map(|d| self.matrix(d).mul(&first.matrix(d))).collect();
        ChainMap::new(first.source.clone(), self.target.clone(), maps)
    }
}

/// `Cone_d = C_{d-1} ⊕ D_d` with `∂(x, y) = (−∂x, f x + ∂y)`.
pub fn mapping_cone<I: ExactInt>(f: &ChainMap<I>) -> ChainComplex<I> {
    let c = &f.source;
    let d = &f.target;
    let top = c.len().max(d.len());
    // degrees 0..=top, the cone is one degree taller than the source
    let ranks: Vec<usize> = (0..=top).map(|k| d.rank(k) + if k == 0 { 0 } else { c.rank(k - 1) }).collect();
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let dc = if k >= 2 { c.boundary(k - 1).neg() } else { Matrix::zeros(0, c.rank(0)) };
        let upper_right = Matrix::zeros(dc.rows(), d.rank(k));
        let fk = f.matrix(k - 1);
        let dd = d.boundary(k);
        boundaries.push(Matrix::block(&dc, &upper_right, &fk, &dd));
    }
    ChainComplex::new(ranks, boundaries).expect("mapping cone of a chain map")
}

/// Whether the mapping cone is acyclic over the integers.
pub fn is_homology_equivalence<I: ExactInt>(f: &ChainMap<I>) -> bool {
    homology_integral(&mapping_cone(f)).iter().all(|h| h.is_zero())
}

/// `T_d = C_d ⊕ C_{d-1}` with `∂(x, y) = (∂x + (h − id) y, −∂y)`.
pub fn mapping_torus<I: ExactInt>(c: &ChainComplex<I>, h: &ChainMap<I>) -> Result<ChainComplex<I>> {
    if h.source.ranks() != c.ranks() || h.target.ranks() != c.ranks() {
        return Err(Error::InvalidInput("h is not a self-map of C".into()));
    }
    let top = c.len();
    let ranks: Vec<usize> = (0..=top).map(|d| c.rank(d) + if d == 0 { 0 } else { c.rank(d - 1) }).collect();
    let mut boundaries = Vec::with_capacity(top);
    for d in 1..=top {
        let shift = h.matrix(d - 1).sub(&Matrix::identity(c.rank(d - 1)));
        let lower_left = Matrix::zeros(if d >= 2 { c.rank(d - 2) } else { 0 }, c.rank(d));
        let lower_right = if d >= 2 { c.boundary(d - 1).neg() } else { Matrix::zeros(0, c.rank(0)) };
        boundaries.push(Matrix::block(&c.boundary(d), &shift, &lower_left, &lower_right));
    }
    ChainComplex::new(ranks, boundaries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithEntry {
    pub subgroup: Subgroup,
    pub p: u64,
    /// Mod-p Betti numbers of `X^P`, trailing zeros dropped.
    pub betti_x: Vec<usize>,
    pub betti_y: Vec<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithReport {
    pub entries: Vec<SmithEntry>,
    pub pass: bool,
}

fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Compares `H_*(X^P; F_p)` with `H_*(Y^P; F_p)` for every subgroup `P` of
/// order `p^k`, `k ≥ 1`.
pub fn smith_conditions(x: &GCWComplex, y: &GCWComplex) -> Result<SmithReport> {
    if x.group() != y.group() {
        return Err(Error::InvalidInput("complexes carry different groups".into()));
    }
    let mut entries = Vec::new();
    for p_sub in all_subgroups(x.group())? {
        let OrderKind::PrimePower { p, .. } = OrderKind::of(p_sub.order() as u64) else { continue };
        let bx = trimmed(homology_mod_p(&x.fixed_subcomplex(&p_sub).chain_complex::<Int>(), p));
        let by = trimmed(homology_mod_p(&y.fixed_subcomplex(&p_sub).chain_complex::<Int>(), p));
        entries.push(SmithEntry { pass: bx == by, subgroup: p_sub, p, betti_x: bx, betti_y: by });
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(SmithReport { entries, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
    Indeterminate,
}

impl Check {
    fn of(ok: Option<bool>) -> Self {
        match ok {
            Some(true) => Check::Pass,
            Some(false) => Check::Fail,
            None => Check::Indeterminate,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FailReason {
    Global,
    Trace,
    Smith,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Conclusion {
    SufficientPass,
    NecessaryFail { reason: FailReason },
    DefinitiveExact { pass: bool },
    Indeterminate { reason: String },
}

impl Conclusion {
    /// `0` pass, `1` fail, `2` indeterminate.
    pub fn exit_code(&self) -> i32 {
        match self {
            Conclusion::SufficientPass | Conclusion::DefinitiveExact { pass: true } => 0,
            Conclusion::NecessaryFail { .. } | Conclusion::DefinitiveExact { pass: false } => 1,
            Conclusion::Indeterminate { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceReports {
    pub cyclic: Vec<CyclicReport>,
    pub compwise: Option<CompwiseReport>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionVerdict {
    pub modulus: Modulus,
    pub global_congruence: Check,
    pub local_congruences: Vec<Check>,
    /// Relative to the supplied cover.
    pub weakly_g_connected: Option<bool>,
    pub smith: Option<SmithReport>,
    pub trace: Option<TraceReports>,
    pub conclusion: Conclusion,
}

/// Optional inputs refining the verdict.
#[derive(Clone, Debug, Default)]
pub struct VerdictContext<'a> {
    pub group: Option<&'a FiniteGroup>,
    pub cover: Option<&'a CoverModel>,
    /// Normal `p`-subgroup of `G` for the componentwise trace check.
    pub p_subgroup: Option<Subgroup>,
    pub smith: Option<SmithReport>,
}

/// Whether `n_G = 0` is forced: `G` cyclic, of prime-power order, or
/// classified `Zero`.
fn zero_forced(g: &FiniteGroup) -> (bool, bool) {
    let cyclic = is_cyclic(g, &Subgroup::whole(g));
    let zero = cyclic
        || OrderKind::of(g.order() as u64).is_trivial_or_prime_power()
        || matches!(classify(g), Ok(OliverClass::Zero { .. }));
    (cyclic, zero)
}

/// Combines the congruence, trace and Smith layers. Precedence: a global
/// failure, then a trace or Smith failure, then the exact componentwise
/// criterion, then the sufficient condition; when the exact criterion and a
/// trace check both fail the result is the exact failure.
pub fn verdict(deficits: &DeficitVector, modulus: Modulus, ctx: &VerdictContext) -> Result<ObstructionVerdict> {
    let group = match (ctx.group, ctx.cover) {
        (Some(g), Some(m)) if g != m.extension().quotient() => {
            return Err(Error::InconsistentContext("group differs from the cover's quotient".into()))
        }
        (Some(g), _) => Some(g),
        (None, Some(m)) => Some(m.extension().quotient()),
        (None, None) => None,
    };
    let (cyclic, zero) = group.map_or((false, false), zero_forced);
    let mut modulus = modulus;
    if let Some(g) = group {
        if zero {
            match modulus {
                Modulus::Known(0) => {}
                Modulus::Unknown => modulus = Modulus::Known(0),
                Modulus::Known(n) => {
                    return Err(Error::InconsistentContext(format!("n_G = 0 is forced for this group, got {n}")))
                }
            }
        } else if let Ok(OliverClass::One) = classify(g) {
            match modulus {
                Modulus::Known(1) => {}
                Modulus::Unknown => modulus = Modulus::Known(1),
                Modulus::Known(n) => {
                    return Err(Error::InconsistentContext(format!("n_G = 1 is forced for this group, got {n}")))
                }
            }
        }
    }

    let n = modulus.known();
    let global_congruence = Check::of(n.map(|n| congruent(deficits.sum(), 0, n)));
    let local_congruences: Vec<Check> =
        deficits.entries.iter().map(|&e| Check::of(n.map(|n| congruent(e, 0, n)))).collect();

    let mut weakly_g_connected = None;
    let mut trace = None;
    if let Some(m) = ctx.cover {
        let assignments = component_splittings(m)?;
        if assignments.len() != deficits.len() {
            return Err(Error::ComponentMismatch { expected: assignments.len(), got: deficits.len() });
        }
        weakly_g_connected = Some(is_weakly_g_connected(&assignments));
        let chi_f: Vec<i64> = {
            let base = m.base().complex();
            assignments
                .iter()
                .zip(&deficits.entries)
                .map(|(a, &d)| {
                    let chi_c: i64 = a
                        .cells
                        .iter()
                        .map(|&id| crate::complex::sign_of_dim(base.dim(base.index_of(id).expect("base cell"))))
                        .sum();
                    chi_c + d
                })
                .collect()
        };
        let mut cyclic_reports = Vec::new();
        if cyclic && !assignments.is_empty() {
            let e = m.extension();
            let g = e.quotient();
            let mut seen_members: Vec<Vec<usize>> = Vec::new();
            for gamma in e.total().elements() {
                if g.element_order(e.project(gamma)) != g.order() {
                    continue;
                }
                let r = cyclic_trace_check(m, gamma, &chi_f)?;
                if !r.members.is_empty() && !seen_members.contains(&r.members) {
                    seen_members.push(r.members.clone());
                    cyclic_reports.push(r);
                }
            }
        }
        let compwise = match &ctx.p_subgroup {
            Some(p) => Some(compwise_trace_check(m, p, &chi_f)?),
            None => None,
        };
        let pass = cyclic_reports.iter().all(|r| r.pass) && compwise.as_ref().is_none_or(|c| c.pass);
        trace = Some(TraceReports { cyclic: cyclic_reports, compwise, pass });
    }

    let trace_fail = trace.as_ref().is_some_and(|t| !t.pass);
    let smith_fail = ctx.smith.as_ref().is_some_and(|s| !s.pass);
    let all_local = local_congruences.iter().all(|&c| c == Check::Pass);
    let exact_applies = weakly_g_connected == Some(true) && (cyclic || zero) && n.is_some();

    let conclusion = if deficits.is_empty() {
        Conclusion::Indeterminate { reason: "Y^G is empty".into() }
    } else if global_congruence == Check::Fail {
        Conclusion::NecessaryFail { reason: FailReason::Global }
    } else if trace_fail || smith_fail {
        if exact_applies && !all_local {
            Conclusion::DefinitiveExact { pass: false }
        } else if smith_fail {
            Conclusion::NecessaryFail { reason: FailReason::Smith }
        } else {
            Conclusion::NecessaryFail { reason: FailReason::Trace }
        }
    } else if exact_applies {
        Conclusion::DefinitiveExact { pass: all_local }
    } else if n.is_some() && all_local {
        Conclusion::SufficientPass
    } else if n.is_none() {
        Conclusion::Indeterminate { reason: "n_G is unknown".into() }
    } else {
        Conclusion::Indeterminate { reason: "deficits lie between the bounds on N_Y".into() }
    };

    Ok(ObstructionVerdict {
        modulus,
        global_congruence,
        local_congruences,
        weakly_g_connected,
        smith: ctx.smith.clone(),
        trace,
        conclusion,
    })
}
