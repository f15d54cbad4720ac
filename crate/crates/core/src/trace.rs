//! Hattori–Stallings rank vectors and the trace congruences.
//!
//! The rank of the permutation module `R[Γ/H]` is `(1/|H|)·Σ_{h∈H} h`, read
//! as a vector over the conjugacy classes of `Γ`. Summing orbit modules with
//! sign `(-1)^dim` gives the rank of the equivariant Euler characteristic.
//! Equal ranks are necessary for a pseudo-equivalence between covers.

use num_integer::Integer;
use serde::Serialize;

use crate::complex::{sign_of_dim, GCWComplex};
use crate::cover::{component_splittings, pair_splitting_classes, splitting_classes, CoverModel};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, is_cyclic, FiniteGroup, OrderKind, Subgroup};
use crate::oliver::quotient_is_cyclic;
use crate::scalar::{from_i64, RankScalar};
use crate::Rational;

/// Coefficients indexed by the conjugacy classes of a group, in the order of
/// [`conjugacy_classes`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConjClassVector<Q> {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    coefficients: Vec<Q>,
}

impl<Q: RankScalar> ConjClassVector<Q> {
    pub fn zero(group: &FiniteGroup) -> Self {
        let classes = conjugacy_classes(group);
        let mut class_of = vec![0; group.order()];
        for (k, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = k;
            }
        }
        let coefficients = vec![Q::zero(); classes.len()];
        ConjClassVector { classes, class_of, coefficients }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coefficients
    }

    pub fn class_index(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Coefficient of the class `(γ)`.
    pub fn coefficient_of(&self, element: usize) -> &Q {
        &self.coefficients[self.class_of[element]]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|q| q.is_zero())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        assert_eq!(self.classes, other.classes, "vectors over different groups");
        ConjClassVector {
            classes: self.classes.clone(),
            class_of: self.class_of.clone(),
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut out = self.clone();
        for c in &mut out.coefficients {
            *c = c.clone() * k.clone();
        }
        out
    }

    pub fn map<R: RankScalar>(&self, f: impl Fn(&Q) -> R) -> ConjClassVector<R> {
        ConjClassVector {
            classes: self.classes.clone(),
            class_of: self.class_of.clone(),
            coefficients: self.coefficients.iter().map(f).collect(),
        }
    }

    /// `Σ coefficient`, the augmentation of the rank.
    pub fn total(&self) -> Q {
        self.coefficients.iter().fold(Q::zero(), |acc, q| acc + q.clone())
    }

    /// `|Γ|·coefficient(1)`, the rational dimension of the module.
    pub fn rational_dimension(&self) -> Q {
        let order: usize = self.classes.iter().map(Vec::len).sum();
        Q::from_usize(order).expect("group order") * self.coefficient_of(0).clone()
    }
}

/// `rank R[Γ/H]`: the coefficient of `(γ)` is `|H ∩ (γ)| / |H|`.
pub fn rank_of_orbit_module<Q: RankScalar>(group: &FiniteGroup, h: &Subgroup) -> ConjClassVector<Q> {
    let mut v = ConjClassVector::<Q>::zero(group);
    let mut counts = vec![0usize; v.classes.len()];
    for &x in h.elements() {
        counts[v.class_of[x]] += 1;
    }
    let order = Q::from_usize(h.order()).expect("order");
    v.coefficients = counts.into_iter().map(|c| Q::from_usize(c).expect("count") / order.clone()).collect();
    v
}

/// `Σ_orbits (-1)^dim · rank R[Γ/Γ_σ]`.
pub fn equivariant_euler_rank<Q: RankScalar>(x: &GCWComplex) -> ConjClassVector<Q> {
    let mut total = ConjClassVector::<Q>::zero(x.group());
    for orbit in x.orbits() {
        let c = orbit[0];
        let r = rank_of_orbit_module::<Q>(x.group(), &x.stabilizer(c));
        total = if sign_of_dim(x.complex().dim(c)) > 0 { total.add(&r) } else { total.sub(&r) };
    }
    total
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankComparison {
    pub equal: bool,
    /// `rank(X) − rank(Y)`.
    pub difference: ConjClassVector<Rational>,
}

pub fn check_rank_equality(x: &GCWComplex, y: &GCWComplex) -> Result<RankComparison> {
    if x.group() != y.group() {
        return Err(Error::InvalidInput("complexes carry different groups".into()));
    }
    let difference = equivariant_euler_rank::<Rational>(x).sub(&equivariant_euler_rank(y));
    Ok(RankComparison { equal: difference.is_zero(), difference })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclicReport {
    pub gamma: usize,
    /// Components `C` with `⟨γ⟩ ∈ Γ_C`.
    pub members: Vec<usize>,
    pub sum_fixed_x: i64,
    pub sum_fixed_y: i64,
    pub pass: bool,
    /// Coefficient of `(γ)` in the rank of `χ_Γ` of the cover.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub coefficient: Rational,
    /// `(1/|G|)·Σ_{⟨γ⟩∈Γ_C} χ(C)`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub expected_coefficient: Rational,
    pub coefficient_matches: bool,
}

/// Sums `χ(F_C)` and `χ(C)` over the components whose splitting class
/// contains `⟨γ⟩` and compares them as integers.
pub fn cyclic_trace_check(m: &CoverModel, gamma: usize, fixed_euler_x: &[i64]) -> Result<CyclicReport> {
    let e = m.extension();
    let g = e.quotient();
    if !is_cyclic(g, &Subgroup::whole(g)) {
        return Err(Error::TraceHypothesisFails("G is not cyclic".into()));
    }
    if gamma >= e.total().order() || g.element_order(e.project(gamma)) != g.order() {
        return Err(Error::GeneratorConditionFails { element: gamma });
    }
    let assignments = component_splittings(m)?;
    if assignments.len() != fixed_euler_x.len() {
        return Err(Error::ComponentMismatch { expected: assignments.len(), got: fixed_euler_x.len() });
    }
    let generated = Subgroup::generated_by(e.total(), &[gamma]);
    let classes = if assignments.is_empty() { Vec::new() } else { splitting_classes(e)? };
    let holding: Vec<usize> = classes
        .iter()
        .filter(|c| c.representatives.iter().any(|s| generated.is_subgroup_of(s)))
        .map(|c| c.id)
        .collect();
    let base = m.base();
    let members: Vec<usize> =
        assignments.iter().filter(|a| holding.contains(&a.class_id)).map(|a| a.component).collect();
    let chi_c = |k: usize| -> i64 {
        assignments[k].cells.iter().map(|&id| sign_of_dim(base.complex().dim(base.complex().index_of(id).unwrap()))).sum()
    };
    let sum_fixed_x = members.iter().map(|&k| fixed_euler_x[k]).sum();
    let sum_fixed_y: i64 = members.iter().map(|&k| chi_c(k)).sum();
    let coefficient = equivariant_euler_rank::<Rational>(m.cover()).coefficient_of(gamma).clone();
    let expected_coefficient = Rational::new(from_i64(sum_fixed_y), from_i64(g.order() as i64));
    Ok(CyclicReport {
        gamma,
        members,
        sum_fixed_x,
        sum_fixed_y,
        pass: sum_fixed_x == sum_fixed_y,
        coefficient_matches: coefficient == expected_coefficient,
        coefficient,
        expected_coefficient,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompwiseGroup {
    pub d_component: usize,
    pub d_label: u64,
    pub class_id: usize,
    pub components: Vec<usize>,
    pub sum_fixed_x: i64,
    pub sum_fixed_y: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompwiseReport {
    pub groups: Vec<CompwiseGroup>,
    pub pass: bool,
}

/// For each component `D₀` of `base^P` and each pair class among the
/// `C ⊆ D₀`, compares `Σ χ(F_C)` with `Σ χ(C)`.
pub fn compwise_trace_check(m: &CoverModel, p: &Subgroup, fixed_euler_x: &[i64]) -> Result<CompwiseReport> {
    let g = m.extension().quotient();
    if !p.is_normal_in(g) {
        return Err(Error::TraceHypothesisFails("P is not normal in G".into()));
    }
    let prime = match OrderKind::of(p.order() as u64) {
        OrderKind::Trivial => None,
        OrderKind::PrimePower { p, .. } => Some(p),
        OrderKind::Composite => return Err(Error::TraceHypothesisFails("P is not a p-group".into())),
    };
    if !quotient_is_cyclic(g, p) {
        return Err(Error::TraceHypothesisFails("G/P is not cyclic".into()));
    }
    let index = (g.order() / p.order()) as u64;
    if prime.is_some_and(|q| !index.gcd(&q).eq(&1)) {
        return Err(Error::TraceHypothesisFails("|G/P| is not coprime to p".into()));
    }
    let pairs = pair_splitting_classes(m, p)?;
    if pairs.len() != fixed_euler_x.len() {
        return Err(Error::ComponentMismatch { expected: pairs.len(), got: fixed_euler_x.len() });
    }
    let base = m.base().complex();
    let comps = m.fixed_components(&Subgroup::whole(g));
    let chi_c = |k: usize| -> i64 { comps[k].iter().map(|&c| sign_of_dim(base.dim(c))).sum() };
    let mut groups: Vec<CompwiseGroup> = Vec::new();
    for pair in &pairs {
        let k = pair.component;
        match groups.iter_mut().find(|gr| gr.d_component == pair.d_component && gr.class_id == pair.class_id) {
            Some(gr) => {
                gr.components.push(k);
                gr.sum_fixed_x += fixed_euler_x[k];
                gr.sum_fixed_y += chi_c(k);
            }
            None => groups.push(CompwiseGroup {
                d_component: pair.d_component,
                d_label: pair.d_label,
                class_id: pair.class_id,
                components: vec![k],
                sum_fixed_x: fixed_euler_x[k],
                sum_fixed_y: chi_c(k),
                pass: true,
            }),
        }
    }
    for gr in &mut groups {
        gr.pass = gr.sum_fixed_x == gr.sum_fixed_y;
    }
    groups.sort_by_key(|gr| (gr.d_component, gr.class_id));
    let pass = groups.iter().all(|gr| gr.pass);
    Ok(CompwiseReport { groups, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_traits::One;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn orbit_module_examples() {
        let v4 = catalog::klein_four();
        let r = rank_of_orbit_module::<Rational>(&v4, &Subgroup::trivial());
        assert_eq!(r.coefficients(), &[Rational::one(), q(0, 1), q(0, 1), q(0, 1)]);
        let r = rank_of_orbit_module::<Rational>(&v4, &Subgroup::from_elements(&v4, &[0, 2]).unwrap());
        assert_eq!(*r.coefficient_of(0), q(1, 2));
        assert_eq!(*r.coefficient_of(2), q(1, 2));
        assert_eq!(*r.coefficient_of(1), q(0, 1));
        let s3 = catalog::symmetric(3);
        let r = rank_of_orbit_module::<Rational>(&s3, &Subgroup::whole(&s3));
        for (c, coeff) in r.classes().iter().zip(r.coefficients()) {
            assert_eq!(*coeff, q(c.len() as i64, 6));
        }
        let f = rank_of_orbit_module::<f64>(&s3, &Subgroup::whole(&s3));
        assert!((f.coefficients().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((f.coefficient_of(0) * 6.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_cover_rank() {
        let m = catalog::square_cover();
        let r = equivariant_euler_rank::<Rational>(m.cover());
        assert_eq!(*r.coefficient_of(0), q(0, 1));
        assert_eq!(*r.coefficient_of(1), q(0, 1));
        assert_eq!(*r.coefficient_of(2), q(1, 2));
        assert_eq!(*r.coefficient_of(3), q(1, 2));
        let free = catalog::free_gamma_circles();
        let cmp = check_rank_equality(m.cover(), &free).unwrap();
        assert!(!cmp.equal);
        assert_eq!(*cmp.difference.coefficient_of(2), q(1, 2));
        assert!(check_rank_equality(&free, &free).unwrap().equal);
    }

    #[test]
    fn fixed_point_rank() {
        let s3 = catalog::symmetric(3);
        let pt = GCWComplex::with_trivial_action(catalog::point(), s3.clone());
        assert_eq!(equivariant_euler_rank::<Rational>(&pt), rank_of_orbit_module(&s3, &Subgroup::whole(&s3)));
    }

    #[test]
    fn cyclic_check_on_square_cover() {
        let m = catalog::square_cover();
        let r = cyclic_trace_check(&m, 2, &[1, 5]).unwrap();
        assert_eq!(r.members, vec![0]);
        assert!(r.pass);
        assert_eq!(r.coefficient, q(1, 2));
        assert!(r.coefficient_matches);
        let r = cyclic_trace_check(&m, 2, &[2, 1]).unwrap();
        assert!(!r.pass);
        assert_eq!(r.sum_fixed_x - r.sum_fixed_y, 1);
        assert!(matches!(cyclic_trace_check(&m, 1, &[1, 1]), Err(Error::GeneratorConditionFails { element: 1 })));
    }

    #[test]
    fn cyclic_check_trivial_kernel() {
        let m = CoverModel::trivial(catalog::conjugation_circle()).unwrap();
        assert!(cyclic_trace_check(&m, 1, &[1, 1]).unwrap().pass);
        let r = cyclic_trace_check(&m, 1, &[2, 1]).unwrap();
        assert!(!r.pass);
        assert_eq!(r.sum_fixed_x - r.sum_fixed_y, 1);
    }

    #[test]
    fn compwise_agrees_with_cyclic() {
        let m = catalog::square_cover();
        let r = compwise_trace_check(&m, &Subgroup::trivial(), &[1, 1]).unwrap();
        assert!(r.pass);
        let r = compwise_trace_check(&m, &Subgroup::trivial(), &[2, 1]).unwrap();
        assert!(!r.pass);
        let bad = r.groups.iter().find(|g| !g.pass).unwrap();
        assert_eq!(bad.components, vec![0]);
    }

    #[test]
    fn compwise_z6() {
        let z6 = FiniteGroup::cyclic(6);
        let pt = GCWComplex::with_trivial_action(catalog::point(), z6.clone());
        let m = CoverModel::trivial(pt).unwrap();
        let p = Subgroup::generated_by(&z6, &[3]);
        assert!(compwise_trace_check(&m, &p, &[1]).unwrap().pass);
        assert!(!compwise_trace_check(&m, &p, &[0]).unwrap().pass);
        let not_p = Subgroup::whole(&z6);
        assert!(matches!(compwise_trace_check(&m, &not_p, &[1]), Err(Error::TraceHypothesisFails(_))));
    }
}
