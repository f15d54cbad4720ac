//! Oliver-number classification and the degree-zero coefficient equation.
//!
//! `n_G` is the modulus such that a finite complex `F` is the fixed set of a
//! finite contractible G-complex iff `χ(F) ≡ 1 mod n_G`. It is 0 when some
//! normal subgroup `P` of prime-power (or trivial) order has cyclic
//! quotient, 1 when no chain `P ⊲ H ⊲ G` with `P`, `G/H` of prime-power
//! order and `H/P` cyclic exists, and something else in between.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{factorize, normal_subgroups, normalizer, sylow_subgroup, FiniteGroup, OrderKind, Subgroup};
use crate::scalar::ExactInt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum OliverClass {
    /// `P ⊲ G` of prime-power or trivial order with `G/P` cyclic.
    Zero { p_subgroup: Subgroup },
    One,
    /// A chain `P ⊲ H ⊲ G` (both normal in `G`) of the excluded form.
    NontrivialUnknown { p_subgroup: Subgroup, h_subgroup: Subgroup },
}

impl OliverClass {
    pub fn name(&self) -> &'static str {
        match self {
            OliverClass::Zero { .. } => "Zero",
            OliverClass::One => "One",
            OliverClass::NontrivialUnknown { .. } => "NontrivialUnknown",
        }
    }

    /// Largest square-free factor of `n_G`, when determined.
    pub fn m_g(&self) -> Modulus {
        match self {
            OliverClass::Zero { .. } => Modulus::Known(0),
            OliverClass::One => Modulus::Known(1),
            OliverClass::NontrivialUnknown { .. } => Modulus::Unknown,
        }
    }
}

/// A congruence modulus; `Known(0)` means integer equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modulus {
    Known(u64),
    Unknown,
}

impl Modulus {
    pub fn known(self) -> Option<u64> {
        match self {
            Modulus::Known(n) => Some(n),
            Modulus::Unknown => None,
        }
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Modulus::Known(n) => s.serialize_u64(*n),
            Modulus::Unknown => s.serialize_str("unknown"),
        }
    }
}

/// Whether `G/N` is cyclic, without building the quotient table.
pub fn quotient_is_cyclic(group: &FiniteGroup, normal: &Subgroup) -> bool {
    let want = group.order() / normal.order();
    group.elements().any(|g| coset_order(group, normal, g) == want)
}

fn coset_order(group: &FiniteGroup, normal: &Subgroup, g: usize) -> usize {
    let mut x = g;
    let mut k = 1;
    while !normal.contains(x) {
        x = group.mul(x, g);
        k += 1;
    }
    k
}

/// Whether `H/P` is cyclic for `P ⊲ H`.
fn section_is_cyclic(group: &FiniteGroup, h: &Subgroup, p: &Subgroup) -> bool {
    let want = h.order() / p.order();
    h.elements().iter().any(|&x| coset_order(group, p, x) == want)
}

fn trivial_or_prime_power(n: usize) -> bool {
    OrderKind::of(n as u64).is_trivial_or_prime_power()
}

/// Decides `n_G ∈ {0, 1}` or returns a chain witnessing neither. Witnesses
/// are the first found with the smallest `P`, then the smallest `H`.
pub fn classify(group: &FiniteGroup) -> Result<OliverClass> {
    if trivial_or_prime_power(group.order()) {
        return Err(Error::PrimePowerOrder { order: group.order() });
    }
    let normals = normal_subgroups(group);
    let small: Vec<&Subgroup> = normals.iter().filter(|p| trivial_or_prime_power(p.order())).collect();
    if let Some(p) = small.iter().find(|p| quotient_is_cyclic(group, p)) {
        return Ok(OliverClass::Zero { p_subgroup: (*p).clone() });
    }
    for p in &small {
        for h in &normals {
            if h.order() % p.order() != 0 || !p.is_subgroup_of(h) {
                continue;
            }
            if trivial_or_prime_power(group.order() / h.order()) && section_is_cyclic(group, h, p) {
                return Ok(OliverClass::NontrivialUnknown { p_subgroup: (*p).clone(), h_subgroup: h.clone() });
            }
        }
    }
    Ok(OliverClass::One)
}

/// `Zero → 0`, `One → 1`, otherwise the override or `Unknown`.
pub fn effective_modulus(class: &OliverClass, override_value: Option<u64>) -> Result<Modulus> {
    match (class, override_value) {
        (OliverClass::Zero { .. }, Some(v)) if v != 0 => Err(Error::InconsistentOverride { value: v, class: "Zero" }),
        (OliverClass::One, Some(v)) if v != 1 => Err(Error::InconsistentOverride { value: v, class: "One" }),
        (OliverClass::Zero { .. }, _) => Ok(Modulus::Known(0)),
        (OliverClass::One, _) => Ok(Modulus::Known(1)),
        (OliverClass::NontrivialUnknown { .. }, Some(v)) => Ok(Modulus::Known(v)),
        (OliverClass::NontrivialUnknown { .. }, None) => Ok(Modulus::Unknown),
    }
}

/// `(p, |G : N_G(P)|)` for a Sylow `p`-subgroup `P`, one entry per prime.
pub fn sylow_normalizer_indices(group: &FiniteGroup) -> Vec<(u64, u64)> {
    factorize(group.order() as u64)
        .into_iter()
        .map(|(p, _)| {
            let s = sylow_subgroup(group, p).expect("p divides the order");
            (p, (group.order() / normalizer(group, &s).order()) as u64)
        })
        .collect()
}

/// Integers `a_i` with `1 + Σ a_i·m_i = 0`, from Bézout coefficients of the
/// `m_i` folded left. Coefficients after the point where the running gcd
/// reaches 1 are zero.
pub fn degree_zero_coefficients<I: ExactInt>(indices: &[I]) -> Result<Vec<I>> {
    if indices.is_empty() {
        return Err(Error::InvalidInput("index list is empty".into()));
    }
    if indices.iter().any(|m| !m.is_positive()) {
        return Err(Error::InvalidInput("indices must be positive".into()));
    }
    let mut g = indices[0].clone();
    let mut coeffs = vec![I::one()];
    for m in &indices[1..] {
        if g.is_one() {
            coeffs.push(I::zero());
            continue;
        }
        let e = g.extended_gcd(m);
        for c in coeffs.iter_mut() {
            *c = c.clone() * e.x.clone();
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    if !g.is_one() {
        return Err(Error::IndicesNotCoprime { gcd: g.to_string() });
    }
    Ok(coeffs.into_iter().map(|c| -c).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeZeroSolution {
    pub indices: Vec<(u64, u64)>,
    pub coefficients: Vec<i64>,
}

impl DegreeZeroSolution {
    /// `1 + Σ a_i·m_i`, zero for a valid solution.
    pub fn check(&self) -> i128 {
        1 + self
            .indices
            .iter()
            .zip(&self.coefficients)
            .map(|(&(_, m), &a)| a as i128 * m as i128)
            .sum::<i128>()
    }
}

/// Degree-zero coefficients for the Sylow normalizer indices of `G`.
pub fn degree_zero_solution(group: &FiniteGroup) -> Result<DegreeZeroSolution> {
    let indices = sylow_normalizer_indices(group);
    if indices.is_empty() {
        return Err(Error::PrimePowerOrder { order: group.order() });
    }
    let ms: Vec<BigInt> = indices.iter().map(|&(_, m)| BigInt::from(m)).collect();
    let coefficients = degree_zero_coefficients(&ms)?
        .into_iter()
        .map(|c| c.to_i64().ok_or_else(|| Error::InvalidInput("coefficient overflows i64".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreeZeroSolution { indices, coefficients })
}
