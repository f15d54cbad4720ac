use serde::Serialize;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure; the identity must be present.
    pub fn from_elements(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x >= group.order()) {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let sub = Subgroup { elements };
        for &a in &sub.elements {
            if !sub.contains(group.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &sub.elements {
                if !sub.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(sub)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup { elements: group.elements().collect() }
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mut inside = vec![false; group.order()];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &s in gens {
                let y = group.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { elements: members }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `g H g⁻¹`.
    pub fn conjugate_by(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&h| group.conjugate(g, h)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        group
            .elements()
            .all(|g| self.elements.iter().all(|&h| self.contains(group.conjugate(g, h))))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    /// Whether some `g ∈ conjugators` gives `g H g⁻¹ = other`.
    pub fn is_conjugate_to<I>(&self, group: &FiniteGroup, other: &Subgroup, conjugators: I) -> bool
    where
        I: IntoIterator<Item = usize>,
    {
        self.order() == other.order()
            && conjugators.into_iter().any(|g| &self.conjugate_by(group, g) == other)
    }
}
