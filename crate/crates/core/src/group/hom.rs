use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism between table groups, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    image_of: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, image_of: Vec<usize>) -> Result<Self> {
        if image_of.len() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} entries for a group of order {}",
                image_of.len(),
                source.order()
            )));
        }
        if let Some(&bad) = image_of.iter().find(|&&y| y >= target.order()) {
            return Err(Error::NotAHomomorphism(format!("image {bad} out of range")));
        }
        if image_of[0] != 0 {
            return Err(Error::NotAHomomorphism("identity not preserved".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if image_of[source.mul(a, b)] != target.mul(image_of[a], image_of[b]) {
                    return Err(Error::NotAHomomorphism(format!("fails on ({a}, {b})")));
                }
            }
        }
        Ok(GroupHom { source, target, image_of })
    }

    pub(crate) fn new_unchecked(source: FiniteGroup, target: FiniteGroup, image_of: Vec<usize>) -> Self {
        GroupHom { source, target, image_of }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image_of[x]
    }

    pub fn image_table(&self) -> &[usize] {
        &self.image_of
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.source.elements().filter(|&x| self.image_of[x] == 0).collect())
    }

    pub fn image(&self) -> Subgroup {
        let mut e = self.image_of.clone();
        e.sort_unstable();
        e.dedup();
        Subgroup::from_sorted_unchecked(e)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    /// Image of a subgroup of the source.
    pub fn map_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut e: Vec<usize> = h.elements().iter().map(|&x| self.image_of[x]).collect();
        e.sort_unstable();
        e.dedup();
        Subgroup::from_sorted_unchecked(e)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.source.elements().filter(|&x| h.contains(self.image_of[x])).collect())
    }
}
