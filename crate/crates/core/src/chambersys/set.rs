use alloc::vec;
use alloc::vec::Vec;

use super::Chamber;

/// A subset of the chambers `0..n`, kept both as a sorted list and a mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberSet {
    members: Vec<Chamber>,
    mask: Vec<bool>,
}

impl ChamberSet {
    pub fn empty(n: usize) -> Self {
        ChamberSet { members: Vec::new(), mask: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        ChamberSet { members: (0..n).collect(), mask: vec![true; n] }
    }

    pub fn from_iter(n: usize, chambers: impl IntoIterator<Item = Chamber>) -> Self {
        let mut mask = vec![false; n];
        for c in chambers {
            mask[c] = true;
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        ChamberSet { members, mask }
    }

    #[inline]
    pub fn contains(&self, c: Chamber) -> bool {
        self.mask.get(c).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Size of the ambient chamber set.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn members(&self) -> &[Chamber] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Chamber> + '_ {
        self.members.iter().copied()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_subset(&self, other: &ChamberSet) -> bool {
        self.iter().all(|c| other.contains(c))
    }

    pub fn intersection(&self, other: &ChamberSet) -> ChamberSet {
        ChamberSet::from_iter(self.universe(), self.iter().filter(|&c| other.contains(c)))
    }
}
