use core::fmt;

use super::Gen;

/// Set of generator indices (rank at most 16).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenSet(pub u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn all(rank: usize) -> Self {
        GenSet((1u32 << rank) - 1)
    }

    pub fn single(s: Gen) -> Self {
        GenSet(1 << s)
    }

    pub fn pair(s: Gen, t: Gen) -> Self {
        GenSet((1 << s) | (1 << t))
    }

    pub fn from_gens(gens: impl IntoIterator<Item = Gen>) -> Self {
        gens.into_iter().fold(Self::EMPTY, |acc, s| acc.with(s))
    }

    #[inline]
    pub fn contains(self, s: Gen) -> bool {
        self.0 & (1 << s) != 0
    }

    #[must_use]
    pub fn with(self, s: Gen) -> Self {
        GenSet(self.0 | (1 << s))
    }

    #[must_use]
    pub fn without(self, s: Gen) -> Self {
        GenSet(self.0 & !(1 << s))
    }

    pub fn union(self, other: Self) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Gen> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// Every subset, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = GenSet> {
        let full = self.0;
        let mut next = Some(0u32);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some(((cur | !full).wrapping_add(1)) & full) };
            Some(GenSet(cur))
        })
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn subsets_enumerates_power_set() {
        let j = GenSet::from_gens([0, 2, 3]);
        let subs: Vec<GenSet> = j.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(j)));
        assert_eq!(GenSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn basic_ops() {
        let j = GenSet::pair(1, 4);
        assert!(j.contains(4) && !j.contains(0));
        assert_eq!(j.len(), 2);
        assert_eq!(j.without(4), GenSet::single(1));
        assert_eq!(j.iter().collect::<Vec<_>>(), [1, 4]);
    }
}
