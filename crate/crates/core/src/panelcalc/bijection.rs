use alloc::vec::Vec;

use crate::chambersys::{Building, Chamber, ResidueRef};

/// A bijection from the chambers of one panel to those of another, stored
/// as pairs sorted by source chamber.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PanelBijection {
    source: ResidueRef,
    target: ResidueRef,
    pairs: Vec<(Chamber, Chamber)>,
}

impl PanelBijection {
    pub fn identity(b: &Building, p: ResidueRef) -> Self {
        PanelBijection { source: p, target: p, pairs: b.chambers_of(p).iter().map(|&x| (x, x)).collect() }
    }

    /// `x ↦ proj_Q x` for parallel panels `P`, `Q`.
    pub fn projection(b: &Building, p: ResidueRef, q: ResidueRef) -> Self {
        let pairs = b.chambers_of(p).iter().map(|&x| (x, b.proj_chamber(q, x))).collect();
        PanelBijection { source: p, target: q, pairs }
    }

    pub fn source(&self) -> ResidueRef {
        self.source
    }

    pub fn target(&self) -> ResidueRef {
        self.target
    }

    pub fn pairs(&self) -> &[(Chamber, Chamber)] {
        &self.pairs
    }

    pub fn apply(&self, x: Chamber) -> Option<Chamber> {
        self.pairs.binary_search_by_key(&x, |&(a, _)| a).ok().map(|i| self.pairs[i].1)
    }

    /// `next ∘ self`.
    ///
    /// # Panics
    /// If `next` does not start where `self` ends.
    pub fn then(&self, next: &PanelBijection) -> PanelBijection {
        assert_eq!(self.target, next.source, "composing bijections of unrelated panels");
        let pairs = self.pairs.iter().map(|&(x, y)| (x, next.apply(y).unwrap())).collect();
        PanelBijection { source: self.source, target: next.target, pairs }
    }

    pub fn inverse(&self) -> PanelBijection {
        let mut pairs: Vec<(Chamber, Chamber)> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        PanelBijection { source: self.target, target: self.source, pairs }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.pairs.iter().all(|&(x, y)| x == y)
    }

    /// Whether the pairs really are a bijection between the two panels.
    pub fn is_bijective(&self, b: &Building) -> bool {
        let src: Vec<Chamber> = self.pairs.iter().map(|p| p.0).collect();
        let mut dst: Vec<Chamber> = self.pairs.iter().map(|p| p.1).collect();
        dst.sort_unstable();
        src == b.chambers_of(self.source) && dst == b.chambers_of(self.target)
    }
}
