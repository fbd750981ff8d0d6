//! Galleries and 2-homotopy, connectivity and simple 2-connectivity of
//! chamber subsets, the local opposition conditions (lco)/(lsco), and the
//! filtration of the chamber set induced by a codistance.

mod filtration;
mod gallery;
mod opposition;
mod presentation;

use alloc::vec::Vec;

pub use filtration::{residual_filtration, Filtration};
pub use gallery::{elementary_2_homotopic, two_homotopic, two_homotopic_within, Gallery};
pub use opposition::{check_lco, check_lsco, OppositionEntry, OppositionReport};
pub use presentation::{simply_2_connected, Limits};

use crate::chambersys::{Building, ChamberSet};
use crate::coxeter::GenSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomotopyError {
    #[error("galleries do not share both endpoints")]
    EndpointMismatch,
    #[error("chamber subset is not connected")]
    NotConnected,
    #[error("step {0} does not join adjacent chambers")]
    NotAGallery(usize),
    #[error("a gallery needs at least one chamber")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    ProvenTrivial,
    ProvenNontrivial,
    Inconclusive,
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Number of elementary homotopies used.
    Depth(usize),
    /// Order of the edge-path group, found by coset enumeration.
    GroupOrder(usize),
    /// Abelianized edge-path group `ℤ^free_rank ⊕ ⊕ ℤ/t`.
    Abelianization { free_rank: usize, torsion: Vec<u128> },
    /// Number of connected components of a disconnected subset.
    Components(usize),
    /// The search stopped after this many states or cosets.
    Exhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityVerdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
}

impl TrivialityVerdict {
    pub fn trivial(c: Certificate) -> Self {
        TrivialityVerdict { status: Status::ProvenTrivial, certificate: Some(c) }
    }

    pub fn nontrivial(c: Certificate) -> Self {
        TrivialityVerdict { status: Status::ProvenNontrivial, certificate: Some(c) }
    }

    pub fn inconclusive(c: Certificate) -> Self {
        TrivialityVerdict { status: Status::Inconclusive, certificate: Some(c) }
    }

    pub fn is_trivial(&self) -> bool {
        self.status == Status::ProvenTrivial
    }
}

/// Overall result of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl core::fmt::Display for Outcome {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Connected components of `subset` under `∼_t` for `t ∈ gens`, each
/// sorted, ordered by least chamber.
pub fn components(b: &Building, subset: &ChamberSet, gens: GenSet) -> Vec<Vec<usize>> {
    let mut seen = alloc::vec![false; b.num_chambers()];
    let mut out = Vec::new();
    for &start in subset.members() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = alloc::vec![start];
        let mut i = 0;
        while i < comp.len() {
            let c = comp[i];
            i += 1;
            for t in gens.iter() {
                for &d in b.panel_chambers(c, t) {
                    if subset.contains(d) && !seen[d] {
                        seen[d] = true;
                        comp.push(d);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Whether `(subset, (∼_t)_{t ∈ gens})` is connected. The empty set counts
/// as connected.
pub fn connected(b: &Building, subset: &ChamberSet, gens: GenSet) -> bool {
    components(b, subset, gens).len() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::codistance::Codistance;
    use alloc::sync::Arc;

    #[test]
    fn opposite_sets_connected_in_fano_not_in_quadrangle() {
        let b = catalog::pg2(2).unwrap();
        let all = GenSet::all(2);
        let whole = b.residue(0, all);
        assert!(connected(&b, &ChamberSet::from_iter(21, [3]), all));
        for c in b.chambers() {
            let opp = b.opposites_in(whole, c);
            assert_eq!(opp.len(), 8);
            assert!(connected(&b, &opp, all));
        }
        let sp = catalog::sp4(2).unwrap();
        let whole = sp.residue(0, all);
        for c in sp.chambers() {
            let opp = sp.opposites_in(whole, c);
            assert_eq!(opp.len(), 16);
            assert!(!connected(&sp, &opp, all));
        }
    }

    #[test]
    fn fop_of_fano_is_simply_connected() {
        let b = Arc::new(catalog::pg2(2).unwrap());
        let f = Codistance::from_opposite_chamber(b.clone(), 0);
        let v = simply_2_connected(&b, &f.fop(), &Limits::default()).unwrap();
        assert_eq!(v.status, Status::ProvenTrivial);
    }
}
