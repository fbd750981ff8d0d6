//! Finite chamber systems and the W-metric buildings they determine.
//!
//! A [`Building`] is given by its panels: for every generator `s` a partition
//! of the chamber set into `s`-panels. The Weyl distance `δ` is recovered
//! from type words of minimal galleries and checked against the building
//! axioms by [`Building::validate`].

mod residue;
mod set;
mod validate;

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::coxeter::{Gen, GenSet, WeylElt, WeylTable};

pub use residue::ResidueRef;
pub use set::ChamberSet;

/// Chamber index, `0..n`.
pub type Chamber = usize;

/// δ is precomputed for every pair up to this many chambers.
pub const DENSE_DELTA_MAX: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("a building needs at least one chamber")]
    Empty,
    #[error("expected panels for {expected} generators, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("chamber {chamber} is out of range for generator {gen}")]
    OutOfRange { gen: Gen, chamber: Chamber },
    #[error("chamber {chamber} lies in {count} panels of generator {gen}")]
    NotPartition { gen: Gen, chamber: Chamber, count: usize },
    #[error("panel {panel:?} of generator {gen} has fewer than two chambers")]
    SmallPanel { gen: Gen, panel: Vec<Chamber> },
    #[error("chamber system is disconnected: chamber {0} is unreachable from chamber 0")]
    Disconnected(Chamber),
    #[error("chamber {0} is not in the residue")]
    NotInResidue(Chamber),
}

/// A partition of the chambers into the residues of one type.
#[derive(Debug)]
pub(crate) struct Partition {
    of: Vec<u32>,
    members: Vec<Vec<Chamber>>,
}

/// A finite building of type `(W, S)`, represented by its chamber system.
pub struct Building {
    weyl: Arc<WeylTable>,
    n: usize,
    panels: Vec<Vec<Vec<Chamber>>>,
    panel_of: Vec<u32>,
    rows: Vec<OnceBox<Vec<WeylElt>>>,
    partitions: Vec<OnceBox<Partition>>,
}

impl core::fmt::Debug for Building {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Building")
            .field("rank", &self.rank())
            .field("chambers", &self.n)
            .finish_non_exhaustive()
    }
}

impl Building {
    /// Builds the chamber system from per-generator panel lists and
    /// precomputes δ. Panels are canonicalized (each sorted, then ordered by
    /// least chamber). The building axioms are not checked here; see
    /// [`Building::validate`].
    pub fn new(
        weyl: Arc<WeylTable>,
        n: usize,
        panels: Vec<Vec<Vec<Chamber>>>,
    ) -> Result<Self, BuildError> {
        let rank = weyl.rank();
        if n == 0 {
            return Err(BuildError::Empty);
        }
        if panels.len() != rank {
            return Err(BuildError::WrongRank { expected: rank, got: panels.len() });
        }
        let mut panel_of = vec![u32::MAX; n * rank];
        let mut canon = Vec::with_capacity(rank);
        for (s, gen_panels) in panels.into_iter().enumerate() {
            let mut gen_panels: Vec<Vec<Chamber>> = gen_panels
                .into_iter()
                .map(|mut p| {
                    p.sort_unstable();
                    p
                })
                .collect();
            gen_panels.sort();
            let mut count = vec![0usize; n];
            for p in &gen_panels {
                if p.len() < 2 {
                    return Err(BuildError::SmallPanel { gen: s, panel: p.clone() });
                }
                for &c in p {
                    if c >= n {
                        return Err(BuildError::OutOfRange { gen: s, chamber: c });
                    }
                    count[c] += 1;
                }
            }
            if let Some(c) = (0..n).find(|&c| count[c] != 1) {
                return Err(BuildError::NotPartition { gen: s, chamber: c, count: count[c] });
            }
            for (i, p) in gen_panels.iter().enumerate() {
                for &c in p {
                    panel_of[c * rank + s] = i as u32;
                }
            }
            canon.push(gen_panels);
        }
        let b = Building {
            weyl,
            n,
            panels: canon,
            panel_of,
            rows: (0..n).map(|_| OnceBox::new()).collect(),
            partitions: (0..1usize << rank).map(|_| OnceBox::new()).collect(),
        };
        let (_, dist) = b.bfs(0);
        if let Some(c) = dist.iter().position(|&d| d == u32::MAX) {
            return Err(BuildError::Disconnected(c));
        }
        if n <= DENSE_DELTA_MAX {
            for x in 0..n {
                b.delta_row(x);
            }
        }
        Ok(b)
    }

    pub fn weyl(&self) -> &WeylTable {
        &self.weyl
    }

    pub fn weyl_arc(&self) -> &Arc<WeylTable> {
        &self.weyl
    }

    pub fn rank(&self) -> usize {
        self.weyl.rank()
    }

    pub fn num_chambers(&self) -> usize {
        self.n
    }

    pub fn chambers(&self) -> core::ops::Range<Chamber> {
        0..self.n
    }

    /// All `s`-panels, each sorted, ordered by least chamber.
    pub fn panels(&self, s: Gen) -> &[Vec<Chamber>] {
        &self.panels[s]
    }

    #[inline]
    pub fn panel_index(&self, c: Chamber, s: Gen) -> usize {
        self.panel_of[c * self.rank() + s] as usize
    }

    /// The `s`-panel containing `c`.
    pub fn panel(&self, c: Chamber, s: Gen) -> ResidueRef {
        ResidueRef::new(GenSet::single(s), self.panel_index(c, s))
    }

    /// Chambers of the `s`-panel containing `c` (including `c`).
    pub fn panel_chambers(&self, c: Chamber, s: Gen) -> &[Chamber] {
        &self.panels[s][self.panel_index(c, s)]
    }

    /// `c ∼_s d` (reflexive).
    pub fn adjacent(&self, c: Chamber, d: Chamber, s: Gen) -> bool {
        self.panel_index(c, s) == self.panel_index(d, s)
    }

    /// All `(s, d)` with `d ≠ c` and `c ∼_s d`, by generator then chamber.
    pub fn neighbors(&self, c: Chamber) -> impl Iterator<Item = (Gen, Chamber)> + '_ {
        (0..self.rank()).flat_map(move |s| {
            self.panel_chambers(c, s).iter().filter(move |&&d| d != c).map(move |&d| (s, d))
        })
    }

    /// Every panel has at least three chambers.
    pub fn is_thick(&self) -> bool {
        self.panels.iter().all(|ps| ps.iter().all(|p| p.len() >= 3))
    }

    /// Breadth-first search from `x` visiting neighbors by generator then
    /// chamber id; returns the type-word products and gallery distances.
    fn bfs(&self, x: Chamber) -> (Vec<WeylElt>, Vec<u32>) {
        let mut delta = vec![WeylElt::IDENTITY; self.n];
        let mut dist = vec![u32::MAX; self.n];
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for (s, z) in self.neighbors(y) {
                if dist[z] == u32::MAX {
                    dist[z] = dist[y] + 1;
                    delta[z] = self.weyl.right(delta[y], s);
                    queue.push_back(z);
                }
            }
        }
        (delta, dist)
    }

    /// Gallery distances from `x` to every chamber.
    pub fn gallery_distances(&self, x: Chamber) -> Vec<u32> {
        self.bfs(x).1
    }

    /// `δ(x, y)` for all `y`.
    pub fn delta_row(&self, x: Chamber) -> &[WeylElt] {
        self.rows[x].get_or_init(|| Box::new(self.bfs(x).0))
    }

    /// The Weyl distance `δ(x, y)`: the product of the type word of a
    /// minimal gallery from `x` to `y`.
    #[inline]
    pub fn delta(&self, x: Chamber, y: Chamber) -> WeylElt {
        self.delta_row(x)[y]
    }

    /// Alias of [`Building::delta`].
    pub fn wdistance(&self, x: Chamber, y: Chamber) -> WeylElt {
        self.delta(x, y)
    }

    /// `l(δ(x, y))`.
    pub fn dist(&self, x: Chamber, y: Chamber) -> usize {
        self.weyl.length(self.delta(x, y))
    }

    /// A minimal gallery from `x` to `y`, choosing the smallest
    /// `(generator, chamber)` step at each point.
    pub fn minimal_gallery(&self, x: Chamber, y: Chamber) -> Vec<Chamber> {
        let mut out = vec![x];
        let mut cur = x;
        while cur != y {
            let d = self.dist(cur, y);
            let next = self
                .neighbors(cur)
                .map(|(_, z)| z)
                .find(|&z| self.dist(z, y) + 1 == d)
                .expect("distances decrease along some neighbor");
            out.push(next);
            cur = next;
        }
        out
    }
}
