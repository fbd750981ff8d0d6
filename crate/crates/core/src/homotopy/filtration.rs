use alloc::vec;
use alloc::vec::Vec;

use crate::chambersys::{Building, Chamber, ChamberSet};
use crate::codistance::Codistance;
use crate::coxeter::{Gen, GenSet};
use crate::violation::{ensure, Violation};

/// `C_n = { x : |f(x)| ≤ n }` with `|w|` the ShortLex index of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    level_of: Vec<usize>,
    levels: Vec<ChamberSet>,
    witnesses: Vec<Option<Gen>>,
}

impl Filtration {
    /// Levels `C_0, …, C_top`; `C_n = C_top` for larger `n`.
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, n: usize) -> &ChamberSet {
        &self.levels[n.min(self.levels.len() - 1)]
    }

    pub fn levels(&self) -> &[ChamberSet] {
        &self.levels
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(ChamberSet::len).collect()
    }

    /// `|x|`: the least `n` with `x ∈ C_n`.
    pub fn level_of(&self, x: Chamber) -> usize {
        self.level_of[x]
    }

    /// The generator `i` of (F3) for level `n`, when `C_{n-1}` is nonempty.
    pub fn witness(&self, n: usize) -> Option<Gen> {
        self.witnesses.get(n).copied().flatten()
    }
}

/// Builds the filtration of `f` and checks (F1)–(F3) on the whole chamber
/// set and on every residue, `aff(R) = A_f(R)` for every residue, and
/// `C_0 = f^op`.
pub fn residual_filtration(f: &Codistance) -> Result<Filtration, Violation> {
    let b = &**f.building();
    let n = b.num_chambers();
    let level_of: Vec<usize> = f.values().iter().map(|v| v.idx()).collect();
    let top = *level_of.iter().max().unwrap();
    let levels: Vec<ChamberSet> =
        (0..=top).map(|k| ChamberSet::from_mask(level_of.iter().map(|&l| l <= k).collect())).collect();

    for k in 1..levels.len() {
        ensure!(levels[k - 1].is_subset(&levels[k]), "F1", vec![], "level {k}");
    }
    ensure!(levels[top].len() == n, "F2", vec![], "top level has {} of {n} chambers", levels[top].len());

    let all: Vec<Chamber> = b.chambers().collect();
    let mut witnesses = vec![None; levels.len()];
    for k in 1..levels.len() {
        if levels[k - 1].is_empty() {
            continue;
        }
        let t = descent_generator(b, &level_of, &all, GenSet::all(b.rank()), k);
        ensure!(t.is_some(), "F3", levels[k].members().to_vec(), "no generator at level {k}");
        witnesses[k] = t;
    }
    let filt = Filtration { level_of, levels, witnesses };
    for k in 1..filt.num_levels() {
        if let Some(t) = filt.witness(k) {
            for x in filt.level(k).iter() {
                let ok = b.panel_chambers(x, t).iter().any(|&y| filt.level_of(y) < k);
                ensure!(ok, "F3 witness", vec![x], "generator {t} at level {k}");
            }
        }
    }

    ensure!(filt.level(0) == &f.fop(), "C_0 = f^op", vec![], "");

    for j in GenSet::all(b.rank()).subsets() {
        for r in b.residues(j) {
            let chambers = b.chambers_of(r);
            let min = chambers.iter().map(|&x| filt.level_of[x]).min().unwrap();
            let aff: Vec<Chamber> = chambers.iter().copied().filter(|&x| filt.level_of[x] == min).collect();
            let (_, a_f) = f.a_f(r);
            ensure!(aff == a_f, "aff(R) = A_f(R)", chambers.to_vec(), "type {:?}", j);
            if j.is_empty() {
                continue;
            }
            let mut present: Vec<usize> = chambers.iter().map(|&x| filt.level_of[x]).collect();
            present.sort_unstable();
            present.dedup();
            for &k in &present[1..] {
                ensure!(
                    descent_generator(b, &filt.level_of, chambers, j, k).is_some(),
                    "F3 on a residue",
                    chambers.to_vec(),
                    "type {:?}, level {k}",
                    j
                );
            }
        }
    }
    Ok(filt)
}

/// Some `t ∈ J` such that every chamber of `within` at level `k` has a
/// `t`-neighbour below level `k`.
fn descent_generator(b: &Building, level_of: &[usize], within: &[Chamber], j: GenSet, k: usize) -> Option<Gen> {
    j.iter().find(|&t| {
        within
            .iter()
            .filter(|&&x| level_of[x] == k)
            .all(|&x| b.panel_chambers(x, t).iter().any(|&y| level_of[y] < k))
    })
}
