use alloc::collections::VecDeque;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::atlas::alpha_core;
use super::{CodistanceAtlas, TwinError};
use crate::chambersys::{Building, Chamber};
use crate::coxeter::{GenSet, WeylElt};
use crate::violation::{ensure, Violation};

/// `B₋`, the building `B₊` on the atlas and the twinning
/// `δ*(g, c) = g(c)`, `δ*(c, g) = g(c)⁻¹`.
#[derive(Debug, Clone)]
pub struct TwinAssembly {
    minus: Arc<Building>,
    plus: Arc<Building>,
    /// `costar[g][c] = δ*(g, c)`.
    costar: Vec<Vec<WeylElt>>,
    origin: usize,
    seed: Vec<WeylElt>,
}

/// One verification step and how many instances it covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub outcome: Result<usize, Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinReport {
    pub minus_size: usize,
    pub plus_size: usize,
    pub seed_fop_size: usize,
    pub checks: Vec<CheckOutcome>,
}

pub const TWIN_AXIOMS: [&str; 3] = ["Tw1", "Tw2", "Tw3"];

impl TwinReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.is_ok())
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn twin_axioms(&self) -> bool {
        TWIN_AXIOMS.iter().all(|n| self.get(n).is_some_and(|c| c.outcome.is_ok()))
    }

    pub fn seed_match(&self) -> bool {
        self.get("seed").is_some_and(|c| c.outcome.is_ok())
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.checks.iter().find_map(|c| c.outcome.as_ref().err())
    }
}

impl TwinAssembly {
    /// Reassembles a twin from its parts, e.g. after reading it back.
    /// `costar[g]` must be a row of `B₋`-chamber values for member `g`.
    pub fn from_parts(
        minus: Arc<Building>,
        plus: Arc<Building>,
        costar: Vec<Vec<WeylElt>>,
        origin: usize,
        seed: Vec<WeylElt>,
    ) -> Result<Self, TwinError> {
        if !Arc::ptr_eq(minus.weyl_arc(), plus.weyl_arc()) && minus.weyl().matrix() != plus.weyl().matrix() {
            return Err(TwinError::BuildingMismatch);
        }
        if costar.len() != plus.num_chambers() || origin >= costar.len() {
            return Err(TwinError::PreconditionFailed("one codistance per chamber of B+ expected".to_string()));
        }
        if costar.iter().any(|row| row.len() != minus.num_chambers()) || seed.len() != minus.num_chambers() {
            return Err(TwinError::PreconditionFailed("codistance length differs from |B-|".to_string()));
        }
        Ok(TwinAssembly { minus, plus, costar, origin, seed })
    }

    pub fn minus(&self) -> &Arc<Building> {
        &self.minus
    }

    pub fn plus(&self) -> &Arc<Building> {
        &self.plus
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    /// `δ*(g, c)` for `g ∈ C₊`, `c ∈ C₋`.
    pub fn costar(&self, g: Chamber, c: Chamber) -> WeylElt {
        self.costar[g][c]
    }

    pub fn costar_rows(&self) -> &[Vec<WeylElt>] {
        &self.costar
    }

    /// Runs every check; each records its own outcome.
    pub fn verify(&self) -> TwinReport {
        let checks = vec![
            CheckOutcome { name: "Tw1", outcome: self.check_tw1() },
            CheckOutcome { name: "Tw2", outcome: self.check_tw2() },
            CheckOutcome { name: "Tw3", outcome: self.check_tw3() },
            CheckOutcome { name: "local opposition", outcome: self.check_local_opposition() },
            CheckOutcome { name: "+*", outcome: self.check_plus_star() },
            CheckOutcome { name: "gonality", outcome: check_gonality(&self.plus) },
            CheckOutcome { name: "alpha", outcome: self.check_alpha_full() },
            CheckOutcome { name: "seed", outcome: self.check_seed() },
        ];
        let seed_fop_size = self.seed.iter().filter(|&&v| v == WeylElt::IDENTITY).count();
        TwinReport { minus_size: self.minus.num_chambers(), plus_size: self.plus.num_chambers(), seed_fop_size, checks }
    }

    /// `δ*(y, x) = δ*(x, y)⁻¹` holds by construction; checks that every
    /// `δ*(g, ·)` is a codistance on `B₋`.
    fn check_tw1(&self) -> Result<usize, Violation> {
        let b = &*self.minus;
        let w = b.weyl();
        for (g, row) in self.costar.iter().enumerate() {
            for s in 0..b.rank() {
                for panel in b.panels(s) {
                    let top = panel.iter().map(|&x| w.length(row[x])).max().unwrap();
                    let longest: Vec<Chamber> = panel.iter().copied().filter(|&x| w.length(row[x]) == top).collect();
                    ensure!(longest.len() == 1, "Tw1", longest, "member {g}: no unique longest value");
                    let v = row[longest[0]];
                    let short = w.right(v, s);
                    ensure!(w.length(short) < top, "Tw1", longest, "member {g}: longest value not reduced by s = {s}");
                    ensure!(panel.iter().all(|&x| x == longest[0] || row[x] == short), "Tw1", panel.clone(), "member {g}");
                }
            }
        }
        Ok(self.costar.len() * b.num_chambers())
    }

    /// Both directions: `x ∈ C₊` against a panel of `B₋`, and `x ∈ C₋`
    /// against a panel of `B₊`.
    fn check_tw2(&self) -> Result<usize, Violation> {
        let (minus, plus) = (&*self.minus, &*self.plus);
        let w = minus.weyl();
        let mut n = 0;
        for g in plus.chambers() {
            for c in minus.chambers() {
                let v = self.costar[g][c];
                for s in 0..minus.rank() {
                    let vs = w.right(v, s);
                    if w.length(vs) < w.length(v) {
                        for &z in minus.panel_chambers(c, s).iter().filter(|&&z| z != c) {
                            ensure!(self.costar[g][z] == vs, "Tw2", vec![g, c, z], "+ to -, s = {s}");
                        }
                    }
                    // x = c, y = g, δ*(c, g) = v⁻¹.
                    let vi = w.inv(v);
                    let vis = w.right(vi, s);
                    if w.length(vis) < w.length(vi) {
                        for &z in plus.panel_chambers(g, s).iter().filter(|&&z| z != g) {
                            ensure!(w.inv(self.costar[z][c]) == vis, "Tw2", vec![c, g, z], "- to +, s = {s}");
                        }
                    }
                }
                n += 1;
            }
        }
        Ok(n)
    }

    fn check_tw3(&self) -> Result<usize, Violation> {
        let (minus, plus) = (&*self.minus, &*self.plus);
        let w = minus.weyl();
        let mut n = 0;
        for g in plus.chambers() {
            for c in minus.chambers() {
                let v = self.costar[g][c];
                let vi = w.inv(v);
                for s in 0..minus.rank() {
                    let vs = w.right(v, s);
                    ensure!(
                        minus.panel_chambers(c, s).iter().any(|&z| z != c && self.costar[g][z] == vs),
                        "Tw3",
                        vec![g, c],
                        "+ to -, s = {s}"
                    );
                    let vis = w.right(vi, s);
                    ensure!(
                        plus.panel_chambers(g, s).iter().any(|&z| z != g && w.inv(self.costar[z][c]) == vis),
                        "Tw3",
                        vec![c, g],
                        "- to +, s = {s}"
                    );
                }
                n += 1;
            }
        }
        Ok(n)
    }

    /// For every opposite pair `(g, c)` and `|J| ≤ 2`, the opposition
    /// relation restricted to the `J`-residues of `g` and `c` has the
    /// α-bijection form.
    fn check_local_opposition(&self) -> Result<usize, Violation> {
        let (minus, plus) = (&*self.minus, &*self.plus);
        let rank = minus.rank();
        let js: Vec<GenSet> = GenSet::all(rank).subsets().filter(|j| j.len() <= 2).collect();
        let mut n = 0;
        let mut done = alloc::collections::BTreeSet::new();
        for g in plus.chambers() {
            for c in minus.chambers().filter(|&c| self.costar[g][c] == WeylElt::IDENTITY) {
                for &j in &js {
                    let rp = plus.residue(g, j);
                    let rm = minus.residue(c, j);
                    if !done.insert((rp, rm)) {
                        continue;
                    }
                    let members = plus.chambers_of(rp);
                    let rows: Vec<&[WeylElt]> = members.iter().map(|&h| self.costar[h].as_slice()).collect();
                    let adjacent = |a: usize, b: usize, s| plus.adjacent(members[a], members[b], s);
                    n += alpha_core(minus, rm, &rows, adjacent)?;
                }
            }
        }
        Ok(n)
    }

    /// `δ_ε(x, y) = δ*(x, z)` forces `y` and `z` opposite, on both sides;
    /// distinct chambers have distinct opposite sets.
    fn check_plus_star(&self) -> Result<usize, Violation> {
        let (minus, plus) = (&*self.minus, &*self.plus);
        let w = minus.weyl();
        let mut n = 0;
        for x in plus.chambers() {
            for y in plus.chambers() {
                let d = plus.delta(x, y);
                for z in minus.chambers() {
                    if self.costar[x][z] == d {
                        ensure!(self.costar[y][z] == WeylElt::IDENTITY, "+*", vec![x, y, z], "x, y in C+");
                        n += 1;
                    }
                }
            }
        }
        for x in minus.chambers() {
            for y in minus.chambers() {
                let d = minus.delta(x, y);
                for z in plus.chambers() {
                    if w.inv(self.costar[z][x]) == d {
                        ensure!(self.costar[z][y] == WeylElt::IDENTITY, "+*", vec![x, y, z], "x, y in C-");
                        n += 1;
                    }
                }
            }
        }
        let mut ops: Vec<Vec<bool>> =
            self.costar.iter().map(|row| row.iter().map(|&v| v == WeylElt::IDENTITY).collect()).collect();
        ops.sort_unstable();
        ops.dedup();
        ensure!(ops.len() == plus.num_chambers(), "+*", vec![], "two members of C+ share an opposite set");
        let mut ops: Vec<Vec<bool>> = minus
            .chambers()
            .map(|c| self.costar.iter().map(|row| row[c] == WeylElt::IDENTITY).collect())
            .collect();
        ops.sort_unstable();
        ops.dedup();
        ensure!(ops.len() == minus.num_chambers(), "+*", vec![], "two chambers of C- share an opposite set");
        Ok(n)
    }

    /// `α: C₊ → C₋`, `g ↦ proj_{C₋} g`, is a bijection with
    /// `g ∼_s h ⇔ α(g) ∼_{r s r} α(h)`.
    fn check_alpha_full(&self) -> Result<usize, Violation> {
        let (minus, plus) = (&*self.minus, &*self.plus);
        let whole = minus.residue(0, GenSet::all(minus.rank()));
        let rows: Vec<&[WeylElt]> = self.costar.iter().map(|r| r.as_slice()).collect();
        alpha_core(minus, whole, &rows, |a, b, s| plus.adjacent(a, b, s))
    }

    /// `δ*(f, x) = f(x)` for the seed `f`.
    fn check_seed(&self) -> Result<usize, Violation> {
        let row = &self.costar[self.origin];
        for c in self.minus.chambers() {
            ensure!(row[c] == self.seed[c], "seed", vec![c], "member {}", self.origin);
        }
        Ok(row.len())
    }
}

/// Every rank 2 residue of type `{s, t}` is a generalized `m_st`-gon: its
/// incidence graph of `s`- and `t`-panels has girth `2m` and diameter `m`.
pub fn check_gonality(b: &Building) -> Result<usize, Violation> {
    let w = b.weyl();
    let rank = b.rank();
    let mut n = 0;
    for s in 0..rank {
        for t in s + 1..rank {
            let m = w.matrix().entry(s, t) as usize;
            for r in b.residues(GenSet::pair(s, t)) {
                let chambers = b.chambers_of(r);
                // Vertices: s-panels then t-panels, indexed locally.
                let mut ps: Vec<usize> = chambers.iter().map(|&x| b.panel_index(x, s)).collect();
                let mut ts: Vec<usize> = chambers.iter().map(|&x| b.panel_index(x, t)).collect();
                ps.sort_unstable();
                ps.dedup();
                ts.sort_unstable();
                ts.dedup();
                let nv = ps.len() + ts.len();
                let mut adj = vec![Vec::new(); nv];
                for &x in chambers {
                    let a = ps.binary_search(&b.panel_index(x, s)).unwrap();
                    let c = ps.len() + ts.binary_search(&b.panel_index(x, t)).unwrap();
                    adj[a].push(c);
                    adj[c].push(a);
                }
                let (girth, diameter) = girth_and_diameter(&adj);
                ensure!(
                    girth == 2 * m && diameter == m,
                    "generalized polygon",
                    vec![chambers[0]],
                    "type {{{s}, {t}}}: girth {girth}, diameter {diameter}, m = {m}"
                );
                n += 1;
            }
        }
    }
    Ok(n)
}

fn girth_and_diameter(adj: &[Vec<usize>]) -> (usize, usize) {
    let mut girth = usize::MAX;
    let mut diameter = 0;
    for root in 0..adj.len() {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![usize::MAX; adj.len()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    girth = girth.min(dist[x] + dist[y] + 1);
                }
            }
        }
        diameter = diameter.max(dist.iter().copied().max().unwrap_or(0));
    }
    (girth, diameter)
}

/// Builds `B₊` from the atlas, checks it is a building, and runs
/// [`TwinAssembly::verify`].
pub fn assemble_twin(atlas: &CodistanceAtlas) -> Result<(TwinAssembly, TwinReport), TwinError> {
    let plus = atlas.chamber_system()?;
    plus.validate().map_err(|v| TwinError::BuildingInvalid(v.to_string()))?;
    let costar = atlas.members().iter().map(|g| g.values().to_vec()).collect();
    let seed = atlas.members()[atlas.origin()].values().to_vec();
    let twin = TwinAssembly {
        minus: atlas.building().clone(),
        plus: Arc::new(plus),
        costar,
        origin: atlas.origin(),
        seed,
    };
    let report = twin.verify();
    Ok((twin, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::codistance::Codistance;
    use crate::homotopy::Limits;
    use crate::twinner::{atlas_component, DEFAULT_CAP};

    fn twin_of(b: Building, c: Chamber) -> (TwinAssembly, TwinReport) {
        let b = Arc::new(b);
        let f = Codistance::from_opposite_chamber(b, c);
        let atlas = atlas_component(&f, DEFAULT_CAP, &Limits::default()).unwrap();
        assemble_twin(&atlas).unwrap()
    }

    #[test]
    fn fano_twin() {
        let (twin, report) = twin_of(catalog::pg2(2).unwrap(), 0);
        assert!(report.passed(), "{:?}", report.first_violation());
        assert!(report.twin_axioms() && report.seed_match());
        assert_eq!(report.get("Tw2").unwrap().outcome, Ok(441));
        assert_eq!(report.seed_fop_size, 8);
        assert_eq!(report.get("gonality").unwrap().outcome, Ok(1));
        assert_eq!(twin.plus().num_chambers(), 21);
    }

    #[test]
    fn digon_twin() {
        let (_, report) = twin_of(catalog::digon(3, 3).unwrap(), 2);
        assert!(report.passed(), "{:?}", report.first_violation());
        assert_eq!(report.plus_size, 9);
    }

    #[test]
    fn tampered_twin_fails() {
        let (twin, _) = twin_of(catalog::pg2(2).unwrap(), 0);
        let mut costar = twin.costar_rows().to_vec();
        costar[1][0] = WeylElt::IDENTITY;
        costar[1][1] = WeylElt::IDENTITY;
        let seed = costar[0].clone();
        let bad = TwinAssembly::from_parts(twin.minus().clone(), twin.plus().clone(), costar, 0, seed).unwrap();
        let report = bad.verify();
        assert!(!report.twin_axioms());
        assert!(report.seed_match());
    }

    #[test]
    fn gonality_of_catalog() {
        assert_eq!(check_gonality(&catalog::pg2(2).unwrap()), Ok(1));
        assert_eq!(check_gonality(&catalog::digon(3, 3).unwrap()), Ok(1));
        assert_eq!(check_gonality(&catalog::pg3(2).unwrap()).map(|n| n > 0), Ok(true));
    }
}
