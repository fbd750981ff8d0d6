use alloc::vec;
use alloc::vec::Vec;

use super::{delta_panels, panel_gen, PanelError};
use crate::chambersys::{Building, Chamber, ResidueRef};
use crate::coxeter::{Gen, GenSet, WeylElt};

/// The graph Γ on panels: `P`, `Q` are joined when they are opposite in a
/// rank 2 residue, which is then unique and denoted `R(P, Q)`.
#[derive(Debug, Clone)]
pub struct PanelGraph<'b> {
    b: &'b Building,
    offsets: Vec<usize>,
    /// Per node, `(Q, R(P, Q))` sorted by `Q`.
    edges: Vec<Vec<(ResidueRef, ResidueRef)>>,
}

impl<'b> PanelGraph<'b> {
    pub fn new(b: &'b Building) -> Self {
        let w = b.weyl();
        let mut offsets = vec![0];
        for s in 0..b.rank() {
            offsets.push(offsets[s] + b.panels(s).len());
        }
        let mut edges = Vec::with_capacity(offsets[b.rank()]);
        for s in 0..b.rank() {
            for chambers in b.panels(s) {
                let mut out = Vec::new();
                for t in (0..b.rank()).filter(|&t| t != s) {
                    let j = GenSet::pair(s, t);
                    let r = b.residue(chambers[0], j);
                    let rj = w.longest_element(j);
                    let u = w.opposition_gen(j, s);
                    for &x in chambers {
                        let row = b.delta_row(x);
                        for &y in b.chambers_of(r) {
                            if row[y] == rj {
                                out.push((b.panel(y, u), r));
                            }
                        }
                    }
                }
                out.sort_unstable();
                out.dedup();
                edges.push(out);
            }
        }
        PanelGraph { b, offsets, edges }
    }

    pub fn building(&self) -> &'b Building {
        self.b
    }

    pub fn num_panels(&self) -> usize {
        self.edges.len()
    }

    /// All panels, by type then index.
    pub fn panels(&self) -> impl Iterator<Item = ResidueRef> + '_ {
        (0..self.b.rank()).flat_map(move |s| {
            (0..self.b.panels(s).len()).map(move |i| ResidueRef::new(GenSet::single(s), i))
        })
    }

    fn node(&self, p: ResidueRef) -> Result<usize, PanelError> {
        let s = panel_gen(p)?;
        Ok(self.offsets[s] + p.index as usize)
    }

    /// Γ-neighbours of `P` with the residues `R(P, Q)`.
    pub fn neighbors(&self, p: ResidueRef) -> Result<&[(ResidueRef, ResidueRef)], PanelError> {
        Ok(&self.edges[self.node(p)?])
    }

    /// `R(P, Q)`, if `P` and `Q` are adjacent in Γ.
    pub fn residue_between(&self, p: ResidueRef, q: ResidueRef) -> Result<Option<ResidueRef>, PanelError> {
        panel_gen(q)?;
        let nb = self.neighbors(p)?;
        Ok(nb.binary_search_by_key(&q, |e| e.0).ok().map(|i| nb[i].1))
    }

    /// Whether `P_0, …, P_k` is a compatible path: no repetitions and
    /// `proj_{R(P_{i-1}, P_i)} P_0 = P_{i-1}` for every `i`.
    pub fn is_compatible_path(&self, path: &[ResidueRef]) -> Result<bool, PanelError> {
        for (i, p) in path.iter().enumerate() {
            if path[..i].contains(p) {
                return Ok(false);
            }
        }
        let Some(&p0) = path.first() else { return Ok(true) };
        for i in 1..path.len() {
            let r = self.residue_between(path[i - 1], path[i])?.ok_or(PanelError::NotAdjacent(i - 1, i))?;
            if self.b.proj_residue(r, p0) != path[i - 1] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A compatible path from `P` to `Q`, built backwards from `Q`: with `c`
    /// the least chamber of `P` and `d = proj_Q c`, step from `d` to the
    /// first neighbour `e` nearer `c`, and continue from `proj_R P` where
    /// `R` is the rank 2 residue containing `Q` and `e`.
    pub fn compatible_path(&self, p: ResidueRef, q: ResidueRef) -> Result<Vec<ResidueRef>, PanelError> {
        delta_panels(self.b, p, q)?;
        let b = self.b;
        let c = b.chambers_of(p)[0];
        let mut rev = vec![q];
        let mut cur = q;
        while cur != p {
            let t = panel_gen(cur)?;
            let d = b.proj_chamber(cur, c);
            let here = b.dist(c, d);
            let (u, _) = b.neighbors(d).find(|&(_, e)| b.dist(c, e) < here).expect("d is not c");
            let r = b.residue(d, GenSet::pair(t, u));
            let next = b.proj_residue(r, p);
            debug_assert_eq!(next.ty.len(), 1);
            rev.push(next);
            cur = next;
        }
        rev.reverse();
        Ok(rev)
    }

    /// `l_c(P, Q)`, the length of a compatible path.
    pub fn l_c(&self, p: ResidueRef, q: ResidueRef) -> Result<usize, PanelError> {
        Ok(self.compatible_path(p, q)?.len() - 1)
    }

    /// `l_c(w)` for `w ∈ X_s`, through a pair `P ∋ x`, `Q ∋ y` with
    /// `δ(x, y) = w`, `x` the least chamber admitting one.
    pub fn l_c_of_w(&self, w: WeylElt, s: Gen) -> Result<usize, PanelError> {
        let (p, q) = self.witness_pair(w, s)?;
        self.l_c(p, q)
    }

    /// An `s`-panel and a `w⁻¹sw`-panel at distance `w`.
    pub fn witness_pair(&self, w: WeylElt, s: Gen) -> Result<(ResidueRef, ResidueRef), PanelError> {
        let wt = self.b.weyl();
        let t = wt
            .in_x_s(w, s)
            .ok_or_else(|| PanelError::PreconditionFailed(alloc::format!("{} is not in X_s", wt.format_word(w))))?;
        for x in self.b.chambers() {
            if let Some(y) = self.b.chambers().find(|&y| self.b.delta(x, y) == w) {
                return Ok((self.b.panel(x, s), self.b.panel(y, t)));
            }
        }
        Err(PanelError::NoWitnessPair)
    }

    /// Every compatible path starting at `P`, the trivial one included,
    /// with all panels inside `within` when given.
    pub fn compatible_paths_from(&self, p: ResidueRef, within: Option<ResidueRef>) -> Result<Vec<Vec<ResidueRef>>, PanelError> {
        self.node(p)?;
        let mut out = Vec::new();
        let mut path = vec![p];
        self.extend_paths(&mut path, within, &mut out);
        Ok(out)
    }

    fn extend_paths(&self, path: &mut Vec<ResidueRef>, within: Option<ResidueRef>, out: &mut Vec<Vec<ResidueRef>>) {
        out.push(path.clone());
        let last = *path.last().unwrap();
        let p0 = path[0];
        for &(q, r) in &self.edges[self.node(last).unwrap()] {
            if path.contains(&q) {
                continue;
            }
            if let Some(big) = within {
                if !r.ty.is_subset(big.ty) || !self.b.residue_contains(big, self.b.chambers_of(r)[0]) {
                    continue;
                }
            }
            if self.b.proj_residue(r, p0) == last {
                path.push(q);
                self.extend_paths(path, within, out);
                path.pop();
            }
        }
    }

    /// Compatible paths from `P` to `Q`, optionally inside a residue.
    pub fn compatible_paths(
        &self,
        p: ResidueRef,
        q: ResidueRef,
        within: Option<ResidueRef>,
    ) -> Result<Vec<Vec<ResidueRef>>, PanelError> {
        let mut all = self.compatible_paths_from(p, within)?;
        all.retain(|path| path.last() == Some(&q));
        Ok(all)
    }

    /// A chamber of each panel, for diagnostics.
    pub(crate) fn witness(&self, p: ResidueRef) -> Chamber {
        self.b.chambers_of(p)[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coxeter::CoxeterMatrix;

    #[test]
    fn gamma_in_fano() {
        let b = catalog::pg2(2).unwrap();
        let g = PanelGraph::new(&b);
        assert_eq!(g.num_panels(), 14);
        let p = b.panel(0, 0);
        // A point is opposite the four lines not through it.
        assert_eq!(g.neighbors(p).unwrap().len(), 4);
        for &(q, r) in g.neighbors(p).unwrap() {
            assert_eq!(q.panel_type(), Some(1));
            assert_eq!(g.residue_between(q, p).unwrap(), Some(r));
            assert!(g.is_compatible_path(&[p, q]).unwrap());
            assert!(!g.is_compatible_path(&[p, q, p]).unwrap());
            assert_eq!(g.compatible_path(p, q).unwrap(), vec![p, q]);
            assert_eq!(g.l_c(p, q), Ok(1));
        }
        assert!(g.is_compatible_path(&[p]).unwrap());
        assert_eq!(g.compatible_path(p, p).unwrap(), vec![p]);
        assert_eq!(g.l_c_of_w(WeylElt::IDENTITY, 0), Ok(0));
        let w = b.weyl();
        let x_j = w.mul(w.gen(0), w.longest());
        assert_eq!(g.l_c_of_w(x_j, 0), Ok(1));
        let other = b.panel(b.panels(0)[1][0], 0);
        assert_eq!(g.is_compatible_path(&[p, other]), Err(PanelError::NotAdjacent(0, 1)));
    }

    #[test]
    fn thin_a3_paths() {
        let b = catalog::thin(&CoxeterMatrix::from_type_name("A3").unwrap()).unwrap();
        let g = PanelGraph::new(&b);
        for p in g.panels() {
            for path in g.compatible_paths_from(p, None).unwrap() {
                let q = *path.last().unwrap();
                assert!(b.are_parallel(p, q));
                assert_eq!(g.l_c(p, q), Ok(path.len() - 1));
            }
        }
    }
}
