//! Exhaustive checks of the statements about parallel panels, compatible
//! paths and the bijections `β`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{delta_panels, PanelBijection, PanelCalculus, PanelGraph};
use crate::chambersys::{Chamber, ResidueRef};
use crate::coxeter::{Gen, GenSet, WeylElt};
use crate::violation::{ensure, LemmaStats, Violation};

fn err(axiom: &'static str, chambers: Vec<Chamber>, e: impl core::fmt::Display) -> Violation {
    Violation::new(axiom, chambers, alloc::format!("{e}"))
}

impl PanelGraph<'_> {
    fn all_panels(&self) -> Vec<ResidueRef> {
        self.panels().collect()
    }

    /// Panels parallel to `P`, sorted.
    fn parallel_to(&self, p: ResidueRef) -> Vec<ResidueRef> {
        let b = self.building();
        self.panels().filter(|&q| b.are_parallel(p, q)).collect()
    }

    /// `P1 ∥ P2` iff `proj_{P2} P1 = P2`, for all pairs of panels.
    pub fn check_parallel_projection(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let ps = self.all_panels();
        for &p1 in &ps {
            for &p2 in &ps {
                let full = b.proj_set(p2, p1).len() == b.chambers_of(p2).len();
                ensure!(
                    full == b.are_parallel(p1, p2),
                    "parallel iff full projection",
                    vec![self.witness(p1), self.witness(p2)],
                    "{p1:?}, {p2:?}"
                );
            }
        }
        Ok(LemmaStats { name: "parallel iff full projection", instances: ps.len() * ps.len() })
    }

    /// For parallel panels `δ(x, proj_{P2} x)` does not depend on `x` and
    /// `s2 = w⁻¹ s1 w`; conversely `δ(x, y) = w`, `s2 = w⁻¹ s1 w` and
    /// `l(s1 w) = l(w) + 1` make the panels on `x` and `y` parallel.
    pub fn check_parallel_panels(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let w = b.weyl();
        let mut n = 0;
        for p1 in self.panels() {
            for p2 in self.parallel_to(p1) {
                let d = b.residue_distance(p1, p2);
                for &x in b.chambers_of(p1) {
                    ensure!(
                        b.delta(x, b.proj_chamber(p2, x)) == d,
                        "delta(P1, P2) independent of x",
                        vec![x],
                        "{p1:?}, {p2:?}"
                    );
                }
                let (s1, s2) = (p1.panel_type().unwrap(), p2.panel_type().unwrap());
                ensure!(w.conjugate_gen(d, s1) == Some(s2), "s2 = w^-1 s1 w", vec![self.witness(p1)], "{p1:?}, {p2:?}");
                n += 1;
            }
        }
        for x in b.chambers() {
            for y in b.chambers() {
                let d = b.delta(x, y);
                for s1 in 0..b.rank() {
                    if let Some(s2) = w.in_x_s(d, s1) {
                        ensure!(
                            b.are_parallel(b.panel(x, s1), b.panel(y, s2)),
                            "converse of parallel panels",
                            vec![x, y],
                            "s1 = {s1}"
                        );
                        n += 1;
                    }
                }
            }
        }
        Ok(LemmaStats { name: "parallel panels", instances: n })
    }

    /// Every `w ∈ X_s` is realised from every `s`-panel; `x_J = s r_J ∈ X_s`
    /// and `w ≺ x_J` for `w ∈ W_J ∩ X_s`.
    pub fn check_x_s(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let w = b.weyl();
        let mut n = 0;
        for s in 0..b.rank() {
            for x in w.x_s(s) {
                let t = w.in_x_s(x, s).unwrap();
                for chambers in b.panels(s) {
                    let c = chambers[0];
                    let p = b.panel(c, s);
                    let y = b.chambers().find(|&y| b.delta(c, y) == x);
                    ensure!(y.is_some(), "X_s realised", vec![c], "{}", w.format_word(x));
                    let q = b.panel(y.unwrap(), t);
                    ensure!(delta_panels(b, p, q) == Ok(x), "X_s realised", vec![c], "{}", w.format_word(x));
                    n += 1;
                }
            }
            for j in GenSet::all(b.rank()).subsets().filter(|j| j.contains(s)) {
                let x_j = w.mul(w.gen(s), w.longest_element(j));
                ensure!(w.in_x_s(x_j, s).is_some(), "x_J in X_s", vec![], "J = {j:?}");
                for v in w.parabolic_elements(j) {
                    if w.in_x_s(v, s).is_some() {
                        ensure!(w.prec(v, x_j), "w prec x_J", vec![], "{} in J = {j:?}", w.format_word(v));
                        n += 1;
                    }
                }
            }
        }
        Ok(LemmaStats { name: "X_s", instances: n })
    }

    /// For parallel `P, Q` and every residue `R ⊇ Q`, `proj_R P` is a panel
    /// parallel to both, and a compatible path to it followed by one inside
    /// `R` to `Q` is compatible.
    pub fn check_projected_panels(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let mut n = 0;
        for p in self.panels() {
            for q in self.parallel_to(p) {
                let t = q.panel_type().unwrap();
                let q0 = self.witness(q);
                for j in GenSet::all(b.rank()).subsets().filter(|j| j.contains(t)) {
                    let r = b.residue(q0, j);
                    let pp = b.proj_residue(r, p);
                    let at = vec![self.witness(p), q0];
                    ensure!(pp.ty.len() == 1, "proj_R P is a panel", at, "type {j:?}");
                    ensure!(b.are_parallel(pp, p) && b.are_parallel(pp, q), "proj_R P parallel", at, "type {j:?}");
                    let mut path = self.compatible_path(p, pp).map_err(|e| err("projected panels", at.clone(), e))?;
                    let tail = self.compatible_path(pp, q).map_err(|e| err("projected panels", at.clone(), e))?;
                    ensure!(
                        tail.iter().all(|&x| b.residue_contains(r, self.witness(x))),
                        "path inside R",
                        at,
                        "type {j:?}"
                    );
                    path.extend_from_slice(&tail[1..]);
                    ensure!(self.is_compatible_path(&path) == Ok(true), "concatenated path compatible", at, "type {j:?}");
                    n += 1;
                }
            }
        }
        Ok(LemmaStats { name: "projected panels", instances: n })
    }

    /// Panels are parallel iff a compatible path joins them: the descent
    /// path is compatible, and every compatible path ends at a parallel
    /// panel, every parallel panel being reached.
    pub fn check_compatible_reach(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let mut n = 0;
        for p in self.panels() {
            let parallel = self.parallel_to(p);
            for &q in &parallel {
                let path = self.compatible_path(p, q).map_err(|e| err("compatible paths reach parallels", vec![self.witness(p)], e))?;
                ensure!(
                    path.first() == Some(&p) && path.last() == Some(&q) && self.is_compatible_path(&path) == Ok(true),
                    "descent path compatible",
                    vec![self.witness(p), self.witness(q)],
                    "{path:?}"
                );
            }
            let mut ends: Vec<ResidueRef> = Vec::new();
            for path in self.compatible_paths_from(p, None).map_err(|e| err("compatible paths reach parallels", vec![], e))? {
                let q = *path.last().unwrap();
                ensure!(b.are_parallel(p, q), "compatible path ends parallel", vec![self.witness(p), self.witness(q)], "");
                ends.push(q);
                n += 1;
            }
            ends.sort_unstable();
            ends.dedup();
            ensure!(ends == parallel, "every parallel panel reached", vec![self.witness(p)], "{p:?}");
        }
        Ok(LemmaStats { name: "compatible paths reach parallels", instances: n })
    }

    /// All compatible paths between two panels have the same length.
    pub fn check_compatible_lengths(&self) -> Result<LemmaStats, Violation> {
        let mut n = 0;
        for p in self.panels() {
            let mut len: BTreeMap<ResidueRef, usize> = BTreeMap::new();
            for path in self.compatible_paths_from(p, None).map_err(|e| err("compatible path lengths", vec![], e))? {
                let q = *path.last().unwrap();
                let l = *len.entry(q).or_insert(path.len());
                ensure!(l == path.len(), "compatible paths of equal length", vec![self.witness(p), self.witness(q)], "");
                n += 1;
            }
        }
        Ok(LemmaStats { name: "compatible path lengths", instances: n })
    }

    /// Inside a rank 3 residue, more than one compatible path between two
    /// panels happens only for opposite panels, with exactly two paths of
    /// equal length; opposite parallel panels always have two.
    pub fn check_compatible_rank3(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let mut n = 0;
        for j in GenSet::all(b.rank()).subsets().filter(|j| j.len() == 3) {
            for r in b.residues(j) {
                let inside: Vec<ResidueRef> = j
                    .iter()
                    .flat_map(|s| {
                        let mut v: Vec<ResidueRef> = b.chambers_of(r).iter().map(|&x| b.panel(x, s)).collect();
                        v.dedup();
                        v.sort_unstable();
                        v.dedup();
                        v
                    })
                    .collect();
                for &p in &inside {
                    let mut by_end: BTreeMap<ResidueRef, Vec<usize>> = BTreeMap::new();
                    for path in self.compatible_paths_from(p, Some(r)).map_err(|e| err("compatible paths in rank 3", vec![], e))? {
                        by_end.entry(*path.last().unwrap()).or_default().push(path.len());
                    }
                    for &q in &inside {
                        let at = vec![self.witness(p), self.witness(q)];
                        let lens = by_end.get(&q).cloned().unwrap_or_default();
                        let parallel = b.are_parallel(p, q);
                        ensure!(parallel == !lens.is_empty(), "compatible path in R iff parallel", at.clone(), "");
                        let opposite = b.opposite_residues(r, p, q).unwrap();
                        if lens.len() > 1 {
                            ensure!(opposite, "several paths only between opposite panels", at.clone(), "{}", lens.len());
                        }
                        if opposite && parallel {
                            ensure!(lens.len() == 2, "exactly two paths", at.clone(), "{}", lens.len());
                            ensure!(lens[0] == lens[1], "two paths of equal length", at, "{lens:?}");
                        }
                        n += 1;
                    }
                }
            }
        }
        Ok(LemmaStats { name: "compatible paths in rank 3", instances: n })
    }

    /// `l_c(P, Q)` depends only on `δ(P, Q)`, over all pairs at each
    /// `w ∈ X_s`.
    pub fn check_compatible_by_distance(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let w = b.weyl();
        let mut n = 0;
        for s in 0..b.rank() {
            for x in w.x_s(s) {
                let t = w.in_x_s(x, s).unwrap();
                let mut seen = None;
                for chambers in b.panels(s) {
                    let c = chambers[0];
                    let p = b.panel(c, s);
                    for y in b.chambers().filter(|&y| b.delta(c, y) == x) {
                        let l = self.l_c(p, b.panel(y, t)).map_err(|e| err("l_c by distance", vec![c, y], e))?;
                        let l0 = *seen.get_or_insert(l);
                        ensure!(l == l0, "l_c depends only on w", vec![c, y], "{}: {l} vs {l0}", w.format_word(x));
                        n += 1;
                    }
                }
            }
        }
        Ok(LemmaStats { name: "l_c by distance", instances: n })
    }

    /// All building-level checks, in order.
    pub fn check_lemmas(&self) -> Result<Vec<LemmaStats>, Violation> {
        Ok(vec![
            self.check_parallel_projection()?,
            self.check_parallel_panels()?,
            self.check_x_s()?,
            self.check_projected_panels()?,
            self.check_compatible_reach()?,
            self.check_compatible_lengths()?,
            self.check_compatible_rank3()?,
            self.check_compatible_by_distance()?,
        ])
    }
}

type BetaTable = BTreeMap<(ResidueRef, ResidueRef), PanelBijection>;

impl PanelCalculus<'_> {
    fn beta_table(&self, s: Gen) -> Result<BetaTable, Violation> {
        let mut out = BTreeMap::new();
        for &p in self.p_op(s) {
            for (q, beta) in self.beta_from(p).map_err(|e| err("beta", vec![], e))? {
                out.insert((p, q), beta);
            }
        }
        Ok(out)
    }

    fn at(&self, ps: &[ResidueRef]) -> Vec<Chamber> {
        ps.iter().map(|&p| self.building().chambers_of(p)[0]).collect()
    }

    /// `π(P, w)` is the only `t`-panel at distance `w` from `P` satisfying
    /// the four equivalent conditions, and it satisfies them.
    pub fn check_pi(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let f = self.codistance();
        let w = b.weyl();
        let mut n = 0;
        for s in 0..b.rank() {
            for x in w.x_s(s) {
                let t = w.in_x_s(x, s).unwrap();
                let xt = w.right(x, t);
                for &p in self.p_op(s) {
                    let pi = self.pi(p, x).map_err(|e| err("pi", self.at(&[p]), e))?;
                    let c0 = b.chambers_of(p)[0];
                    let mut cands: Vec<ResidueRef> =
                        b.chambers().filter(|&y| b.delta(c0, y) == x).map(|y| b.panel(y, t)).collect();
                    cands.sort_unstable();
                    cands.dedup();
                    ensure!(cands.contains(&pi), "pi(P, w) at distance w", self.at(&[p, pi]), "");
                    for q in cands {
                        let at = self.at(&[p, q]);
                        ensure!(delta_panels(b, p, q) == Ok(x), "candidate at distance w", at.clone(), "");
                        let vals: Vec<WeylElt> = b.chambers_of(q).iter().map(|&y| f.value(y)).collect();
                        let a = vals.contains(&x);
                        let cb = vals.iter().all(|&v| v == x || v == xt) && vals.iter().filter(|&&v| v == xt).count() == 1;
                        let in_c: Vec<bool> = b.chambers_of(q).iter().map(|&y| self.p_op_c(s, y).contains(&p)).collect();
                        let cc = in_c.iter().all(|&v| v);
                        let cd = in_c.iter().any(|&v| v);
                        ensure!(a == cb && cb == cc && cc == cd, "conditions a-d equivalent", at.clone(), "{a} {cb} {cc} {cd}");
                        ensure!(a == (q == pi), "pi(P, w) unique", at, "");
                        n += 1;
                    }
                }
            }
        }
        Ok(LemmaStats { name: "pi", instances: n })
    }

    /// `π(reverse_π(Q)) = Q` whenever `wtw⁻¹ ∈ S` for the shortest value
    /// `w` of `f` on `Q`.
    pub fn check_reverse_pi(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let f = self.codistance();
        let w = b.weyl();
        let mut n = 0;
        for t in 0..b.rank() {
            for chambers in b.panels(t) {
                let q = b.panel(chambers[0], t);
                let short = chambers.iter().map(|&x| f.value(x)).min_by_key(|&v| w.length(v)).unwrap();
                let eligible = w.conjugate_gen(w.inv(short), t).is_some();
                match self.reverse_pi(q) {
                    Ok((p, x)) => {
                        ensure!(eligible && x == short, "reverse pi precondition", chambers.clone(), "");
                        ensure!(self.in_p_op(p) == Ok(true), "reverse pi in P^op_s(f)", chambers.clone(), "");
                        ensure!(self.pi(p, x) == Ok(q), "pi(reverse pi(Q)) = Q", chambers.clone(), "");
                        n += 1;
                    }
                    Err(_) => ensure!(!eligible, "reverse pi exists", chambers.clone(), ""),
                }
            }
        }
        Ok(LemmaStats { name: "reverse pi", instances: n })
    }

    /// a)–d) of the bijections `β`, and agreement of `β(P, Q)` with the
    /// composite along other galleries in `f^op` of at most `max_len`
    /// steps, up to `per_pair` galleries per pair.
    pub fn check_beta(&self, max_len: usize, per_pair: usize) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let mut n = 0;
        for s in 0..b.rank() {
            let ps = self.p_op(s);
            let table = self.beta_table(s)?;
            for &p in ps {
                ensure!(table[&(p, p)].is_identity(), "beta(P, P) = 1", self.at(&[p]), "");
                for &q in ps {
                    let at = self.at(&[p, q]);
                    let pq = &table[&(p, q)];
                    ensure!(pq.is_bijective(b), "beta is a bijection", at.clone(), "");
                    ensure!(pq.then(&table[&(q, p)]).is_identity(), "beta(Q, P) beta(P, Q) = 1", at.clone(), "");
                    ensure!(pq.apply(self.proj_f(p)) == Some(self.proj_f(q)), "beta maps proj f", at.clone(), "");
                    for &r in ps {
                        ensure!(pq.then(&table[&(q, r)]) == table[&(p, r)], "beta(Q, R) beta(P, Q) = beta(P, R)", self.at(&[p, q, r]), "");
                        n += 1;
                    }
                    let direct = self.beta(p, q).map_err(|e| err("beta", at.clone(), e))?;
                    ensure!(&direct == pq, "beta independent of gallery", at.clone(), "");
                    for g in self.galleries(p, q, max_len, per_pair) {
                        let along = self.beta_along(s, &g).map_err(|e| err("beta", g.clone(), e))?;
                        ensure!(&along == pq, "beta independent of gallery", g, "");
                        n += 1;
                    }
                }
            }
        }
        Ok(LemmaStats { name: "beta", instances: n })
    }

    /// Simple galleries in `f^op` from `P ∩ f^op` to `Q ∩ f^op`.
    fn galleries(&self, p: ResidueRef, q: ResidueRef, max_len: usize, cap: usize) -> Vec<Vec<Chamber>> {
        let b = self.building();
        let mut out = Vec::new();
        for &x in b.chambers_of(p) {
            if self.fop().contains(x) {
                let mut path = vec![x];
                self.dfs(&mut path, q, max_len, cap, &mut out);
            }
        }
        out
    }

    fn dfs(&self, path: &mut Vec<Chamber>, q: ResidueRef, max_len: usize, cap: usize, out: &mut Vec<Vec<Chamber>>) {
        let b = self.building();
        if out.len() >= cap {
            return;
        }
        let x = *path.last().unwrap();
        if b.residue_contains(q, x) {
            out.push(path.clone());
            return;
        }
        if path.len() > max_len {
            return;
        }
        for (_, y) in b.neighbors(x) {
            if self.fop().contains(y) && !path.contains(&y) {
                path.push(y);
                self.dfs(path, q, max_len, cap, out);
                path.pop();
            }
        }
    }

    /// `w1 ≺ w2` and `P ≡_{w1} Q` give `P ≡_{w2} Q` with the same bijection.
    pub fn check_beta_extension(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let w = b.weyl();
        let mut n = 0;
        for s in 0..b.rank() {
            let xs = w.x_s(s);
            let ps = self.p_op(s);
            for &w1 in &xs {
                for &w2 in xs.iter().filter(|&&w2| w.prec(w1, w2)) {
                    for &p in ps {
                        for &q in ps {
                            if self.equivalent(p, q, w1) != Ok(true) {
                                continue;
                            }
                            let at = self.at(&[p, q]);
                            ensure!(self.equivalent(p, q, w2) == Ok(true), "extension of equivalence", at.clone(), "");
                            ensure!(self.beta_w(p, q, w1) == self.beta_w(p, q, w2), "extension of beta", at, "");
                            n += 1;
                        }
                    }
                }
            }
        }
        Ok(LemmaStats { name: "extension of beta", instances: n })
    }

    /// `P ≡_w P'` gives `β(P, P') = β(P, P', w)`.
    pub fn check_beta_w(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let w = b.weyl();
        let mut n = 0;
        for s in 0..b.rank() {
            let table = self.beta_table(s)?;
            for x in w.x_s(s) {
                for &p in self.p_op(s) {
                    for &q in self.p_op(s) {
                        if self.equivalent(p, q, x) == Ok(true) {
                            ensure!(self.beta_w(p, q, x).as_ref() == Ok(&table[&(p, q)]), "beta = beta_w", self.at(&[p, q]), "{}", w.format_word(x));
                            n += 1;
                        }
                    }
                }
            }
        }
        Ok(LemmaStats { name: "beta_w", instances: n })
    }

    fn check_proj_identity(&self, name: &'static str, c: Chamber, s: Gen, table: &BetaTable) -> Result<usize, Violation> {
        let b = self.building();
        let ps = self.p_op_c(s, c);
        for &p in &ps {
            for &q in &ps {
                let image = table[&(p, q)].apply(b.proj_chamber(p, c));
                ensure!(image == Some(b.proj_chamber(q, c)), name, vec![c, self.at(&[p])[0], self.at(&[q])[0]], "s = {s}");
            }
        }
        Ok(ps.len() * ps.len())
    }

    /// `β(P, P')(proj_P c) = proj_{P'} c` for `c` in a rank 2 residue `R`
    /// with `l_f(R) ∈ X_s` and `l_f(R)⁻¹ s l_f(R) ∈ typ(R)`.
    pub fn check_rank2_projections(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let f = self.codistance();
        let w = b.weyl();
        let mut n = 0;
        for s in 0..b.rank() {
            let table = self.beta_table(s)?;
            for j in GenSet::all(b.rank()).subsets().filter(|j| j.len() == 2) {
                for r in b.residues(j) {
                    let chambers = b.chambers_of(r);
                    let w_j = w.min_coset_rep(f.value(chambers[0]), j);
                    if !w.in_x_s(w_j, s).is_some_and(|t| j.contains(t)) {
                        continue;
                    }
                    for &c in chambers {
                        n += self.check_proj_identity("projections in rank 2 residues", c, s, &table)?;
                    }
                }
            }
        }
        Ok(LemmaStats { name: "projections in rank 2 residues", instances: n })
    }

    /// `β(P, P')(proj_P c) = proj_{P'} c` for all `c` and `P, P' ∈ P^op_{s,c}(f)`.
    pub fn check_projections(&self) -> Result<LemmaStats, Violation> {
        let b = self.building();
        let mut n = 0;
        for s in 0..b.rank() {
            let table = self.beta_table(s)?;
            for c in b.chambers() {
                n += self.check_proj_identity("projections", c, s, &table)?;
            }
        }
        Ok(LemmaStats { name: "projections", instances: n })
    }

    /// Every codistance-level check, with gallery search up to 8 steps and
    /// 4 galleries per pair.
    pub fn check_lemmas(&self) -> Result<Vec<LemmaStats>, Violation> {
        Ok(vec![
            self.check_pi()?,
            self.check_reverse_pi()?,
            self.check_beta(8, 4)?,
            self.check_beta_extension()?,
            self.check_beta_w()?,
            self.check_rank2_projections()?,
            self.check_projections()?,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::codistance::Codistance;
    use crate::coxeter::CoxeterMatrix;
    use crate::homotopy::Limits;
    use alloc::sync::Arc;

    #[test]
    fn building_lemmas_on_small_fixtures() {
        for b in [
            catalog::pg2(2).unwrap(),
            catalog::digon(3, 3).unwrap(),
            catalog::thin(&CoxeterMatrix::from_type_name("A3").unwrap()).unwrap(),
            catalog::thin(&CoxeterMatrix::from_type_name("A1xA1xA1").unwrap()).unwrap(),
        ] {
            let g = PanelGraph::new(&b);
            let stats = g.check_lemmas().unwrap();
            assert_eq!(stats.len(), 8);
            assert!(stats.iter().all(|s| s.instances > 0 || s.name == "compatible paths in rank 3"));
        }
    }

    #[test]
    fn codistance_lemmas_on_fano_and_digon() {
        for b in [catalog::pg2(2).unwrap(), catalog::digon(3, 3).unwrap()] {
            let b = Arc::new(b);
            for c in [0, 5] {
                let f = Codistance::from_opposite_chamber(b.clone(), c);
                let calc = PanelCalculus::new(&f, &Limits::default());
                let stats = calc.check_lemmas().unwrap();
                assert!(stats.iter().all(|s| s.instances > 0), "{stats:?}");
            }
        }
    }
}
