//! Exhaustive checks of the structural lemmas on codistances.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::Codistance;
use crate::chambersys::Chamber;
use crate::coxeter::GenSet;
use crate::violation::{ensure, LemmaStats, Violation};

impl Codistance {
    /// The gallery distance from every chamber `c` to `f^op` is `l(f(c))`.
    pub fn check_gallery_distance(&self) -> Result<LemmaStats, Violation> {
        let b = &**self.building();
        let fop = self.fop();
        for c in b.chambers() {
            let d = fop.iter().map(|x| b.dist(c, x)).min();
            ensure!(
                d == Some(self.len_at(c)),
                "gallery distance to f^op",
                vec![c],
                "distance {:?}, l(f(c)) = {}",
                d,
                self.len_at(c)
            );
        }
        Ok(LemmaStats { name: "gallery distance to f^op", instances: b.num_chambers() })
    }

    /// For `x ∈ f^op` and every chamber `c`: `x ∈ f^op_c` iff every minimal
    /// gallery `x = x_0, …, x_n = c` has `l(f(x_i)) = i`, iff some does.
    pub fn check_fop_c(&self) -> Result<LemmaStats, Violation> {
        let b = &**self.building();
        let mut count = 0;
        for x in self.fop().iter() {
            for c in b.chambers() {
                let a = self.fop_c(c).contains(x);
                let (all, any) = self.gallery_flags(x, c);
                ensure!(
                    a == all && all == any,
                    "f^op_c gallery characterization",
                    vec![x, c],
                    "in f^op_c: {a}, all galleries: {all}, some gallery: {any}"
                );
                count += 1;
            }
        }
        Ok(LemmaStats { name: "f^op_c galleries", instances: count })
    }

    /// Over minimal galleries from `cur` to `c` continuing a prefix that
    /// already satisfies `l(f(x_i)) = i`: whether all of them keep it, and
    /// whether some does.
    fn gallery_flags(&self, cur: Chamber, c: Chamber) -> (bool, bool) {
        let b = &**self.building();
        if cur == c {
            return (true, true);
        }
        let d = b.dist(cur, c);
        let here = self.len_at(cur);
        let (mut all, mut any) = (true, false);
        for (_, z) in b.neighbors(cur) {
            if b.dist(z, c) + 1 != d {
                continue;
            }
            if self.len_at(z) != here + 1 {
                all = false;
                continue;
            }
            let (a, s) = self.gallery_flags(z, c);
            all &= a;
            any |= s;
        }
        (all, any)
    }

    /// For every `x` and every `w` with `l(f(x)w) = l(f(x)) + l(w)` there is
    /// exactly one chamber `c` with `f(c) = f(x)w` and `δ(x, c) = w`, and
    /// the panel walk finds it.
    pub fn check_unique_chamber(&self) -> Result<LemmaStats, Violation> {
        let b = &**self.building();
        let w = b.weyl();
        let mut count = 0;
        for x in b.chambers() {
            let fx = self.value(x);
            let row = b.delta_row(x);
            for u in w.elements() {
                let target = w.mul(fx, u);
                if w.length(target) != w.length(fx) + w.length(u) {
                    continue;
                }
                let hits: Vec<Chamber> =
                    b.chambers().filter(|&y| row[y] == u && self.value(y) == target).collect();
                ensure!(hits.len() == 1, "unique chamber", hits.clone(), "{} candidates", hits.len());
                let walked = self.unique_chamber(x, u).ok();
                ensure!(walked == Some(hits[0]), "unique chamber", vec![x, hits[0]], "walk gave {:?}", walked);
                count += 1;
            }
        }
        Ok(LemmaStats { name: "unique chamber", instances: count })
    }

    /// For every residue `R`, `c ∈ R` and `x ∈ f^op_c`: `proj_R x ∈ A_f(R)`
    /// and `l(δ(x, proj_R x)) = l_f(R)`.
    pub fn check_proj_af(&self) -> Result<LemmaStats, Violation> {
        let b = &**self.building();
        let mut count = 0;
        for j in GenSet::all(b.rank()).subsets() {
            for r in b.residues(j) {
                let (l_f, a_f) = self.a_f(r);
                let mut seen = BTreeMap::new();
                for &c in b.chambers_of(r) {
                    for x in self.fop_c(c).iter() {
                        if seen.insert(x, ()).is_some() {
                            continue;
                        }
                        let p = b.proj_chamber(r, x);
                        ensure!(a_f.contains(&p), "proj_R x in A_f(R)", vec![x, p], "");
                        ensure!(b.dist(x, p) == l_f, "l(delta(x, proj_R x)) = l_f(R)", vec![x, p], "");
                        count += 1;
                    }
                }
            }
        }
        Ok(LemmaStats { name: "projection into A_f(R)", instances: count })
    }

    /// [`Codistance::residue_profile`] on every residue of every type.
    pub fn check_residue_profiles(&self) -> Result<LemmaStats, Violation> {
        let b = &**self.building();
        let mut count = 0;
        for j in GenSet::all(b.rank()).subsets() {
            for r in b.residues(j) {
                self.residue_profile(r)?;
                count += 1;
            }
        }
        Ok(LemmaStats { name: "residue profiles", instances: count })
    }

    /// Every lemma check above, in order; stops at the first failure.
    pub fn check_lemmas(&self) -> Result<Vec<LemmaStats>, Violation> {
        Ok(vec![
            self.check_gallery_distance()?,
            self.check_fop_c()?,
            self.check_unique_chamber()?,
            self.check_proj_af()?,
            self.check_residue_profiles()?,
        ])
    }
}

/// Codistances on one building with the same `f^op` agree everywhere.
pub fn check_fop_determines(fs: &[Codistance]) -> Result<LemmaStats, Violation> {
    let mut by_fop: BTreeMap<Vec<Chamber>, &Codistance> = BTreeMap::new();
    for f in fs {
        let key = f.fop().members().to_vec();
        if let Some(g) = by_fop.get(&key) {
            let diff: Vec<Chamber> = (0..f.values().len()).filter(|&c| f.value(c) != g.value(c)).collect();
            ensure!(diff.is_empty(), "f^op determines f", diff, "equal f^op, different values");
        } else {
            by_fop.insert(key, f);
        }
    }
    Ok(LemmaStats { name: "f^op determines f", instances: fs.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use alloc::sync::Arc;

    #[test]
    fn lemmas_hold_on_fano() {
        let b = Arc::new(catalog::pg2(2).unwrap());
        for c in [0, 11] {
            let f = Codistance::from_opposite_chamber(b.clone(), c);
            let stats = f.check_lemmas().unwrap();
            assert_eq!(stats[0].instances, 21);
            assert_eq!(stats[1].instances, 8 * 21);
        }
    }

    #[test]
    fn fop_determines_all_opposite_codistances() {
        let b = Arc::new(catalog::digon(3, 3).unwrap());
        let fs: Vec<Codistance> = b.chambers().map(|c| Codistance::from_opposite_chamber(b.clone(), c)).collect();
        check_fop_determines(&fs).unwrap();
        let f = &fs[0];
        let y = b.chambers().find(|&y| f.len_at(y) == 1).unwrap();
        let mut vals = f.values().to_vec();
        vals[y] = b.weyl().longest();
        let g = Codistance::new(b.clone(), vals).unwrap();
        assert_eq!(g.fop(), f.fop());
        assert!(check_fop_determines(&[f.clone(), g]).is_err());
    }
}
