use alloc::vec;
use alloc::vec::Vec;

use super::{GenSet, WeylElt, WeylTable, DEFAULT_CAP};
use crate::violation::{ensure, LemmaStats, Violation};

impl WeylTable {
    /// Exhaustive check of the basic length identities: lengths change by
    /// one under multiplication by a generator; `l(swt) = l(w) + 2` or
    /// `swt = w` when both are ascents; parabolic subgroups keep their
    /// length function; and the coset representatives `w_J`, `w^J = w_J r_J`
    /// and longest elements `r_J` behave as expected.
    pub fn check_identities(&self) -> Result<Vec<LemmaStats>, Violation> {
        let rank = self.rank();
        let gens: Vec<usize> = (0..rank).collect();
        let id = |w: WeylElt| vec![w.idx()];
        let mut a = 0;
        let mut b = 0;
        for w in self.elements() {
            let l = self.length(w);
            for &s in &gens {
                for v in [self.right(w, s), self.left(w, s)] {
                    ensure!(self.length(v) + 1 == l || self.length(v) == l + 1, "length step", id(w), "s = {s}");
                }
                a += 1;
                for &t in &gens {
                    if self.length(self.left(w, s)) == l + 1 && self.length(self.right(w, t)) == l + 1 {
                        let swt = self.right(self.left(w, s), t);
                        ensure!(self.length(swt) == l + 2 || swt == w, "two ascents", id(w), "s = {s}, t = {t}");
                        b += 1;
                    }
                }
            }
        }
        let (mut c, mut d, mut e, mut f) = (0, 0, 0, 0);
        for j in GenSet::all(rank).subsets() {
            let sub = super::WeylTable::enumerate(&self.matrix().restrict(j), DEFAULT_CAP)
                .map_err(|err| Violation::new("parabolic length", vec![], alloc::format!("{err}")))?;
            let js: Vec<usize> = j.iter().collect();
            let parabolic = self.parabolic_elements(j);
            ensure!(sub.size() == parabolic.len(), "parabolic length", vec![], "|W_J| for J = {j:?}");
            for u in sub.elements() {
                let word: Vec<usize> = sub.word(u).iter().map(|&i| js[i]).collect();
                let x = self.from_word(&word);
                ensure!(self.length(x) == sub.length(u), "parabolic length", id(x), "J = {j:?}");
                c += 1;
            }
            let r = self.longest_element(j);
            ensure!(self.mul(r, r) == WeylElt::IDENTITY, "longest element", id(r), "J = {j:?}: not an involution");
            ensure!(j.is_empty() == (r == WeylElt::IDENTITY), "longest element", id(r), "J = {j:?}");
            let lr = self.length(r);
            let mut witnesses = 0;
            for &x in &parabolic {
                ensure!(self.length(self.mul(r, x)) + self.length(x) == lr, "longest element", id(x), "J = {j:?}");
                if parabolic.iter().all(|&y| self.length(self.mul(x, y)) + self.length(y) == self.length(x)) {
                    witnesses += 1;
                }
                e += 1;
            }
            ensure!(witnesses == 1, "longest element", id(r), "J = {j:?}: {witnesses} candidates");
            for w in self.elements() {
                let wj = self.min_coset_rep(w, j);
                let wup = self.max_coset_rep(w, j);
                let coset: Vec<WeylElt> = parabolic.iter().map(|&x| self.mul(w, x)).collect();
                ensure!(coset.contains(&wj) && coset.contains(&wup), "coset representative", id(w), "J = {j:?}");
                let lo = |x: WeylElt| js.iter().all(|&t| self.length(self.right(x, t)) == self.length(x) + 1);
                let hi = |x: WeylElt| js.iter().all(|&t| self.length(self.right(x, t)) + 1 == self.length(x));
                ensure!(coset.iter().filter(|&&x| lo(x)).count() == 1 && lo(wj), "minimal representative", id(w), "J = {j:?}");
                ensure!(coset.iter().filter(|&&x| hi(x)).count() == 1 && hi(wup), "maximal representative", id(w), "J = {j:?}");
                ensure!(wup == self.mul(wj, r), "maximal representative", id(w), "w^J != w_J r_J for J = {j:?}");
                ensure!(self.length(wj) + lr == self.length(wup), "maximal representative", id(w), "J = {j:?}");
                for &x in &coset {
                    let (lx, lj, lu) = (self.length(x), self.length(wj), self.length(wup));
                    ensure!(lx == lj + self.length(self.mul(self.inv(wj), x)), "minimal representative", id(x), "J = {j:?}");
                    ensure!(lx + self.length(self.mul(self.inv(wup), x)) == lu, "maximal representative", id(x), "J = {j:?}");
                }
                d += 1;
                f += 1;
            }
        }
        Ok(vec![
            LemmaStats { name: "a", instances: a },
            LemmaStats { name: "b", instances: b },
            LemmaStats { name: "c", instances: c },
            LemmaStats { name: "d", instances: d },
            LemmaStats { name: "e", instances: e },
            LemmaStats { name: "f", instances: f },
        ])
    }
}
