use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{BuildError, Building, Chamber, ChamberSet, Partition};
use crate::coxeter::{Gen, GenSet, WeylElt};

/// A residue of a building: its type `J` and its position among the
/// `J`-residues ordered by least chamber. Panels are the `|J| = 1` case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueRef {
    pub ty: GenSet,
    pub index: u32,
}

impl ResidueRef {
    pub fn new(ty: GenSet, index: usize) -> Self {
        ResidueRef { ty, index: index as u32 }
    }

    /// The generator of a panel.
    pub fn panel_type(self) -> Option<Gen> {
        (self.ty.len() == 1).then(|| self.ty.iter().next().unwrap())
    }
}

impl Building {
    pub(crate) fn partition(&self, j: GenSet) -> &Partition {
        self.partitions[j.0 as usize].get_or_init(|| Box::new(self.compute_partition(j)))
    }

    fn compute_partition(&self, j: GenSet) -> Partition {
        let mut of = vec![u32::MAX; self.n];
        let mut members = Vec::new();
        for start in 0..self.n {
            if of[start] != u32::MAX {
                continue;
            }
            let idx = members.len() as u32;
            let mut comp = vec![start];
            of[start] = idx;
            let mut queue = VecDeque::from([start]);
            while let Some(y) = queue.pop_front() {
                for s in j.iter() {
                    for &z in self.panel_chambers(y, s) {
                        if of[z] == u32::MAX {
                            of[z] = idx;
                            comp.push(z);
                            queue.push_back(z);
                        }
                    }
                }
            }
            comp.sort_unstable();
            members.push(comp);
        }
        Partition { of, members }
    }

    /// The `J`-residue containing `c`.
    pub fn residue(&self, c: Chamber, j: GenSet) -> ResidueRef {
        if j.len() == 1 {
            return self.panel(c, j.iter().next().unwrap());
        }
        ResidueRef::new(j, self.partition(j).of[c] as usize)
    }

    /// All `J`-residues, ordered by least chamber.
    pub fn residues(&self, j: GenSet) -> impl Iterator<Item = ResidueRef> {
        let count = match j.len() {
            1 => self.panels(j.iter().next().unwrap()).len(),
            _ => self.partition(j).members.len(),
        };
        (0..count).map(move |i| ResidueRef::new(j, i))
    }

    /// The sorted chamber list of `r`.
    pub fn chambers_of(&self, r: ResidueRef) -> &[Chamber] {
        match r.panel_type() {
            Some(s) => &self.panels(s)[r.index as usize],
            None => &self.partition(r.ty).members[r.index as usize],
        }
    }

    pub fn residue_contains(&self, r: ResidueRef, c: Chamber) -> bool {
        self.residue(c, r.ty) == r
    }

    /// `proj_R c`: the unique chamber of `R` nearest `c`, found by walking
    /// down through the panels of `R`.
    pub fn proj_chamber(&self, r: ResidueRef, c: Chamber) -> Chamber {
        let w = self.weyl();
        let row = self.delta_row(c);
        let mut cur = self.chambers_of(r)[0];
        'walk: loop {
            let here = w.length(row[cur]);
            for s in r.ty.iter() {
                for &d in self.panel_chambers(cur, s) {
                    if w.length(row[d]) < here {
                        cur = d;
                        continue 'walk;
                    }
                }
            }
            return cur;
        }
    }

    /// `proj_R Q = { proj_R x : x ∈ Q }`, which is again a residue.
    pub fn proj_residue(&self, r: ResidueRef, q: ResidueRef) -> ResidueRef {
        let image = self.proj_set(r, q);
        let x0 = image.members()[0];
        let ty = GenSet::from_gens(
            r.ty.iter()
                .filter(|&s| self.panel_chambers(x0, s).iter().filter(|&&d| image.contains(d)).count() > 1),
        );
        self.residue(x0, ty)
    }

    /// The chamber set `{ proj_R x : x ∈ Q }`.
    pub fn proj_set(&self, r: ResidueRef, q: ResidueRef) -> ChamberSet {
        ChamberSet::from_iter(self.n, self.chambers_of(q).iter().map(|&x| self.proj_chamber(r, x)))
    }

    /// Whether the projections between `R1` and `R2` are mutually inverse
    /// adjacency-preserving bijections.
    pub fn are_parallel(&self, r1: ResidueRef, r2: ResidueRef) -> bool {
        self.projection_is_isomorphism(r1, r2) && self.projection_is_isomorphism(r2, r1)
    }

    fn projection_is_isomorphism(&self, from: ResidueRef, to: ResidueRef) -> bool {
        let xs = self.chambers_of(from);
        let images: Vec<Chamber> = xs.iter().map(|&x| self.proj_chamber(to, x)).collect();
        if xs.iter().zip(&images).any(|(&x, &y)| self.proj_chamber(from, y) != x) {
            return false;
        }
        for (i, &x) in xs.iter().enumerate() {
            for (k, &x2) in xs.iter().enumerate().skip(i + 1) {
                let adj = from.ty.iter().any(|s| self.adjacent(x, x2, s));
                if adj && !(0..self.rank()).any(|s| self.adjacent(images[i], images[k], s)) {
                    return false;
                }
            }
        }
        true
    }

    /// `δ(x, y) = r_J` inside the spherical residue `R` of type `J`.
    pub fn opposite_chambers(
        &self,
        r: ResidueRef,
        x: Chamber,
        y: Chamber,
    ) -> Result<bool, BuildError> {
        for c in [x, y] {
            if !self.residue_contains(r, c) {
                return Err(BuildError::NotInResidue(c));
            }
        }
        Ok(self.delta(x, y) == self.weyl().longest_element(r.ty))
    }

    /// Residues `R1, R2 ⊆ R` are opposite in `R` when some chambers of them
    /// are opposite in `R` and their types satisfy `K1 = r_J K2 r_J`.
    pub fn opposite_residues(
        &self,
        r: ResidueRef,
        r1: ResidueRef,
        r2: ResidueRef,
    ) -> Result<bool, BuildError> {
        for q in [r1, r2] {
            if let Some(&c) = self.chambers_of(q).iter().find(|&&c| !self.residue_contains(r, c)) {
                return Err(BuildError::NotInResidue(c));
            }
        }
        let w = self.weyl();
        let rj = w.longest_element(r.ty);
        let conj = GenSet::from_gens(r2.ty.iter().map(|t| w.opposition_gen(r.ty, t)));
        if conj != r1.ty {
            return Ok(false);
        }
        Ok(self
            .chambers_of(r1)
            .iter()
            .any(|&x| self.chambers_of(r2).iter().any(|&y| self.delta(x, y) == rj)))
    }

    /// Chambers of `R` opposite `x` in `R`.
    pub fn opposites_in(&self, r: ResidueRef, x: Chamber) -> ChamberSet {
        let rj = self.weyl().longest_element(r.ty);
        let row = self.delta_row(x);
        ChamberSet::from_iter(self.n, self.chambers_of(r).iter().copied().filter(|&y| row[y] == rj))
    }

    /// `δ(P, Q) = δ(x, proj_Q x)` for any `x ∈ P`, when `P, Q` are parallel.
    pub fn residue_distance(&self, p: ResidueRef, q: ResidueRef) -> WeylElt {
        let x = self.chambers_of(p)[0];
        self.delta(x, self.proj_chamber(q, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn residues_of_fano_flags() {
        let b = catalog::pg2(2).unwrap();
        let (p, l) = (0, 1);
        assert_eq!(b.chambers_of(b.residue(5, GenSet::EMPTY)), &[5]);
        assert_eq!(b.chambers_of(b.residue(5, GenSet::all(2))).len(), 21);
        assert_eq!(b.chambers_of(b.panel(5, p)).len(), 3);
        assert_eq!(b.residues(GenSet::single(l)).count(), 7);
        for r in b.residues(GenSet::single(p)) {
            for &c in b.chambers_of(r) {
                assert!(b.residue_contains(r, c));
            }
        }
    }

    #[test]
    fn projection_matches_argmin() {
        let b = catalog::pg2(2).unwrap();
        let w = b.weyl();
        for s in 0..2 {
            for r in b.residues(GenSet::single(s)) {
                for c in b.chambers() {
                    let oracle = *b
                        .chambers_of(r)
                        .iter()
                        .min_by_key(|&&y| w.length(b.delta(c, y)))
                        .unwrap();
                    let x = b.proj_chamber(r, c);
                    assert_eq!(x, oracle);
                    for &y in b.chambers_of(r) {
                        assert_eq!(b.delta(c, y), w.mul(b.delta(c, x), b.delta(x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_and_opposite_panels() {
        let b = catalog::pg2(2).unwrap();
        let w = b.weyl();
        let all = b.residue(0, GenSet::all(2));
        let p0 = b.panel(0, 0);
        assert!(b.are_parallel(p0, p0));
        // Two distinct point-panels through chamber 0's line neighbour share a chamber.
        let d = b.panel_chambers(0, 1)[1];
        let q = b.panel(d, 0);
        assert_ne!(q, p0);
        assert!(!b.are_parallel(p0, q));
        // A line-panel at maximal distance is opposite and parallel.
        let far = b.chambers().find(|&y| b.delta(0, y) == w.longest()).unwrap();
        let t = b.panel(far, 1);
        assert!(b.opposite_residues(all, p0, t).unwrap());
        assert!(b.are_parallel(p0, t));
        assert_eq!(b.proj_residue(p0, t), p0);
        assert_eq!(b.proj_residue(t, p0), t);
        // Same-type panels cannot be opposite in an A2 residue.
        let u = b.panel(far, 0);
        assert!(!b.opposite_residues(all, p0, u).unwrap());
        assert_eq!(b.opposites_in(all, 0).len(), 8);
    }
}
