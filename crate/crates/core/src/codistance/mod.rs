//! Codistances: maps `f: C → W` whose restriction to every `s`-panel takes
//! values in `{w, ws}` with exactly one chamber attaining the longer one.

mod lemmas;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::hash::{Hash, Hasher};

use crate::chambersys::{Building, Chamber, ChamberSet, ResidueRef};
use crate::coxeter::{Gen, WeylElt, WeylTable};
use crate::violation::{ensure, Violation};

pub use crate::violation::LemmaStats;
pub use lemmas::check_fop_determines;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodistanceError {
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("element id {0} is outside the Weyl group")]
    BadElement(u32),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// A `W`-valued function on the chambers of a building.
#[derive(Debug, Clone)]
pub struct Codistance {
    building: Arc<Building>,
    values: Vec<WeylElt>,
}

impl PartialEq for Codistance {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.building, &other.building) && self.values == other.values
    }
}

impl Eq for Codistance {}

impl Hash for Codistance {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

/// What a codistance looks like on one residue `R` of type `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueProfile {
    /// `f(R)`, sorted; equals the coset `f(x)W_J`.
    pub image: Vec<WeylElt>,
    /// `l_f(R)`, the least length of a value on `R`.
    pub l_f: usize,
    /// The common value on `A_f(R)`, i.e. the shortest element of the coset.
    pub min_value: WeylElt,
    /// `A_f(R)`: chambers attaining `l_f(R)`.
    pub a_f: Vec<Chamber>,
    /// `proj_R f`: the unique chamber of maximal value length.
    pub proj_f: Option<Chamber>,
}

impl Codistance {
    /// Wraps a value array; call [`Codistance::validate`] to check the
    /// panel axiom.
    pub fn new(building: Arc<Building>, values: Vec<WeylElt>) -> Result<Self, CodistanceError> {
        if values.len() != building.num_chambers() {
            return Err(CodistanceError::WrongLength {
                expected: building.num_chambers(),
                got: values.len(),
            });
        }
        let size = building.weyl().size();
        if let Some(v) = values.iter().find(|v| v.idx() >= size) {
            return Err(CodistanceError::BadElement(v.0));
        }
        Ok(Codistance { building, values })
    }

    /// `f(x) = r_S·δ(c, x)`: the codistance induced by the chamber `c`
    /// through the self-twinning of a spherical building.
    pub fn from_opposite_chamber(building: Arc<Building>, c: Chamber) -> Self {
        let w = building.weyl();
        let r = w.longest();
        let values = building.delta_row(c).iter().map(|&d| w.mul(r, d)).collect();
        Codistance { building, values }
    }

    pub fn building(&self) -> &Arc<Building> {
        &self.building
    }

    pub fn weyl(&self) -> &WeylTable {
        self.building.weyl()
    }

    pub fn values(&self) -> &[WeylElt] {
        &self.values
    }

    #[inline]
    pub fn value(&self, c: Chamber) -> WeylElt {
        self.values[c]
    }

    #[inline]
    pub fn len_at(&self, c: Chamber) -> usize {
        self.weyl().length(self.values[c])
    }

    /// Checks the panel axiom on every panel.
    pub fn validate(&self) -> Result<(), Violation> {
        let b = &*self.building;
        let w = b.weyl();
        for s in 0..b.rank() {
            for p in b.panels(s) {
                let v0 = self.values[p[0]];
                let v0s = w.right(v0, s);
                let (short, long) = if w.length(v0) < w.length(v0s) { (v0, v0s) } else { (v0s, v0) };
                let mut longs = 0;
                for &x in p {
                    let v = self.values[x];
                    ensure!(
                        v == short || v == long,
                        "codistance panel axiom",
                        p.clone(),
                        "value {} outside {{w, ws}} for generator {}",
                        w.format_word(v),
                        w.matrix().gens()[s]
                    );
                    longs += (v == long) as usize;
                }
                ensure!(
                    longs == 1,
                    "codistance panel axiom",
                    p.clone(),
                    "{} chambers carry the longer value {}",
                    longs,
                    w.format_word(long)
                );
            }
        }
        Ok(())
    }

    /// `f^op = { x : f(x) = 1_W }`.
    pub fn fop(&self) -> ChamberSet {
        ChamberSet::from_mask(self.values.iter().map(|&v| v == WeylElt::IDENTITY).collect())
    }

    /// `f^op_c = { x ∈ f^op : δ(x, c) = f(c) }`.
    pub fn fop_c(&self, c: Chamber) -> ChamberSet {
        let b = &*self.building;
        let fc = self.values[c];
        ChamberSet::from_iter(
            b.num_chambers(),
            b.chambers().filter(|&x| self.values[x] == WeylElt::IDENTITY && b.delta(x, c) == fc),
        )
    }

    /// `proj_P f` for the `s`-panel `P` of `c`: its chamber of longest value.
    pub fn proj_panel(&self, c: Chamber, s: Gen) -> Chamber {
        let w = self.weyl();
        *self
            .building
            .panel_chambers(c, s)
            .iter()
            .max_by_key(|&&x| w.length(self.values[x]))
            .unwrap()
    }

    /// `l_f(R)` and `A_f(R)`.
    pub fn a_f(&self, r: ResidueRef) -> (usize, Vec<Chamber>) {
        let chambers = self.building.chambers_of(r);
        let l = chambers.iter().map(|&x| self.len_at(x)).min().unwrap();
        (l, chambers.iter().copied().filter(|&x| self.len_at(x) == l).collect())
    }

    /// `proj_R f`: the unique chamber of `R` of maximal value length.
    pub fn proj_residue(&self, r: ResidueRef) -> Chamber {
        let chambers = self.building.chambers_of(r);
        *chambers.iter().max_by_key(|&&x| (self.len_at(x), core::cmp::Reverse(x))).unwrap()
    }

    /// Image, `l_f`, `A_f` and `proj_R f` for a residue, after verifying
    /// that the image is a full coset `f(x)W_J`, that `A_f(R)` carries the
    /// shortest coset element, that `f(y) = f(proj_R f)·δ(proj_R f, y)`
    /// throughout `R`, and that `A_f(R)` is the set of chambers opposite
    /// `proj_R f` in `R`.
    pub fn residue_profile(&self, r: ResidueRef) -> Result<ResidueProfile, Violation> {
        let b = &*self.building;
        let w = b.weyl();
        let chambers = b.chambers_of(r);
        let x0 = chambers[0];
        let mut image: Vec<WeylElt> = chambers.iter().map(|&x| self.values[x]).collect();
        image.sort_unstable();
        image.dedup();
        let mut coset: Vec<WeylElt> =
            w.parabolic_elements(r.ty).iter().map(|&u| w.mul(self.values[x0], u)).collect();
        coset.sort_unstable();
        ensure!(image == coset, "image of f on a residue", vec![x0], "image is not f(x)W_J");

        let (l_f, a_f) = self.a_f(r);
        let min_value = w.min_coset_rep(self.values[x0], r.ty);
        ensure!(
            a_f.iter().all(|&x| self.values[x] == min_value),
            "A_f(R) values",
            a_f.clone(),
            "A_f(R) does not carry the shortest coset element"
        );
        ensure!(w.length(min_value) == l_f, "A_f(R) values", a_f.clone(), "l_f mismatch");

        let max_len = chambers.iter().map(|&x| self.len_at(x)).max().unwrap();
        let tops: Vec<Chamber> = chambers.iter().copied().filter(|&x| self.len_at(x) == max_len).collect();
        ensure!(tops.len() == 1, "proj_R f", tops.clone(), "no unique chamber of maximal length");
        let c = tops[0];
        ensure!(
            self.values[c] == w.max_coset_rep(self.values[x0], r.ty),
            "proj_R f",
            vec![c],
            "value is not the longest coset element"
        );
        for &y in chambers {
            ensure!(
                self.values[y] == w.mul(self.values[c], b.delta(c, y)),
                "f(y) = f(proj_R f) delta(proj_R f, y)",
                vec![c, y],
                ""
            );
            let factored = a_f.iter().any(|&x| self.values[y] == w.mul(self.values[x], b.delta(x, y)));
            ensure!(factored, "f(y) = f(x) delta(x, y) for some x in A_f(R)", vec![y], "");
        }
        let opposite = b.opposites_in(r, c);
        ensure!(
            opposite.members() == a_f.as_slice(),
            "A_f(R) = chambers opposite proj_R f",
            vec![c],
            "{} opposite chambers, |A_f(R)| = {}",
            opposite.len(),
            a_f.len()
        );
        Ok(ResidueProfile { image, l_f, min_value, a_f, proj_f: Some(c) })
    }

    /// The unique chamber `c` with `f(c) = f(x)·w` and `δ(x, c) = w`, found
    /// by walking along a reduced word of `w` and stepping at each panel to
    /// the chamber where `f` gets longer.
    pub fn unique_chamber(&self, x: Chamber, w_: WeylElt) -> Result<Chamber, CodistanceError> {
        let b = &*self.building;
        let w = b.weyl();
        let fx = self.values[x];
        if w.length(w.mul(fx, w_)) != w.length(fx) + w.length(w_) {
            return Err(CodistanceError::PreconditionFailed(alloc::format!(
                "l(f(x) w) != l(f(x)) + l(w) for x = {x}, w = {}",
                w.format_word(w_)
            )));
        }
        let mut cur = x;
        for s in w.word(w_) {
            cur = self.proj_panel(cur, s);
        }
        Ok(cur)
    }
}
