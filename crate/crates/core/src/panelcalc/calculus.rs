use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{panel_gen, PanelBijection, PanelError};
use crate::chambersys::{Building, Chamber, ChamberSet, ResidueRef};
use crate::codistance::Codistance;
use crate::coxeter::{Gen, GenSet, WeylElt};
use crate::homotopy::{simply_2_connected, HomotopyError, Limits, Status, TrivialityVerdict};

/// The panel sets `P^op_s(f)` of a codistance together with the maps
/// `π`, `β(·, ·, w)` and `β` on them.
#[derive(Debug, Clone)]
pub struct PanelCalculus<'f> {
    f: &'f Codistance,
    fop: ChamberSet,
    p_op: Vec<Vec<ResidueRef>>,
    verdict: Result<TrivialityVerdict, HomotopyError>,
}

impl<'f> PanelCalculus<'f> {
    /// Computes `f^op`, the sets `P^op_s(f)` and the simple 2-connectivity
    /// verdict for `f^op` that [`beta`](Self::beta) relies on.
    pub fn new(f: &'f Codistance, limits: &Limits) -> Self {
        let b = &**f.building();
        let fop = f.fop();
        let verdict =
            if fop.is_empty() { Err(HomotopyError::NotConnected) } else { simply_2_connected(b, &fop, limits) };
        Self::with_verdict(f, verdict)
    }

    /// As [`new`](Self::new), with a verdict for `f^op` obtained elsewhere.
    pub fn with_verdict(f: &'f Codistance, verdict: Result<TrivialityVerdict, HomotopyError>) -> Self {
        let b = &**f.building();
        let fop = f.fop();
        let p_op = (0..b.rank())
            .map(|s| {
                let mut ps: Vec<ResidueRef> = fop.iter().map(|x| b.panel(x, s)).collect();
                ps.sort_unstable();
                ps.dedup();
                ps
            })
            .collect();
        PanelCalculus { f, fop, p_op, verdict }
    }

    pub fn codistance(&self) -> &'f Codistance {
        self.f
    }

    pub fn building(&self) -> &'f Building {
        self.f.building()
    }

    pub fn fop(&self) -> &ChamberSet {
        &self.fop
    }

    pub fn verdict(&self) -> &Result<TrivialityVerdict, HomotopyError> {
        &self.verdict
    }

    /// `P^op_s(f)`: the `s`-panels meeting `f^op`, sorted.
    pub fn p_op(&self, s: Gen) -> &[ResidueRef] {
        &self.p_op[s]
    }

    /// `P^op_{s,c}(f)`: the `s`-panels meeting `f^op_c`, sorted.
    pub fn p_op_c(&self, s: Gen, c: Chamber) -> Vec<ResidueRef> {
        let b = self.building();
        let mut ps: Vec<ResidueRef> = self.f.fop_c(c).iter().map(|x| b.panel(x, s)).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn in_p_op(&self, p: ResidueRef) -> Result<bool, PanelError> {
        let s = panel_gen(p)?;
        Ok(self.p_op[s].binary_search(&p).is_ok())
    }

    fn require_op(&self, p: ResidueRef) -> Result<Gen, PanelError> {
        let s = panel_gen(p)?;
        if self.p_op[s].binary_search(&p).is_err() {
            return Err(PanelError::NotOpposite(p));
        }
        Ok(s)
    }

    /// `proj_P f`, the one chamber of a panel of `P^op_s(f)` outside `f^op`.
    pub fn proj_f(&self, p: ResidueRef) -> Chamber {
        let s = p.panel_type().expect("a panel");
        self.f.proj_panel(self.building().chambers_of(p)[0], s)
    }

    /// `π(P, w)`: the `t`-panel of the chamber `c` with `δ(p, c) = w` and
    /// `f(c) = s·w`, where `p = proj_P f` and `t = w⁻¹sw`.
    pub fn pi(&self, p: ResidueRef, w: WeylElt) -> Result<ResidueRef, PanelError> {
        let s = self.require_op(p)?;
        let wt = self.f.weyl();
        let t = wt.in_x_s(w, s).ok_or_else(|| {
            PanelError::PreconditionFailed(format!("{} is not in X_{}", wt.format_word(w), wt.matrix().gens()[s]))
        })?;
        let c = self
            .f
            .unique_chamber(self.proj_f(p), w)
            .map_err(|e| PanelError::PreconditionFailed(format!("{e}")))?;
        Ok(self.building().panel(c, t))
    }

    /// Some `P ∈ P^op_s(f)` and `w` with `Q = π(P, w)`, where `w` is the
    /// shortest value of `f` on `Q` and `s = wtw⁻¹`.
    pub fn reverse_pi(&self, q: ResidueRef) -> Result<(ResidueRef, WeylElt), PanelError> {
        let t = panel_gen(q)?;
        let b = self.building();
        let wt = self.f.weyl();
        let (x, w) = b
            .chambers_of(q)
            .iter()
            .map(|&x| (x, self.f.value(x)))
            .min_by_key(|&(x, v)| (wt.length(v), x))
            .unwrap();
        let s = wt
            .conjugate_gen(wt.inv(w), t)
            .ok_or_else(|| PanelError::PreconditionFailed(format!("w t w^-1 is not a generator for w = {}", wt.format_word(w))))?;
        let y = self.f.fop_c(x).members()[0];
        Ok((b.panel(y, s), w))
    }

    /// `P ≡_w Q`, i.e. `π(P, w) = π(Q, w)`.
    pub fn equivalent(&self, p: ResidueRef, q: ResidueRef, w: WeylElt) -> Result<bool, PanelError> {
        Ok(self.pi(p, w)? == self.pi(q, w)?)
    }

    /// `β(P, Q, w) = proj_Q ∘ proj_{π(P, w)}`.
    pub fn beta_w(&self, p: ResidueRef, q: ResidueRef, w: WeylElt) -> Result<PanelBijection, PanelError> {
        let pp = self.pi(p, w)?;
        if pp != self.pi(q, w)? {
            return Err(PanelError::NotEquivalent);
        }
        let b = self.building();
        Ok(PanelBijection::projection(b, p, pp).then(&PanelBijection::projection(b, pp, q)))
    }

    /// `β(P, Q)` for panels holding `t`-adjacent chambers of `f^op`:
    /// `β(P, Q, x_J)` with `J = {s, t}` and `x_J = s·r_J`.
    pub fn beta_adjacent(&self, p: ResidueRef, q: ResidueRef, t: Gen) -> Result<PanelBijection, PanelError> {
        let s = self.require_op(p)?;
        self.require_op(q)?;
        let b = self.building();
        if p == q || s == t {
            return if p == q { Ok(PanelBijection::identity(b, p)) } else { Err(PanelError::NotEquivalent) };
        }
        let wt = self.f.weyl();
        let x_j = wt.mul(wt.gen(s), wt.longest_element(GenSet::pair(s, t)));
        self.beta_w(p, q, x_j)
    }

    fn require_simply_connected(&self) -> Result<(), PanelError> {
        match &self.verdict {
            Ok(v) if v.is_trivial() => Ok(()),
            Ok(v) => Err(PanelError::HomotopyInconclusive(v.status)),
            Err(HomotopyError::NotConnected) => Err(PanelError::FopDisconnected),
            Err(_) => Err(PanelError::HomotopyInconclusive(Status::Inconclusive)),
        }
    }

    /// `β(P, Q)`, composed along a shortest gallery in `f^op` from the least
    /// chamber of `P ∩ f^op` to `Q`.
    pub fn beta(&self, p: ResidueRef, q: ResidueRef) -> Result<PanelBijection, PanelError> {
        let s = self.require_op(p)?;
        self.require_op(q)?;
        self.require_simply_connected()?;
        let b = self.building();
        let start = b.chambers_of(p).iter().copied().find(|&x| self.fop.contains(x)).unwrap();
        let mut parent = vec![usize::MAX; b.num_chambers()];
        parent[start] = start;
        let mut queue = VecDeque::from([start]);
        let mut end = None;
        while let Some(x) = queue.pop_front() {
            if b.residue_contains(q, x) {
                end = Some(x);
                break;
            }
            for (_, y) in b.neighbors(x) {
                if self.fop.contains(y) && parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut x = end.ok_or(PanelError::FopDisconnected)?;
        let mut gallery = vec![x];
        while x != start {
            x = parent[x];
            gallery.push(x);
        }
        gallery.reverse();
        self.beta_along(s, &gallery)
    }

    /// The composite of the adjacent bijections `β(X_i, X_{i+1})` along a
    /// gallery in `f^op`, `X_i` the `s`-panel of its `i`-th chamber.
    /// Repeated chambers are allowed.
    pub fn beta_along(&self, s: Gen, gallery: &[Chamber]) -> Result<PanelBijection, PanelError> {
        let b = self.building();
        let first = *gallery.first().ok_or_else(|| PanelError::PreconditionFailed("empty gallery".into()))?;
        if let Some(i) = gallery.iter().position(|&x| !self.fop.contains(x)) {
            return Err(PanelError::PreconditionFailed(format!("gallery leaves f^op at position {i}")));
        }
        let mut acc = PanelBijection::identity(b, b.panel(first, s));
        for (i, pair) in gallery.windows(2).enumerate() {
            let (x, y) = (pair[0], pair[1]);
            if x == y {
                continue;
            }
            let t = (0..b.rank()).find(|&t| b.adjacent(x, y, t)).ok_or(PanelError::NotAdjacent(i, i + 1))?;
            let (px, py) = (b.panel(x, s), b.panel(y, s));
            if px != py {
                acc = acc.then(&self.beta_adjacent(px, py, t)?);
            }
        }
        Ok(acc)
    }

    /// `β(P, Q)` for every `Q ∈ P^op_s(f)`, composed along a breadth-first
    /// spanning tree of `f^op` rooted at the least chamber of `P ∩ f^op`.
    pub fn beta_from(&self, p: ResidueRef) -> Result<BTreeMap<ResidueRef, PanelBijection>, PanelError> {
        let s = self.require_op(p)?;
        self.require_simply_connected()?;
        let b = self.building();
        let start = b.chambers_of(p).iter().copied().find(|&x| self.fop.contains(x)).unwrap();
        let mut at: Vec<Option<PanelBijection>> = vec![None; b.num_chambers()];
        at[start] = Some(PanelBijection::identity(b, p));
        let mut out = BTreeMap::from([(p, PanelBijection::identity(b, p))]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let here = at[x].clone().unwrap();
            for (t, y) in b.neighbors(x) {
                if !self.fop.contains(y) || at[y].is_some() {
                    continue;
                }
                let (px, py) = (b.panel(x, s), b.panel(y, s));
                let next = if px == py { here.clone() } else { here.then(&self.beta_adjacent(px, py, t)?) };
                out.entry(py).or_insert_with(|| next.clone());
                at[y] = Some(next);
                queue.push_back(y);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use alloc::sync::Arc;

    fn fano_calc() -> (Arc<Building>, Codistance) {
        let b = Arc::new(catalog::pg2(2).unwrap());
        let f = Codistance::from_opposite_chamber(b.clone(), 0);
        (b, f)
    }

    #[test]
    fn panels_in_fop() {
        let (b, f) = fano_calc();
        let calc = PanelCalculus::new(&f, &Limits::default());
        assert!(calc.verdict().as_ref().unwrap().is_trivial());
        for s in 0..2 {
            assert_eq!(calc.p_op(s).len(), 4);
            for &p in calc.p_op(s) {
                let pf = calc.proj_f(p);
                assert_eq!(f.value(pf), b.weyl().gen(s));
            }
        }
    }

    #[test]
    fn pi_of_identity_and_x_j() {
        let (b, f) = fano_calc();
        let calc = PanelCalculus::new(&f, &Limits::default());
        let w = b.weyl();
        let x_j = w.mul(w.gen(0), w.longest());
        for &p in calc.p_op(0) {
            assert_eq!(calc.pi(p, WeylElt::IDENTITY), Ok(p));
            let q = calc.pi(p, x_j).unwrap();
            // The panel through proj_R f = chamber 0 opposite P.
            assert!(b.residue_contains(q, 0));
            assert_eq!(q.panel_type(), Some(w.opposition_gen(GenSet::all(2), 0)));
            assert_eq!(calc.reverse_pi(q).map(|(pp, ww)| calc.pi(pp, ww)), Ok(Ok(q)));
        }
        assert_eq!(calc.reverse_pi(calc.p_op(1)[0]), Ok((calc.p_op(1)[0], WeylElt::IDENTITY)));
    }

    #[test]
    fn beta_properties() {
        let (b, f) = fano_calc();
        let calc = PanelCalculus::new(&f, &Limits::default());
        for s in 0..2 {
            let ps = calc.p_op(s);
            let from = calc.beta_from(ps[0]).unwrap();
            assert_eq!(from.len(), ps.len());
            for &p in ps {
                assert!(calc.beta(p, p).unwrap().is_identity());
                for &q in ps {
                    let bpq = calc.beta(p, q).unwrap();
                    assert!(bpq.is_bijective(&b));
                    assert_eq!(bpq.apply(calc.proj_f(p)), Some(calc.proj_f(q)));
                    assert!(bpq.then(&calc.beta(q, p).unwrap()).is_identity());
                }
            }
            for &q in ps {
                assert_eq!(from[&q], calc.beta(ps[0], q).unwrap());
            }
        }
    }

    #[test]
    fn beta_needs_panels_in_fop() {
        let (b, f) = fano_calc();
        let calc = PanelCalculus::new(&f, &Limits::default());
        let p = b.panel(0, 0);
        assert_eq!(calc.beta(p, p), Err(PanelError::NotOpposite(p)));
        let calc = PanelCalculus::with_verdict(&f, Ok(TrivialityVerdict::inconclusive(crate::homotopy::Certificate::Exhausted(1))));
        let q = calc.p_op(0)[0];
        assert_eq!(calc.beta(q, q), Err(PanelError::HomotopyInconclusive(Status::Inconclusive)));
    }
}
