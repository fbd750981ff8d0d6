//! Adjacent codistances, the chamber system of codistances around a seed,
//! and the twin building assembled from it.

mod assembly;
mod atlas;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use assembly::{assemble_twin, check_gonality, CheckOutcome, TwinAssembly, TwinReport, TWIN_AXIOMS};
pub use atlas::{alpha_check, atlas_component, AlphaReport, CodistanceAtlas, DEFAULT_CAP};

use crate::chambersys::{BuildError, Chamber, ResidueRef};
use crate::codistance::{Codistance, CodistanceError};
use crate::coxeter::Gen;
use crate::panelcalc::{PanelBijection, PanelCalculus, PanelError};
use crate::violation::{ensure, Violation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwinError {
    #[error("codistances live on different buildings")]
    BuildingMismatch,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("atlas exceeded {0} members")]
    CapExceeded(usize),
    #[error("constructed chamber system is not a building: {0}")]
    BuildingInvalid(String),
    #[error(transparent)]
    Panel(#[from] PanelError),
    #[error(transparent)]
    Codistance(#[from] CodistanceError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Violation(#[from] Violation),
}

/// Which panel of `P^op_{s,c}(f)` decides `g(c)` in
/// [`adjacent_codistance_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelChoice {
    First,
    Last,
    /// Every admissible panel, requiring all of them to agree.
    Every,
}

fn op_panels(f: &Codistance, s: Gen) -> Vec<ResidueRef> {
    let b = f.building();
    let mut ps: Vec<ResidueRef> = f.fop().iter().map(|x| b.panel(x, s)).collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// `f ∼_s g`: both codistances have the same `s`-panels meeting their
/// opposite sets.
pub fn s_adjacent(f: &Codistance, g: &Codistance, s: Gen) -> Result<bool, TwinError> {
    if !Arc::ptr_eq(f.building(), g.building()) {
        return Err(TwinError::BuildingMismatch);
    }
    Ok(op_panels(f, s) == op_panels(g, s))
}

/// The codistance `g` that is `s`-adjacent to `f` and marks, in every
/// panel `Q ∈ P^op_s(f)`, the chamber `β(P̃, Q)(p)`.
pub fn adjacent_codistance(
    calc: &PanelCalculus<'_>,
    s: Gen,
    ptilde: ResidueRef,
    p: Chamber,
) -> Result<Codistance, TwinError> {
    adjacent_codistance_with(calc, s, ptilde, p, PanelChoice::First)
}

/// As [`adjacent_codistance`], choosing the panel of `P^op_{s,c}(f)` used
/// at each chamber `c`.
pub fn adjacent_codistance_with(
    calc: &PanelCalculus<'_>,
    s: Gen,
    ptilde: ResidueRef,
    p: Chamber,
    choice: PanelChoice,
) -> Result<Codistance, TwinError> {
    let betas = calc.beta_from(ptilde)?;
    adjacent_from_betas(calc, s, ptilde, p, &betas, choice)
}

pub(crate) fn adjacent_from_betas(
    calc: &PanelCalculus<'_>,
    s: Gen,
    ptilde: ResidueRef,
    p: Chamber,
    betas: &BTreeMap<ResidueRef, PanelBijection>,
    choice: PanelChoice,
) -> Result<Codistance, TwinError> {
    let f = calc.codistance();
    let b = calc.building();
    let w = b.weyl();
    if ptilde.panel_type() != Some(s) || !calc.in_p_op(ptilde)? {
        return Err(TwinError::PreconditionFailed(alloc::format!("{ptilde:?} is not in P^op_s(f)")));
    }
    if !b.residue_contains(ptilde, p) || !calc.fop().contains(p) {
        return Err(TwinError::PreconditionFailed(alloc::format!("chamber {p} is not in the panel and f^op")));
    }
    let mut marked: BTreeMap<ResidueRef, Chamber> = BTreeMap::new();
    for &q in calc.p_op(s) {
        let beta = betas.get(&q).ok_or(PanelError::FopDisconnected)?;
        marked.insert(q, beta.apply(p).unwrap());
    }
    let flips = |c: Chamber, q: ResidueRef| {
        let pc = b.proj_chamber(q, c);
        pc == calc.proj_f(q) || pc == marked[&q]
    };
    let mut values = Vec::with_capacity(b.num_chambers());
    for c in b.chambers() {
        let ps = calc.p_op_c(s, c);
        let flip = match choice {
            PanelChoice::First => flips(c, ps[0]),
            PanelChoice::Last => flips(c, *ps.last().unwrap()),
            PanelChoice::Every => {
                let first = flips(c, ps[0]);
                ensure!(
                    ps.iter().all(|&q| flips(c, q) == first),
                    "choice of panel in the adjacent codistance",
                    alloc::vec![c],
                    "s = {s}"
                );
                first
            }
        };
        values.push(if flip { w.left(f.value(c), s) } else { f.value(c) });
    }
    let g = Codistance::new(f.building().clone(), values)?;
    g.validate()?;
    ensure!(s_adjacent(f, &g, s)?, "adjacent codistance is s-adjacent", alloc::vec![p], "s = {s}");
    for (&q, &m) in &marked {
        ensure!(g.proj_panel(m, s) == m, "proj_P g = beta(p) on P", alloc::vec![m], "{q:?}");
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::homotopy::Limits;

    #[test]
    fn adjacent_codistances_on_fano() {
        let b = Arc::new(catalog::pg2(2).unwrap());
        let f = Codistance::from_opposite_chamber(b.clone(), 0);
        let calc = PanelCalculus::new(&f, &Limits::default());
        let w = b.weyl();
        assert!(s_adjacent(&f, &f, 0).unwrap());
        for s in 0..2 {
            let pt = calc.p_op(s)[0];
            for &p in b.chambers_of(pt).iter().filter(|&&p| calc.fop().contains(p)) {
                let g = adjacent_codistance(&calc, s, pt, p).unwrap();
                assert_ne!(g, f);
                for c in b.chambers() {
                    assert!(g.value(c) == f.value(c) || g.value(c) == w.left(f.value(c), s));
                }
                for choice in [PanelChoice::Last, PanelChoice::Every] {
                    assert_eq!(adjacent_codistance_with(&calc, s, pt, p, choice).unwrap(), g);
                }
                // Every such g is f_c for some chamber c.
                let oracle = b.chambers().map(|c| Codistance::from_opposite_chamber(b.clone(), c)).find(|h| *h == g);
                assert!(oracle.is_some());
                // Going back from g with the chamber marked by f returns f.
                let gcalc = PanelCalculus::new(&g, &Limits::default());
                let back = f.proj_panel(p, s);
                assert_eq!(adjacent_codistance(&gcalc, s, b.panel(back, s), back).unwrap(), f);
            }
        }
        let other = Codistance::from_opposite_chamber(Arc::new(catalog::pg2(2).unwrap()), 0);
        assert_eq!(s_adjacent(&f, &other, 0), Err(TwinError::BuildingMismatch));
    }

    #[test]
    fn non_adjacent_base_chambers() {
        let b = Arc::new(catalog::pg2(2).unwrap());
        let f = Codistance::from_opposite_chamber(b.clone(), 0);
        let w = b.weyl();
        for c in b.chambers() {
            let g = Codistance::from_opposite_chamber(b.clone(), c);
            for s in 0..2 {
                let t = w.opposition_gen(crate::coxeter::GenSet::all(2), s);
                assert_eq!(s_adjacent(&f, &g, s).unwrap(), b.adjacent(0, c, t));
            }
        }
    }
}
