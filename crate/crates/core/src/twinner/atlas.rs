use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use alloc::sync::Arc;

use super::{adjacent_from_betas, op_panels, PanelChoice, TwinError};
use crate::chambersys::{Building, Chamber, ResidueRef};
use crate::codistance::Codistance;
use crate::coxeter::{Gen, GenSet, WeylElt};
use crate::homotopy::Limits;
use crate::panelcalc::PanelCalculus;
use crate::violation::{ensure, LemmaStats, Violation};

pub const DEFAULT_CAP: usize = 50_000;

const UNSET: u32 = u32::MAX;

/// The connected component of a codistance `f` in the chamber system of
/// codistances on `B`, with `g ∼_s h` iff `P^op_s(g) = P^op_s(h)`.
/// Members are numbered in breadth-first order from `f`, which is 0.
#[derive(Debug, Clone)]
pub struct CodistanceAtlas {
    building: Arc<Building>,
    members: Vec<Codistance>,
    index: BTreeMap<Vec<WeylElt>, usize>,
    /// `panels[s]`: the `s`-panels, as sorted member ids.
    panels: Vec<Vec<Vec<usize>>>,
    panel_of: Vec<Vec<u32>>,
}

impl CodistanceAtlas {
    pub fn building(&self) -> &Arc<Building> {
        &self.building
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Codistance] {
        &self.members
    }

    pub fn origin(&self) -> usize {
        0
    }

    pub fn find(&self, values: &[WeylElt]) -> Option<usize> {
        self.index.get(values).copied()
    }

    pub fn panels(&self, s: Gen) -> &[Vec<usize>] {
        &self.panels[s]
    }

    /// The `s`-panel of member `g`.
    pub fn panel(&self, g: usize, s: Gen) -> &[usize] {
        &self.panels[s][self.panel_of[g][s] as usize]
    }

    pub fn adjacent(&self, g: usize, h: usize, s: Gen) -> bool {
        self.panel_of[g][s] == self.panel_of[h][s]
    }

    /// Members reachable from `g` through panels of types in `J`, sorted.
    pub fn residue(&self, g: usize, j: GenSet) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[g] = true;
        let mut out = vec![g];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for s in j.iter() {
                for &y in self.panel(x, s) {
                    if !seen[y] {
                        seen[y] = true;
                        out.push(y);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The atlas as a chamber system of the same type as `B`; a building
    /// exactly when [`Building::validate`] accepts it.
    pub fn chamber_system(&self) -> Result<Building, TwinError> {
        Ok(Building::new(self.building.weyl_arc().clone(), self.len(), self.panels.clone())?)
    }

    fn insert(&mut self, g: Codistance, cap: usize) -> Result<usize, TwinError> {
        if let Some(&i) = self.index.get(g.values()) {
            return Ok(i);
        }
        if self.members.len() >= cap {
            return Err(TwinError::CapExceeded(cap));
        }
        let i = self.members.len();
        self.index.insert(g.values().to_vec(), i);
        self.members.push(g);
        self.panel_of.push(vec![UNSET; self.building.rank()]);
        Ok(i)
    }

    /// Checks, over every atlas panel: members are `s`-adjacent as
    /// codistances; `proj_R g ∼_{r_J s r_J} proj_R h` for every residue `R`
    /// in `g^op` with `s ∈ J`; such residues stay in `h^op`; distinct
    /// members have distinct projections on residues of rank below the
    /// rank of `B`; and no two members are adjacent for two generators.
    pub fn check_lemmas(&self) -> Result<Vec<LemmaStats>, Violation> {
        let b = &*self.building;
        let w = b.weyl();
        let rank = b.rank();
        let (mut adjacency, mut adjop, mut unicity, mut edges) = (0, 0, 0, 0);
        for s in 0..rank {
            for panel in &self.panels[s] {
                let ops = op_panels(&self.members[panel[0]], s);
                for &g in panel {
                    ensure!(op_panels(&self.members[g], s) == ops, "atlas edge is s-adjacency", vec![], "member {g}, s = {s}");
                    edges += 1;
                }
                for &g in panel {
                    let fg = &self.members[g];
                    let gop = fg.fop();
                    for j in GenSet::all(rank).subsets().filter(|j| j.contains(s)) {
                        let u = w.opposition_gen(j, s);
                        let mut rs: Vec<ResidueRef> = gop.iter().map(|x| b.residue(x, j)).collect();
                        rs.sort_unstable();
                        rs.dedup();
                        for r in rs {
                            let pg = fg.proj_residue(r);
                            for &h in panel.iter().filter(|&&h| h != g) {
                                let fh = &self.members[h];
                                let ph = fh.proj_residue(r);
                                ensure!(b.adjacent(pg, ph, u), "projections of adjacent codistances", vec![pg, ph], "s = {s}, J = {j:?}");
                                adjacency += 1;
                                ensure!(
                                    b.chambers_of(r).iter().any(|&x| fh.value(x) == WeylElt::IDENTITY),
                                    "residue stays opposite",
                                    vec![pg],
                                    "s = {s}, J = {j:?}"
                                );
                                adjop += 1;
                                if j.len() < rank {
                                    ensure!(pg != ph, "projection determines the codistance", vec![pg], "members {g}, {h}");
                                    unicity += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut chamber_system = 0;
        for g in 0..self.len() {
            for s in 0..rank {
                for t in s + 1..rank {
                    let shared = self.panel(g, s).iter().filter(|h| self.panel(g, t).contains(h)).count();
                    ensure!(shared == 1, "atlas is a chamber system", vec![], "member {g}, types {s}, {t}");
                    chamber_system += 1;
                }
            }
        }
        Ok(vec![
            LemmaStats { name: "atlas edges", instances: edges },
            LemmaStats { name: "adjacency", instances: adjacency },
            LemmaStats { name: "adjop", instances: adjop },
            LemmaStats { name: "unicity", instances: unicity },
            LemmaStats { name: "chamber system", instances: chamber_system },
        ])
    }
}

/// Breadth-first closure of `{f}` under adjacent codistances: for each
/// member `g` and generator `s` whose panel is not known yet, the panel is
/// `{g}` together with one adjacent codistance per chamber of `P̃ ∩ g^op`,
/// `P̃` the least panel of `P^op_s(g)`.
pub fn atlas_component(f: &Codistance, cap: usize, limits: &Limits) -> Result<CodistanceAtlas, TwinError> {
    let b = f.building().clone();
    let rank = b.rank();
    let mut atlas = CodistanceAtlas {
        building: b.clone(),
        members: Vec::new(),
        index: BTreeMap::new(),
        panels: vec![Vec::new(); rank],
        panel_of: Vec::new(),
    };
    atlas.insert(f.clone(), cap)?;
    let mut next = 0;
    while next < atlas.len() {
        let g = atlas.members[next].clone();
        let gi = next;
        next += 1;
        if (0..rank).all(|s| atlas.panel_of[gi][s] != UNSET) {
            continue;
        }
        let calc = PanelCalculus::new(&g, limits);
        for s in 0..rank {
            if atlas.panel_of[gi][s] != UNSET {
                continue;
            }
            let ptilde = *calc
                .p_op(s)
                .first()
                .ok_or_else(|| TwinError::PreconditionFailed(alloc::format!("member {gi} has empty opposite set")))?;
            let betas = calc.beta_from(ptilde)?;
            let mut ids = vec![gi];
            for &p in b.chambers_of(ptilde).iter().filter(|&&p| calc.fop().contains(p)) {
                let h = adjacent_from_betas(&calc, s, ptilde, p, &betas, PanelChoice::First)?;
                ids.push(atlas.insert(h, cap)?);
            }
            let size = ids.len();
            ids.sort_unstable();
            ids.dedup();
            ensure!(ids.len() == size, "atlas panel members distinct", vec![], "member {gi}, s = {s}");
            let k = atlas.panels[s].len() as u32;
            for &h in &ids {
                ensure!(atlas.panel_of[h][s] == UNSET, "s-adjacency is an equivalence", vec![], "member {h}, s = {s}");
                atlas.panel_of[h][s] = k;
            }
            atlas.panels[s].push(ids);
        }
    }
    Ok(atlas)
}

/// Outcome of [`alpha_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaReport {
    pub ty: GenSet,
    /// The residue `R` of `B` in `g^op`.
    pub residue: ResidueRef,
    /// `|R̃| = |R|`.
    pub size: usize,
    /// Pairs examined for (i) and (ii).
    pub pairs: usize,
}

/// `α: R̃ → R, h ↦ proj_R h` for the `J`-residue `R̃` of `g` in the atlas
/// and the `J`-residue `R` of the least chamber of `g^op`: a bijection
/// with `h1 ∼_s h2 ⇔ α(h1) ∼_{r_J s r_J} α(h2)` and
/// `c ∈ h^op ⇔ δ(α(h), c) = r_J`.
pub fn alpha_check(atlas: &CodistanceAtlas, g: usize, j: GenSet) -> Result<AlphaReport, Violation> {
    let b = &*atlas.building;
    let x = atlas.members[g].fop().members()[0];
    let r = b.residue(x, j);
    let residue = atlas.residue(g, j);
    let rows: Vec<&[WeylElt]> = residue.iter().map(|&h| atlas.members[h].values()).collect();
    let adjacent = |a: usize, c: usize, s: Gen| atlas.adjacent(residue[a], residue[c], s);
    let pairs = alpha_core(b, r, &rows, adjacent)?;
    Ok(AlphaReport { ty: j, residue: r, size: residue.len(), pairs })
}

/// Shared by [`alpha_check`] and the local opposition check of the
/// assembly: `rows[i]` are the values of the `i`-th member of `R̃`.
pub(crate) fn alpha_core(
    b: &Building,
    r: ResidueRef,
    rows: &[&[WeylElt]],
    adjacent: impl Fn(usize, usize, Gen) -> bool,
) -> Result<usize, Violation> {
    let w = b.weyl();
    let j = r.ty;
    let rj = w.longest_element(j);
    let chambers = b.chambers_of(r);
    let alpha: Vec<Chamber> = rows
        .iter()
        .map(|row| *chambers.iter().max_by_key(|&&x| (w.length(row[x]), core::cmp::Reverse(x))).unwrap())
        .collect();
    let mut image = alpha.clone();
    image.sort_unstable();
    ensure!(image.as_slice() == chambers, "alpha is a bijection", image, "type {j:?}");
    let mut pairs = 0;
    for a in 0..rows.len() {
        for c in 0..rows.len() {
            for s in j.iter() {
                let u = w.opposition_gen(j, s);
                ensure!(
                    adjacent(a, c, s) == b.adjacent(alpha[a], alpha[c], u),
                    "alpha preserves adjacency",
                    vec![alpha[a], alpha[c]],
                    "s = {s}"
                );
            }
            pairs += 1;
        }
        for &y in chambers {
            ensure!(
                (rows[a][y] == WeylElt::IDENTITY) == (b.delta(alpha[a], y) == rj),
                "opposition through alpha",
                vec![alpha[a], y],
                ""
            );
            pairs += 1;
        }
    }
    Ok(pairs)
}
