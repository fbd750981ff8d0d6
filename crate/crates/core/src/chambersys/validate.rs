use alloc::vec;

use super::{Building, Chamber};
use crate::coxeter::WeylElt;
use crate::violation::{ensure, Violation};

impl Building {
    /// Checks the chamber-system axiom, (Bu1)–(Bu3), `δ(y,x) = δ(x,y)⁻¹`
    /// and that gallery distance equals `l∘δ`. The first failure is
    /// returned with its witness chambers.
    pub fn validate(&self) -> Result<(), Violation> {
        let w = self.weyl();
        let rank = self.rank();
        for c in self.chambers() {
            for s in 0..rank {
                for t in s + 1..rank {
                    for &d in self.panel_chambers(c, s) {
                        ensure!(
                            d == c || !self.adjacent(c, d, t),
                            "chamber system",
                            vec![c, d],
                            "adjacent for generators {s} and {t}"
                        );
                    }
                }
            }
        }
        for x in self.chambers() {
            let row = self.delta_row(x);
            let dist = self.gallery_distances(x);
            for y in self.chambers() {
                let wxy = row[y];
                ensure!(
                    (wxy == WeylElt::IDENTITY) == (x == y),
                    "Bu1",
                    vec![x, y],
                    "delta = {}",
                    w.format_word(wxy)
                );
                ensure!(
                    self.delta(y, x) == w.inv(wxy),
                    "delta symmetry",
                    vec![x, y],
                    "delta(y,x) is not the inverse of delta(x,y)"
                );
                ensure!(
                    dist[y] as usize == w.length(wxy),
                    "gallery distance",
                    vec![x, y],
                    "gallery distance {} but l(delta) = {}",
                    dist[y],
                    w.length(wxy)
                );
                for s in 0..rank {
                    let ws = w.right(wxy, s);
                    let longer = w.length(ws) > w.length(wxy);
                    let mut found = false;
                    for &z in self.panel_chambers(y, s) {
                        if z == y {
                            continue;
                        }
                        let wxz = row[z];
                        ensure!(
                            wxz == wxy || wxz == ws,
                            "Bu2",
                            vec![x, y, z],
                            "delta(x,z) = {} not in {{w, ws}}",
                            w.format_word(wxz)
                        );
                        ensure!(
                            !longer || wxz == ws,
                            "Bu2",
                            vec![x, y, z],
                            "l(ws) = l(w)+1 but delta(x,z) = w"
                        );
                        found |= wxz == ws;
                    }
                    ensure!(found, "Bu3", vec![x, y], "no z with delta(y,z) = s{s} and delta(x,z) = ws");
                }
            }
        }
        Ok(())
    }

    /// Moves chamber `c` from its `s`-panel into the `s`-panel containing
    /// `target` (test fixture helper for mutation checks).
    pub fn panels_with_moved_chamber(
        &self,
        s: usize,
        c: Chamber,
        target: Chamber,
    ) -> alloc::vec::Vec<alloc::vec::Vec<alloc::vec::Vec<Chamber>>> {
        let mut panels: alloc::vec::Vec<_> = (0..self.rank()).map(|t| self.panels(t).to_vec()).collect();
        let from = self.panel_index(c, s);
        let to = self.panel_index(target, s);
        panels[s][from].retain(|&x| x != c);
        panels[s][to].push(c);
        panels
    }
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::chambersys::{BuildError, Building};
    use crate::coxeter::CoxeterMatrix;

    #[test]
    fn fano_passes_and_mutations_fail() {
        let b = catalog::pg2(2).unwrap();
        b.validate().unwrap();
        assert!(b.is_thick());
        let far = b.panels(0)[1][0];
        let moved = b.panels_with_moved_chamber(0, 0, far);
        match Building::new(b.weyl_arc().clone(), b.num_chambers(), moved) {
            Ok(m) => assert!(m.validate().is_err()),
            Err(e) => assert!(!matches!(e, BuildError::Empty)),
        }
    }

    #[test]
    fn thin_a2_passes_but_is_not_thick() {
        let b = catalog::thin(&CoxeterMatrix::from_type_name("A2").unwrap()).unwrap();
        b.validate().unwrap();
        assert!(!b.is_thick());
    }
}
