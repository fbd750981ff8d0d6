use alloc::vec::Vec;

use super::{components, simply_2_connected, Certificate, Limits, Outcome, Status};
use crate::chambersys::{Building, Chamber, ChamberSet, ResidueRef};
use crate::coxeter::GenSet;

/// One residue `R` and chamber `x ∈ R` whose opposite set in `R` failed,
/// or could not be decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OppositionEntry {
    pub residue: ResidueRef,
    pub chamber: Chamber,
    /// Size of `{ y ∈ R : δ(x, y) = r_J }`.
    pub size: usize,
    pub status: Status,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OppositionReport {
    /// `"lco"` or `"lsco"`.
    pub condition: &'static str,
    /// Number of `(R, x)` pairs examined.
    pub checked: usize,
    pub failures: Vec<OppositionEntry>,
    pub inconclusive: Vec<OppositionEntry>,
}

impl OppositionReport {
    pub fn outcome(&self) -> Outcome {
        if !self.failures.is_empty() {
            Outcome::Fail
        } else if !self.inconclusive.is_empty() {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }
}

/// For every rank 2 residue `R` and `x ∈ R`, whether the chambers of `R`
/// opposite `x` form a connected chamber system.
pub fn check_lco(b: &Building) -> OppositionReport {
    sweep(b, 2, "lco", |ty, opp| {
        let k = components(b, opp, ty).len();
        (k == 1).then_some(()).ok_or((Status::ProvenNontrivial, Some(Certificate::Components(k))))
    })
}

/// For every rank 3 residue `R` and `x ∈ R`, whether the chambers of `R`
/// opposite `x` form a simply 2-connected chamber system.
pub fn check_lsco(b: &Building, limits: &Limits) -> OppositionReport {
    sweep(b, 3, "lsco", |ty, opp| {
        let k = components(b, opp, ty).len();
        if k != 1 {
            return Err((Status::ProvenNontrivial, Some(Certificate::Components(k))));
        }
        match simply_2_connected(b, opp, limits) {
            Ok(v) if v.is_trivial() => Ok(()),
            Ok(v) => Err((v.status, v.certificate)),
            Err(_) => Err((Status::ProvenNontrivial, Some(Certificate::Components(k)))),
        }
    })
}

type Failure = (Status, Option<Certificate>);

fn sweep(
    b: &Building,
    rank: usize,
    condition: &'static str,
    mut check: impl FnMut(GenSet, &ChamberSet) -> Result<(), Failure>,
) -> OppositionReport {
    let mut report = OppositionReport { condition, checked: 0, failures: Vec::new(), inconclusive: Vec::new() };
    for ty in GenSet::all(b.rank()).subsets().filter(|j| j.len() == rank) {
        for r in b.residues(ty) {
            for &x in b.chambers_of(r) {
                let opp = b.opposites_in(r, x);
                report.checked += 1;
                if let Err((status, certificate)) = check(ty, &opp) {
                    let entry = OppositionEntry { residue: r, chamber: x, size: opp.len(), status, certificate };
                    if status == Status::Inconclusive {
                        report.inconclusive.push(entry);
                    } else {
                        report.failures.push(entry);
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coxeter::CoxeterMatrix;

    #[test]
    fn lco_verdicts() {
        let fano = catalog::pg2(2).unwrap();
        let r = check_lco(&fano);
        assert_eq!(r.outcome(), Outcome::Pass);
        assert_eq!(r.checked, 21);
        assert_eq!(check_lsco(&fano, &Limits::default()).checked, 0);

        let sp = catalog::sp4(2).unwrap();
        let r = check_lco(&sp);
        assert_eq!(r.outcome(), Outcome::Fail);
        assert_eq!(r.failures[0].size, 16);
        assert!(matches!(r.failures[0].certificate, Some(Certificate::Components(k)) if k > 1));

        assert_eq!(check_lco(&catalog::digon(3, 4).unwrap()).outcome(), Outcome::Pass);
        let thin = catalog::thin(&CoxeterMatrix::from_type_name("A2").unwrap()).unwrap();
        assert_eq!(check_lco(&thin).outcome(), Outcome::Pass);
    }

    #[test]
    fn lsco_on_thin_a3() {
        let b = catalog::thin(&CoxeterMatrix::from_type_name("A3").unwrap()).unwrap();
        let r = check_lsco(&b, &Limits::default());
        assert_eq!(r.checked, 24);
        assert_eq!(r.outcome(), Outcome::Pass);
    }
}
