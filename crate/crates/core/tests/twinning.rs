use std::sync::Arc;

use proptest::prelude::*;
use twinning_core::catalog;
use twinning_core::codistance::Codistance;
use twinning_core::coxeter::WeylElt;
use twinning_core::homotopy::Limits;
use twinning_core::twinner::{assemble_twin, atlas_component, DEFAULT_CAP};

/// Opposite chambers by direct comparison with the longest element.
fn opposite_count(b: &twinning_core::chambersys::Building, c: usize) -> usize {
    b.chambers().filter(|&x| b.delta(c, x) == b.weyl().longest()).count()
}

#[test]
fn fop_sizes() {
    let b = Arc::new(catalog::pg2(2).unwrap());
    let f = Codistance::from_opposite_chamber(b.clone(), 0);
    assert_eq!(f.fop().len(), 8);
    assert_eq!(f.fop().len(), opposite_count(&b, 0));
    let b = Arc::new(catalog::sp4(2).unwrap());
    assert_eq!(Codistance::from_opposite_chamber(b.clone(), 7).fop().len(), 16);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn codistance_axioms(c in 0usize..21, x in 0usize..21, v in 1u32..6) {
        let b = Arc::new(catalog::pg2(2).unwrap());
        let f = Codistance::from_opposite_chamber(b.clone(), c);
        prop_assert!(f.validate().is_ok());
        let fop = f.fop();
        let gap = fop.iter().map(|y| b.dist(x, y)).min().unwrap();
        prop_assert_eq!(gap, f.len_at(x));
        let mut values = f.values().to_vec();
        let new = WeylElt((values[x].0 + v) % 6);
        values[x] = new;
        let g = Codistance::new(b, values).unwrap();
        prop_assert!(g.validate().is_err());
    }

    #[test]
    fn digon_twins(a in 2usize..5, bb in 2usize..5, seed in 0usize..16) {
        let b = Arc::new(catalog::digon(a, bb).unwrap());
        let f = Codistance::from_opposite_chamber(b.clone(), seed % (a * bb));
        let atlas = atlas_component(&f, DEFAULT_CAP, &Limits::default()).unwrap();
        prop_assert_eq!(atlas.len(), a * bb);
        for c in b.chambers() {
            prop_assert!(atlas.find(Codistance::from_opposite_chamber(b.clone(), c).values()).is_some());
        }
        let (_, report) = assemble_twin(&atlas).unwrap();
        prop_assert!(report.passed(), "{:?}", report.first_violation());
    }
}
