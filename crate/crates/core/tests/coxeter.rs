use proptest::prelude::*;
use twinning_core::coxeter::{CoxeterMatrix, GenSet, WeylTable, DEFAULT_CAP};

fn table(name: &str) -> WeylTable {
    WeylTable::enumerate(&CoxeterMatrix::from_type_name(name).unwrap(), DEFAULT_CAP).unwrap()
}

/// Exponents-free oracle: the Poincaré polynomial of each irreducible
/// factor as a product of q-integers `[d]_q` over its degrees.
fn poincare_oracle(name: &str) -> Vec<u64> {
    let degrees = |part: &str| -> Vec<u64> {
        if let Some(m) = part.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            return vec![2, m.parse().unwrap()];
        }
        let n: u64 = part[1..].parse().unwrap();
        match &part[..1] {
            "A" => (2..=n + 1).collect(),
            "B" => (1..=n).map(|i| 2 * i).collect(),
            _ => panic!("{part}"),
        }
    };
    let mut poly = vec![1u64];
    for part in name.split('x') {
        for d in degrees(part) {
            let mut next = vec![0; poly.len() + d as usize - 1];
            for (i, &c) in poly.iter().enumerate() {
                for k in 0..d as usize {
                    next[i + k] += c;
                }
            }
            poly = next;
        }
    }
    poly
}

#[test]
fn orders_match_degree_formula() {
    for name in ["A1", "A2", "B2", "A3", "B3", "A1xA1xA1", "A1xI2(3)", "A1xI2(4)", "A1xI2(5)", "A1xI2(6)"] {
        let w = table(name);
        let oracle = poincare_oracle(name);
        let hist: Vec<u64> = w.length_histogram().iter().map(|&n| n as u64).collect();
        assert_eq!(hist, oracle, "{name}");
        assert_eq!(w.size() as u64, oracle.iter().sum::<u64>(), "{name}");
    }
}

#[test]
fn identities_hold_on_rank_three() {
    for name in ["A3", "B3", "A1xA1xA1", "A1xI2(5)"] {
        let stats = table(name).check_identities().unwrap();
        assert!(stats.iter().all(|s| s.instances > 0), "{name}: {stats:?}");
    }
}

#[test]
fn shortlex_ids_refine_length() {
    let w = table("B3");
    let lengths: Vec<usize> = w.elements().map(|x| w.length(x)).collect();
    assert!(lengths.windows(2).all(|p| p[0] <= p[1]));
    assert_eq!(w.length(w.identity()), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_multiply_consistently(word in prop::collection::vec(0usize..3, 0..20), split in 0usize..20) {
        let w = table("B3");
        let x = w.from_word(&word);
        prop_assert!(w.length(x) <= word.len());
        prop_assert_eq!(w.length(x) % 2, word.len() % 2);
        prop_assert_eq!(w.from_word(&w.word(x)), x);
        prop_assert_eq!(w.word(x).len(), w.length(x));
        let k = split.min(word.len());
        prop_assert_eq!(w.mul(w.from_word(&word[..k]), w.from_word(&word[k..])), x);
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        prop_assert_eq!(w.inv(x), w.from_word(&rev));
    }

    #[test]
    fn coset_representatives(word in prop::collection::vec(0usize..3, 0..12), mask in 0u32..8) {
        let w = table("A3");
        let x = w.from_word(&word);
        let j = GenSet(mask);
        let lo = w.min_coset_rep(x, j);
        let hi = w.max_coset_rep(x, j);
        prop_assert_eq!(hi, w.mul(lo, w.longest_element(j)));
        prop_assert!(w.in_parabolic(w.mul(w.inv(lo), x), j));
        prop_assert_eq!(w.length(lo) + w.length(w.longest_element(j)), w.length(hi));
    }
}
