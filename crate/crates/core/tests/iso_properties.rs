mod common;

use common::{perturb, shuffle_ids, small_graph};
use proptest::prelude::*;
use reeb::iso::{brute_force_iso, canonical_form, labelled_iso, reeb_iso, verify_witness};
use reeb::{decompose, fixtures, IntReebGraph};

fn oracle(a: &IntReebGraph, b: &IntReebGraph) -> bool {
    brute_force_iso(a, b).expect("within budget").is_some()
}

fn identity_labels(g: &IntReebGraph) -> IntReebGraph {
    let mut g = g.clone();
    g.labels = Some(
        g.edges
            .iter()
            .map(|es| es.iter().map(|e| (e.id.clone(), e.id.clone())).collect())
            .collect(),
    );
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn renamed_copies_are_isomorphic(seed in any::<u64>(), shuffle in any::<u64>()) {
        let Some(g) = small_graph(seed, 10) else { return Ok(()) };
        let h = shuffle_ids(&g, shuffle);
        prop_assert!(reeb_iso(&g, &h));
        let w = brute_force_iso(&g, &h).unwrap().expect("renaming is an isomorphism");
        prop_assert!(verify_witness(&g, &h, &w, false).is_ok());
    }

    #[test]
    fn decider_agrees_with_oracle_on_perturbations(seed in any::<u64>(), p in any::<u64>()) {
        let Some(g) = small_graph(seed, 10) else { return Ok(()) };
        let Some(h) = perturb(&g, p) else { return Ok(()) };
        let h = shuffle_ids(&h, p);
        prop_assert_eq!(reeb_iso(&g, &h), oracle(&g, &h));
    }

    #[test]
    fn decider_agrees_with_oracle_on_unrelated_pairs(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (Some(a), Some(b)) = (small_graph(s1, 10), small_graph(s2, 10)) else { return Ok(()) };
        prop_assert_eq!(reeb_iso(&a, &b), oracle(&a, &b));
        prop_assert_eq!(reeb_iso(&a, &b), reeb_iso(&b, &a));
    }

    #[test]
    fn canonical_forms_match_oracle_on_factors(seed in any::<u64>(), shuffle in any::<u64>()) {
        let Some(g) = small_graph(seed, 10) else { return Ok(()) };
        let fs = decompose(&g).unwrap();
        for (i, x) in fs.iter().enumerate() {
            let renamed = shuffle_ids(&x.tree, shuffle);
            prop_assert_eq!(canonical_form(&x.tree).unwrap(), canonical_form(&renamed).unwrap());
            for y in &fs[i + 1..] {
                let same = canonical_form(&x.tree).unwrap() == canonical_form(&y.tree).unwrap();
                prop_assert_eq!(same, oracle(&x.tree, &y.tree));
            }
        }
    }

    #[test]
    fn labelled_factors_are_pairwise_distinct(seed in any::<u64>()) {
        let Some(g) = small_graph(seed, 10) else { return Ok(()) };
        let fs = decompose(&identity_labels(&g)).unwrap();
        for (i, x) in fs.iter().enumerate() {
            for y in &fs[i + 1..] {
                prop_assert!(labelled_iso(&x.tree, &y.tree).unwrap().is_none());
            }
        }
    }

    #[test]
    fn labelled_witnesses_verify(seed in any::<u64>(), shuffle in any::<u64>()) {
        let Some(g) = small_graph(seed, 10) else { return Ok(()) };
        let g = identity_labels(&g);
        let h = shuffle_ids(&g, shuffle);
        let w = labelled_iso(&g, &h).unwrap().expect("labels survive renaming");
        prop_assert!(verify_witness(&g, &h, &w, true).is_ok());
    }
}

#[test]
fn decider_is_transitive_on_triples() {
    let graphs: Vec<IntReebGraph> = (0..40).filter_map(|s| small_graph(s % 8, 10)).collect();
    for a in &graphs {
        for b in &graphs {
            if !reeb_iso(a, b) {
                continue;
            }
            for c in &graphs {
                if reeb_iso(b, c) {
                    assert!(reeb_iso(a, c));
                }
            }
        }
    }
}

#[test]
fn example3_factors_agree_with_oracle() {
    let fs = decompose(&fixtures::example3::<i64>()).unwrap();
    for x in &fs {
        for y in &fs {
            assert_eq!(
                canonical_form(&x.tree).unwrap() == canonical_form(&y.tree).unwrap(),
                oracle(&x.tree, &y.tree)
            );
        }
    }
}
