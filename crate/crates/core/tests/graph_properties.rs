mod common;

use common::{corpus_spec, shuffle_ids, small_graph};
use proptest::prelude::*;
use reeb::{
    betti_reticulation, build_dag_view, decompose, generate, glue_back, minimize_critical_set,
    refine_to_levels, same_edge_structure, IntReebGraph, Rational, RationalReebGraph,
};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn to_rational(g: &IntReebGraph) -> RationalReebGraph {
    RationalReebGraph {
        levels: g.levels.iter().map(|&l| q(l, 1)).collect(),
        vertices: g.vertices.clone(),
        edges: g.edges.clone(),
        vertex_orders: g.vertex_orders.clone(),
        edge_orders: g.edge_orders.clone(),
        labels: g.labels.clone(),
        leaf_ranks: g.leaf_ranks.clone(),
    }
}

#[test]
fn generator_hits_every_requested_shape() {
    let mut produced = 0;
    for i in 0..1000 {
        let spec = corpus_spec(i);
        let g = generate::<i64>(&spec).unwrap_or_else(|e| panic!("{spec:?}: {e}"));
        assert!(g.validate().is_valid(), "{spec:?}: {}", g.validate());
        let view = build_dag_view(&g);
        assert_eq!(view.leaves.len(), spec.n_leaves, "{spec:?}");
        assert_eq!(view.check_betti().unwrap(), spec.betti, "{spec:?}");
        assert!(
            view.indeg.values().all(|&d| d <= spec.max_indeg),
            "{spec:?}"
        );
        assert_eq!(generate::<i64>(&spec).unwrap(), g);
        produced += 1;
    }
    assert_eq!(produced, 1000);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn betti_formulas_agree(i in 0u64..100_000) {
        let spec = corpus_spec(i);
        let Ok(g) = generate::<i64>(&spec) else { return Ok(()) };
        let view = build_dag_view(&g);
        prop_assert_eq!(view.betti_euler(), betti_reticulation(&view));
        prop_assert_eq!(view.betti_euler(), spec.betti);
    }

    #[test]
    fn factors_are_trees_that_glue_back(seed in any::<u64>()) {
        let Some(g) = small_graph(seed, 20) else { return Ok(()) };
        let view = build_dag_view(&g);
        let expected: usize = view.reticulations.iter().map(|r| view.indeg[r]).product();
        let factors = decompose(&g).unwrap();
        prop_assert_eq!(factors.len(), expected);
        let s = view.betti_euler();
        for f in &factors {
            prop_assert!(f.tree.validate().is_valid());
            let fv = build_dag_view(&f.tree);
            prop_assert_eq!(fv.betti_euler(), 0);
            prop_assert_eq!(f.new_leaf_provenance.len(), s);
            prop_assert_eq!(glue_back(f), g.clone().canonicalize());
        }
    }

    #[test]
    fn refinement_preserves_invariants(seed in any::<u64>(), extra in prop::collection::vec(1i64..40, 1..4)) {
        let Some(g) = small_graph(seed, 20) else { return Ok(()) };
        let g = to_rational(&g);
        let top = g.levels.last().unwrap().clone();
        let mut levels = g.levels.clone();
        // extra values strictly inside the range, in eighths
        for x in extra {
            let v = q(x, 8);
            if v > g.levels[0] && v < top {
                levels.push(v);
            }
        }
        levels.sort();
        levels.dedup();
        let r = refine_to_levels(&g, &levels).unwrap();
        prop_assert!(r.validate().is_valid());
        let (vg, vr) = (build_dag_view(&g), build_dag_view(&r));
        prop_assert_eq!(vg.betti_euler(), vr.betti_euler());
        prop_assert_eq!(vg.leaves.len(), vr.leaves.len());
        prop_assert_eq!(vg.reticulations.clone(), vr.reticulations.clone());
        prop_assert!(same_edge_structure(&g, &r));
        prop_assert_eq!(minimize_critical_set(&r).unwrap(), minimize_critical_set(&g).unwrap());
    }

    #[test]
    fn edge_structure_is_an_equivalence(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (Some(a), Some(b), Some(c)) = (small_graph(s1, 12), small_graph(s2, 12), small_graph(s3, 12)) else {
            return Ok(());
        };
        prop_assert!(same_edge_structure(&a, &a));
        prop_assert!(same_edge_structure(&a, &shuffle_ids(&a, s2)));
        prop_assert_eq!(same_edge_structure(&a, &b), same_edge_structure(&b, &a));
        if same_edge_structure(&a, &b) && same_edge_structure(&b, &c) {
            prop_assert!(same_edge_structure(&a, &c));
        }
        // a graph and any refinement of itself share edge structure
        let mid: Vec<i64> = a.levels.windows(2).filter(|w| w[1] - w[0] >= 2).map(|w| w[0] + 1).collect();
        let mut levels = a.levels.clone();
        levels.extend(mid);
        levels.sort();
        prop_assert!(same_edge_structure(&a, &refine_to_levels(&a, &levels).unwrap()));
    }
}
