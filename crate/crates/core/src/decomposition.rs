//! Tree decomposition: cutting every reticulation down to one kept edge.
//!
//! For a cut choice `w` picking one above-edge per reticulation `r`, the
//! factor `T_w` detaches each unchosen above-edge `e` from `r` and ends it at
//! a fresh leaf `cut:<e>` on `r`'s level, with the order cover `r < cut:<e>`.
//! Edge sets, labels and the upper map are untouched, and the quotient map
//! sends every `cut:<e>` back to its `r`.

use std::collections::BTreeMap;

use crate::dag::DagView;
use crate::error::ReebError;
use crate::graph::{ReebGraph, CUT_PREFIX};
use crate::scalar::Scalar;

/// One kept above-edge per reticulation, in reticulation sort order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutChoice {
    pub kept: Vec<(String, String)>,
}

impl CutChoice {
    pub fn kept_edge(&self, reticulation: &str) -> Option<&str> {
        self.kept
            .iter()
            .find(|(r, _)| r == reticulation)
            .map(|(_, e)| e.as_str())
    }
}

/// Id of the vertex that replaces the lower end of a cut edge.
pub fn cut_vertex_id(edge: &str) -> String {
    format!("{CUT_PREFIX}{edge}")
}

/// One ordered tree of the decomposition together with its quotient map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFactor<T> {
    pub tree: ReebGraph<T>,
    pub choice: CutChoice,
    /// New vertex id to `(source reticulation, cut edge)`.
    pub new_leaf_provenance: BTreeMap<String, (String, String)>,
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
}

/// Odometer over all cut choices; the last reticulation varies fastest.
#[derive(Clone, Debug)]
pub struct CutChoices {
    options: Vec<(String, Vec<String>)>,
    cursor: Option<Vec<usize>>,
}

impl CutChoices {
    pub fn new<T: Scalar>(view: &DagView<T>) -> Self {
        let options: Vec<(String, Vec<String>)> = view
            .sorted_reticulations()
            .into_iter()
            .map(|r| (r.to_string(), view.above_edges[r].clone()))
            .collect();
        let cursor = Some(vec![0; options.len()]);
        CutChoices { options, cursor }
    }

    /// Total number of choices, the product of reticulation indegrees.
    pub fn total(&self) -> u128 {
        self.options
            .iter()
            .map(|(_, es)| es.len() as u128)
            .product()
    }
}

impl Iterator for CutChoices {
    type Item = CutChoice;

    fn next(&mut self) -> Option<CutChoice> {
        let cursor = self.cursor.as_mut()?;
        let choice = CutChoice {
            kept: self
                .options
                .iter()
                .zip(cursor.iter())
                .map(|((r, es), &i)| (r.clone(), es[i].clone()))
                .collect(),
        };
        let mut pos = cursor.len();
        loop {
            if pos == 0 {
                self.cursor = None;
                break;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < self.options[pos].1.len() {
                break;
            }
            cursor[pos] = 0;
        }
        Some(choice)
    }
}

pub fn enumerate_cut_choices<T: Scalar>(view: &DagView<T>) -> Vec<CutChoice> {
    CutChoices::new(view).collect()
}

pub fn build_tree_factor<T: Scalar>(
    graph: &ReebGraph<T>,
    view: &DagView<T>,
    choice: &CutChoice,
) -> Result<TreeFactor<T>, ReebError> {
    if choice.kept.len() != view.reticulations.len() {
        return Err(ReebError::InvalidChoice(format!(
            "{} entries for {} reticulations",
            choice.kept.len(),
            view.reticulations.len()
        )));
    }
    let mut tree = graph.clone();
    let mut provenance = BTreeMap::new();
    let mut redirect: BTreeMap<&str, String> = BTreeMap::new();
    for (r, kept) in &choice.kept {
        let above = view
            .above_edges
            .get(r)
            .ok_or_else(|| ReebError::InvalidChoice(format!("'{r}' is not a reticulation")))?;
        if !above.contains(kept) {
            return Err(ReebError::InvalidChoice(format!(
                "'{kept}' is not incident from above '{r}'"
            )));
        }
        let level = view.vertex_level[r];
        for e in above.iter().filter(|e| *e != kept) {
            let new_vertex = cut_vertex_id(e);
            tree.vertices[level].push(new_vertex.clone());
            tree.vertex_orders[level].add_cover(r.clone(), new_vertex.clone());
            provenance.insert(new_vertex.clone(), (r.clone(), e.clone()));
            redirect.insert(e.as_str(), new_vertex);
        }
    }
    for es in &mut tree.edges {
        for e in es.iter_mut() {
            if let Some(v) = redirect.get(e.id.as_str()) {
                e.down = v.clone();
            }
        }
    }
    let mut vertex_map: BTreeMap<String, String> = graph
        .all_vertices()
        .map(|(_, v)| (v.to_string(), v.to_string()))
        .collect();
    for (v, (r, _)) in &provenance {
        vertex_map.insert(v.clone(), r.clone());
    }
    let edge_map = graph
        .all_edges()
        .map(|(_, e)| (e.id.clone(), e.id.clone()))
        .collect();
    Ok(TreeFactor {
        tree: tree.canonicalize(),
        choice: choice.clone(),
        new_leaf_provenance: provenance,
        vertex_map,
        edge_map,
    })
}

/// Lazily yields every factor; only one factor is alive at a time.
pub fn factors<'g, T: Scalar>(
    graph: &'g ReebGraph<T>,
) -> Result<impl Iterator<Item = TreeFactor<T>> + 'g, ReebError> {
    let view = DagView::build(graph);
    view.check_betti()?;
    let choices = CutChoices::new(&view);
    Ok(choices
        .map(move |c| build_tree_factor(graph, &view, &c).expect("enumerated choices are valid")))
}

/// All factors, in cut-choice order.
///
/// Requires a graph with a single maximum; otherwise some merge vertex closes
/// no cycle and cutting it would disconnect the graph.
pub fn decompose<T: Scalar>(graph: &ReebGraph<T>) -> Result<Vec<TreeFactor<T>>, ReebError> {
    Ok(factors(graph)?.collect())
}

/// Applies the quotient map: reattaches cut edges and drops the cut covers.
pub fn glue_back<T: Scalar>(factor: &TreeFactor<T>) -> ReebGraph<T> {
    let mut g = factor.tree.clone();
    for vs in &mut g.vertices {
        vs.retain(|v| !factor.new_leaf_provenance.contains_key(v));
    }
    for es in &mut g.edges {
        for e in es.iter_mut() {
            if let Some(target) = factor.vertex_map.get(&e.down) {
                e.down = target.clone();
            }
            if let Some(target) = factor.vertex_map.get(&e.up) {
                e.up = target.clone();
            }
        }
    }
    for poset in &mut g.vertex_orders {
        poset.covers.retain(|(lo, hi)| {
            !(factor
                .new_leaf_provenance
                .get(hi)
                .is_some_and(|(r, _)| r == lo))
        });
    }
    g.canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::edge_sequence;
    use crate::dag::{betti_euler, build_dag_view};
    use crate::fixtures;

    fn leaf_count<T: Scalar>(g: &ReebGraph<T>) -> usize {
        build_dag_view(g).leaves.len()
    }

    #[test]
    fn example2_has_two_five_leaf_factors() {
        let g = fixtures::example2::<i64>();
        let view = build_dag_view(&g);
        let choices = enumerate_cut_choices(&view);
        assert_eq!(choices.len(), 2);
        let fs = decompose(&g).unwrap();
        assert_eq!(fs.len(), 2);
        let cut_edges: Vec<Vec<&str>> = fs
            .iter()
            .map(|f| {
                f.new_leaf_provenance
                    .values()
                    .map(|(_, e)| e.as_str())
                    .collect()
            })
            .collect();
        assert_eq!(cut_edges, vec![vec!["e6"], vec!["e5"]]);
        for f in &fs {
            assert_eq!(leaf_count(&f.tree), 5);
            assert_eq!(betti_euler(&f.tree), 0);
            assert!(f.tree.validate().is_valid(), "{}", f.tree.validate());
            assert_eq!(glue_back(f), g);
        }
        assert_eq!(
            fs[0].new_leaf_provenance["cut:e6"],
            ("r".to_string(), "e6".to_string())
        );
    }

    #[test]
    fn example3_factor_keeping_e1() {
        let g = fixtures::example3::<i64>();
        let view = build_dag_view(&g);
        let choice = CutChoice {
            kept: vec![("r".into(), "e1".into())],
        };
        let f = build_tree_factor(&g, &view, &choice).unwrap();
        let covers: Vec<(&str, &str)> = f.tree.vertex_orders[0]
            .covers
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        assert_eq!(covers, vec![("r", "cut:e2"), ("r", "cut:e3")]);
        assert_eq!(f.new_leaf_provenance.len(), 2);
        assert_eq!(betti_euler(&f.tree), 0);
        // r, cut:e2, cut:e3
        assert_eq!(leaf_count(&f.tree), 3);
        assert_eq!(decompose(&g).unwrap().len(), 3);
    }

    #[test]
    fn tree_input_yields_itself() {
        let g = fixtures::single_edge::<i64>();
        let view = build_dag_view(&g);
        let choices = enumerate_cut_choices(&view);
        assert_eq!(choices, vec![CutChoice { kept: vec![] }]);
        let f = build_tree_factor(&g, &view, &choices[0]).unwrap();
        assert_eq!(f.tree, g);
        assert!(f.vertex_map.iter().all(|(a, b)| a == b));
        assert_eq!(glue_back(&f), g);
    }

    #[test]
    fn two_diamonds_give_four_factors() {
        let g = fixtures::two_diamonds::<i64>();
        let fs = decompose(&g).unwrap();
        assert_eq!(fs.len(), 4);
        for f in &fs {
            assert_eq!(edge_sequence(&f.tree), edge_sequence(&g));
            assert_eq!(glue_back(f), g);
        }
    }

    #[test]
    fn invalid_choices_are_rejected() {
        let g = fixtures::example2::<i64>();
        let view = build_dag_view(&g);
        let bad = CutChoice {
            kept: vec![("r".into(), "e7".into())],
        };
        assert!(matches!(
            build_tree_factor(&g, &view, &bad),
            Err(ReebError::InvalidChoice(_))
        ));
        let bad = CutChoice { kept: vec![] };
        assert!(matches!(
            build_tree_factor(&g, &view, &bad),
            Err(ReebError::InvalidChoice(_))
        ));
    }

    #[test]
    fn odometer_order_is_lexicographic() {
        let g = fixtures::two_diamonds::<i64>();
        let view = build_dag_view(&g);
        let kept: Vec<Vec<String>> = enumerate_cut_choices(&view)
            .into_iter()
            .map(|c| c.kept.into_iter().map(|(_, e)| e).collect())
            .collect();
        assert_eq!(
            kept,
            vec![
                vec!["d1", "b1"],
                vec!["d1", "b2"],
                vec!["d2", "b1"],
                vec!["d2", "b2"]
            ]
        );
        assert_eq!(CutChoices::new(&view).total(), 4);
    }
}
