//! Directed view of a Reeb graph: edges point from the higher endpoint to the
//! lower one, so `indeg` counts edges incident from above and `outdeg` edges
//! incident from below.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::ReebError;
use crate::graph::ReebGraph;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Tree,
    Reticulation,
    Leaf,
    Regular,
}

/// Primary classification plus the leaf flag. A reticulation-leaf has kind
/// `Reticulation` and `leaf == true`; a plain leaf has kind `Leaf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexClass {
    pub kind: VertexKind,
    pub leaf: bool,
}

impl VertexClass {
    pub fn classify(indeg: usize, outdeg: usize) -> Self {
        let leaf = outdeg == 0 || (outdeg == 1 && indeg == 0);
        let kind = if indeg >= 2 {
            VertexKind::Reticulation
        } else if leaf {
            VertexKind::Leaf
        } else if indeg == 1 && outdeg == 1 {
            VertexKind::Regular
        } else {
            VertexKind::Tree
        };
        VertexClass { kind, leaf }
    }

    pub fn is_reticulation(&self) -> bool {
        self.kind == VertexKind::Reticulation
    }

    /// Tree-vertex in the broad sense: every vertex that is not a reticulation.
    pub fn is_tree_vertex(&self) -> bool {
        !self.is_reticulation()
    }
}

/// Snapshot of degrees, classes and weights of a graph.
#[derive(Clone, Debug)]
pub struct DagView<T> {
    pub indeg: BTreeMap<String, usize>,
    pub outdeg: BTreeMap<String, usize>,
    pub classes: BTreeMap<String, VertexClass>,
    pub leaves: BTreeSet<String>,
    pub tree_vertices: BTreeSet<String>,
    pub reticulations: BTreeSet<String>,
    pub vertex_level: BTreeMap<String, usize>,
    pub vertex_weights: BTreeMap<String, T>,
    pub edge_weights: BTreeMap<String, T>,
    /// Edges incident from above each reticulation, sorted by id.
    pub above_edges: BTreeMap<String, Vec<String>>,
    vertex_count: usize,
    edge_count: usize,
}

impl<T: Scalar> DagView<T> {
    pub fn build(graph: &ReebGraph<T>) -> Self {
        let idx = graph.index();
        let mut view = DagView {
            indeg: BTreeMap::new(),
            outdeg: BTreeMap::new(),
            classes: BTreeMap::new(),
            leaves: BTreeSet::new(),
            tree_vertices: BTreeSet::new(),
            reticulations: BTreeSet::new(),
            vertex_level: BTreeMap::new(),
            vertex_weights: BTreeMap::new(),
            edge_weights: BTreeMap::new(),
            above_edges: BTreeMap::new(),
            vertex_count: graph.vertex_count(),
            edge_count: graph.edge_count(),
        };
        for (level, v) in graph.all_vertices() {
            let (indeg, outdeg) = (idx.indeg(v), idx.outdeg(v));
            let class = VertexClass::classify(indeg, outdeg);
            view.indeg.insert(v.to_string(), indeg);
            view.outdeg.insert(v.to_string(), outdeg);
            view.classes.insert(v.to_string(), class);
            view.vertex_level.insert(v.to_string(), level);
            view.vertex_weights
                .insert(v.to_string(), graph.levels[level].clone());
            if class.leaf {
                view.leaves.insert(v.to_string());
            }
            if class.is_reticulation() {
                view.reticulations.insert(v.to_string());
                let mut above: Vec<String> = idx.above[v].iter().map(|e| e.to_string()).collect();
                above.sort();
                view.above_edges.insert(v.to_string(), above);
            } else {
                view.tree_vertices.insert(v.to_string());
            }
        }
        for (gap, e) in graph.all_edges() {
            let weight = graph.levels[gap + 1].clone() - graph.levels[gap].clone();
            view.edge_weights.insert(e.id.clone(), weight);
        }
        view
    }

    /// Reticulations ordered by `(level, id)`.
    pub fn sorted_reticulations(&self) -> Vec<&str> {
        let mut rs: Vec<&str> = self.reticulations.iter().map(String::as_str).collect();
        rs.sort_by_key(|r| (self.vertex_level[*r], *r));
        rs
    }

    /// Vertices with no edge incident from above.
    pub fn roots(&self) -> Vec<&str> {
        self.indeg
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(v, _)| v.as_str())
            .collect()
    }

    pub fn betti_euler(&self) -> usize {
        (self.edge_count + 1).saturating_sub(self.vertex_count)
    }

    /// Errors unless both Betti formulas agree, which for a connected graph
    /// holds exactly when it has a single maximum.
    pub fn check_betti(&self) -> Result<usize, ReebError> {
        let euler = self.betti_euler();
        let reticulation = betti_reticulation(self);
        if euler == reticulation {
            Ok(euler)
        } else {
            Err(ReebError::InconsistentBetti {
                euler,
                reticulation,
            })
        }
    }
}

pub fn build_dag_view<T: Scalar>(graph: &ReebGraph<T>) -> DagView<T> {
    DagView::build(graph)
}

/// `|E| - |V| + 1`.
pub fn betti_euler<T: Scalar>(graph: &ReebGraph<T>) -> usize {
    (graph.edge_count() + 1).saturating_sub(graph.vertex_count())
}

/// Sum of `indeg - 1` over reticulations.
pub fn betti_reticulation<T>(view: &DagView<T>) -> usize {
    view.reticulations.iter().map(|r| view.indeg[r] - 1).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn example3_has_one_reticulation_leaf() {
        let g = fixtures::example3::<i64>();
        let v = build_dag_view(&g);
        assert_eq!(v.reticulations.iter().collect::<Vec<_>>(), vec!["r"]);
        assert_eq!(v.indeg["r"], 3);
        assert_eq!(
            v.classes["r"],
            VertexClass {
                kind: VertexKind::Reticulation,
                leaf: true
            }
        );
        assert!(v.leaves.contains("r"));
        assert_eq!(v.leaves.len(), 1);
        assert_eq!(betti_euler(&g), 2);
        assert_eq!(betti_reticulation(&v), 2);
    }

    #[test]
    fn single_edge_has_two_leaves() {
        let v = build_dag_view(&fixtures::single_edge::<i64>());
        assert_eq!(v.leaves.len(), 2);
        assert!(v.reticulations.is_empty());
        assert_eq!(betti_reticulation(&v), 0);
    }

    #[test]
    fn example2_classification() {
        let g = fixtures::example2::<i64>();
        let v = build_dag_view(&g);
        assert_eq!(v.reticulations.iter().collect::<Vec<_>>(), vec!["r"]);
        assert_eq!(v.indeg["r"], 2);
        assert_eq!(
            v.leaves,
            ["l1", "l2", "l3", "l4"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        assert_eq!(betti_euler(&g), 1);
        assert_eq!(v.check_betti().unwrap(), 1);
        assert_eq!(v.above_edges["r"], vec!["e5", "e6"]);
    }

    #[test]
    fn two_reticulations_of_indegree_two() {
        let g = fixtures::two_diamonds::<i64>();
        let v = build_dag_view(&g);
        assert_eq!(betti_reticulation(&v), 2);
        assert_eq!(betti_euler(&g), 2);
        assert_eq!(v.sorted_reticulations(), vec!["r2", "r1"]);
    }

    #[test]
    fn degree_sums_and_weights() {
        let g = fixtures::example2::<i64>();
        let v = build_dag_view(&g);
        assert_eq!(v.indeg.values().sum::<usize>(), g.edge_count());
        assert_eq!(v.outdeg.values().sum::<usize>(), g.edge_count());
        assert!(v.edge_weights.values().all(|w| *w > 0));
    }

    #[test]
    fn several_maxima_are_diagnosed() {
        let g = ReebGraph::<i64>::builder(vec![0, 1])
            .vertex(0, "b")
            .vertices(1, ["t1", "t2"])
            .edge(0, "x", "b", "t1")
            .edge(0, "y", "b", "t2")
            .build()
            .unwrap();
        let v = build_dag_view(&g);
        assert!(matches!(
            v.check_betti(),
            Err(ReebError::InconsistentBetti {
                euler: 0,
                reticulation: 1
            })
        ));
    }

    #[test]
    fn classification_rules() {
        assert_eq!(VertexClass::classify(1, 1).kind, VertexKind::Regular);
        assert_eq!(VertexClass::classify(0, 1).kind, VertexKind::Leaf);
        assert_eq!(VertexClass::classify(1, 0).kind, VertexKind::Leaf);
        assert_eq!(VertexClass::classify(0, 2).kind, VertexKind::Tree);
        assert_eq!(VertexClass::classify(1, 3).kind, VertexKind::Tree);
        let c = VertexClass::classify(2, 0);
        assert!(c.is_reticulation() && c.leaf);
        let c = VertexClass::classify(2, 1);
        assert!(c.is_reticulation() && !c.leaf);
    }
}
