//! Critical-set canonicalization and refinement, plus edge sequences.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::ReebError;
use crate::graph::{Edge, LevelPoset, ReebGraph};
use crate::scalar::Scalar;

/// Per-gap edge cardinalities of a graph, with its level list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSequence<T> {
    pub levels: Vec<T>,
    pub cardinalities: Vec<usize>,
}

impl<T> EdgeSequence<T> {
    pub fn total(&self) -> usize {
        self.cardinalities.iter().sum()
    }
}

pub fn edge_sequence<T: Scalar>(graph: &ReebGraph<T>) -> EdgeSequence<T> {
    EdgeSequence {
        levels: graph.levels.clone(),
        cardinalities: graph.edges.iter().map(Vec::len).collect(),
    }
}

/// Whether two graphs have equal edge sequences over the union of their level
/// sets. Graphs over different level ranges are never equivalent.
pub fn same_edge_structure<T: Scalar>(a: &ReebGraph<T>, b: &ReebGraph<T>) -> bool {
    if a.levels.first() != b.levels.first() || a.levels.last() != b.levels.last() {
        return false;
    }
    let union = union_levels(&a.levels, &b.levels);
    match (refine_to_levels(a, &union), refine_to_levels(b, &union)) {
        (Ok(ra), Ok(rb)) => edge_sequence(&ra) == edge_sequence(&rb),
        _ => false,
    }
}

pub fn union_levels<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .chain(b)
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn fresh_id(base: String, taken: &mut HashSet<String>) -> String {
    let mut id = base;
    while taken.contains(&id) {
        id.push('\'');
    }
    taken.insert(id.clone());
    id
}

/// Label of piece `j` (counted from the bottom) of an edge split into `pieces`.
pub fn piece_label(label: &str, j: usize, pieces: usize) -> String {
    let mut out = label.to_string();
    for _ in 0..j {
        out.push_str(".hi");
    }
    if j + 1 < pieces {
        out.push_str(".lo");
    }
    out
}

/// Subdivides every edge that crosses an inserted level.
///
/// The bottom piece of a split edge keeps the original id; the fresh vertex on
/// inserted level `a` is `<edge>@<a>` and the piece above it `<edge>+<a>`.
pub fn refine_to_levels<T: Scalar>(
    graph: &ReebGraph<T>,
    new_levels: &[T],
) -> Result<ReebGraph<T>, ReebError> {
    if new_levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ReebError::BadLevelSet(
            "levels must be strictly increasing".into(),
        ));
    }
    let old: BTreeSet<&T> = graph.levels.iter().collect();
    let new: BTreeSet<&T> = new_levels.iter().collect();
    if let Some(missing) = old.iter().find(|l| !new.contains(*l)) {
        return Err(ReebError::BadLevelSet(format!(
            "level {missing} of the graph is missing"
        )));
    }
    let (Some(lo), Some(hi)) = (graph.levels.first(), graph.levels.last()) else {
        return Err(ReebError::BadLevelSet("graph has no levels".into()));
    };
    if let Some(out) = new_levels.iter().find(|l| *l < lo || *l > hi) {
        return Err(ReebError::BadLevelSet(format!(
            "level {out} lies outside [{lo}, {hi}]"
        )));
    }
    if new_levels.len() == graph.levels.len() {
        return Ok(graph.clone().canonicalize());
    }

    let mut taken: HashSet<String> = graph
        .all_vertices()
        .map(|(_, v)| v.to_string())
        .chain(graph.all_edges().map(|(_, e)| e.id.clone()))
        .collect();
    let position: BTreeMap<&T, usize> =
        new_levels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut out = ReebGraph::empty(new_levels.to_vec());
    out.leaf_ranks = graph.leaf_ranks.clone();
    let mut labels = graph
        .labels
        .as_ref()
        .map(|_| vec![BTreeMap::new(); new_levels.len() - 1]);

    for (i, vs) in graph.vertices.iter().enumerate() {
        let j = position[&graph.levels[i]];
        out.vertices[j] = vs.clone();
        out.vertex_orders[j] = graph.vertex_orders[i].clone();
    }

    for (gap, es) in graph.edges.iter().enumerate() {
        let start = position[&graph.levels[gap]];
        let end = position[&graph.levels[gap + 1]];
        let pieces = end - start;
        // piece ids and inserted vertex ids per original edge
        let mut piece_ids: BTreeMap<&str, Vec<String>> = BTreeMap::new();
        let mut vertex_ids: BTreeMap<&str, Vec<String>> = BTreeMap::new();
        for e in es {
            let mut ps = vec![e.id.clone()];
            let mut vs = Vec::new();
            for lvl in &new_levels[start + 1..end] {
                let text = lvl.to_decimal();
                vs.push(fresh_id(format!("{}@{}", e.id, text), &mut taken));
                ps.push(fresh_id(format!("{}+{}", e.id, text), &mut taken));
            }
            for (p, piece) in ps.iter().enumerate() {
                let down = if p == 0 {
                    e.down.clone()
                } else {
                    vs[p - 1].clone()
                };
                let up = if p + 1 == pieces {
                    e.up.clone()
                } else {
                    vs[p].clone()
                };
                out.edges[start + p].push(Edge::new(piece.clone(), down, up));
                if let (Some(ls), Some(label)) = (labels.as_mut(), graph.label(gap, &e.id)) {
                    ls[start + p].insert(piece.clone(), piece_label(label, p, pieces));
                }
            }
            for (p, v) in vs.iter().enumerate() {
                out.vertices[start + 1 + p].push(v.clone());
            }
            piece_ids.insert(e.id.as_str(), ps);
            vertex_ids.insert(e.id.as_str(), vs);
        }
        for (a, b) in &graph.edge_orders[gap].covers {
            let (Some(pa), Some(pb)) = (piece_ids.get(a.as_str()), piece_ids.get(b.as_str()))
            else {
                continue;
            };
            for p in 0..pieces {
                out.edge_orders[start + p].add_cover(pa[p].clone(), pb[p].clone());
            }
            let (va, vb) = (&vertex_ids[a.as_str()], &vertex_ids[b.as_str()]);
            for p in 0..pieces - 1 {
                out.vertex_orders[start + 1 + p].add_cover(va[p].clone(), vb[p].clone());
            }
        }
    }
    out.labels = labels;
    Ok(out.canonicalize())
}

/// Splices out every interior level whose vertices are all regular, leaving
/// the unique minimal level set. Labels are dropped when any splice happens,
/// since merged edges have no label of their own.
pub fn minimize_critical_set<T: Scalar>(graph: &ReebGraph<T>) -> Result<ReebGraph<T>, ReebError> {
    let mut g = graph.clone().canonicalize();
    let mut spliced = false;
    let mut level = 1;
    while level + 1 < g.levels.len() {
        let idx = g.index();
        let removable = g.vertices[level]
            .iter()
            .all(|v| idx.indeg(v) == 1 && idx.outdeg(v) == 1);
        if !removable {
            level += 1;
            continue;
        }
        if !g.vertex_orders[level].is_trivial()
            || !g.edge_orders[level - 1].is_trivial()
            || !g.edge_orders[level].is_trivial()
        {
            return Err(ReebError::OrderConflict { level });
        }
        let below_of: BTreeMap<String, Edge> = g.edges[level - 1]
            .iter()
            .map(|e| (e.up.clone(), e.clone()))
            .collect();
        let above_of: BTreeMap<String, Edge> = g.edges[level]
            .iter()
            .map(|e| (e.down.clone(), e.clone()))
            .collect();
        let mut merged: Vec<Edge> = Vec::with_capacity(g.edges[level].len());
        for v in &g.vertices[level] {
            let lower = &below_of[v];
            let upper = &above_of[v];
            merged.push(Edge::new(
                lower.id.clone(),
                lower.down.clone(),
                upper.up.clone(),
            ));
        }
        let removed: Vec<String> = g.vertices.remove(level);
        for v in &removed {
            g.leaf_ranks.remove(v);
        }
        g.levels.remove(level);
        g.vertex_orders.remove(level);
        g.edges.remove(level);
        g.edges[level - 1] = merged;
        g.edge_orders.remove(level);
        g.edge_orders[level - 1] = LevelPoset::trivial();
        spliced = true;
    }
    if spliced {
        g.labels = None;
    }
    Ok(g.canonicalize())
}
