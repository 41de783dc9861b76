//! Isomorphism of labelled graphs over a common edge structure.
//!
//! Labels pin down the edge bijection; the vertex bijection is then read off
//! the down and up maps. The candidate is accepted iff it is well defined,
//! bijective and order-preserving.

use std::collections::{BTreeMap, BTreeSet};

use super::{verify_witness, MorphismWitness};
use crate::critical::{refine_to_levels, same_edge_structure, union_levels};
use crate::error::ReebError;
use crate::graph::ReebGraph;
use crate::scalar::Scalar;

pub fn labelled_iso<T: Scalar>(
    a: &ReebGraph<T>,
    b: &ReebGraph<T>,
) -> Result<Option<MorphismWitness>, ReebError> {
    if a.labels.is_none() || b.labels.is_none() {
        return Err(ReebError::MissingLabels);
    }
    if !same_edge_structure(a, b) {
        return Ok(None);
    }
    let levels = union_levels(&a.levels, &b.levels);
    let a = refine_to_levels(a, &levels)?;
    let b = refine_to_levels(b, &levels)?;
    let (la, lb) = (
        a.labels.as_ref().expect("checked"),
        b.labels.as_ref().expect("checked"),
    );

    let mut w = MorphismWitness {
        vertex_maps: vec![BTreeMap::new(); a.level_count()],
        edge_maps: vec![BTreeMap::new(); a.edges.len()],
    };
    for gap in 0..a.edges.len() {
        let by_label = inverse(&lb[gap]).ok_or(ReebError::LabelMismatch(gap))?;
        let universe_a: BTreeSet<&String> = la[gap].values().collect();
        if universe_a.len() != la[gap].len() || universe_a != by_label.keys().copied().collect() {
            return Err(ReebError::LabelMismatch(gap));
        }
        let b_edges: BTreeMap<&str, _> = b.edges[gap].iter().map(|e| (e.id.as_str(), e)).collect();
        for e in &a.edges[gap] {
            let label = la[gap].get(&e.id).ok_or(ReebError::LabelMismatch(gap))?;
            let f = b_edges[by_label[label]];
            w.edge_maps[gap].insert(e.id.clone(), f.id.clone());
            for (level, x, y) in [(gap, &e.down, &f.down), (gap + 1, &e.up, &f.up)] {
                match w.vertex_maps[level].get(x) {
                    Some(prev) if prev != y => return Ok(None),
                    _ => {
                        w.vertex_maps[level].insert(x.clone(), y.clone());
                    }
                }
            }
        }
    }
    Ok(verify_witness(&a, &b, &w, true).is_ok().then_some(w))
}

/// Label to edge id, or `None` if some label is used twice.
fn inverse(labels: &BTreeMap<String, String>) -> Option<BTreeMap<&String, &str>> {
    let mut out = BTreeMap::new();
    for (e, l) in labels {
        if out.insert(l, e.as_str()).is_some() {
            return None;
        }
    }
    Some(out)
}
