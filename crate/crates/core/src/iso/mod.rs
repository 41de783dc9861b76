//! Isomorphism of Reeb graphs, decided three ways.
//!
//! - [`labelled_iso`]: edge labels force the edge bijection; linear time.
//! - [`reeb_iso`]: compares the multisets of canonical forms of the tree
//!   factors, after cheap invariant checks.
//! - [`brute_force_iso`]: backtracking search, used as the reference oracle.
//!
//! All three compare graphs over the union of their level sets, preserve
//! vertex and edge orders, and compare leaf ranks only when both sides have
//! them.

mod brute;
mod canonical;
mod labelled;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use brute::{brute_force_iso, brute_force_iso_with_budget, DEFAULT_BUDGET};
pub use canonical::{canonical_form, canonical_form_counted, CanonicalForm};
pub use labelled::labelled_iso;

use crate::critical::{refine_to_levels, same_edge_structure, union_levels};
use crate::dag::DagView;
use crate::decomposition::factors;
use crate::error::ReebError;
use crate::graph::ReebGraph;
use crate::scalar::Scalar;

/// Per-level vertex bijections and per-gap edge bijections, taken over the
/// common refinement of both graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismWitness {
    pub vertex_maps: Vec<BTreeMap<String, String>>,
    pub edge_maps: Vec<BTreeMap<String, String>>,
}

impl MorphismWitness {
    fn from_indices<T: Scalar>(
        a: &ReebGraph<T>,
        b: &ReebGraph<T>,
        sa: &brute::Side,
        sb: &brute::Side,
        vmap: &[usize],
        emap: &[usize],
    ) -> Self {
        let mut w = MorphismWitness {
            vertex_maps: vec![BTreeMap::new(); a.level_count()],
            edge_maps: vec![BTreeMap::new(); a.level_count().saturating_sub(1)],
        };
        debug_assert_eq!(a.level_count(), b.level_count());
        for (x, &y) in vmap.iter().enumerate() {
            w.vertex_maps[sa.level[x]].insert(sa.vid[x].clone(), sb.vid[y].clone());
        }
        for (e, &f) in emap.iter().enumerate() {
            w.edge_maps[sa.egap[e]].insert(sa.eid[e].clone(), sb.eid[f].clone());
        }
        w
    }

    pub fn vertex(&self, v: &str) -> Option<&str> {
        self.vertex_maps
            .iter()
            .find_map(|m| m.get(v))
            .map(String::as_str)
    }

    pub fn edge(&self, e: &str) -> Option<&str> {
        self.edge_maps
            .iter()
            .find_map(|m| m.get(e))
            .map(String::as_str)
    }
}

/// Checks a witness against both graphs from scratch: bijectivity per level
/// and gap, commutation with the down and up maps, order preservation in
/// both directions, and optionally labels and leaf ranks.
pub fn verify_witness<T: Scalar>(
    a: &ReebGraph<T>,
    b: &ReebGraph<T>,
    w: &MorphismWitness,
    check_labels: bool,
) -> Result<(), String> {
    let levels = union_levels(&a.levels, &b.levels);
    let a = refine_to_levels(a, &levels).map_err(|e| e.to_string())?;
    let b = refine_to_levels(b, &levels).map_err(|e| e.to_string())?;
    if w.vertex_maps.len() != a.level_count() || w.edge_maps.len() != a.edges.len() {
        return Err("witness shape does not match the levels".into());
    }
    for (i, m) in w.vertex_maps.iter().enumerate() {
        bijection(m, &a.vertices[i], &b.vertices[i]).map_err(|e| format!("level {i}: {e}"))?;
    }
    for (i, m) in w.edge_maps.iter().enumerate() {
        let ea: Vec<String> = a.edges[i].iter().map(|e| e.id.clone()).collect();
        let eb: Vec<String> = b.edges[i].iter().map(|e| e.id.clone()).collect();
        bijection(m, &ea, &eb).map_err(|e| format!("gap {i}: {e}"))?;
        let b_edges: HashMap<&str, _> = b.edges[i].iter().map(|e| (e.id.as_str(), e)).collect();
        for e in &a.edges[i] {
            let f = b_edges[m[&e.id].as_str()];
            if w.vertex_maps[i][&e.down] != f.down {
                return Err(format!("down map does not commute at edge '{}'", e.id));
            }
            if w.vertex_maps[i + 1][&e.up] != f.up {
                return Err(format!("up map does not commute at edge '{}'", e.id));
            }
            if check_labels && a.label(i, &e.id) != b.label(i, &f.id) {
                return Err(format!("label differs at edge '{}'", e.id));
            }
        }
    }
    for (i, (pa, pb)) in a.vertex_orders.iter().zip(&b.vertex_orders).enumerate() {
        same_order(pa.closure(), pb.closure(), &w.vertex_maps[i])
            .map_err(|e| format!("level {i}: {e}"))?;
    }
    for (i, (pa, pb)) in a.edge_orders.iter().zip(&b.edge_orders).enumerate() {
        same_order(pa.closure(), pb.closure(), &w.edge_maps[i])
            .map_err(|e| format!("gap {i}: {e}"))?;
    }
    if !a.leaf_ranks.is_empty() && !b.leaf_ranks.is_empty() {
        for (v, r) in &a.leaf_ranks {
            let image = w
                .vertex(v)
                .ok_or_else(|| format!("ranked vertex '{v}' unmapped"))?;
            if b.leaf_ranks.get(image) != Some(r) {
                return Err(format!("rank of '{v}' not preserved"));
            }
        }
        if a.leaf_ranks.len() != b.leaf_ranks.len() {
            return Err("rank counts differ".into());
        }
    }
    Ok(())
}

fn bijection(m: &BTreeMap<String, String>, from: &[String], to: &[String]) -> Result<(), String> {
    let domain: BTreeSet<&str> = m.keys().map(String::as_str).collect();
    let image: BTreeSet<&str> = m.values().map(String::as_str).collect();
    let from: BTreeSet<&str> = from.iter().map(String::as_str).collect();
    let to: BTreeSet<&str> = to.iter().map(String::as_str).collect();
    if domain != from {
        return Err("domain mismatch".into());
    }
    if image != to || image.len() != m.len() {
        return Err("not a bijection onto the target".into());
    }
    Ok(())
}

fn same_order(
    a: Option<BTreeSet<(String, String)>>,
    b: Option<BTreeSet<(String, String)>>,
    m: &BTreeMap<String, String>,
) -> Result<(), String> {
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err("cyclic order".into()),
    };
    let mapped: BTreeSet<(String, String)> = a
        .iter()
        .map(|(x, y)| (m[x].clone(), m[y].clone()))
        .collect();
    if mapped != b {
        return Err("order not preserved".into());
    }
    Ok(())
}

/// How a [`reeb_iso`] decision was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoStage {
    EdgeStructure,
    QuickReject,
    Factors,
    /// A side has several maxima, so the factor comparison does not apply.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub isomorphic: bool,
    pub stage: IsoStage,
    /// factors per side
    pub factor_count: usize,
    /// vertex encodings and relation visits spent on canonical forms
    pub work: u64,
}

/// Unlabelled isomorphism by comparing tree decompositions.
pub fn reeb_iso<T: Scalar>(a: &ReebGraph<T>, b: &ReebGraph<T>) -> bool {
    reeb_iso_report(a, b).isomorphic
}

pub fn reeb_iso_report<T: Scalar>(a: &ReebGraph<T>, b: &ReebGraph<T>) -> IsoReport {
    let report = |isomorphic, stage, factor_count, work| IsoReport {
        isomorphic,
        stage,
        factor_count,
        work,
    };
    if !same_edge_structure(a, b) {
        return report(false, IsoStage::EdgeStructure, 0, 0);
    }
    let levels = union_levels(&a.levels, &b.levels);
    let ranked = !a.leaf_ranks.is_empty() && !b.leaf_ranks.is_empty();
    let prepare = |g: &ReebGraph<T>| {
        let mut g = refine_to_levels(g, &levels).expect("union contains every level");
        g.labels = None;
        if !ranked {
            g.leaf_ranks.clear();
        }
        g
    };
    let (a, b) = (prepare(a), prepare(b));
    let (va, vb) = (DagView::build(&a), DagView::build(&b));
    if va.betti_euler() != vb.betti_euler()
        || va.leaves.len() != vb.leaves.len()
        || degree_profile(&va) != degree_profile(&vb)
    {
        return report(false, IsoStage::QuickReject, 0, 0);
    }
    let (fa, fb) = match (factor_forms(&a), factor_forms(&b)) {
        (Ok(fa), Ok(fb)) => (fa, fb),
        _ => {
            let found = brute_force_iso_with_budget(&a, &b, u64::MAX)
                .expect("unbounded search")
                .is_some();
            return report(found, IsoStage::Oracle, 0, 0);
        }
    };
    let work = fa.1 + fb.1;
    let count = fa.0.len();
    report(fa.0 == fb.0, IsoStage::Factors, count, work)
}

fn degree_profile<T>(view: &DagView<T>) -> Vec<(usize, usize, usize)> {
    let mut p: Vec<_> = view
        .indeg
        .keys()
        .map(|v| (view.vertex_level[v], view.indeg[v], view.outdeg[v]))
        .collect();
    p.sort_unstable();
    p
}

/// Sorted factor forms with cut leaves colored, and the work spent.
fn factor_forms<T: Scalar>(g: &ReebGraph<T>) -> Result<(Vec<CanonicalForm>, u64), ReebError> {
    let mut forms = Vec::new();
    let mut work = 0;
    for f in factors(g)? {
        let colors = f
            .new_leaf_provenance
            .keys()
            .map(|v| (v.clone(), "cut".to_string()))
            .collect();
        let (form, w) = canonical_form_counted(&f.tree, &colors)?;
        forms.push(form);
        work += w;
    }
    forms.sort();
    Ok((forms, work))
}
