//! Backtracking search for a level-preserving isomorphism.
//!
//! Vertices are partitioned by (level, indeg, outdeg, order degrees, rank) and
//! mapped in breadth-first order so that each new vertex already has a mapped
//! neighbor to check edge multiplicities against. Once all vertices are
//! mapped, edges are matched inside their parallel classes subject to edge
//! orders and labels.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::MorphismWitness;
use crate::critical::{refine_to_levels, same_edge_structure, union_levels};
use crate::error::ReebError;
use crate::graph::ReebGraph;
use crate::scalar::Scalar;

/// Default cap on search nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Exact decision by search; compares labels and leaf ranks only when both
/// graphs carry them.
pub fn brute_force_iso<T: Scalar>(
    a: &ReebGraph<T>,
    b: &ReebGraph<T>,
) -> Result<Option<MorphismWitness>, ReebError> {
    brute_force_iso_with_budget(a, b, DEFAULT_BUDGET)
}

pub fn brute_force_iso_with_budget<T: Scalar>(
    a: &ReebGraph<T>,
    b: &ReebGraph<T>,
    budget: u64,
) -> Result<Option<MorphismWitness>, ReebError> {
    if !same_edge_structure(a, b) {
        return Ok(None);
    }
    let levels = union_levels(&a.levels, &b.levels);
    let a = refine_to_levels(a, &levels)?;
    let b = refine_to_levels(b, &levels)?;
    let use_labels = a.labels.is_some() && b.labels.is_some();
    let use_ranks = !a.leaf_ranks.is_empty() && !b.leaf_ranks.is_empty();
    let sa = Side::new(&a, use_ranks);
    let sb = Side::new(&b, use_ranks);
    let mut sig_a: Vec<_> = sa.sig.clone();
    let mut sig_b: Vec<_> = sb.sig.clone();
    sig_a.sort();
    sig_b.sort();
    if sig_a != sig_b {
        return Ok(None);
    }
    let mut search = Search {
        a: &sa,
        b: &sb,
        ga: &a,
        gb: &b,
        use_labels,
        order: bfs_order(&sa),
        map: vec![usize::MAX; sa.n],
        used: vec![false; sb.n],
        nodes: 0,
        budget,
        edge_map: None,
    };
    if search.vertices(0)? {
        let vmap = &search.map;
        let emap = search.edge_map.take().expect("set on success");
        Ok(Some(MorphismWitness::from_indices(
            &a, &b, &sa, &sb, vmap, &emap,
        )))
    } else {
        Ok(None)
    }
}

/// Integer view of one graph.
pub(super) struct Side {
    pub(super) n: usize,
    pub(super) vid: Vec<String>,
    pub(super) level: Vec<usize>,
    pub(super) sig: Vec<(usize, usize, usize, usize, usize, Option<u64>)>,
    /// undirected neighbor multiplicities
    pub(super) mult: Vec<BTreeMap<usize, usize>>,
    /// strict order closure on vertices, `(lo, hi)`
    pub(super) vorder: BTreeSet<(usize, usize)>,
    pub(super) eid: Vec<String>,
    pub(super) egap: Vec<usize>,
    pub(super) ends: Vec<(usize, usize)>,
    pub(super) eorder: BTreeSet<(usize, usize)>,
}

impl Side {
    pub(super) fn new<T: Scalar>(g: &ReebGraph<T>, use_ranks: bool) -> Self {
        let mut vix: HashMap<&str, usize> = HashMap::new();
        let mut vid = Vec::new();
        let mut level = Vec::new();
        for (i, v) in g.all_vertices() {
            vix.insert(v, vid.len());
            vid.push(v.to_string());
            level.push(i);
        }
        let n = vid.len();
        let mut indeg = vec![0; n];
        let mut outdeg = vec![0; n];
        let mut mult = vec![BTreeMap::new(); n];
        let mut eix: HashMap<&str, usize> = HashMap::new();
        let mut eid = Vec::new();
        let mut egap = Vec::new();
        let mut ends = Vec::new();
        for (gap, e) in g.all_edges() {
            let (lo, hi) = (vix[e.down.as_str()], vix[e.up.as_str()]);
            indeg[lo] += 1;
            outdeg[hi] += 1;
            *mult[lo].entry(hi).or_insert(0) += 1;
            *mult[hi].entry(lo).or_insert(0) += 1;
            eix.insert(e.id.as_str(), eid.len());
            eid.push(e.id.clone());
            egap.push(gap);
            ends.push((lo, hi));
        }
        let mut vorder = BTreeSet::new();
        for p in &g.vertex_orders {
            for (x, y) in p.closure().unwrap_or_else(|| p.covers.clone()) {
                vorder.insert((vix[x.as_str()], vix[y.as_str()]));
            }
        }
        let mut eorder = BTreeSet::new();
        for p in &g.edge_orders {
            for (x, y) in p.closure().unwrap_or_else(|| p.covers.clone()) {
                eorder.insert((eix[x.as_str()], eix[y.as_str()]));
            }
        }
        let mut below = vec![0; n];
        let mut above = vec![0; n];
        for &(x, y) in &vorder {
            above[x] += 1;
            below[y] += 1;
        }
        let sig = (0..n)
            .map(|v| {
                let rank = if use_ranks {
                    g.leaf_ranks.get(&vid[v]).copied()
                } else {
                    None
                };
                (level[v], indeg[v], outdeg[v], below[v], above[v], rank)
            })
            .collect();
        Side {
            n,
            vid,
            level,
            sig,
            mult,
            vorder,
            eid,
            egap,
            ends,
            eorder,
        }
    }
}

fn bfs_order(s: &Side) -> Vec<usize> {
    // rarest signature class first
    let mut class_size: HashMap<_, usize> = HashMap::new();
    for sig in &s.sig {
        *class_size.entry(*sig).or_insert(0) += 1;
    }
    let mut seen = vec![false; s.n];
    let mut order = Vec::with_capacity(s.n);
    let mut starts: Vec<usize> = (0..s.n).collect();
    starts.sort_by_key(|&v| (class_size[&s.sig[v]], v));
    for start in starts {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in s.mult[v].keys() {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'s, T> {
    a: &'s Side,
    b: &'s Side,
    ga: &'s ReebGraph<T>,
    gb: &'s ReebGraph<T>,
    use_labels: bool,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    edge_map: Option<Vec<usize>>,
}

impl<T: Scalar> Search<'_, T> {
    fn tick(&mut self) -> Result<(), ReebError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ReebError::SizeLimitExceeded(self.budget));
        }
        Ok(())
    }

    fn vertices(&mut self, depth: usize) -> Result<bool, ReebError> {
        if depth == self.order.len() {
            return self.edges();
        }
        let x = self.order[depth];
        for y in 0..self.b.n {
            if self.used[y] || self.a.sig[x] != self.b.sig[y] {
                continue;
            }
            self.tick()?;
            if !self.compatible(x, y) {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.vertices(depth + 1)? {
                return Ok(true);
            }
            self.map[x] = usize::MAX;
            self.used[y] = false;
        }
        Ok(false)
    }

    fn compatible(&self, x: usize, y: usize) -> bool {
        for (&w, &m) in &self.a.mult[x] {
            let fw = self.map[w];
            if fw != usize::MAX && self.b.mult[y].get(&fw).copied().unwrap_or(0) != m {
                return false;
            }
        }
        // every mapped neighbor of y must be the image of a neighbor of x
        for &fw in self.b.mult[y].keys() {
            if self.used[fw] && !self.a.mult[x].keys().any(|&w| self.map[w] == fw) {
                return false;
            }
        }
        for w in 0..self.a.n {
            let fw = self.map[w];
            if fw == usize::MAX || self.a.level[w] != self.a.level[x] {
                continue;
            }
            if self.a.vorder.contains(&(x, w)) != self.b.vorder.contains(&(y, fw))
                || self.a.vorder.contains(&(w, x)) != self.b.vorder.contains(&(fw, y))
            {
                return false;
            }
        }
        true
    }

    fn edges(&mut self) -> Result<bool, ReebError> {
        let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (f, &ends) in self.b.ends.iter().enumerate() {
            by_ends.entry(ends).or_default().push(f);
        }
        let candidates: Vec<Vec<usize>> = self
            .a
            .ends
            .iter()
            .map(|&(lo, hi)| {
                by_ends
                    .get(&(self.map[lo], self.map[hi]))
                    .cloned()
                    .unwrap_or_default()
            })
            .collect();
        let mut emap = vec![usize::MAX; self.a.eid.len()];
        let mut eused = vec![false; self.b.eid.len()];
        if self.match_edges(0, &candidates, &mut emap, &mut eused)? {
            self.edge_map = Some(emap);
            return Ok(true);
        }
        Ok(false)
    }

    fn match_edges(
        &mut self,
        e: usize,
        candidates: &[Vec<usize>],
        emap: &mut Vec<usize>,
        eused: &mut Vec<bool>,
    ) -> Result<bool, ReebError> {
        if e == emap.len() {
            return Ok(true);
        }
        for &f in &candidates[e] {
            if eused[f] {
                continue;
            }
            self.tick()?;
            if self.use_labels {
                let la = self.ga.label(self.a.egap[e], &self.a.eid[e]);
                let lb = self.gb.label(self.b.egap[f], &self.b.eid[f]);
                if la != lb {
                    continue;
                }
            }
            let ok = (0..e).all(|d| {
                self.a.egap[d] != self.a.egap[e]
                    || (self.a.eorder.contains(&(e, d)) == self.b.eorder.contains(&(f, emap[d]))
                        && self.a.eorder.contains(&(d, e)) == self.b.eorder.contains(&(emap[d], f)))
            });
            if !ok {
                continue;
            }
            emap[e] = f;
            eused[f] = true;
            if self.match_edges(e + 1, candidates, emap, eused)? {
                return Ok(true);
            }
            emap[e] = usize::MAX;
            eused[f] = false;
        }
        Ok(false)
    }
}
