//! The leveled combinatorial Reeb graph.
//!
//! A graph lives over strictly increasing levels `a_0 < … < a_{k-1}`. Level `i`
//! holds a set of vertices; gap `i` (between levels `i` and `i + 1`) holds a set
//! of edges, each attached to one vertex below (`down`) and one above (`up`).
//! Optional per-level posets, per-gap edge labels and leaf ranks ride along.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::ReebError;
use crate::scalar::{Rational, Scalar};

/// Reserved prefix for vertices created by cutting a reticulation.
pub const CUT_PREFIX: &str = "cut:";

/// One edge of gap `i`: `down` lives on level `i`, `up` on level `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub id: String,
    pub down: String,
    pub up: String,
}

impl Edge {
    pub fn new(id: impl Into<String>, down: impl Into<String>, up: impl Into<String>) -> Self {
        Edge {
            id: id.into(),
            down: down.into(),
            up: up.into(),
        }
    }
}

/// A strict partial order stored by its covering pairs `(lo, hi)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LevelPoset {
    pub covers: BTreeSet<(String, String)>,
}

impl LevelPoset {
    pub fn trivial() -> Self {
        LevelPoset::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn add_cover(&mut self, lo: impl Into<String>, hi: impl Into<String>) {
        self.covers.insert((lo.into(), hi.into()));
    }

    /// Elements mentioned by some cover.
    pub fn support(&self) -> BTreeSet<&str> {
        self.covers
            .iter()
            .flat_map(|(a, b)| [a.as_str(), b.as_str()])
            .collect()
    }

    /// Transitive closure of the covers, or `None` when it contains a cycle.
    pub fn closure(&self) -> Option<BTreeSet<(String, String)>> {
        let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (lo, hi) in &self.covers {
            succ.entry(lo.as_str()).or_default().push(hi.as_str());
        }
        let mut out = BTreeSet::new();
        for start in succ.keys() {
            let mut seen = HashSet::new();
            let mut stack = vec![*start];
            while let Some(x) = stack.pop() {
                for &y in succ.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                    if y == *start {
                        return None;
                    }
                    if seen.insert(y) {
                        out.insert((start.to_string(), y.to_string()));
                        stack.push(y);
                    }
                }
            }
        }
        Some(out)
    }

    /// Renames every element through `f`.
    pub fn map_ids(&self, mut f: impl FnMut(&str) -> String) -> LevelPoset {
        LevelPoset {
            covers: self.covers.iter().map(|(a, b)| (f(a), f(b))).collect(),
        }
    }
}

/// A (candidate) Reeb graph over levels of scalar type `T`.
///
/// Fields are public so arbitrary candidates can be assembled and checked with
/// [`ReebGraph::validate`]. Operations in this crate return graphs in
/// canonical form (see [`ReebGraph::canonicalize`]), so `==` is structural
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReebGraph<T = Rational> {
    pub levels: Vec<T>,
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<Vec<Edge>>,
    pub vertex_orders: Vec<LevelPoset>,
    pub edge_orders: Vec<LevelPoset>,
    pub labels: Option<Vec<BTreeMap<String, String>>>,
    pub leaf_ranks: BTreeMap<String, u64>,
}

/// Which attaching map a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Down,
    Up,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Down => "down_map",
            MapKind::Up => "up_map",
        })
    }
}

/// Whether an order violation concerns a vertex or an edge poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Vertex,
    Edge,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Vertex => "vertex",
            OrderKind::Edge => "edge",
        })
    }
}

/// A single violated invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewLevels(usize),
    LevelsNotIncreasing {
        index: usize,
    },
    ShapeMismatch(String),
    EmptyVertexSet {
        level: usize,
    },
    EmptyEdgeSet {
        gap: usize,
    },
    DuplicateId(String),
    ReservedId(String),
    DanglingTarget {
        map: MapKind,
        edge: String,
        target: String,
    },
    Disconnected {
        components: usize,
    },
    UnknownOrderElement {
        kind: OrderKind,
        index: usize,
        id: String,
    },
    OrderCycle {
        kind: OrderKind,
        index: usize,
    },
    NonMonotone {
        map: MapKind,
        gap: usize,
        lo: String,
        hi: String,
    },
    LabelNotBijective {
        gap: usize,
        detail: String,
    },
    UnknownLeafRank(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewLevels(k) => write!(f, "need at least 2 levels, found {k}"),
            Violation::LevelsNotIncreasing { index } => {
                write!(f, "levels not strictly increasing at index {index}")
            }
            Violation::ShapeMismatch(what) => write!(f, "shape mismatch: {what}"),
            Violation::EmptyVertexSet { level } => write!(f, "empty vertex set at level {level}"),
            Violation::EmptyEdgeSet { gap } => write!(f, "empty edge set at gap {gap}"),
            Violation::DuplicateId(id) => write!(f, "duplicate identifier '{id}'"),
            Violation::ReservedId(id) => write!(
                f,
                "identifier '{id}' uses the reserved '{CUT_PREFIX}' prefix"
            ),
            Violation::DanglingTarget { map, edge, target } => {
                write!(f, "dangling {map} target '{target}' for edge '{edge}'")
            }
            Violation::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
            Violation::UnknownOrderElement { kind, index, id } => {
                write!(f, "{kind} order {index} mentions unknown element '{id}'")
            }
            Violation::OrderCycle { kind, index } => {
                write!(f, "{kind} order {index} is not a partial order (cycle)")
            }
            Violation::NonMonotone { map, gap, lo, hi } => {
                write!(f, "{map} of gap {gap} is not monotone on '{lo}' < '{hi}'")
            }
            Violation::LabelNotBijective { gap, detail } => {
                write!(
                    f,
                    "edge labelling of gap {gap} is not a bijection: {detail}"
                )
            }
            Violation::UnknownLeafRank(id) => {
                write!(f, "leaf rank given for unknown vertex '{id}'")
            }
        }
    }
}

/// Result of [`ReebGraph::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }

    pub fn contains(&self, needle: &str) -> bool {
        self.violations
            .iter()
            .any(|v| v.to_string().contains(needle))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let msgs = self.messages();
        f.write_str(&msgs.join("; "))
    }
}

/// Lookup tables over a graph, keyed by borrowed ids.
#[derive(Debug)]
pub struct GraphIndex<'g> {
    pub vertex_level: HashMap<&'g str, usize>,
    pub edge_gap: HashMap<&'g str, usize>,
    pub edge: HashMap<&'g str, &'g Edge>,
    /// Edges incident from above, i.e. whose `down` is the vertex.
    pub above: HashMap<&'g str, Vec<&'g str>>,
    /// Edges incident from below, i.e. whose `up` is the vertex.
    pub below: HashMap<&'g str, Vec<&'g str>>,
}

impl GraphIndex<'_> {
    pub fn indeg(&self, v: &str) -> usize {
        self.above.get(v).map_or(0, Vec::len)
    }

    pub fn outdeg(&self, v: &str) -> usize {
        self.below.get(v).map_or(0, Vec::len)
    }
}

/// Minimal disjoint-set forest.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn classes(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

impl<T: Scalar> ReebGraph<T> {
    /// An empty candidate over `levels`, with vertex and edge slots allocated.
    pub fn empty(levels: Vec<T>) -> Self {
        let k = levels.len();
        let gaps = k.saturating_sub(1);
        ReebGraph {
            levels,
            vertices: vec![Vec::new(); k],
            edges: vec![Vec::new(); gaps],
            vertex_orders: vec![LevelPoset::trivial(); k],
            edge_orders: vec![LevelPoset::trivial(); gaps],
            labels: None,
            leaf_ranks: BTreeMap::new(),
        }
    }

    pub fn builder(levels: Vec<T>) -> ReebGraphBuilder<T> {
        ReebGraphBuilder {
            graph: ReebGraph::empty(levels),
        }
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// `(level index, id)` for every vertex, bottom level first.
    pub fn all_vertices(&self) -> impl Iterator<Item = (usize, &str)> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .flat_map(|(i, vs)| vs.iter().map(move |v| (i, v.as_str())))
    }

    /// `(gap index, edge)` for every edge, bottom gap first.
    pub fn all_edges(&self) -> impl Iterator<Item = (usize, &Edge)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(i, es)| es.iter().map(move |e| (i, e)))
    }

    pub fn index(&self) -> GraphIndex<'_> {
        let mut idx = GraphIndex {
            vertex_level: HashMap::new(),
            edge_gap: HashMap::new(),
            edge: HashMap::new(),
            above: HashMap::new(),
            below: HashMap::new(),
        };
        for (i, v) in self.all_vertices() {
            idx.vertex_level.insert(v, i);
        }
        for (i, e) in self.all_edges() {
            idx.edge_gap.insert(e.id.as_str(), i);
            idx.edge.insert(e.id.as_str(), e);
            idx.above
                .entry(e.down.as_str())
                .or_default()
                .push(e.id.as_str());
            idx.below
                .entry(e.up.as_str())
                .or_default()
                .push(e.id.as_str());
        }
        idx
    }

    /// Label of an edge, if the graph carries a labelling.
    pub fn label(&self, gap: usize, edge: &str) -> Option<&str> {
        self.labels
            .as_ref()?
            .get(gap)?
            .get(edge)
            .map(String::as_str)
    }

    pub fn has_nontrivial_order(&self) -> bool {
        self.vertex_orders
            .iter()
            .chain(&self.edge_orders)
            .any(|p| !p.is_trivial())
    }

    /// Sorts vertex and edge lists by id. Every operation returns canonical graphs.
    pub fn canonicalize(mut self) -> Self {
        for vs in &mut self.vertices {
            vs.sort();
        }
        for es in &mut self.edges {
            es.sort_by(|a, b| a.id.cmp(&b.id));
        }
        self
    }

    /// Same graph with all order relations, labels and leaf ranks removed.
    pub fn forget_decorations(&self) -> Self {
        let mut g = self.clone();
        g.vertex_orders.iter_mut().for_each(|p| p.covers.clear());
        g.edge_orders.iter_mut().for_each(|p| p.covers.clear());
        g.labels = None;
        g.leaf_ranks.clear();
        g
    }

    /// Renames vertices and edges; orders, labels and ranks follow.
    pub fn rename(&self, vertex: impl Fn(&str) -> String, edge: impl Fn(&str) -> String) -> Self {
        let g = ReebGraph {
            levels: self.levels.clone(),
            vertices: self
                .vertices
                .iter()
                .map(|vs| vs.iter().map(|v| vertex(v)).collect())
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|es| {
                    es.iter()
                        .map(|e| Edge::new(edge(&e.id), vertex(&e.down), vertex(&e.up)))
                        .collect()
                })
                .collect(),
            vertex_orders: self
                .vertex_orders
                .iter()
                .map(|p| p.map_ids(&vertex))
                .collect(),
            edge_orders: self.edge_orders.iter().map(|p| p.map_ids(&edge)).collect(),
            labels: self.labels.as_ref().map(|ls| {
                ls.iter()
                    .map(|m| m.iter().map(|(e, l)| (edge(e), l.clone())).collect())
                    .collect()
            }),
            leaf_ranks: self
                .leaf_ranks
                .iter()
                .map(|(v, r)| (vertex(v), *r))
                .collect(),
        };
        g.canonicalize()
    }

    /// Checks every structural invariant and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let k = self.levels.len();
        if k < 2 {
            out.push(Violation::TooFewLevels(k));
        }
        for i in 1..k {
            if self.levels[i - 1] >= self.levels[i] {
                out.push(Violation::LevelsNotIncreasing { index: i });
            }
        }
        let gaps = k.saturating_sub(1);
        if self.vertices.len() != k {
            out.push(Violation::ShapeMismatch(format!(
                "{} vertex sets for {k} levels",
                self.vertices.len()
            )));
        }
        if self.edges.len() != gaps {
            out.push(Violation::ShapeMismatch(format!(
                "{} edge sets for {gaps} gaps",
                self.edges.len()
            )));
        }
        if self.vertex_orders.len() != self.vertices.len() {
            out.push(Violation::ShapeMismatch(format!(
                "{} vertex orders for {} vertex sets",
                self.vertex_orders.len(),
                self.vertices.len()
            )));
        }
        if self.edge_orders.len() != self.edges.len() {
            out.push(Violation::ShapeMismatch(format!(
                "{} edge orders for {} edge sets",
                self.edge_orders.len(),
                self.edges.len()
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.edges.len() {
                out.push(Violation::ShapeMismatch(format!(
                    "{} label maps for {} edge sets",
                    labels.len(),
                    self.edges.len()
                )));
            }
        }
        for (i, vs) in self.vertices.iter().enumerate() {
            if vs.is_empty() {
                out.push(Violation::EmptyVertexSet { level: i });
            }
        }
        for (i, es) in self.edges.iter().enumerate() {
            if es.is_empty() {
                out.push(Violation::EmptyEdgeSet { gap: i });
            }
        }

        let mut seen = HashSet::new();
        for id in self
            .all_vertices()
            .map(|(_, v)| v)
            .chain(self.all_edges().map(|(_, e)| e.id.as_str()))
        {
            if !seen.insert(id) {
                out.push(Violation::DuplicateId(id.to_string()));
            }
        }

        let idx = self.index();
        for (gap, e) in self.all_edges() {
            if idx.vertex_level.get(e.down.as_str()) != Some(&gap) {
                out.push(Violation::DanglingTarget {
                    map: MapKind::Down,
                    edge: e.id.clone(),
                    target: e.down.clone(),
                });
            }
            if idx.vertex_level.get(e.up.as_str()) != Some(&(gap + 1)) {
                out.push(Violation::DanglingTarget {
                    map: MapKind::Up,
                    edge: e.id.clone(),
                    target: e.up.clone(),
                });
            }
        }

        for (_, v) in self.all_vertices() {
            if let Some(edge_id) = v.strip_prefix(CUT_PREFIX) {
                let is_cut_leaf = idx.edge.get(edge_id).is_some_and(|e| e.down == v)
                    && idx.indeg(v) == 1
                    && idx.outdeg(v) == 0;
                if !is_cut_leaf {
                    out.push(Violation::ReservedId(v.to_string()));
                }
            }
        }

        // connectivity over vertices and edges
        let vertex_slots: HashMap<&str, usize> = self
            .all_vertices()
            .enumerate()
            .map(|(n, (_, v))| (v, n))
            .collect();
        let nv = vertex_slots.len();
        let edge_list: Vec<&Edge> = self.all_edges().map(|(_, e)| e).collect();
        if nv + edge_list.len() > 0 {
            let mut uf = UnionFind::new(nv + edge_list.len());
            for (n, e) in edge_list.iter().enumerate() {
                for end in [&e.down, &e.up] {
                    if let Some(&slot) = vertex_slots.get(end.as_str()) {
                        uf.union(nv + n, slot);
                    }
                }
            }
            let components = uf.classes();
            if components > 1 {
                out.push(Violation::Disconnected { components });
            }
        }

        self.check_orders(&idx, &mut out);
        self.check_labels(&mut out);

        for v in self.leaf_ranks.keys() {
            if !idx.vertex_level.contains_key(v.as_str()) {
                out.push(Violation::UnknownLeafRank(v.clone()));
            }
        }
        ValidationReport { violations: out }
    }

    fn check_orders(&self, idx: &GraphIndex<'_>, out: &mut Vec<Violation>) {
        let mut vertex_closures = Vec::new();
        for (i, poset) in self.vertex_orders.iter().enumerate() {
            let members: HashSet<&str> = self
                .vertices
                .get(i)
                .map(|vs| vs.iter().map(String::as_str).collect())
                .unwrap_or_default();
            for id in poset.support() {
                if !members.contains(id) {
                    out.push(Violation::UnknownOrderElement {
                        kind: OrderKind::Vertex,
                        index: i,
                        id: id.to_string(),
                    });
                }
            }
            match poset.closure() {
                Some(c) => vertex_closures.push(Some(c)),
                None => {
                    out.push(Violation::OrderCycle {
                        kind: OrderKind::Vertex,
                        index: i,
                    });
                    vertex_closures.push(None);
                }
            }
        }
        for (i, poset) in self.edge_orders.iter().enumerate() {
            let members: HashSet<&str> = self
                .edges
                .get(i)
                .map(|es| es.iter().map(|e| e.id.as_str()).collect())
                .unwrap_or_default();
            for id in poset.support() {
                if !members.contains(id) {
                    out.push(Violation::UnknownOrderElement {
                        kind: OrderKind::Edge,
                        index: i,
                        id: id.to_string(),
                    });
                }
            }
            if poset.closure().is_none() {
                out.push(Violation::OrderCycle {
                    kind: OrderKind::Edge,
                    index: i,
                });
                continue;
            }
            // D and U must send every cover to a (reflexive) relation.
            for (lo, hi) in &poset.covers {
                let (Some(a), Some(b)) = (idx.edge.get(lo.as_str()), idx.edge.get(hi.as_str()))
                else {
                    continue;
                };
                for (map, level, x, y) in [
                    (MapKind::Down, i, &a.down, &b.down),
                    (MapKind::Up, i + 1, &a.up, &b.up),
                ] {
                    if x == y {
                        continue;
                    }
                    let related = vertex_closures
                        .get(level)
                        .and_then(Option::as_ref)
                        .is_some_and(|c| c.contains(&(x.clone(), y.clone())));
                    if !related {
                        out.push(Violation::NonMonotone {
                            map,
                            gap: i,
                            lo: lo.clone(),
                            hi: hi.clone(),
                        });
                    }
                }
            }
        }
    }

    fn check_labels(&self, out: &mut Vec<Violation>) {
        let Some(labels) = &self.labels else { return };
        for (gap, (map, es)) in labels.iter().zip(&self.edges).enumerate() {
            let ids: HashSet<&str> = es.iter().map(|e| e.id.as_str()).collect();
            for e in &ids {
                if !map.contains_key(*e) {
                    out.push(Violation::LabelNotBijective {
                        gap,
                        detail: format!("edge '{e}' has no label"),
                    });
                }
            }
            for e in map.keys() {
                if !ids.contains(e.as_str()) {
                    out.push(Violation::LabelNotBijective {
                        gap,
                        detail: format!("label for unknown edge '{e}'"),
                    });
                }
            }
            let mut used = HashSet::new();
            for l in map.values() {
                if !used.insert(l) {
                    out.push(Violation::LabelNotBijective {
                        gap,
                        detail: format!("label '{l}' used twice"),
                    });
                }
            }
        }
    }

    /// Errors with [`ReebError::Invalid`] unless the graph validates.
    pub fn ensure_valid(&self) -> Result<(), ReebError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(ReebError::Invalid(report))
        }
    }
}

/// Incremental construction of a [`ReebGraph`].
#[derive(Clone, Debug)]
pub struct ReebGraphBuilder<T> {
    graph: ReebGraph<T>,
}

impl<T: Scalar> ReebGraphBuilder<T> {
    pub fn vertex(mut self, level: usize, id: impl Into<String>) -> Self {
        if let Some(vs) = self.graph.vertices.get_mut(level) {
            vs.push(id.into());
        }
        self
    }

    pub fn vertices<I, S>(mut self, level: usize, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for id in ids {
            self = self.vertex(level, id);
        }
        self
    }

    pub fn edge(
        mut self,
        gap: usize,
        id: impl Into<String>,
        down: impl Into<String>,
        up: impl Into<String>,
    ) -> Self {
        if let Some(es) = self.graph.edges.get_mut(gap) {
            es.push(Edge::new(id, down, up));
        }
        self
    }

    pub fn vertex_cover(
        mut self,
        level: usize,
        lo: impl Into<String>,
        hi: impl Into<String>,
    ) -> Self {
        if let Some(p) = self.graph.vertex_orders.get_mut(level) {
            p.add_cover(lo, hi);
        }
        self
    }

    pub fn edge_cover(mut self, gap: usize, lo: impl Into<String>, hi: impl Into<String>) -> Self {
        if let Some(p) = self.graph.edge_orders.get_mut(gap) {
            p.add_cover(lo, hi);
        }
        self
    }

    pub fn label(mut self, gap: usize, edge: impl Into<String>, label: impl Into<String>) -> Self {
        let gaps = self.graph.edges.len();
        let labels = self
            .graph
            .labels
            .get_or_insert_with(|| vec![BTreeMap::new(); gaps]);
        if let Some(m) = labels.get_mut(gap) {
            m.insert(edge.into(), label.into());
        }
        self
    }

    /// Labels every edge with its own id.
    pub fn identity_labels(mut self) -> Self {
        self.graph.labels = Some(
            self.graph
                .edges
                .iter()
                .map(|es| es.iter().map(|e| (e.id.clone(), e.id.clone())).collect())
                .collect(),
        );
        self
    }

    pub fn leaf_rank(mut self, vertex: impl Into<String>, rank: u64) -> Self {
        self.graph.leaf_ranks.insert(vertex.into(), rank);
        self
    }

    pub fn build(self) -> Result<ReebGraph<T>, ReebError> {
        let g = self.graph.canonicalize();
        g.ensure_valid()?;
        Ok(g)
    }

    pub fn build_unchecked(self) -> ReebGraph<T> {
        self.graph.canonicalize()
    }
}
