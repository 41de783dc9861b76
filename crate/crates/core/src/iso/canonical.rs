//! Canonical forms of leveled ordered trees.
//!
//! The tree is rooted at its unique maximum when there is one, otherwise at
//! each center in turn. Vertices are colored by level index, optional color
//! and leaf rank; AHU encodings are built bottom-up. Vertices and edges that
//! take part in an order relation are individualized: they are sorted by
//! an invariant (their down and up codes refined along the relations), ties
//! are broken by trying every ordering within a tie class, and the
//! lexicographically least encoding wins.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::dag::betti_euler;
use crate::error::ReebError;
use crate::graph::ReebGraph;
use crate::scalar::Scalar;

/// Renaming-invariant encoding of a leveled ordered tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

/// Canonical form of an ordered tree, ignoring edge labels.
pub fn canonical_form<T: Scalar>(tree: &ReebGraph<T>) -> Result<CanonicalForm, ReebError> {
    canonical_form_counted(tree, &BTreeMap::new()).map(|(form, _)| form)
}

/// Canonical form with extra vertex colors, plus the number of vertex
/// encodings and relation visits spent.
pub fn canonical_form_counted<T: Scalar>(
    tree: &ReebGraph<T>,
    colors: &BTreeMap<String, String>,
) -> Result<(CanonicalForm, u64), ReebError> {
    let betti = betti_euler(tree);
    if betti > 0 {
        return Err(ReebError::NotATree(betti));
    }
    let shape = Shape::new(tree, colors);
    let mut work = 0u64;
    let maxima: Vec<usize> = (0..shape.n)
        .filter(|&v| shape.up_neighbors(v) == 0)
        .collect();
    let (tag, roots) = if maxima.len() == 1 {
        ("M", maxima)
    } else {
        ("C", shape.centers())
    };
    let mut best: Option<String> = None;
    for root in roots {
        let code = shape.encode_rooted(root, &mut work);
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    let levels: Vec<String> = tree.levels.iter().map(Scalar::to_decimal).collect();
    let text = format!("{}|{tag}|{}", levels.join(","), best.unwrap_or_default());
    Ok((CanonicalForm(text.into_bytes()), work))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum ItemKind {
    Vertex,
    Edge,
}

/// A vertex, or an edge given by its two endpoints, that occurs in an order.
#[derive(Clone, Copy, Debug)]
struct Item {
    kind: ItemKind,
    a: usize,
    b: usize,
}

struct Shape {
    n: usize,
    level: Vec<usize>,
    label: Vec<String>,
    adj: Vec<Vec<usize>>,
    items: Vec<Item>,
    /// `(lo, hi)` item indices from the transitive closures
    relations: Vec<(usize, usize)>,
}

impl Shape {
    fn new<T: Scalar>(tree: &ReebGraph<T>, colors: &BTreeMap<String, String>) -> Self {
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut level = Vec::new();
        let mut label = Vec::new();
        for (i, v) in tree.all_vertices() {
            ids.insert(v, level.len());
            level.push(i);
            let mut l = i.to_string();
            if let Some(c) = colors.get(v) {
                l.push_str(",c");
                l.push_str(c);
            }
            if let Some(r) = tree.leaf_ranks.get(v) {
                l.push_str(&format!(",r{r}"));
            }
            label.push(l);
        }
        let n = level.len();
        let mut adj = vec![Vec::new(); n];
        let mut edge_ends: HashMap<&str, (usize, usize)> = HashMap::new();
        for (_, e) in tree.all_edges() {
            let (lo, hi) = (ids[e.down.as_str()], ids[e.up.as_str()]);
            adj[lo].push(hi);
            adj[hi].push(lo);
            edge_ends.insert(e.id.as_str(), (lo, hi));
        }
        let mut items = Vec::new();
        let mut item_of: HashMap<(ItemKind, usize, usize), usize> = HashMap::new();
        let mut relations = Vec::new();
        let mut intern = |item: Item, items: &mut Vec<Item>| {
            *item_of
                .entry((item.kind, item.a, item.b))
                .or_insert_with(|| {
                    items.push(item);
                    items.len() - 1
                })
        };
        for poset in &tree.vertex_orders {
            let pairs = poset.closure().unwrap_or_else(|| poset.covers.clone());
            for (x, y) in &pairs {
                let (x, y) = (ids[x.as_str()], ids[y.as_str()]);
                let i = intern(
                    Item {
                        kind: ItemKind::Vertex,
                        a: x,
                        b: x,
                    },
                    &mut items,
                );
                let j = intern(
                    Item {
                        kind: ItemKind::Vertex,
                        a: y,
                        b: y,
                    },
                    &mut items,
                );
                relations.push((i, j));
            }
        }
        for poset in &tree.edge_orders {
            let pairs = poset.closure().unwrap_or_else(|| poset.covers.clone());
            for (x, y) in &pairs {
                let (xa, xb) = edge_ends[x.as_str()];
                let (ya, yb) = edge_ends[y.as_str()];
                let i = intern(
                    Item {
                        kind: ItemKind::Edge,
                        a: xa,
                        b: xb,
                    },
                    &mut items,
                );
                let j = intern(
                    Item {
                        kind: ItemKind::Edge,
                        a: ya,
                        b: yb,
                    },
                    &mut items,
                );
                relations.push((i, j));
            }
        }
        Shape {
            n,
            level,
            label,
            adj,
            items,
            relations,
        }
    }

    fn up_neighbors(&self, v: usize) -> usize {
        self.adj[v]
            .iter()
            .filter(|&&w| self.level[w] > self.level[v])
            .count()
    }

    fn centers(&self) -> Vec<usize> {
        if self.n <= 2 {
            return (0..self.n).collect();
        }
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..self.n).filter(|&v| degree[v] <= 1).collect();
        let mut left = self.n;
        while left > 2 {
            left -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &w in &self.adj[v] {
                    degree[w] = degree[w].saturating_sub(1);
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
                degree[v] = 0;
            }
            layer = next;
        }
        layer.sort_unstable();
        layer.dedup();
        layer
    }

    fn encode_rooted(&self, root: usize, work: &mut u64) -> String {
        let mut parent = vec![usize::MAX; self.n];
        let mut order = vec![root];
        parent[root] = root;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        let children: Vec<Vec<usize>> = {
            let mut ch = vec![Vec::new(); self.n];
            for &v in &order[1..] {
                ch[parent[v]].push(v);
            }
            ch
        };

        if self.items.is_empty() {
            return self.final_code(root, &order, &children, &[], &[], &[], work);
        }

        // down codes bottom-up, up codes top-down
        let mut down = vec![String::new(); self.n];
        for &v in order.iter().rev() {
            *work += 1;
            let mut parts: Vec<&str> = children[v].iter().map(|&c| down[c].as_str()).collect();
            parts.sort_unstable();
            down[v] = format!("({}{})", self.label[v], parts.concat());
        }
        let mut up = vec![String::new(); self.n];
        for &v in &order {
            *work += 1;
            for &c in &children[v] {
                let mut parts: Vec<&str> = children[v]
                    .iter()
                    .filter(|&&o| o != c)
                    .map(|&o| down[o].as_str())
                    .collect();
                parts.sort_unstable();
                up[c] = format!("({}^{}{})", self.label[v], up[v], parts.concat());
            }
        }

        // item invariants, refined along the relations
        let child_end = |item: &Item| {
            if parent[item.a] == item.b {
                item.a
            } else {
                item.b
            }
        };
        let initial: Vec<String> = self
            .items
            .iter()
            .map(|item| match item.kind {
                ItemKind::Vertex => format!("V{}|{}", down[item.a], up[item.a]),
                ItemKind::Edge => {
                    let c = child_end(item);
                    let dir = if c == item.a { 'd' } else { 'u' };
                    format!("E{dir}{}|{}", down[c], up[c])
                }
            })
            .collect();
        // incident relations per item: (item is the lower end, other item)
        let mut incident: Vec<Vec<(bool, usize)>> = vec![Vec::new(); self.items.len()];
        for &(lo, hi) in &self.relations {
            incident[lo].push((true, hi));
            incident[hi].push((false, lo));
        }
        let mut rank = ranks_of(&initial);
        let mut classes = distinct(&rank);
        loop {
            let sigs: Vec<(usize, Vec<(bool, usize)>)> = (0..self.items.len())
                .map(|i| {
                    let mut nb: Vec<(bool, usize)> = incident[i]
                        .iter()
                        .map(|&(below, other)| {
                            *work += 1;
                            (below, rank[other])
                        })
                        .collect();
                    nb.sort_unstable();
                    (rank[i], nb)
                })
                .collect();
            let next = ranks_of(&sigs);
            let count = distinct(&next);
            rank = next;
            if count == classes {
                break;
            }
            classes = count;
        }

        // individualize: base order by rank, permuted within ties
        let mut base: Vec<usize> = (0..self.items.len()).collect();
        base.sort_by_key(|&i| rank[i]);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &i in &base {
            match groups.last_mut() {
                Some(g) if rank[g[0]] == rank[i] => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        let mut best: Option<String> = None;
        let mut perms: Vec<Vec<usize>> = groups.iter().map(|g| (0..g.len()).collect()).collect();
        loop {
            let mut index = vec![0usize; self.items.len()];
            let mut next = 0;
            for (g, p) in groups.iter().zip(&perms) {
                for &k in p {
                    index[g[k]] = next;
                    next += 1;
                }
            }
            let mut vtag = vec![Vec::new(); self.n];
            let mut etag = vec![Vec::new(); self.n];
            for (i, item) in self.items.iter().enumerate() {
                match item.kind {
                    ItemKind::Vertex => vtag[item.a].push(index[i]),
                    ItemKind::Edge => etag[child_end(item)].push(index[i]),
                }
            }
            let mut rel: Vec<(usize, usize)> = self
                .relations
                .iter()
                .map(|&(lo, hi)| (index[lo], index[hi]))
                .collect();
            rel.sort_unstable();
            rel.dedup();
            let code = self.final_code(root, &order, &children, &vtag, &etag, &rel, work);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
            if !advance(&mut perms) {
                break;
            }
        }
        best.unwrap_or_default()
    }

    #[allow(clippy::too_many_arguments)]
    fn final_code(
        &self,
        root: usize,
        order: &[usize],
        children: &[Vec<usize>],
        vtag: &[Vec<usize>],
        etag: &[Vec<usize>],
        rel: &[(usize, usize)],
        work: &mut u64,
    ) -> String {
        let mut code = vec![String::new(); self.n];
        for &v in order.iter().rev() {
            *work += 1;
            let mut parts: Vec<&str> = children[v].iter().map(|&c| code[c].as_str()).collect();
            parts.sort_unstable();
            let mut tags = String::new();
            for t in vtag.get(v).into_iter().flatten() {
                tags.push_str(&format!(",v{t}"));
            }
            for t in etag.get(v).into_iter().flatten() {
                tags.push_str(&format!(",e{t}"));
            }
            code[v] = format!("({}{tags}{})", self.label[v], parts.concat());
        }
        let rel: Vec<String> = rel.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        format!("{}R{}", code[root], rel.join(";"))
    }
}

/// Dense ranks of values in sorted order.
fn ranks_of<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

fn distinct(ranks: &[usize]) -> usize {
    let mut r = ranks.to_vec();
    r.sort_unstable();
    r.dedup();
    r.len()
}

/// Steps a product of permutations like an odometer; false after the last.
fn advance(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut().rev() {
        if next_permutation(p) {
            return true;
        }
    }
    false
}

/// Lexicographic successor; on the last permutation resets to sorted and
/// returns false.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::fixtures;

    #[test]
    fn permutations_cover_all_orders() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn renaming_does_not_change_form() {
        let fs = decompose(&fixtures::example2::<i64>()).unwrap();
        let t = &fs[0].tree;
        let renamed = t.rename(|v| format!("x_{v}"), |e| format!("y_{e}"));
        assert_eq!(
            canonical_form(t).unwrap(),
            canonical_form(&renamed).unwrap()
        );
    }

    #[test]
    fn symmetric_factors_share_a_form() {
        // forgetting labels, the mirror symmetry of example 2 and the
        // parallel edges of example 3 make all factors order-isomorphic
        for g in [fixtures::example2::<i64>(), fixtures::example3::<i64>()] {
            let fs = decompose(&g).unwrap();
            let first = canonical_form(&fs[0].tree).unwrap();
            for f in &fs[1..] {
                assert_eq!(canonical_form(&f.tree).unwrap(), first);
            }
        }
    }

    #[test]
    fn asymmetric_factors_differ() {
        let mut g = fixtures::example2::<i64>();
        g.leaf_ranks.insert("l1".into(), 1);
        g.leaf_ranks.insert("l2".into(), 2);
        let fs = decompose(&g).unwrap();
        assert_ne!(
            canonical_form(&fs[0].tree).unwrap(),
            canonical_form(&fs[1].tree).unwrap()
        );
    }

    #[test]
    fn graphs_with_cycles_are_rejected() {
        assert!(matches!(
            canonical_form(&fixtures::example2::<i64>()),
            Err(ReebError::NotATree(1))
        ));
    }

    #[test]
    fn edge_labels_are_ignored() {
        let fs = decompose(&fixtures::example2::<i64>()).unwrap();
        let mut labelled = fs[0].tree.clone();
        labelled.labels = Some(
            labelled
                .edges
                .iter()
                .map(|es| {
                    es.iter()
                        .map(|e| (e.id.clone(), format!("L{}", e.id)))
                        .collect()
                })
                .collect(),
        );
        assert_eq!(
            canonical_form(&labelled).unwrap(),
            canonical_form(&fs[0].tree).unwrap()
        );
    }

    #[test]
    fn colors_and_ranks_distinguish() {
        let t = fixtures::single_edge::<i64>();
        let plain = canonical_form(&t).unwrap();
        let mut ranked = t.clone();
        ranked.leaf_ranks.insert("bottom".into(), 1);
        assert_ne!(canonical_form(&ranked).unwrap(), plain);
        let colors = BTreeMap::from([("bottom".to_string(), "x".to_string())]);
        assert_ne!(canonical_form_counted(&t, &colors).unwrap().0, plain);
    }
}
