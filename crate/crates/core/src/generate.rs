//! Seeded random generator of valid, rooted Reeb graphs with prescribed leaf
//! count and Betti number.
//!
//! A random rooted tree with `n + s` leaves is laid out over the levels, then
//! `s` leaves are glued into other vertices on their own level. Each gluing is
//! the inverse of one cut, so it removes one leaf and adds one to the Betti
//! number.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ReebError;
use crate::graph::ReebGraph;
use crate::scalar::Scalar;

const ATTEMPTS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub n_leaves: usize,
    pub betti: usize,
    pub levels: usize,
    pub max_indeg: usize,
}

impl GeneratorSpec {
    pub fn new(seed: u64, n_leaves: usize, betti: usize) -> Self {
        GeneratorSpec {
            seed,
            n_leaves,
            betti,
            levels: 5,
            max_indeg: 2,
        }
    }

    pub fn with_levels(self, levels: usize) -> Self {
        GeneratorSpec { levels, ..self }
    }

    pub fn with_max_indeg(self, max_indeg: usize) -> Self {
        GeneratorSpec { max_indeg, ..self }
    }
}

struct Draft {
    level: Vec<usize>,
    /// edges as (lower vertex, upper vertex)
    edges: Vec<(usize, usize)>,
}

impl Draft {
    fn indeg(&self, v: usize) -> usize {
        self.edges.iter().filter(|(lo, _)| *lo == v).count()
    }

    fn outdeg(&self, v: usize) -> usize {
        self.edges.iter().filter(|(_, hi)| *hi == v).count()
    }
}

pub fn generate<T: Scalar>(spec: &GeneratorSpec) -> Result<ReebGraph<T>, ReebError> {
    if spec.levels < 2 {
        return Err(ReebError::InfeasibleSpec("need at least 2 levels".into()));
    }
    if spec.max_indeg < 2 && spec.betti > 0 {
        return Err(ReebError::InfeasibleSpec(
            "max_indeg must be at least 2 to create cycles".into(),
        ));
    }
    if spec.n_leaves == 0 {
        return Err(ReebError::InfeasibleSpec("need at least one leaf".into()));
    }
    if spec.n_leaves == 1 && spec.betti == 0 {
        return Err(ReebError::InfeasibleSpec(
            "a tree has at least two leaves".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..ATTEMPTS {
        if let Some(draft) = attempt(spec, &mut rng) {
            return Ok(assemble(spec, &draft));
        }
    }
    Err(ReebError::InfeasibleSpec(format!(
        "no layout found for {} leaves and Betti {} over {} levels",
        spec.n_leaves, spec.betti, spec.levels
    )))
}

fn attempt(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Option<Draft> {
    let top = spec.levels - 1;
    let target = spec.n_leaves + spec.betti;

    // abstract rooted tree with `target` leaves and depth <= top
    let mut children: Vec<Vec<usize>> = vec![vec![1, 2], vec![], vec![]];
    let mut depth = vec![0, 1, 1];
    let mut leaves = 2;
    while leaves < target {
        let open: Vec<usize> = (0..children.len()).filter(|&v| depth[v] < top).collect();
        let &v = open.choose(rng)?;
        let fresh = if children[v].is_empty() { 2 } else { 1 };
        for _ in 0..fresh {
            let id = children.len();
            children[v].push(id);
            children.push(Vec::new());
            depth.push(depth[v] + 1);
        }
        leaves += 1;
    }

    // heights, then levels top-down
    let count = children.len();
    let mut height = vec![0usize; count];
    for v in (0..count).rev() {
        height[v] = children[v]
            .iter()
            .map(|&c| height[c] + 1)
            .max()
            .unwrap_or(0);
    }
    if height[0] > top {
        return None;
    }
    let mut level = vec![0usize; count];
    level[0] = top;
    let mut stack = vec![0usize];
    let mut placed_bottom = false;
    while let Some(v) = stack.pop() {
        for &c in &children[v] {
            let hi = level[v] - 1;
            let lo = height[c];
            level[c] = if children[c].is_empty() && (!placed_bottom || rng.gen_bool(0.5)) {
                placed_bottom = true;
                0
            } else {
                rng.gen_range(lo..=hi)
            };
            stack.push(c);
        }
    }

    // subdivide into adjacent-level edges
    let mut draft = Draft {
        level: level.clone(),
        edges: Vec::new(),
    };
    for v in 0..count {
        for &c in &children[v] {
            let mut lower = c;
            for l in level[c] + 1..level[v] {
                draft.level.push(l);
                let mid = draft.level.len() - 1;
                draft.edges.push((lower, mid));
                lower = mid;
            }
            draft.edges.push((lower, v));
        }
    }

    // glue s leaves into other vertices on their level
    let mut alive = vec![true; draft.level.len()];
    for _ in 0..spec.betti {
        let mut pairs = Vec::new();
        for c in 0..draft.level.len() {
            if !alive[c] || draft.outdeg(c) != 0 || draft.indeg(c) != 1 {
                continue;
            }
            for (r, &live) in alive.iter().enumerate() {
                if r != c
                    && live
                    && draft.level[r] == draft.level[c]
                    && draft.indeg(r) < spec.max_indeg
                {
                    pairs.push((c, r));
                }
            }
        }
        let &(c, r) = pairs.choose(rng)?;
        for e in &mut draft.edges {
            if e.0 == c {
                e.0 = r;
            }
        }
        alive[c] = false;
    }
    // drop glued leaves, renumbering survivors in creation order
    let mut rename = vec![usize::MAX; draft.level.len()];
    let mut levels = Vec::new();
    for v in 0..draft.level.len() {
        if alive[v] {
            rename[v] = levels.len();
            levels.push(draft.level[v]);
        }
    }
    let edges = draft
        .edges
        .iter()
        .map(|&(lo, hi)| (rename[lo], rename[hi]))
        .collect();
    Some(Draft {
        level: levels,
        edges,
    })
}

fn assemble<T: Scalar>(spec: &GeneratorSpec, draft: &Draft) -> ReebGraph<T> {
    let levels = (0..spec.levels as i64).map(T::from_i64).collect();
    let mut g = ReebGraph::empty(levels);
    for (v, &l) in draft.level.iter().enumerate() {
        g.vertices[l].push(format!("v{v}"));
    }
    for (i, &(lo, hi)) in draft.edges.iter().enumerate() {
        g.edges[draft.level[lo]].push(crate::graph::Edge::new(
            format!("e{i}"),
            format!("v{lo}"),
            format!("v{hi}"),
        ));
    }
    g.canonicalize()
}
