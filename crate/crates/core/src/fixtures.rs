//! Small hand-built graphs used across tests, benchmarks and the CLI docs.

use crate::graph::ReebGraph;
use crate::scalar::Scalar;

fn levels<T: Scalar>(values: &[i64]) -> Vec<T> {
    values.iter().map(|&v| T::from_i64(v)).collect()
}

/// Single edge over levels `{0, 1}`.
pub fn single_edge<T: Scalar>() -> ReebGraph<T> {
    ReebGraph::builder(levels(&[0, 1]))
        .vertex(0, "bottom")
        .vertex(1, "top")
        .edge(0, "e", "bottom", "top")
        .build_unchecked()
}

/// Four leaves, one cycle, edges `e1..e8`; `r` merges `e5` and `e6`.
///
/// ```text
///  3        a
///         e1 \ e2
///  2      b   c
///     e3/ e5\ /e6 \e4
///  1   l1    r     l2
///        e7/ \e8
///  0     l3   l4
/// ```
pub fn example2<T: Scalar>() -> ReebGraph<T> {
    ReebGraph::builder(levels(&[0, 1, 2, 3]))
        .vertices(0, ["l3", "l4"])
        .vertices(1, ["l1", "r", "l2"])
        .vertices(2, ["b", "c"])
        .vertex(3, "a")
        .edge(2, "e1", "b", "a")
        .edge(2, "e2", "c", "a")
        .edge(1, "e3", "l1", "b")
        .edge(1, "e4", "l2", "c")
        .edge(1, "e5", "r", "b")
        .edge(1, "e6", "r", "c")
        .edge(0, "e7", "l3", "r")
        .edge(0, "e8", "l4", "r")
        .build_unchecked()
}

/// Three parallel edges `e1, e2, e3` from `v` down to the reticulation-leaf `r`.
pub fn example3<T: Scalar>() -> ReebGraph<T> {
    ReebGraph::builder(levels(&[0, 1]))
        .vertex(0, "r")
        .vertex(1, "v")
        .edge(0, "e1", "r", "v")
        .edge(0, "e2", "r", "v")
        .edge(0, "e3", "r", "v")
        .build_unchecked()
}

/// Two stacked diamonds: reticulations `r1` and `r2`, both of indegree 2.
pub fn two_diamonds<T: Scalar>() -> ReebGraph<T> {
    ReebGraph::builder(levels(&[0, 1, 2, 3, 4]))
        .vertex(0, "r2")
        .vertices(1, ["p", "q"])
        .vertex(2, "r1")
        .vertices(3, ["x", "y"])
        .vertex(4, "top")
        .edge(3, "a1", "x", "top")
        .edge(3, "a2", "y", "top")
        .edge(2, "b1", "r1", "x")
        .edge(2, "b2", "r1", "y")
        .edge(1, "c1", "p", "r1")
        .edge(1, "c2", "q", "r1")
        .edge(0, "d1", "r2", "p")
        .edge(0, "d2", "r2", "q")
        .build_unchecked()
}

/// Time stamps of the two-leaf, one-cycle network pair: `0 < a < b < c < d`.
#[derive(Clone, Copy, Debug)]
pub struct NetworkTimes {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Default for NetworkTimes {
    fn default() -> Self {
        NetworkTimes {
            a: 1,
            b: 3,
            c: 4,
            d: 7,
        }
    }
}

/// A time-consistent network with root at time `a`, a split at `b`, a leaf at
/// time `d` and a reticulation-leaf at time `c`. Height is `-time`, so the
/// root is the maximum.
///
/// `first_rank_deep` picks which leaf carries rank 1: the deep leaf (time `d`)
/// or the reticulation-leaf (time `c`).
pub fn time_network<T: Scalar>(times: NetworkTimes, first_rank_deep: bool) -> ReebGraph<T> {
    let NetworkTimes { a, b, c, d } = times;
    let (deep_rank, ret_rank) = if first_rank_deep { (1, 2) } else { (2, 1) };
    ReebGraph::builder(levels(&[-d, -c, -b, -a]))
        .vertex(0, "leaf")
        .vertices(1, ["ret", "x"])
        .vertices(2, ["split", "w"])
        .vertex(3, "root")
        .edge(2, "root-split", "split", "root")
        .edge(2, "root-w", "w", "root")
        .edge(1, "split-ret", "ret", "split")
        .edge(1, "w-ret", "ret", "w")
        .edge(1, "split-x", "x", "split")
        .edge(0, "x-leaf", "leaf", "x")
        .leaf_rank("leaf", deep_rank)
        .leaf_rank("ret", ret_rank)
        .build_unchecked()
}
