//! Cophenetic embeddings of tree factors and the Hausdorff distance between
//! the point sets of two networks.
//!
//! A network is a rooted graph whose root is its maximum; time runs against
//! the height, so `time = -f`. Leaves (taxa) are the vertices with no edge
//! below them. The cophenetic entry `(i, j)` is the height of the lowest
//! common ancestor of leaves `i` and `j`, with the leaf heights on the
//! diagonal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dag::{betti_euler, DagView};
use crate::decomposition::{factors, TreeFactor};
use crate::error::ReebError;
use crate::graph::ReebGraph;
use crate::scalar::{format_rational, Rational, Scalar};

/// Which value is reported for a vertex at height `f`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TimeConvention {
    /// report `f`
    Height,
    /// report `-f`, i.e. time with the root earliest
    #[default]
    Time,
}

impl TimeConvention {
    fn stamp<T: Scalar>(self, f: &T) -> T {
        match self {
            TimeConvention::Height => f.clone(),
            TimeConvention::Time => -f.clone(),
        }
    }
}

/// Total order on the leaves of one factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafOrdering {
    pub leaves: Vec<String>,
}

impl LeafOrdering {
    /// Ranked original leaves first (rank, then id), unranked originals by id,
    /// then cut leaves by their source reticulation's `(level, id)` and the
    /// cut edge id.
    pub fn for_factor<T: Scalar>(factor: &TreeFactor<T>, ranks: &BTreeMap<String, u64>) -> Self {
        let level: HashMap<&str, usize> = factor.tree.all_vertices().map(|(i, v)| (v, i)).collect();
        let mut originals = Vec::new();
        let mut cuts = Vec::new();
        for v in sinks(&factor.tree) {
            match factor.new_leaf_provenance.get(&v) {
                Some((r, e)) => cuts.push(((level[r.as_str()], r.clone(), e.clone()), v)),
                None => originals.push((
                    ranks.get(&v).copied().map_or((1, 0), |r| (0, r)),
                    v.clone(),
                    v,
                )),
            }
        }
        originals.sort();
        cuts.sort();
        LeafOrdering {
            leaves: originals
                .into_iter()
                .map(|(_, _, v)| v)
                .chain(cuts.into_iter().map(|(_, v)| v))
                .collect(),
        }
    }

    /// Ranked leaves by rank, the rest by id; for plain trees.
    pub fn by_rank<T: Scalar>(tree: &ReebGraph<T>, ranks: &BTreeMap<String, u64>) -> Self {
        let mut leaves: Vec<_> = sinks(tree)
            .into_iter()
            .map(|v| (ranks.get(&v).copied().map_or((1, 0), |r| (0, r)), v))
            .collect();
        leaves.sort();
        LeafOrdering {
            leaves: leaves.into_iter().map(|(_, v)| v).collect(),
        }
    }
}

/// Vertices with no edge below them.
fn sinks<T: Scalar>(g: &ReebGraph<T>) -> Vec<String> {
    let idx = g.index();
    g.all_vertices()
        .filter(|(_, v)| idx.outdeg(v) == 0)
        .map(|(_, v)| v.to_string())
        .collect()
}

/// Upper triangle of the cophenetic matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CopheneticVector<T> {
    pub leaves: usize,
    pub entries: Vec<T>,
}

impl<T: Scalar> CopheneticVector<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * (n + 1) / 2);
        for (i, row) in rows.iter().enumerate() {
            entries.extend(row[i..].iter().cloned());
        }
        CopheneticVector { leaves: n, entries }
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    /// Entry `(i, j)` for `i <= j`, zero-based.
    pub fn get(&self, i: usize, j: usize) -> &T {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let n = self.leaves;
        // row i starts after n + (n-1) + … + (n-i+1) entries
        &self.entries[i * n - i * i.saturating_sub(1) / 2 + (j - i)]
    }
}

impl<T: Scalar> fmt::Display for CopheneticVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.leaves;
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| {
                    if j < i {
                        "·".to_string()
                    } else {
                        self.get(i, j).to_decimal()
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Cophenetic vector of a rooted tree under the given leaf order.
pub fn cophenetic_vector<T: Scalar>(
    tree: &ReebGraph<T>,
    ordering: &LeafOrdering,
    convention: TimeConvention,
) -> Result<CopheneticVector<T>, ReebError> {
    let betti = betti_euler(tree);
    if betti > 0 {
        return Err(ReebError::NotATree(betti));
    }
    let view = DagView::build(tree);
    let roots = view.roots();
    if roots.len() != 1 {
        return Err(ReebError::NotRooted(roots.len()));
    }
    let mut expected = sinks(tree);
    let mut given = ordering.leaves.clone();
    expected.sort();
    given.sort();
    if expected != given {
        return Err(ReebError::BadOrdering(format!(
            "expected leaves {expected:?}, got {:?}",
            ordering.leaves
        )));
    }
    let idx = tree.index();
    let parent = |v: &str| {
        idx.above
            .get(v)
            .and_then(|es| es.first())
            .map(|e| idx.edge[e].up.as_str())
    };
    let chain = |v: &str| {
        let mut out = vec![v.to_string()];
        let mut cur = v;
        while let Some(p) = parent(cur) {
            out.push(p.to_string());
            cur = p;
        }
        out
    };
    let height = |v: &str| tree.levels[idx.vertex_level[v]].clone();
    let chains: Vec<Vec<String>> = ordering.leaves.iter().map(|v| chain(v)).collect();
    let n = chains.len();
    let mut entries = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let lca = chains[i]
                .iter()
                .find(|x| chains[j].contains(x))
                .expect("chains share the root");
            entries.push(convention.stamp(&height(lca)));
        }
    }
    Ok(CopheneticVector { leaves: n, entries })
}

/// Exponent of an `l^p` norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    Finite(u32),
    Infinity,
}

impl Norm {
    pub fn parse(text: &str) -> Result<Self, ReebError> {
        match text.trim() {
            "inf" | "infinity" | "∞" => Ok(Norm::Infinity),
            t => match t.parse::<u32>() {
                Ok(p) if p >= 1 => Ok(Norm::Finite(p)),
                _ => Err(ReebError::BadExponent),
            },
        }
    }
}

/// Decimal places certified for roots that leave the rationals.
pub const CERTIFIED_DIGITS: u32 = 12;

/// A distance: exact, or enclosed in `[lower, upper]` with
/// `upper - lower = 10^-digits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(Rational),
    Bounds {
        lower: Rational,
        upper: Rational,
        digits: u32,
    },
}

impl Distance {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Distance::Exact(v) => Some(v),
            Distance::Bounds { .. } => None,
        }
    }

    pub fn lower(&self) -> &Rational {
        match self {
            Distance::Exact(v) | Distance::Bounds { lower: v, .. } => v,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            Distance::Exact(v) | Distance::Bounds { upper: v, .. } => v,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.exact().is_some_and(Zero::is_zero)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(v) => f.write_str(&format_rational(v)),
            // the lower bound is a terminating decimal, truncated
            Distance::Bounds { lower, .. } => write!(f, "{}…", format_rational(lower)),
        }
    }
}

/// `sum |u - v|^p` for finite `p`, `max |u - v|` for infinity.
fn powered<T: Scalar>(
    u: &CopheneticVector<T>,
    v: &CopheneticVector<T>,
    p: Norm,
) -> Result<Rational, ReebError> {
    if u.dimension() != v.dimension() {
        return Err(ReebError::DimensionMismatch(u.dimension(), v.dimension()));
    }
    let diffs = u
        .entries
        .iter()
        .zip(&v.entries)
        .map(|(a, b)| (a.clone() - b.clone()).abs().to_rational());
    Ok(match p {
        Norm::Infinity => diffs.max().unwrap_or_else(Rational::zero),
        Norm::Finite(k) => diffs
            .map(|d| num_traits::pow(d, k as usize))
            .fold(Rational::zero(), |a, b| a + b),
    })
}

/// Takes the `p`-th root of a powered value.
fn finish(value: Rational, p: Norm) -> Distance {
    let k = match p {
        Norm::Infinity | Norm::Finite(1) => return Distance::Exact(value),
        Norm::Finite(k) => k,
    };
    let (num, den) = (value.numer().clone(), value.denom().clone());
    let (rn, rd) = (num.nth_root(k), den.nth_root(k));
    if num_traits::pow(rn.clone(), k as usize) == num
        && num_traits::pow(rd.clone(), k as usize) == den
    {
        return Distance::Exact(Rational::new(rn, rd));
    }
    // floor(value^(1/k) * 10^d) = floor((floor(value * 10^(dk)))^(1/k))
    let digits = CERTIFIED_DIGITS;
    let scale = num_traits::pow(BigInt::from(10u8), digits as usize);
    let scaled = (value * Rational::from_integer(num_traits::pow(scale.clone(), k as usize)))
        .floor()
        .to_integer();
    let root = scaled.nth_root(k);
    let lower = Rational::new(root.clone(), scale.clone());
    let upper = Rational::new(root + BigInt::one(), scale);
    Distance::Bounds {
        lower,
        upper,
        digits,
    }
}

pub fn lp_distance<T: Scalar>(
    u: &CopheneticVector<T>,
    v: &CopheneticVector<T>,
    p: Norm,
) -> Result<Distance, ReebError> {
    Ok(finish(powered(u, v, p)?, p))
}

/// Hausdorff distance between finite point sets under `l^p`. Comparisons are
/// made on exact powered values; the root is taken once.
pub fn hausdorff<T: Scalar>(
    a: &[CopheneticVector<T>],
    b: &[CopheneticVector<T>],
    p: Norm,
) -> Result<Distance, ReebError> {
    if a.is_empty() || b.is_empty() {
        return Err(ReebError::EmptySet);
    }
    let mut table = vec![vec![Rational::zero(); b.len()]; a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            table[i][j] = powered(x, y, p)?;
        }
    }
    let forward = table
        .iter()
        .map(|row| row.iter().min().expect("nonempty").clone())
        .max()
        .expect("nonempty");
    let backward = (0..b.len())
        .map(|j| {
            table
                .iter()
                .map(|row| &row[j])
                .min()
                .expect("nonempty")
                .clone()
        })
        .max()
        .expect("nonempty");
    Ok(finish(forward.max(backward), p))
}

/// Taxa count and Betti number of a network.
pub fn network_shape<T: Scalar>(g: &ReebGraph<T>) -> (usize, usize) {
    (sinks(g).len(), betti_euler(g))
}

/// Cophenetic vectors of every factor, ordered by [`LeafOrdering::for_factor`].
pub fn network_points<T: Scalar>(
    g: &ReebGraph<T>,
    ranks: &BTreeMap<String, u64>,
    convention: TimeConvention,
) -> Result<Vec<CopheneticVector<T>>, ReebError> {
    let roots = DagView::build(g).roots().len();
    if roots != 1 {
        return Err(ReebError::NotRooted(roots));
    }
    factors(g)?
        .map(|f| cophenetic_vector(&f.tree, &LeafOrdering::for_factor(&f, ranks), convention))
        .collect()
}

/// Hausdorff distance between the factor point sets of two networks, using
/// each graph's own leaf ranks.
pub fn network_distance<T: Scalar>(
    a: &ReebGraph<T>,
    b: &ReebGraph<T>,
    p: Norm,
) -> Result<Distance, ReebError> {
    network_distance_ranked(a, b, &a.leaf_ranks, &b.leaf_ranks, p)
}

pub fn network_distance_ranked<T: Scalar>(
    a: &ReebGraph<T>,
    b: &ReebGraph<T>,
    ranks_a: &BTreeMap<String, u64>,
    ranks_b: &BTreeMap<String, u64>,
    p: Norm,
) -> Result<Distance, ReebError> {
    let (sa, sb) = (network_shape(a), network_shape(b));
    if sa != sb {
        return Err(ReebError::IncompatibleShape(format!(
            "{} leaves and Betti {} vs {} leaves and Betti {}",
            sa.0, sa.1, sb.0, sb.1
        )));
    }
    let pa = network_points(a, ranks_a, TimeConvention::Time)?;
    let pb = network_points(b, ranks_b, TimeConvention::Time)?;
    hausdorff(&pa, &pb, p)
}
