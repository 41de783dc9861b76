#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reeb::{generate, GeneratorSpec, IntReebGraph};

/// Small random graph: |V| <= max_vertices when some seed allows it.
pub fn small_graph(seed: u64, max_vertices: usize) -> Option<IntReebGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for attempt in 0..50u64 {
        let betti = rng.gen_range(0..=3);
        let leaves = rng.gen_range(if betti == 0 { 2 } else { 1 }..=4);
        let levels = rng.gen_range(2..=4);
        let spec = GeneratorSpec::new(seed.wrapping_mul(97).wrapping_add(attempt), leaves, betti)
            .with_levels(levels)
            .with_max_indeg(3);
        if let Ok(g) = generate::<i64>(&spec) {
            if g.vertex_count() <= max_vertices {
                return Some(g);
            }
        }
    }
    None
}

/// Random bijective renaming of vertex and edge ids.
pub fn shuffle_ids(g: &IntReebGraph, seed: u64) -> IntReebGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vs: Vec<String> = g.all_vertices().map(|(_, v)| v.to_string()).collect();
    let mut es: Vec<String> = g.all_edges().map(|(_, e)| e.id.clone()).collect();
    let targets_v: Vec<String> = {
        let mut t: Vec<String> = (0..vs.len()).map(|i| format!("n{i}")).collect();
        t.shuffle(&mut rng);
        t
    };
    let targets_e: Vec<String> = {
        let mut t: Vec<String> = (0..es.len()).map(|i| format!("k{i}")).collect();
        t.shuffle(&mut rng);
        t
    };
    vs.sort();
    es.sort();
    let vmap: std::collections::HashMap<String, String> = vs.into_iter().zip(targets_v).collect();
    let emap: std::collections::HashMap<String, String> = es.into_iter().zip(targets_e).collect();
    g.rename(|v| vmap[v].clone(), |e| emap[e].clone())
}

/// Moves the lower end of one edge to another vertex on the same level,
/// keeping the result only if it is still a valid graph.
pub fn perturb(g: &IntReebGraph, seed: u64) -> Option<IntReebGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let mut h = g.clone();
        let gap = rng.gen_range(0..h.edges.len());
        if h.edges[gap].is_empty() || h.vertices[gap].len() < 2 {
            continue;
        }
        let ei = rng.gen_range(0..h.edges[gap].len());
        let target = h.vertices[gap].choose(&mut rng).unwrap().clone();
        if h.edges[gap][ei].down == target {
            continue;
        }
        h.edges[gap][ei].down = target;
        if h.validate().is_valid() {
            return Some(h);
        }
    }
    None
}

/// The i-th spec of the shared corpus: n in 1..=8, s in 0..=4.
pub fn corpus_spec(i: u64) -> GeneratorSpec {
    let betti = (i % 5) as usize;
    let leaves = 1 + ((i / 5) % 8) as usize;
    let leaves = if betti == 0 { leaves.max(2) } else { leaves };
    let levels = 3 + ((i / 40) % 5) as usize;
    // a single taxon with many cycles needs room for a ladder of merges
    let levels = if leaves == 1 && betti >= 3 {
        levels.max(5)
    } else {
        levels
    };
    let max_indeg = 2 + ((i / 200) % 2) as usize;
    GeneratorSpec::new(i.wrapping_mul(0x9e37_79b9_7f4a_7c15), leaves, betti)
        .with_levels(levels)
        .with_max_indeg(max_indeg)
}

/// The fifty extended-Newick networks under `data/corpus`, in file order.
pub fn network_corpus() -> Vec<String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/corpus");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.expect("readable entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "enwk"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| std::fs::read_to_string(p).expect("readable corpus file"))
        .collect()
}
