//! Graphviz output. Each level is a `rank=same` group, highest level first;
//! edges point from the upper endpoint to the lower one. Order covers are
//! dashed edges that do not constrain the layout.

use std::fmt::Write;

use crate::graph::ReebGraph;
use crate::scalar::Scalar;

fn quoted(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn write_dot<T: Scalar>(graph: &ReebGraph<T>) -> String {
    let g = graph.clone().canonicalize();
    let mut out = String::from("digraph reeb {\n  rankdir=TB;\n  node [shape=circle];\n");
    for (i, vs) in g.vertices.iter().enumerate().rev() {
        let _ = writeln!(
            out,
            "  {{ rank=same; // level {} = {}",
            i,
            g.levels[i].to_decimal()
        );
        for v in vs {
            let rank = g
                .leaf_ranks
                .get(v)
                .map(|r| format!(" [xlabel=\"{r}\"]"))
                .unwrap_or_default();
            let _ = writeln!(out, "    {}{};", quoted(v), rank);
        }
        out.push_str("  }\n");
    }
    for (gap, es) in g.edges.iter().enumerate().rev() {
        for e in es {
            let label = g
                .label(gap, &e.id)
                .map(|l| format!(" / {l}"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quoted(&e.up),
                quoted(&e.down),
                quoted(&format!("{}{}", e.id, label))
            );
        }
    }
    for (i, p) in g.vertex_orders.iter().enumerate().rev() {
        for (lo, hi) in &p.covers {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dashed, constraint=false]; // level {i}",
                quoted(lo),
                quoted(hi)
            );
        }
    }
    for (gap, p) in g.edge_orders.iter().enumerate().rev() {
        for (lo, hi) in &p.covers {
            let _ = writeln!(out, "  // edge order at gap {gap}: {lo} < {hi}");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn output_is_stable() {
        let g = fixtures::example2::<i64>();
        assert_eq!(write_dot(&g), write_dot(&g.clone().canonicalize()));
    }

    #[test]
    fn trivial_orders_have_no_dashed_edges() {
        let g = fixtures::example2::<i64>().forget_decorations();
        let dot = write_dot(&g);
        assert!(!dot.contains("dashed"));
        assert_eq!(dot.matches(" -> ").count(), g.edge_count());
        assert_eq!(dot.matches("rank=same").count(), g.level_count());
    }

    #[test]
    fn covers_are_dashed() {
        let mut g = fixtures::example2::<i64>().forget_decorations();
        let (a, b) = (g.vertices[0][0].clone(), g.vertices[0][1].clone());
        g.vertex_orders[0].add_cover(a, b);
        assert_eq!(write_dot(&g).matches("dashed").count(), 1);
    }
}
