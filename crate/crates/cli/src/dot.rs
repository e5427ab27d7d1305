//! DOT export of the torus containment poset.

use std::collections::BTreeMap;

use kgonal::{contains, TorusClass};

/// Render the Hasse diagram of the deduplicated tori as a DOT digraph.
/// Edges point from contained to containing torus, so the sinks are
/// exactly the containment-maximal tori; scrollar-backed nodes are filled.
pub fn hasse_dot(tori: &[TorusClass], scrollar: &[bool]) -> String {
    let n = tori.len();
    let below = |i: usize, j: usize| i != j && contains(&tori[i], &tori[j]);
    let mut out = String::from("digraph torus_poset {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, u) in tori.iter().enumerate() {
        let label = constraint_label(u.constraints());
        let style = if scrollar[i] {
            ", style=filled, fillcolor=lightgrey"
        } else {
            ""
        };
        out.push_str(&format!(
            "  t{i} [label=\"dim {}\\n{label}\"{style}];\n",
            u.dimension()
        ));
    }
    for i in 0..n {
        for j in 0..n {
            if below(i, j) && !(0..n).any(|m| below(i, m) && below(m, j)) {
                out.push_str(&format!("  t{i} -> t{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

fn constraint_label(constraints: &BTreeMap<i64, i64>) -> String {
    let body: Vec<String> = constraints
        .iter()
        .map(|(j, r)| format!("{j}:{r}"))
        .collect();
    format!("{{{}}}", body.join(","))
}
