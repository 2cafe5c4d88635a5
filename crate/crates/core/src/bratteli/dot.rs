use std::fmt::Write;

use super::OrderedDiagram;

/// Graphviz rendering. Vertices are named `L<level>_<label>`; each edge
/// carries its order index as `label`. Edges are sorted by level, range
/// vertex and order index, so the output is byte-stable.
pub fn export_dot(d: &OrderedDiagram) -> String {
    let mut out = String::from("digraph bratteli {\n");
    for (level, labels) in d.levels.iter().enumerate() {
        for label in labels {
            writeln!(out, "  \"L{level}_{label}\";").unwrap();
        }
    }
    for level in 1..d.levels.len() {
        for (v, ord) in d.order[level].iter().enumerate() {
            for (k, &e) in ord.iter().enumerate() {
                let src = d.edges[level][e].source.index;
                writeln!(
                    out,
                    "  \"L{}_{}\" -> \"L{}_{}\" [label=\"{}\"];",
                    level - 1,
                    d.levels[level - 1][src],
                    level,
                    d.levels[level][v],
                    k
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bratteli::stationary_from_substitution;
    use crate::words::Substitution;

    #[test]
    fn odometer_dot() {
        let s: Substitution = "a -> aa".parse().unwrap();
        let d = stationary_from_substitution(&s, &[2]).unroll(1);
        assert_eq!(
            export_dot(&d),
            "digraph bratteli {\n  \"L0_v0\";\n  \"L1_a\";\n  \"L0_v0\" -> \"L1_a\" [label=\"0\"];\n  \"L0_v0\" -> \"L1_a\" [label=\"1\"];\n}\n"
        );
    }
}
