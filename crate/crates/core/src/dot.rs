//! Graphviz output of Hasse diagrams.

use std::fmt::Write;

use crate::poset::FinitePoset;

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A `digraph` with one node per element and one edge per covering pair,
/// drawn from the lower element to the upper. Nodes and edges appear in
/// sorted label order.
pub fn dot_emit(p: &FinitePoset, name: &str) -> String {
    let mut nodes: Vec<&str> = p.labels().iter().map(String::as_str).collect();
    nodes.sort();
    let mut edges = p.hasse_labels();
    edges.sort();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for n in nodes {
        writeln!(out, "  {};", quote(n)).unwrap();
    }
    for (a, b) in edges {
        writeln!(out, "  {} -> {};", quote(&a), quote(&b)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(text: &str, pat: &str) -> usize {
        text.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn empty_and_chain() {
        let d = dot_emit(&FinitePoset::antichain(0), "P");
        assert_eq!(d, "digraph \"P\" {\n  rankdir=BT;\n}\n");
        let d = dot_emit(&FinitePoset::chain(&["a", "b"]).unwrap(), "P");
        assert_eq!(count(&d, "->"), 1);
        assert!(d.contains("\"a\" -> \"b\";"));
    }

    #[test]
    fn boolean_square() {
        let b2 = crate::birkhoff::downset_lattice(&FinitePoset::antichain(2)).unwrap();
        let d = dot_emit(b2.lattice().order(), "B2");
        assert_eq!(count(&d, "->"), 4);
        assert_eq!(d.lines().filter(|l| l.ends_with(';') && !l.contains("->") && !l.contains('=')).count(), 4);
    }

    #[test]
    fn quotes_are_escaped() {
        let p = FinitePoset::discrete(&["say \"hi\""]).unwrap();
        assert!(dot_emit(&p, "q").contains("\"say \\\"hi\\\"\""));
    }
}
