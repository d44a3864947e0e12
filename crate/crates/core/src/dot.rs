//! Graphviz DOT rendering.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::fixpoint::QuotientPoset;
use crate::poset::{MonotoneMap, Poset};

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Hasse diagram: covering edges only, lesser → greater.
pub fn hasse(poset: &Poset) -> String {
    let mut out = String::from("digraph poset {\n");
    for name in poset.names() {
        writeln!(out, "  {};", quoted(name)).unwrap();
    }
    for (x, y) in poset.covers() {
        writeln!(out, "  {} -> {};", quoted(poset.name(x)), quoted(poset.name(y))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The undirected graph of an endo-map: one edge `x -- φ(x)` per unordered
/// pair, fixed points drawn without a self-loop.
pub fn map_graph(phi: &MonotoneMap) -> String {
    let poset = phi.domain();
    let mut edges = BTreeSet::new();
    for x in 0..poset.len() {
        let y = phi.image(x);
        if x != y {
            edges.insert((x.min(y), x.max(y)));
        }
    }
    let mut out = String::from("graph phi {\n");
    for name in poset.names() {
        writeln!(out, "  {};", quoted(name)).unwrap();
    }
    for (x, y) in edges {
        writeln!(out, "  {} -- {};", quoted(poset.name(x)), quoted(poset.name(y))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The quotient poset: one cluster per class, labelled with its members and
/// holding a single class node, with covering edges between classes.
pub fn quotient(q: &QuotientPoset) -> String {
    let base = q.base();
    let order = q.class_order();
    let mut out = String::from("digraph quotient {\n");
    for c in 0..q.len() {
        let members: Vec<&str> = q.class_members(c).iter().map(|&x| base.name(x)).collect();
        writeln!(out, "  subgraph cluster_{c} {{").unwrap();
        writeln!(out, "    label={};", quoted(&crate::poset::set_literal(members))).unwrap();
        writeln!(out, "    {};", quoted(q.class_name(c))).unwrap();
        out.push_str("  }\n");
    }
    for (a, b) in order.covers() {
        writeln!(out, "  {} -> {};", quoted(order.name(a)), quoted(order.name(b))).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_single_edge() {
        let p = Poset::build(["p", "q"], [("p", "q")]).unwrap();
        assert_eq!(hasse(&p), "digraph poset {\n  \"p\";\n  \"q\";\n  \"p\" -> \"q\";\n}\n");
    }

    #[test]
    fn hasse_skips_transitive_edges() {
        let p = Poset::build(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(hasse(&p).matches("->").count(), 2);
    }

    #[test]
    fn swap_renders_one_undirected_edge() {
        let p = Poset::build(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        let phi = MonotoneMap::from_names(&p, &p, [("a", "b"), ("b", "a")]).unwrap();
        let dot = map_graph(&phi);
        assert!(dot.starts_with("graph phi {"));
        assert_eq!(dot.matches("--").count(), 1);
        assert!(dot.contains("\"a\" -- \"b\";"));
    }

    #[test]
    fn collapsed_quotient_is_a_single_node() {
        let p = Poset::build(["p", "q"], [("p", "q")]).unwrap();
        let phi = MonotoneMap::from_names(&p, &p, [("p", "q"), ("q", "q")]).unwrap();
        let q = QuotientPoset::from_components(&phi).unwrap();
        let dot = quotient(&q);
        assert_eq!(dot.matches("subgraph").count(), 1);
        assert!(dot.contains("label=\"{p,q}\""));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn identifiers_are_escaped() {
        let p = Poset::build(["say \"hi\""], Vec::<(&str, &str)>::new()).unwrap();
        assert!(hasse(&p).contains(r#""say \"hi\"""#));
    }
}
