//! Reflexive-transitive closure of finite relations over dense indices.

use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Closure of a relation given as edges over `0..n`, condensed by strongly
/// connected components.
pub(crate) struct Closure {
    /// `up[x]` holds every `y` with `x ⪯ y`.
    pub up: Vec<FixedBitSet>,
    /// Strongly connected components, each sorted ascending, ordered by
    /// their smallest member.
    pub components: Vec<Vec<usize>>,
}

impl Closure {
    pub fn compute(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
        for _ in 0..n {
            graph.add_node(());
        }
        for (a, b) in edges {
            if a != b {
                graph.update_edge(NodeIndex::new(a), NodeIndex::new(b), ());
            }
        }

        // tarjan_scc yields components in post-order: every component comes
        // after all components reachable from it.
        let sccs = tarjan_scc(&graph);
        let mut scc_of = vec![0usize; n];
        for (c, scc) in sccs.iter().enumerate() {
            for node in scc {
                scc_of[node.index()] = c;
            }
        }
        let mut reach: Vec<FixedBitSet> = Vec::with_capacity(sccs.len());
        for (c, scc) in sccs.iter().enumerate() {
            let mut row = FixedBitSet::with_capacity(n);
            for node in scc {
                row.insert(node.index());
            }
            for node in scc {
                for succ in graph.neighbors(*node) {
                    let sc = scc_of[succ.index()];
                    if sc != c {
                        row.union_with(&reach[sc]);
                    }
                }
            }
            reach.push(row);
        }

        let up = (0..n).map(|x| reach[scc_of[x]].clone()).collect();

        let mut components: Vec<Vec<usize>> = sccs
            .into_iter()
            .map(|scc| {
                let mut members: Vec<usize> = scc.into_iter().map(|v| v.index()).collect();
                members.sort_unstable();
                members
            })
            .collect();
        components.sort_unstable_by_key(|members| members[0]);

        Closure { up, components }
    }
}

/// Transposes a square bit matrix given as rows.
pub(crate) fn transpose(rows: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = rows.len();
    let mut cols = vec![FixedBitSet::with_capacity(n); n];
    for (x, row) in rows.iter().enumerate() {
        for y in row.ones() {
            cols[y].insert(x);
        }
    }
    cols
}
