use std::fmt;

use fixedbitset::FixedBitSet;

use super::union_find::UnionFind;
use super::FixpointError;
use crate::poset::{MonotoneMap, Poset};
use crate::relation::Closure;

/// Equivalence classes of a poset's elements with the partial order they
/// inherit from a generating preorder `⪯`.
///
/// Classes are named after their least member identifier, as `[p]`, and are
/// indexed in the order of those names.
#[derive(Clone)]
pub struct QuotientPoset {
    base: Poset,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    class_order: Poset,
    /// `preorder[x]` = { y | x ⪯ y }
    preorder: Vec<FixedBitSet>,
}

impl QuotientPoset {
    /// Classes are the connected components of the undirected graph with
    /// edges `{x, φ(x)}`; the class order is generated by the base order.
    /// Fails if that generated relation identifies two distinct components.
    pub fn from_components(phi: &MonotoneMap) -> Result<QuotientPoset, FixpointError> {
        let base = endo_base(phi)?;
        let n = base.len();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, phi.image(x));
        }
        let groups = uf.groups();
        let g = groups.len();
        let mut group_of = vec![0usize; n];
        for (i, members) in groups.iter().enumerate() {
            for &x in members {
                group_of[x] = i;
            }
        }

        let mut adjacent = vec![FixedBitSet::with_capacity(g); g];
        for x in 0..n {
            for y in base.up_set(x).ones() {
                adjacent[group_of[x]].insert(group_of[y]);
            }
        }
        let reach: Vec<FixedBitSet> = (0..g)
            .map(|start| {
                let mut seen = FixedBitSet::with_capacity(g);
                seen.insert(start);
                let mut stack = vec![start];
                while let Some(c) = stack.pop() {
                    for d in adjacent[c].ones() {
                        if !seen.put(d) {
                            stack.push(d);
                        }
                    }
                }
                seen
            })
            .collect();

        for a in 0..g {
            for b in reach[a].ones().filter(|&b| b > a) {
                if reach[b].contains(a) {
                    return Err(FixpointError::QuotientNotAntisymmetric {
                        first: class_name(&base, &groups[a]),
                        second: class_name(&base, &groups[b]),
                    });
                }
            }
        }

        let preorder = (0..n)
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(n);
                for y in 0..n {
                    if reach[group_of[x]].contains(group_of[y]) {
                        row.insert(y);
                    }
                }
                row
            })
            .collect();
        Ok(Self::assemble(base, groups, preorder))
    }

    /// The co-equalizer of `φ` and the identity: `⪯` is the least preorder
    /// containing the base order and both `(x, φ(x))` and `(φ(x), x)`;
    /// classes are its strongly connected classes.
    pub fn coequalizer(phi: &MonotoneMap) -> Result<QuotientPoset, FixpointError> {
        let base = endo_base(phi)?;
        let n = base.len();
        let mut edges = Vec::new();
        for x in 0..n {
            edges.extend(base.up_set(x).ones().filter(|&y| y != x).map(|y| (x, y)));
            edges.push((x, phi.image(x)));
            edges.push((phi.image(x), x));
        }
        let closure = Closure::compute(n, edges);
        Ok(Self::assemble(base, closure.components, closure.up))
    }

    fn assemble(base: Poset, groups: Vec<Vec<usize>>, preorder: Vec<FixedBitSet>) -> QuotientPoset {
        let mut named: Vec<(String, Vec<usize>)> = groups
            .into_iter()
            .map(|members| (class_name(&base, &members), members))
            .collect();
        named.sort_by(|a, b| a.0.cmp(&b.0));
        let g = named.len();
        let mut class_of = vec![0usize; base.len()];
        for (c, (_, members)) in named.iter().enumerate() {
            for &x in members {
                class_of[x] = c;
            }
        }
        let down = (0..g)
            .map(|c| {
                let rep = named[c].1[0];
                let mut row = FixedBitSet::with_capacity(g);
                for (d, (_, members)) in named.iter().enumerate() {
                    if preorder[members[0]].contains(rep) {
                        row.insert(d);
                    }
                }
                row
            })
            .collect();
        let (names, classes): (Vec<String>, Vec<Vec<usize>>) = named.into_iter().unzip();
        let class_order = Poset::from_down_sets(names, down);
        QuotientPoset {
            base,
            classes,
            class_of,
            class_order,
            preorder,
        }
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    /// The partial order `C` on classes.
    pub fn class_order(&self) -> &Poset {
        &self.class_order
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Members of class `c`, ascending.
    pub fn class_members(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_name(&self, c: usize) -> &str {
        self.class_order.name(c)
    }

    /// `x ⪯ y` in the generating preorder.
    pub fn generated_leq(&self, x: usize, y: usize) -> bool {
        self.preorder[x].contains(y)
    }

    /// Union of the classes in `ideal` (a set of class indices) as a set of
    /// base elements.
    pub fn union_of(&self, classes: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.base.len());
        for c in classes.ones() {
            for &x in &self.classes[c] {
                out.insert(x);
            }
        }
        out
    }
}

fn endo_base(phi: &MonotoneMap) -> Result<Poset, FixpointError> {
    if phi.is_endomap() {
        Ok(phi.domain().clone())
    } else {
        Err(FixpointError::NotEndomap)
    }
}

fn class_name(base: &Poset, members: &[usize]) -> String {
    let least = members
        .iter()
        .map(|&x| base.name(x))
        .min()
        .expect("classes are nonempty");
    format!("[{least}]")
}

impl PartialEq for QuotientPoset {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.classes == other.classes
            && self.class_order == other.class_order
            && self.preorder == other.preorder
    }
}

impl Eq for QuotientPoset {}

impl fmt::Debug for QuotientPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<(&str, Vec<&str>)> = (0..self.len())
            .map(|c| {
                (
                    self.class_name(c),
                    self.classes[c].iter().map(|&x| self.base.name(x)).collect(),
                )
            })
            .collect();
        f.debug_struct("QuotientPoset")
            .field("classes", &classes)
            .field("order", &self.class_order)
            .finish()
    }
}
