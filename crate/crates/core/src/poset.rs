//! Finite partial orders, order ideals and monotone maps.
//!
//! Elements are identified by strings at the API edge and by dense indices
//! internally. Indices always follow the sorted order of the identifiers, so
//! iterating indices in ascending order is iterating identifiers in sorted
//! order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::relation::{transpose, Closure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("`{0}` and `{1}` lie below each other: the relation is a preorder, not a partial order")]
    AntisymmetryViolation(String, String),
    #[error("map has no image for `{0}`")]
    MissingImage(String),
    #[error("map is not monotone: `{0}` <= `{1}` but their images are not ordered")]
    NotMonotone(String, String),
    #[error("set is not down-closed: `{missing}` lies below member `{member}`")]
    NotDownClosed { member: String, missing: String },
}

struct PosetInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `down[x]` = { y | y <= x }
    down: Vec<FixedBitSet>,
    /// `up[x]` = { y | x <= y }
    up: Vec<FixedBitSet>,
}

/// A finite partial order. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Poset(Arc<PosetInner>);

impl Poset {
    /// Builds a poset from identifiers and arbitrary `(lesser, greater)`
    /// pairs, taking the reflexive-transitive closure.
    pub fn build<S, I, P>(elements: I, pairs: P) -> Result<Poset, PosetError>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = S>,
        P: IntoIterator<Item = (S, S)>,
    {
        let mut names: Vec<String> = elements.into_iter().map(|s| s.as_ref().to_owned()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicateElement(w[0].clone()));
        }
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(s.to_owned()))
        };
        let mut edges = Vec::new();
        for (a, b) in pairs {
            edges.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_sorted_edges(names, index, edges)
    }

    /// Builds a poset over `names` (any order) from index pairs into `names`.
    pub fn from_index_pairs(
        names: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Poset, PosetError> {
        let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        let named: Vec<(&str, &str)> = pairs
            .iter()
            .map(|&(a, b)| (names[a].as_str(), names[b].as_str()))
            .collect();
        Poset::build(names.iter().map(String::as_str), named)
    }

    fn from_sorted_edges(
        names: Vec<String>,
        index: HashMap<String, usize>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Poset, PosetError> {
        let closure = Closure::compute(names.len(), edges);
        if let Some(comp) = closure.components.iter().find(|c| c.len() > 1) {
            return Err(PosetError::AntisymmetryViolation(
                names[comp[0]].clone(),
                names[comp[1]].clone(),
            ));
        }
        let down = transpose(&closure.up);
        Ok(Poset(Arc::new(PosetInner {
            names,
            index,
            down,
            up: closure.up,
        })))
    }

    /// Trusted constructor: `names` must be sorted and unique, and `down` a
    /// reflexive, antisymmetric, transitive relation given by down-sets.
    pub(crate) fn from_down_sets(names: Vec<String>, down: Vec<FixedBitSet>) -> Poset {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let up = transpose(&down);
        Poset(Arc::new(PosetInner {
            names,
            index,
            down,
            up,
        }))
    }

    pub fn empty() -> Poset {
        Poset::from_down_sets(Vec::new(), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn index(&self, name: &str) -> Result<usize, PosetError> {
        self.index_of(name)
            .ok_or_else(|| PosetError::UnknownElement(name.to_owned()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.0.up[x].contains(y)
    }

    pub fn leq_names(&self, x: &str, y: &str) -> Result<bool, PosetError> {
        Ok(self.leq(self.index(x)?, self.index(y)?))
    }

    /// `{ y | y <= x }`
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.0.down[x]
    }

    /// `{ y | x <= y }`
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.0.up[x]
    }

    /// All strict pairs `(x, y)` with `x < y`, in index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for x in 0..self.len() {
            pairs.extend(self.0.up[x].ones().filter(|&y| y != x).map(|y| (x, y)));
        }
        pairs
    }

    /// Covering pairs (the Hasse diagram), in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut pairs = Vec::new();
        for x in 0..n {
            let mut strictly_above = self.0.up[x].clone();
            strictly_above.set(x, false);
            let mut covered = strictly_above.clone();
            for z in strictly_above.ones() {
                let mut above_z = self.0.up[z].clone();
                above_z.set(z, false);
                covered.difference_with(&above_z);
            }
            pairs.extend(covered.ones().map(|y| (x, y)));
        }
        pairs
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.0.down[x].count_ones(..) == 1)
            .collect()
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len()).all(|x| self.0.up[x].count_ones(..) == 1)
    }

    /// The sub-poset on `keep` (indices into `self`) with the inherited order.
    pub fn subposet(&self, keep: &[usize]) -> Poset {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let m = keep.len();
        let names: Vec<String> = keep.iter().map(|&i| self.0.names[i].clone()).collect();
        let down = keep
            .iter()
            .map(|&x| {
                let mut row = FixedBitSet::with_capacity(m);
                for (j, &y) in keep.iter().enumerate() {
                    if self.leq(y, x) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Poset::from_down_sets(names, down)
    }

    /// `true` iff `set` is closed downward.
    pub fn is_down_closed(&self, set: &FixedBitSet) -> bool {
        self.first_down_violation(set).is_none()
    }

    fn first_down_violation(&self, set: &FixedBitSet) -> Option<(usize, usize)> {
        for x in set.ones() {
            if !self.0.down[x].is_subset(set) {
                let missing = self.0.down[x].difference(set).next().expect("nonempty difference");
                return Some((x, missing));
            }
        }
        None
    }

    fn subset_from_names<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<FixedBitSet, PosetError> {
        let mut set = FixedBitSet::with_capacity(self.len());
        for n in names {
            set.insert(self.index(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn is_order_ideal<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<bool, PosetError> {
        Ok(self.is_down_closed(&self.subset_from_names(names)?))
    }

    /// `↓x`
    pub fn principal_ideal(&self, name: &str) -> Result<OrderIdeal, PosetError> {
        Ok(self.principal_ideal_at(self.index(name)?))
    }

    pub fn principal_ideal_at(&self, x: usize) -> OrderIdeal {
        OrderIdeal {
            poset: self.clone(),
            members: self.0.down[x].clone(),
        }
    }

    pub fn ideal_from_names<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<OrderIdeal, PosetError> {
        self.ideal_from_set(self.subset_from_names(names)?)
    }

    pub fn ideal_from_set(&self, members: FixedBitSet) -> Result<OrderIdeal, PosetError> {
        let mut members = members;
        members.grow(self.len());
        if let Some((x, missing)) = self.first_down_violation(&members) {
            return Err(PosetError::NotDownClosed {
                member: self.name(x).to_owned(),
                missing: self.name(missing).to_owned(),
            });
        }
        Ok(OrderIdeal {
            poset: self.clone(),
            members,
        })
    }

    pub fn empty_ideal(&self) -> OrderIdeal {
        OrderIdeal {
            poset: self.clone(),
            members: FixedBitSet::with_capacity(self.len()),
        }
    }

    pub fn full_ideal(&self) -> OrderIdeal {
        let mut members = FixedBitSet::with_capacity(self.len());
        members.insert_range(..);
        OrderIdeal {
            poset: self.clone(),
            members,
        }
    }

    /// Streams every order ideal exactly once, ordered by cardinality and
    /// then lexicographically on the sorted member identifiers.
    ///
    /// The number of ideals can be exponential in `self.len()`.
    pub fn ideals(&self) -> Ideals {
        Ideals::new(self.clone())
    }

    pub fn same_as(&self, other: &Poset) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.names == other.0.names && self.0.up == other.0.up)
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> = self
            .covers()
            .into_iter()
            .map(|(x, y)| (self.name(x), self.name(y)))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.0.names)
            .field("covers", &covers)
            .finish()
    }
}

/// Renders a set of identifiers as `{a,b}`; `names` must already be sorted.
pub fn set_literal<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> String {
    let mut out = String::from("{");
    for (i, n) in names.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(n.as_ref());
    }
    out.push('}');
    out
}

/// A down-closed subset of a poset.
#[derive(Clone)]
pub struct OrderIdeal {
    poset: Poset,
    members: FixedBitSet,
}

impl OrderIdeal {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn into_members(self) -> FixedBitSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    /// Member identifiers in sorted order.
    pub fn names(&self) -> Vec<&str> {
        self.members.ones().map(|i| self.poset.name(i)).collect()
    }

    /// Canonical `{a,b}` rendering.
    pub fn canonical_name(&self) -> String {
        set_literal(self.names())
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &OrderIdeal) -> OrderIdeal {
        debug_assert!(self.poset.same_as(&other.poset));
        let mut members = self.members.clone();
        members.union_with(&other.members);
        OrderIdeal {
            poset: self.poset.clone(),
            members,
        }
    }

    pub fn intersection(&self, other: &OrderIdeal) -> OrderIdeal {
        debug_assert!(self.poset.same_as(&other.poset));
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        OrderIdeal {
            poset: self.poset.clone(),
            members,
        }
    }
}

impl PartialEq for OrderIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.poset.same_as(&other.poset)
    }
}

impl Eq for OrderIdeal {}

impl fmt::Debug for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_name())
    }
}

impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_name())
    }
}

/// Streaming enumeration of the order ideals of a poset.
///
/// For each target size `k` a depth-first search decides the elements in
/// index order, include before exclude. A node carries the down-closure of
/// the included elements and the up-closure of the excluded ones; the ideals
/// between those two bounds have every size from `|down|` to `n - |up|`, so
/// infeasible branches are cut immediately and every leaf is an output.
pub struct Ideals {
    poset: Poset,
    size: usize,
    stack: Vec<Node>,
    done: bool,
}

struct Node {
    next: usize,
    down: FixedBitSet,
    up: FixedBitSet,
}

impl Ideals {
    fn new(poset: Poset) -> Self {
        let mut it = Ideals {
            poset,
            size: 0,
            stack: Vec::new(),
            done: false,
        };
        it.push_root();
        it
    }

    fn push_root(&mut self) {
        let n = self.poset.len();
        self.stack.push(Node {
            next: 0,
            down: FixedBitSet::with_capacity(n),
            up: FixedBitSet::with_capacity(n),
        });
    }
}

impl Iterator for Ideals {
    type Item = OrderIdeal;

    fn next(&mut self) -> Option<OrderIdeal> {
        if self.done {
            return None;
        }
        let n = self.poset.len();
        loop {
            let k = self.size;
            let Some(mut node) = self.stack.pop() else {
                self.size += 1;
                if self.size > n {
                    self.done = true;
                    return None;
                }
                self.push_root();
                continue;
            };
            while node.next < n && (node.down.contains(node.next) || node.up.contains(node.next)) {
                node.next += 1;
            }
            if node.next == n {
                debug_assert_eq!(node.down.count_ones(..), k);
                return Some(OrderIdeal {
                    poset: self.poset.clone(),
                    members: node.down,
                });
            }
            let x = node.next;
            let mut excluded_up = node.up.clone();
            excluded_up.union_with(self.poset.up_set(x));
            if k + excluded_up.count_ones(..) <= n {
                self.stack.push(Node {
                    next: x + 1,
                    down: node.down.clone(),
                    up: excluded_up,
                });
            }
            let mut included_down = node.down;
            included_down.union_with(self.poset.down_set(x));
            if included_down.count_ones(..) <= k && included_down.is_disjoint(&node.up) {
                self.stack.push(Node {
                    next: x + 1,
                    down: included_down,
                    up: node.up,
                });
            }
        }
    }
}

/// An order-preserving total map between two posets.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    domain: Poset,
    codomain: Poset,
    table: Vec<usize>,
}

impl MonotoneMap {
    /// Validates a raw identifier table.
    pub fn from_names<K: AsRef<str>, V: AsRef<str>>(
        domain: &Poset,
        codomain: &Poset,
        raw: impl IntoIterator<Item = (K, V)>,
    ) -> Result<MonotoneMap, PosetError> {
        let mut table: Vec<Option<usize>> = vec![None; domain.len()];
        for (k, v) in raw {
            let x = domain.index(k.as_ref())?;
            let y = codomain.index(v.as_ref())?;
            table[x] = Some(y);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| PosetError::MissingImage(domain.name(x).to_owned())))
            .collect::<Result<Vec<_>, _>>()?;
        MonotoneMap::from_indices(domain, codomain, table)
    }

    /// Validates an index table; reports the first violating pair in index
    /// order.
    pub fn from_indices(
        domain: &Poset,
        codomain: &Poset,
        table: Vec<usize>,
    ) -> Result<MonotoneMap, PosetError> {
        assert_eq!(table.len(), domain.len(), "table must be total on the domain");
        assert!(table.iter().all(|&y| y < codomain.len()), "image out of range");
        for x in 0..domain.len() {
            for y in domain.up_set(x).ones() {
                if !codomain.leq(table[x], table[y]) {
                    return Err(PosetError::NotMonotone(
                        domain.name(x).to_owned(),
                        domain.name(y).to_owned(),
                    ));
                }
            }
        }
        Ok(MonotoneMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
    }

    /// Skips the monotonicity check.
    pub(crate) fn new_unchecked(domain: &Poset, codomain: &Poset, table: Vec<usize>) -> MonotoneMap {
        MonotoneMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        }
    }

    pub fn identity(poset: &Poset) -> MonotoneMap {
        MonotoneMap {
            domain: poset.clone(),
            codomain: poset.clone(),
            table: (0..poset.len()).collect(),
        }
    }

    pub fn domain(&self) -> &Poset {
        &self.domain
    }

    pub fn codomain(&self) -> &Poset {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn apply(&self, name: &str) -> Result<&str, PosetError> {
        Ok(self.codomain.name(self.table[self.domain.index(name)?]))
    }

    pub fn is_endomap(&self) -> bool {
        self.domain.same_as(&self.codomain)
    }

    /// `{ x | self(x) ∈ set }`
    pub fn preimage(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.domain.len());
        for (x, &y) in self.table.iter().enumerate() {
            if set.contains(y) {
                out.insert(x);
            }
        }
        out
    }

    /// `next ∘ self`
    pub fn then(&self, next: &MonotoneMap) -> MonotoneMap {
        assert!(self.codomain.same_as(&next.domain), "maps are not composable");
        MonotoneMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            table: self.table.iter().map(|&y| next.table[y]).collect(),
        }
    }

    pub fn to_name_map(&self) -> BTreeMap<String, String> {
        self.table
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.domain.name(x).to_owned(), self.codomain.name(y).to_owned()))
            .collect()
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.to_name_map()).finish()
    }
}
