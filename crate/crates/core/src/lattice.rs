//! Explicit finite distributive lattices, homomorphisms, join-irreducibles
//! and the Birkhoff representation.
//!
//! Explicit lattices carry full meet and join tables and are only meant for
//! validation and small oracles; fix-point computation itself stays on the
//! dual poset.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::poset::{set_literal, OrderIdeal, Poset, PosetError};

/// One of the four homomorphism laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Meet,
    Join,
    Bot,
    Top,
}

impl Law {
    pub fn as_str(self) -> &'static str {
        match self {
            Law::Meet => "meet",
            Law::Join => "join",
            Law::Bot => "bot",
            Law::Top => "top",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("the empty poset is not a lattice")]
    Empty,
    #[error("not a lattice: `{x}` and `{y}` have no {} ", if *.meet { "greatest lower bound" } else { "least upper bound" })]
    NotALattice { x: String, y: String, meet: bool },
    #[error("not distributive: {a} ⊓ ({b} ⊔ {c}) ≠ ({a} ⊓ {b}) ⊔ ({a} ⊓ {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("lattice would have more than {bound} elements")]
    SizeBoundExceeded { bound: usize },
    #[error("homomorphism violates the {law} law at {}", witness_text(.a, .b))]
    NotHom {
        law: Law,
        a: String,
        b: Option<String>,
    },
    #[error("map is not an endomorphism")]
    NotEndomorphism,
}

fn witness_text(a: &str, b: &Option<String>) -> String {
    match b {
        Some(b) => format!("({a}, {b})"),
        None => a.to_owned(),
    }
}

/// How an ideal lattice's elements correspond to ideals of its base poset.
struct IdealForm {
    base: Poset,
    sets: Vec<FixedBitSet>,
    lookup: HashMap<FixedBitSet, usize>,
}

struct LatticeInner {
    order: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bot: usize,
    top: usize,
    ideals: Option<IdealForm>,
}

/// A validated finite distributive lattice. Cheap to clone.
#[derive(Clone)]
pub struct FiniteLattice(Arc<LatticeInner>);

impl FiniteLattice {
    /// Derives meet and join tables from `order` and checks the lattice and
    /// distributivity axioms.
    pub fn from_order(order: &Poset) -> Result<FiniteLattice, LatticeError> {
        let n = order.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let bound_table = |meet: bool| -> Result<Vec<usize>, LatticeError> {
            let mut table = vec![0usize; n * n];
            for x in 0..n {
                for y in x..n {
                    let (rx, ry) = if meet {
                        (order.down_set(x), order.down_set(y))
                    } else {
                        (order.up_set(x), order.up_set(y))
                    };
                    let mut bounds = rx.clone();
                    bounds.intersect_with(ry);
                    let size = bounds.count_ones(..);
                    // the extremal bound is the one whose own down-set (resp.
                    // up-set) is exactly the set of common bounds
                    let best = bounds.ones().find(|&g| {
                        let row = if meet { order.down_set(g) } else { order.up_set(g) };
                        row.count_ones(..) == size
                    });
                    let Some(g) = best else {
                        return Err(LatticeError::NotALattice {
                            x: order.name(x).to_owned(),
                            y: order.name(y).to_owned(),
                            meet,
                        });
                    };
                    table[x * n + y] = g;
                    table[y * n + x] = g;
                }
            }
            Ok(table)
        };
        let meet = bound_table(true)?;
        let join = bound_table(false)?;
        let bot = (0..n)
            .find(|&x| order.up_set(x).count_ones(..) == n)
            .expect("a finite lattice has a bottom");
        let top = (0..n)
            .find(|&x| order.down_set(x).count_ones(..) == n)
            .expect("a finite lattice has a top");

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = meet[a * n + join[b * n + c]];
                    let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                    if lhs != rhs {
                        return Err(LatticeError::NotDistributive {
                            a: order.name(a).to_owned(),
                            b: order.name(b).to_owned(),
                            c: order.name(c).to_owned(),
                        });
                    }
                }
            }
        }

        Ok(FiniteLattice(Arc::new(LatticeInner {
            order: order.clone(),
            meet,
            join,
            bot,
            top,
            ideals: None,
        })))
    }

    /// The lattice `⟨O(P), ⊆, ∩, ∪, ∅, P⟩`, elements named by
    /// [`set_literal`]. Fails once more than `bound` ideals are seen.
    pub fn of_ideals(base: &Poset, bound: usize) -> Result<FiniteLattice, LatticeError> {
        let mut ideals: Vec<(String, FixedBitSet)> = Vec::new();
        for ideal in base.ideals() {
            if ideals.len() == bound {
                return Err(LatticeError::SizeBoundExceeded { bound });
            }
            ideals.push((ideal.canonical_name(), ideal.into_members()));
        }
        ideals.sort_by(|a, b| a.0.cmp(&b.0));
        let m = ideals.len();
        let (names, sets): (Vec<String>, Vec<FixedBitSet>) = ideals.into_iter().unzip();
        let lookup: HashMap<FixedBitSet, usize> =
            sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

        let down = (0..m)
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(m);
                for y in 0..m {
                    if sets[y].is_subset(&sets[x]) {
                        row.insert(y);
                    }
                }
                row
            })
            .collect();
        let order = Poset::from_down_sets(names, down);

        let mut meet = vec![0usize; m * m];
        let mut join = vec![0usize; m * m];
        for x in 0..m {
            for y in x..m {
                let mut i = sets[x].clone();
                i.intersect_with(&sets[y]);
                let mut u = sets[x].clone();
                u.union_with(&sets[y]);
                let (i, u) = (lookup[&i], lookup[&u]);
                meet[x * m + y] = i;
                meet[y * m + x] = i;
                join[x * m + y] = u;
                join[y * m + x] = u;
            }
        }
        let bot = lookup[&FixedBitSet::with_capacity(base.len())];
        let top = lookup[base.full_ideal().members()];

        Ok(FiniteLattice(Arc::new(LatticeInner {
            order,
            meet,
            join,
            bot,
            top,
            ideals: Some(IdealForm {
                base: base.clone(),
                sets,
                lookup,
            }),
        })))
    }

    pub fn len(&self) -> usize {
        self.0.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> &Poset {
        &self.0.order
    }

    pub fn name(&self, x: usize) -> &str {
        self.0.order.name(x)
    }

    pub fn index(&self, name: &str) -> Result<usize, PosetError> {
        self.0.order.index(name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.0.order.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.0.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.0.join[x * self.len() + y]
    }

    pub fn bot(&self) -> usize {
        self.0.bot
    }

    pub fn top(&self) -> usize {
        self.0.top
    }

    /// Join of an arbitrary family; the empty join is `⊥`.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bot(), |acc, x| self.join(acc, x))
    }

    /// The poset whose ideals this lattice was built from, if any.
    pub fn ideal_base(&self) -> Option<&Poset> {
        self.0.ideals.as_ref().map(|f| &f.base)
    }

    /// The ideal of the base poset that element `x` stands for.
    pub fn ideal_of(&self, x: usize) -> Option<&FixedBitSet> {
        self.0.ideals.as_ref().map(|f| &f.sets[x])
    }

    /// Inverse of [`Self::ideal_of`].
    pub fn element_of_ideal(&self, set: &FixedBitSet) -> Option<usize> {
        self.0.ideals.as_ref().and_then(|f| f.lookup.get(set).copied())
    }

    pub fn same_as(&self, other: &FiniteLattice) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.order == other.0.order
    }

    /// `x` is join-irreducible iff it is not `⊥` and never the join of two
    /// elements both different from it.
    pub fn is_join_irreducible(&self, x: usize) -> bool {
        if x == self.bot() {
            return false;
        }
        let n = self.len();
        !(0..n).any(|a| a != x && (a..n).any(|b| b != x && self.join(a, b) == x))
    }

    /// `J(L)` with the order inherited from `L`.
    pub fn join_irreducibles(&self) -> Poset {
        let n = self.len();
        let mut reducible = vec![false; n];
        reducible[self.bot()] = true;
        for a in 0..n {
            for b in a..n {
                let j = self.join(a, b);
                if j != a && j != b {
                    reducible[j] = true;
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&x| !reducible[x]).collect();
        self.0.order.subposet(&keep)
    }

    /// The Birkhoff map `η(a) = { x ∈ J(L) | x ⊑ a }`.
    pub fn birkhoff_eta(&self) -> BirkhoffMap {
        let jirr = self.join_irreducibles();
        let as_element: Vec<usize> = jirr
            .names()
            .iter()
            .map(|name| self.0.order.index_of(name).expect("join-irreducible is an element"))
            .collect();
        let images: Vec<FixedBitSet> = (0..self.len())
            .map(|a| {
                let mut set = FixedBitSet::with_capacity(jirr.len());
                for (j, &x) in as_element.iter().enumerate() {
                    if self.leq(x, a) {
                        set.insert(j);
                    }
                }
                set
            })
            .collect();
        let inverse: HashMap<FixedBitSet, usize> = images
            .iter()
            .enumerate()
            .map(|(a, s)| (s.clone(), a))
            .collect();
        assert_eq!(
            inverse.len(),
            self.len(),
            "η is not injective on a validated distributive lattice"
        );
        BirkhoffMap {
            lattice: self.clone(),
            jirr,
            as_element,
            images,
            inverse,
        }
    }
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteLattice {}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("order", &self.0.order)
            .field("bot", &self.name(self.bot()))
            .field("top", &self.name(self.top()))
            .finish()
    }
}

/// `η : L → O(J(L))` together with its inverse.
pub struct BirkhoffMap {
    lattice: FiniteLattice,
    jirr: Poset,
    as_element: Vec<usize>,
    images: Vec<FixedBitSet>,
    inverse: HashMap<FixedBitSet, usize>,
}

impl BirkhoffMap {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn join_irreducibles(&self) -> &Poset {
        &self.jirr
    }

    /// The lattice element a join-irreducible index stands for.
    pub fn element_of_irreducible(&self, j: usize) -> usize {
        self.as_element[j]
    }

    pub fn eta(&self, a: usize) -> OrderIdeal {
        self.jirr
            .ideal_from_set(self.images[a].clone())
            .expect("η(a) is down-closed")
    }

    pub fn eta_set(&self, a: usize) -> &FixedBitSet {
        &self.images[a]
    }

    pub fn eta_inverse(&self, set: &FixedBitSet) -> Option<usize> {
        self.inverse.get(set).copied()
    }
}

/// A validated lattice homomorphism.
#[derive(Clone)]
pub struct LatticeHom {
    domain: FiniteLattice,
    codomain: FiniteLattice,
    table: Vec<usize>,
}

impl LatticeHom {
    /// Validates a raw identifier table against the four laws, in the order
    /// bot, top, meet, join; pairs are visited in index order.
    pub fn from_names<K: AsRef<str>, V: AsRef<str>>(
        domain: &FiniteLattice,
        codomain: &FiniteLattice,
        raw: impl IntoIterator<Item = (K, V)>,
    ) -> Result<LatticeHom, LatticeError> {
        let mut table: Vec<Option<usize>> = vec![None; domain.len()];
        for (k, v) in raw {
            table[domain.index(k.as_ref())?] = Some(codomain.index(v.as_ref())?);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| PosetError::MissingImage(domain.name(x).to_owned())))
            .collect::<Result<Vec<_>, _>>()?;
        LatticeHom::from_indices(domain, codomain, table)
    }

    pub fn from_indices(
        domain: &FiniteLattice,
        codomain: &FiniteLattice,
        table: Vec<usize>,
    ) -> Result<LatticeHom, LatticeError> {
        assert_eq!(table.len(), domain.len(), "table must be total on the domain");
        let n = domain.len();
        let name = |x: usize| domain.name(x).to_owned();
        if table[domain.bot()] != codomain.bot() {
            return Err(LatticeError::NotHom {
                law: Law::Bot,
                a: name(domain.bot()),
                b: None,
            });
        }
        if table[domain.top()] != codomain.top() {
            return Err(LatticeError::NotHom {
                law: Law::Top,
                a: name(domain.top()),
                b: None,
            });
        }
        for law in [Law::Meet, Law::Join] {
            for a in 0..n {
                for b in a..n {
                    let ok = match law {
                        Law::Meet => table[domain.meet(a, b)] == codomain.meet(table[a], table[b]),
                        _ => table[domain.join(a, b)] == codomain.join(table[a], table[b]),
                    };
                    if !ok {
                        return Err(LatticeError::NotHom {
                            law,
                            a: name(a),
                            b: Some(name(b)),
                        });
                    }
                }
            }
        }
        Ok(LatticeHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
    }

    pub(crate) fn new_unchecked(
        domain: &FiniteLattice,
        codomain: &FiniteLattice,
        table: Vec<usize>,
    ) -> LatticeHom {
        LatticeHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        }
    }

    pub fn identity(lattice: &FiniteLattice) -> LatticeHom {
        LatticeHom::new_unchecked(lattice, lattice, (0..lattice.len()).collect())
    }

    pub fn domain(&self) -> &FiniteLattice {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteLattice {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain.same_as(&self.codomain)
    }

    /// `next ∘ self`
    pub fn then(&self, next: &LatticeHom) -> LatticeHom {
        assert!(self.codomain.same_as(&next.domain), "homomorphisms are not composable");
        LatticeHom {
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

impl PartialEq for LatticeHom {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && self.domain.same_as(&other.domain)
            && self.codomain.same_as(&other.codomain)
    }
}

impl Eq for LatticeHom {}

impl fmt::Debug for LatticeHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.to_name_map()).finish()
    }
}

/// Canonical name of the ideal with the given member identifiers.
pub fn ideal_name<S: AsRef<str> + Ord>(members: impl IntoIterator<Item = S>) -> String {
    let mut members: Vec<S> = members.into_iter().collect();
    members.sort();
    set_literal(members)
}
