//! Generators and brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the enumeration, quotient or duality code under test:
//! posets are built from raw relations, ideals are found by filtering all
//! subsets, and monotone maps by filtering all tables.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use birkhoff::{FiniteLattice, MonotoneMap, Poset};
use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

pub const LETTERS: [&str; 12] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"];

fn names(n: usize) -> Vec<String> {
    LETTERS[..n].iter().map(|s| s.to_string()).collect()
}

/// Strict relation as a bitmask: bit `i * n + j` set iff `i < j`.
fn mask_of(p: &Poset) -> u64 {
    let n = p.len();
    let mut m = 0u64;
    for (i, j) in p.strict_pairs() {
        m |= 1 << (i * n + j);
    }
    m
}

fn poset_from_mask(n: usize, mask: u64) -> Poset {
    let pairs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| mask >> (i * n + j) & 1 == 1);
    Poset::from_index_pairs(names(n), pairs).expect("mask is a strict order")
}

fn is_transitive(n: usize, mask: u64) -> bool {
    let has = |i: usize, j: usize| mask >> (i * n + j) & 1 == 1;
    (0..n).all(|i| {
        (0..n).all(|j| !has(i, j) || (0..n).all(|k| !has(j, k) || has(i, k)))
    })
}

/// Every labeled poset on `n` elements named `a, b, …`.
pub fn labeled_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut mask = 0u64;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => mask |= 1 << (i * n + j),
                2 => mask |= 1 << (j * n + i),
                _ => {}
            }
            c /= 3;
        }
        if is_transitive(n, mask) {
            out.push(poset_from_mask(n, mask));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn canonical_mask(n: usize, mask: u64, perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|perm| {
            let mut m = 0u64;
            for i in 0..n {
                for j in 0..n {
                    if mask >> (i * n + j) & 1 == 1 {
                        m |= 1 << (perm[i] * n + perm[j]);
                    }
                }
            }
            m
        })
        .min()
        .unwrap()
}

/// One representative per isomorphism class of posets on `n` elements.
///
/// Built by adding a new maximal element above every down-set of every
/// smaller representative, then removing isomorphic duplicates.
pub fn unlabeled_posets(n: usize) -> Vec<Poset> {
    let mut level: Vec<u64> = vec![0];
    for size in 1..=n {
        let perms = permutations(size);
        let prev = size - 1;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &mask in &level {
            for below in 0u32..(1 << prev) {
                // `below` must be down-closed in the smaller poset
                let closed = (0..prev).all(|x| {
                    below >> x & 1 == 0
                        || (0..prev).all(|y| mask >> (y * prev + x) & 1 == 0 || below >> y & 1 == 1)
                });
                if !closed {
                    continue;
                }
                let mut m = 0u64;
                for i in 0..prev {
                    for j in 0..prev {
                        if mask >> (i * prev + j) & 1 == 1 {
                            m |= 1 << (i * size + j);
                        }
                    }
                    if below >> i & 1 == 1 {
                        m |= 1 << (i * size + prev);
                    }
                }
                let canon = canonical_mask(size, m, &perms);
                if seen.insert(canon) {
                    next.push(canon);
                }
            }
        }
        level = next;
    }
    level.into_iter().map(|m| poset_from_mask(n, m)).collect()
}

/// All monotone self-maps, by filtering all `n^n` tables.
pub fn monotone_maps(p: &Poset) -> Vec<MonotoneMap> {
    let n = p.len();
    let total = n.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total.max(1) {
        let mut c = code;
        let table: Vec<usize> = (0..n)
            .map(|_| {
                let v = c % n;
                c /= n;
                v
            })
            .collect();
        let monotone = (0..n).all(|x| (0..n).all(|y| !p.leq(x, y) || p.leq(table[x], table[y])));
        if monotone {
            out.push(MonotoneMap::from_indices(p, p, table).unwrap());
        }
    }
    out
}

/// Down-closed subsets by filtering all `2^n` subsets.
pub fn brute_ideals(p: &Poset) -> Vec<FixedBitSet> {
    let n = p.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let closed = (0..n).all(|x| {
            mask >> x & 1 == 0 || (0..n).all(|y| !p.leq(y, x) || mask >> y & 1 == 1)
        });
        if closed {
            let mut set = FixedBitSet::with_capacity(n);
            for x in 0..n {
                if mask >> x & 1 == 1 {
                    set.insert(x);
                }
            }
            out.push(set);
        }
    }
    out
}

pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> Poset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let density: f64 = rng.gen_range(0.05..0.6);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[a], order[b]));
            }
        }
    }
    Poset::from_index_pairs(names(n), pairs).unwrap()
}

/// A random monotone self-map.
pub fn random_monotone<R: Rng>(rng: &mut R, p: &Poset) -> MonotoneMap {
    random_monotone_between(rng, p, p)
}

/// A random monotone map, built along a linear extension of the domain;
/// falls back to a constant map when every attempt runs out of candidates.
pub fn random_monotone_between<R: Rng>(rng: &mut R, dom: &Poset, cod: &Poset) -> MonotoneMap {
    let (n, m) = (dom.len(), cod.len());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| dom.down_set(x).count_ones(..));
    'attempt: for _ in 0..20 {
        let mut table = vec![usize::MAX; n];
        for &x in &order {
            let candidates: Vec<usize> = (0..m)
                .filter(|&c| {
                    dom.down_set(x)
                        .ones()
                        .filter(|&y| y != x)
                        .all(|y| cod.leq(table[y], c))
                })
                .collect();
            let Some(&pick) = candidates.choose(rng) else {
                continue 'attempt;
            };
            table[x] = pick;
        }
        return MonotoneMap::from_indices(dom, cod, table).unwrap();
    }
    MonotoneMap::from_indices(dom, cod, vec![0; n]).unwrap()
}

/// Checks that η is an order isomorphism `L → O(J(L))` preserving the lattice
/// operations, against down-sets of `J(L)` found by brute force.
pub fn check_eta(l: &FiniteLattice) -> Result<(), String> {
    let eta = l.birkhoff_eta();
    let j = eta.join_irreducibles();
    let targets: BTreeSet<Vec<usize>> = brute_ideals(j).iter().map(|s| s.ones().collect()).collect();
    let images: Vec<FixedBitSet> = (0..l.len()).map(|a| eta.eta_set(a).clone()).collect();
    let image_set: BTreeSet<Vec<usize>> = images.iter().map(|s| s.ones().collect()).collect();
    if image_set.len() != l.len() {
        return Err("η is not injective".into());
    }
    if image_set != targets {
        return Err("η is not onto the down-sets of J(L)".into());
    }
    if images[l.bot()].count_ones(..) != 0 {
        return Err("η(⊥) ≠ ∅".into());
    }
    if images[l.top()].count_ones(..) != j.len() {
        return Err("η(⊤) ≠ J(L)".into());
    }
    for a in 0..l.len() {
        for b in 0..l.len() {
            let mut meet = images[a].clone();
            meet.intersect_with(&images[b]);
            let mut join = images[a].clone();
            join.union_with(&images[b]);
            if images[l.meet(a, b)] != meet {
                return Err(format!("η({} ⊓ {}) ≠ η ∩ η", l.name(a), l.name(b)));
            }
            if images[l.join(a, b)] != join {
                return Err(format!("η({} ⊔ {}) ≠ η ∪ η", l.name(a), l.name(b)));
            }
            if l.leq(a, b) != images[a].is_subset(&images[b]) {
                return Err(format!("order differs at ({}, {})", l.name(a), l.name(b)));
            }
        }
    }
    Ok(())
}
