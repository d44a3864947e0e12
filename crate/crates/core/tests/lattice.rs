mod common;

use birkhoff::{FiniteLattice, LatticeError, LatticeHom, Law, Poset};
use common::{check_eta, labeled_posets, random_poset, unlabeled_posets};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The same order under plain element names, so the lattice is rebuilt from
/// the order alone.
fn relabel(order: &Poset) -> Poset {
    let names: Vec<String> = (0..order.len()).map(|i| format!("l{i:03}")).collect();
    Poset::from_index_pairs(names, order.strict_pairs()).unwrap()
}

/// A random poset with a fresh least and greatest element added.
fn bounded_poset(n: usize, seed: u64) -> Poset {
    let inner = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n);
    let mut names: Vec<String> = inner.names().to_vec();
    names.push("0".into());
    names.push("1".into());
    let (bot, top) = (n, n + 1);
    let mut pairs = inner.strict_pairs();
    for x in 0..n {
        pairs.push((bot, x));
        pairs.push((x, top));
    }
    pairs.push((bot, top));
    Poset::from_index_pairs(names, pairs).unwrap()
}

fn lower_bounds(p: &Poset, x: usize, y: usize) -> Vec<usize> {
    (0..p.len()).filter(|&z| p.leq(z, x) && p.leq(z, y)).collect()
}

fn upper_bounds(p: &Poset, x: usize, y: usize) -> Vec<usize> {
    (0..p.len()).filter(|&z| p.leq(x, z) && p.leq(y, z)).collect()
}

fn greatest(p: &Poset, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&g| set.iter().all(|&z| p.leq(z, g)))
}

fn least(p: &Poset, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&g| set.iter().all(|&z| p.leq(g, z)))
}

fn same_tables(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    let n = a.len();
    let idx = |x: usize| b.index(a.name(x)).unwrap();
    n == b.len()
        && idx(a.bot()) == b.bot()
        && idx(a.top()) == b.top()
        && (0..n).all(|x| {
            (0..n).all(|y| {
                idx(a.meet(x, y)) == b.meet(idx(x), idx(y))
                    && idx(a.join(x, y)) == b.join(idx(x), idx(y))
            })
        })
}

#[test]
fn rebuilding_from_the_order_is_the_identity() {
    for n in 0..=5 {
        for p in unlabeled_posets(n) {
            let l = FiniteLattice::of_ideals(&p, 4096).unwrap();
            let again = FiniteLattice::from_order(l.order()).unwrap();
            assert!(same_tables(&l, &again));
            let twice = FiniteLattice::from_order(again.order()).unwrap();
            assert!(same_tables(&again, &twice));
        }
    }
}

#[test]
fn ideal_lattice_operations_are_intersection_and_union() {
    for n in 0..=4 {
        for p in labeled_posets(n) {
            let l = FiniteLattice::of_ideals(&p, 4096).unwrap();
            let set = |x| l.ideal_of(x).unwrap().clone();
            assert_eq!(set(l.bot()).count_ones(..), 0);
            assert_eq!(set(l.top()).count_ones(..), n);
            for a in 0..l.len() {
                for b in 0..l.len() {
                    let mut meet = set(a);
                    meet.intersect_with(&set(b));
                    let mut join = set(a);
                    join.union_with(&set(b));
                    assert_eq!(set(l.meet(a, b)), meet);
                    assert_eq!(set(l.join(a, b)), join);
                    assert_eq!(l.leq(a, b), set(a).is_subset(&set(b)));
                }
            }
        }
    }
}

#[test]
fn join_irreducibles_of_ideals_recover_the_poset() {
    for n in 0..=6 {
        for p in unlabeled_posets(n) {
            let l = FiniteLattice::of_ideals(&p, 4096).unwrap();
            let j = l.join_irreducibles();
            assert_eq!(j.len(), p.len());
            let image: Vec<usize> = (0..n)
                .map(|x| j.index(&p.principal_ideal_at(x).canonical_name()).unwrap())
                .collect();
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(p.leq(x, y), j.leq(image[x], image[y]));
                }
            }
        }
    }
}

#[test]
fn homomorphism_validation_agrees_with_the_laws() {
    for n in 0..=3 {
        for p in labeled_posets(n) {
            let l = FiniteLattice::of_ideals(&p, 4096).unwrap();
            let m = l.len();
            if m > 5 {
                continue;
            }
            for code in 0..m.pow(m as u32) {
                let t: Vec<usize> = (0..m).map(|i| code / m.pow(i as u32) % m).collect();
                let hom = t[l.bot()] == l.bot()
                    && t[l.top()] == l.top()
                    && (0..m).all(|a| {
                        (0..m).all(|b| {
                            t[l.meet(a, b)] == l.meet(t[a], t[b]) && t[l.join(a, b)] == l.join(t[a], t[b])
                        })
                    });
                match LatticeHom::from_indices(&l, &l, t.clone()) {
                    Ok(_) => assert!(hom),
                    Err(LatticeError::NotHom { law, a, b }) => {
                        assert!(!hom);
                        let a = l.index(&a).unwrap();
                        let b = b.map(|b| l.index(&b).unwrap());
                        let violated = match (law, b) {
                            (Law::Bot, None) => t[a] != l.bot(),
                            (Law::Top, None) => t[a] != l.top(),
                            (Law::Meet, Some(b)) => t[l.meet(a, b)] != l.meet(t[a], t[b]),
                            (Law::Join, Some(b)) => t[l.join(a, b)] != l.join(t[a], t[b]),
                            _ => false,
                        };
                        assert!(violated, "reported witness does not violate {law}");
                    }
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn lattice_from_order_is_correct_or_gives_a_true_witness(n in 0usize..6, seed: u64) {
        let p = bounded_poset(n, seed);
        match FiniteLattice::from_order(&p) {
            Ok(l) => {
                for x in 0..p.len() {
                    for y in 0..p.len() {
                        prop_assert_eq!(Some(l.meet(x, y)), greatest(&p, &lower_bounds(&p, x, y)));
                        prop_assert_eq!(Some(l.join(x, y)), least(&p, &upper_bounds(&p, x, y)));
                        for z in 0..p.len() {
                            prop_assert_eq!(
                                l.meet(x, l.join(y, z)),
                                l.join(l.meet(x, y), l.meet(x, z))
                            );
                        }
                    }
                }
            }
            Err(LatticeError::NotALattice { x, y, meet }) => {
                let (x, y) = (p.index(&x).unwrap(), p.index(&y).unwrap());
                let bound = if meet {
                    greatest(&p, &lower_bounds(&p, x, y))
                } else {
                    least(&p, &upper_bounds(&p, x, y))
                };
                prop_assert_eq!(bound, None);
            }
            Err(LatticeError::NotDistributive { a, b, c }) => {
                let (a, b, c) = (p.index(&a).unwrap(), p.index(&b).unwrap(), p.index(&c).unwrap());
                let meet = |x, y| greatest(&p, &lower_bounds(&p, x, y)).unwrap();
                let join = |x, y| least(&p, &upper_bounds(&p, x, y)).unwrap();
                prop_assert_ne!(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
            }
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn birkhoff_map_is_an_isomorphism_on_rebuilt_lattices(n in 0usize..8, seed: u64) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let ideals = FiniteLattice::of_ideals(&p, 4096).unwrap();
        prop_assume!(ideals.len() <= 64);
        let l = FiniteLattice::from_order(&relabel(ideals.order())).unwrap();
        prop_assert!(l.ideal_base().is_none());
        prop_assert_eq!(check_eta(&l), Ok(()));
        let eta = l.birkhoff_eta();
        let rebuilt = FiniteLattice::of_ideals(eta.join_irreducibles(), 4096).unwrap();
        prop_assert_eq!(rebuilt.len(), l.len());
        for a in 0..l.len() {
            prop_assert_eq!(eta.eta_inverse(eta.eta_set(a)), Some(a));
        }
    }

    #[test]
    fn join_irreducibles_match_the_definition(n in 0usize..7, seed: u64) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let l = FiniteLattice::of_ideals(&p, 4096).unwrap();
        let j = l.join_irreducibles();
        for x in 0..l.len() {
            let irreducible = x != l.bot()
                && (0..l.len()).all(|a| (0..l.len()).all(|b| l.join(a, b) != x || a == x || b == x));
            prop_assert_eq!(irreducible, j.index_of(l.name(x)).is_some());
            prop_assert_eq!(irreducible, l.is_join_irreducible(x));
        }
    }

    #[test]
    fn size_bound_is_enforced(n in 1usize..8) {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let antichain = Poset::from_index_pairs(names, []).unwrap();
        let bound = 1usize << (n - 1);
        let too_small = FiniteLattice::of_ideals(&antichain, bound);
        prop_assert!(
            matches!(too_small, Err(LatticeError::SizeBoundExceeded { .. })),
            "bound {} should be exceeded",
            bound
        );
        prop_assert!(FiniteLattice::of_ideals(&antichain, 1 << n).is_ok());
    }
}
