//! Moving maps across the duality between finite distributive lattices and
//! finite posets.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::lattice::{BirkhoffMap, FiniteLattice, LatticeError, LatticeHom};
use crate::poset::{MonotoneMap, Poset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("{0} is not an ideal lattice of a known poset")]
    NotIdealLattice(&'static str),
    #[error("no unique least x with `{0}` ∈ f(↓x); the map is not a homomorphism of ideal lattices")]
    NoMinimum(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// The dual of a homomorphism `f : O(P) → O(Q)`:
/// `φ_f(y) = min { x ∈ P | y ∈ f(↓x) }`, a monotone map `Q → P`.
pub fn dual_map(f: &LatticeHom) -> Result<MonotoneMap, DualityError> {
    let p = f
        .domain()
        .ideal_base()
        .ok_or(DualityError::NotIdealLattice("domain"))?
        .clone();
    let q = f
        .codomain()
        .ideal_base()
        .ok_or(DualityError::NotIdealLattice("codomain"))?
        .clone();

    // f(↓x) for every x ∈ P
    let images: Vec<&FixedBitSet> = (0..p.len())
        .map(|x| {
            let principal = f
                .domain()
                .element_of_ideal(p.down_set(x))
                .expect("principal ideals are lattice elements");
            f.codomain()
                .ideal_of(f.apply(principal))
                .expect("codomain is an ideal lattice")
        })
        .collect();

    let mut table = Vec::with_capacity(q.len());
    for y in 0..q.len() {
        let mut candidates = FixedBitSet::with_capacity(p.len());
        for (x, image) in images.iter().enumerate() {
            if image.contains(y) {
                candidates.insert(x);
            }
        }
        let least = candidates
            .ones()
            .find(|&m| candidates.is_subset(p.up_set(m)))
            .ok_or_else(|| DualityError::NoMinimum(q.name(y).to_owned()))?;
        table.push(least);
    }
    Ok(MonotoneMap::from_indices(&q, &p, table)?)
}

/// The homomorphism `f_φ(a) = φ⁻¹(a)` from `O(P)` to `O(Q)` for a monotone
/// `φ : Q → P`, materializing both ideal lattices under `bound`.
pub fn hom_from_dual(phi: &MonotoneMap, bound: usize) -> Result<LatticeHom, DualityError> {
    let l = FiniteLattice::of_ideals(phi.codomain(), bound)?;
    let k = if phi.is_endomap() {
        l.clone()
    } else {
        FiniteLattice::of_ideals(phi.domain(), bound)?
    };
    hom_from_dual_between(phi, &l, &k)
}

/// As [`hom_from_dual`], reusing already built ideal lattices
/// `l = O(codomain φ)` and `k = O(domain φ)`.
pub fn hom_from_dual_between(
    phi: &MonotoneMap,
    l: &FiniteLattice,
    k: &FiniteLattice,
) -> Result<LatticeHom, DualityError> {
    match l.ideal_base() {
        Some(base) if base.same_as(phi.codomain()) => {}
        _ => return Err(DualityError::NotIdealLattice("domain")),
    }
    match k.ideal_base() {
        Some(base) if base.same_as(phi.domain()) => {}
        _ => return Err(DualityError::NotIdealLattice("codomain")),
    }
    let table = (0..l.len())
        .map(|a| {
            let pre = phi.preimage(l.ideal_of(a).expect("ideal lattice"));
            k.element_of_ideal(&pre)
                .expect("preimage of an ideal under a monotone map is an ideal")
        })
        .collect();
    Ok(LatticeHom::new_unchecked(l, k, table))
}

/// An endomorphism of an explicit lattice transported onto the ideal lattice
/// of its join-irreducibles.
pub struct LiftedHom {
    eta: BirkhoffMap,
    ideals: FiniteLattice,
    hom: LatticeHom,
}

impl LiftedHom {
    /// `J(L)`
    pub fn base(&self) -> &Poset {
        self.eta.join_irreducibles()
    }

    pub fn eta(&self) -> &BirkhoffMap {
        &self.eta
    }

    /// `O(J(L))`
    pub fn ideal_lattice(&self) -> &FiniteLattice {
        &self.ideals
    }

    /// `η ∘ f ∘ η⁻¹`
    pub fn hom(&self) -> &LatticeHom {
        &self.hom
    }

    /// Element of `O(J(L))` corresponding to `a ∈ L`.
    pub fn to_ideal(&self, a: usize) -> usize {
        self.ideals
            .element_of_ideal(self.eta.eta_set(a))
            .expect("η(a) is an ideal")
    }

    /// Element of `L` corresponding to an element of `O(J(L))`.
    pub fn from_ideal(&self, i: usize) -> usize {
        self.eta
            .eta_inverse(self.ideals.ideal_of(i).expect("ideal lattice"))
            .expect("η is onto")
    }
}

/// Conjugates an endomorphism `f` of `L` through `η` so that [`dual_map`]
/// applies: `f' = η ∘ f ∘ η⁻¹` on `O(J(L))`.
pub fn lift_hom(f: &LatticeHom) -> Result<LiftedHom, DualityError> {
    if !f.is_endomorphism() {
        return Err(LatticeError::NotEndomorphism.into());
    }
    let lattice = f.domain();
    let eta = lattice.birkhoff_eta();
    let ideals = FiniteLattice::of_ideals(eta.join_irreducibles(), lattice.len())?;
    let table = (0..ideals.len())
        .map(|i| {
            let a = eta
                .eta_inverse(ideals.ideal_of(i).expect("ideal lattice"))
                .expect("η is onto");
            ideals
                .element_of_ideal(eta.eta_set(f.apply(a)))
                .expect("η(a) is an ideal")
        })
        .collect();
    let hom = LatticeHom::from_indices(&ideals, &ideals, table)?;
    Ok(LiftedHom { eta, ideals, hom })
}
