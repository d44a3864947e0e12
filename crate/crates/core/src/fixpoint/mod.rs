//! Fix-points of a lattice endomorphism read off its dual.
//!
//! For `f : O(P) → O(P)` with dual `φ : P → P`, the fix-points of `f` are
//! exactly the unions `∪M` over order ideals `M` of the quotient `C` of `P`
//! that identifies every `x` with `φ(x)`. The lattice `O(P)` itself is never
//! materialized here; [`oracle`] holds the primal-side scans used to check
//! the result.

mod algorithm;
pub mod oracle;
mod quotient;
mod union_find;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use algorithm::{algorithm1, Algorithm1};
pub use quotient::QuotientPoset;

use crate::duality::DualityError;
use crate::lattice::{LatticeError, LatticeHom};
use crate::poset::{Ideals, MonotoneMap, OrderIdeal, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixpointError {
    #[error("map is not an endo-map of a single poset")]
    NotEndomap,
    #[error("classes {first} and {second} lie below each other in the generated class relation")]
    QuotientNotAntisymmetric { first: String, second: String },
    #[error("the given set of classes is not an order ideal of the quotient")]
    NotAnIdealOfQuotient,
    #[error("lattice has {size} elements, above the bound of {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("no fix-point within {0} steps")]
    MaxStepsExceeded(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

/// Which construction produces the quotient `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuotientMethod {
    /// Generated preorder and strongly connected classes.
    #[default]
    Coequalizer,
    /// Connected components of the graph of `φ`.
    Components,
}

impl QuotientMethod {
    pub fn quotient(self, phi: &MonotoneMap) -> Result<QuotientPoset, FixpointError> {
        match self {
            QuotientMethod::Coequalizer => QuotientPoset::coequalizer(phi),
            QuotientMethod::Components => QuotientPoset::from_components(phi),
        }
    }
}

/// The connected-components quotient of `φ`.
pub fn phi_components(phi: &MonotoneMap) -> Result<QuotientPoset, FixpointError> {
    QuotientPoset::from_components(phi)
}

/// The co-equalizer of `φ` and the identity.
pub fn coequalizer_general(phi: &MonotoneMap) -> Result<QuotientPoset, FixpointError> {
    QuotientPoset::coequalizer(phi)
}

/// The lattice of fix-points of `f_φ`, represented by the quotient `C`.
#[derive(Debug, Clone)]
pub struct FixpointLattice {
    phi: MonotoneMap,
    quotient: QuotientPoset,
}

/// Fix-points of the homomorphism dual to `phi`, via the co-equalizer.
pub fn fixpoints_via_duality(phi: &MonotoneMap) -> Result<FixpointLattice, FixpointError> {
    FixpointLattice::new(phi, QuotientMethod::Coequalizer)
}

impl FixpointLattice {
    pub fn new(phi: &MonotoneMap, method: QuotientMethod) -> Result<FixpointLattice, FixpointError> {
        let quotient = method.quotient(phi)?;
        Ok(FixpointLattice {
            phi: phi.clone(),
            quotient,
        })
    }

    pub fn phi(&self) -> &MonotoneMap {
        &self.phi
    }

    pub fn base(&self) -> &Poset {
        self.quotient.base()
    }

    pub fn quotient(&self) -> &QuotientPoset {
        &self.quotient
    }

    /// The homomorphism `f_φ` on an explicit `O(P)`; needs `|O(P)| ≤ bound`.
    pub fn source_hom(&self, bound: usize) -> Result<LatticeHom, FixpointError> {
        Ok(crate::duality::hom_from_dual(&self.phi, bound)?)
    }

    /// Fix-points as ideals of `P`, in the canonical ideal order of `C`.
    pub fn members(&self) -> Members<'_> {
        Members {
            quotient: &self.quotient,
            ideals: self.quotient.class_order().ideals(),
        }
    }

    /// Number of fix-points, by streaming the ideals of `C`.
    pub fn count(&self) -> usize {
        self.quotient.class_order().ideals().count()
    }

    /// `∪M` for an ideal `M` of `C`.
    pub fn union_of(&self, ideal: &OrderIdeal) -> Result<OrderIdeal, FixpointError> {
        if !ideal.poset().same_as(self.quotient.class_order()) {
            return Err(FixpointError::NotAnIdealOfQuotient);
        }
        Ok(union_ideal(&self.quotient, ideal.members()))
    }
}

fn union_ideal(quotient: &QuotientPoset, classes: &FixedBitSet) -> OrderIdeal {
    let set = quotient.union_of(classes);
    quotient
        .base()
        .ideal_from_set(set)
        .expect("a union of an ideal of classes is down-closed in the base poset")
}

/// Streaming iterator over the fix-points of a [`FixpointLattice`].
pub struct Members<'a> {
    quotient: &'a QuotientPoset,
    ideals: Ideals,
}

impl Iterator for Members<'_> {
    type Item = OrderIdeal;

    fn next(&mut self) -> Option<OrderIdeal> {
        let m = self.ideals.next()?;
        Some(union_ideal(self.quotient, m.members()))
    }
}
