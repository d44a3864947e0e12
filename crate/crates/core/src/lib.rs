//! Fix-points of homomorphisms of finite distributive lattices, computed on
//! the dual poset.
//!
//! A finite distributive lattice `L` is the lattice of order ideals of its
//! join-irreducibles `P = J(L)`, and each endomorphism `f` of `L` is the
//! inverse image of a monotone map `φ : P → P`. The fix-points of `f` are
//! then exactly the unions of order ideals of the quotient of `P` that
//! identifies every `x` with `φ(x)`, so they can be enumerated without ever
//! building `L` or iterating `f`.
//!
//! * [`poset`]: partial orders, order ideals, monotone maps.
//! * [`lattice`]: explicit lattices, homomorphisms, the Birkhoff map.
//! * [`duality`]: homomorphisms to dual maps and back.
//! * [`fixpoint`]: quotients, fix-point enumeration, oracles.

pub mod bench;
pub mod cli;
pub mod config;
pub mod dot;
pub mod duality;
pub mod fixpoint;
pub mod io;
pub mod lattice;
pub mod poset;
mod relation;

pub use config::Bounds;
pub use duality::{dual_map, hom_from_dual, lift_hom, DualityError, LiftedHom};
pub use fixpoint::{
    algorithm1, coequalizer_general, fixpoints_via_duality, phi_components, Algorithm1,
    FixpointError, FixpointLattice, QuotientMethod, QuotientPoset,
};
pub use lattice::{BirkhoffMap, FiniteLattice, LatticeError, LatticeHom, Law};
pub use poset::{Ideals, MonotoneMap, OrderIdeal, Poset, PosetError};
