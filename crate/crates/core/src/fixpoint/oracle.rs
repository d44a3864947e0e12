//! Primal-side fix-point computations: exhaustive scans and Kleene
//! iteration.

use fixedbitset::FixedBitSet;

use super::FixpointError;
use crate::lattice::LatticeHom;
use crate::poset::MonotoneMap;

/// `{ x ∈ L | f(x) = x }` by scanning every element of `L`.
pub fn bruteforce_fixpoints(f: &LatticeHom, bound: usize) -> Result<Vec<usize>, FixpointError> {
    if !f.is_endomorphism() {
        return Err(FixpointError::NotEndomap);
    }
    let size = f.domain().len();
    if size > bound {
        return Err(FixpointError::SizeBoundExceeded { size, bound });
    }
    Ok((0..size).filter(|&x| f.apply(x) == x).collect())
}

/// Fix-points of `f_φ(X) = φ⁻¹(X)` found by materializing every ideal `X` of
/// the base poset and testing `φ⁻¹(X) = X` directly. No meet or join tables
/// are built, so this reaches lattices far larger than [`bruteforce_fixpoints`].
///
/// Returns `None` once more than `bound` ideals have been seen.
pub fn scan_ideal_fixpoints(
    phi: &MonotoneMap,
    bound: usize,
) -> Result<Option<Vec<FixedBitSet>>, FixpointError> {
    if !phi.is_endomap() {
        return Err(FixpointError::NotEndomap);
    }
    let mut fixed = Vec::new();
    for (seen, ideal) in phi.domain().ideals().enumerate() {
        if seen == bound {
            return Ok(None);
        }
        if phi.preimage(ideal.members()) == *ideal.members() {
            fixed.push(ideal.into_members());
        }
    }
    Ok(Some(fixed))
}

/// How Kleene iteration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KleeneOutcome {
    /// `f(value) = value`, reached after `steps` applications.
    Fixpoint { value: usize, steps: usize },
    /// The orbit entered a cycle of `length > 1` starting at `entry`.
    CycleDetected { length: usize, entry: usize },
}

/// Iterates `x ↦ f(x)` from `start`.
pub fn kleene_iterate(
    f: &LatticeHom,
    start: usize,
    max_steps: usize,
) -> Result<KleeneOutcome, FixpointError> {
    if !f.is_endomorphism() {
        return Err(FixpointError::NotEndomap);
    }
    kleene_iterate_table(f.table(), start, max_steps)
}

/// [`kleene_iterate`] over a raw self-map table, with no check that the
/// table is a homomorphism or even monotone.
pub fn kleene_iterate_table(
    table: &[usize],
    start: usize,
    max_steps: usize,
) -> Result<KleeneOutcome, FixpointError> {
    assert!(start < table.len(), "start is not an element");
    let mut first_seen = vec![usize::MAX; table.len()];
    let mut x = start;
    let mut steps = 0;
    loop {
        if table[x] == x {
            return Ok(KleeneOutcome::Fixpoint { value: x, steps });
        }
        if first_seen[x] != usize::MAX {
            return Ok(KleeneOutcome::CycleDetected {
                length: steps - first_seen[x],
                entry: x,
            });
        }
        first_seen[x] = steps;
        if steps == max_steps {
            return Err(FixpointError::MaxStepsExceeded(max_steps));
        }
        x = table[x];
        steps += 1;
    }
}
