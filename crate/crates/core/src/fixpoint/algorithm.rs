use super::{FixpointError, QuotientMethod, QuotientPoset};
use crate::duality::{dual_map, lift_hom, LiftedHom};
use crate::lattice::LatticeHom;
use crate::poset::{MonotoneMap, OrderIdeal};

/// Fix-points of an endomorphism of an explicit lattice `L`, computed on
/// its dual:
///
/// 1. `P = J(L)` and `φ_f : P → P`;
/// 2. the quotient `C` of `P` by the graph of `φ_f`, ordered from `P`;
/// 3. for an order ideal `M` of `C`, the fix-point `⊔_L (∪M)`.
pub struct Algorithm1 {
    lifted: LiftedHom,
    phi: MonotoneMap,
    quotient: QuotientPoset,
}

impl Algorithm1 {
    pub fn prepare(f: &LatticeHom, method: QuotientMethod) -> Result<Algorithm1, FixpointError> {
        let lifted = lift_hom(f)?;
        let phi = dual_map(lifted.hom())?;
        let quotient = method.quotient(&phi)?;
        Ok(Algorithm1 {
            lifted,
            phi,
            quotient,
        })
    }

    pub fn lifted(&self) -> &LiftedHom {
        &self.lifted
    }

    /// `φ_f` on `J(L)`.
    pub fn phi(&self) -> &MonotoneMap {
        &self.phi
    }

    pub fn quotient(&self) -> &QuotientPoset {
        &self.quotient
    }

    /// `⊔_L (∪M)` for an order ideal `M` of the quotient.
    pub fn evaluate(&self, m: &OrderIdeal) -> Result<usize, FixpointError> {
        let classes = self.quotient.class_order();
        if !m.poset().same_as(classes) || !classes.is_down_closed(m.members()) {
            return Err(FixpointError::NotAnIdealOfQuotient);
        }
        let irreducibles = self.quotient.union_of(m.members());
        let eta = self.lifted.eta();
        let lattice = eta.lattice();
        Ok(lattice.join_all(irreducibles.ones().map(|j| eta.element_of_irreducible(j))))
    }

    /// As [`Self::evaluate`], with `M` given by class names such as `[p]`.
    pub fn evaluate_names<S: AsRef<str>>(
        &self,
        classes: impl IntoIterator<Item = S>,
    ) -> Result<usize, FixpointError> {
        let order = self.quotient.class_order();
        let mut set = fixedbitset::FixedBitSet::with_capacity(order.len());
        for name in classes {
            let c = order
                .index_of(name.as_ref())
                .ok_or(FixpointError::NotAnIdealOfQuotient)?;
            set.insert(c);
        }
        let m = order
            .ideal_from_set(set)
            .map_err(|_| FixpointError::NotAnIdealOfQuotient)?;
        self.evaluate(&m)
    }

    /// Every fix-point of `f`, one per ideal of the quotient, in the
    /// canonical ideal order of the quotient.
    pub fn fixpoints(&self) -> impl Iterator<Item = usize> + '_ {
        self.quotient
            .class_order()
            .ideals()
            .map(move |m| self.evaluate(&m).expect("enumerated ideals are ideals of the quotient"))
    }
}

/// One step of the algorithm: prepares `f` with the connected-components
/// quotient and evaluates the ideal of classes named in `m`.
pub fn algorithm1<S: AsRef<str>>(
    f: &LatticeHom,
    m: impl IntoIterator<Item = S>,
) -> Result<usize, FixpointError> {
    Algorithm1::prepare(f, QuotientMethod::Components)?.evaluate_names(m)
}
