use crate::error::Result;
use crate::polymap::{Automorphism, PolyMap};
use crate::scalar::FieldAut;

/// `g ∘ f ∘ g⁻¹`.
pub fn conjugate(g: &Automorphism, f: &PolyMap) -> Result<PolyMap> {
    g.fwd().compose(&f.compose(g.inv())?)
}

/// The automorphism `f ↦ τ(g ∘ f ∘ g⁻¹)` of the automorphism group, held as
/// its data `(g, τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaAut {
    pub g: Automorphism,
    pub tau: FieldAut,
}

impl ThetaAut {
    pub fn new(g: Automorphism, tau: FieldAut) -> Self {
        ThetaAut { g, tau }
    }

    pub fn identity(n: usize) -> Self {
        ThetaAut::new(Automorphism::identity(n), FieldAut::Identity)
    }

    pub fn apply(&self, f: &PolyMap) -> Result<PolyMap> {
        Ok(conjugate(&self.g, f)?.apply_field_aut(self.tau))
    }

    /// Image of a certified automorphism, with its inverse carried along.
    pub fn apply_automorphism(&self, f: &Automorphism) -> Result<Automorphism> {
        Automorphism::from_pair(self.apply(f.fwd())?, self.apply(f.inv())?)
    }
}
