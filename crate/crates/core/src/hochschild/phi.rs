use super::chain::HochChain;
use super::complex::{ChainOf, HochschildComplex};
use crate::cdgcat::{CdgCategory, Opposite};
use crate::exactfield::{q, RatFuncU};
use crate::mixedcore::{OpError, UFlipped, WeakMorphism};

/// Φ(c), a chain over the opposite category.
pub fn phi_opposite<C: CdgCategory>(h: &HochschildComplex<C>, c: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
    h.apply_terms(c, |w| h.w_phi(w))
}

/// Φ(c) together with the homotopy H(c), whose coefficients carry 1/u².
pub fn phi_opposite_with_homotopy<C: CdgCategory>(
    h: &HochschildComplex<C>,
    c: &ChainOf<C>,
) -> Result<(ChainOf<C>, ChainOf<C>), OpError> {
    let k = h.apply_terms(c, |w| h.w_phi_homotopy(w))?;
    Ok((phi_opposite(h, c)?, crate::mixedcore::Element::scale(&k, &RatFuncU::u_pow(-2, q(1, 1)))))
}

/// Φ from Hoch(D) to Hoch(D^op) as a weak morphism. Φ commutes with b but
/// anticommutes with B, so the target is Hoch(D^op) with (b, -B) and the
/// connection conjugated by u -> -u.
pub struct OppositeComparison<C: CdgCategory> {
    source: HochschildComplex<C>,
    target: UFlipped<HochschildComplex<Opposite<C>>>,
    with_homotopy: bool,
}

impl<C: CdgCategory + Clone> OppositeComparison<C> {
    pub fn new(source: HochschildComplex<C>, with_homotopy: bool) -> Self {
        let target = HochschildComplex::new(Opposite(source.category().clone()), source.kind(), source.window())
            .with_sampling(source.sampling());
        OppositeComparison { source, target: UFlipped(target), with_homotopy }
    }
}

impl<C: CdgCategory> WeakMorphism for OppositeComparison<C> {
    type Source = HochschildComplex<C>;
    type Target = UFlipped<HochschildComplex<Opposite<C>>>;

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn map(&self, x: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        phi_opposite(&self.source, x)
    }

    fn homotopy(&self, x: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        if self.with_homotopy {
            Ok(phi_opposite_with_homotopy(&self.source, x)?.1)
        } else {
            Ok(HochChain::zero(x.kind(), x.window()))
        }
    }
}
