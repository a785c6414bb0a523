use num_bigint::BigInt;

use super::chain::Entry;
use super::complex::{ChainOf, HochschildComplex};
use crate::cdgcat::CdgAlgebra;
use crate::derham::{DeRham, FormVector};
use crate::exactfield::{qi, Poly, RatFuncU, Q};
use crate::mixedcore::{Element, OpError, WeakMorphism};

/// Which homotopy accompanies ε in the weak morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HkrHomotopy {
    /// (W/2u²)·d∘ε, the one that makes the identity hold.
    Corrected,
    /// −(W/2u)·d∘ε.
    Literal,
    /// No homotopy.
    Zero,
}

/// ε on chains over (A, W): a word (a_0; a_1, .., a_n) with head a_0 goes to
/// (1/n!) a_0 da_1 ∧ .. ∧ da_n. A unit head counts as 1.
pub fn hkr_eps(h: &HochschildComplex<CdgAlgebra>, c: &ChainOf<CdgAlgebra>) -> FormVector {
    let vars = h.category().vars();
    let mono = |m: &Vec<u32>| Poly::monomial(vars, m.clone(), qi(1));
    let mut out = FormVector::zero(vars);
    for (w, coef) in c.terms() {
        let n = w.len() - 1;
        let mut f = match &w[n] {
            Entry::Unit(()) => FormVector::from_poly(&Poly::one(vars), &[]),
            Entry::Mor(m, _) => FormVector::from_poly(&mono(m), &[]),
        };
        for e in w[..n].iter().rev() {
            let Entry::Mor(m, _) = e else { unreachable!("units only sit in the head") };
            f = f.wedge(&FormVector::from_poly(&mono(m), &[]).d());
        }
        let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
        let scale = coef.scale(&Q::new(1.into(), fact));
        out = out.add(&f.scale(&scale));
    }
    out
}

/// The homotopy of the chosen kind applied to c.
pub fn hkr_homotopy(h: &HochschildComplex<CdgAlgebra>, c: &ChainOf<CdgAlgebra>, kind: HkrHomotopy) -> FormVector {
    let w = h.category().potential();
    let de = hkr_eps(h, c).d().mul_poly(w);
    match kind {
        HkrHomotopy::Corrected => de.scale(&RatFuncU::u_pow(-2, Q::new(1.into(), 2.into()))),
        HkrHomotopy::Literal => de.scale(&RatFuncU::u_pow(-1, Q::new((-1).into(), 2.into()))),
        HkrHomotopy::Zero => FormVector::zero(w.vars()),
    }
}

/// (ε, H) from Hoch(A, W) to the twisted de Rham complex of W.
pub struct HkrMorphism {
    source: HochschildComplex<CdgAlgebra>,
    target: DeRham,
    homotopy: HkrHomotopy,
}

impl HkrMorphism {
    /// The source algebra must carry curvature +W.
    pub fn new(source: HochschildComplex<CdgAlgebra>, homotopy: HkrHomotopy) -> Result<Self, OpError> {
        if source.category().sign() != 1 {
            return Err(OpError::IllTyped("HKR needs the algebra with curvature +W".into()));
        }
        let target = DeRham::new(source.category().potential()).with_max_degree(source.sampling().max_degree);
        Ok(HkrMorphism { source, target, homotopy })
    }
}

impl WeakMorphism for HkrMorphism {
    type Source = HochschildComplex<CdgAlgebra>;
    type Target = DeRham;

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &DeRham {
        &self.target
    }

    fn map(&self, x: &ChainOf<CdgAlgebra>) -> Result<FormVector, OpError> {
        Ok(hkr_eps(&self.source, x))
    }

    fn homotopy(&self, x: &ChainOf<CdgAlgebra>) -> Result<FormVector, OpError> {
        Ok(hkr_homotopy(&self.source, x, self.homotopy))
    }
}
