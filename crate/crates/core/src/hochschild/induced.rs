use super::chain::{Entry, HochChain, Word};
use super::complex::{ChainOf, HochschildComplex};
use crate::cdgcat::{CdgCategory, StrictCdgFunctor};
use crate::exactfield::{qi, Q};
use crate::mixedcore::{OpError, WeakMorphism};

type SrcOf<F> = <F as StrictCdgFunctor>::Source;
type TgtOf<F> = <F as StrictCdgFunctor>::Target;

/// Apply a strict CDG functor entry by entry, expanding multilinearly.
pub fn induced_map<F: StrictCdgFunctor>(func: &F, c: &ChainOf<SrcOf<F>>) -> ChainOf<TgtOf<F>> {
    let t = func.target();
    let mut out = HochChain::zero(c.kind(), c.window());
    for (w, coef) in c.terms() {
        let mut partial: Vec<(Word<_, _>, Q)> = vec![(Vec::with_capacity(w.len()), qi(1))];
        for e in w {
            let images: Vec<(Entry<_, _>, Q)> = match e {
                Entry::Unit(x) => vec![(Entry::Unit(func.map_object(x)), qi(1))],
                Entry::Mor(m, _) => func
                    .map_morphism(m)
                    .into_iter()
                    .map(|(n, k)| {
                        let p = t.parity(&n);
                        (Entry::Mor(n, p), k)
                    })
                    .collect(),
            };
            partial = partial
                .iter()
                .flat_map(|(pw, pc)| {
                    images.iter().map(move |(img, k)| {
                        let mut nw = pw.clone();
                        nw.push(img.clone());
                        (nw, pc * k)
                    })
                })
                .collect();
        }
        for (nw, k) in partial {
            out.add_word(nw, coef.scale(&k));
        }
    }
    out
}

/// The strict morphism of mixed complexes with u-connections induced by a
/// strict functor; its homotopy is zero.
pub struct InducedMorphism<F: StrictCdgFunctor> {
    functor: F,
    source: HochschildComplex<SrcOf<F>>,
    target: HochschildComplex<TgtOf<F>>,
}

impl<F> InducedMorphism<F>
where
    F: StrictCdgFunctor,
    SrcOf<F>: Clone,
    TgtOf<F>: Clone,
{
    pub fn new(functor: F, source: HochschildComplex<SrcOf<F>>) -> Self {
        let target = HochschildComplex::new(functor.target().clone(), source.kind(), source.window())
            .with_sampling(source.sampling());
        InducedMorphism { functor, source, target }
    }

    pub fn functor(&self) -> &F {
        &self.functor
    }
}

impl<F: StrictCdgFunctor> WeakMorphism for InducedMorphism<F> {
    type Source = HochschildComplex<SrcOf<F>>;
    type Target = HochschildComplex<TgtOf<F>>;

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn map(&self, x: &ChainOf<SrcOf<F>>) -> Result<ChainOf<TgtOf<F>>, OpError> {
        Ok(induced_map(&self.functor, x))
    }

    fn homotopy(&self, x: &ChainOf<SrcOf<F>>) -> Result<ChainOf<TgtOf<F>>, OpError> {
        Ok(HochChain::zero(x.kind(), x.window()))
    }
}
