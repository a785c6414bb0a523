use rand_chacha::ChaCha8Rng;

use super::{CdgCategory, Lin};
use crate::exactfield::qi;
use crate::mixedcore::Parity;

/// The opposite CDG category. Morphisms are those of `C` with source and
/// target exchanged; composition picks up (-1)^{|f||g|} and curvatures are
/// negated. The differential is unchanged.
#[derive(Clone, Debug)]
pub struct Opposite<C>(pub C);

impl<C> Opposite<C> {
    pub fn inner(&self) -> &C {
        &self.0
    }
}

impl<C: CdgCategory> CdgCategory for Opposite<C> {
    type Obj = C::Obj;
    type Mor = C::Mor;

    fn objects(&self) -> Vec<C::Obj> {
        self.0.objects()
    }

    fn source(&self, f: &C::Mor) -> C::Obj {
        self.0.target(f)
    }

    fn target(&self, f: &C::Mor) -> C::Obj {
        self.0.source(f)
    }

    fn parity(&self, f: &C::Mor) -> Parity {
        self.0.parity(f)
    }

    fn compose(&self, g: &C::Mor, f: &C::Mor) -> Lin<C::Mor> {
        let odd = self.0.parity(f) == Parity::Odd && self.0.parity(g) == Parity::Odd;
        let mut out = self.0.compose(f, g);
        if odd {
            for (_, c) in out.iter_mut() {
                *c = -c.clone();
            }
        }
        out
    }

    fn differential(&self, f: &C::Mor) -> Lin<C::Mor> {
        self.0.differential(f)
    }

    fn curvature(&self, x: &C::Obj) -> Lin<C::Mor> {
        self.0.curvature(x).into_iter().map(|(m, c)| (m, c * qi(-1))).collect()
    }

    fn sample_hom(&self, rng: &mut ChaCha8Rng, x: &C::Obj, y: &C::Obj, max_degree: u32) -> Lin<C::Mor> {
        self.0.sample_hom(rng, y, x, max_degree)
    }

    fn render_morphism(&self, f: &C::Mor) -> String {
        format!("{}^op", self.0.render_morphism(f))
    }

    fn render_object(&self, x: &C::Obj) -> String {
        format!("{}^op", self.0.render_object(x))
    }
}
