use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{normalize, random_coeff, random_monomial, CdgCategory, Lin};
use crate::exactfield::{monomial_string, qi, Monomial, Poly};
use crate::mixedcore::Parity;

/// The polynomial ring A = Q[x_1..x_m] concentrated in even degree, with
/// zero differential and curvature sign*W, viewed as a one-object category.
/// Basis morphisms are monomials.
#[derive(Clone, Debug)]
pub struct CdgAlgebra {
    vars: Vec<String>,
    potential: Poly,
    sign: i32,
}

impl CdgAlgebra {
    /// `sign` must be +1 or -1.
    pub fn new(w: &Poly, sign: i32) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        CdgAlgebra { vars: w.vars().to_vec(), potential: w.clone(), sign }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// The W this algebra was built from, before the sign.
    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    /// The curvature element sign*W as a polynomial.
    pub fn curvature_poly(&self) -> Poly {
        self.potential.scale(&qi(self.sign as i64))
    }

    /// A polynomial as a combination of basis morphisms.
    pub fn lin_of(&self, p: &Poly) -> Lin<Monomial> {
        p.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    pub fn poly_of(&self, l: &Lin<Monomial>) -> Poly {
        Poly::from_terms(&self.vars, l.iter().cloned())
    }
}

impl CdgCategory for CdgAlgebra {
    type Obj = ();
    type Mor = Monomial;

    fn objects(&self) -> Vec<()> {
        vec![()]
    }

    fn source(&self, _: &Monomial) {}

    fn target(&self, _: &Monomial) {}

    fn parity(&self, _: &Monomial) -> Parity {
        Parity::Even
    }

    fn compose(&self, g: &Monomial, f: &Monomial) -> Lin<Monomial> {
        vec![(g.iter().zip(f).map(|(a, b)| a + b).collect(), qi(1))]
    }

    fn differential(&self, _: &Monomial) -> Lin<Monomial> {
        Vec::new()
    }

    fn curvature(&self, _: &()) -> Lin<Monomial> {
        self.lin_of(&self.curvature_poly())
    }

    fn sample_hom(&self, rng: &mut ChaCha8Rng, _: &(), _: &(), max_degree: u32) -> Lin<Monomial> {
        let k = rng.random_range(1..=2);
        let out: Lin<Monomial> = (0..k)
            .map(|_| (random_monomial(rng, self.vars.len(), max_degree), random_coeff(rng)))
            .collect();
        let out = normalize(out);
        if out.is_empty() {
            vec![(vec![0; self.vars.len()], qi(1))]
        } else {
            out
        }
    }

    fn render_morphism(&self, f: &Monomial) -> String {
        monomial_string(&self.vars, f)
    }

    fn render_object(&self, _: &()) -> String {
        "A".into()
    }
}
