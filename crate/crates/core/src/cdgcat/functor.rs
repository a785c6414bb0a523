use super::{normalize, sub_lin, CdgAlgebra, CdgCategory, CdgError, ElemMor, Lin, MatrixCategory, MatrixObject};
use crate::exactfield::{Monomial, Poly};
use crate::mixedcore::{sample_rng, Failure, IdentityReport};

use rand::Rng;

/// A strict CDG functor: preserves composition, differential and curvature
/// on the nose.
pub trait StrictCdgFunctor: Sync {
    type Source: CdgCategory;
    type Target: CdgCategory;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn map_object(&self, x: &<Self::Source as CdgCategory>::Obj) -> <Self::Target as CdgCategory>::Obj;
    fn map_morphism(&self, f: &<Self::Source as CdgCategory>::Mor) -> Lin<<Self::Target as CdgCategory>::Mor>;

    fn map_lin(&self, l: &Lin<<Self::Source as CdgCategory>::Mor>) -> Lin<<Self::Target as CdgCategory>::Mor> {
        let mut out = Vec::new();
        for (m, c) in l {
            for (n, d) in self.map_morphism(m) {
                out.push((n, d * c));
            }
        }
        normalize(out)
    }
}

/// Checks F(g f) = F(g) F(f), F(df) = d F(f) and F(h_X) = h_{FX} on samples.
pub fn verify_strict_functor<F: StrictCdgFunctor>(func: &F, samples: usize, seed: u64, max_degree: u32) -> IdentityReport {
    let (s, t) = (func.source(), func.target());
    let objs = s.objects();
    let mut failures = Vec::new();
    for i in 0..samples {
        let mut rng = sample_rng(seed, i);
        let x = objs[rng.random_range(0..objs.len())].clone();
        let y = objs[rng.random_range(0..objs.len())].clone();
        let z = objs[rng.random_range(0..objs.len())].clone();
        let f = s.sample_hom(&mut rng, &x, &y, max_degree);
        let g = s.sample_hom(&mut rng, &y, &z, max_degree);
        let mut res = Vec::new();
        let comp = sub_lin(&func.map_lin(&s.compose_lin(&g, &f)), &t.compose_lin(&func.map_lin(&g), &func.map_lin(&f)));
        res.extend(comp);
        let diff = sub_lin(&func.map_lin(&s.differential_lin(&f)), &t.differential_lin(&func.map_lin(&f)));
        res.extend(diff);
        let curv = sub_lin(&func.map_lin(&s.curvature(&x)), &t.curvature(&func.map_object(&x)));
        res.extend(curv);
        let res = normalize(res);
        if !res.is_empty() {
            failures.push(Failure { seed_index: i, residual_printed: t.render_lin(&res) });
        }
    }
    IdentityReport { identity: "strict functor".into(), samples, failures }
}

/// The identity functor of a category.
#[derive(Clone, Debug)]
pub struct IdentityFunctor<C>(pub C);

impl<C: CdgCategory> StrictCdgFunctor for IdentityFunctor<C> {
    type Source = C;
    type Target = C;

    fn source(&self) -> &C {
        &self.0
    }
    fn target(&self) -> &C {
        &self.0
    }
    fn map_object(&self, x: &C::Obj) -> C::Obj {
        x.clone()
    }
    fn map_morphism(&self, f: &C::Mor) -> Lin<C::Mor> {
        vec![(f.clone(), crate::exactfield::qi(1))]
    }
}

/// (A, -W) sent to the free rank-one module with zero delta inside the QDG
/// module category over (A, W). The curvature of that module is 0 - W, which
/// matches the curvature of (A, -W).
#[derive(Clone, Debug)]
pub struct Yoneda {
    source: CdgAlgebra,
    target: MatrixCategory,
}

impl Yoneda {
    pub fn new(w: &Poly) -> Self {
        let target = MatrixCategory::new(w, vec![MatrixObject::free_rank_one("A", w.vars())])
            .expect("rank one with zero delta is valid");
        Yoneda { source: CdgAlgebra::new(w, -1), target }
    }
}

impl StrictCdgFunctor for Yoneda {
    type Source = CdgAlgebra;
    type Target = MatrixCategory;

    fn source(&self) -> &CdgAlgebra {
        &self.source
    }
    fn target(&self) -> &MatrixCategory {
        &self.target
    }
    fn map_object(&self, _: &()) -> usize {
        0
    }
    fn map_morphism(&self, f: &Monomial) -> Lin<ElemMor> {
        vec![(ElemMor { tgt: 0, row: 0, src: 0, col: 0, mono: f.clone() }, crate::exactfield::qi(1))]
    }
}

/// A polynomial ring inclusion Q[x..] -> Q[x.., y..] carrying W to itself.
#[derive(Clone, Debug)]
pub struct RingInclusion {
    source: CdgAlgebra,
    target: CdgAlgebra,
    positions: Vec<usize>,
}

impl RingInclusion {
    /// Every source variable must occur in `target_vars`.
    pub fn new(source: &CdgAlgebra, target_vars: &[String]) -> Result<Self, CdgError> {
        let positions = source
            .vars()
            .iter()
            .map(|v| {
                target_vars
                    .iter()
                    .position(|t| t == v)
                    .ok_or_else(|| CdgError::Format(format!("variable {v} missing from the target ring")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let w = source.potential().embed(target_vars, &positions);
        Ok(RingInclusion { source: source.clone(), target: CdgAlgebra::new(&w, source.sign()), positions })
    }
}

impl StrictCdgFunctor for RingInclusion {
    type Source = CdgAlgebra;
    type Target = CdgAlgebra;

    fn source(&self) -> &CdgAlgebra {
        &self.source
    }
    fn target(&self) -> &CdgAlgebra {
        &self.target
    }
    fn map_object(&self, _: &()) {}
    fn map_morphism(&self, f: &Monomial) -> Lin<Monomial> {
        let mut m = vec![0; self.target.vars().len()];
        for (i, &e) in f.iter().enumerate() {
            m[self.positions[i]] += e;
        }
        vec![(m, crate::exactfield::qi(1))]
    }
}
