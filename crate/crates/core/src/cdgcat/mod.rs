//! Curved DG categories: the one-object CDG algebra (A, W), categories of
//! matrix factorizations and QDG modules, hom complexes, opposites and strict
//! functors.

mod algebra;
mod functor;
mod matrix;
mod mf;
mod opposite;

pub use algebra::CdgAlgebra;
pub use functor::{verify_strict_functor, IdentityFunctor, RingInclusion, StrictCdgFunctor, Yoneda};
pub use matrix::{ElemMor, MatrixCategory, MatrixObject};
pub use mf::{HomComplex, HomElement, MfObject};
pub use opposite::Opposite;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactfield::{q, Q};
use crate::mixedcore::{sample_rng, Failure, IdentityReport, Parity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdgError {
    #[error("delta^2 - W*id has nonzero entry ({row}, {col}): {entry}")]
    CurvatureMismatch { row: usize, col: usize, entry: String },
    #[error("block shapes do not match ranks: {0}")]
    Shape(String),
    #[error("delta is not odd: entry ({row}, {col}) joins equal parities")]
    NotOdd { row: usize, col: usize },
    #[error("objects have different potentials: {left} vs {right}")]
    PotentialMismatch { left: String, right: String },
    #[error("bad object description: {0}")]
    Format(String),
}

/// Finite Q-linear combination of basis morphisms.
pub type Lin<M> = Vec<(M, Q)>;

/// Combine like terms and drop zeros, in a canonical order.
pub fn normalize<M: Ord + Clone>(l: Lin<M>) -> Lin<M> {
    let mut acc: BTreeMap<M, Q> = BTreeMap::new();
    for (m, c) in l {
        *acc.entry(m).or_insert_with(Q::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// A curved DG category presented by homogeneous basis morphisms.
///
/// `compose(g, f)` is g∘f and must only be called when the target of `f`
/// is the source of `g`.
pub trait CdgCategory: Sync + Send {
    type Obj: Clone + Ord + Hash + Debug + Send + Sync;
    type Mor: Clone + Ord + Hash + Debug + Send + Sync;

    fn objects(&self) -> Vec<Self::Obj>;
    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn parity(&self, f: &Self::Mor) -> Parity;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Lin<Self::Mor>;
    fn differential(&self, f: &Self::Mor) -> Lin<Self::Mor>;
    fn curvature(&self, x: &Self::Obj) -> Lin<Self::Mor>;
    /// A nonzero homogeneous element of Hom(x, y) with entries of degree at
    /// most `max_degree`, or empty if that hom space is zero.
    fn sample_hom(&self, rng: &mut ChaCha8Rng, x: &Self::Obj, y: &Self::Obj, max_degree: u32) -> Lin<Self::Mor>;
    fn render_morphism(&self, f: &Self::Mor) -> String;
    fn render_object(&self, x: &Self::Obj) -> String;

    /// Bilinear extension of composition.
    fn compose_lin(&self, g: &Lin<Self::Mor>, f: &Lin<Self::Mor>) -> Lin<Self::Mor> {
        let mut out = Vec::new();
        for (gm, gc) in g {
            for (fm, fc) in f {
                if self.source(gm) != self.target(fm) {
                    continue;
                }
                for (m, c) in self.compose(gm, fm) {
                    out.push((m, c * gc * fc));
                }
            }
        }
        normalize(out)
    }

    fn differential_lin(&self, f: &Lin<Self::Mor>) -> Lin<Self::Mor> {
        let mut out = Vec::new();
        for (m, c) in f {
            for (n, d) in self.differential(m) {
                out.push((n, d * c));
            }
        }
        normalize(out)
    }

    fn render_lin(&self, l: &Lin<Self::Mor>) -> String {
        if l.is_empty() {
            return "0".into();
        }
        l.iter()
            .map(|(m, c)| format!("({c})*{}", self.render_morphism(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Random nonzero small rational used as a sample coefficient.
pub(crate) fn random_coeff(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.random_range(1..=4) * if rng.random_bool(0.5) { 1 } else { -1 };
    let d: i64 = rng.random_range(1..=2);
    q(n, d)
}

/// Random exponent vector of total degree at most `max_degree`.
pub(crate) fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Vec<u32> {
    let mut m = vec![0u32; nvars];
    if nvars == 0 {
        return m;
    }
    let total = rng.random_range(0..=max_degree);
    for _ in 0..total {
        m[rng.random_range(0..nvars)] += 1;
    }
    m
}

pub(crate) fn sub_lin<M: Ord + Clone>(a: &Lin<M>, b: &Lin<M>) -> Lin<M> {
    normalize(a.iter().cloned().chain(b.iter().map(|(m, c)| (m.clone(), -c))).collect())
}

fn scale_lin<M: Clone>(a: &Lin<M>, c: &Q) -> Lin<M> {
    a.iter().map(|(m, x)| (m.clone(), x * c)).collect()
}

/// Leibniz rule and the curvature axiom d²f = h_Y f - f h_X on sampled
/// composable pairs.
pub fn verify_cdg_axioms<C: CdgCategory>(
    cat: &C,
    name: &str,
    samples: usize,
    seed: u64,
    max_degree: u32,
) -> (IdentityReport, IdentityReport) {
    let objs = cat.objects();
    let mut leibniz = Vec::new();
    let mut curv = Vec::new();
    for i in 0..samples {
        let mut rng = sample_rng(seed, i);
        let pick = |rng: &mut ChaCha8Rng| objs[rng.random_range(0..objs.len())].clone();
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let f = cat.sample_hom(&mut rng, &x, &y, max_degree);
        let g = cat.sample_hom(&mut rng, &y, &z, max_degree);
        if f.is_empty() || g.is_empty() {
            continue;
        }
        let gp = cat.parity(&g[0].0);
        let lhs = cat.differential_lin(&cat.compose_lin(&g, &f));
        let sg = if gp == Parity::Odd { q(-1, 1) } else { q(1, 1) };
        let rhs = normalize(
            cat.compose_lin(&cat.differential_lin(&g), &f)
                .into_iter()
                .chain(scale_lin(&cat.compose_lin(&g, &cat.differential_lin(&f)), &sg))
                .collect(),
        );
        let r = sub_lin(&lhs, &rhs);
        if !r.is_empty() {
            leibniz.push(Failure { seed_index: i, residual_printed: cat.render_lin(&r) });
        }
        let ddf = cat.differential_lin(&cat.differential_lin(&f));
        let expect = sub_lin(
            &cat.compose_lin(&cat.curvature(&y), &f),
            &cat.compose_lin(&f, &cat.curvature(&x)),
        );
        let r = sub_lin(&ddf, &expect);
        if !r.is_empty() {
            curv.push(Failure { seed_index: i, residual_printed: cat.render_lin(&r) });
        }
    }
    (
        IdentityReport { identity: format!("{name}: Leibniz"), samples, failures: leibniz },
        IdentityReport { identity: format!("{name}: d^2 f = h_Y f - f h_X"), samples, failures: curv },
    )
}

#[cfg(test)]
mod tests;
