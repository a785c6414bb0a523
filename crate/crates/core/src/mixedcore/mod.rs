//! Mixed complexes, u-connections and weak morphisms as operator packages,
//! with exact sampled verifiers for their defining identities.

mod report;

pub use report::{Failure, IdentityReport, MixedReport, Reports, UConnectionReport, WeakMorphismReport};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactfield::{q, RatFuncU};

/// Z/2 degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: usize) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(self.bit() + 1)
    }
}

/// Operator failures that are configuration problems rather than identity
/// failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error("weight {weight} leaves the window {window}")]
    WindowOverflow { weight: usize, window: usize },
    #[error("operator {op} is not defined on {kind} chains")]
    KindMismatch { op: String, kind: String },
    #[error("ill-typed input: {0}")]
    IllTyped(String),
}

/// A vector in some carrier with Q(u) coefficients.
pub trait Element: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &RatFuncU) -> Self;
    /// Formal d/du applied to the coefficients.
    fn d_du(&self) -> Self;
    /// Substitution u -> -u in the coefficients.
    fn flip_u(&self) -> Self;
    /// Parity if the element is homogeneous and nonzero.
    fn parity(&self) -> Option<Parity>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFuncU::from_i64(-1)))
    }
}

/// A mixed complex (C, b, B) with a sampler.
pub trait MixedComplex: Sync {
    type Elem: Element;

    fn name(&self) -> String;
    fn b(&self, x: &Self::Elem) -> Result<Self::Elem, OpError>;
    /// The Connes-type differential B.
    fn big_b(&self, x: &Self::Elem) -> Result<Self::Elem, OpError>;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    fn render(&self, x: &Self::Elem) -> String;

    /// b + uB
    fn b_plus_ub(&self, x: &Self::Elem) -> Result<Self::Elem, OpError> {
        Ok(self.b(x)?.add(&self.big_b(x)?.scale(&RatFuncU::u())))
    }
}

/// A u-connection d/du + A(u) on a mixed complex.
pub trait UConnection: MixedComplex {
    /// The Q(u)-linear part A(u).
    fn connection_part(&self, x: &Self::Elem) -> Result<Self::Elem, OpError>;

    fn nabla(&self, x: &Self::Elem) -> Result<Self::Elem, OpError> {
        Ok(x.d_du().add(&self.connection_part(x)?))
    }
}

/// A strict mixed-complex map with a homotopy for the connections.
pub trait WeakMorphism: Sync {
    type Source: UConnection;
    type Target: UConnection;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn map(&self, x: &<Self::Source as MixedComplex>::Elem) -> Result<<Self::Target as MixedComplex>::Elem, OpError>;
    fn homotopy(
        &self,
        x: &<Self::Source as MixedComplex>::Elem,
    ) -> Result<<Self::Target as MixedComplex>::Elem, OpError>;
}

/// The same mixed complex with B negated and the connection conjugated by
/// u -> -u, i.e. A'(u) = -A(-u). It is a u-connection for (b, -B) whenever
/// the original is one for (b, B).
pub struct UFlipped<M>(pub M);

impl<M: MixedComplex> MixedComplex for UFlipped<M> {
    type Elem = M::Elem;

    fn name(&self) -> String {
        format!("{} with (b, -B)", self.0.name())
    }
    fn b(&self, x: &M::Elem) -> Result<M::Elem, OpError> {
        self.0.b(x)
    }
    fn big_b(&self, x: &M::Elem) -> Result<M::Elem, OpError> {
        Ok(self.0.big_b(x)?.scale(&RatFuncU::from_i64(-1)))
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> M::Elem {
        self.0.sample(rng)
    }
    fn render(&self, x: &M::Elem) -> String {
        self.0.render(x)
    }
}

impl<M: UConnection> UConnection for UFlipped<M> {
    fn connection_part(&self, x: &M::Elem) -> Result<M::Elem, OpError> {
        Ok(self.0.connection_part(&x.flip_u())?.flip_u().scale(&RatFuncU::from_i64(-1)))
    }
}

/// Deterministic per-sample generator: sample `i` of run `seed` never
/// depends on how many other samples were drawn or in what order.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut z = seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Evaluate `check` on every sample index in parallel and merge by index.
fn run_samples<T, F>(samples: usize, check: F) -> Result<Vec<T>, OpError>
where
    T: Send,
    F: Fn(usize) -> Result<T, OpError> + Sync + Send,
{
    (0..samples).into_par_iter().map(check).collect()
}

fn collect_failures<R, E: Element>(
    results: &[Vec<Option<E>>],
    k: usize,
    render: R,
) -> Vec<Failure>
where
    R: Fn(&E) -> String,
{
    results
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            r[k].as_ref().map(|res| Failure { seed_index: i, residual_printed: render(res) })
        })
        .collect()
}

fn nonzero<E: Element>(e: E) -> Option<E> {
    (!e.is_zero()).then_some(e)
}

/// b² = 0, B² = 0, bB + Bb = 0, and parity reversal, on sampled elements.
pub fn verify_mixed<M: MixedComplex>(cx: &M, samples: usize, seed: u64) -> Result<MixedReport, OpError> {
    let results = run_samples(samples, |i| {
        let c = cx.sample(&mut sample_rng(seed, i));
        let bc = cx.b(&c)?;
        let big_bc = cx.big_b(&c)?;
        let bb = cx.b(&bc)?;
        let big_bb = cx.big_b(&big_bc)?;
        let anti = cx.b(&big_bc)?.add(&cx.big_b(&bc)?);
        // a parity witness is the offending image itself
        let parity_bad = c.parity().and_then(|p| {
            let bad = |img: &M::Elem| !img.is_zero() && img.parity() != Some(p.flip());
            if bad(&bc) {
                Some(bc.clone())
            } else if bad(&big_bc) {
                Some(big_bc.clone())
            } else {
                None
            }
        });
        Ok(vec![nonzero(bb), nonzero(big_bb), nonzero(anti), parity_bad])
    })?;
    let r = |x: &M::Elem| cx.render(x);
    let mk = |name: &str, k| IdentityReport {
        identity: format!("{}: {name}", cx.name()),
        samples,
        failures: collect_failures(&results, k, r),
    };
    Ok(MixedReport {
        b_squared: mk("b^2 = 0", 0),
        big_b_squared: mk("B^2 = 0", 1),
        anticommutator: mk("bB + Bb = 0", 2),
        parity: mk("b, B reverse parity", 3),
    })
}

/// [∇, b + uB] c = (1/2u)(b + uB) c on sampled c.
pub fn verify_u_connection<M: UConnection>(
    cx: &M,
    samples: usize,
    seed: u64,
) -> Result<UConnectionReport, OpError> {
    let half_inv_u = RatFuncU::u_pow(-1, q(1, 2));
    let results = run_samples(samples, |i| {
        let c = cx.sample(&mut sample_rng(seed, i));
        let dc = cx.b_plus_ub(&c)?;
        let lhs = cx.nabla(&dc)?.sub(&cx.b_plus_ub(&cx.nabla(&c)?)?);
        let rhs = dc.scale(&half_inv_u);
        // Q(u)-linearity of A on the same sample
        let f = RatFuncU::parse("(1 + 2*u)/(3 - u^2)").expect("fixed text");
        let lin = cx.connection_part(&c.scale(&f))?.sub(&cx.connection_part(&c)?.scale(&f));
        Ok(vec![nonzero(lhs.sub(&rhs)), nonzero(lin)])
    })?;
    let r = |x: &M::Elem| cx.render(x);
    Ok(UConnectionReport {
        connection: IdentityReport {
            identity: format!("{}: [nabla, b+uB] = (b+uB)/2u", cx.name()),
            samples,
            failures: collect_failures(&results, 0, r),
        },
        linearity: IdentityReport {
            identity: format!("{}: A(u) is Q(u)-linear", cx.name()),
            samples,
            failures: collect_failures(&results, 1, r),
        },
    })
}

/// f b = b' f, f B = B' f, and ∇' f - f ∇ = (b' + uB') H + H (b + uB).
pub fn verify_weak_morphism<W: WeakMorphism>(
    cx: &W,
    samples: usize,
    seed: u64,
) -> Result<WeakMorphismReport, OpError> {
    let (s, t) = (cx.source(), cx.target());
    let results = run_samples(samples, |i| {
        let c = s.sample(&mut sample_rng(seed, i));
        let fc = cx.map(&c)?;
        let fb = cx.map(&s.b(&c)?)?.sub(&t.b(&fc)?);
        let f_big_b = cx.map(&s.big_b(&c)?)?.sub(&t.big_b(&fc)?);
        let lhs = t.nabla(&fc)?.sub(&cx.map(&s.nabla(&c)?)?);
        let rhs = t.b_plus_ub(&cx.homotopy(&c)?)?.add(&cx.homotopy(&s.b_plus_ub(&c)?)?);
        Ok(vec![nonzero(fb), nonzero(f_big_b), nonzero(lhs.sub(&rhs))])
    })?;
    let r = |x: &<W::Target as MixedComplex>::Elem| t.render(x);
    let name = format!("{} -> {}", s.name(), t.name());
    let mk = |what: &str, k| IdentityReport {
        identity: format!("{name}: {what}"),
        samples,
        failures: collect_failures(&results, k, r),
    };
    Ok(WeakMorphismReport {
        commutes_with_b: mk("f b = b' f", 0),
        commutes_with_big_b: mk("f B = B' f", 1),
        homotopy: mk("nabla' f - f nabla = (b'+uB')H + H(b+uB)", 2),
    })
}

/// Sum of (b + uB)² over samples; zero whenever verify_mixed passes.
pub fn b_plus_ub_squares_to_zero<M: MixedComplex>(cx: &M, samples: usize, seed: u64) -> Result<bool, OpError> {
    let r = run_samples(samples, |i| {
        let c = cx.sample(&mut sample_rng(seed, i));
        Ok(cx.b_plus_ub(&cx.b_plus_ub(&c)?)?.is_zero())
    })?;
    Ok(r.into_iter().all(|x| x))
}

/// A random small element of Q(u): a rational constant times one of a few
/// shapes with poles and zeros at u = 0 and elsewhere.
pub fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFuncU {
    use rand::Rng;
    let n: i64 = rng.random_range(1..=5) * if rng.random_bool(0.5) { 1 } else { -1 };
    let d: i64 = rng.random_range(1..=3);
    let c = RatFuncU::from_q(q(n, d));
    let shape = match rng.random_range(0..6) {
        0 | 1 => RatFuncU::one(),
        2 => RatFuncU::u(),
        3 => RatFuncU::u_pow(-1, q(1, 1)),
        4 => RatFuncU::parse("1 + u").expect("fixed"),
        _ => RatFuncU::parse("u^2/(2 + u)").expect("fixed"),
    };
    let r = &c * &shape;
    debug_assert!(!r.is_zero());
    r
}

#[cfg(test)]
mod tests;
