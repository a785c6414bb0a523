//! Toy carrier: Q(u)^2 with an even vector e and an odd vector o,
//! b = 0, B(e) = o, and A(u) = diag(0, -1/2)/u.

use super::*;

#[derive(Clone, Debug, PartialEq)]
struct Pair(RatFuncU, RatFuncU);

impl Element for Pair {
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.0) && Zero::is_zero(&self.1)
    }
    fn add(&self, o: &Self) -> Self {
        Pair(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn scale(&self, c: &RatFuncU) -> Self {
        Pair(&self.0 * c, &self.1 * c)
    }
    fn d_du(&self) -> Self {
        Pair(self.0.d_du(), self.1.d_du())
    }
    fn flip_u(&self) -> Self {
        Pair(self.0.flip(), self.1.flip())
    }
    fn parity(&self) -> Option<Parity> {
        match (Zero::is_zero(&self.0), Zero::is_zero(&self.1)) {
            (false, true) => Some(Parity::Even),
            (true, false) => Some(Parity::Odd),
            _ => None,
        }
    }
}

struct Toy {
    gamma_odd: RatFuncU,
    broken_b: bool,
}

impl MixedComplex for Toy {
    type Elem = Pair;
    fn name(&self) -> String {
        "toy".into()
    }
    fn b(&self, x: &Pair) -> Result<Pair, OpError> {
        Ok(if self.broken_b { x.clone() } else { Pair(RatFuncU::zero(), RatFuncU::zero()) })
    }
    fn big_b(&self, x: &Pair) -> Result<Pair, OpError> {
        Ok(Pair(RatFuncU::zero(), x.0.clone()))
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Pair {
        use rand::Rng;
        if rng.random_bool(0.5) {
            Pair(random_ratfunc(rng), RatFuncU::zero())
        } else {
            Pair(RatFuncU::zero(), random_ratfunc(rng))
        }
    }
    fn render(&self, x: &Pair) -> String {
        format!("({}) e + ({}) o", x.0, x.1)
    }
}

impl UConnection for Toy {
    fn connection_part(&self, x: &Pair) -> Result<Pair, OpError> {
        Ok(Pair(RatFuncU::zero(), &(&x.1 * &self.gamma_odd) * &RatFuncU::u_pow(-1, q(1, 1))))
    }
}

fn good() -> Toy {
    Toy { gamma_odd: RatFuncU::from_q(q(-1, 2)), broken_b: false }
}

#[test]
fn toy_is_a_mixed_complex() {
    let r = verify_mixed(&good(), 50, 1).unwrap();
    assert!(Reports::passed(&r), "{r:?}");
}

#[test]
fn identity_as_b_breaks_the_anticommutator() {
    let r = verify_mixed(&Toy { broken_b: true, ..good() }, 20, 1).unwrap();
    assert!(!r.b_squared.passed());
    assert!(!r.anticommutator.passed());
    assert!(!r.parity.passed());
    let w = &r.anticommutator.failures[0];
    assert!(!w.residual_printed.is_empty());
}

#[test]
fn toy_connection_holds_only_with_the_right_shift() {
    let r = verify_u_connection(&good(), 40, 3).unwrap();
    assert!(Reports::passed(&r), "{r:?}");
    let bad = Toy { gamma_odd: RatFuncU::zero(), broken_b: false };
    assert!(!verify_u_connection(&bad, 40, 3).unwrap().connection.passed());
}

#[test]
fn flipped_connection_is_a_connection_for_minus_b() {
    let r = verify_u_connection(&UFlipped(good()), 40, 5).unwrap();
    assert!(Reports::passed(&r), "{r:?}");
}

struct Id<'a>(&'a Toy);

impl WeakMorphism for Id<'_> {
    type Source = Toy;
    type Target = Toy;
    fn source(&self) -> &Toy {
        self.0
    }
    fn target(&self) -> &Toy {
        self.0
    }
    fn map(&self, x: &Pair) -> Result<Pair, OpError> {
        Ok(x.clone())
    }
    fn homotopy(&self, _: &Pair) -> Result<Pair, OpError> {
        Ok(Pair(RatFuncU::zero(), RatFuncU::zero()))
    }
}

#[test]
fn identity_is_a_strict_morphism() {
    let t = good();
    let r = verify_weak_morphism(&Id(&t), 30, 9).unwrap();
    assert!(Reports::passed(&r));
}

#[test]
fn reports_are_reproducible() {
    let bad = Toy { gamma_odd: RatFuncU::zero(), broken_b: false };
    let a = serde_json::to_string(&verify_u_connection(&bad, 25, 11).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_u_connection(&bad, 25, 11).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn b_plus_ub_squares_to_zero_on_the_toy() {
    assert!(b_plus_ub_squares_to_zero(&good(), 20, 2).unwrap());
}
