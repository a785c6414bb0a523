use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::forms::FormVector;
use crate::cdgcat::{random_monomial, random_coeff};
use crate::exactfield::{Poly, RatFuncU};
use crate::mixedcore::{random_ratfunc, Element, MixedComplex, OpError, UConnection};

/// Operators of the twisted de Rham complex that `derham_apply` exposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerhamOp {
    D,
    MinusDwWedge,
    BPlusUB,
    NablaDr,
}

impl DerhamOp {
    pub const ALL: [DerhamOp; 4] = [DerhamOp::D, DerhamOp::MinusDwWedge, DerhamOp::BPlusUB, DerhamOp::NablaDr];

    pub fn name(self) -> &'static str {
        match self {
            DerhamOp::D => "d",
            DerhamOp::MinusDwWedge => "minus_dW_wedge",
            DerhamOp::BPlusUB => "b_plus_uB",
            DerhamOp::NablaDr => "nabla_DR",
        }
    }
}

/// (Ω•, −dW∧, d) with the connection d/du + Γ/u + W/u².
#[derive(Clone, Debug)]
pub struct DeRham {
    w: Poly,
    grad: Vec<Poly>,
    max_degree: u32,
}

impl DeRham {
    pub fn new(w: &Poly) -> Self {
        DeRham { w: w.clone(), grad: w.gradient(), max_degree: 3 }
    }

    /// Polynomial degree bound for sampled coefficients.
    pub fn with_max_degree(mut self, d: u32) -> Self {
        self.max_degree = d;
        self
    }

    pub fn potential(&self) -> &Poly {
        &self.w
    }

    pub fn vars(&self) -> &[String] {
        self.w.vars()
    }

    pub fn minus_dw_wedge(&self, x: &FormVector) -> FormVector {
        x.wedge_one_form(&self.grad).scale(&RatFuncU::from_i64(-1))
    }

    pub fn apply(&self, op: DerhamOp, x: &FormVector) -> FormVector {
        match op {
            DerhamOp::D => x.d(),
            DerhamOp::MinusDwWedge => self.minus_dw_wedge(x),
            DerhamOp::BPlusUB => self.minus_dw_wedge(x).add(&x.d().scale(&RatFuncU::u())),
            DerhamOp::NablaDr => x.d_du().add(&self.connection(x)),
        }
    }

    /// Γ/u + W/u².
    fn connection(&self, x: &FormVector) -> FormVector {
        let g = x.gamma().scale(&RatFuncU::u_pow(-1, crate::exactfield::qi(1)));
        let w = x.mul_poly(&self.w).scale(&RatFuncU::u_pow(-2, crate::exactfield::qi(1)));
        g.add(&w)
    }
}

/// Apply one de Rham operator for the potential `w`.
pub fn derham_apply(op: DerhamOp, x: &FormVector, w: &Poly) -> FormVector {
    DeRham::new(w).apply(op, x)
}

impl MixedComplex for DeRham {
    type Elem = FormVector;

    fn name(&self) -> String {
        format!("DR({})", self.w)
    }

    fn b(&self, x: &FormVector) -> Result<FormVector, OpError> {
        Ok(self.minus_dw_wedge(x))
    }

    fn big_b(&self, x: &FormVector) -> Result<FormVector, OpError> {
        Ok(x.d())
    }

    /// One or two terms of a common parity.
    fn sample(&self, rng: &mut ChaCha8Rng) -> FormVector {
        let vars = self.vars();
        let m = vars.len();
        let parity = rng.random_range(0..2usize);
        let degrees: Vec<usize> = (0..=m).filter(|p| p % 2 == parity).collect();
        let degrees = if degrees.is_empty() { vec![0] } else { degrees };
        let n = rng.random_range(1..=2);
        let mut out = FormVector::zero(vars);
        for _ in 0..n {
            let p = degrees[rng.random_range(0..degrees.len())];
            let mut idx: Vec<usize> = (0..m).collect();
            while idx.len() > p {
                idx.remove(rng.random_range(0..idx.len()));
            }
            let mono = random_monomial(rng, m, self.max_degree);
            let c = random_ratfunc(rng).scale(&random_coeff(rng));
            out = out.add(&FormVector::basis(vars, mono, &idx, c));
        }
        out
    }

    fn render(&self, x: &FormVector) -> String {
        x.to_string()
    }
}

impl UConnection for DeRham {
    fn connection_part(&self, x: &FormVector) -> Result<FormVector, OpError> {
        Ok(self.connection(x))
    }
}
