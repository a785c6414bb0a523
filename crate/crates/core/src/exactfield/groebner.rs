use std::collections::VecDeque;
use std::fmt;

use num_traits::One;

use super::{Monomial, MonomialOrder, Poly, Q};

/// Dimension of a quotient ring A/I.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for QuotientDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDim::Finite(n) => write!(f, "{n}"),
            QuotientDim::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Generators of an ideal, with a reduced Groebner basis once completed.
///
/// Every basis element remembers how it was built from the original
/// generators, so membership comes with a certificate (see [`IdealBasis::lift`]).
#[derive(Clone, Debug)]
pub struct IdealBasis {
    vars: Vec<String>,
    generators: Vec<Poly>,
    order: MonomialOrder,
    basis: Vec<Poly>,
    cofactors: Vec<Vec<Poly>>,
    completed: bool,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quot(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl IdealBasis {
    /// Zero generators are dropped; all generators must share variables.
    pub fn new(vars: &[String], generators: Vec<Poly>) -> Self {
        Self::with_order(vars, generators, MonomialOrder::GrLex)
    }

    pub fn with_order(vars: &[String], generators: Vec<Poly>, order: MonomialOrder) -> Self {
        let generators: Vec<Poly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            assert_eq!(g.vars(), vars, "generator over different variables");
        }
        IdealBasis {
            vars: vars.to_vec(),
            generators,
            order,
            basis: Vec::new(),
            cofactors: Vec::new(),
            completed: false,
        }
    }

    /// Run Buchberger and return the completed ideal.
    pub fn completed(mut self) -> Self {
        self.complete();
        self
    }

    pub fn is_completed(&self) -> bool {
        self.completed
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Reduced Groebner basis (empty until completed).
    pub fn groebner_basis(&self) -> &[Poly] {
        &self.basis
    }

    fn lt(&self, p: &Poly) -> Monomial {
        p.leading_term(self.order).expect("nonzero").0.clone()
    }

    fn lc(&self, p: &Poly) -> Q {
        p.leading_term(self.order).expect("nonzero").1.clone()
    }

    fn zero_cofactors(&self) -> Vec<Poly> {
        vec![Poly::zero(&self.vars); self.generators.len()]
    }

    /// Divide `p` by `basis`, returning (remainder, quotients).
    fn divide(&self, basis: &[Poly], p: &Poly) -> (Poly, Vec<Poly>) {
        let lts: Vec<(Monomial, Q)> = basis.iter().map(|g| (self.lt(g), self.lc(g))).collect();
        let mut quotients = vec![Poly::zero(&self.vars); basis.len()];
        let mut rem = Poly::zero(&self.vars);
        let mut p = p.clone();
        while let Some((m, c)) = p.leading_term(self.order).map(|(m, c)| (m.clone(), c.clone())) {
            match lts.iter().position(|(l, _)| divides(l, &m)) {
                Some(k) => {
                    let t = quot(&m, &lts[k].0);
                    let f = &c / &lts[k].1;
                    quotients[k].add_term(t.clone(), f.clone());
                    p = &p - &basis[k].mul_monomial(&t, &f);
                }
                None => {
                    rem.add_term(m.clone(), c.clone());
                    p.add_term(m, -c);
                }
            }
        }
        (rem, quotients)
    }

    fn combine(&self, quotients: &[Poly], cof: &[Vec<Poly>]) -> Vec<Poly> {
        let mut out = self.zero_cofactors();
        for (qk, ck) in quotients.iter().zip(cof) {
            if qk.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(ck) {
                *o = &*o + &(qk * c);
            }
        }
        out
    }

    /// Buchberger's algorithm with the coprime-leading-term criterion,
    /// followed by inter-reduction to the reduced basis.
    pub fn complete(&mut self) {
        if self.completed {
            return;
        }
        let ng = self.generators.len();
        let mut g: Vec<Poly> = Vec::new();
        let mut cof: Vec<Vec<Poly>> = Vec::new();
        for (j, p) in self.generators.iter().enumerate() {
            let mut e = self.zero_cofactors();
            e[j] = Poly::one(&self.vars);
            g.push(p.clone());
            cof.push(e);
        }
        let mut pairs: VecDeque<(usize, usize)> =
            (0..ng).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        while let Some((i, j)) = pairs.pop_front() {
            let (li, lj) = (self.lt(&g[i]), self.lt(&g[j]));
            if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
                continue;
            }
            let l = lcm(&li, &lj);
            let (ti, tj) = (quot(&l, &li), quot(&l, &lj));
            let (ci, cj) = (Q::one() / self.lc(&g[i]), Q::one() / self.lc(&g[j]));
            let s = &g[i].mul_monomial(&ti, &ci) - &g[j].mul_monomial(&tj, &cj);
            let mut s_cof = self.zero_cofactors();
            for k in 0..ng {
                s_cof[k] = &cof[i][k].mul_monomial(&ti, &ci) - &cof[j][k].mul_monomial(&tj, &cj);
            }
            let (r, qs) = self.divide(&g, &s);
            if r.is_zero() {
                continue;
            }
            let sub = self.combine(&qs, &cof);
            let r_cof: Vec<Poly> = s_cof.iter().zip(&sub).map(|(a, b)| a - b).collect();
            let n = g.len();
            g.push(r);
            cof.push(r_cof);
            for k in 0..n {
                pairs.push_back((k, n));
            }
        }
        // minimal basis: drop elements whose leading term is divisible by another's
        let mut keep: Vec<usize> = Vec::new();
        for k in 0..g.len() {
            let lk = self.lt(&g[k]);
            let redundant = (0..g.len()).any(|o| {
                o != k && {
                    let lo = self.lt(&g[o]);
                    divides(&lo, &lk) && (lo != lk || o < k)
                }
            });
            if !redundant {
                keep.push(k);
            }
        }
        let mut basis: Vec<Poly> = keep.iter().map(|&k| g[k].clone()).collect();
        let mut bcof: Vec<Vec<Poly>> = keep.iter().map(|&k| cof[k].clone()).collect();
        // reduce tails and make monic
        for k in 0..basis.len() {
            let others: Vec<Poly> = basis.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, p)| p.clone()).collect();
            let other_cof: Vec<Vec<Poly>> =
                bcof.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, c)| c.clone()).collect();
            let (r, qs) = self.divide(&others, &basis[k]);
            let sub = self.combine(&qs, &other_cof);
            let inv = Q::one() / self.lc(&r);
            bcof[k] = bcof[k].iter().zip(&sub).map(|(a, b)| (a - b).scale(&inv)).collect();
            basis[k] = r.scale(&inv);
        }
        let mut idx: Vec<usize> = (0..basis.len()).collect();
        idx.sort_by(|&a, &b| self.order.cmp(&self.lt(&basis[a]), &self.lt(&basis[b])));
        self.basis = idx.iter().map(|&k| basis[k].clone()).collect();
        self.cofactors = idx.iter().map(|&k| bcof[k].clone()).collect();
        self.completed = true;
    }

    fn ensure_completed(&self) -> std::borrow::Cow<'_, IdealBasis> {
        if self.completed {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.clone().completed())
        }
    }

    /// Remainder of `p` modulo the Groebner basis; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let me = self.ensure_completed();
        me.divide(&me.basis, p).0
    }

    /// `(r, a)` with `p = r + sum_j a[j] * generators[j]` and `r` the normal form.
    pub fn lift(&self, p: &Poly) -> (Poly, Vec<Poly>) {
        let me = self.ensure_completed();
        let (r, qs) = me.divide(&me.basis, p);
        let a = me.combine(&qs, &me.cofactors);
        (r, a)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| self.lt(g)).collect()
    }

    /// Per-variable exponent bounds of the staircase, if it is finite.
    fn staircase_box(&self) -> Option<Vec<u32>> {
        let lts = self.leading_monomials();
        (0..self.vars.len())
            .map(|i| {
                lts.iter()
                    .filter(|m| m.iter().enumerate().all(|(k, &e)| k == i || e == 0))
                    .map(|m| m[i])
                    .min()
            })
            .collect()
    }

    /// Count of standard monomials, or `Infinite` when the staircase is open.
    pub fn quotient_dimension(&self) -> QuotientDim {
        match self.standard_monomials() {
            Some(v) => QuotientDim::Finite(v.len()),
            None => QuotientDim::Infinite,
        }
    }

    /// Monomials not divisible by any leading term, ascending in the order;
    /// `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let me = self.ensure_completed();
        let lts = me.leading_monomials();
        let bounds = me.staircase_box()?;
        let mut out = Vec::new();
        let mut m = vec![0u32; bounds.len()];
        loop {
            if !lts.iter().any(|l| divides(l, &m)) {
                out.push(m.clone());
            }
            // odometer over the box
            let mut k = 0;
            loop {
                if k == m.len() {
                    out.sort_by(|a, b| me.order.cmp(a, b));
                    return Some(out);
                }
                m[k] += 1;
                if m[k] < bounds[k] {
                    break;
                }
                m[k] = 0;
                k += 1;
            }
        }
    }
}
