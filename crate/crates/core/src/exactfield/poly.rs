use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{fmt_coeff_abs, parse, Monomial, ParseError, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("variable index {0} out of range")]
    BadVariable(usize),
}

/// Monomial orders. Graded lexicographic is the pinned default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
        }
    }
}

/// Multivariate polynomial over Q in a named, ordered set of variables.
///
/// Terms live in a `BTreeMap` keyed by exponent vector, so two polynomials
/// over the same variables are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Q>,
}

/// `x^2*y` style text for an exponent vector; `1` for the empty monomial.
pub fn monomial_string(vars: &[String], m: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly { vars: Arc::new(vars.to_vec()), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        Poly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Q) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, Q::one())
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut m = vec![0; vars.len()];
        m[i] = 1;
        Self::monomial(vars, m, Q::one())
    }

    pub fn monomial(vars: &[String], m: Monomial, c: Q) -> Self {
        assert_eq!(m.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(vars: &[String], it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            assert_eq!(m.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    /// Parse the text format with a fixed variable list.
    pub fn parse(s: &str, vars: &[String]) -> Result<Self, ParseError> {
        parse::parse_poly(s, vars)
    }

    /// Parse and take the variables to be the identifiers in `s`, sorted.
    pub fn parse_infer(s: &str) -> Result<Self, ParseError> {
        let vars = parse::identifiers(s)?;
        parse::parse_poly(s, &vars)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Poly) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_vars(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_vars(other)?;
        let mut r = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return self.zero_like();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[u32], c: &Q) -> Poly {
        if c.is_zero() {
            return self.zero_like();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(&self.vars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Poly, PolyError> {
        if i >= self.nvars() {
            return Err(PolyError::BadVariable(i));
        }
        let mut r = self.zero_like();
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                r.add_term(m2, c * Q::from_integer(m[i].into()));
            }
        }
        Ok(r)
    }

    /// All first partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.partial_derivative(i).expect("index in range")).collect()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Re-embed into a larger variable list; `positions[i]` is where variable
    /// `i` of `self` lands.
    pub fn embed(&self, vars: &[String], positions: &[usize]) -> Poly {
        let mut r = Poly::zero(vars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; vars.len()];
            for (i, &e) in m.iter().enumerate() {
                m2[positions[i]] += e;
            }
            r.add_term(m2, c.clone());
        }
        r
    }

    /// Same terms, relabelled variables (lengths must agree).
    pub fn with_vars(&self, vars: &[String]) -> Poly {
        assert_eq!(vars.len(), self.nvars());
        Poly { vars: Arc::new(vars.to_vec()), terms: self.terms.clone() }
    }

    /// Terms in descending graded-lex order, the printing order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| MonomialOrder::GrLex.cmp(b.0, a.0));
        v
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let constant = m.iter().all(|&e| e == 0);
            let mono = monomial_string(&self.vars, m);
            if constant {
                write!(f, "{}", fmt_coeff_abs(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_coeff_abs(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomials over different variables")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_add(&-rhs).expect("polynomials over different variables")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials over different variables")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
