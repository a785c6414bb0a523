use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_coeff_abs, parse, ParseError, Q};

/// Dense univariate polynomial in `u`, little-endian, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = UPoly(vec![c]);
        p.trim();
        p
    }

    pub fn from_coeffs(c: Vec<Q>) -> Self {
        let mut p = UPoly(c);
        p.trim();
        p
    }

    /// `c * u^k`
    pub fn monomial(k: usize, c: Q) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.0.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Multiplicity of the root `u = 0`.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Self::from_coeffs(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.lead();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            quo[k] = c;
        }
        (Self::from_coeffs(quo), Self::from_coeffs(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = Q::one() / self.lead();
        self.scale(&l)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(i.into())).collect(),
        )
    }

    /// p(-u)
    pub fn flip(&self) -> Self {
        UPoly(
            self.0.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect(),
        )
    }

    /// Drop the factor `u^k` (caller guarantees divisibility).
    fn shift_down(&self, k: usize) -> Self {
        UPoly(self.0[k..].to_vec())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let mono = if k == 1 { "u".to_string() } else { format!("u^{k}") };
            if k == 0 {
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

/// Element of Q(u): a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFuncU {
    num: UPoly,
    den: UPoly,
}

impl RatFuncU {
    /// Build and normalize `num/den`; `None` when `den` is zero.
    pub fn new(num: UPoly, den: UPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    fn normalized(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = Q::one() / den.lead();
            return RatFuncU { num: num.scale(&inv), den: UPoly::constant(Q::one()) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.divrem(&g).0, den.divrem(&g).0) };
        let l = d.lead();
        if !l.is_one() {
            let inv = Q::one() / l;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFuncU { num: n, den: d }
    }

    /// Re-run normalization; a no-op on values built through the public API.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn from_q(c: Q) -> Self {
        RatFuncU { num: UPoly::constant(c), den: UPoly::constant(Q::one()) }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_q(Q::from_integer(c.into()))
    }

    pub fn u() -> Self {
        RatFuncU { num: UPoly::monomial(1, Q::one()), den: UPoly::constant(Q::one()) }
    }

    /// `c * u^k` for any integer `k`.
    pub fn u_pow(k: i32, c: Q) -> Self {
        if k >= 0 {
            RatFuncU { num: UPoly::monomial(k as usize, c), den: UPoly::constant(Q::one()) }
        } else {
            Self::normalized(UPoly::constant(c), UPoly::monomial((-k) as usize, Q::one()))
        }
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        parse::parse_ratfunc(s)
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The value as a rational if it is constant.
    pub fn as_q(&self) -> Option<Q> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() || self.num.is_zero() {
            return Self::zero();
        }
        RatFuncU { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, o: &Self) -> Option<Self> {
        Some(self * &o.inv()?)
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut r = Self::one();
        for _ in 0..e.unsigned_abs() {
            r = &r * &base;
        }
        r
    }

    /// Formal d/du.
    pub fn d_du(&self) -> Self {
        if self.den.is_one() {
            return RatFuncU { num: self.num.derivative(), den: self.den.clone() };
        }
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::normalized(n, self.den.mul(&self.den))
    }

    /// Substitution u -> -u.
    pub fn flip(&self) -> Self {
        Self::normalized(self.num.flip(), self.den.flip())
    }

    /// Order of vanishing at u = 0 (negative for a pole); `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let a = self.num.valuation()? as i64;
        let b = self.den.valuation().expect("nonzero denominator") as i64;
        Some(a - b)
    }

    /// Coefficient of `u^k` in the Laurent expansion at u = 0.
    pub fn laurent_coefficient(&self, k: i64) -> Q {
        let Some(v) = self.valuation() else { return Q::zero() };
        if k < v {
            return Q::zero();
        }
        let n0 = self.num.shift_down(self.num.valuation().unwrap());
        let d0 = self.den.shift_down(self.den.valuation().unwrap());
        // power series n0 / d0 up to order k - v
        let need = (k - v) as usize;
        let inv0 = Q::one() / d0.coeff(0);
        let mut s: Vec<Q> = Vec::with_capacity(need + 1);
        for i in 0..=need {
            let mut acc = n0.coeff(i);
            for j in 1..=i.min(d0.degree().unwrap_or(0)) {
                acc -= d0.coeff(j) * &s[i - j];
            }
            s.push(acc * &inv0);
        }
        s[need].clone()
    }
}

impl Zero for RatFuncU {
    fn zero() -> Self {
        RatFuncU { num: UPoly::zero(), den: UPoly::constant(Q::one()) }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFuncU {
    fn one() -> Self {
        Self::from_q(Q::one())
    }
}

impl Add for &RatFuncU {
    type Output = RatFuncU;
    fn add(self, o: &RatFuncU) -> RatFuncU {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFuncU { num: n, den: self.den.clone() };
            }
            return RatFuncU::normalized(n, self.den.clone());
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFuncU::normalized(n, self.den.mul(&o.den))
    }
}

impl Sub for &RatFuncU {
    type Output = RatFuncU;
    fn sub(self, o: &RatFuncU) -> RatFuncU {
        self + &(-o)
    }
}

impl Mul for &RatFuncU {
    type Output = RatFuncU;
    fn mul(self, o: &RatFuncU) -> RatFuncU {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFuncU::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFuncU { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        RatFuncU::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Div for &RatFuncU {
    type Output = RatFuncU;
    fn div(self, o: &RatFuncU) -> RatFuncU {
        self.checked_div(o).expect("division by zero in Q(u)")
    }
}

impl Neg for &RatFuncU {
    type Output = RatFuncU;
    fn neg(self) -> RatFuncU {
        RatFuncU { num: self.num.scale(&-Q::one()), den: self.den.clone() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFuncU {
            type Output = RatFuncU;
            fn $m(self, o: RatFuncU) -> RatFuncU {
                (&self).$m(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for RatFuncU {
    type Output = RatFuncU;
    fn neg(self) -> RatFuncU {
        -&self
    }
}

impl fmt::Display for RatFuncU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let d = self.den.to_string();
        let wrap = |s: String| if s.contains(' ') { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(n), wrap(d))
    }
}
