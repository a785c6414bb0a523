use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactfield::{monomial_string, Monomial, Poly, RatFuncU, Q};
use crate::mixedcore::{Element, Parity};

/// Basis key x^k dx_I with I strictly increasing.
pub type FormKey = (Monomial, Vec<usize>);

/// A polynomial differential form with Q(u) coefficients.
#[derive(Clone, PartialEq)]
pub struct FormVector {
    vars: Vec<String>,
    terms: BTreeMap<FormKey, RatFuncU>,
}

/// Sign and sorted index list of dx_i ∧ dx_I, or None when i ∈ I.
pub(crate) fn insert_index(i: usize, idx: &[usize]) -> Option<(bool, Vec<usize>)> {
    if idx.contains(&i) {
        return None;
    }
    let before = idx.iter().filter(|&&j| j < i).count();
    let mut out = idx.to_vec();
    out.insert(before, i);
    Some((before % 2 == 1, out))
}

/// Sign and sorted index list of dx_I ∧ dx_J, or None if they overlap.
fn merge_indices(a: &[usize], b: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut cur = b.to_vec();
    let mut neg = false;
    for &i in a.iter().rev() {
        let (s, next) = insert_index(i, &cur)?;
        neg ^= s;
        cur = next;
    }
    Some((neg, cur))
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl FormVector {
    pub fn zero(vars: &[String]) -> Self {
        FormVector { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    /// p · dx_I for a polynomial p; `idx` need not be sorted.
    pub fn from_poly(p: &Poly, idx: &[usize]) -> Self {
        let mut out = Self::zero(p.vars());
        let Some((neg, sorted)) = merge_indices(idx, &[]) else { return out };
        for (m, c) in p.terms() {
            let c = if neg { -c.clone() } else { c.clone() };
            out.add_term((m.clone(), sorted.clone()), RatFuncU::from_q(c));
        }
        out
    }

    /// c · x^m dx_I.
    pub fn basis(vars: &[String], m: Monomial, idx: &[usize], c: RatFuncU) -> Self {
        assert_eq!(m.len(), vars.len(), "exponent vector length");
        let mut out = Self::zero(vars);
        if let Some((neg, sorted)) = merge_indices(idx, &[]) {
            out.add_term((m, sorted), if neg { -c } else { c });
        }
        out
    }

    /// The top form dx_1 ∧ .. ∧ dx_m times p.
    pub fn top(p: &Poly) -> Self {
        let idx: Vec<usize> = (0..p.nvars()).collect();
        Self::from_poly(p, &idx)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<FormKey, RatFuncU> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: FormKey, c: RatFuncU) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn map_coeffs(&self, f: impl Fn(&FormKey, &RatFuncU) -> RatFuncU) -> Self {
        let mut out = Self::zero(&self.vars);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(k, c));
        }
        out
    }

    /// Form degrees that occur.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|(_, i)| i.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree-p component.
    pub fn component(&self, p: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (k, c) in &self.terms {
            if k.1.len() == p {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Exterior derivative in the x-directions.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for ((m, idx), c) in &self.terms {
            for i in 0..m.len() {
                if m[i] == 0 {
                    continue;
                }
                let Some((neg, j)) = insert_index(i, idx) else { continue };
                let mut m2 = m.clone();
                m2[i] -= 1;
                let k = Q::from_integer(m[i].into());
                let k = if neg { -k } else { k };
                out.add_term((m2, j), c.scale(&k));
            }
        }
        out
    }

    /// Multiplication by a polynomial 0-form.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        let mut out = Self::zero(&self.vars);
        for ((m, idx), c) in &self.terms {
            for (pm, pc) in p.terms() {
                out.add_term((mono_mul(m, pm), idx.clone()), c.scale(pc));
            }
        }
        out
    }

    /// (Σ_i a_i dx_i) ∧ self.
    pub fn wedge_one_form(&self, a: &[Poly]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (i, ai) in a.iter().enumerate() {
            for ((m, idx), c) in &self.terms {
                let Some((neg, j)) = insert_index(i, idx) else { continue };
                for (pm, pc) in ai.terms() {
                    let k = if neg { -pc.clone() } else { pc.clone() };
                    out.add_term((mono_mul(m, pm), j.clone()), c.scale(&k));
                }
            }
        }
        out
    }

    /// self ∧ other.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.vars);
        for ((m1, i1), c1) in &self.terms {
            for ((m2, i2), c2) in &other.terms {
                let Some((neg, j)) = merge_indices(i1, i2) else { continue };
                let c = c1 * c2;
                out.add_term((mono_mul(m1, m2), j), if neg { -c } else { c });
            }
        }
        out
    }

    /// Γ: multiplication by −p/2 on p-forms.
    pub fn gamma(&self) -> Self {
        self.map_coeffs(|(_, idx), c| c.scale(&crate::exactfield::q(-(idx.len() as i64), 2)))
    }

    /// The polynomial coefficient of dx_I, if every coefficient is a constant.
    pub fn poly_coefficient(&self, idx: &[usize]) -> Option<Poly> {
        let mut p = Poly::zero(&self.vars);
        for ((m, i), c) in &self.terms {
            if i.as_slice() == idx {
                p.add_term(m.clone(), c.as_q()?);
            }
        }
        Some(p)
    }

    fn render_key(&self, (m, idx): &FormKey) -> String {
        let mono = monomial_string(&self.vars, m);
        if idx.is_empty() {
            return mono;
        }
        let dx: Vec<String> = idx.iter().map(|&i| format!("d{}", self.vars[i])).collect();
        let dx = dx.join("^");
        if mono == "1" {
            dx
        } else {
            format!("{mono}*{dx}")
        }
    }
}

impl fmt::Display for FormVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(k, c)| format!("({c})*{}", self.render_key(k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FormVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Element for FormVector {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    fn scale(&self, c: &RatFuncU) -> Self {
        self.map_coeffs(|_, x| x * c)
    }

    fn d_du(&self) -> Self {
        self.map_coeffs(|_, x| x.d_du())
    }

    fn flip_u(&self) -> Self {
        self.map_coeffs(|_, x| x.flip())
    }

    fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|(_, i)| Parity::from_bit(i.len()));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }
}
