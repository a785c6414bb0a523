//! Word-level operators. Every function takes a stored word (f_0, .., f_n)
//! with the head last and returns its image as a Q-combination of words.
//! Sign exponents are written with a_k = |s f_k| = |f_k| + 1.

use num_traits::Zero;

use super::chain::{Entry, Word};
use super::complex::HochschildComplex;
use crate::cdgcat::CdgCategory;
use crate::exactfield::{q, qi, sign, Q};

type W<C> = Word<<C as CdgCategory>::Obj, <C as CdgCategory>::Mor>;
type E<C> = Entry<<C as CdgCategory>::Obj, <C as CdgCategory>::Mor>;
pub(crate) type Terms<C> = Vec<(W<C>, Q)>;

fn shifted<C: CdgCategory>(w: &W<C>) -> Vec<usize> {
    w.iter().map(|e| e.a()).collect()
}

fn sum(a: &[usize]) -> usize {
    a.iter().sum()
}

/// Σ_{lo ≤ k < l < hi} a_k a_l
fn pair_sum(a: &[usize], lo: usize, hi: usize) -> usize {
    let mut s = 0;
    let mut run = 0;
    for &x in &a[lo..hi] {
        s += run * x;
        run += x;
    }
    s
}

impl<C: CdgCategory> HochschildComplex<C> {
    pub(crate) fn entry(&self, m: C::Mor) -> E<C> {
        let p = self.cat.parity(&m);
        Entry::Mor(m, p)
    }

    pub(crate) fn entry_source(&self, e: &E<C>) -> C::Obj {
        match e {
            Entry::Unit(x) => x.clone(),
            Entry::Mor(m, _) => self.cat.source(m),
        }
    }

    pub(crate) fn entry_target(&self, e: &E<C>) -> C::Obj {
        match e {
            Entry::Unit(x) => x.clone(),
            Entry::Mor(m, _) => self.cat.target(m),
        }
    }

    /// g∘f where a formal unit on either side acts as the identity.
    fn comp(&self, g: &E<C>, f: &E<C>) -> Vec<(E<C>, Q)> {
        match (g, f) {
            (Entry::Unit(_), _) => vec![(f.clone(), qi(1))],
            (_, Entry::Unit(_)) => vec![(g.clone(), qi(1))],
            (Entry::Mor(gm, _), Entry::Mor(fm, _)) => {
                self.cat.compose(gm, fm).into_iter().map(|(m, c)| (self.entry(m), c)).collect()
            }
        }
    }

    /// d of an entry; the formal unit is closed.
    fn dd(&self, e: &E<C>) -> Vec<(E<C>, Q)> {
        match e {
            Entry::Unit(_) => Vec::new(),
            Entry::Mor(m, _) => self.cat.differential(m).into_iter().map(|(n, c)| (self.entry(n), c)).collect(),
        }
    }

    fn curv(&self, x: &C::Obj) -> Vec<(E<C>, Q)> {
        self.cat.curvature(x).into_iter().map(|(m, c)| (self.entry(m), c)).collect()
    }

    pub(crate) fn w_b_m1(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let a = shifted::<C>(w);
        let mut out = Vec::new();
        for i in 0..=n {
            let s = sign(sum(&a[i + 1..]));
            for (y, c) in self.dd(&w[i]) {
                let mut nw = w.clone();
                nw[i] = y;
                out.push((nw, &s * c));
            }
        }
        out
    }

    pub(crate) fn w_b_m2(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let a = shifted::<C>(w);
        for i in 0..n {
            let s = sign(sum(&a[i + 1..]));
            for (y, c) in self.comp(&w[i + 1], &w[i]) {
                let mut nw: W<C> = w[..i].to_vec();
                nw.push(y);
                nw.extend_from_slice(&w[i + 2..]);
                out.push((nw, &s * c));
            }
        }
        // f_0 f_n closes the cycle and becomes the new head
        let s = -sign(a[0] * sum(&a[1..]) + w[0].parity().bit());
        for (y, c) in self.comp(&w[0], &w[n]) {
            let mut nw: W<C> = w[1..n].to_vec();
            nw.push(y);
            out.push((nw, &s * c));
        }
        out
    }

    pub(crate) fn w_b_m0(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let a = shifted::<C>(w);
        let mut out = Vec::new();
        for i in 0..=n {
            let s = sign(sum(&a[i..]));
            for (y, c) in self.curv(&self.entry_source(&w[i])) {
                let mut nw: W<C> = w[..i].to_vec();
                nw.push(y);
                nw.extend_from_slice(&w[i..]);
                out.push((nw, &s * c));
            }
        }
        out
    }

    pub(crate) fn w_big_b(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        if w[n].is_unit() {
            return Vec::new();
        }
        let a = shifted::<C>(w);
        (0..=n)
            .map(|i| {
                let s = sign(sum(&a[..i]) * sum(&a[i..]));
                let mut nw: W<C> = w[i..].to_vec();
                nw.extend_from_slice(&w[..i]);
                nw.push(Entry::Unit(self.entry_source(&w[i])));
                (nw, s)
            })
            .collect()
    }

    pub(crate) fn w_gamma(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() as i64 - 1;
        vec![(w.clone(), q(-n, 2))]
    }

    pub(crate) fn w_u_m1(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let a = shifted::<C>(w);
        let p0 = w[0].parity().bit();
        let e = sum(&a[1..]) + p0 * (w[n].parity().bit() + sum(&a[1..n]));
        let s = -sign(e) * q(1, 2);
        for (y, c) in self.dd(&w[0]) {
            for (z, c2) in self.comp(&y, &w[n]) {
                let mut nw: W<C> = w[1..n].to_vec();
                nw.push(z);
                out.push((nw, &s * &c * c2));
            }
        }
        out
    }

    pub(crate) fn w_u_m0(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let mut out = Vec::new();
        for (y, c) in self.curv(&self.entry_source(&w[0])) {
            for (z, c2) in self.comp(&y, &w[n]) {
                let mut nw: W<C> = w[..n].to_vec();
                nw.push(z);
                out.push((nw, &c * c2));
            }
        }
        out
    }

    pub(crate) fn w_v_m1(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let mut out = Vec::new();
        if w[n].is_unit() {
            return out;
        }
        let a = shifted::<C>(w);
        for j in 0..n {
            let unit = Entry::Unit(self.entry_source(&w[j + 1]));
            for i in 0..=j {
                let e = sum(&a[i + 1..]) + (sum(&a[..=j]) + 1) * sum(&a[j + 1..]);
                let s = -sign(e) * q(1, 2);
                for (y, c) in self.dd(&w[i]) {
                    let mut nw = w.clone();
                    nw[i] = y;
                    let mut rot: W<C> = nw[j + 1..].to_vec();
                    rot.extend_from_slice(&nw[..=j]);
                    rot.push(unit.clone());
                    out.push((rot, &s * c));
                }
            }
        }
        out
    }

    pub(crate) fn w_v_m0(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let mut out = Vec::new();
        if w[n].is_unit() {
            return out;
        }
        let a = shifted::<C>(w);
        for j in 0..=n {
            let unit = Entry::Unit(self.entry_source(&w[j]));
            for i in 0..=j {
                let e = sum(&a[i..]) + (sum(&a[..j]) + 1) * sum(&a[j..]) + 1;
                let s = sign(e);
                for (y, c) in self.curv(&self.entry_source(&w[i])) {
                    let mut nw: W<C> = w[j..].to_vec();
                    nw.extend_from_slice(&w[..i]);
                    nw.push(y);
                    nw.extend_from_slice(&w[i..j]);
                    nw.push(unit.clone());
                    out.push((nw, &s * c));
                }
            }
        }
        out
    }

    /// Φ: (f_n; f_{n-1}, .., f_0) goes to ± (f_n; f_0, .., f_{n-1}) read in
    /// the opposite category.
    pub(crate) fn w_phi(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let a = shifted::<C>(w);
        let s = sign(n + pair_sum(&a, 0, n));
        let mut nw: W<C> = (0..n).map(|k| w[n - 1 - k].clone()).collect();
        nw.push(w[n].clone());
        vec![(nw, s)]
    }

    /// u² times the homotopy for Φ. The curvature part only exists on the
    /// second kind.
    pub(crate) fn w_phi_homotopy(&self, w: &W<C>) -> Terms<C> {
        let n = w.len() - 1;
        let mut out = Vec::new();
        if w[n].is_unit() {
            return out;
        }
        let a = shifted::<C>(w);
        let eta = |i: usize| pair_sum(&a, 0, i) + pair_sum(&a, i, n + 1);
        for i in 0..n {
            let s = sign(eta(i) + n) * q(1, 2);
            let tail: W<C> = w[i + 1..].iter().chain(&w[..i]).rev().cloned().collect();
            for (y, c) in self.dd(&w[i]) {
                let mut nw = tail.clone();
                nw.push(y);
                out.push((nw, &s * c));
            }
        }
        if self.kind == super::ChainKind::Second {
            for i in 0..=n {
                let s = -sign(eta(i) + n);
                let tail: W<C> = w[i..].iter().chain(&w[..i]).rev().cloned().collect();
                for (y, c) in self.curv(&self.entry_source(&w[i])) {
                    let mut nw = tail.clone();
                    nw.push(y);
                    out.push((nw, &s * c));
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }
}
