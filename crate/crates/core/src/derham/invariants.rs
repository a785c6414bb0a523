use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::forms::insert_index;
use super::DerhamError;
use crate::exactfield::{qi, ExactMatrix, IdealBasis, Monomial, Poly, QuotientDim, Q};

/// dim Q[x]/(∂W/∂x_1, .., ∂W/∂x_m).
pub fn milnor_number(w: &Poly) -> QuotientDim {
    jacobian_ideal(w).quotient_dimension()
}

pub(crate) fn jacobian_ideal(w: &Poly) -> IdealBasis {
    IdealBasis::new(w.vars(), w.gradient()).completed()
}

/// Whether W^k lies in the Jacobian ideal for some k ≤ `max_power`, which
/// puts the critical locus inside the zero fibre of W.
pub fn critical_locus_in_zero_fiber(w: &Poly, max_power: u32) -> bool {
    let j = jacobian_ideal(w);
    let mut p = w.clone();
    for _ in 0..max_power {
        if j.contains(&p) {
            return true;
        }
        p = &p * w;
    }
    false
}

/// Strictly positive rational weights w_i with every monomial of W of
/// weighted degree one, if such a system exists and is found.
///
/// A unique solution or a one-parameter family is handled exactly; larger
/// families are not searched.
pub fn quasi_homogeneous_weights(w: &Poly) -> Option<Vec<Q>> {
    let m = w.nvars();
    if w.is_zero() || m == 0 {
        return None;
    }
    // rows (k | -1): kernel vectors (v, t) have k·v = t
    let rows: Vec<Vec<Q>> = w
        .terms()
        .keys()
        .map(|k| k.iter().map(|&e| qi(e as i64)).chain(std::iter::once(qi(-1))).collect())
        .collect();
    let ker = ExactMatrix::from_rows(rows).kernel_basis();
    let pivot = ker.iter().position(|v| !v[m].is_zero())?;
    let p: Vec<Q> = ker[pivot].iter().map(|x| x / &ker[pivot][m]).collect();
    let hom: Vec<Vec<Q>> = ker
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pivot)
        .map(|(_, v)| v.iter().zip(&p).map(|(a, b)| a - &v[m] * b).collect())
        .collect();
    let part = &p[..m];
    match hom.len() {
        0 => part.iter().all(|x| x.is_positive()).then(|| part.to_vec()),
        1 => {
            let k = &hom[0][..m];
            let mut lo: Option<Q> = None;
            let mut hi: Option<Q> = None;
            for (pi, ki) in part.iter().zip(k) {
                if ki.is_zero() {
                    if !pi.is_positive() {
                        return None;
                    }
                    continue;
                }
                let t = -(pi / ki);
                if ki.is_positive() {
                    lo = Some(lo.map_or(t.clone(), |l: Q| l.max(t)));
                } else {
                    hi = Some(hi.map_or(t.clone(), |h: Q| h.min(t)));
                }
            }
            let t = match (lo, hi) {
                (Some(l), Some(h)) if l < h => (l + h) / qi(2),
                (Some(_), Some(_)) => return None,
                (Some(l), None) => l + Q::one(),
                (None, Some(h)) => h - Q::one(),
                (None, None) => Q::zero(),
            };
            Some(part.iter().zip(k).map(|(a, b)| a + &t * b).collect())
        }
        _ => None,
    }
}

/// Cohomology dimensions split by Z/2 degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityDims {
    pub even: usize,
    pub odd: usize,
}

impl ParityDims {
    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    fn from_degrees(h: &[usize]) -> Self {
        let mut d = ParityDims::default();
        for (p, &x) in h.iter().enumerate() {
            if p % 2 == 0 {
                d.even += x;
            } else {
                d.odd += x;
            }
        }
        d
    }
}

type Cell = (Monomial, Vec<usize>);

/// Which differential: −dW∧ on forms or ι_dW on polyvectors.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Forms,
    Polyvectors,
}

struct Twisted<'a> {
    grad: &'a [Poly],
    side: Side,
}

impl Twisted<'_> {
    fn target_degree(&self, p: usize) -> Option<usize> {
        match self.side {
            Side::Forms => Some(p + 1),
            Side::Polyvectors => p.checked_sub(1),
        }
    }

    fn apply(&self, (k, idx): &Cell) -> Vec<(Cell, Q)> {
        let mut out = Vec::new();
        let mut push = |i: usize, j: Vec<usize>, neg: bool| {
            for (m, c) in self.grad[i].terms() {
                let mono: Monomial = k.iter().zip(m).map(|(a, b)| a + b).collect();
                out.push(((mono, j.clone()), if neg { -c.clone() } else { c.clone() }));
            }
        };
        match self.side {
            // sign of −dW∧ dropped: it does not change ranks
            Side::Forms => {
                for i in 0..self.grad.len() {
                    if let Some((neg, j)) = insert_index(i, idx) {
                        push(i, j, neg);
                    }
                }
            }
            Side::Polyvectors => {
                for (pos, &i) in idx.iter().enumerate() {
                    let mut j = idx.clone();
                    j.remove(pos);
                    push(i, j, pos % 2 == 1);
                }
            }
        }
        out
    }
}

/// Rank of the map from `src` cells to their images, restricted to image
/// coordinates accepted by `keep`.
fn rank_of_map(tw: &Twisted, src: &[Cell], keep: impl Fn(&Cell) -> bool) -> usize {
    if src.is_empty() {
        return 0;
    }
    let mut index: HashMap<Cell, usize> = HashMap::new();
    let mut cols: Vec<Vec<(usize, Q)>> = Vec::with_capacity(src.len());
    for c in src {
        let mut col = Vec::new();
        for (t, v) in tw.apply(c) {
            if !keep(&t) {
                continue;
            }
            let n = index.len();
            let r = *index.entry(t).or_insert(n);
            col.push((r, v));
        }
        cols.push(col);
    }
    if index.is_empty() {
        return 0;
    }
    let mut m = ExactMatrix::<Q>::zeros(index.len(), src.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (r, v) in col {
            let s = m.get(r, j).clone() + v;
            m.set(r, j, s);
        }
    }
    m.rank()
}

fn subsets(m: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, p, &mut Vec::new(), &mut out);
    out
}

/// Monomials whose weighted degree is at most `bound` (weights positive).
fn monomials_weight_at_most(weights: &[Q], bound: &Q) -> Vec<Monomial> {
    fn go(i: usize, weights: &[Q], left: Q, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            out.push(cur.clone());
            return;
        }
        let mut left = left;
        let mut e = 0;
        while !left.is_negative() {
            cur[i] = e;
            go(i + 1, weights, left.clone(), cur, out);
            left -= &weights[i];
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if bound.is_negative() {
        return out;
    }
    go(0, weights, bound.clone(), &mut vec![0; weights.len()], &mut out);
    out
}

fn monomials_degree_at_most(m: usize, d: u32) -> Vec<Monomial> {
    monomials_weight_at_most(&vec![qi(1); m], &qi(d as i64))
}

fn weight_of(weights: &[Q], k: &[u32]) -> Q {
    weights.iter().zip(k).fold(Q::zero(), |acc, (w, &e)| acc + w * qi(e as i64))
}

/// Cohomology per form degree on the quasi-homogeneous path. Every
/// differential raises weight by exactly one, so the complex splits into
/// finite slices. `top` is the largest weight where cohomology can live.
fn graded_dims(w: &Poly, weights: &[Q], side: Side, top: &Q) -> Result<Vec<usize>, DerhamError> {
    let m = w.nvars();
    let grad = w.gradient();
    let tw = Twisted { grad: &grad, side };
    let sign = match side {
        Side::Forms => qi(1),
        Side::Polyvectors => qi(-1),
    };
    let limit = top + qi(2);
    let mut groups: BTreeMap<(Q, usize), Vec<Cell>> = BTreeMap::new();
    for p in 0..=m {
        for idx in subsets(m, p) {
            let shift = idx.iter().fold(Q::zero(), |a, &i| a + &weights[i]) * &sign;
            for k in monomials_weight_at_most(weights, &(&limit - &shift)) {
                let t = weight_of(weights, &k) + &shift;
                groups.entry((t, p)).or_default().push((k, idx.clone()));
            }
        }
    }
    let mut h = vec![0usize; m + 1];
    let mut beyond = 0usize;
    let rank_out = |t: &Q, p: usize| -> usize {
        match (groups.get(&(t.clone(), p)), tw.target_degree(p)) {
            (Some(cells), Some(_)) => rank_of_map(&tw, cells, |_| true),
            _ => 0,
        }
    };
    for ((t, p), cells) in &groups {
        if *t > top + qi(1) {
            continue;
        }
        let out = rank_out(t, *p);
        let src_p = match side {
            Side::Forms => p.checked_sub(1),
            Side::Polyvectors => (*p < m).then_some(p + 1),
        };
        let inc = src_p.map_or(0, |sp| rank_out(&(t - qi(1)), sp));
        let dim = cells.len() - out - inc;
        if t > top {
            beyond += dim;
        } else {
            h[*p] += dim;
        }
    }
    if beyond > 0 {
        return Err(DerhamError::NonStabilized { bound: 0 });
    }
    Ok(h)
}

/// Cohomology per degree of the complex truncated to polynomial degree ≤ d.
fn truncated_dims(w: &Poly, side: Side, d: u32) -> Vec<usize> {
    let m = w.nvars();
    let grad = w.gradient();
    let tw = Twisted { grad: &grad, side };
    let monos = monomials_degree_at_most(m, d);
    let cells: Vec<Vec<Cell>> = (0..=m)
        .map(|p| subsets(m, p).into_iter().flat_map(|i| monos.iter().map(move |k| (k.clone(), i.clone()))).collect())
        .collect();
    let deg = |c: &Cell| c.0.iter().sum::<u32>();
    let rank_all: Vec<usize> = (0..=m).map(|p| rank_of_map(&tw, &cells[p], |_| true)).collect();
    let rank_high: Vec<usize> = (0..=m).map(|p| rank_of_map(&tw, &cells[p], |c| deg(c) > d)).collect();
    (0..=m)
        .map(|p| {
            let ker = cells[p].len() - rank_all[p];
            let src = match side {
                Side::Forms => p.checked_sub(1),
                Side::Polyvectors => (p < m).then_some(p + 1),
            };
            let img = src.map_or(0, |s| rank_all[s] - rank_high[s]);
            ker - img
        })
        .collect()
}

fn dims(w: &Poly, degree_bound: u32, side: Side) -> Result<ParityDims, DerhamError> {
    let m = w.nvars();
    if let (Some(weights), QuotientDim::Finite(_)) = (quasi_homogeneous_weights(w), milnor_number(w)) {
        let sum = weights.iter().fold(Q::zero(), |a, b| a + b);
        let socle = qi(m as i64) - &sum * qi(2);
        let top = match side {
            Side::Forms => &socle + &sum,
            Side::Polyvectors => socle,
        };
        let h = graded_dims(w, &weights, side, &top).map_err(|_| DerhamError::NonStabilized { bound: degree_bound })?;
        return Ok(ParityDims::from_degrees(&h));
    }
    if degree_bound == 0 {
        return Err(DerhamError::NonStabilized { bound: degree_bound });
    }
    let a = truncated_dims(w, side, degree_bound - 1);
    let b = truncated_dims(w, side, degree_bound);
    if a != b {
        return Err(DerhamError::NonStabilized { bound: degree_bound });
    }
    Ok(ParityDims::from_degrees(&b))
}

/// Dimensions of H(Ω•, −dW∧) by parity of the form degree.
pub fn hh_dims(w: &Poly, degree_bound: u32) -> Result<ParityDims, DerhamError> {
    dims(w, degree_bound, Side::Forms)
}

/// Dimensions of H(Λ•T, ι_dW) by parity of the polyvector degree.
pub fn koszul_dims(w: &Poly, degree_bound: u32) -> Result<ParityDims, DerhamError> {
    dims(w, degree_bound, Side::Polyvectors)
}

