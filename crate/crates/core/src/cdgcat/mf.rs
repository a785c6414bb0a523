use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CdgError;
use crate::exactfield::{qi, ExactMatrix, Monomial, Poly, Q};
use crate::mixedcore::Parity;

pub(crate) fn mat_mul(vars: &[String], a: &[Vec<Poly>], b: &[Vec<Poly>], inner: usize) -> Vec<Vec<Poly>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Poly::zero(vars);
                    for k in 0..inner {
                        acc = &acc + &(&row[k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn neg_block(a: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    a.iter().map(|r| r.iter().map(|p| p.scale(&qi(-1))).collect()).collect()
}

fn add_block(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

/// A matrix factorization of W of rank (rank0, rank1).
///
/// `upper` is the block E^1 -> E^0 (rank0 x rank1) and `lower` the block
/// E^0 -> E^1 (rank1 x rank0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfObject {
    vars: Vec<String>,
    rank0: usize,
    rank1: usize,
    upper: Vec<Vec<Poly>>,
    lower: Vec<Vec<Poly>>,
    w: Poly,
}

#[derive(Serialize, Deserialize)]
struct MfJson {
    vars: Vec<String>,
    rank0: usize,
    rank1: usize,
    #[serde(rename = "W")]
    w: String,
    upper: Vec<Vec<String>>,
    lower: Vec<Vec<String>>,
}

impl MfObject {
    /// Validates block shapes and delta^2 = W*id entry by entry.
    pub fn build(
        rank0: usize,
        rank1: usize,
        upper: Vec<Vec<Poly>>,
        lower: Vec<Vec<Poly>>,
        w: &Poly,
    ) -> Result<Self, CdgError> {
        let shape_ok = |b: &Vec<Vec<Poly>>, r: usize, c: usize| b.len() == r && b.iter().all(|row| row.len() == c);
        if !shape_ok(&upper, rank0, rank1) || !shape_ok(&lower, rank1, rank0) {
            return Err(CdgError::Shape(format!("expected blocks {rank0}x{rank1} and {rank1}x{rank0}")));
        }
        if upper.iter().chain(&lower).flatten().any(|p| p.vars() != w.vars()) {
            return Err(CdgError::Format("block entries use different variables from W".into()));
        }
        let e = MfObject { vars: w.vars().to_vec(), rank0, rank1, upper, lower, w: w.clone() };
        let d = e.delta_matrix();
        let n = rank0 + rank1;
        let sq = mat_mul(&e.vars, &d, &d, n);
        for (r, row) in sq.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                let diff = if r == c { p - w } else { p.clone() };
                if !diff.is_zero() {
                    return Err(CdgError::CurvatureMismatch { row: r, col: c, entry: p.to_string() });
                }
            }
        }
        Ok(e)
    }

    /// The rank (1,1) factorization with blocks (a, b) of W = ab.
    ///
    /// Panics if `a` and `b` are over different variables.
    pub fn koszul(a: &Poly, b: &Poly) -> Self {
        let w = a * b;
        Self::build(1, 1, vec![vec![a.clone()]], vec![vec![b.clone()]], &w).expect("ab factors ab")
    }

    pub fn rank0(&self) -> usize {
        self.rank0
    }

    pub fn rank1(&self) -> usize {
        self.rank1
    }

    pub fn rank(&self) -> usize {
        self.rank0 + self.rank1
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn potential(&self) -> &Poly {
        &self.w
    }

    pub fn upper(&self) -> &[Vec<Poly>] {
        &self.upper
    }

    pub fn lower(&self) -> &[Vec<Poly>] {
        &self.lower
    }

    /// Parity of the i-th basis vector (even summand first).
    pub fn parity_of(&self, i: usize) -> Parity {
        if i < self.rank0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// delta as a full square matrix on E^0 + E^1.
    pub fn delta_matrix(&self) -> Vec<Vec<Poly>> {
        let n = self.rank();
        let mut d = vec![vec![Poly::zero(&self.vars); n]; n];
        for r in 0..self.rank0 {
            for c in 0..self.rank1 {
                d[r][self.rank0 + c] = self.upper[r][c].clone();
            }
        }
        for r in 0..self.rank1 {
            for c in 0..self.rank0 {
                d[self.rank0 + r][c] = self.lower[r][c].clone();
            }
        }
        d
    }

    /// E[1]: parities swapped and delta negated.
    pub fn shift(&self) -> Self {
        MfObject {
            vars: self.vars.clone(),
            rank0: self.rank1,
            rank1: self.rank0,
            upper: neg_block(&self.lower),
            lower: neg_block(&self.upper),
            w: self.w.clone(),
        }
    }

    /// delta + tau for an odd tau given by its two blocks. Rejected unless
    /// the result still squares to W*id.
    pub fn twist(&self, tau_upper: &[Vec<Poly>], tau_lower: &[Vec<Poly>]) -> Result<Self, CdgError> {
        let ok = |b: &[Vec<Poly>], r: usize, c: usize| b.len() == r && b.iter().all(|row| row.len() == c);
        if !ok(tau_upper, self.rank0, self.rank1) || !ok(tau_lower, self.rank1, self.rank0) {
            return Err(CdgError::Shape("twist blocks do not match the object".into()));
        }
        Self::build(
            self.rank0,
            self.rank1,
            add_block(&self.upper, tau_upper),
            add_block(&self.lower, tau_lower),
            &self.w,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strs = |b: &[Vec<Poly>]| b.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        serde_json::to_value(MfJson {
            vars: self.vars.clone(),
            rank0: self.rank0,
            rank1: self.rank1,
            w: self.w.to_string(),
            upper: strs(&self.upper),
            lower: strs(&self.lower),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CdgError> {
        let j: MfJson = serde_json::from_value(v.clone()).map_err(|e| CdgError::Format(e.to_string()))?;
        let p = |s: &str| Poly::parse(s, &j.vars).map_err(|e| CdgError::Format(format!("{s}: {e}")));
        let block = |b: &[Vec<String>]| -> Result<Vec<Vec<Poly>>, CdgError> {
            b.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()
        };
        Self::build(j.rank0, j.rank1, block(&j.upper)?, block(&j.lower)?, &p(&j.w)?)
    }
}

/// A homogeneous element of Hom(E, F): a rank(F) x rank(E) polynomial matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub parity: Parity,
    pub entries: Vec<Vec<Poly>>,
}

impl HomElement {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }
}

/// The Z/2-graded hom complex between two factorizations of the same W.
#[derive(Clone, Debug)]
pub struct HomComplex {
    source: MfObject,
    target: MfObject,
}

impl HomComplex {
    pub fn new(source: &MfObject, target: &MfObject) -> Result<Self, CdgError> {
        if source.potential() != target.potential() {
            return Err(CdgError::PotentialMismatch {
                left: source.potential().to_string(),
                right: target.potential().to_string(),
            });
        }
        Ok(HomComplex { source: source.clone(), target: target.clone() })
    }

    pub fn source(&self) -> &MfObject {
        &self.source
    }

    pub fn target(&self) -> &MfObject {
        &self.target
    }

    fn slot_parity(&self, r: usize, c: usize) -> Parity {
        Parity::from_bit(self.target.parity_of(r).bit() + self.source.parity_of(c).bit())
    }

    /// Identity of E when source and target coincide.
    pub fn identity(&self) -> Option<HomElement> {
        if self.source != self.target {
            return None;
        }
        let vars = self.source.vars();
        let n = self.source.rank();
        let entries = (0..n)
            .map(|r| (0..n).map(|c| if r == c { Poly::one(vars) } else { Poly::zero(vars) }).collect())
            .collect();
        Some(HomElement { parity: Parity::Even, entries })
    }

    /// delta_F f - (-1)^{|f|} f delta_E.
    pub fn differential(&self, f: &HomElement) -> HomElement {
        let vars = self.source.vars();
        let left = mat_mul(vars, &self.target.delta_matrix(), &f.entries, self.target.rank());
        let right = mat_mul(vars, &f.entries, &self.source.delta_matrix(), self.source.rank());
        let s = if f.parity == Parity::Odd { qi(1) } else { qi(-1) };
        let entries = left
            .iter()
            .zip(&right)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + &y.scale(&s)).collect())
            .collect();
        HomElement { parity: f.parity.flip(), entries }
    }

    /// Elementary matrices times monomials of total degree at most `max_degree`,
    /// of the requested parity.
    pub fn spanning_set(&self, max_degree: u32, parity: Parity) -> Vec<HomElement> {
        let vars = self.source.vars();
        let monos = monomials_up_to(vars.len(), max_degree);
        let (nr, nc) = (self.target.rank(), self.source.rank());
        let mut out = Vec::new();
        for r in 0..nr {
            for c in 0..nc {
                if self.slot_parity(r, c) != parity {
                    continue;
                }
                for m in &monos {
                    let mut entries = vec![vec![Poly::zero(vars); nc]; nr];
                    entries[r][c] = Poly::monomial(vars, m.clone(), qi(1));
                    out.push(HomElement { parity, entries });
                }
            }
        }
        out
    }

    /// Rank of the differential restricted to the degree-at-most-D part of
    /// each parity, for D = 0..=max_degree. Entry D is (even rank, odd rank).
    pub fn rank_profile(&self, max_degree: u32) -> Vec<(usize, usize)> {
        (0..=max_degree)
            .map(|d| {
                let rk = |p| {
                    let cols: Vec<HomElement> =
                        self.spanning_set(d, p).iter().map(|f| self.differential(f)).collect();
                    coordinate_rank(&cols)
                };
                (rk(Parity::Even), rk(Parity::Odd))
            })
            .collect()
    }
}

/// All exponent vectors in `n` variables of total degree at most `d`.
pub(crate) fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=d {
            cur.push(e);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn coordinate_rank(cols: &[HomElement]) -> usize {
    let mut index: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    for f in cols {
        for (r, row) in f.entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                for m in p.terms().keys() {
                    let k = index.len();
                    index.entry((r, c, m.clone())).or_insert(k);
                }
            }
        }
    }
    if index.is_empty() {
        return 0;
    }
    let mut mat: ExactMatrix<Q> = ExactMatrix::zeros(index.len(), cols.len());
    for (j, f) in cols.iter().enumerate() {
        for (r, row) in f.entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                for (m, v) in p.terms() {
                    mat.set(index[&(r, c, m.clone())], j, v.clone());
                }
            }
        }
    }
    mat.rank()
}
