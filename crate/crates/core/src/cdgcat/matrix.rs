use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{normalize, random_coeff, random_monomial, CdgCategory, CdgError, Lin, MfObject};
use crate::exactfield::{monomial_string, qi, Monomial, Poly};
use crate::mixedcore::Parity;

/// A free Z/2-graded module of finite rank with an odd endomorphism delta.
/// `delta[r][c]` is the entry taking basis vector c to basis vector r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixObject {
    pub name: String,
    pub parities: Vec<Parity>,
    pub delta: Vec<Vec<Poly>>,
}

impl MatrixObject {
    pub fn rank(&self) -> usize {
        self.parities.len()
    }

    /// The free rank-1 even module with zero delta.
    pub fn free_rank_one(name: &str, vars: &[String]) -> Self {
        MatrixObject { name: name.into(), parities: vec![Parity::Even], delta: vec![vec![Poly::zero(vars)]] }
    }

    pub fn from_mf(name: &str, e: &MfObject) -> Self {
        let mut parities = vec![Parity::Even; e.rank0()];
        parities.extend(vec![Parity::Odd; e.rank1()]);
        MatrixObject { name: name.into(), parities, delta: e.delta_matrix() }
    }
}

/// Basis morphism: the elementary matrix with `mono` in entry (row, col),
/// viewed as a map from object `src` to object `tgt`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemMor {
    pub tgt: usize,
    pub row: usize,
    pub src: usize,
    pub col: usize,
    pub mono: Monomial,
}

/// The CDG category of QDG modules over (A, w) with finitely many chosen free
/// objects. Curvature of X is delta_X^2 - w*id. When every object squares to
/// w*id this is a matrix factorization category and all curvatures vanish.
#[derive(Clone, Debug)]
pub struct MatrixCategory {
    vars: Vec<String>,
    w: Poly,
    objects: Vec<MatrixObject>,
}

impl MatrixCategory {
    pub fn new(w: &Poly, objects: Vec<MatrixObject>) -> Result<Self, CdgError> {
        for o in &objects {
            let n = o.rank();
            if o.delta.len() != n || o.delta.iter().any(|r| r.len() != n) {
                return Err(CdgError::Shape(format!("object {} has rank {n} but delta is not {n}x{n}", o.name)));
            }
            for r in 0..n {
                for c in 0..n {
                    if !o.delta[r][c].is_zero() && o.parities[r] == o.parities[c] {
                        return Err(CdgError::NotOdd { row: r, col: c });
                    }
                    if o.delta[r][c].vars() != w.vars() {
                        return Err(CdgError::Format(format!("entry ({r}, {c}) of {} uses other variables", o.name)));
                    }
                }
            }
        }
        Ok(MatrixCategory { vars: w.vars().to_vec(), w: w.clone(), objects })
    }

    /// MF^{nv}(A, W) restricted to the given factorizations.
    pub fn from_mf(objects: &[MfObject]) -> Result<Self, CdgError> {
        let first = objects.first().ok_or_else(|| CdgError::Format("no objects".into()))?;
        for e in objects {
            if e.potential() != first.potential() {
                return Err(CdgError::PotentialMismatch {
                    left: first.potential().to_string(),
                    right: e.potential().to_string(),
                });
            }
        }
        let objs = objects.iter().enumerate().map(|(i, e)| MatrixObject::from_mf(&format!("E{i}"), e)).collect();
        Self::new(first.potential(), objs)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn background(&self) -> &Poly {
        &self.w
    }

    pub fn object(&self, i: usize) -> &MatrixObject {
        &self.objects[i]
    }

    /// A polynomial matrix from `x` to `y` as a combination of basis morphisms.
    pub fn lin_of_matrix(&self, x: usize, y: usize, m: &[Vec<Poly>]) -> Lin<ElemMor> {
        let mut out = Vec::new();
        for (r, row) in m.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                for (mono, k) in p.terms() {
                    out.push((ElemMor { tgt: y, row: r, src: x, col: c, mono: mono.clone() }, k.clone()));
                }
            }
        }
        normalize(out)
    }

    /// Inverse of `lin_of_matrix` for a combination inside Hom(x, y).
    pub fn matrix_of_lin(&self, x: usize, y: usize, l: &Lin<ElemMor>) -> Vec<Vec<Poly>> {
        let mut m = vec![vec![Poly::zero(&self.vars); self.objects[x].rank()]; self.objects[y].rank()];
        for (f, c) in l {
            assert!(f.src == x && f.tgt == y, "morphism outside Hom(x, y)");
            m[f.row][f.col].add_term(f.mono.clone(), c.clone());
        }
        m
    }

    fn entry_parity(&self, x: usize, y: usize, r: usize, c: usize) -> Parity {
        Parity::from_bit(self.objects[y].parities[r].bit() + self.objects[x].parities[c].bit())
    }
}

fn add_mono(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl CdgCategory for MatrixCategory {
    type Obj = usize;
    type Mor = ElemMor;

    fn objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }

    fn source(&self, f: &ElemMor) -> usize {
        f.src
    }

    fn target(&self, f: &ElemMor) -> usize {
        f.tgt
    }

    fn parity(&self, f: &ElemMor) -> Parity {
        self.entry_parity(f.src, f.tgt, f.row, f.col)
    }

    fn compose(&self, g: &ElemMor, f: &ElemMor) -> Lin<ElemMor> {
        if g.col != f.row {
            return Vec::new();
        }
        vec![(ElemMor { tgt: g.tgt, row: g.row, src: f.src, col: f.col, mono: add_mono(&g.mono, &f.mono) }, qi(1))]
    }

    fn differential(&self, f: &ElemMor) -> Lin<ElemMor> {
        let dy = &self.objects[f.tgt].delta;
        let dx = &self.objects[f.src].delta;
        let sign = if self.parity(f) == Parity::Odd { qi(1) } else { qi(-1) };
        let mut out = Vec::new();
        for (r, row) in dy.iter().enumerate() {
            for (m, c) in row[f.row].terms() {
                out.push((ElemMor { row: r, mono: add_mono(m, &f.mono), ..f.clone() }, c.clone()));
            }
        }
        for (c, p) in dx[f.col].iter().enumerate() {
            for (m, k) in p.terms() {
                out.push((ElemMor { col: c, mono: add_mono(m, &f.mono), ..f.clone() }, k * &sign));
            }
        }
        normalize(out)
    }

    fn curvature(&self, x: &usize) -> Lin<ElemMor> {
        let o = &self.objects[*x];
        let n = o.rank();
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let mut p = Poly::zero(&self.vars);
                for k in 0..n {
                    p = &p + &(&o.delta[r][k] * &o.delta[k][c]);
                }
                if r == c {
                    p = &p - &self.w;
                }
                for (m, k) in p.terms() {
                    out.push((ElemMor { tgt: *x, row: r, src: *x, col: c, mono: m.clone() }, k.clone()));
                }
            }
        }
        normalize(out)
    }

    fn sample_hom(&self, rng: &mut ChaCha8Rng, x: &usize, y: &usize, max_degree: u32) -> Lin<ElemMor> {
        let (nx, ny) = (self.objects[*x].rank(), self.objects[*y].rank());
        let want = Parity::from_bit(rng.random_range(0..2));
        let mut slots: Vec<(usize, usize)> = Vec::new();
        for p in [want, want.flip()] {
            slots = (0..ny)
                .flat_map(|r| (0..nx).map(move |c| (r, c)))
                .filter(|&(r, c)| self.entry_parity(*x, *y, r, c) == p)
                .collect();
            if !slots.is_empty() {
                break;
            }
        }
        if slots.is_empty() {
            return Vec::new();
        }
        let k = rng.random_range(1..=2);
        let mut out = Vec::new();
        for _ in 0..k {
            let (r, c) = slots[rng.random_range(0..slots.len())];
            let mono = random_monomial(rng, self.vars.len(), max_degree);
            out.push((ElemMor { tgt: *y, row: r, src: *x, col: c, mono }, random_coeff(rng)));
        }
        let out = normalize(out);
        if out.is_empty() {
            let (r, c) = slots[0];
            vec![(ElemMor { tgt: *y, row: r, src: *x, col: c, mono: vec![0; self.vars.len()] }, qi(1))]
        } else {
            out
        }
    }

    fn render_morphism(&self, f: &ElemMor) -> String {
        format!(
            "{}[{},{}]{}*{}",
            self.objects[f.tgt].name,
            f.row,
            f.col,
            self.objects[f.src].name,
            monomial_string(&self.vars, &f.mono)
        )
    }

    fn render_object(&self, x: &usize) -> String {
        self.objects[*x].name.clone()
    }
}
