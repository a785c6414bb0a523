use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{RatFuncU, Q};

/// Scalars we do exact elimination over: Q and Q(u).
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl Field for Q {}
impl Field for RatFuncU {}

/// Dense matrix over one exact field, with basis tags for rows and columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

/// Row echelon form plus the pivot column of each nonzero row.
struct Echelon<F> {
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
            row_labels: (0..rows).map(|i| format!("r{i}")).collect(),
            col_labels: (0..cols).map(|j| format!("c{j}")).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// From row vectors; panics if they are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let mut m = Self::zeros(r, c);
        m.data = rows.into_iter().flatten().collect();
        m
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        assert_eq!(rows.len(), self.rows);
        assert_eq!(cols.len(), self.cols);
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul(&self, o: &Self) -> Option<Self> {
        if self.cols != o.rows {
            return None;
        }
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = r.get(i, j).clone() + a.clone() * o.get(k, j).clone();
                    r.set(i, j, v);
                }
            }
        }
        r.row_labels = self.row_labels.clone();
        r.col_labels = o.col_labels.clone();
        Some(r)
    }

    /// Fraction-free (Bareiss) forward elimination. Over a field the
    /// divisions by the previous pivot are exact, and every row operation is
    /// invertible, so the result is row-equivalent to the input.
    fn echelon(&self) -> Echelon<F> {
        let mut a: Vec<Vec<F>> = (0..self.rows).map(|i| self.row(i)).collect();
        let mut prev = F::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let piv = a[r][c].clone();
            for i in r + 1..a.len() {
                let f = a[i][c].clone();
                for j in c + 1..self.cols {
                    if f.is_zero() && a[i][j].is_zero() {
                        continue;
                    }
                    let v = piv.clone() * a[i][j].clone() - f.clone() * a[r][j].clone();
                    a[i][j] = v / prev.clone();
                }
                a[i][c] = F::zero();
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon { rows: a, pivots }
    }

    /// Reduced row echelon form rows (pivots equal to one).
    fn rref(&self) -> Echelon<F> {
        let mut e = self.echelon();
        for k in (0..e.rows.len()).rev() {
            let c = e.pivots[k];
            let inv = F::one() / e.rows[k][c].clone();
            for x in e.rows[k].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                }
            }
            for i in 0..k {
                let f = e.rows[i][c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    if !e.rows[k][j].is_zero() {
                        e.rows[i][j] = e.rows[i][j].clone() - f.clone() * e.rows[k][j].clone();
                    }
                }
            }
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space {v : M v = 0}, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (k, &pc) in e.pivots.iter().enumerate() {
                    v[pc] = -e.rows[k][fc].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space: the pivot columns of the matrix itself.
    pub fn image_basis(&self) -> Vec<Vec<F>> {
        self.echelon().pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Row labels whose unit vectors, inside the coordinate subspace spanned
    /// by `target`, complement (column space ∩ that subspace).
    ///
    /// These label a basis of span(target) / (image ∩ span(target)).
    pub fn quotient_basis(&self, target: &[usize]) -> Vec<String> {
        let outside: Vec<usize> = (0..self.rows).filter(|i| !target.contains(i)).collect();
        // column combinations whose image avoids the outside coordinates
        let combos: Vec<Vec<F>> = if outside.is_empty() {
            (0..self.cols)
                .map(|j| (0..self.cols).map(|k| if k == j { F::one() } else { F::zero() }).collect())
                .collect()
        } else {
            ExactMatrix::from_rows(outside.iter().map(|&i| self.row(i)).collect()).kernel_basis()
        };
        // vectors of image ∩ span(target), in target coordinates
        let mut inter: Vec<Vec<F>> = combos
            .iter()
            .map(|c| {
                target
                    .iter()
                    .map(|&t| {
                        (0..self.cols).fold(F::zero(), |acc, j| acc + self.get(t, j).clone() * c[j].clone())
                    })
                    .collect()
            })
            .collect();
        // greedily extend by unit vectors in target order
        let mut chosen = Vec::new();
        let base_rank = rank_of(&inter, target.len());
        let mut current = base_rank;
        for (k, &t) in target.iter().enumerate() {
            let mut e = vec![F::zero(); target.len()];
            e[k] = F::one();
            inter.push(e);
            let r = rank_of(&inter, target.len());
            if r > current {
                current = r;
                chosen.push(self.row_labels[t].clone());
            } else {
                inter.pop();
            }
        }
        chosen
    }
}

fn rank_of<F: Field>(vecs: &[Vec<F>], len: usize) -> usize {
    if vecs.is_empty() || len == 0 {
        return 0;
    }
    ExactMatrix::from_rows(vecs.to_vec()).rank()
}

impl<F: Field> fmt::Display for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
