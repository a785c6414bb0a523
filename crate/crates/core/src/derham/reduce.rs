use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::forms::FormVector;
use super::invariants::{jacobian_ideal, quasi_homogeneous_weights};
use super::DerhamError;
use crate::exactfield::{frac_mod1, monomial_string, qi, ExactMatrix, IdealBasis, Monomial, Poly, RatFuncU, Q};
use crate::mixedcore::Element;

/// Reduction of top forms modulo the image of −dW∧ + u·d.
///
/// On (m−1)-forms a_i dx_1..^i..dx_m the relation reads a_i ∂_iW vol ≡ u ∂_i a_i vol,
/// so lifting g = NF(g) + Σ a_i ∂_iW trades the ideal part for u times a
/// polynomial of lower weight.
#[derive(Clone, Debug)]
pub struct UReducer {
    vars: Vec<String>,
    ideal: IdealBasis,
    basis: Vec<Monomial>,
    max_steps: usize,
}

impl UReducer {
    pub fn new(w: &Poly) -> Result<Self, DerhamError> {
        let ideal = jacobian_ideal(w);
        let basis = ideal.standard_monomials().ok_or(DerhamError::NonIsolated)?;
        let deg = w.total_degree().unwrap_or(0) as usize;
        Ok(UReducer { vars: w.vars().to_vec(), ideal, basis, max_steps: 64 + 8 * deg })
    }

    /// Milnor-algebra monomials; x^k times the top form spans the cohomology.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_forms(&self) -> Vec<FormVector> {
        self.basis
            .iter()
            .map(|k| FormVector::top(&Poly::monomial(&self.vars, k.clone(), qi(1))))
            .collect()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        let top: Vec<String> = self.vars.iter().map(|v| format!("d{v}")).collect();
        let top = top.join("^");
        self.basis
            .iter()
            .map(|k| {
                let mono = monomial_string(&self.vars, k);
                if mono == "1" {
                    top.clone()
                } else {
                    format!("{mono}*{top}")
                }
            })
            .collect()
    }

    /// p·vol ≡ Σ_j u^j r_j·vol with each r_j in normal form.
    fn reduce_poly(&self, p: &Poly) -> Result<Vec<Poly>, DerhamError> {
        let mut out = Vec::new();
        let mut rest = p.clone();
        while !rest.is_zero() {
            if out.len() >= self.max_steps {
                return Err(DerhamError::NonStabilized { bound: self.max_steps as u32 });
            }
            let (r, a) = self.ideal.lift(&rest);
            out.push(r);
            let mut next = Poly::zero(&self.vars);
            for (i, ai) in a.iter().enumerate() {
                next = &next + &ai.partial_derivative(i).expect("same variables");
            }
            rest = next;
        }
        Ok(out)
    }

    /// Coordinates of a top form in the basis, over Q(u).
    pub fn coordinates(&self, x: &FormVector) -> Result<Vec<RatFuncU>, DerhamError> {
        let m = self.vars.len();
        let mut coords = vec![RatFuncU::zero(); self.basis.len()];
        for ((k, idx), c) in x.terms() {
            if idx.len() != m {
                return Err(DerhamError::NotTopForm { degree: idx.len() });
            }
            let parts = self.reduce_poly(&Poly::monomial(&self.vars, k.clone(), qi(1)))?;
            for (j, r) in parts.iter().enumerate() {
                let uj = c * &RatFuncU::u_pow(j as i32, qi(1));
                for (mono, rc) in r.terms() {
                    let pos = self.basis.iter().position(|b| b == mono).expect("normal forms use standard monomials");
                    coords[pos] = &coords[pos] + &uj.scale(rc);
                }
            }
        }
        Ok(coords)
    }

    /// Normal form of a top form in span_Q(u){x^k vol}.
    pub fn reduce(&self, x: &FormVector) -> Result<FormVector, DerhamError> {
        let coords = self.coordinates(x)?;
        let mut out = FormVector::zero(&self.vars);
        for (b, c) in self.basis_forms().iter().zip(coords) {
            out = out.add(&b.scale(&c));
        }
        Ok(out)
    }
}

/// Reduce a top form modulo the image of −dW∧ + u·d.
pub fn u_reduce(x: &FormVector, w: &Poly) -> Result<FormVector, DerhamError> {
    UReducer::new(w)?.reduce(x)
}

/// The de Rham connection on the reduced basis with its residue and
/// monodromy data.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionReport {
    pub basis: Vec<String>,
    pub matrix: ExactMatrix<RatFuncU>,
    pub residue: ExactMatrix<Q>,
    pub residue_eigenvalues: Vec<Q>,
    pub monodromy_rotations: Vec<Q>,
    pub sign_twisted: bool,
    pub weights: Option<Vec<Q>>,
}

impl ConnectionReport {
    pub fn to_json(&self) -> Value {
        let mat = |rows: usize, cols: usize, f: &dyn Fn(usize, usize) -> String| -> Value {
            (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>().into()
        };
        let n = self.basis.len();
        json!({
            "basis": self.basis,
            "matrix": mat(n, n, &|i, j| self.matrix.get(i, j).to_string()),
            "residue": mat(n, n, &|i, j| self.residue.get(i, j).to_string()),
            "residue_eigenvalues": self.residue_eigenvalues.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "monodromy_rotations": self.monodromy_rotations.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "sign_twisted": self.sign_twisted,
            "weights": self.weights.as_ref().map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        })
    }
}

fn is_triangular(r: &ExactMatrix<Q>) -> bool {
    let n = r.nrows();
    let upper = (0..n).all(|i| (0..i).all(|j| r.get(i, j).is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| r.get(i, j).is_zero()));
    upper || lower
}

/// Coefficients c_0..c_n (monic, c_n = 1) of det(t − R) by Faddeev–LeVerrier.
fn char_poly(r: &ExactMatrix<Q>) -> Vec<Q> {
    let n = r.nrows();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = qi(1);
    let mut m = ExactMatrix::<Q>::zeros(n, n);
    for k in 1..=n {
        // M_k = R M_{k-1} + c_{n-k+1} I
        let mut next = r.mul(&m).expect("square");
        for i in 0..n {
            let v = next.get(i, i).clone() + c[n - k + 1].clone();
            next.set(i, i, v);
        }
        let rm = r.mul(&next).expect("square");
        let tr = (0..n).fold(Q::zero(), |a, i| a + rm.get(i, i).clone());
        c[n - k] = -tr / qi(k as i64);
        m = next;
    }
    c
}

fn eval(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
}

fn deflate(c: &[Q], x: &Q) -> Vec<Q> {
    // synthetic division by (t − x)
    let n = c.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for k in (1..=n).rev() {
        carry = &c[k] + &carry * x;
        out[k - 1] = carry.clone();
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            v.push(d);
            v.push(n / d);
        }
        d += 1;
    }
    v
}

/// All roots of a monic rational polynomial if they are rational.
fn rational_roots(c: &[Q]) -> Option<Vec<Q>> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let mut c = c.to_vec();
    let mut roots = Vec::new();
    while c.len() > 1 {
        if c[0].is_zero() {
            roots.push(Q::zero());
            c = deflate(&c, &Q::zero());
            continue;
        }
        let l = c.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<num_bigint::BigInt> = c.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
        let a0 = ints[0].abs().to_u64()?;
        let an = ints[ints.len() - 1].abs().to_u64()?;
        if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
            return None;
        }
        let mut found = None;
        'search: for p in divisors(a0) {
            for qd in divisors(an) {
                for s in [1i64, -1] {
                    let x = Q::new((s * p as i64).into(), (qd as i64).into());
                    if eval(&c, &x).is_zero() {
                        found = Some(x);
                        break 'search;
                    }
                }
            }
        }
        let x = found?;
        c = deflate(&c, &x);
        roots.push(x);
    }
    roots.sort();
    Some(roots)
}

/// Express ∇^DR on the reduced basis of top forms and read off the residue
/// and monodromy. Rotations r give T-eigenvalues e^{2πi r}; without the sign
/// twist the form-degree shift p/2 is folded in.
pub fn connection_data(w: &Poly, sign_twisted: bool) -> Result<ConnectionReport, DerhamError> {
    let red = UReducer::new(w)?;
    let m = w.nvars();
    let n = red.basis().len();
    let gamma = RatFuncU::u_pow(-1, Q::new((-(m as i64)).into(), 2.into()));
    let inv_u2 = RatFuncU::u_pow(-2, qi(1));
    let mut a = ExactMatrix::<RatFuncU>::zeros(n, n);
    let mut residue = ExactMatrix::<Q>::zeros(n, n);
    for (j, e) in red.basis_forms().iter().enumerate() {
        let coords = red.coordinates(&e.mul_poly(w))?;
        for (i, c) in coords.into_iter().enumerate() {
            let mut entry = &c * &inv_u2;
            if i == j {
                entry = &entry + &gamma;
            }
            let res = (&entry * &RatFuncU::u()).as_q();
            match res {
                Some(r) => residue.set(i, j, r),
                None => {
                    return Err(DerhamError::HigherPole {
                        entry: format!("({i},{j}) = {entry}"),
                    })
                }
            }
            a.set(i, j, entry);
        }
    }
    let labels = red.basis_labels();
    let a = a.with_labels(labels.clone(), labels.clone());
    let residue = residue.with_labels(labels.clone(), labels.clone());
    let eigen = if is_triangular(&residue) {
        (0..n).map(|i| residue.get(i, i).clone()).collect()
    } else {
        rational_roots(&char_poly(&residue)).ok_or(DerhamError::IrrationalSpectrum)?
    };
    let shift = if sign_twisted { Q::zero() } else { Q::new((m as i64).into(), 2.into()) };
    let rotations = eigen.iter().map(|l| frac_mod1(&-(l + &shift))).collect();
    Ok(ConnectionReport {
        basis: labels,
        matrix: a,
        residue,
        residue_eigenvalues: eigen,
        monodromy_rotations: rotations,
        sign_twisted,
        weights: quasi_homogeneous_weights(w),
    })
}
