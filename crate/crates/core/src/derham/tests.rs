use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::exactfield::{q, qi, ExactMatrix, Monomial, Poly, QuotientDim, RatFuncU, Q};
use crate::mixedcore::{verify_mixed, verify_u_connection, Element, Reports};

fn vars(s: &str) -> Vec<String> {
    s.split(',').map(String::from).collect()
}

fn poly(s: &str, v: &str) -> Poly {
    Poly::parse(s, &vars(v)).unwrap()
}

fn form(p: &str, v: &str, idx: &[usize]) -> FormVector {
    FormVector::from_poly(&poly(p, v), idx)
}

fn qs(xs: &[(i64, i64)]) -> Vec<Q> {
    xs.iter().map(|&(n, d)| q(n, d)).collect()
}

/// dim Q[x]/J by brute-force linear algebra in degrees ≤ d: the span of all
/// monomials modulo {x^a ∂_iW} that stay inside the degree bound. Exact for
/// homogeneous W once d passes the socle degree.
fn milnor_by_linear_algebra(w: &Poly, d: u32) -> usize {
    let m = w.nvars();
    let mut monos: Vec<Monomial> = Vec::new();
    let mut stack = vec![vec![0u32; m]];
    while let Some(k) = stack.pop() {
        if monos.contains(&k) {
            continue;
        }
        for i in 0..m {
            let mut k2 = k.clone();
            k2[i] += 1;
            if k2.iter().sum::<u32>() <= d {
                stack.push(k2);
            }
        }
        monos.push(k);
    }
    let mut cols = Vec::new();
    for g in w.gradient() {
        let gd = g.total_degree().unwrap_or(0);
        for a in &monos {
            if a.iter().sum::<u32>() + gd <= d {
                cols.push(g.mul_monomial(a, &qi(1)));
            }
        }
    }
    let mut mat = ExactMatrix::<Q>::zeros(monos.len(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (mono, v) in c.terms() {
            let i = monos.iter().position(|x| x == mono).unwrap();
            mat.set(i, j, v.clone());
        }
    }
    monos.len() - mat.rank()
}

// ---- worked examples --------------------------------------------------------

#[test]
fn exterior_derivative_examples() {
    assert_eq!(form("x", "x,y", &[1]).d(), form("1", "x,y", &[0, 1]));
    let got = derham_apply(DerhamOp::MinusDwWedge, &form("1", "x", &[]), &poly("x^3", "x"));
    assert_eq!(got, form("-3*x^2", "x", &[0]));
    // dy∧dx is stored as −dx∧dy
    assert_eq!(form("1", "x,y", &[1, 0]), form("-1", "x,y", &[0, 1]));
    assert!(form("1", "x,y", &[0, 0]).is_zero());
}

#[test]
fn nabla_before_reduction() {
    let got = derham_apply(DerhamOp::NablaDr, &form("x", "x", &[0]), &poly("x^3", "x"));
    let expect = form("x", "x", &[0])
        .scale(&RatFuncU::u_pow(-1, q(-1, 2)))
        .add(&form("x^4", "x", &[0]).scale(&RatFuncU::u_pow(-2, qi(1))));
    assert_eq!(got, expect);
}

#[test]
fn b_plus_ub_is_twisted_plus_u_d() {
    let w = poly("x^2*y + y^3", "x,y");
    let f = form("x*y^2", "x,y", &[1]).scale(&RatFuncU::parse("1/(1+u)").unwrap());
    let got = derham_apply(DerhamOp::BPlusUB, &f, &w);
    let expect = derham_apply(DerhamOp::MinusDwWedge, &f, &w).add(&f.d().scale(&RatFuncU::u()));
    assert_eq!(got, expect);
}

#[test]
fn milnor_numbers() {
    assert_eq!(milnor_number(&poly("x^2", "x")), QuotientDim::Finite(1));
    assert_eq!(milnor_number(&poly("x^3 + y^3", "x,y")), QuotientDim::Finite(4));
    assert_eq!(milnor_number(&poly("x^2*y", "x,y")), QuotientDim::Infinite);
    for n in 1..=6u32 {
        let w = Poly::monomial(&vars("x"), vec![n + 1], qi(1));
        assert_eq!(milnor_number(&w), QuotientDim::Finite(n as usize));
    }
}

#[test]
fn milnor_matches_linear_algebra_oracle() {
    for (w, v) in [("x^3 + y^3", "x,y"), ("x^2*y + y^3", "x,y"), ("x^3 + y^3 + z^3", "x,y,z"), ("x^5", "x")] {
        let w = poly(w, v);
        let QuotientDim::Finite(mu) = milnor_number(&w) else { panic!("isolated") };
        assert_eq!(mu, milnor_by_linear_algebra(&w, 12), "{w}");
    }
}

/// For quasi-homogeneous isolated W, μ = Π (1/w_i − 1).
#[test]
fn milnor_matches_the_weight_formula() {
    for (w, v) in [("x^2*y + y^4", "x,y"), ("x^3 + y^4 + z^2", "x,y,z"), ("x^3 + x*y^5", "x,y"), ("x^7", "x")] {
        let w = poly(w, v);
        let QuotientDim::Finite(mu) = milnor_number(&w) else { panic!("isolated") };
        let wt = quasi_homogeneous_weights(&w).unwrap();
        let formula = wt.iter().fold(qi(1), |acc, x| acc * (qi(1) / x - qi(1)));
        assert_eq!(qi(mu as i64), formula, "{w}");
    }
}

#[test]
fn weights_of_quasi_homogeneous_potentials() {
    assert_eq!(quasi_homogeneous_weights(&poly("x^3", "x")), Some(qs(&[(1, 3)])));
    assert_eq!(quasi_homogeneous_weights(&poly("x^2*y + y^4", "x,y")), Some(qs(&[(3, 8), (1, 4)])));
    // underdetermined: any positive solution with x y of weight 1
    let w = quasi_homogeneous_weights(&poly("x*y", "x,y")).unwrap();
    assert_eq!(&w[0] + &w[1], qi(1));
    assert!(w.iter().all(|x| x > &Q::zero()));
    assert_eq!(quasi_homogeneous_weights(&poly("x^2 + x^3", "x")), None);
    assert_eq!(quasi_homogeneous_weights(&poly("0", "x")), None);
}

#[test]
fn hh_and_koszul_dimensions() {
    assert_eq!(hh_dims(&poly("x^3", "x"), 8).unwrap(), ParityDims { even: 0, odd: 2 });
    assert_eq!(hh_dims(&poly("x^2 + y^2", "x,y"), 8).unwrap(), ParityDims { even: 1, odd: 0 });
    assert_eq!(koszul_dims(&poly("x^3", "x"), 8).unwrap(), ParityDims { even: 2, odd: 0 });
    assert_eq!(koszul_dims(&poly("x^2 + y^2", "x,y"), 8).unwrap(), ParityDims { even: 1, odd: 0 });
    assert_eq!(koszul_dims(&poly("x^3 + y^3", "x,y"), 8).unwrap().total(), 4);
}

#[test]
fn degenerate_inputs_do_not_stabilize() {
    assert!(matches!(hh_dims(&poly("0", "x"), 6), Err(DerhamError::NonStabilized { .. })));
    assert!(matches!(hh_dims(&poly("x^2*y", "x,y"), 6), Err(DerhamError::NonStabilized { .. })));
    assert!(matches!(koszul_dims(&poly("x^2*y", "x,y"), 6), Err(DerhamError::NonStabilized { .. })));
}

#[test]
fn truncated_path_agrees_on_a_non_quasi_homogeneous_potential() {
    // Morse at 0 plus a second critical point: still isolated, μ = 2
    let w = poly("x^2 + x^3", "x");
    assert_eq!(milnor_number(&w), QuotientDim::Finite(2));
    assert_eq!(hh_dims(&w, 8).unwrap(), ParityDims { even: 0, odd: 2 });
    assert_eq!(koszul_dims(&w, 8).unwrap(), ParityDims { even: 2, odd: 0 });
}

#[test]
fn u_reduce_examples() {
    let x3 = poly("x^3", "x");
    let top = |p: &str| form(p, "x", &[0]);
    let u = RatFuncU::u();
    assert_eq!(u_reduce(&top("x^4"), &x3).unwrap(), top("x").scale(&u.scale(&q(2, 3))));
    assert_eq!(u_reduce(&top("x^3"), &x3).unwrap(), top("1").scale(&u.scale(&q(1, 3))));
    assert_eq!(u_reduce(&top("x^2"), &poly("x^2", "x")).unwrap(), top("1").scale(&u.scale(&q(1, 2))));
    let flat = form("x", "x,y", &[0, 1]);
    assert!(matches!(u_reduce(&flat, &poly("x^2*y", "x,y")), Err(DerhamError::NonIsolated)));
    let low = form("x", "x,y", &[0]);
    assert!(matches!(u_reduce(&low, &poly("x^3 + y^3", "x,y")), Err(DerhamError::NotTopForm { degree: 1 })));
}

/// ω − u_reduce(ω) is (−dW∧ + u d)η for an explicit η in one variable:
/// solve −W'·η + u·η' = ω − r degree by degree from the top.
#[test]
fn u_reduce_differs_by_an_exact_term() {
    let w = poly("x^4", "x");
    let red = UReducer::new(&w).unwrap();
    for k in 0..10u32 {
        let om = FormVector::top(&Poly::monomial(&vars("x"), vec![k], qi(1)));
        let diff = om.sub(&red.reduce(&om).unwrap());
        // peel off the highest power of x with η ∝ x^{e-3}
        let mut rest = diff.clone();
        let mut eta = FormVector::zero(&vars("x"));
        let dr = DeRham::new(&w);
        for _ in 0..20 {
            let Some(((mono, _), c)) = rest.terms().iter().next_back().map(|(a, b)| (a.clone(), b.clone())) else {
                break;
            };
            assert!(mono[0] >= 3, "remainder {rest} below the ideal");
            let step = FormVector::basis(&vars("x"), vec![mono[0] - 3], &[], c.scale(&q(-1, 4)));
            eta = eta.add(&step);
            rest = diff.sub(&dr.apply(DerhamOp::BPlusUB, &eta));
        }
        assert!(rest.is_zero(), "k = {k}: leftover {rest}");
    }
}

#[test]
fn basis_size_is_the_milnor_number() {
    for (w, v) in [("x^3", "x"), ("x^3 + y^3", "x,y"), ("x^2*y + y^4", "x,y"), ("x^2 + y^2 + z^2", "x,y,z")] {
        let w = poly(w, v);
        let QuotientDim::Finite(mu) = milnor_number(&w) else { panic!() };
        assert_eq!(UReducer::new(&w).unwrap().basis().len(), mu);
        assert_eq!(hh_dims(&w, 8).unwrap().total(), mu);
        assert_eq!(koszul_dims(&w, 8).unwrap().total(), mu);
        let hh = hh_dims(&w, 8).unwrap();
        let concentrated = if w.nvars() % 2 == 0 { hh.odd } else { hh.even };
        assert_eq!(concentrated, 0);
    }
}

#[test]
fn cubic_connection_data() {
    let r = connection_data(&poly("x^3", "x"), false).unwrap();
    assert_eq!(r.basis, vec!["dx".to_string(), "x*dx".to_string()]);
    assert_eq!(r.residue_eigenvalues, qs(&[(-1, 6), (1, 6)]));
    for i in 0..2 {
        for j in 0..2 {
            let expect = RatFuncU::u_pow(-1, r.residue.get(i, j).clone());
            assert_eq!(r.matrix.get(i, j), &expect);
        }
    }
    assert_eq!(r.monodromy_rotations, qs(&[(2, 3), (1, 3)]));
    let t = connection_data(&poly("x^3", "x"), true).unwrap();
    assert_eq!(t.monodromy_rotations, qs(&[(1, 6), (5, 6)]));
}

/// Residue spectrum of x^{n+1}: ((k+1)/(n+1) − 1/2), from the Euler relation.
#[test]
fn a_n_residues_and_monodromy() {
    for n in 1..=5i64 {
        let w = Poly::monomial(&vars("x"), vec![n as u32 + 1], qi(1));
        let r = connection_data(&w, false).unwrap();
        let expect: Vec<Q> = (0..n).map(|k| q(k + 1, n + 1) - q(1, 2)).collect();
        assert_eq!(r.residue_eigenvalues, expect);
        let mut rot = r.monodromy_rotations.clone();
        rot.sort();
        assert_eq!(rot, (1..=n).map(|j| q(j, n + 1)).collect::<Vec<_>>());
        let t = connection_data(&w, true).unwrap();
        let mut shifted: Vec<Q> = rot.iter().map(|x| crate::exactfield::frac_mod1(&(x + q(1, 2)))).collect();
        shifted.sort();
        let mut tw = t.monodromy_rotations.clone();
        tw.sort();
        assert_eq!(tw, shifted);
    }
}

#[test]
fn thom_sebastiani_on_the_spectrum() {
    // spectra add under W1(x) + W2(y)
    let r = connection_data(&poly("x^3 + y^3", "x,y"), true).unwrap();
    let mut ev = r.residue_eigenvalues.clone();
    ev.sort();
    assert_eq!(ev, qs(&[(-1, 3), (0, 1), (0, 1), (1, 3)]));
}

#[test]
fn irregular_potential_has_a_higher_pole() {
    let e = connection_data(&poly("x^2 + x^3", "x"), false).unwrap_err();
    assert!(matches!(e, DerhamError::HigherPole { .. } | DerhamError::NonStabilized { .. }), "{e}");
}

#[test]
fn critical_locus_check() {
    assert!(critical_locus_in_zero_fiber(&poly("x^3 + y^3", "x,y"), 4));
    assert!(critical_locus_in_zero_fiber(&poly("x^2*y", "x,y"), 4));
    // x^2 + x^3 has a critical point at x = −2/3 where W ≠ 0
    assert!(!critical_locus_in_zero_fiber(&poly("x^2 + x^3", "x"), 6));
}

#[test]
fn de_rham_is_a_mixed_complex_with_connection() {
    for (w, v) in [("x^3", "x"), ("x^3 + y^3", "x,y"), ("x^2*y", "x,y"), ("x*y*z + z^2", "x,y,z")] {
        let dr = DeRham::new(&poly(w, v));
        let m = verify_mixed(&dr, 40, 11).unwrap();
        assert!(m.passed(), "{}", serde_json::to_string(&m).unwrap());
        let c = verify_u_connection(&dr, 40, 11).unwrap();
        assert!(c.passed(), "{}", serde_json::to_string(&c).unwrap());
    }
}

#[test]
fn connection_report_json_fields() {
    let r = connection_data(&poly("x^3", "x"), false).unwrap();
    let j = r.to_json();
    assert_eq!(j["residue_eigenvalues"], serde_json::json!(["-1/6", "1/6"]));
    assert_eq!(j["basis"][1], "x*dx");
    assert_eq!(j["weights"], serde_json::json!(["1/3"]));
}

fn random_a(n: u32, var: &str) -> Poly {
    Poly::monomial(&vars(var), vec![n + 1], qi(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn thom_sebastiani_multiplicativity(a in 1u32..6, b in 1u32..6) {
        let v = vars("x,y");
        let w1 = random_a(a, "x");
        let w2 = random_a(b, "y");
        let sum = &w1.embed(&v, &[0]) + &w2.embed(&v, &[1]);
        let m = |w: &Poly| match milnor_number(w) { QuotientDim::Finite(n) => n, _ => 0 };
        prop_assert_eq!(m(&sum), m(&w1) * m(&w2));
    }

    #[test]
    fn u_reduce_is_idempotent(k in 0u32..4, l in 0u32..4, c in -5i64..5) {
        let w = poly("x^3 + x*y^3", "x,y");
        let red = UReducer::new(&w).unwrap();
        let om = FormVector::top(&Poly::monomial(&vars("x,y"), vec![k, l], qi(c)))
            .scale(&RatFuncU::parse("(1+u)/(2-u)").unwrap());
        let once = red.reduce(&om).unwrap();
        prop_assert_eq!(red.reduce(&once).unwrap(), once);
    }

    #[test]
    fn d_and_twist_anticommute(seed in any::<u64>()) {
        let dr = DeRham::new(&poly("x^2*y + y^3 + z^2", "x,y,z"));
        let om = crate::mixedcore::MixedComplex::sample(&dr, &mut crate::mixedcore::sample_rng(seed, 0));
        let a = dr.apply(DerhamOp::D, &dr.apply(DerhamOp::MinusDwWedge, &om));
        let b = dr.apply(DerhamOp::MinusDwWedge, &dr.apply(DerhamOp::D, &om));
        prop_assert!(a.add(&b).is_zero());
        prop_assert!(dr.apply(DerhamOp::D, &om.d()).is_zero());
    }
}

#[test]
fn one_is_a_zero_form() {
    let one = FormVector::from_poly(&Poly::one(&vars("x")), &[]);
    assert_eq!(one.degrees(), vec![0]);
    assert!(one.terms().values().all(|c| c == &RatFuncU::one()));
}
