use proptest::prelude::*;

use super::*;
use crate::exactfield::{qi, Poly};

fn vx() -> Vec<String> {
    vec!["x".into()]
}

fn vxy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn p(s: &str, v: &[String]) -> Poly {
    Poly::parse(s, v).unwrap()
}

fn passes(r: (IdentityReport, IdentityReport)) {
    assert!(r.0.passed(), "{:?}", r.0);
    assert!(r.1.passed(), "{:?}", r.1);
}

#[test]
fn algebra_curvature_carries_the_sign() {
    let w = p("x^3", &vx());
    assert_eq!(CdgAlgebra::new(&w, 1).curvature_poly(), w);
    assert_eq!(CdgAlgebra::new(&w, -1).curvature_poly(), p("-x^3", &vx()));
    let z = Poly::zero(&vxy());
    assert!(CdgAlgebra::new(&z, 1).curvature(&()).is_empty());
}

#[test]
fn algebra_axioms() {
    let w = p("x^3 + x*y^2", &vxy());
    passes(verify_cdg_axioms(&CdgAlgebra::new(&w, 1), "A", 40, 1, 3));
    passes(verify_cdg_axioms(&CdgAlgebra::new(&w, -1), "A-", 40, 1, 3));
}

#[test]
fn koszul_of_x_and_x2_squares_to_x3() {
    let e = MfObject::koszul(&p("x", &vx()), &p("x^2", &vx()));
    assert_eq!(e.potential(), &p("x^3", &vx()));
    // block product by hand: [[0,x],[x^2,0]]^2 = diag(x^3, x^3)
    let d = e.delta_matrix();
    assert_eq!(&d[0][1] * &d[1][0], p("x^3", &vx()));
    assert_eq!(&d[1][0] * &d[0][1], p("x^3", &vx()));
    let e2 = MfObject::koszul(&p("x", &vx()), &p("x", &vx()));
    assert_eq!(e2.potential(), &p("x^2", &vx()));
}

#[test]
fn wrong_declared_potential_is_rejected_with_the_entry() {
    let v = vx();
    let r = MfObject::build(1, 1, vec![vec![p("x", &v)]], vec![vec![p("x", &v)]], &p("x^3", &v));
    match r {
        Err(CdgError::CurvatureMismatch { row: 0, col: 0, entry }) => assert_eq!(entry, "x^2"),
        other => panic!("{other:?}"),
    }
    let r = MfObject::build(1, 2, vec![vec![p("x", &v)]], vec![vec![p("x", &v)]], &p("x^2", &v));
    assert!(matches!(r, Err(CdgError::Shape(_))));
}

fn rank_two_x3_plus_y3() -> MfObject {
    // tensor product of (x, x^2) and (y, y^2)
    let v = vxy();
    let (x, x2, y, y2) = (p("x", &v), p("x^2", &v), p("y", &v), p("y^2", &v));
    let upper = vec![vec![x.clone(), y.clone()], vec![y2.scale(&qi(-1)), x2.clone()]];
    let lower = vec![vec![x2, y.scale(&qi(-1))], vec![y2, x]];
    MfObject::build(2, 2, upper, lower, &p("x^3 + y^3", &v)).unwrap()
}

#[test]
fn mf_category_axioms_and_zero_curvature() {
    let v = vxy();
    let w = p("x^3 + y^3", &v);
    let k1 = MfObject::build(1, 1, vec![vec![p("x", &v)]], vec![vec![p("x^2", &v)]], &p("x^3", &v)).unwrap();
    assert!(HomComplex::new(&k1, &rank_two_x3_plus_y3()).is_err());
    let big = rank_two_x3_plus_y3();
    let cat = MatrixCategory::from_mf(&[big.clone(), big.shift()]).unwrap();
    for x in cat.objects() {
        assert!(cat.curvature(&x).is_empty());
    }
    assert_eq!(cat.background(), &w);
    passes(verify_cdg_axioms(&cat, "MF", 60, 2, 2));
}

#[test]
fn qdg_modules_have_curvature_delta_squared_minus_w() {
    let v = vxy();
    let w = p("x^2*y", &v);
    let odd = MatrixObject {
        name: "M".into(),
        parities: vec![Parity::Even, Parity::Odd],
        delta: vec![vec![Poly::zero(&v), p("x + y", &v)], vec![p("y", &v), Poly::zero(&v)]],
    };
    let cat = MatrixCategory::new(&w, vec![odd, MatrixObject::free_rank_one("A", &v)]).unwrap();
    let h = cat.matrix_of_lin(1, 1, &cat.curvature(&1));
    assert_eq!(h[0][0], p("-x^2*y", &v));
    let h0 = cat.matrix_of_lin(0, 0, &cat.curvature(&0));
    assert_eq!(h0[0][0], p("x*y + y^2 - x^2*y", &v));
    passes(verify_cdg_axioms(&cat, "QDG", 60, 3, 2));
}

#[test]
fn even_delta_entries_are_rejected() {
    let v = vx();
    let bad = MatrixObject {
        name: "B".into(),
        parities: vec![Parity::Even, Parity::Even],
        delta: vec![vec![Poly::zero(&v), p("x", &v)], vec![Poly::zero(&v), Poly::zero(&v)]],
    };
    assert!(matches!(MatrixCategory::new(&p("x", &v), vec![bad]), Err(CdgError::NotOdd { .. })));
}

#[test]
fn identity_is_closed_and_d_squares_to_zero_on_a_spanning_set() {
    let e = MfObject::koszul(&p("x", &vx()), &p("x^2", &vx()));
    let h = HomComplex::new(&e, &e).unwrap();
    assert!(h.differential(&h.identity().unwrap()).is_zero());
    let big = rank_two_x3_plus_y3();
    let h = HomComplex::new(&big, &big.shift()).unwrap();
    for par in [Parity::Even, Parity::Odd] {
        for f in h.spanning_set(3, par) {
            let df = h.differential(&f);
            assert_eq!(df.parity, par.flip());
            assert!(h.differential(&df).is_zero());
        }
    }
}

#[test]
fn koszul_ab_and_ba_have_matching_rank_profiles() {
    let v = vxy();
    let a = p("x^2", &v);
    let b = p("x*y + y^3", &v);
    let e = MfObject::koszul(&a, &b);
    let f = MfObject::koszul(&b, &a);
    let pe = HomComplex::new(&e, &e).unwrap().rank_profile(4);
    let pf = HomComplex::new(&f, &f).unwrap().rank_profile(4);
    assert_eq!(pe, pf);
    assert!(pe.last().unwrap().0 > 0);
}

#[test]
fn shift_and_twist() {
    let e = rank_two_x3_plus_y3();
    let s = e.shift();
    assert_eq!(s.shift(), e);
    assert_eq!(s.rank0(), e.rank1());
    let v = vxy();
    let zero = |r: usize, c: usize| vec![vec![Poly::zero(&v); c]; r];
    assert_eq!(e.twist(&zero(2, 2), &zero(2, 2)).unwrap(), e);
    let mut tau = zero(2, 2);
    tau[0][0] = p("1", &v);
    assert!(matches!(e.twist(&tau, &zero(2, 2)), Err(CdgError::CurvatureMismatch { .. })));
    // conjugating the rank one object by -1 on E^1 is a valid twist
    let k = MfObject::koszul(&p("x", &vx()), &p("x^2", &vx()));
    let t = k.twist(&[vec![p("-2*x", &vx())]], &[vec![p("-2*x^2", &vx())]]).unwrap();
    assert_eq!(t.upper()[0][0], p("-x", &vx()));
}

#[test]
fn mf_json_round_trip() {
    let e = rank_two_x3_plus_y3();
    let j = e.to_json();
    assert_eq!(j["rank0"], 2);
    assert_eq!(j["W"], "x^3 + y^3");
    assert_eq!(MfObject::from_json(&j).unwrap(), e);
    let mut broken = j.clone();
    broken["W"] = "x^3".into();
    assert!(matches!(MfObject::from_json(&broken), Err(CdgError::CurvatureMismatch { .. })));
}

#[test]
fn opposite_of_a_w_is_a_minus_w() {
    let w = p("x^3 + 2*x*y", &vxy());
    let op = Opposite(CdgAlgebra::new(&w, 1));
    let minus = CdgAlgebra::new(&w, -1);
    assert_eq!(op.curvature(&()), minus.curvature(&()));
    let a = vec![2, 1];
    let b = vec![0, 3];
    assert_eq!(op.compose(&a, &b), minus.compose(&a, &b));
    passes(verify_cdg_axioms(&op, "A^op", 30, 4, 3));
}

#[test]
fn opposite_twice_agrees_with_the_original() {
    let big = rank_two_x3_plus_y3();
    let v = vxy();
    let m = MatrixObject {
        name: "M".into(),
        parities: vec![Parity::Odd, Parity::Even],
        delta: vec![vec![Poly::zero(&v), p("x", &v)], vec![p("y^2", &v), Poly::zero(&v)]],
    };
    let cat = MatrixCategory::new(
        &p("x^3 + y^3", &v),
        vec![MatrixObject::from_mf("E", &big), m],
    )
    .unwrap();
    let oo = Opposite(Opposite(cat.clone()));
    for i in 0..30 {
        let mut rng = sample_rng(5, i);
        let f = cat.sample_hom(&mut rng, &0, &1, 2);
        let g = cat.sample_hom(&mut rng, &1, &1, 2);
        assert_eq!(oo.compose_lin(&g, &f), cat.compose_lin(&g, &f));
    }
    for x in cat.objects() {
        assert_eq!(oo.curvature(&x), cat.curvature(&x));
    }
    passes(verify_cdg_axioms(&Opposite(cat), "QDG^op", 60, 6, 2));
}

#[test]
fn opposite_of_a_dg_category_twists_odd_compositions() {
    let cat = MatrixCategory::from_mf(&[rank_two_x3_plus_y3()]).unwrap();
    let op = Opposite(cat.clone());
    let odd = |r, c| ElemMor { tgt: 0, row: r, src: 0, col: c, mono: vec![0, 0] };
    // odd entries: even row with odd column
    let f = odd(2, 0);
    let g = odd(0, 2);
    assert_eq!(op.compose(&g, &f), vec![(odd(2, 2), qi(-1))]);
    assert!(op.curvature(&0).is_empty());
}

#[test]
fn functors_are_strict() {
    let w = p("x^3", &vx());
    let y = Yoneda::new(&w);
    let r = verify_strict_functor(&y, 40, 7, 3);
    assert!(r.passed(), "{r:?}");
    let id = IdentityFunctor(MatrixCategory::from_mf(&[rank_two_x3_plus_y3()]).unwrap());
    assert!(verify_strict_functor(&id, 40, 7, 2).passed());
    let inc = RingInclusion::new(&CdgAlgebra::new(&w, 1), &vxy()).unwrap();
    assert!(verify_strict_functor(&inc, 40, 7, 3).passed());
    assert_eq!(inc.map_morphism(&vec![2]), vec![(vec![2, 0], qi(1))]);
    assert!(RingInclusion::new(&CdgAlgebra::new(&p("y", &["y".to_string()]), 1), &vx()).is_err());
}

#[test]
fn a_broken_differential_fails_the_axioms() {
    // wrapping a category whose differential ignores the sign rule
    #[derive(Clone)]
    struct Sloppy(MatrixCategory);
    impl CdgCategory for Sloppy {
        type Obj = usize;
        type Mor = ElemMor;
        fn objects(&self) -> Vec<usize> {
            self.0.objects()
        }
        fn source(&self, f: &ElemMor) -> usize {
            f.src
        }
        fn target(&self, f: &ElemMor) -> usize {
            f.tgt
        }
        fn parity(&self, f: &ElemMor) -> Parity {
            self.0.parity(f)
        }
        fn compose(&self, g: &ElemMor, f: &ElemMor) -> Lin<ElemMor> {
            self.0.compose(g, f)
        }
        fn differential(&self, f: &ElemMor) -> Lin<ElemMor> {
            self.0.differential(f).into_iter().map(|(m, c)| (m, if c < qi(0) { -c } else { c })).collect()
        }
        fn curvature(&self, x: &usize) -> Lin<ElemMor> {
            self.0.curvature(x)
        }
        fn sample_hom(&self, rng: &mut ChaCha8Rng, x: &usize, y: &usize, d: u32) -> Lin<ElemMor> {
            self.0.sample_hom(rng, x, y, d)
        }
        fn render_morphism(&self, f: &ElemMor) -> String {
            self.0.render_morphism(f)
        }
        fn render_object(&self, x: &usize) -> String {
            self.0.render_object(x)
        }
    }
    let s = Sloppy(MatrixCategory::from_mf(&[rank_two_x3_plus_y3()]).unwrap());
    let (l, c) = verify_cdg_axioms(&s, "sloppy", 40, 8, 2);
    assert!(!l.passed() || !c.passed());
}

fn small_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4).prop_map(|ts| {
        Poly::from_terms(&vxy(), ts.into_iter().map(|(a, b, c)| (vec![a, b], qi(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn koszul_always_squares_to_its_potential(a in small_poly(), b in small_poly()) {
        let e = MfObject::koszul(&a, &b);
        prop_assert_eq!(e.potential(), &(&a * &b));
        let s = e.shift();
        prop_assert_eq!(s.potential(), &(&a * &b));
    }

    #[test]
    fn hom_differential_squares_to_zero(a in small_poly(), b in small_poly(), r in 0usize..2, c in 0usize..2, m in small_poly()) {
        let e = MfObject::koszul(&a, &b);
        let f = MfObject::koszul(&b, &a).shift();
        let h = HomComplex::new(&e, &f).unwrap();
        let par = Parity::from_bit(r + c);
        let mut entries = vec![vec![Poly::zero(&vxy()); 2]; 2];
        entries[r][c] = m;
        let x = HomElement { parity: par, entries };
        prop_assert!(h.differential(&h.differential(&x)).is_zero());
    }
}
