//! Acceptance checks A1–A9, one PASS/FAIL line each. Exits nonzero if any
//! criterion fails.

use std::process::Command;
use std::time::Instant;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mixcurve::cdgcat::{CdgAlgebra, MatrixCategory, MfObject};
use mixcurve::derham::{connection_data, hh_dims, koszul_dims, milnor_number, ParityDims, UReducer};
use mixcurve::exactfield::{frac_mod1, q};
use mixcurve::hochschild::{ChainKind, HkrHomotopy, HkrMorphism, HochschildComplex, OppositeComparison, SampleConfig};
use mixcurve::mixedcore::{verify_mixed, verify_u_connection, verify_weak_morphism, Reports};
use mixcurve::{Poly, QuotientDim, Q};
use mixcurve_cli::{cmd_verify, RunConfig, Suite};

const SEED: u64 = 20_240_601;

fn vars(s: &str) -> Vec<String> {
    s.split(',').map(String::from).collect()
}

fn poly(s: &str, v: &str) -> Poly {
    Poly::parse(s, &vars(v)).expect("fixed input parses")
}

fn a1_inputs() -> Vec<Poly> {
    vec![poly("x^2", "x"), poly("x^3", "x"), poly("x^3 + y^3", "x,y"), poly("x^2*y", "x,y")]
}

/// Hoch^Π(A, W) sampling weight ≤ `weight`, entry degree ≤ 3.
fn hoch(w: &Poly, weight: usize, slack: usize) -> HochschildComplex<CdgAlgebra> {
    HochschildComplex::new(CdgAlgebra::new(w, 1), ChainKind::Second, weight + slack)
        .with_sampling(SampleConfig { max_weight: weight, max_degree: 3 })
}

fn mu(w: &Poly) -> usize {
    match milnor_number(w) {
        QuotientDim::Finite(n) => n,
        QuotientDim::Infinite => usize::MAX,
    }
}

type Outcome = Result<String, String>;

fn check(ok: bool, pass: String, fail: String) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn a1() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for w in a1_inputs() {
        let r = verify_mixed(&hoch(&w, 4, 2), 200, SEED).map_err(|e| e.to_string())?;
        if !r.passed() {
            bad.push(w.to_string());
        }
    }
    let secs = t.elapsed().as_secs_f64();
    check(
        bad.is_empty() && secs < 60.0,
        format!("b^2, B^2, bB+Bb vanish on 4 inputs x 200 samples ({secs:.1}s)"),
        format!("failures on {bad:?}, {secs:.1}s"),
    )
}

fn a2() -> Outcome {
    let mut bad = Vec::new();
    for w in a1_inputs() {
        let r = verify_u_connection(&hoch(&w, 4, 3), 200, SEED).map_err(|e| e.to_string())?;
        if !r.passed() {
            bad.push(w.to_string());
        }
    }
    let e = MfObject::koszul(&poly("x", "x"), &poly("x^2", "x"));
    let cat = MatrixCategory::from_mf(&[e.clone(), e.shift()]).map_err(|e| e.to_string())?;
    let h = HochschildComplex::new(cat, ChainKind::First, 6).with_sampling(SampleConfig { max_weight: 3, max_degree: 2 });
    let r = verify_u_connection(&h, 100, SEED).map_err(|e| e.to_string())?;
    if !r.passed() {
        bad.push("MF koszul(x, x^2), first kind".into());
    }
    check(
        bad.is_empty(),
        "second-kind connection on A1 inputs and first-kind on MF(x^3): residual 0".into(),
        format!("failures on {bad:?}"),
    )
}

fn a3() -> Outcome {
    let mut bad = Vec::new();
    let mut literal_residuals = Vec::new();
    for w in a1_inputs() {
        let m = HkrMorphism::new(hoch(&w, 5, 2), HkrHomotopy::Corrected).map_err(|e| e.to_string())?;
        let r = verify_weak_morphism(&m, 200, SEED).map_err(|e| e.to_string())?;
        if !r.passed() {
            bad.push(w.to_string());
        }
        let lit = HkrMorphism::new(hoch(&w, 5, 2), HkrHomotopy::Literal).map_err(|e| e.to_string())?;
        let r = verify_weak_morphism(&lit, 200, SEED).map_err(|e| e.to_string())?;
        if !r.homotopy.passed() {
            literal_residuals.push(format!("{w}: {}/200", r.homotopy.failures.len()));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "eps b = -dW eps, eps B = d eps and the homotopy identity with H = (W/2u^2) d eps on 4 inputs x 200 \
             samples; the printed H = -(W/2u) d eps leaves residuals on [{}]",
            literal_residuals.join(", ")
        ),
        format!("failures on {bad:?}"),
    )
}

fn a4() -> Outcome {
    let w = poly("x^3", "x");
    let r = verify_weak_morphism(&OppositeComparison::new(hoch(&w, 4, 2), true), 100, SEED).map_err(|e| e.to_string())?;
    check(
        r.passed(),
        "Phi commutes with b, B and satisfies the weak-morphism identity, 100 samples".into(),
        serde_json::to_string(&r).unwrap(),
    )
}

/// Quasi-homogeneous building blocks in one variable `x` or two `x,y`.
fn qh_blocks() -> Vec<(&'static str, &'static str)> {
    vec![
        ("x^2", "x"),
        ("x^3", "x"),
        ("x^4", "x"),
        ("x^5", "x"),
        ("x^3 + y^3", "x,y"),
        ("x^2*y + y^3", "x,y"),
        ("x^3 + y^4", "x,y"),
        ("x^2*y + y^4", "x,y"),
    ]
}

/// W1 and W2 on disjoint variables.
fn disjoint_sum(a: &Poly, b: &Poly) -> Poly {
    let mut v: Vec<String> = a.vars().iter().map(|s| format!("{s}1")).collect();
    v.extend(b.vars().iter().map(|s| format!("{s}2")));
    let na = a.nvars();
    let pa: Vec<usize> = (0..na).collect();
    let pb: Vec<usize> = (na..na + b.nvars()).collect();
    &a.embed(&v, &pa) + &b.embed(&v, &pb)
}

fn ts_pairs() -> Vec<(Poly, Poly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let blocks = qh_blocks();
    (0..5)
        .map(|_| {
            let (a, va) = *blocks.choose(&mut rng).unwrap();
            let (b, vb) = *blocks.choose(&mut rng).unwrap();
            (poly(a, va), poly(b, vb))
        })
        .collect()
}

fn a5_examples() -> Vec<(Poly, usize)> {
    let mut v: Vec<(Poly, usize)> =
        (1..=6).map(|n| (Poly::monomial(&vars("x"), vec![n as u32 + 1], Q::from_integer(1.into())), n)).collect();
    v.push((poly("x^3 + y^3", "x,y"), 4));
    v.push((poly("x^2 + y^2", "x,y"), 1));
    v
}

fn a5() -> Outcome {
    let mut bad = Vec::new();
    for (w, expect) in a5_examples() {
        if mu(&w) != expect {
            bad.push(format!("mu({w}) = {} != {expect}", mu(&w)));
        }
    }
    let mut ts = Vec::new();
    for (a, b) in ts_pairs() {
        let s = disjoint_sum(&a, &b);
        ts.push(format!("{}*{}={}", mu(&a), mu(&b), mu(&s)));
        if mu(&s) != mu(&a) * mu(&b) {
            bad.push(format!("Thom-Sebastiani fails for {a} + {b}"));
        }
    }
    check(
        bad.is_empty(),
        format!("mu(x^(n+1)) = n for n = 1..6, mu(x^3+y^3) = 4, mu(x^2+y^2) = 1; TS pairs [{}]", ts.join(", ")),
        bad.join("; "),
    )
}

fn a6() -> Outcome {
    let mut bad = Vec::new();
    let mut inputs: Vec<Poly> = a5_examples().into_iter().map(|(w, _)| w).collect();
    inputs.extend(ts_pairs().into_iter().map(|(a, b)| disjoint_sum(&a, &b)));
    for w in &inputs {
        let m = mu(w);
        let hh = hh_dims(w, 12).map_err(|e| format!("{w}: {e}"))?;
        let kz = koszul_dims(w, 12).map_err(|e| format!("{w}: {e}"))?;
        if hh.total() != m || kz.total() != m {
            bad.push(format!("{w}: hh {} koszul {} mu {m}", hh.total(), kz.total()));
        }
    }
    let x3 = hh_dims(&poly("x^3", "x"), 12).map_err(|e| e.to_string())?;
    if x3 != (ParityDims { even: 0, odd: 2 }) {
        bad.push(format!("hh_dims(x^3) = {x3:?}"));
    }
    check(
        bad.is_empty(),
        format!("hh total = koszul total = mu on {} isolated inputs; hh_dims(x^3) = {{odd: 2, even: 0}}", inputs.len()),
        bad.join("; "),
    )
}

fn sorted(mut v: Vec<Q>) -> Vec<Q> {
    v.sort();
    v
}

fn a7() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=5i64 {
        let w = Poly::monomial(&vars("x"), vec![n as u32 + 1], Q::from_integer(1.into()));
        let rank = UReducer::new(&w).map_err(|e| e.to_string())?.basis().len();
        if rank != n as usize {
            bad.push(format!("hp_rank(x^{}) = {rank}", n + 1));
        }
        let plain = connection_data(&w, false).map_err(|e| e.to_string())?;
        let twisted = connection_data(&w, true).map_err(|e| e.to_string())?;
        let eig: Vec<Q> = (0..n).map(|k| q(k + 1, n + 1) - q(1, 2)).collect();
        if sorted(plain.residue_eigenvalues.clone()) != eig {
            bad.push(format!("residues of x^{}", n + 1));
        }
        let rot: Vec<Q> = (1..=n).map(|j| q(j, n + 1)).collect();
        if sorted(plain.monodromy_rotations.clone()) != rot {
            bad.push(format!("untwisted rotations of x^{}", n + 1));
        }
        let shifted = sorted(rot.iter().map(|r| frac_mod1(&(r + q(1, 2)))).collect());
        if sorted(twisted.monodromy_rotations.clone()) != shifted {
            bad.push(format!("twisted rotations of x^{}", n + 1));
        }
        if n == 2 && sorted(twisted.monodromy_rotations.clone()) != vec![q(1, 6), q(5, 6)] {
            bad.push("x^3 twisted rotations are not {1/6, 5/6}".into());
        }
    }
    check(
        bad.is_empty(),
        "x^(n+1), n = 1..5: hp_rank = n, residues (k+1)/(n+1) - 1/2, rotations j/(n+1), twisted = +1/2".into(),
        bad.join("; "),
    )
}

fn a8() -> Outcome {
    let mut bad = Vec::new();
    for (a, b) in [(1, 1), (1, 2), (2, 3)] {
        let mut cfg = RunConfig::new(&format!("x^{}", a + b));
        cfg.koszul = Some((format!("x^{a}"), format!("x^{b}")));
        cfg.samples = 40;
        cfg.seed = SEED;
        cfg.window = 5;
        let out = cmd_verify(&cfg, Suite::Mf);
        if out.exit != 0 {
            bad.push(format!("koszul(x^{a}, x^{b}): {}", out.json));
        }
    }
    check(
        bad.is_empty(),
        "delta^2 = x^(a+b) id and End(E) d^2 = 0 up to degree 4 for (1,1), (1,2), (2,3)".into(),
        bad.join("; "),
    )
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_mixcurve")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn a9() -> Outcome {
    let args = ["invariants", "--W", "x^3", "--seed", "42"];
    let (c1, o1) = run(&args);
    let (c2, o2) = run(&args);
    let golden = include_bytes!("golden/invariants_x3_seed42.json");
    let mut bad = Vec::new();
    if c1 != 0 || c2 != 0 || o1 != o2 {
        bad.push("two runs differ".to_string());
    }
    if o1.as_slice() != golden.as_slice() {
        bad.push(format!("golden mismatch: {}", String::from_utf8_lossy(&o1)));
    }
    let cases: [(&[&str], i32); 3] = [
        (&["verify", "--suite", "mixed", "--W", "x^3", "--window", "5", "--samples", "100"], 0),
        (&["verify", "--suite", "hkr", "--W", "x^3 + y^3", "--no-homotopy", "--samples", "50"], 1),
        (&["verify", "--suite", "mf", "--W", "x^3", "--koszul", "x,x^2", "--samples", "50"], 0),
    ];
    for (a, expect) in cases {
        let (code, _) = run(a);
        if code != expect {
            bad.push(format!("{a:?}: exit {code}, expected {expect}"));
        }
    }
    check(
        bad.is_empty(),
        "invariants(x^3, seed 42) matches the golden file twice; verify exits 0/1/0 on mixed, hkr without H, mf".into(),
        bad.join("; "),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] =
        [("A1", a1), ("A2", a2), ("A3", a3), ("A4", a4), ("A5", a5), ("A6", a6), ("A7", a7), ("A8", a8), ("A9", a9)];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(msg) => println!("{name} PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{name} FAIL  {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
