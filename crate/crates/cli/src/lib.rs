//! Command logic behind the `mixcurve` binary: invariant extraction and the
//! verification suites, each producing one JSON document and an exit code.

use serde_json::{json, Map, Value};

use mixcurve::cdgcat::{
    verify_cdg_axioms, verify_strict_functor, CdgAlgebra, HomComplex, IdentityFunctor, MatrixCategory, MfObject,
    RingInclusion, Yoneda,
};
use mixcurve::derham::{
    connection_data, critical_locus_in_zero_fiber, hh_dims, koszul_dims, milnor_number, quasi_homogeneous_weights,
    DeRham, DerhamError, UReducer,
};
use mixcurve::hochschild::{
    ChainKind, HkrHomotopy, HkrMorphism, HochschildComplex, InducedMorphism, OppositeComparison, SampleConfig,
};
use mixcurve::mixedcore::{
    verify_mixed, verify_u_connection, verify_weak_morphism, Failure, IdentityReport, OpError, Parity, Reports,
};
use mixcurve::{Poly, QuotientDim};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_MISCONFIG: i32 = 3;

/// Samples must sit this far below the window so every operator in the
/// identity stays inside it.
const SLACK_MIXED: usize = 2;
const SLACK_CONNECTION: usize = 3;
const SLACK_MORPHISM: usize = 2;

/// Witnesses printed per failing identity.
const MAX_WITNESSES: usize = 3;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub w: String,
    pub vars: Option<Vec<String>>,
    pub window: usize,
    pub degree_bound: u32,
    pub samples: usize,
    pub seed: u64,
    pub sign_twisted: bool,
    /// Debug switch: drop the homotopy from the weak-morphism suites.
    pub no_homotopy: bool,
    /// Factors (a, b) of the Koszul factorization for the mf suite.
    pub koszul: Option<(String, String)>,
}

impl RunConfig {
    pub fn new(w: &str) -> Self {
        RunConfig {
            w: w.to_string(),
            vars: None,
            window: 4,
            degree_bound: 12,
            samples: 100,
            seed: 0,
            sign_twisted: false,
            no_homotopy: false,
            koszul: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Mixed,
    Connection,
    Hkr,
    Opposite,
    Functorial,
    Mf,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Mixed, Suite::Connection, Suite::Hkr, Suite::Opposite, Suite::Functorial, Suite::Mf];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Mixed => "mixed",
            Suite::Connection => "connection",
            Suite::Hkr => "hkr",
            Suite::Opposite => "opposite",
            Suite::Functorial => "functorial",
            Suite::Mf => "mf",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// A finished command: the JSON document and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub exit: i32,
}

impl Outcome {
    pub fn render(&self, pretty: bool) -> String {
        let s = if pretty {
            serde_json::to_string_pretty(&self.json)
        } else {
            serde_json::to_string(&self.json)
        };
        s.expect("JSON values always serialize") + "\n"
    }
}

fn error_value(kind: &str, message: impl ToString) -> Value {
    json!({"kind": kind, "message": message.to_string()})
}

fn misconfig(command: &str, kind: &str, message: impl ToString) -> Outcome {
    Outcome { json: json!({"command": command, "error": error_value(kind, message)}), exit: EXIT_MISCONFIG }
}

fn parse_potential(cfg: &RunConfig) -> Result<Poly, String> {
    let w = match &cfg.vars {
        Some(v) => Poly::parse(&cfg.w, v),
        None => Poly::parse_infer(&cfg.w),
    };
    w.map_err(|e| e.to_string())
}

fn derham_error(e: &DerhamError) -> Value {
    json!({"error": error_value(e.kind(), e)})
}

/// Milnor number, cohomology dimensions, HP rank and the connection data.
pub fn cmd_invariants(cfg: &RunConfig) -> Outcome {
    const CMD: &str = "invariants";
    if cfg.window < 2 {
        return misconfig(CMD, "Misconfiguration", "window must be at least 2");
    }
    if cfg.samples < 1 {
        return misconfig(CMD, "Misconfiguration", "samples must be at least 1");
    }
    let w = match parse_potential(cfg) {
        Ok(w) => w,
        Err(e) => return misconfig(CMD, "ParseError", e),
    };
    let mut domain_error = false;
    let mut section = |r: Result<Value, DerhamError>| match r {
        Ok(v) => v,
        Err(e) => {
            domain_error = true;
            derham_error(&e)
        }
    };
    let milnor = match milnor_number(&w) {
        QuotientDim::Finite(n) => json!(n),
        QuotientDim::Infinite => json!("INFINITE"),
    };
    let dims = |r: Result<mixcurve::derham::ParityDims, DerhamError>| r.map(|d| json!(d));
    let hh = section(dims(hh_dims(&w, cfg.degree_bound)));
    let kz = section(dims(koszul_dims(&w, cfg.degree_bound)));
    let hp = section(UReducer::new(&w).map(|r| json!(r.basis().len())));
    let conn = section(connection_data(&w, cfg.sign_twisted).map(|r| {
        let mut v = r.to_json();
        v["mu"] = json!(r.basis.len());
        v
    }));
    let mut warnings = Vec::new();
    if !critical_locus_in_zero_fiber(&w, cfg.degree_bound) {
        warnings.push(format!(
            "no power W^k with k <= {} lies in the Jacobian ideal; the critical locus may leave W = 0",
            cfg.degree_bound
        ));
    }
    let weights = quasi_homogeneous_weights(&w).map(|ws| ws.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let json = json!({
        "command": CMD,
        "W": w.to_string(),
        "vars": w.vars(),
        "seed": cfg.seed,
        "degree_bound": cfg.degree_bound,
        "sign_twisted": cfg.sign_twisted,
        "milnor": milnor,
        "quasi_homogeneous_weights": weights,
        "hh_dims": hh,
        "koszul_dims": kz,
        "hp_rank": hp,
        "connection_report": conn,
        "warnings": warnings,
    });
    Outcome { json, exit: if domain_error { EXIT_DOMAIN } else { EXIT_PASS } }
}

fn identity_json(r: &IdentityReport) -> Value {
    let witnesses: Vec<Value> = r
        .failures
        .iter()
        .take(MAX_WITNESSES)
        .map(|Failure { seed_index, residual_printed }| json!({"sample": seed_index, "residual": residual_printed}))
        .collect();
    json!({
        "identity": r.identity,
        "samples": r.samples,
        "passed": r.passed(),
        "failures": r.failures.len(),
        "witnesses": witnesses,
    })
}

/// Collects identity reports; an operator error aborts the suite.
struct Checks {
    items: Vec<IdentityReport>,
}

impl Checks {
    fn add<R: Reports>(&mut self, r: Result<R, OpError>) -> Result<(), OpError> {
        self.items.extend(r?.identities().into_iter().cloned());
        Ok(())
    }

    fn add_one(&mut self, r: IdentityReport) {
        self.items.push(r);
    }
}

fn sampling(window: usize, slack: usize, max_degree: u32) -> Result<SampleConfig, String> {
    if window < slack {
        return Err(format!("window {window} is below the slack {slack} this identity needs"));
    }
    Ok(SampleConfig { max_weight: window - slack, max_degree })
}

fn algebra_complex(w: &Poly, sign: i32, window: usize, slack: usize) -> Result<HochschildComplex<CdgAlgebra>, String> {
    Ok(HochschildComplex::new(CdgAlgebra::new(w, sign), ChainKind::Second, window)
        .with_sampling(sampling(window, slack, 3)?))
}

/// A fresh variable name for the ring inclusion target.
fn fresh_var(vars: &[String]) -> String {
    (0..).map(|i| format!("t{i}")).find(|v| !vars.contains(v)).expect("unbounded")
}

/// W / x_1 when every term of W contains the first variable.
fn split_first_variable(w: &Poly) -> Option<(Poly, Poly)> {
    let vars = w.vars();
    if vars.is_empty() || w.is_zero() || w.terms().keys().any(|m| m[0] == 0) {
        return None;
    }
    let b = Poly::from_terms(
        vars,
        w.terms().iter().map(|(m, c)| {
            let mut m = m.clone();
            m[0] -= 1;
            (m, c.clone())
        }),
    );
    Some((Poly::var(vars, 0), b))
}

fn mf_checks(checks: &mut Checks, cfg: &RunConfig, w: &Poly) -> Result<Result<(), OpError>, String> {
    let (a, b) = match &cfg.koszul {
        Some((a, b)) => {
            let a = Poly::parse(a, w.vars()).map_err(|e| e.to_string())?;
            let b = Poly::parse(b, w.vars()).map_err(|e| e.to_string())?;
            (a, b)
        }
        None => split_first_variable(w).ok_or("W has no factor x_1; pass --koszul a,b")?,
    };
    let e = MfObject::koszul(&a, &b);
    let vars = w.vars();
    // δ² = (ab)·id, entry by entry
    let d = e.delta_matrix();
    let n = e.rank();
    let ab = &a * &b;
    let mut fails = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut s = Poly::zero(vars);
            for k in 0..n {
                s = &s + &(&d[i][k] * &d[k][j]);
            }
            if i == j {
                s = &s - &ab;
            }
            if !s.is_zero() {
                fails.push(Failure { seed_index: i * n + j, residual_printed: s.to_string() });
            }
        }
    }
    checks.add_one(IdentityReport {
        identity: format!("koszul({a}, {b}): delta^2 = ({ab}) id"),
        samples: n * n,
        failures: fails,
    });
    let hom = HomComplex::new(&e, &e).map_err(|err| err.to_string())?;
    let mut fails = Vec::new();
    let mut count = 0;
    for p in [Parity::Even, Parity::Odd] {
        for x in hom.spanning_set(4, p) {
            let dd = hom.differential(&hom.differential(&x));
            if !dd.is_zero() {
                let entries: Vec<String> = dd.entries.iter().flatten().map(|q| q.to_string()).collect();
                fails.push(Failure { seed_index: count, residual_printed: entries.join(", ") });
            }
            count += 1;
        }
    }
    checks.add_one(IdentityReport { identity: "End(E): d^2 = 0 up to degree 4".into(), samples: count, failures: fails });
    let cat = MatrixCategory::from_mf(&[e.clone(), e.shift()]).map_err(|err| err.to_string())?;
    let (leibniz, curvature) = verify_cdg_axioms(&cat, "MF", cfg.samples, cfg.seed, 2);
    checks.add_one(leibniz);
    checks.add_one(curvature);
    let mixed = HochschildComplex::new(cat.clone(), ChainKind::First, cfg.window)
        .with_sampling(sampling(cfg.window, SLACK_MIXED, 2)?);
    let conn = HochschildComplex::new(cat, ChainKind::First, cfg.window)
        .with_sampling(sampling(cfg.window, SLACK_CONNECTION, 2)?);
    Ok(checks
        .add(verify_mixed(&mixed, cfg.samples, cfg.seed))
        .and_then(|_| checks.add(verify_u_connection(&conn, cfg.samples, cfg.seed))))
}

fn run_suite(checks: &mut Checks, cfg: &RunConfig, w: &Poly, suite: Suite) -> Result<Result<(), OpError>, String> {
    let (n, seed, win) = (cfg.samples, cfg.seed, cfg.window);
    let dr = DeRham::new(w).with_max_degree(3);
    Ok(match suite {
        Suite::Mixed => {
            let h = algebra_complex(w, 1, win, SLACK_MIXED)?;
            checks.add(verify_mixed(&h, n, seed)).and_then(|_| checks.add(verify_mixed(&dr, n, seed)))
        }
        Suite::Connection => {
            let h = algebra_complex(w, 1, win, SLACK_CONNECTION)?;
            checks.add(verify_u_connection(&h, n, seed)).and_then(|_| checks.add(verify_u_connection(&dr, n, seed)))
        }
        Suite::Hkr => {
            let kind = if cfg.no_homotopy { HkrHomotopy::Zero } else { HkrHomotopy::Corrected };
            let h = algebra_complex(w, 1, win, SLACK_MORPHISM)?;
            let m = HkrMorphism::new(h, kind).map_err(|e| e.to_string())?;
            checks.add(verify_weak_morphism(&m, n, seed))
        }
        Suite::Opposite => {
            let h = algebra_complex(w, 1, win, SLACK_MORPHISM)?;
            checks.add(verify_weak_morphism(&OppositeComparison::new(h, !cfg.no_homotopy), n, seed))
        }
        Suite::Functorial => {
            let yoneda = Yoneda::new(w);
            checks.add_one(verify_strict_functor(&yoneda, n, seed, 3));
            let src = algebra_complex(w, -1, win, SLACK_MORPHISM)?;
            let mut target_vars = w.vars().to_vec();
            target_vars.push(fresh_var(w.vars()));
            let alg = CdgAlgebra::new(w, 1);
            let incl = RingInclusion::new(&alg, &target_vars).map_err(|e| e.to_string())?;
            checks.add_one(verify_strict_functor(&incl, n, seed, 3));
            let incl_src = algebra_complex(w, 1, win, SLACK_MORPHISM)?;
            let id_src = algebra_complex(w, 1, win, SLACK_MORPHISM)?;
            checks
                .add(verify_weak_morphism(&InducedMorphism::new(yoneda, src), n, seed))
                .and_then(|_| checks.add(verify_weak_morphism(&InducedMorphism::new(incl, incl_src), n, seed)))
                .and_then(|_| {
                    let id = IdentityFunctor(CdgAlgebra::new(w, 1));
                    checks.add(verify_weak_morphism(&InducedMorphism::new(id, id_src), n, seed))
                })
        }
        Suite::Mf => return mf_checks(checks, cfg, w),
    })
}

/// Run one verification suite. Exit 0 iff every identity holds.
pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Outcome {
    const CMD: &str = "verify";
    if cfg.window < 2 {
        return misconfig(CMD, "Misconfiguration", "window must be at least 2");
    }
    if cfg.samples < 1 {
        return misconfig(CMD, "Misconfiguration", "samples must be at least 1");
    }
    let w = match parse_potential(cfg) {
        Ok(w) => w,
        Err(e) => return misconfig(CMD, "ParseError", e),
    };
    let mut checks = Checks { items: Vec::new() };
    let mut doc = Map::new();
    doc.insert("command".into(), json!(CMD));
    doc.insert("suite".into(), json!(suite.name()));
    doc.insert("W".into(), json!(w.to_string()));
    doc.insert("vars".into(), json!(w.vars()));
    doc.insert("window".into(), json!(cfg.window));
    doc.insert("samples".into(), json!(cfg.samples));
    doc.insert("seed".into(), json!(cfg.seed));
    if cfg.no_homotopy {
        doc.insert("no_homotopy".into(), json!(true));
    }
    let exit = match run_suite(&mut checks, cfg, &w, suite) {
        Err(msg) => {
            doc.insert("error".into(), error_value("Misconfiguration", msg));
            EXIT_MISCONFIG
        }
        Ok(Err(op)) => {
            let kind = match op {
                OpError::WindowOverflow { .. } => "WindowOverflow",
                OpError::KindMismatch { .. } => "KindMismatch",
                OpError::IllTyped(_) => "IllTyped",
            };
            doc.insert("error".into(), error_value(kind, op));
            EXIT_MISCONFIG
        }
        Ok(Ok(())) => {
            if checks.items.iter().all(|r| r.passed()) {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
    };
    doc.insert("passed".into(), json!(exit == EXIT_PASS));
    doc.insert("checks".into(), checks.items.iter().map(identity_json).collect::<Vec<_>>().into());
    Outcome { json: Value::Object(doc), exit }
}
