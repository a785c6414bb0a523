use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::chain::{word_parity, ChainKind, Entry, HochChain, Word};
use super::ops::Terms;
use crate::cdgcat::CdgCategory;
use crate::exactfield::{q, RatFuncU};
use crate::mixedcore::{random_ratfunc, Element, MixedComplex, OpError, UConnection};

/// What random chains look like.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub max_weight: usize,
    /// Bound on the polynomial degree of sampled entries.
    pub max_degree: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    BM0,
    BM1,
    BM2,
    /// b_m2 + b_m1, plus b_m0 on the second kind.
    B,
    /// The Connes differential.
    BigB,
    Gamma,
    UM0,
    UM1,
    VM0,
    VM1,
    NablaApply,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 11] = [
        OperatorKind::BM0,
        OperatorKind::BM1,
        OperatorKind::BM2,
        OperatorKind::B,
        OperatorKind::BigB,
        OperatorKind::Gamma,
        OperatorKind::UM0,
        OperatorKind::UM1,
        OperatorKind::VM0,
        OperatorKind::VM1,
        OperatorKind::NablaApply,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::BM0 => "b_m0",
            OperatorKind::BM1 => "b_m1",
            OperatorKind::BM2 => "b_m2",
            OperatorKind::B => "b",
            OperatorKind::BigB => "B",
            OperatorKind::Gamma => "Gamma",
            OperatorKind::UM0 => "U_m0",
            OperatorKind::UM1 => "U_m1",
            OperatorKind::VM0 => "V_m0",
            OperatorKind::VM1 => "V_m1",
            OperatorKind::NablaApply => "nabla_apply",
        }
    }

    fn curved(self) -> bool {
        matches!(self, OperatorKind::BM0 | OperatorKind::UM0 | OperatorKind::VM0)
    }
}

/// The Hochschild complex of `cat`, of the first or second kind, restricted to
/// chains of weight at most `window`.
///
/// The connection is d/du + U/u² + (V + Γ)/u with U = U_m1 and V = V_m1 on
/// the first kind and U = U_m1 + U_m0, V = V_m1 + V_m0 on the second.
#[derive(Clone, Debug)]
pub struct HochschildComplex<C> {
    pub(crate) cat: C,
    pub(crate) kind: ChainKind,
    pub(crate) window: usize,
    pub(crate) sampling: SampleConfig,
}

pub type ChainOf<C> = HochChain<<C as CdgCategory>::Obj, <C as CdgCategory>::Mor>;
type WordOf<C> = Word<<C as CdgCategory>::Obj, <C as CdgCategory>::Mor>;

impl<C: CdgCategory> HochschildComplex<C> {
    /// Samples default to weight window - 2 and entry degree 2.
    pub fn new(cat: C, kind: ChainKind, window: usize) -> Self {
        let sampling = SampleConfig { max_weight: window.saturating_sub(2), max_degree: 2 };
        HochschildComplex { cat, kind, window, sampling }
    }

    pub fn with_sampling(mut self, sampling: SampleConfig) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn category(&self) -> &C {
        &self.cat
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn sampling(&self) -> SampleConfig {
        self.sampling
    }

    pub fn zero(&self) -> ChainOf<C> {
        HochChain::zero(self.kind, self.window)
    }

    /// Type-check a word against the category: consecutive entries compose,
    /// the head closes the cycle, the unit only sits in the head, recorded
    /// parities are the category's.
    pub fn check_word(&self, w: &WordOf<C>) -> Result<(), OpError> {
        if w.is_empty() {
            return Err(OpError::IllTyped("empty word".into()));
        }
        let n = w.len() - 1;
        if n > self.window {
            return Err(OpError::WindowOverflow { weight: n, window: self.window });
        }
        for (i, e) in w.iter().enumerate() {
            match e {
                Entry::Unit(_) if i != n => {
                    return Err(OpError::IllTyped(format!("formal unit in slot {i}, only the head may be a unit")))
                }
                Entry::Unit(_) if n == 0 => {
                    return Err(OpError::IllTyped("a weight-0 word cannot be a unit".into()))
                }
                Entry::Mor(m, p) if self.cat.parity(m) != *p => {
                    return Err(OpError::IllTyped(format!("slot {i} records the wrong parity")))
                }
                _ => {}
            }
        }
        for i in 0..=n {
            let next = if i == n { &w[0] } else { &w[i + 1] };
            if self.entry_target(&w[i]) != self.entry_source(next) {
                return Err(OpError::IllTyped(format!(
                    "slot {i} ends at {} but the next slot starts at {}",
                    self.cat.render_object(&self.entry_target(&w[i])),
                    self.cat.render_object(&self.entry_source(next))
                )));
            }
        }
        Ok(())
    }

    /// Build a chain from words and coefficients, rejecting ill-typed words
    /// and anything outside the window.
    pub fn make_chain<I>(&self, words: I) -> Result<ChainOf<C>, OpError>
    where
        I: IntoIterator<Item = (WordOf<C>, RatFuncU)>,
    {
        let mut out = self.zero();
        for (w, c) in words {
            self.check_word(&w)?;
            out.add_word(w, c);
        }
        Ok(out)
    }

    /// Convenience: a word from plain morphisms f_0, .., f_n (head last).
    pub fn word(&self, morphisms: &[C::Mor]) -> WordOf<C> {
        morphisms.iter().map(|m| self.entry(m.clone())).collect()
    }

    /// A word (f_0, .., f_{n-1}; e_X) whose head is the formal unit.
    pub fn word_with_unit(&self, morphisms: &[C::Mor], x: C::Obj) -> WordOf<C> {
        let mut w = self.word(morphisms);
        w.push(Entry::Unit(x));
        w
    }

    pub(crate) fn apply_terms<F>(&self, c: &ChainOf<C>, f: F) -> Result<ChainOf<C>, OpError>
    where
        F: Fn(&WordOf<C>) -> Terms<C>,
    {
        let mut out = HochChain::zero(c.kind, c.window);
        for (w, coef) in &c.terms {
            for (nw, k) in f(w) {
                let weight = nw.len() - 1;
                if weight > c.window {
                    return Err(OpError::WindowOverflow { weight, window: c.window });
                }
                out.add_word(nw, coef.scale(&k));
            }
        }
        Ok(out)
    }

    fn require_second(&self, op: OperatorKind, c: &ChainOf<C>) -> Result<(), OpError> {
        if op.curved() && c.kind != ChainKind::Second {
            return Err(OpError::KindMismatch { op: op.name().into(), kind: c.kind.label().into() });
        }
        Ok(())
    }

    pub fn apply_operator(&self, op: OperatorKind, c: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        self.require_second(op, c)?;
        match op {
            OperatorKind::BM0 => self.apply_terms(c, |w| self.w_b_m0(w)),
            OperatorKind::BM1 => self.apply_terms(c, |w| self.w_b_m1(w)),
            OperatorKind::BM2 => self.apply_terms(c, |w| self.w_b_m2(w)),
            OperatorKind::BigB => self.apply_terms(c, |w| self.w_big_b(w)),
            OperatorKind::Gamma => self.apply_terms(c, |w| self.w_gamma(w)),
            OperatorKind::UM0 => self.apply_terms(c, |w| self.w_u_m0(w)),
            OperatorKind::UM1 => self.apply_terms(c, |w| self.w_u_m1(w)),
            OperatorKind::VM0 => self.apply_terms(c, |w| self.w_v_m0(w)),
            OperatorKind::VM1 => self.apply_terms(c, |w| self.w_v_m1(w)),
            OperatorKind::B => self.b(c),
            OperatorKind::NablaApply => self.nabla(c),
        }
    }

    fn second(&self, c: &ChainOf<C>) -> bool {
        c.kind == ChainKind::Second
    }

    /// U(c), the coefficient of 1/u² in the connection.
    pub fn u_part(&self, c: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        if self.second(c) {
            self.apply_terms(c, |w| {
                let mut t = self.w_u_m1(w);
                t.extend(self.w_u_m0(w));
                t
            })
        } else {
            self.apply_terms(c, |w| self.w_u_m1(w))
        }
    }

    /// (V + Γ)(c), the coefficient of 1/u in the connection.
    pub fn v_part(&self, c: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        let second = self.second(c);
        self.apply_terms(c, |w| {
            let mut t = self.w_v_m1(w);
            if second {
                t.extend(self.w_v_m0(w));
            }
            t.extend(self.w_gamma(w));
            t
        })
    }

    fn render_entry(&self, e: &Entry<C::Obj, C::Mor>) -> String {
        match e {
            Entry::Unit(x) => format!("e_{}", self.cat.render_object(x)),
            Entry::Mor(m, _) => self.cat.render_morphism(m),
        }
    }

    /// Display order: f_n | f_{n-1} | .. | f_0.
    pub fn render_word(&self, w: &WordOf<C>) -> String {
        let parts: Vec<String> = w.iter().rev().map(|e| self.render_entry(e)).collect();
        format!("[{}]", parts.join(" | "))
    }

    /// JSON form: each term lists its entries f_n, .., f_0 with parities,
    /// the objects X_0, .., X_n and the coefficient as a string in u.
    pub fn chain_to_json(&self, c: &ChainOf<C>) -> Value {
        let terms: Vec<Value> = c
            .terms
            .iter()
            .map(|(w, coef)| {
                let entries: Vec<Value> = w
                    .iter()
                    .rev()
                    .map(|e| {
                        let par = if e.parity().bit() == 0 { "even" } else { "odd" };
                        json!({"entry": self.render_entry(e), "parity": par})
                    })
                    .collect();
                let objects: Vec<String> =
                    w.iter().map(|e| self.cat.render_object(&self.entry_source(e))).collect();
                json!({"coefficient": coef.to_string(), "objects": objects, "entries": entries})
            })
            .collect();
        json!({"kind": c.kind.label(), "window": c.window, "terms": terms})
    }

    fn random_word(&self, rng: &mut ChaCha8Rng, n: usize) -> WordOf<C> {
        let objs = self.cat.objects();
        let deg = self.sampling.max_degree;
        'attempt: for _ in 0..64 {
            let xs: Vec<C::Obj> = (0..=n).map(|_| objs[rng.random_range(0..objs.len())].clone()).collect();
            let mut w = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let (x, y) = if i == n { (&xs[n], &xs[0]) } else { (&xs[i], &xs[i + 1]) };
                if i == n && n > 0 && x == y && rng.random_bool(0.25) {
                    w.push(Entry::Unit(x.clone()));
                    continue;
                }
                let f = self.cat.sample_hom(rng, x, y, deg);
                if f.is_empty() {
                    continue 'attempt;
                }
                let (m, _) = f[rng.random_range(0..f.len())].clone();
                w.push(self.entry(m));
            }
            return w;
        }
        panic!("could not sample a composable word; some hom spaces are empty")
    }
}

impl<C: CdgCategory> HochschildComplex<C> {
    pub fn b(&self, c: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        let second = self.second(c);
        self.apply_terms(c, |w| {
            let mut t = self.w_b_m2(w);
            t.extend(self.w_b_m1(w));
            if second {
                t.extend(self.w_b_m0(w));
            }
            t
        })
    }

    pub fn nabla(&self, c: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        Ok(c.d_du().add(&self.connection(c)?))
    }

    fn connection(&self, c: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        let u2 = RatFuncU::u_pow(-2, q(1, 1));
        let u1 = RatFuncU::u_pow(-1, q(1, 1));
        Ok(self.u_part(c)?.scale(&u2).add(&self.v_part(c)?.scale(&u1)))
    }
}

impl<C: CdgCategory> MixedComplex for HochschildComplex<C> {
    type Elem = ChainOf<C>;

    fn name(&self) -> String {
        format!("Hoch[{}]", self.kind.label())
    }

    fn b(&self, x: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        HochschildComplex::b(self, x)
    }

    fn big_b(&self, x: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        self.apply_terms(x, |w| self.w_big_b(w))
    }

    /// One or two words of weight at most `max_weight` with random Q(u)
    /// coefficients. Two-word samples share a parity.
    fn sample(&self, rng: &mut ChaCha8Rng) -> ChainOf<C> {
        let top = self.sampling.max_weight.min(self.window);
        let mut out = self.zero();
        let n = rng.random_range(0..=top);
        let first = self.random_word(rng, n);
        let p = word_parity(&first);
        out.add_word(first, random_ratfunc(rng));
        if rng.random_bool(0.5) {
            for _ in 0..8 {
                let n = rng.random_range(0..=top);
                let w = self.random_word(rng, n);
                if word_parity(&w) == p {
                    out.add_word(w, random_ratfunc(rng));
                    break;
                }
            }
        }
        out
    }

    fn render(&self, x: &ChainOf<C>) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(w, c)| format!("({c})*{}", self.render_word(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<C: CdgCategory> UConnection for HochschildComplex<C> {
    fn connection_part(&self, x: &ChainOf<C>) -> Result<ChainOf<C>, OpError> {
        self.connection(x)
    }
}
