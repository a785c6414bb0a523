use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactfield::RatFuncU;
use crate::mixedcore::{Element, Parity};

/// One slot of a tensor word: a basis morphism with its parity, or the formal
/// unit e_X, which may only occupy the head slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry<O, M> {
    Unit(O),
    Mor(M, Parity),
}

impl<O, M> Entry<O, M> {
    pub fn parity(&self) -> Parity {
        match self {
            Entry::Unit(_) => Parity::Even,
            Entry::Mor(_, p) => *p,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Entry::Unit(_))
    }

    /// Parity after the shift: |sf| = |f| + 1.
    pub(crate) fn a(&self) -> usize {
        self.parity().bit() ^ 1
    }
}

/// Stored as w[i] = f_i with the head f_n last, so a word of weight n has
/// n + 1 entries.
pub type Word<O, M> = Vec<Entry<O, M>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    /// Hoch: only b_m2 and b_m1.
    First,
    /// Hoch^Π: curvature insertions b_m0, U_m0, V_m0 as well.
    Second,
}

impl ChainKind {
    pub fn label(self) -> &'static str {
        match self {
            ChainKind::First => "first",
            ChainKind::Second => "second",
        }
    }
}

/// A finite Q(u)-linear combination of tensor words of weight at most
/// `window`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct HochChain<O: Ord, M: Ord> {
    pub(crate) terms: BTreeMap<Word<O, M>, RatFuncU>,
    pub(crate) kind: ChainKind,
    pub(crate) window: usize,
}

impl<O: Ord + Clone, M: Ord + Clone> HochChain<O, M> {
    pub fn zero(kind: ChainKind, window: usize) -> Self {
        HochChain { terms: BTreeMap::new(), kind, window }
    }

    pub fn terms(&self) -> &BTreeMap<Word<O, M>, RatFuncU> {
        &self.terms
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest weight occurring, if any.
    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len() - 1).max()
    }

    pub(crate) fn add_word(&mut self, w: Word<O, M>, c: RatFuncU) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn map_coeffs(&self, f: impl Fn(&RatFuncU) -> RatFuncU) -> Self {
        let mut out = Self::zero(self.kind, self.window);
        for (w, c) in &self.terms {
            out.add_word(w.clone(), f(c));
        }
        out
    }
}

/// Parity of a word in the Hochschild complex: Σ|f_i| + n.
pub(crate) fn word_parity<O, M>(w: &[Entry<O, M>]) -> Parity {
    Parity::from_bit(w.iter().map(|e| e.parity().bit()).sum::<usize>() + w.len() - 1)
}

impl<O, M> Element for HochChain<O, M>
where
    O: Ord + Clone + Send + Sync,
    M: Ord + Clone + Send + Sync,
{
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.window = self.window.max(other.window);
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    fn scale(&self, c: &RatFuncU) -> Self {
        self.map_coeffs(|x| x * c)
    }

    fn d_du(&self) -> Self {
        self.map_coeffs(|x| x.d_du())
    }

    fn flip_u(&self) -> Self {
        self.map_coeffs(|x| x.flip())
    }

    fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|w| word_parity(w));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }
}
