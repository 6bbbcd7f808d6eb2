use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::exactla::{q, Q};

/// A word in the generators of a free algebra, stored as generator indices.
/// The empty word is the unit.
pub type Word = SmallVec<[u16; 8]>;

/// Sparse rational combination of words. Iteration order is the order of
/// `Word`, which keeps all printed output deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<Word, Q>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::word(Word::new())
    }

    pub fn word(w: Word) -> Self {
        Element::term(w, Q::one())
    }

    pub fn term(w: Word, c: Q) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn letter(g: u16) -> Self {
        Element::word(smallvec::smallvec![g])
    }

    pub fn scalar(c: Q) -> Self {
        Element::term(Word::new(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Q)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), c * x);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[u16]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Q) -> Element {
        let mut e = Element::zero();
        e.add_scaled(c, self);
        e
    }

    /// Letters used by any term.
    pub fn max_letter(&self) -> Option<u16> {
        self.terms.keys().flat_map(|w| w.iter().copied()).max()
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> Element {
        Element { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    pub fn map_words(&self, mut f: impl FnMut(&Word) -> (Word, Q)) -> Element {
        let mut e = Element::zero();
        for (w, c) in &self.terms {
            let (w2, s) = f(w);
            e.add_term(w2, s * c);
        }
        e
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(&Q::one(), rhs);
        e
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(&q(-1), rhs);
        e
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scaled(&q(-1))
    }
}

/// Concatenation product, extended bilinearly.
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut e = Element::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                e.add_term(w, x * y);
            }
        }
        e
    }
}
