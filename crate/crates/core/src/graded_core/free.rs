use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::{sign, Element, Generator, Word};
use crate::error::{Error, Result};
use crate::exactla::{q, Q};

/// Free graded algebra on finitely many generators with a differential given
/// on generators and extended by the graded Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeDGAlgebra {
    gens: Vec<Generator>,
    diff: Vec<Element>,
    index: BTreeMap<String, u16>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquaredReport {
    /// First generator (in table order) with `d(d g) != 0`, and that value.
    pub failure: Option<(u16, Element)>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl FreeDGAlgebra {
    /// Validates names, homogeneity of the differential and `d^2 = 0`.
    pub fn new(gens: Vec<Generator>, diff_rules: Vec<(u16, Element)>) -> Result<Self> {
        let alg = Self::new_unverified(gens, diff_rules)?;
        if let Some((g, dd)) = alg.check_d_squared().failure {
            return Err(Error::InvalidAlgebra(format!(
                "d^2({}) = {} is nonzero",
                alg.gens[g as usize].name,
                alg.format(&dd)
            )));
        }
        Ok(alg)
    }

    /// Like [`FreeDGAlgebra::new`] but without the `d^2 = 0` check.
    pub fn new_unverified(gens: Vec<Generator>, diff_rules: Vec<(u16, Element)>) -> Result<Self> {
        if gens.len() > u16::MAX as usize {
            return Err(Error::InvalidAlgebra("too many generators".into()));
        }
        let mut index = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.name.clone(), i as u16).is_some() {
                return Err(Error::InvalidAlgebra(format!("duplicate generator name {}", g.name)));
            }
        }
        let mut diff = vec![Element::zero(); gens.len()];
        for (g, e) in diff_rules {
            let gi = g as usize;
            if gi >= gens.len() {
                return Err(Error::MixedAlgebras(format!("differential rule for unknown generator {g}")));
            }
            if let Some(m) = e.max_letter() {
                if m as usize >= gens.len() {
                    return Err(Error::MixedAlgebras(format!("d({}) uses unknown letter {m}", gens[gi].name)));
                }
            }
            diff[gi] = e;
        }
        let alg = FreeDGAlgebra { gens, diff, index };
        for (i, g) in alg.gens.iter().enumerate() {
            for (w, _) in alg.diff[i].terms() {
                if alg.word_degree(w) != g.degree - 1 || alg.word_weight(w) != g.weight {
                    return Err(Error::InvalidAlgebra(format!(
                        "d({}) has a term {} of degree {} and weight {}, expected {} and {}",
                        g.name,
                        alg.format_word(w),
                        alg.word_degree(w),
                        alg.word_weight(w),
                        g.degree - 1,
                        g.weight
                    )));
                }
            }
        }
        Ok(alg)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, name: &str) -> Option<u16> {
        self.index.get(name).copied()
    }

    pub fn gen_degree(&self, g: u16) -> i64 {
        self.gens[g as usize].degree
    }

    pub fn diff_rule(&self, g: u16) -> &Element {
        &self.diff[g as usize]
    }

    pub fn word_degree(&self, w: &[u16]) -> i64 {
        w.iter().map(|&g| self.gens[g as usize].degree).sum()
    }

    pub fn word_weight(&self, w: &[u16]) -> u32 {
        w.iter().map(|&g| self.gens[g as usize].weight).sum()
    }

    pub fn letter(&self, name: &str) -> Option<Element> {
        self.generator(name).map(Element::letter)
    }

    /// Rejects elements that use letters outside this algebra.
    pub fn check_element(&self, e: &Element) -> Result<()> {
        match e.max_letter() {
            Some(m) if m as usize >= self.gens.len() => Err(Error::MixedAlgebras(format!(
                "letter {m} not among the {} generators",
                self.gens.len()
            ))),
            _ => Ok(()),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(a * b)
    }

    /// Extends `f` (given on generators, of degree `k`) to a derivation:
    /// `D(uv) = D(u) v + (-1)^{k|u|} u D(v)`.
    pub fn derivation(&self, e: &Element, k: i64, f: impl Fn(u16) -> Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let mut prefix_deg = 0i64;
            for (i, &g) in w.iter().enumerate() {
                let dg = f(g);
                if !dg.is_zero() {
                    let s = q(sign(k * prefix_deg));
                    let pre = Element::word(w[..i].into());
                    let post = Element::word(w[i + 1..].into());
                    out.add_scaled(&(c * s), &(&(&pre * &dg) * &post));
                }
                prefix_deg += self.gen_degree(g);
            }
        }
        out
    }

    pub fn apply_differential(&self, e: &Element) -> Element {
        self.derivation(e, -1, |g| self.diff[g as usize].clone())
    }

    pub fn check_d_squared(&self) -> DSquaredReport {
        for g in 0..self.gens.len() as u16 {
            let dd = self.apply_differential(&self.diff[g as usize]);
            if !dd.is_zero() {
                return DSquaredReport { failure: Some((g, dd)) };
            }
        }
        DSquaredReport { failure: None }
    }

    /// All words of the given degree and weight, in lexicographic order of
    /// generator indices.
    pub fn slice_basis(&self, degree: i64, weight: u32) -> Result<Vec<Word>> {
        if let Some(g) = self.gens.iter().find(|g| g.weight == 0) {
            return Err(Error::InfiniteSlice { degree, weight, generator: g.name.clone() });
        }
        Ok(self.words_of_weight(weight).into_iter().filter(|w| self.word_degree(w) == degree).collect())
    }

    /// All words of exactly this weight, any degree. Generators must have
    /// positive weight.
    pub fn words_of_weight(&self, weight: u32) -> Vec<Word> {
        assert!(self.gens.iter().all(|g| g.weight > 0), "weight-0 generator");
        let mut out = Vec::new();
        let mut cur = Word::new();
        self.extend_words(weight, &mut cur, &mut out);
        out
    }

    fn extend_words(&self, remaining: u32, cur: &mut Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, g) in self.gens.iter().enumerate() {
            if g.weight <= remaining {
                cur.push(i as u16);
                self.extend_words(remaining - g.weight, cur, out);
                cur.pop();
            }
        }
    }

    /// Splits `e` into its (degree, weight)-homogeneous components.
    pub fn homogeneous_parts(&self, e: &Element) -> BTreeMap<(i64, u32), Element> {
        let mut parts: BTreeMap<(i64, u32), Element> = BTreeMap::new();
        for (w, c) in e.terms() {
            parts
                .entry((self.word_degree(w), self.word_weight(w)))
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        parts
    }

    fn single_char_names(&self) -> bool {
        self.gens.iter().all(|g| g.name.chars().count() == 1)
    }

    pub fn format_word(&self, w: &[u16]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let sep = if self.single_char_names() { "" } else { "*" };
        // Collapse runs into powers for readability: x^2y rather than xxy.
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.gens[w[i] as usize].name;
            if j - i == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join(sep)
    }

    pub fn format(&self, e: &Element) -> String {
        format_terms(e.terms().map(|(w, c)| (self.format_word(w), c.clone())))
    }
}

/// Renders `c1*m1 + c2*m2 - ...`, omitting unit coefficients. The monomial
/// "1" is printed as the bare coefficient.
pub fn format_terms<I: IntoIterator<Item = (String, Q)>>(terms: I) -> String {
    let mut s = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let neg = c < Q::zero();
        let a = if neg { -c } else { c };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if m == "1" {
            let _ = write!(s, "{a}");
        } else if a.is_one() {
            s.push_str(&m);
        } else {
            let _ = write!(s, "{a}*{m}");
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
