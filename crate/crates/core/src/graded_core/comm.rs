use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::free::format_terms;
use super::{is_odd, sign, Generator};
use crate::error::{Error, Result};
use crate::exactla::{q, Q};

/// Monomial in a graded-commutative algebra: `(generator, exponent)` pairs
/// sorted by generator index, exponents positive, odd generators at most once.
pub type CommMonomial = SmallVec<[(u32, u32); 6]>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommElement {
    terms: BTreeMap<CommMonomial, Q>,
}

impl CommElement {
    pub fn zero() -> Self {
        CommElement::default()
    }

    pub fn one() -> Self {
        CommElement::scalar(Q::one())
    }

    pub fn scalar(c: Q) -> Self {
        let mut e = CommElement::zero();
        e.add_term(CommMonomial::new(), c);
        e
    }

    pub fn generator(g: u32) -> Self {
        let mut e = CommElement::zero();
        e.add_term(smallvec::smallvec![(g, 1)], Q::one());
        e
    }

    /// Adds a term whose monomial is assumed canonical.
    pub fn add_term(&mut self, m: CommMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &CommElement) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn scaled(&self, c: &Q) -> CommElement {
        let mut e = CommElement::zero();
        e.add_scaled(c, self);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CommMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &CommMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for &CommElement {
    type Output = CommElement;
    fn add(self, rhs: &CommElement) -> CommElement {
        let mut e = self.clone();
        e.add_scaled(&Q::one(), rhs);
        e
    }
}

impl Sub for &CommElement {
    type Output = CommElement;
    fn sub(self, rhs: &CommElement) -> CommElement {
        let mut e = self.clone();
        e.add_scaled(&q(-1), rhs);
        e
    }
}

impl Neg for &CommElement {
    type Output = CommElement;
    fn neg(self) -> CommElement {
        self.scaled(&q(-1))
    }
}

/// Graded-commutative polynomial DG algebra on finitely many generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    gens: Vec<Generator>,
    diff: Vec<CommElement>,
}

impl CommAlgebra {
    pub fn new(gens: Vec<Generator>, diff: Vec<CommElement>) -> Result<Self> {
        if diff.len() != gens.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} differential rules for {} generators",
                diff.len(),
                gens.len()
            )));
        }
        let alg = CommAlgebra { gens, diff };
        for (i, g) in alg.gens.iter().enumerate() {
            for (m, _) in alg.diff[i].terms() {
                if alg.degree(m) != g.degree - 1 || alg.weight(m) != g.weight {
                    return Err(Error::InvalidAlgebra(format!(
                        "d({}) is not homogeneous of degree {} and weight {}",
                        g.name,
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

    pub fn diff_rule(&self, g: u32) -> &CommElement {
        &self.diff[g as usize]
    }

    pub fn gen_degree(&self, g: u32) -> i64 {
        self.gens[g as usize].degree
    }

    pub fn degree(&self, m: &CommMonomial) -> i64 {
        m.iter().map(|&(g, e)| self.gens[g as usize].degree * e as i64).sum()
    }

    pub fn weight(&self, m: &CommMonomial) -> u32 {
        m.iter().map(|&(g, e)| self.gens[g as usize].weight * e).sum()
    }

    fn odd(&self, g: u32) -> bool {
        is_odd(self.gens[g as usize].degree)
    }

    /// Canonical form of the ordered product of `factors`: the Koszul sign of
    /// sorting them, or `None` when an odd generator repeats.
    pub fn monomial_from_factors(&self, factors: &[u32]) -> Option<(i64, CommMonomial)> {
        let mut parity = 0i64;
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if factors[i] > factors[j] && self.odd(factors[i]) && self.odd(factors[j]) {
                    parity += 1;
                }
            }
        }
        let mut sorted = factors.to_vec();
        sorted.sort_unstable();
        let mut m = CommMonomial::new();
        for g in sorted {
            match m.last_mut() {
                Some((h, e)) if *h == g => {
                    if self.odd(g) {
                        return None;
                    }
                    *e += 1;
                }
                _ => m.push((g, 1)),
            }
        }
        Some((sign(parity), m))
    }

    /// Flat factor list of a canonical monomial.
    pub fn factors(m: &CommMonomial) -> Vec<u32> {
        m.iter().flat_map(|&(g, e)| std::iter::repeat(g).take(e as usize)).collect()
    }

    pub fn mul_monomials(&self, a: &CommMonomial, b: &CommMonomial) -> Option<(i64, CommMonomial)> {
        let mut parity = 0i64;
        for &(h, _) in b.iter().filter(|(h, _)| self.odd(*h)) {
            for &(g, _) in a.iter().filter(|(g, _)| self.odd(*g)) {
                if g == h {
                    return None;
                }
                if g > h {
                    parity += 1;
                }
            }
        }
        let mut m = CommMonomial::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                m.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                m.push(b[j]);
                j += 1;
            } else {
                m.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((sign(parity), m))
    }

    pub fn comm_multiply(&self, a: &CommElement, b: &CommElement) -> CommElement {
        let mut out = CommElement::zero();
        for (ma, x) in a.terms() {
            for (mb, y) in b.terms() {
                if let Some((s, m)) = self.mul_monomials(ma, mb) {
                    out.add_term(m, q(s) * x * y);
                }
            }
        }
        out
    }

    pub fn product(&self, factors: &[CommElement]) -> CommElement {
        factors.iter().fold(CommElement::one(), |acc, f| self.comm_multiply(&acc, f))
    }

    /// Rebuilds `e` term by term through [`CommAlgebra::monomial_from_factors`].
    pub fn normalize(&self, e: &CommElement) -> CommElement {
        let mut out = CommElement::zero();
        for (m, c) in e.terms() {
            if let Some((s, m2)) = self.monomial_from_factors(&Self::factors(m)) {
                out.add_term(m2, q(s) * c);
            }
        }
        out
    }

    /// Extends `f` (values on generators, degree `k`) to a derivation with
    /// `D(ab) = D(a) b + (-1)^{k|a|} a D(b)`.
    pub fn derivation(&self, e: &CommElement, k: i64, f: impl Fn(u32) -> CommElement) -> CommElement {
        let mut out = CommElement::zero();
        for (m, c) in e.terms() {
            let fs = Self::factors(m);
            let mut prefix_deg = 0i64;
            for i in 0..fs.len() {
                // Equal even factors contribute identical terms.
                if i > 0 && fs[i] == fs[i - 1] && !self.odd(fs[i]) {
                    prefix_deg += self.gen_degree(fs[i]);
                    continue;
                }
                let mult = fs[i..].iter().take_while(|&&g| g == fs[i]).count() as i64;
                let dg = f(fs[i]);
                if !dg.is_zero() {
                    let pre = self.monomial_from_factors(&fs[..i]).expect("canonical prefix");
                    let post = self.monomial_from_factors(&fs[i + 1..]).expect("canonical suffix");
                    let mut pre_e = CommElement::zero();
                    pre_e.add_term(pre.1, q(pre.0));
                    let mut post_e = CommElement::zero();
                    post_e.add_term(post.1, q(post.0));
                    let term = self.comm_multiply(&self.comm_multiply(&pre_e, &dg), &post_e);
                    out.add_scaled(&(c * q(mult * sign(k * prefix_deg))), &term);
                }
                prefix_deg += self.gen_degree(fs[i]);
            }
        }
        out
    }

    pub fn apply_differential(&self, e: &CommElement) -> CommElement {
        self.derivation(e, -1, |g| self.diff[g as usize].clone())
    }

    pub fn check_d_squared(&self) -> Option<u32> {
        (0..self.gens.len() as u32).find(|&g| !self.apply_differential(&self.diff[g as usize]).is_zero())
    }

    /// Monomials of the given degree and weight, in increasing canonical order.
    pub fn slice_basis(&self, degree: i64, weight: u32) -> Result<Vec<CommMonomial>> {
        if let Some(g) = self.gens.iter().find(|g| g.weight == 0) {
            return Err(Error::InfiniteSlice { degree, weight, generator: g.name.clone() });
        }
        let mut out = Vec::new();
        let mut cur = CommMonomial::new();
        self.extend(0, weight, degree, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    fn extend(&self, from: usize, weight: u32, degree: i64, cur: &mut CommMonomial, out: &mut Vec<CommMonomial>) {
        if weight == 0 {
            if degree == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for g in from..self.gens.len() {
            let gen = &self.gens[g];
            let max_e = if is_odd(gen.degree) { 1 } else { weight / gen.weight };
            for e in 1..=max_e {
                if gen.weight * e > weight {
                    break;
                }
                cur.push((g as u32, e));
                self.extend(g + 1, weight - gen.weight * e, degree - gen.degree * e as i64, cur, out);
                cur.pop();
            }
        }
    }

    pub fn format_monomial(&self, m: &CommMonomial) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|&(g, e)| {
                let n = &self.gens[g as usize].name;
                if e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn format(&self, e: &CommElement) -> String {
        format_terms(e.terms().map(|(m, c)| (self.format_monomial(m), c.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alg() -> CommAlgebra {
        // u, v even; theta, eta odd; d(theta) = u v, d(eta) = u^2.
        let gens = vec![
            Generator::new("u", 0, 1),
            Generator::new("v", 0, 1),
            Generator::new("theta", 1, 2),
            Generator::new("eta", 1, 2),
        ];
        let base = CommAlgebra::new(gens.clone(), vec![CommElement::zero(); 4]).unwrap();
        let uv = base.comm_multiply(&CommElement::generator(0), &CommElement::generator(1));
        let uu = base.comm_multiply(&CommElement::generator(0), &CommElement::generator(0));
        CommAlgebra::new(gens, vec![CommElement::zero(), CommElement::zero(), uv, uu]).unwrap()
    }

    #[test]
    fn graded_commutativity() {
        let a = alg();
        let [u, v, th, eta] = [0, 1, 2, 3].map(CommElement::generator);
        assert!(a.comm_multiply(&th, &th).is_zero());
        assert_eq!(a.comm_multiply(&u, &v), a.comm_multiply(&v, &u));
        assert_eq!(a.comm_multiply(&th, &eta), -&a.comm_multiply(&eta, &th));
        assert_eq!(a.format(&a.comm_multiply(&eta, &th)), "-theta*eta");
    }

    #[test]
    fn differential_squares_to_zero() {
        let a = alg();
        assert_eq!(a.check_d_squared(), None);
        let th_eta = a.comm_multiply(&CommElement::generator(2), &CommElement::generator(3));
        assert!(a.apply_differential(&a.apply_differential(&th_eta)).is_zero());
    }

    #[test]
    fn slice_enumeration() {
        let a = alg();
        assert_eq!(a.slice_basis(0, 2).unwrap().len(), 3);
        assert_eq!(a.slice_basis(1, 3).unwrap().len(), 4);
        assert_eq!(a.slice_basis(2, 4).unwrap().len(), 1);
        assert!(a.slice_basis(3, 6).unwrap().is_empty());
    }

    fn comm_element() -> impl Strategy<Value = CommElement> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, 0..4), -3i64..=3), 0..4).prop_map(|ts| {
            let a = alg();
            let mut e = CommElement::zero();
            for (fs, c) in ts {
                if let Some((s, m)) = a.monomial_from_factors(&fs) {
                    e.add_term(m, q(s * c));
                }
            }
            e
        })
    }

    fn homogeneous_parts(a: &CommAlgebra, e: &CommElement) -> Vec<(i64, CommElement)> {
        let mut parts: BTreeMap<i64, CommElement> = BTreeMap::new();
        for (m, c) in e.terms() {
            parts.entry(a.degree(m)).or_default().add_term(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    proptest! {
        #[test]
        fn normalization_idempotent(e in comm_element()) {
            let a = alg();
            prop_assert_eq!(a.normalize(&e), e.clone());
            prop_assert_eq!(a.normalize(&a.normalize(&e)), a.normalize(&e));
        }

        #[test]
        fn commutativity_and_associativity(x in comm_element(), y in comm_element(), z in comm_element()) {
            let a = alg();
            prop_assert_eq!(
                a.comm_multiply(&a.comm_multiply(&x, &y), &z),
                a.comm_multiply(&x, &a.comm_multiply(&y, &z))
            );
            for (dx, px) in homogeneous_parts(&a, &x) {
                for (dy, py) in homogeneous_parts(&a, &y) {
                    let lhs = a.comm_multiply(&px, &py);
                    let rhs = a.comm_multiply(&py, &px).scaled(&q(sign(dx * dy)));
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }

        #[test]
        fn differential_is_derivation(x in comm_element(), y in comm_element()) {
            let a = alg();
            for (dx, px) in homogeneous_parts(&a, &x) {
                let lhs = a.apply_differential(&a.comm_multiply(&px, &y));
                let rhs = &a.comm_multiply(&a.apply_differential(&px), &y)
                    + &a.comm_multiply(&px, &a.apply_differential(&y)).scaled(&q(sign(dx)));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
