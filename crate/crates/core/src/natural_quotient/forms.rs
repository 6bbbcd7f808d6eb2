//! Commutative models for the low homology of `FT(k⟨x,y,t⟩)` with `dt = xy - yx`:
//! degree 0 against `k[x,y]/k`, degree 1 against `Ω¹/dA`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{HomologyClass, NaturalComplex, NaturalElement};
use crate::cobar_bracket::CobarAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{q, solve, RatMatrix, SparseVec, Q};
use crate::graded_core::{format_terms, Element, Word};

/// Polynomial in commuting `x, y`, keyed by exponents `(a, b)`.
pub type Poly2 = BTreeMap<(u32, u32), Q>;

fn poly_add(p: &mut Poly2, k: (u32, u32), c: Q) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(k).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&k);
    }
}

fn partial(p: &Poly2, wrt_x: bool) -> Poly2 {
    let mut out = Poly2::new();
    for (&(a, b), c) in p {
        let e = if wrt_x { a } else { b };
        if e > 0 {
            let k = if wrt_x { (a - 1, b) } else { (a, b - 1) };
            poly_add(&mut out, k, c * q(e as i64));
        }
    }
    out
}

fn poly_mul(f: &Poly2, g: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (&(a, b), c) in f {
        for (&(a2, b2), c2) in g {
            poly_add(&mut out, (a + a2, b + b2), c * c2);
        }
    }
    out
}

/// `{f, g} = f_x g_y - f_y g_x`.
pub fn commutative_bracket(f: &Poly2, g: &Poly2) -> Poly2 {
    let mut out = poly_mul(&partial(f, true), &partial(g, false));
    for (k, c) in poly_mul(&partial(f, false), &partial(g, true)) {
        poly_add(&mut out, k, -c);
    }
    out
}

/// A class in `Ω¹/dA` for `A = k[x,y]`, normalized to `Σ c x^a y^b dx` with
/// `b ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Form1 {
    terms: Poly2,
}

impl Form1 {
    /// The class of `f dx + g dy`.
    pub fn new(f: &Poly2, g: &Poly2) -> Self {
        let mut terms = Poly2::new();
        for (&(a, b), c) in f {
            // x^a dx is exact
            if b > 0 {
                poly_add(&mut terms, (a, b), c.clone());
            }
        }
        // x^a y^b dy ≡ -a/(b+1) x^{a-1} y^{b+1} dx
        for (&(a, b), c) in g {
            if a > 0 {
                poly_add(&mut terms, (a - 1, b + 1), -c * q(a as i64) / q(b as i64 + 1));
            }
        }
        Form1 { terms }
    }

    /// `x^a y^b dx`.
    pub fn monomial_dx(a: u32, b: u32) -> Self {
        Self::new(&Poly2::from([((a, b), q(1))]), &Poly2::new())
    }

    pub fn terms(&self) -> &Poly2 {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut terms = Poly2::new();
        for (k, x) in &self.terms {
            poly_add(&mut terms, *k, c * x);
        }
        Form1 { terms }
    }

    pub fn add(&mut self, other: &Form1) {
        for (k, x) in &other.terms {
            poly_add(&mut self.terms, *k, x.clone());
        }
    }

    /// Weight of `x^a y^b dx`, counting `dx` like `x`.
    pub fn weights(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().map(|(a, b)| a + b + 1)
    }
}

impl std::fmt::Display for Form1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mono = |a: u32, b: u32| {
            let mut s = String::new();
            for (v, e) in [("x", a), ("y", b)] {
                match e {
                    0 => {}
                    1 => s.push_str(v),
                    _ => s.push_str(&format!("{v}^{e}")),
                }
            }
            s + " dx"
        };
        write!(f, "{}", format_terms(self.terms.iter().map(|(&(a, b), c)| (mono(a, b), c.clone()))))
    }
}

/// Positions of `x`, `y`, `t` in a cobar algebra of the plane.
#[derive(Clone, Copy, Debug)]
pub struct KxyLetters {
    pub x: u16,
    pub y: u16,
    pub t: u16,
}

pub fn kxy_letters(alg: &CobarAlgebra) -> Result<KxyLetters> {
    let a = alg.algebra();
    let find = |n: &str| a.generator(n).ok_or_else(|| Error::InvalidAlgebra(format!("no generator named {n}")));
    Ok(KxyLetters { x: find("x")?, y: find("y")?, t: find("t")? })
}

/// Exponents of `x, y` and the number of `t` letters in a word.
fn counts(l: &KxyLetters, w: &[u16]) -> (u32, u32, u32) {
    let mut c = (0, 0, 0);
    for &g in w {
        if g == l.x {
            c.0 += 1;
        } else if g == l.y {
            c.1 += 1;
        } else if g == l.t {
            c.2 += 1;
        }
    }
    c
}

/// Degree-0 abelianization `[w] ↦ x^a y^b`.
pub fn abelianize(l: &KxyLetters, ne: &NaturalElement) -> Result<Poly2> {
    let mut out = Poly2::new();
    for (w, c) in ne.terms() {
        let (a, b, t) = counts(l, w);
        if t != 0 || (a + b) as usize != w.len() {
            return Err(Error::InvalidAlgebra("abelianization expects words in x and y".into()));
        }
        poly_add(&mut out, (a, b), c.clone());
    }
    Ok(out)
}

impl Form1 {
    /// The chain map on words with exactly one `t`:
    /// `[u t] ↦ x^a y^{b+1} dx / (b+1)` where `u` has `a` x's and `b` y's.
    pub fn from_cycle(l: &KxyLetters, ne: &NaturalElement) -> Result<Self> {
        let mut out = Poly2::new();
        for (w, c) in ne.terms() {
            let (a, b, t) = counts(l, w);
            if t != 1 || (a + b + 1) as usize != w.len() {
                return Err(Error::InvalidAlgebra("expected words with a single t".into()));
            }
            poly_add(&mut out, (a, b + 1), c / q(b as i64 + 1));
        }
        Ok(Form1 { terms: out })
    }
}

/// `Σ c [x^a y^b]` in the quotient of `complex`.
pub fn poly_to_class(complex: &NaturalComplex<'_>, l: &KxyLetters, p: &Poly2) -> NaturalElement {
    let mut e = Element::zero();
    for (&(a, b), c) in p {
        let mut w = Word::new();
        w.extend(std::iter::repeat(l.x).take(a as usize));
        w.extend(std::iter::repeat(l.y).take(b as usize));
        e.add_term(w, c.clone());
    }
    complex.project(&e)
}

/// The degree-1 homology class matching a homogeneous form of the given
/// weight, with a cycle representative.
pub fn form_to_class(complex: &NaturalComplex<'_>, l: &KxyLetters, form: &Form1, weight: u32) -> Result<HomologyClass> {
    if form.weights().any(|w| w != weight) {
        return Err(Error::DimensionMismatch(format!("form {form} is not of weight {weight}")));
    }
    let h = complex.homology(1, weight)?;
    let monos: Vec<(u32, u32)> = (0..weight).map(|a| (a, weight - 1 - a)).filter(|&(_, b)| b >= 1).collect();
    let index: BTreeMap<(u32, u32), usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let to_vec = |f: &Form1| -> SparseVec { f.terms.iter().map(|(k, c)| (index[k], c.clone())).collect() };
    let mut cols = Vec::new();
    for r in &h.representatives {
        cols.push(to_vec(&Form1::from_cycle(l, r)?));
    }
    let m = RatMatrix::from_columns(monos.len(), &cols);
    let x = solve(&m, &to_vec(form)).ok_or(Error::NotACycle)?;
    let mut rep = NaturalElement::zero(complex.mode().reduced);
    let mut coordinates = vec![Q::zero(); h.dim()];
    for (i, c) in x {
        rep.add_scaled(&c, &h.representatives[i]);
        coordinates[i] = c;
    }
    Ok(HomologyClass { degree: 1, weight, coordinates, representative: rep })
}
