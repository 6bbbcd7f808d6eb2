//! Commutator quotients `A♮ = A/[A,A]` and `FT(A) = A/(k·1 + [A,A])` in
//! cyclic-word normal form, the bracket induced by a double bracket, and the
//! homology of the quotient complexes.

mod forms;
mod lie;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

pub use lie::{natural_lie_suite, LieFamily, LieReport};
pub use forms::{
    abelianize, commutative_bracket, form_to_class, kxy_letters, poly_to_class, Form1, KxyLetters, Poly2,
};

use crate::cobar_bracket::CobarAlgebra;
use crate::cyclic_coalgebra::Mutation;
use crate::error::{Error, Result};
use crate::exactla::{homology_slice, q, Homology, RatMatrix, SparseVec, Q};
use crate::graded_core::{format_terms, sign, Element, FreeDGAlgebra, Word};

/// How words are identified: `reduced` kills the unit; `koszul` applies the
/// Koszul sign when rotating (turning it off is a deliberate corruption).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub reduced: bool,
    pub koszul: bool,
}

impl Mode {
    pub fn natural() -> Self {
        Mode { reduced: false, koszul: true }
    }

    pub fn reduced() -> Self {
        Mode { reduced: true, koszul: true }
    }

    pub fn with_reduced(reduced: bool) -> Self {
        Mode { reduced, koszul: true }
    }
}

/// A class in `A♮` (or `FT(A)` when `reduced`), stored on canonical words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NaturalElement {
    terms: BTreeMap<Word, Q>,
    reduced: bool,
}

impl NaturalElement {
    pub fn zero(reduced: bool) -> Self {
        NaturalElement { terms: BTreeMap::new(), reduced }
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    /// Adds a term on a word already in canonical form.
    pub fn add_canonical(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &NaturalElement) {
        for (w, x) in &other.terms {
            self.add_canonical(w.clone(), c * x);
        }
    }

    pub fn scaled(&self, c: &Q) -> NaturalElement {
        let mut out = NaturalElement::zero(self.reduced);
        out.add_scaled(c, self);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[u16]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
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

    /// The canonical words themselves, as an element of the algebra.
    pub fn lift(&self) -> Element {
        Element::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }
}

/// Lexicographically least rotation of `w` with the accumulated Koszul sign,
/// or `None` if the class is zero: the word rotates onto itself with sign
/// -1, or it is the unit in the reduced quotient.
pub fn canonical_rotation(alg: &FreeDGAlgebra, w: &[u16], mode: Mode) -> Option<(i64, Word)> {
    if w.is_empty() {
        return if mode.reduced { None } else { Some((1, Word::new())) };
    }
    let n = w.len();
    let total = alg.word_degree(w);
    let mut best: Option<(Word, i64)> = None;
    let mut conflict = false;
    let mut head = 0i64;
    for r in 0..n {
        // w = AB with |A| = head; AB ~ (-1)^{|A||B|} BA
        let s = if mode.koszul { sign(head * (total - head)) } else { 1 };
        let mut rot: Word = w[r..].into();
        rot.extend_from_slice(&w[..r]);
        match &best {
            Some((b, bs)) if *b == rot => {
                if *bs != s {
                    conflict = true;
                }
            }
            Some((b, _)) if *b < rot => {}
            _ => {
                best = Some((rot, s));
                conflict = false;
            }
        }
        head += alg.gen_degree(w[r]);
    }
    let (word, s) = best.unwrap();
    if conflict {
        None
    } else {
        Some((s, word))
    }
}

pub fn project_with(alg: &FreeDGAlgebra, e: &Element, mode: Mode) -> NaturalElement {
    let mut out = NaturalElement::zero(mode.reduced);
    for (w, c) in e.terms() {
        if let Some((s, cw)) = canonical_rotation(alg, w, mode) {
            out.add_canonical(cw, q(s) * c);
        }
    }
    out
}

pub fn project_natural(alg: &FreeDGAlgebra, e: &Element, reduced: bool) -> NaturalElement {
    project_with(alg, e, Mode::with_reduced(reduced))
}

pub fn natural_differential(alg: &FreeDGAlgebra, ne: &NaturalElement) -> NaturalElement {
    project_natural(alg, &alg.apply_differential(&ne.lift()), ne.reduced)
}

/// `μ ∘ {{a, b}}`.
pub fn induced_bracket(alg: &CobarAlgebra, a: &Element, b: &Element) -> Element {
    alg.multiply_out(&alg.double_bracket(a, b))
}

impl CobarAlgebra {
    /// Quotient conventions of this algebra, including any rotation mutation.
    pub fn mode(&self, reduced: bool) -> Mode {
        Mode { reduced, koszul: self.mutation() != Some(Mutation::RotationSign) }
    }

    pub fn project(&self, e: &Element, reduced: bool) -> NaturalElement {
        project_with(self.algebra(), e, self.mode(reduced))
    }

    pub fn format_natural(&self, ne: &NaturalElement) -> String {
        format_terms(ne.terms().map(|(w, c)| (format!("[{}]", self.algebra().format_word(w)), c.clone())))
    }
}

pub fn natural_bracket(alg: &CobarAlgebra, a: &NaturalElement, b: &NaturalElement) -> NaturalElement {
    alg.project(&induced_bracket(alg, &a.lift(), &b.lift()), a.reduced || b.reduced)
}

/// One `(degree, weight)` slice of the quotient complex.
#[derive(Clone, Debug)]
pub struct NaturalSlice {
    pub degree: i64,
    pub weight: u32,
    pub basis: Vec<Word>,
    index: BTreeMap<Word, usize>,
}

impl NaturalSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, w: &[u16]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Coordinates of a natural element supported on this slice.
    pub fn coordinates(&self, ne: &NaturalElement) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (w, c) in ne.terms() {
            v.insert(self.position(w)?, c.clone());
        }
        Some(v)
    }

    pub fn element(&self, v: &SparseVec, reduced: bool) -> NaturalElement {
        let mut out = NaturalElement::zero(reduced);
        for (i, c) in v {
            out.add_canonical(self.basis[*i].clone(), c.clone());
        }
        out
    }
}

/// Homology of one slice, with representatives as natural elements.
#[derive(Clone, Debug)]
pub struct SliceHomology {
    pub slice: Arc<NaturalSlice>,
    pub homology: Homology,
    pub representatives: Vec<NaturalElement>,
}

impl SliceHomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

/// A class in the homology of a slice, by coordinates in the representative
/// basis, together with the representative it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: i64,
    pub weight: u32,
    pub coordinates: Vec<Q>,
    pub representative: NaturalElement,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|c| c.is_zero())
    }
}

/// The quotient complex of a weight-graded free DG algebra, with slices and
/// their homology computed on demand and cached.
pub struct NaturalComplex<'a> {
    alg: &'a FreeDGAlgebra,
    mode: Mode,
    words: Mutex<BTreeMap<u32, Arc<Vec<Word>>>>,
    slices: Mutex<BTreeMap<(i64, u32), Arc<NaturalSlice>>>,
    homology: Mutex<BTreeMap<(i64, u32), Arc<SliceHomology>>>,
}

impl<'a> NaturalComplex<'a> {
    pub fn new(alg: &'a FreeDGAlgebra, mode: Mode) -> Result<Self> {
        if let Some(g) = alg.generators().iter().find(|g| g.weight == 0) {
            return Err(Error::InfiniteSlice { degree: g.degree, weight: 0, generator: g.name.clone() });
        }
        Ok(NaturalComplex {
            alg,
            mode,
            words: Mutex::new(BTreeMap::new()),
            slices: Mutex::new(BTreeMap::new()),
            homology: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn for_cobar(alg: &'a CobarAlgebra, reduced: bool) -> Result<Self> {
        Self::new(alg.algebra(), alg.mode(reduced))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn algebra(&self) -> &FreeDGAlgebra {
        self.alg
    }

    fn words(&self, weight: u32) -> Arc<Vec<Word>> {
        if let Some(w) = self.words.lock().unwrap().get(&weight) {
            return w.clone();
        }
        let ws = Arc::new(self.alg.words_of_weight(weight));
        self.words.lock().unwrap().insert(weight, ws.clone());
        ws
    }

    pub fn slice(&self, degree: i64, weight: u32) -> Arc<NaturalSlice> {
        if let Some(s) = self.slices.lock().unwrap().get(&(degree, weight)) {
            return s.clone();
        }
        let mut set = std::collections::BTreeSet::new();
        for w in self.words(weight).iter() {
            if self.alg.word_degree(w) == degree {
                if let Some((_, cw)) = canonical_rotation(self.alg, w, self.mode) {
                    set.insert(cw);
                }
            }
        }
        let basis: Vec<Word> = set.into_iter().collect();
        let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let s = Arc::new(NaturalSlice { degree, weight, basis, index });
        self.slices.lock().unwrap().insert((degree, weight), s.clone());
        s
    }

    pub fn project(&self, e: &Element) -> NaturalElement {
        project_with(self.alg, e, self.mode)
    }

    /// Matrix of the differential from the `(degree, weight)` slice to the
    /// `(degree - 1, weight)` slice.
    pub fn differential_matrix(&self, degree: i64, weight: u32) -> RatMatrix {
        let src = self.slice(degree, weight);
        let dst = self.slice(degree - 1, weight);
        let mut m = RatMatrix::zero(dst.dim(), src.dim());
        for (j, w) in src.basis.iter().enumerate() {
            let img = self.project(&self.alg.apply_differential(&Element::word(w.clone())));
            for (tw, c) in img.terms() {
                let i = dst.position(tw).expect("differential preserves weight and lowers degree");
                m.add_to(i, j, c);
            }
        }
        m
    }

    pub fn homology(&self, degree: i64, weight: u32) -> Result<Arc<SliceHomology>> {
        if let Some(h) = self.homology.lock().unwrap().get(&(degree, weight)) {
            return Ok(h.clone());
        }
        let d_in = self.differential_matrix(degree + 1, weight);
        let d_out = self.differential_matrix(degree, weight);
        let homology = homology_slice(&d_in, &d_out)?;
        let slice = self.slice(degree, weight);
        let representatives = homology.representatives.iter().map(|v| slice.element(v, self.mode.reduced)).collect();
        let h = Arc::new(SliceHomology { slice, homology, representatives });
        self.homology.lock().unwrap().insert((degree, weight), h.clone());
        Ok(h)
    }

    /// Degree and weight of a nonzero homogeneous natural element.
    pub fn bidegree(&self, ne: &NaturalElement) -> Option<(i64, u32)> {
        let (w, _) = ne.terms().next()?;
        let bd = (self.alg.word_degree(w), self.alg.word_weight(w));
        ne.terms().all(|(w2, _)| (self.alg.word_degree(w2), self.alg.word_weight(w2)) == bd).then_some(bd)
    }

    /// The homology class of a cycle in a given slice.
    pub fn class_of(&self, degree: i64, weight: u32, ne: &NaturalElement) -> Result<HomologyClass> {
        let h = self.homology(degree, weight)?;
        let v = h.slice.coordinates(ne).ok_or(Error::NotACycle)?;
        let coordinates = h.homology.class_of(&v)?;
        Ok(HomologyClass { degree, weight, coordinates, representative: ne.clone() })
    }
}

pub fn natural_slice_homology(alg: &FreeDGAlgebra, degree: i64, weight: u32, reduced: bool) -> Result<SliceHomology> {
    let c = NaturalComplex::new(alg, Mode::with_reduced(reduced))?;
    Ok((*c.homology(degree, weight)?).clone())
}

/// Bracket of two homology classes given by cycle representatives: the
/// representatives are bracketed and the result is located in homology.
pub fn homology_bracket(
    alg: &CobarAlgebra,
    complex: &NaturalComplex<'_>,
    a: &NaturalElement,
    b: &NaturalElement,
) -> Result<HomologyClass> {
    for x in [a, b] {
        if !natural_differential_in(complex, x).is_zero() {
            return Err(Error::NotACycle);
        }
    }
    let r = complex.project(&induced_bracket(alg, &a.lift(), &b.lift()));
    let (da, wa) = complex.bidegree(a).unwrap_or((0, 0));
    let (db, wb) = complex.bidegree(b).unwrap_or((0, 0));
    let degree = da + db + alg.bracket_degree();
    let weight = (wa + wb).checked_sub(alg.pairing_weight());
    match weight {
        Some(weight) if !a.is_zero() && !b.is_zero() => complex.class_of(degree, weight, &r),
        _ => Ok(HomologyClass { degree, weight: 0, coordinates: Vec::new(), representative: r }),
    }
}

fn natural_differential_in(complex: &NaturalComplex<'_>, ne: &NaturalElement) -> NaturalElement {
    complex.project(&complex.alg.apply_differential(&ne.lift()))
}

/// `(-1)^{(|a|+N)(|b|+N)}` style signs for the Lie axioms on `A♮`.
pub fn lie_sign(da: i64, db: i64, n: i64) -> Q {
    q(sign((da + n) * (db + n)))
}
