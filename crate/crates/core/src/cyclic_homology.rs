//! The cyclic bicomplex of a coalgebra: operators `T`, `N`, `b'`, `b` on
//! tensor powers, the cyclic complex `ker(1 - T)`, Hochschild homology, and
//! the comparison with the natural quotient of the cobar construction.
//!
//! Operators are built on cobar words `c̄₁⋯c̄ₙ`, where every sign is a Koszul
//! sign in the shifted grading, and then transported to `C^{⊗n}` by the
//! décalage `(c₁,…,cₙ) ↦ (-1)^{Σ|cᵢ|(n-i)} c̄₁⋯c̄ₙ`. Transported this way the
//! rotation is `T(c₁,…,cₙ) = (-1)^{n-1}(-1)^{|c₁|(|c₂|+…+|cₙ|)}(c₂,…,cₙ,c₁)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::cobar_bracket::{cobar_dg_algebra, Lin};
use crate::cyclic_coalgebra::CyclicCoalgebra;
use crate::error::{Error, Result};
use crate::exactla::{homology_slice, kernel, q, RatMatrix, Subspace};
use crate::graded_core::{sign, Element, FreeDGAlgebra, Word};
use crate::natural_quotient::{Mode, NaturalComplex};

type Chain = Lin<Word>;

/// Elementary tensors of one `(degree, weight)` slice, optionally of a fixed
/// length. The degree is the total degree after shifting each factor down by
/// one, so that it matches the cobar word degree.
#[derive(Clone, Debug)]
pub struct TensorSlice {
    pub length: Option<usize>,
    pub degree: i64,
    pub weight: u32,
    pub basis: Vec<Word>,
    index: BTreeMap<Word, usize>,
}

impl TensorSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, w: &[u16]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// The tensor coalgebra of `C` with the cyclic operators.
#[derive(Clone, Debug)]
pub struct CyclicBicomplex {
    alg: FreeDGAlgebra,
}

impl CyclicBicomplex {
    pub fn new(c: &CyclicCoalgebra) -> Result<Self> {
        if let Some(g) = c.basis().iter().find(|g| g.weight == 0) {
            return Err(Error::InfiniteSlice { degree: g.degree, weight: 0, generator: g.name.clone() });
        }
        Ok(CyclicBicomplex { alg: cobar_dg_algebra(c)? })
    }

    /// The cobar algebra whose words index the tensors.
    pub fn cobar(&self) -> &FreeDGAlgebra {
        &self.alg
    }

    pub fn slice(&self, length: Option<usize>, degree: i64, weight: u32) -> TensorSlice {
        let basis: Vec<Word> = self
            .alg
            .words_of_weight(weight)
            .into_iter()
            .filter(|w| !w.is_empty() && length.is_none_or(|n| w.len() == n) && self.alg.word_degree(w) == degree)
            .collect();
        let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        TensorSlice { length, degree, weight, basis, index }
    }

    /// Degrees occurring among tensors of this weight.
    pub fn degrees(&self, weight: u32) -> BTreeSet<i64> {
        self.alg.words_of_weight(weight).iter().filter(|w| !w.is_empty()).map(|w| self.alg.word_degree(w)).collect()
    }

    fn decalage(&self, w: &[u16]) -> i64 {
        let n = w.len();
        sign(w.iter().enumerate().map(|(i, &g)| (self.alg.gen_degree(g) + 1) * (n - 1 - i) as i64).sum())
    }

    fn rotate(&self, w: &[u16]) -> (i64, Word) {
        let head = self.alg.gen_degree(w[0]);
        let rest = self.alg.word_degree(&w[1..]);
        let mut r: Word = w[1..].into();
        r.push(w[0]);
        (sign(head * rest), r)
    }

    fn t_shifted(&self, w: &[u16]) -> Chain {
        let (s, r) = self.rotate(w);
        Chain::from_iter([(r, q(s))])
    }

    fn n_shifted(&self, w: &[u16]) -> Chain {
        let mut out = Chain::zero();
        let mut cur: Word = w.into();
        let mut s = 1;
        for _ in 0..w.len() {
            out.add_term(cur.clone(), q(s));
            let (s2, r) = self.rotate(&cur);
            s *= s2;
            cur = r;
        }
        out
    }

    fn b_prime_shifted(&self, w: &[u16]) -> Chain {
        self.alg.apply_differential(&Element::word(w.into())).terms().map(|(k, c)| (k.clone(), c.clone())).collect()
    }

    /// `b' + T∘s₁`, where `s₁` splits the first factor: the extra term is
    /// `(c₁'', c₂, …, cₙ, c₁')`.
    fn b_shifted(&self, w: &[u16]) -> Chain {
        let mut out = self.b_prime_shifted(w);
        for (t, c) in self.alg.diff_rule(w[0]).terms() {
            if t.len() != 2 {
                continue;
            }
            let mut split: Word = t.clone();
            split.extend_from_slice(&w[1..]);
            let (s, r) = self.rotate(&split);
            out.add_term(r, q(s) * c);
        }
        out
    }

    fn unshift(&self, w: &[u16], image: Chain) -> Chain {
        let e = self.decalage(w);
        image.map_keys(|k| (k.clone(), q(e * self.decalage(k))))
    }

    /// `N` applied to a cobar word, read back as a tensor: the map
    /// `Ω(C)♮ → ker(1 - T)`.
    pub fn norm_of_word(&self, w: &[u16]) -> Chain {
        self.n_shifted(w).map_keys(|k| (k.clone(), q(self.decalage(k))))
    }

    pub fn t(&self, w: &[u16]) -> Chain {
        self.unshift(w, self.t_shifted(w))
    }

    pub fn n(&self, w: &[u16]) -> Chain {
        self.unshift(w, self.n_shifted(w))
    }

    pub fn b_prime(&self, w: &[u16]) -> Chain {
        self.unshift(w, self.b_prime_shifted(w))
    }

    pub fn b(&self, w: &[u16]) -> Chain {
        self.unshift(w, self.b_shifted(w))
    }

    fn matrix(&self, src: &TensorSlice, dst: &TensorSlice, op: impl Fn(&[u16]) -> Chain) -> RatMatrix {
        let mut m = RatMatrix::zero(dst.dim(), src.dim());
        for (j, w) in src.basis.iter().enumerate() {
            for (k, c) in op(w).terms() {
                if let Some(i) = dst.position(k) {
                    m.add_to(i, j, c);
                }
            }
        }
        m
    }

    pub fn op_t(&self, s: &TensorSlice) -> RatMatrix {
        self.matrix(s, s, |w| self.t(w))
    }

    pub fn op_n(&self, s: &TensorSlice) -> RatMatrix {
        self.matrix(s, s, |w| self.n(w))
    }

    /// `b'` from `src` into `dst`; components landing outside `dst` are
    /// dropped, so pass a length-free target to get the whole operator.
    pub fn op_b_prime(&self, src: &TensorSlice, dst: &TensorSlice) -> RatMatrix {
        self.matrix(src, dst, |w| self.b_prime(w))
    }

    pub fn op_b(&self, src: &TensorSlice, dst: &TensorSlice) -> RatMatrix {
        self.matrix(src, dst, |w| self.b(w))
    }

    /// `ker(1 - T)` inside a slice.
    pub fn invariants(&self, s: &TensorSlice) -> Subspace {
        kernel(&RatMatrix::identity(s.dim()).sub(&self.op_t(s)))
    }

    /// Hochschild homology of the `b`-column at one slice.
    pub fn hochschild_homology(&self, degree: i64, weight: u32) -> Result<usize> {
        let s = self.slice(None, degree, weight);
        let d_in = self.op_b(&self.slice(None, degree + 1, weight), &s);
        let d_out = self.op_b(&s, &self.slice(None, degree - 1, weight));
        Ok(homology_slice(&d_in, &d_out)?.dim())
    }
}

/// One slice of the cyclic complex: the invariant subspace and `b` on it.
#[derive(Clone, Debug)]
pub struct CyclicSlice {
    pub tensors: TensorSlice,
    pub invariants: Subspace,
}

/// `CC(C) = ker(1 - T)` with differential `b`, up to a weight bound.
#[derive(Clone, Debug)]
pub struct CyclicComplex {
    pub bicomplex: CyclicBicomplex,
    pub max_weight: u32,
    slices: BTreeMap<(i64, u32), CyclicSlice>,
}

pub fn cyclic_complex(c: &CyclicCoalgebra, max_weight: u32) -> Result<CyclicComplex> {
    let bicomplex = CyclicBicomplex::new(c)?;
    let mut slices = BTreeMap::new();
    for wt in 1..=max_weight {
        for deg in bicomplex.degrees(wt) {
            let tensors = bicomplex.slice(None, deg, wt);
            let invariants = bicomplex.invariants(&tensors);
            slices.insert((deg, wt), CyclicSlice { tensors, invariants });
        }
    }
    let cc = CyclicComplex { bicomplex, max_weight, slices };
    for &(deg, wt) in cc.slices.keys() {
        let d_out = cc.differential(deg, wt)?;
        let d_next = cc.differential(deg - 1, wt)?;
        let sq = d_next.mul(&d_out);
        if !sq.is_zero() {
            return Err(Error::NotAComplex { rows: sq.rows(), cols: sq.cols() });
        }
    }
    Ok(cc)
}

impl CyclicComplex {
    pub fn slice(&self, degree: i64, weight: u32) -> Option<&CyclicSlice> {
        self.slices.get(&(degree, weight))
    }

    pub fn slices(&self) -> impl Iterator<Item = (&(i64, u32), &CyclicSlice)> {
        self.slices.iter()
    }

    pub fn dim(&self, degree: i64, weight: u32) -> usize {
        self.slice(degree, weight).map_or(0, |s| s.invariants.dim())
    }

    /// `b` restricted to invariants, in their echelon bases.
    pub fn differential(&self, degree: i64, weight: u32) -> Result<RatMatrix> {
        let (Some(src), Some(dst)) = (self.slice(degree, weight), self.slice(degree - 1, weight)) else {
            return Ok(RatMatrix::zero(self.dim(degree - 1, weight), self.dim(degree, weight)));
        };
        let b = self.bicomplex.op_b(&src.tensors, &dst.tensors);
        b.restrict(&src.invariants, &dst.invariants)
            .ok_or_else(|| Error::NotAComplex { rows: dst.invariants.dim(), cols: src.invariants.dim() })
    }

    pub fn homology_dim(&self, degree: i64, weight: u32) -> Result<usize> {
        let d_in = self.differential(degree + 1, weight)?;
        let d_out = self.differential(degree, weight)?;
        Ok(homology_slice(&d_in, &d_out)?.dim())
    }
}

/// Outcome of comparing `Ω(C)♮` with `CC(C)` on one slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceComparison {
    pub degree: i64,
    pub weight: u32,
    pub natural_dim: usize,
    pub cyclic_dim: usize,
    pub map_rank: usize,
    pub lands_in_invariants: bool,
    pub chain_map: bool,
    pub natural_homology: usize,
    pub cyclic_homology: usize,
}

impl SliceComparison {
    pub fn is_isomorphism(&self) -> bool {
        self.natural_dim == self.cyclic_dim && self.map_rank == self.natural_dim && self.lands_in_invariants && self.chain_map
    }

    pub fn passed(&self) -> bool {
        self.is_isomorphism() && self.natural_homology == self.cyclic_homology
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub max_weight: u32,
    pub slices: Vec<SliceComparison>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.slices.iter().all(SliceComparison::passed)
    }

    pub fn first_failure(&self) -> Option<&SliceComparison> {
        self.slices.iter().find(|s| !s.passed())
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slices {
            writeln!(
                f,
                "degree {} weight {}: natural {} cyclic {} rank {} chain-map {} homology {}/{} {}",
                s.degree,
                s.weight,
                s.natural_dim,
                s.cyclic_dim,
                s.map_rank,
                s.chain_map,
                s.natural_homology,
                s.cyclic_homology,
                if s.passed() { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Checks that `N` induces a chain isomorphism `Ω(C)♮ → CC(C)` on every slice
/// of weight `1..=max_weight`, and that homology dimensions agree.
pub fn compare_with_cobar(c: &CyclicCoalgebra, max_weight: u32) -> Result<ComparisonReport> {
    let cc = cyclic_complex(c, max_weight)?;
    let bi = &cc.bicomplex;
    let natural = NaturalComplex::new(bi.cobar(), Mode::natural())?;
    let keys: Vec<(i64, u32)> = cc.slices.keys().copied().collect();
    // warm the natural slices serially; the cache is shared
    for &(deg, wt) in &keys {
        natural.slice(deg, wt);
        natural.slice(deg - 1, wt);
    }
    let psi = |deg: i64, wt: u32| -> RatMatrix {
        let src = natural.slice(deg, wt);
        let dst = bi.slice(None, deg, wt);
        let mut m = RatMatrix::zero(dst.dim(), src.dim());
        for (j, w) in src.basis.iter().enumerate() {
            for (k, x) in bi.norm_of_word(w).terms() {
                m.add_to(dst.position(k).expect("rotation preserves the slice"), j, x);
            }
        }
        m
    };
    let slices: Result<Vec<SliceComparison>> = keys
        .par_iter()
        .map(|&(deg, wt)| {
            let s = cc.slice(deg, wt).unwrap();
            let p = psi(deg, wt);
            let p_lower = psi(deg - 1, wt);
            let lower = bi.slice(None, deg - 1, wt);
            let lhs = p_lower.mul(&natural.differential_matrix(deg, wt));
            let rhs = bi.op_b(&s.tensors, &lower).mul(&p);
            let lands = p.columns().iter().all(|v| s.invariants.contains(v));
            Ok(SliceComparison {
                degree: deg,
                weight: wt,
                natural_dim: natural.slice(deg, wt).dim(),
                cyclic_dim: s.invariants.dim(),
                map_rank: p.rank(),
                lands_in_invariants: lands,
                chain_map: lhs == rhs,
                natural_homology: natural.homology(deg, wt)?.dim(),
                cyclic_homology: cc.homology_dim(deg, wt)?,
            })
        })
        .collect();
    Ok(ComparisonReport { max_weight, slices: slices? })
}

/// `(1 - T)·N` on a slice; zero by telescoping.
pub fn one_minus_t_times_n(bi: &CyclicBicomplex, s: &TensorSlice) -> RatMatrix {
    let t = bi.op_t(s);
    RatMatrix::identity(s.dim()).sub(&t).mul(&bi.op_n(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic_coalgebra::{kxy_coalgebra, KxyVariant};
    use crate::graded_core::Generator;

    fn omega() -> CyclicBicomplex {
        CyclicBicomplex::new(&kxy_coalgebra(KxyVariant::Omega)).unwrap()
    }

    #[test]
    fn length_one_operators() {
        let bi = omega();
        for wt in 1..=2 {
            for deg in bi.degrees(wt) {
                let s = bi.slice(Some(1), deg, wt);
                assert_eq!(bi.op_t(&s), RatMatrix::identity(s.dim()));
                assert_eq!(bi.op_n(&s), RatMatrix::identity(s.dim()));
            }
        }
    }

    #[test]
    fn b_of_s_vanishes() {
        // b(s) = (a,b) - (b,a) plus its rotation, which cancels
        let bi = omega();
        assert!(bi.b(&[2]).is_zero());
        assert_eq!(bi.b_prime(&[2]).len(), 2);
    }

    #[test]
    fn rotation_has_order_n() {
        let bi = omega();
        for wt in 1..=5 {
            for deg in bi.degrees(wt) {
                for n in 1..=wt as usize {
                    let s = bi.slice(Some(n), deg, wt);
                    let t = bi.op_t(&s);
                    let mut p = RatMatrix::identity(s.dim());
                    for _ in 0..n {
                        p = p.mul(&t);
                    }
                    assert_eq!(p, RatMatrix::identity(s.dim()));
                    assert!(one_minus_t_times_n(&bi, &s).is_zero());
                    let nt = bi.op_n(&s).mul(&RatMatrix::identity(s.dim()).sub(&t));
                    assert!(nt.is_zero());
                }
            }
        }
    }

    #[test]
    fn unshifted_rotation_sign() {
        // T(c1, c2) = -(-1)^{|c1||c2|}(c2, c1); a, b have degree 1
        let bi = omega();
        let t = bi.t(&[0, 1]);
        assert_eq!(t.coefficient(&Word::from_slice(&[1, 0])), q(1));
        let t = bi.t(&[0, 2]);
        assert_eq!(t.coefficient(&Word::from_slice(&[2, 0])), q(-1));
    }

    #[test]
    fn operator_identities() {
        let bi = omega();
        for wt in 1..=5 {
            for deg in bi.degrees(wt) {
                let s = bi.slice(None, deg, wt);
                let lo = bi.slice(None, deg - 1, wt);
                let lo2 = bi.slice(None, deg - 2, wt);
                let b = bi.op_b(&s, &lo);
                let bp = bi.op_b_prime(&s, &lo);
                assert!(bi.op_b(&lo, &lo2).mul(&b).is_zero());
                assert!(bi.op_b_prime(&lo, &lo2).mul(&bp).is_zero());
                let one_t = |x: &TensorSlice| RatMatrix::identity(x.dim()).sub(&bi.op_t(x));
                assert_eq!(one_t(&lo).mul(&b), bp.mul(&one_t(&s)));
                assert_eq!(b.mul(&bi.op_n(&s)), bi.op_n(&lo).mul(&bp));
            }
        }
    }

    #[test]
    fn comparison_kxy() {
        for v in [KxyVariant::Omega, KxyVariant::OmegaTilde] {
            let r = compare_with_cobar(&kxy_coalgebra(v), 4).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn zero_and_trivial_coalgebras() {
        let zero = CyclicCoalgebra::new(vec![], 0).unwrap();
        let cc = cyclic_complex(&zero, 3).unwrap();
        assert_eq!(cc.slices().count(), 0);
        let mut one = CyclicCoalgebra::new(vec![Generator::new("e", 0, 1)], 0).unwrap();
        one.set_pairing_entry(0, 0, q(1)).unwrap();
        let r = compare_with_cobar(&one, 4).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.slices.len(), 4);
    }

    #[test]
    fn coalgebra_with_differential() {
        // f has degree 2 and df = e; everything is acyclic
        let mut c = CyclicCoalgebra::new(vec![Generator::new("e", 1, 1), Generator::new("f", 2, 1)], -3).unwrap();
        c.add_differential(1, 0, q(1)).unwrap();
        c.set_pairing(0, 1, q(1)).unwrap();
        let r = compare_with_cobar(&c, 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn hochschild_of_kxy() {
        let bi = omega();
        // weight 1: x and y survive
        assert_eq!(bi.hochschild_homology(0, 1).unwrap(), 2);
    }
}

