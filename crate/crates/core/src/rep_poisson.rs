//! Representation algebras `A_V` of free DG algebras in matrix-entry form,
//! the universal representation, traces, and the Poisson bracket on matrix
//! entries induced by a double bracket.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cobar_bracket::CobarAlgebra;
use crate::cyclic_coalgebra::Mutation;
use crate::error::{Error, Result};
use crate::exactla::{homology_slice, q, Homology, RatMatrix, Q};
use crate::graded_core::{sign, CommAlgebra, CommElement, CommMonomial, Element, FreeDGAlgebra, Generator};
use crate::natural_quotient::induced_bracket;

/// A `d × d` matrix with entries in a graded-commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOverRep {
    d: usize,
    entries: Vec<CommElement>,
}

impl MatrixOverRep {
    pub fn zero(d: usize) -> Self {
        MatrixOverRep { d, entries: vec![CommElement::zero(); d * d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.entries[i * d + i] = CommElement::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Entry `(i, j)`, zero-based.
    pub fn get(&self, i: usize, j: usize) -> &CommElement {
        &self.entries[i * self.d + j]
    }

    pub fn mul(&self, other: &MatrixOverRep, alg: &CommAlgebra) -> MatrixOverRep {
        let d = self.d;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let mut e = CommElement::zero();
                for j in 0..d {
                    let (a, b) = (self.get(i, j), other.get(j, k));
                    if !a.is_zero() && !b.is_zero() {
                        e.add_scaled(&q(1), &alg.comm_multiply(a, b));
                    }
                }
                out.entries[i * d + k] = e;
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: &Q, other: &MatrixOverRep) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_scaled(c, b);
        }
    }

    pub fn trace(&self) -> CommElement {
        let mut t = CommElement::zero();
        for i in 0..self.d {
            t.add_scaled(&q(1), self.get(i, i));
        }
        t
    }

    pub fn map(&self, f: impl Fn(&CommElement) -> CommElement) -> MatrixOverRep {
        MatrixOverRep { d: self.d, entries: self.entries.iter().map(f).collect() }
    }
}

#[derive(Clone, Debug)]
struct RepBracket {
    cobar: CobarAlgebra,
    degree: i64,
    /// `{G, H}` for rep generators `G, H`, row-major.
    table: Vec<CommElement>,
}

/// `A_V` for a free source and `V = k^d`: generators `g_ij` with the degree
/// and weight of `g`, and `d(g_ij) = π(dg)_ij`.
#[derive(Clone, Debug)]
pub struct RepAlgebra {
    source: FreeDGAlgebra,
    dim: usize,
    comm: CommAlgebra,
    bracket: Option<RepBracket>,
}

fn entry_name(g: &str, i: usize, j: usize, d: usize) -> String {
    if d < 10 {
        format!("{g}{}{}", i + 1, j + 1)
    } else {
        format!("{g}_{},{}", i + 1, j + 1)
    }
}

pub fn rep_algebra(src: &FreeDGAlgebra, d: usize) -> Result<RepAlgebra> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut gens = Vec::new();
    for g in src.generators() {
        for i in 0..d {
            for j in 0..d {
                gens.push(Generator::new(&entry_name(&g.name, i, j, d), g.degree, g.weight));
            }
        }
    }
    let n = gens.len();
    let bare = RepAlgebra { source: src.clone(), dim: d, comm: CommAlgebra::new(gens.clone(), vec![CommElement::zero(); n])?, bracket: None };
    let mut diff = Vec::with_capacity(n);
    for g in 0..src.ngens() as u16 {
        let m = bare.universal_rep(src.diff_rule(g));
        for i in 0..d {
            for j in 0..d {
                diff.push(m.get(i, j).clone());
            }
        }
    }
    let comm = CommAlgebra::new(gens, diff)?;
    if let Some(g) = comm.check_d_squared() {
        return Err(Error::InvalidAlgebra(format!("d² ≠ 0 on {}", comm.generators()[g as usize].name)));
    }
    Ok(RepAlgebra { comm, ..bare })
}

/// `A_V` of a cobar construction together with its Poisson bracket.
pub fn rep_of_cobar(alg: &CobarAlgebra, d: usize) -> Result<RepAlgebra> {
    let mut ra = rep_algebra(alg.algebra(), d)?;
    let ng = alg.algebra().ngens();
    let transpose = alg.mutation() != Some(Mutation::RepTranspose);
    let mut table = Vec::with_capacity(ng * ng * d * d * d * d);
    for gl in 0..ng as u16 {
        for i in 0..d {
            for j in 0..d {
                for hl in 0..ng as u16 {
                    let db = alg.double_bracket(&Element::letter(gl), &Element::letter(hl));
                    let parts: Vec<(MatrixOverRep, MatrixOverRep, Q)> = db
                        .terms()
                        .map(|((a, b), c)| {
                            (ra.universal_rep(&Element::word(a.clone())), ra.universal_rep(&Element::word(b.clone())), c.clone())
                        })
                        .collect();
                    for u in 0..d {
                        for v in 0..d {
                            let mut e = CommElement::zero();
                            for (pa, pb, c) in &parts {
                                let (l, r) = if transpose { (pa.get(u, j), pb.get(i, v)) } else { (pa.get(i, j), pb.get(u, v)) };
                                e.add_scaled(c, &ra.comm.comm_multiply(l, r));
                            }
                            table.push(e);
                        }
                    }
                }
            }
        }
    }
    // table is indexed by (g, i, j, h, u, v), which is (G, H) row-major
    ra.bracket = Some(RepBracket { cobar: alg.clone(), degree: alg.bracket_degree(), table });
    Ok(ra)
}

impl RepAlgebra {
    pub fn source(&self) -> &FreeDGAlgebra {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn comm(&self) -> &CommAlgebra {
        &self.comm
    }

    pub fn ngens(&self) -> usize {
        self.comm.generators().len()
    }

    /// Index of `g_ij`, zero-based `i, j`.
    pub fn rep_generator(&self, g: u16, i: usize, j: usize) -> u32 {
        (g as usize * self.dim * self.dim + i * self.dim + j) as u32
    }

    pub fn entry(&self, g: u16, i: usize, j: usize) -> CommElement {
        CommElement::generator(self.rep_generator(g, i, j))
    }

    pub fn generator_matrix(&self, g: u16) -> MatrixOverRep {
        let d = self.dim;
        MatrixOverRep { d, entries: (0..d * d).map(|k| self.entry(g, k / d, k % d)).collect() }
    }

    /// The universal representation `π(e)`.
    pub fn universal_rep(&self, e: &Element) -> MatrixOverRep {
        let mats: Vec<MatrixOverRep> = (0..self.source.ngens() as u16).map(|g| self.generator_matrix(g)).collect();
        let mut out = MatrixOverRep::zero(self.dim);
        for (w, c) in e.terms() {
            let m = w.iter().fold(MatrixOverRep::identity(self.dim), |acc, &g| acc.mul(&mats[g as usize], &self.comm));
            out.add_scaled(c, &m);
        }
        out
    }

    pub fn trace(&self, e: &Element) -> CommElement {
        self.universal_rep(e).trace()
    }

    pub fn apply_differential(&self, e: &CommElement) -> CommElement {
        self.comm.apply_differential(e)
    }

    pub fn bracket_degree(&self) -> Option<i64> {
        self.bracket.as_ref().map(|b| b.degree)
    }

    pub fn cobar(&self) -> Option<&CobarAlgebra> {
        self.bracket.as_ref().map(|b| &b.cobar)
    }

    fn bracket_ref(&self) -> Result<&RepBracket> {
        self.bracket.as_ref().ok_or_else(|| Error::InvalidAlgebra("representation algebra carries no bracket".into()))
    }

    /// `{G, H}` on rep generators.
    pub fn generator_bracket(&self, g: u32, h: u32) -> Result<&CommElement> {
        Ok(&self.bracket_ref()?.table[g as usize * self.ngens() + h as usize])
    }

    pub fn degree_of(&self, m: &CommMonomial) -> i64 {
        self.comm.degree(m)
    }

    /// The biderivation extension: for monomials `P = p₁⋯p_m`, `Q = q₁⋯q_k`,
    /// `{P, Q} = Σ ± P∖pᵢ · {pᵢ, qⱼ} · Q∖qⱼ`, the signs moving `pᵢ` to the
    /// right end of `P` and `qⱼ` to the left end of `Q`.
    pub fn rep_bracket(&self, p: &CommElement, qe: &CommElement) -> Result<CommElement> {
        let br = self.bracket_ref()?;
        let ng = self.ngens();
        let mut out = CommElement::zero();
        for (mp, cp) in p.terms() {
            let fp = CommAlgebra::factors(mp);
            for (mq, cq) in qe.terms() {
                let fq = CommAlgebra::factors(mq);
                let coef = cp * cq;
                for i in 0..fp.len() {
                    let after: i64 = fp[i + 1..].iter().map(|&g| self.comm.gen_degree(g)).sum();
                    let si = sign(self.comm.gen_degree(fp[i]) * after);
                    let mut rest_p = fp.clone();
                    rest_p.remove(i);
                    let Some((sp, mrp)) = self.comm.monomial_from_factors(&rest_p) else { continue };
                    let mut before = 0i64;
                    for j in 0..fq.len() {
                        let sj = sign(self.comm.gen_degree(fq[j]) * before);
                        before += self.comm.gen_degree(fq[j]);
                        let b = &br.table[fp[i] as usize * ng + fq[j] as usize];
                        if b.is_zero() {
                            continue;
                        }
                        let mut rest_q = fq.clone();
                        rest_q.remove(j);
                        let Some((sq, mrq)) = self.comm.monomial_from_factors(&rest_q) else { continue };
                        let mut left = CommElement::zero();
                        left.add_term(mrp.clone(), q(si * sj * sp * sq) * &coef);
                        let mut right = CommElement::zero();
                        right.add_term(mrq, q(1));
                        out.add_scaled(&q(1), &self.comm.product(&[left, b.clone(), right]));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Homology of the `(degree, weight)` slice of `A_V`.
    pub fn homology_slice(&self, degree: i64, weight: u32) -> Result<(Vec<CommMonomial>, Homology)> {
        let basis = self.comm.slice_basis(degree, weight)?;
        let d_in = self.differential_matrix(degree + 1, weight)?;
        let d_out = self.differential_matrix(degree, weight)?;
        Ok((basis, homology_slice(&d_in, &d_out)?))
    }

    /// Matrix of `d` from the `(degree, weight)` slice to `(degree - 1, weight)`.
    pub fn differential_matrix(&self, degree: i64, weight: u32) -> Result<RatMatrix> {
        let src = self.comm.slice_basis(degree, weight)?;
        let dst = self.comm.slice_basis(degree - 1, weight)?;
        let index: std::collections::BTreeMap<&CommMonomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut m = RatMatrix::zero(dst.len(), src.len());
        for (j, mono) in src.iter().enumerate() {
            let mut e = CommElement::zero();
            e.add_term(mono.clone(), q(1));
            for (t, c) in self.apply_differential(&e).terms() {
                m.add_to(index[t], j, c);
            }
        }
        Ok(m)
    }

    /// Coordinates of a homogeneous element in a slice basis.
    pub fn coordinates(&self, basis: &[CommMonomial], e: &CommElement) -> Option<crate::exactla::SparseVec> {
        let mut v = crate::exactla::SparseVec::new();
        for (m, c) in e.terms() {
            v.insert(basis.binary_search(m).ok()?, c.clone());
        }
        Some(v)
    }

    pub fn format(&self, e: &CommElement) -> String {
        self.comm.format(e)
    }
}

/// Both sides of the trace identity when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMismatch {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for TraceMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: Tr{{a,b}} = {} but {{Tr a, Tr b}} = {}", self.inputs, self.lhs, self.rhs)
    }
}

/// `Tr({a, b}) = {Tr a, Tr b}`.
pub fn check_trace_poisson(ra: &RepAlgebra, a: &Element, b: &Element) -> Result<std::result::Result<(), TraceMismatch>> {
    let cobar = ra.bracket_ref()?.cobar.clone();
    let lhs = ra.trace(&induced_bracket(&cobar, a, b));
    let rhs = ra.rep_bracket(&ra.trace(a), &ra.trace(b))?;
    if lhs == rhs {
        return Ok(Ok(()));
    }
    Ok(Err(TraceMismatch {
        inputs: format!("({}, {})", cobar.algebra().format(a), cobar.algebra().format(b)),
        lhs: ra.format(&lhs),
        rhs: ra.format(&rhs),
    }))
}

/// Outcome of one family of the rep axiom checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepFamily {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RepAxiomReport {
    pub dim: usize,
    pub samples: usize,
    pub families: Vec<RepFamily>,
}

impl RepAxiomReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.failed == 0)
    }

    pub fn family(&self, name: &str) -> Option<&RepFamily> {
        self.families.iter().find(|f| f.name == name)
    }
}

impl fmt::Display for RepAxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}, {} sample triples", self.dim, self.samples)?;
        for fam in &self.families {
            write!(f, "{}: {} checked, {} failed", fam.name, fam.checked, fam.failed)?;
            if let Some(w) = &fam.first_failure {
                write!(f, "; first: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Random monomial triples in the rep generators (every triple includes at
/// least one odd generator when the algebra has one), and random triples of
/// traces of words for the differential check.
pub struct RepSamples {
    pub monomials: Vec<[CommElement; 3]>,
    pub traces: Vec<[Element; 2]>,
}

pub fn sample_triples(ra: &RepAlgebra, count: usize, max_factors: usize, seed: u64) -> RepSamples {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ra.ngens() as u32;
    let odd: Vec<u32> = (0..n).filter(|&g| ra.comm.gen_degree(g) % 2 != 0).collect();
    let mono = |rng: &mut ChaCha8Rng, force_odd: bool| -> CommElement {
        loop {
            let k = rng.gen_range(1..=max_factors);
            let mut fs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            if force_odd && !odd.is_empty() {
                fs[0] = *odd.choose(rng).unwrap();
            }
            if let Some((s, m)) = ra.comm.monomial_from_factors(&fs) {
                let mut e = CommElement::zero();
                e.add_term(m, q(s));
                return e;
            }
        }
    };
    let mut monomials = Vec::with_capacity(count);
    for k in 0..count {
        let slot = k % 3;
        let t = [mono(&mut rng, slot == 0), mono(&mut rng, slot == 1), mono(&mut rng, slot == 2)];
        monomials.push(t);
    }
    let src = &ra.source;
    let letters = src.ngens() as u16;
    let word = |rng: &mut ChaCha8Rng| -> Element {
        let len = rng.gen_range(1..=3);
        Element::word((0..len).map(|_| rng.gen_range(0..letters)).collect())
    };
    let traces = (0..count / 4).map(|_| [word(&mut rng), word(&mut rng)]).collect();
    RepSamples { monomials, traces }
}

fn mono_degree(ra: &RepAlgebra, e: &CommElement) -> i64 {
    e.terms().next().map_or(0, |(m, _)| ra.comm.degree(m))
}

/// Antisymmetry, Leibniz in each slot and Jacobi on monomial triples, and
/// compatibility with `d` on traces of words.
pub fn check_rep_poisson_axioms(ra: &RepAlgebra, samples: &RepSamples) -> Result<RepAxiomReport> {
    let n = ra.bracket_ref()?.degree;
    let comm = &ra.comm;
    let fmt3 = |t: &[CommElement]| t.iter().map(|e| ra.format(e)).collect::<Vec<_>>().join(", ");
    type Check<'a> = Box<dyn Fn(&[CommElement; 3]) -> Result<bool> + Sync + 'a>;
    let checks: Vec<(&'static str, Check)> = vec![
        (
            "antisymmetry",
            Box::new(|[a, b, _]: &[CommElement; 3]| {
                let (da, db) = (mono_degree(ra, a), mono_degree(ra, b));
                let mut r = ra.rep_bracket(a, b)?;
                r.add_scaled(&q(sign((da + n) * (db + n))), &ra.rep_bracket(b, a)?);
                Ok(r.is_zero())
            }),
        ),
        (
            "leibniz-right",
            Box::new(|[a, b, c]: &[CommElement; 3]| {
                let (da, db) = (mono_degree(ra, a), mono_degree(ra, b));
                let mut r = ra.rep_bracket(a, &comm.comm_multiply(b, c))?;
                r.add_scaled(&q(-1), &comm.comm_multiply(&ra.rep_bracket(a, b)?, c));
                r.add_scaled(&q(-sign((da + n) * db)), &comm.comm_multiply(b, &ra.rep_bracket(a, c)?));
                Ok(r.is_zero())
            }),
        ),
        (
            "leibniz-left",
            Box::new(|[a, b, c]: &[CommElement; 3]| {
                let (db, dc) = (mono_degree(ra, b), mono_degree(ra, c));
                let mut r = ra.rep_bracket(&comm.comm_multiply(a, b), c)?;
                r.add_scaled(&q(-1), &comm.comm_multiply(a, &ra.rep_bracket(b, c)?));
                r.add_scaled(&q(-sign(db * (dc + n))), &comm.comm_multiply(&ra.rep_bracket(a, c)?, b));
                Ok(r.is_zero())
            }),
        ),
        (
            "jacobi",
            Box::new(|t: &[CommElement; 3]| {
                let d: Vec<i64> = t.iter().map(|e| mono_degree(ra, e)).collect();
                let mut r = CommElement::zero();
                for k in 0..3 {
                    let (i, j, l) = (k, (k + 1) % 3, (k + 2) % 3);
                    let inner = ra.rep_bracket(&t[j], &t[l])?;
                    r.add_scaled(&q(sign((d[i] + n) * (d[l] + n))), &ra.rep_bracket(&t[i], &inner)?);
                }
                Ok(r.is_zero())
            }),
        ),
    ];
    let mut families = Vec::new();
    for (name, check) in &checks {
        let results: Vec<Result<bool>> = samples.monomials.par_iter().map(|t| check(t)).collect();
        let mut fam = RepFamily { name, checked: results.len(), failed: 0, first_failure: None };
        for (t, r) in samples.monomials.iter().zip(results) {
            if !r? {
                fam.failed += 1;
                if fam.first_failure.is_none() {
                    fam.first_failure = Some(format!("({})", fmt3(t)));
                }
            }
        }
        families.push(fam);
    }
    // d{p,q} = {dp,q} + (-1)^{|p|+N}{p,dq} on traces
    let results: Vec<Result<bool>> = samples
        .traces
        .par_iter()
        .map(|[a, b]| {
            let (ta, tb) = (ra.trace(a), ra.trace(b));
            let da = ra.source.word_degree(a.terms().next().map(|(w, _)| w.as_slice()).unwrap_or(&[]));
            let mut r = ra.apply_differential(&ra.rep_bracket(&ta, &tb)?);
            r.add_scaled(&q(-1), &ra.rep_bracket(&ra.apply_differential(&ta), &tb)?);
            r.add_scaled(&q(-sign(da + n)), &ra.rep_bracket(&ta, &ra.apply_differential(&tb))?);
            Ok(r.is_zero())
        })
        .collect();
    let mut fam = RepFamily { name: "d-compatibility-traces", checked: results.len(), failed: 0, first_failure: None };
    for ([a, b], r) in samples.traces.iter().zip(results) {
        if !r? {
            fam.failed += 1;
            if fam.first_failure.is_none() {
                fam.first_failure = Some(format!("(Tr {}, Tr {})", ra.source.format(a), ra.source.format(b)));
            }
        }
    }
    families.push(fam);
    Ok(RepAxiomReport { dim: ra.dim, samples: samples.monomials.len(), families })
}

/// Dimension and representatives of one slice of representation homology.
pub fn rep_homology_slice(ra: &RepAlgebra, degree: i64, weight: u32) -> Result<(usize, Vec<CommElement>)> {
    let (basis, h) = ra.homology_slice(degree, weight)?;
    let reps = h
        .representatives
        .iter()
        .map(|v| {
            let mut e = CommElement::zero();
            for (i, c) in v {
                e.add_term(basis[*i].clone(), c.clone());
            }
            e
        })
        .collect();
    Ok((h.dim(), reps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar_bracket::cobar;
    use crate::cyclic_coalgebra::{kxy_coalgebra, KxyVariant};

    fn kxy(v: KxyVariant) -> CobarAlgebra {
        cobar(&kxy_coalgebra(v)).unwrap()
    }

    const X: u16 = 0;
    const Y: u16 = 1;
    const T: u16 = 2;

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(rep_algebra(kxy(KxyVariant::Omega).algebra(), 0), Err(Error::ZeroDimension)));
    }

    #[test]
    fn dimension_one() {
        let a = kxy(KxyVariant::Omega);
        let ra = rep_algebra(a.algebra(), 1).unwrap();
        assert_eq!(ra.ngens(), 3);
        assert_eq!(ra.comm().generators()[2].degree, 1);
        assert!(ra.comm().diff_rule(2).is_zero());
    }

    #[test]
    fn dimension_two_differential() {
        let a = kxy(KxyVariant::Omega);
        let ra = rep_algebra(a.algebra(), 2).unwrap();
        assert_eq!(ra.ngens(), 12);
        let x = |i, j| ra.entry(X, i, j);
        let y = |i, j| ra.entry(Y, i, j);
        let c = ra.comm();
        let mut expect = CommElement::zero();
        for k in 0..2 {
            expect.add_scaled(&q(1), &c.comm_multiply(&x(0, k), &y(k, 1)));
            expect.add_scaled(&q(-1), &c.comm_multiply(&y(0, k), &x(k, 1)));
        }
        assert_eq!(c.diff_rule(ra.rep_generator(T, 0, 1)), &expect);
        let comm = a.apply_differential(&Element::letter(T));
        let e11 = ra.universal_rep(&comm).get(0, 0).clone();
        let mut expect = c.comm_multiply(&x(0, 1), &y(1, 0));
        expect.add_scaled(&q(-1), &c.comm_multiply(&y(0, 1), &x(1, 0)));
        assert_eq!(e11, expect);
    }

    #[test]
    fn traces() {
        let a = kxy(KxyVariant::Omega);
        let ra = rep_algebra(a.algebra(), 2).unwrap();
        assert_eq!(ra.trace(&Element::one()), CommElement::scalar(q(2)));
        assert!(ra.trace(&a.apply_differential(&Element::letter(T))).is_zero());
        let mut tx = ra.entry(X, 0, 0);
        tx.add_scaled(&q(1), &ra.entry(X, 1, 1));
        assert_eq!(ra.trace(&Element::letter(X)), tx);
    }

    #[test]
    fn universal_rep_is_multiplicative() {
        let a = kxy(KxyVariant::Omega);
        let ra = rep_algebra(a.algebra(), 2).unwrap();
        let words = [vec![X, T], vec![T, Y, T], vec![Y, X, Y]];
        for u in &words {
            for v in &words {
                let uv: Vec<u16> = u.iter().chain(v).copied().collect();
                let lhs = ra.universal_rep(&Element::word(uv.into()));
                let rhs = ra.universal_rep(&Element::word(u.as_slice().into())).mul(&ra.universal_rep(&Element::word(v.as_slice().into())), ra.comm());
                assert_eq!(lhs, rhs);
            }
            let e = Element::word(u.as_slice().into());
            let lhs = ra.universal_rep(&a.apply_differential(&e));
            let rhs = ra.universal_rep(&e).map(|x| ra.apply_differential(x));
            assert_eq!(lhs, rhs);
        }
    }

    /// `c` with `{{x, y}} = c·1⊗1`.
    fn global_sign(a: &CobarAlgebra) -> Q {
        crate::cobar_bracket::unit_coefficient(&a.double_bracket(&Element::letter(X), &Element::letter(Y)))
    }

    #[test]
    fn generator_brackets() {
        let a = kxy(KxyVariant::Omega);
        let c = global_sign(&a);
        for d in 1..=3 {
            let ra = rep_of_cobar(&a, d).unwrap();
            for i in 0..d {
                for j in 0..d {
                    for u in 0..d {
                        for v in 0..d {
                            let b = ra.generator_bracket(ra.rep_generator(X, i, j), ra.rep_generator(Y, u, v)).unwrap();
                            let expect = if i == v && u == j { CommElement::scalar(c.clone()) } else { CommElement::zero() };
                            assert_eq!(b, &expect);
                            assert!(ra.generator_bracket(ra.rep_generator(X, i, j), ra.rep_generator(X, u, v)).unwrap().is_zero());
                        }
                    }
                }
            }
            let tx = ra.trace(&Element::letter(X));
            let ty = ra.trace(&Element::letter(Y));
            assert_eq!(ra.rep_bracket(&tx, &ty).unwrap(), CommElement::scalar(&c * q(d as i64)));
        }
    }

    #[test]
    fn trace_identity_examples() {
        let a = kxy(KxyVariant::Omega);
        let ra = rep_of_cobar(&a, 2).unwrap();
        let (x, y) = (Element::letter(X), Element::letter(Y));
        check_trace_poisson(&ra, &x, &y).unwrap().unwrap();
        check_trace_poisson(&ra, &x, &x).unwrap().unwrap();
        let ra1 = rep_of_cobar(&a, 1).unwrap();
        let xx = Element::word([X, X].as_slice().into());
        let yy = Element::word([Y, Y].as_slice().into());
        check_trace_poisson(&ra1, &xx, &yy).unwrap().unwrap();
        let lhs = ra1.rep_bracket(&ra1.trace(&xx), &ra1.trace(&yy)).unwrap();
        let xy = ra1.comm().comm_multiply(&ra1.entry(X, 0, 0), &ra1.entry(Y, 0, 0));
        assert_eq!(lhs, xy.scaled(&(global_sign(&a) * q(4))));
    }

    #[test]
    fn axioms_on_samples() {
        let a = kxy(KxyVariant::Omega);
        for d in 1..=2 {
            let ra = rep_of_cobar(&a, d).unwrap();
            let s = sample_triples(&ra, 60, 3, 7);
            let r = check_rep_poisson_axioms(&ra, &s).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn axioms_for_odd_bracket() {
        // the degree -1 structure brackets t with x and y, so Koszul signs matter
        let a = kxy(KxyVariant::OmegaTilde);
        for d in 1..=2 {
            let ra = rep_of_cobar(&a, d).unwrap();
            let s = sample_triples(&ra, 60, 3, 11);
            let r = check_rep_poisson_axioms(&ra, &s).unwrap();
            for name in ["antisymmetry", "leibniz-right", "leibniz-left", "jacobi"] {
                assert_eq!(r.family(name).unwrap().failed, 0, "{r}");
            }
        }
    }

    #[test]
    fn odd_bracket_d_compat_fails_up_to_boundary() {
        // on A♮ the residual at (xt, xyt) is -2 d[xyt], a boundary but not zero
        let a = kxy(KxyVariant::OmegaTilde);
        let (u, v): (crate::graded_core::Word, crate::graded_core::Word) = ([X, T].as_slice().into(), [X, Y, T].as_slice().into());
        let r = a.project(&a.multiply_out(&a.dcompat_residual(&u, &v)), false);
        let xyt = a.project(&Element::word(v.clone()), false);
        let boundary = crate::natural_quotient::natural_differential(a.algebra(), &xyt).scaled(&q(-2));
        assert!(!r.is_zero());
        assert_eq!(r, boundary);
    }

    #[test]
    fn transpose_mutation_breaks_traces() {
        let mut c = kxy_coalgebra(KxyVariant::Omega);
        c.set_mutation(Some(Mutation::RepTranspose));
        let a = cobar(&c).unwrap();
        let ra = rep_of_cobar(&a, 2).unwrap();
        assert!(check_trace_poisson(&ra, &Element::letter(X), &Element::letter(Y)).unwrap().is_err());
    }

    #[test]
    fn homology_of_commuting_matrices() {
        let a = kxy(KxyVariant::Omega);
        let ra = rep_algebra(a.algebra(), 1).unwrap();
        assert_eq!(rep_homology_slice(&ra, 0, 2).unwrap().0, 3);
        let ra = rep_algebra(a.algebra(), 2).unwrap();
        assert_eq!(rep_homology_slice(&ra, 0, 2).unwrap().0, 33);
        assert_eq!(rep_homology_slice(&ra, 5, 2).unwrap().0, 0);
    }
}
