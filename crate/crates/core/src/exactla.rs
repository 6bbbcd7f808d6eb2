//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are sparse maps from coordinate index to a nonzero rational.
//! Subspaces are stored in reduced row echelon form, which makes them
//! canonical: two subspaces are equal iff their stored bases are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type SparseVec = BTreeMap<usize, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `v += c * w`, dropping entries that cancel.
pub fn axpy(v: &mut SparseVec, c: &Q, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let delta = c * x;
        match v.get_mut(k) {
            Some(y) => {
                *y += delta;
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(*k, delta);
            }
        }
    }
}

pub fn scale(v: &mut SparseVec, c: &Q) {
    if c.is_zero() {
        v.clear();
    } else {
        for x in v.values_mut() {
            *x *= c;
        }
    }
}

pub fn unit_vec(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Q::one());
    v
}

pub fn dense_to_sparse(xs: &[Q]) -> SparseVec {
    xs.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i].insert(i, Q::one());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix literal");
            for (j, &x) in r.iter().enumerate() {
                m.add_to(i, j, &q(x));
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c {
                m.add_to(*i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i].get(&j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Q) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) outside {}x{}", self.rows, self.cols);
        if x.is_zero() {
            return;
        }
        let row = &mut self.data[i];
        let e = row.entry(j).or_insert_with(Q::zero);
        *e += x;
        if e.is_zero() {
            row.remove(&j);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for (i, j, x) in self.entries() {
            t.data[j].insert(i, x.clone());
        }
        t
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = Q::zero();
            for (j, x) in v {
                if let Some(a) = r.get(j) {
                    acc += a * x;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zero(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, a) in r {
                axpy(&mut acc, a, &other.data[*k]);
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        self.combine(other, &Q::one())
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.combine(other, &-Q::one())
    }

    fn combine(&self, other: &RatMatrix, c: &Q) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            axpy(a, c, b);
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> RatMatrix {
        let mut out = self.clone();
        for r in &mut out.data {
            scale(r, c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        Subspace::from_vectors(self.cols, self.data.iter().cloned()).dim()
    }

    /// Restricts `self` to the subspace spanned by `domain` and expresses the
    /// result in the basis of `codomain`. `None` if some image leaves `codomain`.
    pub fn restrict(&self, domain: &Subspace, codomain: &Subspace) -> Option<RatMatrix> {
        let mut cols = Vec::with_capacity(domain.dim());
        for b in domain.basis() {
            cols.push(dense_to_sparse(&codomain.coordinates(&self.apply(b))?));
        }
        Some(RatMatrix::from_columns(codomain.dim(), &cols))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            let row: Vec<String> = (0..self.cols)
                .map(|j| r.get(&j).map_or("0".to_string(), |x| x.to_string()))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `Q^ambient` held as a reduced row echelon basis. The pivot
/// of a basis vector is its smallest index; it carries the entry 1 and every
/// other basis vector vanishes there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(unit_vec).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the projection onto the span along the echelon basis. The
    /// remainder vanishes at every pivot; it is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (b, p) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = r.get(p).cloned() {
                axpy(&mut r, &-c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots.iter().map(|p| v.get(p).cloned().unwrap_or_else(Q::zero)).collect();
        let mut r = v.clone();
        for (b, c) in self.basis.iter().zip(&coords) {
            axpy(&mut r, &-c, b);
        }
        r.is_empty().then_some(coords)
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.keys().all(|&k| k < self.ambient));
        let mut r = self.reduce(&v);
        let Some((&lead, c)) = r.iter().next() else {
            return false;
        };
        let inv = c.recip();
        scale(&mut r, &inv);
        for b in &mut self.basis {
            if let Some(c) = b.get(&lead).cloned() {
                axpy(b, &-c, &r);
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.basis.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone());
        }
        s
    }
}

pub fn kernel(m: &RatMatrix) -> Subspace {
    let rows = Subspace::from_vectors(m.cols(), m.data.iter().cloned());
    let pivot_set: std::collections::BTreeSet<usize> = rows.pivots.iter().copied().collect();
    let mut out = Vec::new();
    for f in (0..m.cols()).filter(|j| !pivot_set.contains(j)) {
        let mut v = unit_vec(f);
        for (b, p) in rows.basis.iter().zip(&rows.pivots) {
            if let Some(c) = b.get(&f) {
                v.insert(*p, -c.clone());
            }
        }
        out.push(v);
    }
    Subspace::from_vectors(m.cols(), out)
}

pub fn image(m: &RatMatrix) -> Subspace {
    Subspace::from_vectors(m.rows(), m.columns())
}

/// Representatives whose classes form a basis of `total / sub`, taken from
/// the basis of `total` in order.
pub fn quotient_basis(sub: &Subspace, total: &Subspace) -> Result<Vec<SparseVec>> {
    if sub.ambient != total.ambient {
        return Err(Error::DimensionMismatch(format!(
            "ambient {} vs {}",
            sub.ambient, total.ambient
        )));
    }
    for (index, b) in sub.basis.iter().enumerate() {
        if !total.contains(b) {
            return Err(Error::NotASubspace { index });
        }
    }
    let mut span = sub.clone();
    let mut reps = Vec::new();
    for t in &total.basis {
        if span.insert(t.clone()) {
            reps.push(t.clone());
        }
    }
    Ok(reps)
}

/// Homology `ker(d_out) / im(d_in)` at one spot of a complex.
#[derive(Clone, Debug)]
pub struct Homology {
    pub cycles: Subspace,
    pub boundaries: Subspace,
    pub representatives: Vec<SparseVec>,
    reduced_reps: Subspace,
    rep_combos: Vec<SparseVec>,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn class_of(&self, v: &SparseVec) -> Result<Vec<Q>> {
        if !self.cycles.contains(v) {
            return Err(Error::NotACycle);
        }
        let r = self.boundaries.reduce(v);
        let c = self
            .reduced_reps
            .coordinates(&r)
            .expect("cycle modulo boundaries lies in the span of the representatives");
        let mut out = SparseVec::new();
        for (ci, combo) in c.iter().zip(&self.rep_combos) {
            axpy(&mut out, ci, combo);
        }
        Ok((0..self.dim()).map(|k| out.get(&k).cloned().unwrap_or_else(Q::zero)).collect())
    }

    pub fn is_boundary(&self, v: &SparseVec) -> bool {
        self.boundaries.contains(v)
    }
}

pub fn homology_slice(d_in: &RatMatrix, d_out: &RatMatrix) -> Result<Homology> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in lands in dimension {} but d_out starts from {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in);
    if !comp.is_zero() {
        return Err(Error::NotAComplex { rows: comp.rows(), cols: comp.cols() });
    }
    let cycles = kernel(d_out);
    let boundaries = image(d_in);
    let representatives = quotient_basis(&boundaries, &cycles)?;
    let vecs: Vec<SparseVec> = representatives.iter().map(|r| boundaries.reduce(r)).collect();
    let combos = (0..vecs.len()).map(unit_vec).collect();
    let (reduced_reps, rep_combos) = reduce_tracked(d_out.cols(), vecs, combos);
    Ok(Homology { cycles, boundaries, representatives, reduced_reps, rep_combos })
}

/// Some `x` with `m x = b`, if one exists.
pub fn solve(m: &RatMatrix, b: &SparseVec) -> Option<SparseVec> {
    // each entry keeps `vec = m * combo`; later entries vanish on earlier pivots
    let mut basis: Vec<(usize, SparseVec, SparseVec)> = Vec::new();
    let eliminate = |basis: &[(usize, SparseVec, SparseVec)], v: &mut SparseVec, c: &mut SparseVec| {
        for (p, bv, bc) in basis {
            if let Some(x) = v.get(p).cloned() {
                axpy(v, &-x.clone(), bv);
                axpy(c, &x, bc);
            }
        }
    };
    for (j, col) in m.columns().into_iter().enumerate() {
        let mut v = col;
        let mut acc = SparseVec::new();
        eliminate(&basis, &mut v, &mut acc);
        if let Some((&p, x)) = v.iter().next() {
            // v = col - m*acc = m*(e_j - acc)
            let mut combo = unit_vec(j);
            axpy(&mut combo, &-Q::one(), &acc);
            let inv = x.recip();
            scale(&mut v, &inv);
            scale(&mut combo, &inv);
            basis.push((p, v, combo));
        }
    }
    let mut r = b.clone();
    let mut x = SparseVec::new();
    eliminate(&basis, &mut r, &mut x);
    r.is_empty().then_some(x)
}

/// Gauss-Jordan on independent vectors, applying the same row operations to
/// the attached combinations. Pivots are chosen as the first surviving index,
/// so the result supports `coordinates` but need not be in leading-index form.
fn reduce_tracked(ambient: usize, mut vecs: Vec<SparseVec>, mut combos: Vec<SparseVec>) -> (Subspace, Vec<SparseVec>) {
    let n = vecs.len();
    for i in 0..n {
        let p = *vecs[i].keys().next().unwrap();
        let inv = vecs[i][&p].recip();
        scale(&mut vecs[i], &inv);
        scale(&mut combos[i], &inv);
        for j in 0..n {
            if j == i {
                continue;
            }
            if let Some(c) = vecs[j].get(&p).cloned() {
                let (vi, ci) = (vecs[i].clone(), combos[i].clone());
                axpy(&mut vecs[j], &-c.clone(), &vi);
                axpy(&mut combos[j], &-c, &ci);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| *vecs[i].keys().next().unwrap());
    let pivots = order.iter().map(|&i| *vecs[i].keys().next().unwrap()).collect();
    let basis = order.iter().map(|&i| vecs[i].clone()).collect();
    let combos = order.iter().map(|&i| combos[i].clone()).collect();
    (Subspace { ambient, basis, pivots }, combos)
}
