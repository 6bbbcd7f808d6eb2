//! Finite-dimensional cyclic DG coalgebras and cyclic DG algebras.
//!
//! Coalgebras are non-counital: the coproduct is the reduced one and the
//! counit is never stored. Degrees are homological. Algebras use
//! cohomological degrees with the same numbers, so dualizing keeps every
//! degree and negates the cyclic degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{axpy, q, SparseVec, Q};
use crate::graded_core::{sign, Generator};

/// Deliberate sign corruptions used to check that the verification suites
/// are sensitive to the conventions they test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Flip the sign of double-bracket terms that pair interior letters.
    BracketSign,
    /// Use `({{g,h}}')_{ij} ({{g,h}}'')_{uv}` on matrix entries.
    RepTranspose,
    /// Ignore Koszul signs when rotating cyclic words.
    RotationSign,
}

impl Mutation {
    pub fn parse(s: &str) -> Option<Mutation> {
        match s {
            "bracket-sign" => Some(Mutation::BracketSign),
            "rep-transpose" => Some(Mutation::RepTranspose),
            "rotation-sign" => Some(Mutation::RotationSign),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mutation::BracketSign => "bracket-sign",
            Mutation::RepTranspose => "rep-transpose",
            Mutation::RotationSign => "rotation-sign",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCoalgebra {
    basis: Vec<Generator>,
    cobar_names: Vec<String>,
    coproduct: Vec<BTreeMap<(usize, usize), Q>>,
    differential: Vec<SparseVec>,
    pairing: BTreeMap<(usize, usize), Q>,
    cyclic_degree: i64,
    mutation: Option<Mutation>,
}

fn add_entry<K: Ord + Clone>(map: &mut BTreeMap<K, Q>, k: K, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(k.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&k);
    }
}

impl CyclicCoalgebra {
    /// Empty structure maps on the given basis.
    pub fn new(basis: Vec<Generator>, cyclic_degree: i64) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for g in &basis {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::InvalidCoalgebra(format!("duplicate basis name {}", g.name)));
            }
        }
        let n = basis.len();
        Ok(CyclicCoalgebra {
            cobar_names: basis.iter().map(|g| g.name.clone()).collect(),
            basis,
            coproduct: vec![BTreeMap::new(); n],
            differential: vec![SparseVec::new(); n],
            pairing: BTreeMap::new(),
            cyclic_degree,
            mutation: None,
        })
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.basis.len() {
            Ok(())
        } else {
            Err(Error::InvalidCoalgebra(format!("basis index {i} out of range")))
        }
    }

    /// Adds `coef * (left ⊗ right)` to the coproduct of `elem`.
    pub fn add_coproduct(&mut self, elem: usize, left: usize, right: usize, coef: Q) -> Result<()> {
        for i in [elem, left, right] {
            self.check_index(i)?;
        }
        add_entry(&mut self.coproduct[elem], (left, right), coef);
        Ok(())
    }

    pub fn add_differential(&mut self, elem: usize, target: usize, coef: Q) -> Result<()> {
        self.check_index(elem)?;
        self.check_index(target)?;
        let mut v = SparseVec::new();
        v.insert(target, coef);
        axpy(&mut self.differential[elem], &q(1), &v);
        Ok(())
    }

    /// Sets `<u, v>` only.
    pub fn set_pairing_entry(&mut self, u: usize, v: usize, coef: Q) -> Result<()> {
        self.check_index(u)?;
        self.check_index(v)?;
        if coef.is_zero() {
            self.pairing.remove(&(u, v));
        } else {
            self.pairing.insert((u, v), coef);
        }
        Ok(())
    }

    /// Sets `<u, v>` and the graded-symmetric entry `<v, u>`.
    pub fn set_pairing(&mut self, u: usize, v: usize, coef: Q) -> Result<()> {
        self.set_pairing_entry(u, v, coef.clone())?;
        let s = sign(self.basis[u].degree * self.basis[v].degree);
        self.set_pairing_entry(v, u, q(s) * coef)
    }

    pub fn set_cobar_name(&mut self, elem: usize, name: impl Into<String>) -> Result<()> {
        self.check_index(elem)?;
        let name = name.into();
        if self.cobar_names.iter().enumerate().any(|(i, n)| i != elem && *n == name) {
            return Err(Error::InvalidCoalgebra(format!("duplicate cobar generator name {name}")));
        }
        self.cobar_names[elem] = name;
        Ok(())
    }

    pub fn set_mutation(&mut self, m: Option<Mutation>) {
        self.mutation = m;
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.basis[i].weight
    }

    pub fn cobar_name(&self, i: usize) -> &str {
        &self.cobar_names[i]
    }

    pub fn coproduct(&self, elem: usize) -> &BTreeMap<(usize, usize), Q> {
        &self.coproduct[elem]
    }

    pub fn differential(&self, elem: usize) -> &SparseVec {
        &self.differential[elem]
    }

    pub fn pairing(&self, u: usize, v: usize) -> Q {
        self.pairing.get(&(u, v)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn pairing_entries(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.pairing
    }

    pub fn cyclic_degree(&self) -> i64 {
        self.cyclic_degree
    }

    /// Common weight `wt u + wt v` of the nonzero pairing entries.
    pub fn pairing_weight(&self) -> Option<u32> {
        self.pairing.keys().next().map(|&(u, v)| self.basis[u].weight + self.basis[v].weight)
    }

    /// Structural and cyclicity checks. Never fails; every check is reported.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        r.push("positive-weights", true, self.basis.iter().find(|g| g.weight == 0).map(|g| format!("{} has weight 0", g.name)));
        r.push("coproduct-homogeneous", true, self.coproduct_homogeneity_witness());
        r.push("coassociativity", true, self.coassociativity_witness());
        r.push("differential-homogeneous", true, self.differential_homogeneity_witness());
        r.push("differential-squared", true, self.d_squared_witness());
        r.push("coderivation", true, self.coderivation_witness());
        r.push("pairing-degree", true, self.pairing_degree_witness());
        r.push("pairing-weight", true, self.pairing_weight_witness());
        r.push("pairing-graded-symmetric", true, self.symmetry_witness());
        let structural_ok = r.checks.iter().all(|c| c.passed);
        if structural_ok {
            let cyc = crate::cobar_bracket::cyclicity_witnesses(self);
            r.push("pairing-differential", true, cyc.linear);
            r.push("cyclicity-weak", true, cyc.weak);
            r.push("cyclicity-strict", false, cyc.strict);
        } else {
            let why = Some("skipped: structural checks failed".to_string());
            r.push("pairing-differential", true, why.clone());
            r.push("cyclicity-weak", true, why.clone());
            r.push("cyclicity-strict", false, why);
        }
        r
    }

    fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    fn coproduct_homogeneity_witness(&self) -> Option<String> {
        for (c, terms) in self.coproduct.iter().enumerate() {
            for &(l, r) in terms.keys() {
                if self.degree(l) + self.degree(r) != self.degree(c) || self.weight(l) + self.weight(r) != self.weight(c) {
                    return Some(format!("Δ({}) contains {}⊗{}", self.name(c), self.name(l), self.name(r)));
                }
            }
        }
        None
    }

    fn coassociativity_witness(&self) -> Option<String> {
        for c in 0..self.dim() {
            let mut lhs: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
            for (&(l, r), x) in &self.coproduct[c] {
                for (&(ll, lr), y) in &self.coproduct[l] {
                    add_entry(&mut lhs, (ll, lr, r), x * y);
                }
                for (&(rl, rr), y) in &self.coproduct[r] {
                    add_entry(&mut rhs, (l, rl, rr), x * y);
                }
            }
            if lhs != rhs {
                let key = lhs.keys().chain(rhs.keys()).find(|k| lhs.get(k) != rhs.get(k)).unwrap();
                let get = |m: &BTreeMap<_, Q>| m.get(key).cloned().unwrap_or_else(Q::zero);
                return Some(format!(
                    "Δ on {}: coefficient of ({},{},{}) is {} in (Δ⊗1)Δ but {} in (1⊗Δ)Δ",
                    self.name(c),
                    self.name(key.0),
                    self.name(key.1),
                    self.name(key.2),
                    get(&lhs),
                    get(&rhs)
                ));
            }
        }
        None
    }

    fn differential_homogeneity_witness(&self) -> Option<String> {
        for (c, dc) in self.differential.iter().enumerate() {
            for &t in dc.keys() {
                if self.degree(t) != self.degree(c) - 1 || self.weight(t) != self.weight(c) {
                    return Some(format!("d({}) contains {}", self.name(c), self.name(t)));
                }
            }
        }
        None
    }

    fn apply_d(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in v {
            axpy(&mut out, x, &self.differential[*i]);
        }
        out
    }

    fn d_squared_witness(&self) -> Option<String> {
        (0..self.dim())
            .find(|&c| !self.apply_d(&self.differential[c]).is_empty())
            .map(|c| format!("d(d({})) ≠ 0", self.name(c)))
    }

    fn coderivation_witness(&self) -> Option<String> {
        for c in 0..self.dim() {
            let mut lhs: BTreeMap<(usize, usize), Q> = BTreeMap::new();
            for (t, x) in &self.differential[c] {
                for (k, y) in &self.coproduct[*t] {
                    add_entry(&mut lhs, *k, x * y);
                }
            }
            let mut rhs: BTreeMap<(usize, usize), Q> = BTreeMap::new();
            for (&(l, r), x) in &self.coproduct[c] {
                for (dl, y) in &self.differential[l] {
                    add_entry(&mut rhs, (*dl, r), x * y);
                }
                let s = q(sign(self.degree(l)));
                for (dr, y) in &self.differential[r] {
                    add_entry(&mut rhs, (l, *dr), &s * x * y);
                }
            }
            if lhs != rhs {
                return Some(format!("Δd ≠ (d⊗1 + 1⊗d)Δ on {}", self.name(c)));
            }
        }
        None
    }

    fn pairing_degree_witness(&self) -> Option<String> {
        self.pairing
            .keys()
            .find(|&&(u, v)| self.degree(u) + self.degree(v) + self.cyclic_degree != 0)
            .map(|&(u, v)| format!("<{},{}> ≠ 0 but degrees do not add to {}", self.name(u), self.name(v), -self.cyclic_degree))
    }

    fn pairing_weight_witness(&self) -> Option<String> {
        let p = self.pairing_weight()?;
        self.pairing
            .keys()
            .find(|&&(u, v)| self.weight(u) + self.weight(v) != p)
            .map(|&(u, v)| format!("<{},{}> has weight {} ≠ {p}", self.name(u), self.name(v), self.weight(u) + self.weight(v)))
    }

    fn symmetry_witness(&self) -> Option<String> {
        for (&(u, v), x) in &self.pairing {
            let s = q(sign(self.degree(u) * self.degree(v)));
            if self.pairing(v, u) != s * x {
                return Some(format!("<{},{}> and <{},{}> are not graded-symmetric", self.name(u), self.name(v), self.name(v), self.name(u)));
            }
        }
        None
    }

    /// The dual cyclic algebra: multiplication is the transposed coproduct.
    pub fn dual_algebra(&self) -> Result<CyclicAlgebra> {
        let mut a = CyclicAlgebra::new(self.basis.clone(), -self.cyclic_degree)?;
        for (c, terms) in self.coproduct.iter().enumerate() {
            for (&(l, r), x) in terms {
                a.add_product(l, r, c, x.clone())?;
            }
        }
        for (c, dc) in self.differential.iter().enumerate() {
            for (t, x) in dc {
                a.add_differential(*t, c, x.clone())?;
            }
        }
        for (&(u, v), x) in &self.pairing {
            a.set_pairing_entry(u, v, x.clone())?;
        }
        Ok(a)
    }
}

/// Finite-dimensional cyclic DG algebra (cohomological degrees).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAlgebra {
    basis: Vec<Generator>,
    product: BTreeMap<(usize, usize), SparseVec>,
    differential: Vec<SparseVec>,
    pairing: BTreeMap<(usize, usize), Q>,
    cyclic_degree: i64,
}

impl CyclicAlgebra {
    pub fn new(basis: Vec<Generator>, cyclic_degree: i64) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for g in &basis {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate basis name {}", g.name)));
            }
        }
        let n = basis.len();
        Ok(CyclicAlgebra {
            basis,
            product: BTreeMap::new(),
            differential: vec![SparseVec::new(); n],
            pairing: BTreeMap::new(),
            cyclic_degree,
        })
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.basis.len() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(format!("basis index {i} out of range")))
        }
    }

    /// Adds `coef * result` to the product `left · right`.
    pub fn add_product(&mut self, left: usize, right: usize, result: usize, coef: Q) -> Result<()> {
        for i in [left, right, result] {
            self.check_index(i)?;
        }
        let e = self.product.entry((left, right)).or_default();
        let mut v = SparseVec::new();
        v.insert(result, coef);
        axpy(e, &q(1), &v);
        if e.is_empty() {
            self.product.remove(&(left, right));
        }
        Ok(())
    }

    pub fn add_differential(&mut self, elem: usize, target: usize, coef: Q) -> Result<()> {
        self.check_index(elem)?;
        self.check_index(target)?;
        let mut v = SparseVec::new();
        v.insert(target, coef);
        axpy(&mut self.differential[elem], &q(1), &v);
        Ok(())
    }

    pub fn set_pairing_entry(&mut self, u: usize, v: usize, coef: Q) -> Result<()> {
        self.check_index(u)?;
        self.check_index(v)?;
        if coef.is_zero() {
            self.pairing.remove(&(u, v));
        } else {
            self.pairing.insert((u, v), coef);
        }
        Ok(())
    }

    pub fn set_pairing(&mut self, u: usize, v: usize, coef: Q) -> Result<()> {
        self.set_pairing_entry(u, v, coef.clone())?;
        let s = sign(self.basis[u].degree * self.basis[v].degree);
        self.set_pairing_entry(v, u, q(s) * coef)
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn cyclic_degree(&self) -> i64 {
        self.cyclic_degree
    }

    pub fn product_table(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.product
    }

    pub fn differential(&self, elem: usize) -> &SparseVec {
        &self.differential[elem]
    }

    pub fn pairing(&self, u: usize, v: usize) -> Q {
        self.pairing.get(&(u, v)).cloned().unwrap_or_else(Q::zero)
    }

    fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a {
            for (j, y) in b {
                if let Some(p) = self.product.get(&(*i, *j)) {
                    axpy(&mut out, &(x * y), p);
                }
            }
        }
        out
    }

    fn pair_vec(&self, a: &SparseVec, b: &SparseVec) -> Q {
        let mut acc = Q::zero();
        for (i, x) in a {
            for (j, y) in b {
                acc += x * y * self.pairing(*i, *j);
            }
        }
        acc
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.basis.len();
        let deg = |i: usize| self.basis[i].degree;
        let e = |i: usize| crate::exactla::unit_vec(i);
        let mut homog = None;
        for (&(a, b), v) in &self.product {
            if v.keys().any(|&c| deg(c) != deg(a) + deg(b) || self.basis[c].weight != self.basis[a].weight + self.basis[b].weight) {
                homog = Some(format!("{}·{} is not homogeneous", self.basis[a].name, self.basis[b].name));
                break;
            }
        }
        r.push("product-homogeneous", true, homog);
        let mut assoc = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = self.mul_vec(&self.mul_vec(&e(a), &e(b)), &e(c));
                    let rr = self.mul_vec(&e(a), &self.mul_vec(&e(b), &e(c)));
                    if l != rr {
                        assoc = Some(format!("({0}{1}){2} ≠ {0}({1}{2})", self.basis[a].name, self.basis[b].name, self.basis[c].name));
                        break 'outer;
                    }
                }
            }
        }
        r.push("associativity", true, assoc);
        let d = |v: &SparseVec| {
            let mut out = SparseVec::new();
            for (i, x) in v {
                axpy(&mut out, x, &self.differential[*i]);
            }
            out
        };
        r.push(
            "differential-squared",
            true,
            (0..n).find(|&a| !d(&self.differential[a]).is_empty()).map(|a| format!("d(d({})) ≠ 0", self.basis[a].name)),
        );
        let mut leibniz = None;
        'l: for a in 0..n {
            for b in 0..n {
                let lhs = d(&self.mul_vec(&e(a), &e(b)));
                let mut rhs = self.mul_vec(&d(&e(a)), &e(b));
                axpy(&mut rhs, &q(sign(deg(a))), &self.mul_vec(&e(a), &d(&e(b))));
                if lhs != rhs {
                    leibniz = Some(format!("Leibniz fails on {}·{}", self.basis[a].name, self.basis[b].name));
                    break 'l;
                }
            }
        }
        r.push("leibniz", true, leibniz);
        r.push(
            "pairing-degree",
            true,
            self.pairing
                .keys()
                .find(|&&(u, v)| deg(u) + deg(v) != self.cyclic_degree)
                .map(|&(u, v)| format!("<{},{}> has the wrong degree", self.basis[u].name, self.basis[v].name)),
        );
        r.push(
            "pairing-graded-symmetric",
            true,
            self.pairing
                .iter()
                .find(|(&(u, v), x)| self.pairing(v, u) != q(sign(deg(u) * deg(v))) * *x)
                .map(|(&(u, v), _)| format!("<{},{}> is not graded-symmetric", self.basis[u].name, self.basis[v].name)),
        );
        // <a, bc> = (-1)^{|c|(|a|+|b|)} <ca, b>
        let mut cyc = None;
        'c: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.pair_vec(&e(a), &self.mul_vec(&e(b), &e(c)));
                    let rhs = q(sign(deg(c) * (deg(a) + deg(b)))) * self.pair_vec(&self.mul_vec(&e(c), &e(a)), &e(b));
                    if lhs != rhs {
                        cyc = Some(format!(
                            "<{0},{1}{2}> ≠ ±<{2}{0},{1}>",
                            self.basis[a].name, self.basis[b].name, self.basis[c].name
                        ));
                        break 'c;
                    }
                }
            }
        }
        r.push("pairing-cyclic", true, cyc);
        // <da, b> and <a, db> must agree up to the Koszul sign.
        r.push(
            "pairing-differential",
            true,
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .find(|&(a, b)| {
                    self.pair_vec(&d(&e(a)), &e(b)) + q(sign(deg(a))) * self.pair_vec(&e(a), &d(&e(b))) != Q::zero()
                })
                .map(|(a, b)| format!("<d{0},{1}> ± <{0},d{1}> ≠ 0", self.basis[a].name, self.basis[b].name)),
        );
        r
    }
}

/// Dual cyclic coalgebra of a cyclic algebra. The pairing matrix is carried
/// over entry by entry, so only an identically zero pairing on a nonzero
/// space is rejected as degenerate.
pub fn dualize(a: &CyclicAlgebra) -> Result<CyclicCoalgebra> {
    if !a.basis.is_empty() && a.pairing.is_empty() {
        return Err(Error::DegenerateForm("the pairing is identically zero".into()));
    }
    let mut c = CyclicCoalgebra::new(a.basis.clone(), -a.cyclic_degree)?;
    for (&(l, r), v) in &a.product {
        for (e, x) in v {
            c.add_coproduct(*e, l, r, x.clone())?;
        }
    }
    for (elem, dv) in a.differential.iter().enumerate() {
        for (t, x) in dv {
            c.add_differential(*t, elem, x.clone())?;
        }
    }
    for (&(u, v), x) in &a.pairing {
        c.set_pairing_entry(u, v, x.clone())?;
    }
    Ok(c)
}

/// Which pairing to put on the three-dimensional coalgebra `a, b, s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KxyVariant {
    /// `<a,b> = 1`, cyclic degree -2.
    Omega,
    /// `<a,s> = <b,s> = 1`, cyclic degree -3.
    OmegaTilde,
}

/// The coalgebra `a, b` in degree 1 and weight 1, `s` in degree 2 and
/// weight 2, with `Δs = a⊗b - b⊗a`, zero differential, and cobar letters
/// `x, y, t`.
pub fn kxy_coalgebra(variant: KxyVariant) -> CyclicCoalgebra {
    let n = match variant {
        KxyVariant::Omega => -2,
        KxyVariant::OmegaTilde => -3,
    };
    let basis = vec![Generator::new("a", 1, 1), Generator::new("b", 1, 1), Generator::new("s", 2, 2)];
    let mut c = CyclicCoalgebra::new(basis, n).expect("distinct names");
    c.add_coproduct(2, 0, 1, q(1)).unwrap();
    c.add_coproduct(2, 1, 0, q(-1)).unwrap();
    match variant {
        KxyVariant::Omega => c.set_pairing(0, 1, q(1)).unwrap(),
        KxyVariant::OmegaTilde => {
            c.set_pairing(0, 2, q(1)).unwrap();
            c.set_pairing(1, 2, q(1)).unwrap();
        }
    }
    for (i, name) in ["x", "y", "t"].into_iter().enumerate() {
        c.set_cobar_name(i, name).unwrap();
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub required: bool,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &'static str, required: bool, witness: Option<String>) {
        self.checks.push(Check { name, required, passed: witness.is_none(), witness });
    }

    pub fn required_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_required_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.required && !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match (c.passed, c.required) {
                (true, _) => "pass",
                (false, true) => "FAIL",
                (false, false) => "fail (informational)",
            };
            write!(f, "{:<26} {status}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, "  {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
