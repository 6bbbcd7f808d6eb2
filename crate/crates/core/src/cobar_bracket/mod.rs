//! The cobar construction of a cyclic coalgebra and its double bracket.
//!
//! Every sign of the bracket comes from [`contraction_sign`] and
//! [`shifted_pairing`]; the axiom checks in [`axioms`] are what certify the
//! convention.

pub mod axioms;
mod tensor;

use std::collections::BTreeMap;

use num_traits::Zero;

pub use axioms::{
    axiom_suite, axiom_suite_bounded, check_d_compat, check_double_jacobi, check_outer_derivation, check_skew,
    unit_coefficient, AxiomReport, FamilyResult, Violation,
};
pub use tensor::{DoubleElement, Lin, TripleElement};

use crate::cyclic_coalgebra::{CyclicCoalgebra, Mutation};
use crate::error::{Error, Result};
use crate::exactla::{q, Q};
use crate::graded_core::{format_terms, sign, Element, FreeDGAlgebra, Generator, Word};

/// Sign of the term of `{{v, w}}` that contracts the letter `v_i` with
/// `w_j`, given the degrees of the blocks `v = V< v_i V>` and
/// `w = W< w_j W>` and the bracket degree `n` (the degree of `W>` never
/// enters).
///
/// The bracket is treated as a letter of degree `n` standing between `v`
/// and `w`; the sign is the Koszul sign of
/// `(V<, v_i, V>, ·, W<, w_j, W>) -> (v_i, ·, w_j, W<, V>, V<, W>)`, after
/// which `v_i · w_j` is contracted and `W< V> ⊗ V< W>` remains.
pub fn contraction_sign(vl: i64, vi: i64, vr: i64, n: i64, wl: i64, wj: i64) -> i64 {
    sign(vl * (vi + vr + n + wl + wj) + vr * (n + wl + wj) + wl * wj)
}

/// Pairing of suspended generators: `<su, sv> = (-1)^{|u|} <u, v>`, where
/// `|u|` is the degree in the coalgebra.
pub fn shifted_pairing(coalgebra_degree: i64, value: &Q) -> Q {
    q(sign(coalgebra_degree)) * value
}

/// The cobar construction with its double bracket of degree `n + 2`.
#[derive(Clone, Debug)]
pub struct CobarAlgebra {
    alg: FreeDGAlgebra,
    source: CyclicCoalgebra,
    bracket_degree: i64,
    /// Nonzero shifted pairings `P(g, h)`, grouped by `g`.
    pairing: Vec<Vec<(u16, Q)>>,
    mutation: Option<Mutation>,
}

/// Builds the cobar construction after the required validation checks pass.
pub fn cobar(c: &CyclicCoalgebra) -> Result<CobarAlgebra> {
    let report = c.validate();
    if let Some(f) = report.first_required_failure() {
        return Err(Error::InvalidCoalgebra(format!(
            "{}: {}",
            f.name,
            f.witness.clone().unwrap_or_default()
        )));
    }
    build(c, true)
}

/// Just the free DG algebra `Ω(C)`, checking only that its differential
/// squares to zero.
pub fn cobar_dg_algebra(c: &CyclicCoalgebra) -> Result<FreeDGAlgebra> {
    Ok(build(c, true)?.alg)
}

fn build(c: &CyclicCoalgebra, verify: bool) -> Result<CobarAlgebra> {
    let gens: Vec<Generator> = (0..c.dim())
        .map(|i| Generator::new(c.cobar_name(i), c.degree(i) - 1, c.weight(i)))
        .collect();
    // ∂ c̄ = -(dc)‾ - Σ (-1)^{|c'|} c̄' c̄''
    let mut rules = Vec::new();
    for i in 0..c.dim() {
        let mut e = Element::zero();
        for (t, x) in c.differential(i) {
            e.add_term(smallvec::smallvec![*t as u16], -x.clone());
        }
        for (&(l, r), x) in c.coproduct(i) {
            e.add_term(smallvec::smallvec![l as u16, r as u16], -q(sign(c.degree(l))) * x);
        }
        rules.push((i as u16, e));
    }
    let alg = if verify {
        FreeDGAlgebra::new(gens, rules)?
    } else {
        FreeDGAlgebra::new_unverified(gens, rules)?
    };
    let mut pairing = vec![Vec::new(); c.dim()];
    for (&(u, v), x) in c.pairing_entries() {
        pairing[u].push((v as u16, shifted_pairing(c.degree(u), x)));
    }
    Ok(CobarAlgebra {
        alg,
        bracket_degree: c.cyclic_degree() + 2,
        pairing,
        mutation: c.mutation(),
        source: c.clone(),
    })
}

/// Residuals of the double-bracket compatibility with the differential on
/// pairs of generators, split by word length. These are exactly the
/// pairing/differential compatibility and the two cyclicity conditions.
pub(crate) struct CyclicityWitnesses {
    pub linear: Option<String>,
    pub weak: Option<String>,
    pub strict: Option<String>,
}

pub(crate) fn cyclicity_witnesses(c: &CyclicCoalgebra) -> CyclicityWitnesses {
    let mut plain = c.clone();
    plain.set_mutation(None);
    let alg = build(&plain, false).expect("structural checks passed");
    let mut out = CyclicityWitnesses { linear: None, weak: None, strict: None };
    let n = alg.bracket_degree;
    for u in 0..c.dim() as u16 {
        for v in 0..c.dim() as u16 {
            let (eu, ev) = (Element::letter(u), Element::letter(v));
            let mut r = alg.double_bracket(&alg.alg.apply_differential(&eu), &ev);
            let s = q(sign(alg.alg.gen_degree(u) + n));
            r.add_scaled(&s, &alg.double_bracket(&eu, &alg.alg.apply_differential(&ev)));
            let pair = format!("({}, {})", c.basis()[u as usize].name, c.basis()[v as usize].name);
            let scalar = r.coefficient(&(Word::new(), Word::new()));
            if out.linear.is_none() && !scalar.is_zero() {
                out.linear = Some(format!("{pair}: residual {scalar}"));
            }
            let quad: DoubleElement = r.terms().filter(|((a, b), _)| !(a.is_empty() && b.is_empty())).map(|(k, x)| (k.clone(), x.clone())).collect();
            if out.strict.is_none() && !quad.is_zero() {
                out.strict = Some(format!("{pair}: {}", alg.format_double(&quad)));
            }
            let m = alg.multiply_out(&quad);
            if out.weak.is_none() && !m.is_zero() {
                out.weak = Some(format!("{pair}: {}", alg.alg.format(&m)));
            }
        }
    }
    out
}

impl CobarAlgebra {
    pub fn algebra(&self) -> &FreeDGAlgebra {
        &self.alg
    }

    pub fn source(&self) -> &CyclicCoalgebra {
        &self.source
    }

    pub fn bracket_degree(&self) -> i64 {
        self.bracket_degree
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    /// Weight lost by each contraction.
    pub fn pairing_weight(&self) -> u32 {
        self.source.pairing_weight().unwrap_or(0)
    }

    pub fn letter(&self, name: &str) -> Option<Element> {
        self.alg.letter(name)
    }

    pub fn apply_differential(&self, e: &Element) -> Element {
        self.alg.apply_differential(e)
    }

    pub fn word_degree(&self, w: &[u16]) -> i64 {
        self.alg.word_degree(w)
    }

    pub fn shifted_pairing(&self, g: u16, h: u16) -> Q {
        self.pairing[g as usize]
            .iter()
            .find(|(k, _)| *k == h)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(Q::zero)
    }

    /// `{{v, w}}` for single words, accumulated into `out` with factor `c`.
    pub fn word_bracket_into(&self, v: &[u16], w: &[u16], c: &Q, out: &mut DoubleElement) {
        let deg = |g: u16| self.alg.gen_degree(g);
        let vdeg: i64 = v.iter().map(|&g| deg(g)).sum();
        let n = self.bracket_degree;
        let mut vl = 0i64;
        for (i, &vi) in v.iter().enumerate() {
            let dvi = deg(vi);
            let vr = vdeg - vl - dvi;
            if !self.pairing[vi as usize].is_empty() {
                let mut wl = 0i64;
                for (j, &wj) in w.iter().enumerate() {
                    let dwj = deg(wj);
                    if let Some((_, p)) = self.pairing[vi as usize].iter().find(|(h, _)| *h == wj) {
                        let mut s = contraction_sign(vl, dvi, vr, n, wl, dwj);
                        if self.mutation == Some(Mutation::BracketSign) && i > 0 && j > 0 {
                            s = -s;
                        }
                        let mut left: Word = w[..j].into();
                        left.extend_from_slice(&v[i + 1..]);
                        let mut right: Word = v[..i].into();
                        right.extend_from_slice(&w[j + 1..]);
                        out.add_term((left, right), q(s) * p * c);
                    }
                    wl += dwj;
                }
            }
            vl += dvi;
        }
    }

    pub fn double_bracket(&self, v: &Element, w: &Element) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for (a, x) in v.terms() {
            for (b, y) in w.terms() {
                self.word_bracket_into(a, b, &(x * y), &mut out);
            }
        }
        out
    }

    /// Multiplication `a ⊗ b -> ab`.
    pub fn multiply_out(&self, d: &DoubleElement) -> Element {
        Element::from_terms(d.terms().map(|((a, b), c)| {
            let mut w = a.clone();
            w.extend_from_slice(b);
            (w, c.clone())
        }))
    }

    /// Differential on `A ⊗ A`: `∂(a ⊗ b) = ∂a ⊗ b + (-1)^{|a|} a ⊗ ∂b`.
    pub fn differential_double(&self, d: &DoubleElement) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for ((a, b), c) in d.terms() {
            for (da, x) in self.alg.apply_differential(&Element::word(a.clone())).terms() {
                out.add_term((da.clone(), b.clone()), c * x);
            }
            let s = q(sign(self.alg.word_degree(a)));
            for (db, x) in self.alg.apply_differential(&Element::word(b.clone())).terms() {
                out.add_term((a.clone(), db.clone()), &s * c * x);
            }
        }
        out
    }

    pub fn format_double(&self, d: &DoubleElement) -> String {
        format_terms(d.terms().map(|((a, b), c)| {
            (format!("{}⊗{}", self.alg.format_word(a), self.alg.format_word(b)), c.clone())
        }))
    }

    pub fn format_triple(&self, t: &TripleElement) -> String {
        format_terms(t.terms().map(|((a, b, c), x)| {
            (
                format!("{}⊗{}⊗{}", self.alg.format_word(a), self.alg.format_word(b), self.alg.format_word(c)),
                x.clone(),
            )
        }))
    }

    /// All nonempty words of weight `1..=max_weight`, grouped by weight.
    pub fn words_by_weight(&self, max_weight: u32) -> BTreeMap<u32, Vec<Word>> {
        (1..=max_weight).map(|w| (w, self.alg.words_of_weight(w))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic_coalgebra::{kxy_coalgebra, KxyVariant};

    fn w(xs: &[u16]) -> Word {
        Word::from_slice(xs)
    }

    #[test]
    fn cobar_of_kxy() {
        let a = cobar(&kxy_coalgebra(KxyVariant::Omega)).unwrap();
        let r = a.algebra();
        let names: Vec<_> = r.generators().iter().map(|g| (g.name.as_str(), g.degree, g.weight)).collect();
        assert_eq!(names, [("x", 0, 1), ("y", 0, 1), ("t", 1, 2)]);
        assert_eq!(r.format(r.diff_rule(2)), "xy - yx");
        assert!(r.check_d_squared().passed());
        assert_eq!(a.bracket_degree(), 0);
    }

    #[test]
    fn zero_structure_gives_zero_differential() {
        let basis = vec![Generator::new("e", 3, 1)];
        let c = CyclicCoalgebra::new(basis, 0).unwrap();
        let a = cobar(&c).unwrap();
        assert!(a.algebra().diff_rule(0).is_zero());
    }

    #[test]
    fn bracket_examples() {
        let a = cobar(&kxy_coalgebra(KxyVariant::Omega)).unwrap();
        let x = a.letter("x").unwrap();
        let y = a.letter("y").unwrap();
        let xy = a.double_bracket(&x, &y);
        assert_eq!(xy.len(), 1);
        let c = xy.coefficient(&(w(&[]), w(&[])));
        assert!(c == q(1) || c == q(-1));
        assert!(a.double_bracket(&x, &x).is_zero());
        let xx = &x * &x;
        let yy = &y * &y;
        let b = a.double_bracket(&xx, &yy);
        let keys: Vec<_> = b.terms().map(|(k, _)| k.clone()).collect();
        assert_eq!(
            keys,
            [(w(&[]), w(&[0, 1])), (w(&[0]), w(&[1])), (w(&[1]), w(&[0])), (w(&[1, 0]), w(&[]))]
        );
        for (_, c) in b.terms() {
            assert_eq!(c.clone() * c, q(1));
        }
    }

    #[test]
    fn bracket_degree_and_weight() {
        for v in [KxyVariant::Omega, KxyVariant::OmegaTilde] {
            let a = cobar(&kxy_coalgebra(v)).unwrap();
            let p = a.pairing_weight();
            let words = a.words_by_weight(4);
            for ws in words.values() {
                for u in ws {
                    for v in ws {
                        let b = a.double_bracket(&Element::word(u.clone()), &Element::word(v.clone()));
                        for ((l, r), _) in b.terms() {
                            let r_alg = a.algebra();
                            assert_eq!(
                                r_alg.word_degree(l) + r_alg.word_degree(r),
                                r_alg.word_degree(u) + r_alg.word_degree(v) + a.bracket_degree()
                            );
                            assert_eq!(r_alg.word_weight(l) + r_alg.word_weight(r) + p, r_alg.word_weight(u) + r_alg.word_weight(v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_coalgebra_rejected() {
        let basis = vec![Generator::new("p", 1, 1), Generator::new("r", 2, 2), Generator::new("u", 3, 3)];
        let mut c = CyclicCoalgebra::new(basis, -4).unwrap();
        c.add_coproduct(2, 0, 1, q(1)).unwrap();
        c.add_coproduct(1, 0, 0, q(1)).unwrap();
        assert!(matches!(cobar(&c), Err(Error::InvalidCoalgebra(_))));
    }
}
