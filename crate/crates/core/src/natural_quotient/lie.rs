//! Exhaustive checks that the induced bracket makes the quotient a DG Lie
//! algebra of degree `N`.

use std::fmt;

use rayon::prelude::*;

use super::{canonical_rotation, induced_bracket, lie_sign, natural_bracket, NaturalComplex, NaturalElement};
use crate::cobar_bracket::CobarAlgebra;
use crate::error::Result;
use crate::exactla::q;
use crate::graded_core::{sign, Element, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieFamily {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl LieFamily {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieReport {
    pub max_weight: u32,
    pub reduced: bool,
    pub families: Vec<LieFamily>,
}

impl LieReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(LieFamily::passed)
    }

    pub fn family(&self, name: &str) -> Option<&LieFamily> {
        self.families.iter().find(|f| f.name == name)
    }
}

impl fmt::Display for LieReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} up to total weight {}", if self.reduced { "FT" } else { "natural quotient" }, self.max_weight)?;
        for fam in &self.families {
            write!(f, "{:<14} {:>8} checked {:>6} failed", fam.name, fam.checked, fam.failed)?;
            if let Some(w) = &fam.first_failure {
                write!(f, "  first: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn family<T: Sync>(name: &'static str, inputs: &[T], residual: impl Fn(&T) -> Option<String> + Sync) -> LieFamily {
    let failures: Vec<(usize, String)> =
        inputs.par_iter().enumerate().filter_map(|(i, t)| residual(t).map(|r| (i, r))).collect();
    LieFamily {
        name,
        checked: inputs.len(),
        failed: failures.len(),
        first_failure: failures.into_iter().min_by_key(|(i, _)| *i).map(|(_, r)| r),
    }
}

/// Runs antisymmetry, Jacobi and the derivation rule on basis words of the
/// quotient with total weight at most `max_weight`, together with `d² = 0`
/// and the check that brackets with rotation relations vanish.
pub fn natural_lie_suite(alg: &CobarAlgebra, max_weight: u32, reduced: bool) -> Result<LieReport> {
    let complex = NaturalComplex::for_cobar(alg, reduced)?;
    let a = alg.algebra();
    let n = alg.bracket_degree();
    let mut words: Vec<(u32, Word)> = Vec::new();
    for wt in 1..=max_weight {
        let degrees: std::collections::BTreeSet<i64> = a.words_of_weight(wt).iter().map(|w| a.word_degree(w)).collect();
        for deg in degrees {
            words.extend(complex.slice(deg, wt).basis.iter().map(|w| (wt, w.clone())));
        }
    }
    let class = |w: &Word| complex.project(&Element::word(w.clone()));
    let show = |w: &Word| format!("[{}]", a.format_word(w));
    let pairs: Vec<(&Word, &Word)> = words
        .iter()
        .flat_map(|(wu, u)| words.iter().filter(move |(wv, _)| wu + wv <= max_weight).map(move |(_, v)| (u, v)))
        .collect();
    let triples: Vec<(&Word, &Word, &Word)> = pairs
        .iter()
        .flat_map(|&(u, v)| {
            let used = a.word_weight(u) + a.word_weight(v);
            words.iter().filter(move |(ww, _)| used + ww <= max_weight).map(move |(_, w)| (u, v, w))
        })
        .collect();
    let br = |x: &NaturalElement, y: &NaturalElement| natural_bracket(alg, x, y);
    let nd = |x: &NaturalElement| complex.project(&a.apply_differential(&x.lift()));
    let fail = |r: &NaturalElement, inputs: String| (!r.is_zero()).then(|| format!("{inputs} residual {}", alg.format_natural(r)));
    // elements the projection kills: u1 u2 - s u2 u1, or a word whose class is zero
    let mut relations: Vec<(Element, Word)> = Vec::new();
    for w in (1..max_weight).flat_map(|wt| a.words_of_weight(wt)) {
        let Some((s1, _)) = canonical_rotation(a, &w, complex.mode()) else {
            relations.push((Element::word(w.clone()), w));
            continue;
        };
        for k in 1..w.len() {
            let rotated: Word = w[k..].iter().chain(&w[..k]).copied().collect();
            let s2 = canonical_rotation(a, &rotated, complex.mode()).map_or(0, |(s, _)| s);
            let mut e = Element::word(w.clone());
            e.add_term(rotated, q(-s1 * s2));
            relations.push((e, w.clone()));
        }
    }
    let relation_pairs: Vec<(&(Element, Word), &Word)> = relations
        .iter()
        .flat_map(|rel| {
            let wr = a.word_weight(&rel.1);
            words.iter().filter(move |(wv, _)| wr + wv <= max_weight).map(move |(_, v)| (rel, v))
        })
        .collect();
    let families = vec![
        family("antisymmetry", &pairs, |&(u, v)| {
            let (pu, pv) = (class(u), class(v));
            let mut r = br(&pu, &pv);
            r.add_scaled(&lie_sign(a.word_degree(u), a.word_degree(v), n), &br(&pv, &pu));
            fail(&r, format!("({}, {})", show(u), show(v)))
        }),
        family("jacobi", &triples, |&(u, v, w)| {
            let d = [a.word_degree(u), a.word_degree(v), a.word_degree(w)];
            let p = [class(u), class(v), class(w)];
            let mut r = NaturalElement::zero(reduced);
            for k in 0..3 {
                let (i, j, l) = (k, (k + 1) % 3, (k + 2) % 3);
                r.add_scaled(&lie_sign(d[i], d[l], n), &br(&p[i], &br(&p[j], &p[l])));
            }
            fail(&r, format!("({}, {}, {})", show(u), show(v), show(w)))
        }),
        family("derivation", &pairs, |&(u, v)| {
            let (pu, pv) = (class(u), class(v));
            let mut r = nd(&br(&pu, &pv));
            r.add_scaled(&q(-1), &br(&nd(&pu), &pv));
            r.add_scaled(&q(-sign(a.word_degree(u) + n)), &br(&pu, &nd(&pv)));
            fail(&r, format!("({}, {})", show(u), show(v)))
        }),
        family("d-squared", &words, |(_, u)| fail(&nd(&nd(&class(u))), show(u))),
        family("well-defined", &relation_pairs, |&((rel, u), v)| {
            let ev = Element::word(v.clone());
            let inputs = || format!("(relation from {}, {})", show(u), show(v));
            let left = complex.project(&induced_bracket(alg, rel, &ev));
            fail(&left, inputs()).or_else(|| fail(&complex.project(&induced_bracket(alg, &ev, rel)), inputs()))
        }),
    ];
    Ok(LieReport { max_weight, reduced, families })
}
