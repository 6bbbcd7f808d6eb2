//! Cross-module properties of the bracket on random linear combinations of
//! words, for both pairings on the plane.

use necklace::cobar_bracket::{check_double_jacobi, check_skew, cobar, CobarAlgebra};
use necklace::cyclic_coalgebra::{kxy_coalgebra, KxyVariant};
use necklace::exactla::q;
use necklace::graded_core::{sign, Element, Word};
use necklace::natural_quotient::{induced_bracket, natural_bracket};
use necklace::rep_poisson::{check_trace_poisson, rep_of_cobar};
use proptest::prelude::*;

fn kxy(omega_tilde: bool) -> CobarAlgebra {
    let v = if omega_tilde { KxyVariant::OmegaTilde } else { KxyVariant::Omega };
    cobar(&kxy_coalgebra(v)).unwrap()
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u16..3, 1..=max_len).prop_map(Word::from)
}

fn combination(max_len: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((word(max_len), -3i64..=3), 1..=3).prop_map(|terms| {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, q(c));
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn skew_on_combinations(tilde: bool, u in combination(3), v in combination(3)) {
        let a = kxy(tilde);
        prop_assert!(check_skew(&a, &u, &v).is_ok());
    }

    #[test]
    fn double_jacobi_on_combinations(tilde: bool, u in combination(2), v in combination(2), w in combination(2)) {
        let a = kxy(tilde);
        prop_assert!(check_double_jacobi(&a, &u, &v, &w).is_ok());
    }

    #[test]
    fn traces_on_combinations(tilde: bool, u in combination(3), v in combination(3)) {
        let a = kxy(tilde);
        let ra = rep_of_cobar(&a, 2).unwrap();
        let r = check_trace_poisson(&ra, &u, &v).unwrap();
        prop_assert!(r.is_ok(), "{:?}", r.err());
    }

    #[test]
    fn rotation_is_koszul(tilde: bool, u in word(3), v in word(3)) {
        let a = kxy(tilde);
        let uv: Word = u.iter().chain(&v).copied().collect();
        let vu: Word = v.iter().chain(&u).copied().collect();
        let s = sign(a.word_degree(&u) * a.word_degree(&v));
        let lhs = a.project(&Element::word(uv), false);
        let rhs = a.project(&Element::word(vu), false).scaled(&q(s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_bilinear(tilde: bool, u in combination(3), v in combination(3), w in combination(3), k in -4i64..=4) {
        let a = kxy(tilde);
        let mut sum = u.clone();
        sum.add_scaled(&q(k), &v);
        let project = |e: &Element| a.project(e, false);
        let lhs = natural_bracket(&a, &project(&sum), &project(&w));
        let mut rhs = natural_bracket(&a, &project(&u), &project(&w));
        rhs.add_scaled(&q(k), &natural_bracket(&a, &project(&v), &project(&w)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn natural_bracket_ignores_representative(tilde: bool, u in word(3), v in word(2), w in combination(3)) {
        let a = kxy(tilde);
        let uv: Word = u.iter().chain(&v).copied().collect();
        let vu: Word = v.iter().chain(&u).copied().collect();
        let s = sign(a.word_degree(&u) * a.word_degree(&v));
        let mut rel = Element::word(uv);
        rel.add_term(vu, q(-s));
        prop_assert!(a.project(&induced_bracket(&a, &rel, &w), false).is_zero());
    }
}
