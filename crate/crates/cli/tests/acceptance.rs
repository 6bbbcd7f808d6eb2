//! Acceptance run: one line per criterion, exact rational equality
//! throughout. Exits nonzero if any criterion fails.

use std::path::PathBuf;
use std::time::Instant;

use necklace::cobar_bracket::{axiom_suite, axiom_suite_bounded, cobar, unit_coefficient, CobarAlgebra};
use necklace::cyclic_coalgebra::{kxy_coalgebra, KxyVariant};
use necklace::cyclic_homology::compare_with_cobar;
use necklace::exactla::{q, Subspace, Q};
use necklace::graded_core::{CommElement, Element, Word};
use necklace::natural_quotient::{
    abelianize, commutative_bracket, form_to_class, homology_bracket, kxy_letters, natural_bracket, natural_lie_suite,
    poly_to_class, Form1, NaturalComplex, Poly2,
};
use necklace::rep_poisson::{check_rep_poisson_axioms, check_trace_poisson, rep_homology_slice, rep_of_cobar, sample_triples};
use necklace_cli::commands::natural_basis_words;
use necklace_cli::input::load_coalgebra;

type Outcome = Result<String, String>;

const VARIANTS: [(KxyVariant, &str); 2] = [(KxyVariant::Omega, "omega"), (KxyVariant::OmegaTilde, "omega-tilde")];

fn kxy(v: KxyVariant) -> CobarAlgebra {
    cobar(&kxy_coalgebra(v)).expect("kxy coalgebras validate")
}

fn letters(a: &CobarAlgebra) -> (u16, u16, u16) {
    let l = kxy_letters(a).unwrap();
    (l.x, l.y, l.t)
}

/// `c` in `{{x, y}} = c·1⊗1`, fixed once for the whole run.
fn global_sign(a: &CobarAlgebra) -> Q {
    let (x, y, _) = letters(a);
    unit_coefficient(&a.double_bracket(&Element::letter(x), &Element::letter(y)))
}

fn repeat(g: u16, n: u32) -> Word {
    std::iter::repeat(g).take(n as usize).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut failing = Vec::new();
    for (v, name) in VARIANTS {
        let r = axiom_suite_bounded(&kxy(v), 6, 5);
        for f in r.families.iter().filter(|f| !f.passed()) {
            let first = f.first_failure.as_ref().map(|x| format!(" e.g. {} residual {}", x.inputs, x.residual)).unwrap_or_default();
            failing.push(format!("{name}: {} {}/{}{first}", f.name, f.failed, f.checked));
        }
    }
    ensure(failing.is_empty(), || failing.join("; "))?;
    Ok("all four families pass for both pairings".into())
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for (v, name) in VARIANTS {
        let r = natural_lie_suite(&kxy(v), 5, true).map_err(|e| e.to_string())?;
        for fam in ["antisymmetry", "jacobi", "derivation"] {
            let f = r.family(fam).unwrap();
            ensure(f.passed() && f.checked > 0, || format!("{name}: {fam} {:?}", f.first_failure))?;
            checked += f.checked;
        }
    }
    Ok(format!("{checked} checks on FT basis words"))
}

fn criterion_3() -> Outcome {
    let a = kxy(KxyVariant::Omega);
    let (x, y, t) = letters(&a);
    let c = global_sign(&a);
    ensure(c == q(1) || c == q(-1), || format!("global sign {c}"))?;
    for p in 1..=4u32 {
        for qq in 1..=4u32 {
            let lhs = a.project(&Element::word(repeat(x, p)), false);
            let mut r = repeat(y, qq - 1);
            r.push(t);
            let got = natural_bracket(&a, &lhs, &a.project(&Element::word(r), false));
            let mut expect = Element::zero();
            for i in 1..qq {
                let mut w = repeat(x, p - 1);
                w.extend(repeat(y, qq - 1 - i));
                w.push(t);
                w.extend(repeat(y, i - 1));
                expect.add_term(w, &c * q(p as i64));
            }
            let expect = a.project(&expect, false);
            ensure(got == expect, || format!("p={p} q={qq}: {} vs {}", a.format_natural(&got), a.format_natural(&expect)))?;
        }
    }
    let l = kxy_letters(&a).unwrap();
    let ft = NaturalComplex::for_cobar(&a, true).map_err(|e| e.to_string())?;
    for p in 1..=3u32 {
        for qq in 1..=3u32 {
            let xp = poly_to_class(&ft, &l, &Poly2::from([((p, 0), q(1))]));
            let form = form_to_class(&ft, &l, &Form1::monomial_dx(0, qq), qq + 1).map_err(|e| e.to_string())?;
            let got = homology_bracket(&a, &ft, &xp, &form.representative).map_err(|e| e.to_string())?;
            let expect = Form1::monomial_dx(p - 1, qq - 1).scaled(&(&c * q((p * qq) as i64)));
            if expect.is_zero() {
                ensure(got.is_zero(), || format!("p={p} q={qq}: expected the zero class"))?;
            } else {
                let cls = form_to_class(&ft, &l, &expect, p + qq - 1).map_err(|e| e.to_string())?;
                ensure(cls.coordinates == got.coordinates, || format!("p={p} q={qq}: class mismatch"))?;
            }
        }
    }
    Ok(format!("16 quotient identities and 9 homology identities, global sign {c}"))
}

fn monomials(max_weight: u32) -> Vec<(u32, u32)> {
    (1..=max_weight).flat_map(|w| (0..=w).map(move |i| (i, w - i))).collect()
}

fn criterion_4() -> Outcome {
    let a = kxy(KxyVariant::Omega);
    let c = global_sign(&a);
    let l = kxy_letters(&a).unwrap();
    let ft = NaturalComplex::for_cobar(&a, true).map_err(|e| e.to_string())?;
    let monos = monomials(5);
    for &f in &monos {
        for &g in &monos {
            let pf = Poly2::from([(f, q(1))]);
            let pg = Poly2::from([(g, q(1))]);
            let got = homology_bracket(&a, &ft, &poly_to_class(&ft, &l, &pf), &poly_to_class(&ft, &l, &pg)).map_err(|e| e.to_string())?;
            let mut expect = commutative_bracket(&pf, &pg);
            expect.remove(&(0, 0));
            let expect: Poly2 = expect.into_iter().map(|(k, v)| (k, &c * v)).collect();
            let got = abelianize(&l, &got.representative).map_err(|e| e.to_string())?;
            ensure(got == expect, || format!("f={f:?} g={g:?}"))?;
        }
    }
    Ok(format!("{} monomial pairs", monos.len() * monos.len()))
}

fn criterion_5() -> Outcome {
    let a = kxy(KxyVariant::Omega);
    let ft = NaturalComplex::for_cobar(&a, true).map_err(|e| e.to_string())?;
    let mut n = 0;
    for wa in 1..=6u32 {
        for wb in 1..=6u32 {
            let (ha, hb) = (ft.homology(1, wa).map_err(|e| e.to_string())?, ft.homology(1, wb).map_err(|e| e.to_string())?);
            for ra in &ha.representatives {
                for rb in &hb.representatives {
                    let b = homology_bracket(&a, &ft, ra, rb).map_err(|e| e.to_string())?;
                    ensure(b.is_zero(), || format!("weights {wa},{wb}: {}", a.format_natural(&b.representative)))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} pairs of basis classes"))
}

/// Independent de Rham count: `dim k[x,y]_w = w+1` by monomials, and
/// `dim (Ω¹/dA)_w = dim Ω¹_w - dim dA_w` where `d` is injective on `A_w`.
fn de_rham(w: u32) -> (usize, usize) {
    let a_w = (0..=w).count();
    let omega1_w = 2 * (0..w).count();
    (a_w, omega1_w - a_w)
}

fn criterion_6() -> Outcome {
    let a = kxy(KxyVariant::Omega);
    let ft = NaturalComplex::for_cobar(&a, true).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for w in 1..=6u32 {
        let (h0, h1) = de_rham(w);
        let dims: Vec<usize> = (0..=w as i64).map(|d| ft.homology(d, w).map(|h| h.dim())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        ensure(dims[0] == h0 && dims[1] == h1 && dims[2..].iter().all(|&d| d == 0), || format!("weight {w}: {dims:?}"))?;
        rows.push(format!("{h0}/{h1}"));
    }
    Ok(format!("HC0/HC1 by weight: {}", rows.join(" ")))
}

fn criterion_7() -> Outcome {
    let mut slices = 0;
    for (v, name) in VARIANTS {
        let r = compare_with_cobar(&kxy_coalgebra(v), 6).map_err(|e| e.to_string())?;
        ensure(r.passed() && !r.slices.is_empty(), || format!("{name}: {:?}", r.first_failure()))?;
        slices += r.slices.len();
    }
    Ok(format!("{slices} slices are chain isomorphisms with equal homology"))
}

fn criterion_8() -> Outcome {
    let mut pairs = 0;
    for (v, name) in VARIANTS {
        let a = kxy(v);
        let words = natural_basis_words(&a, 4).map_err(|e| e.0)?;
        for d in 1..=3 {
            let ra = rep_of_cobar(&a, d).map_err(|e| e.to_string())?;
            for u in &words {
                for w in &words {
                    let r = check_trace_poisson(&ra, &Element::word(u.clone()), &Element::word(w.clone())).map_err(|e| e.to_string())?;
                    r.map_err(|m| format!("{name} d={d}: {m}"))?;
                    pairs += 1;
                }
            }
        }
    }
    let a = kxy(KxyVariant::Omega);
    let (_, _, t) = letters(&a);
    for d in 1..=3 {
        let ra = rep_of_cobar(&a, d).map_err(|e| e.to_string())?;
        let samples = sample_triples(&ra, 200, 3, 2024 + d as u64);
        let odd: Vec<u32> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| ra.rep_generator(t, i, j)).collect();
        let with_odd = samples
            .monomials
            .iter()
            .filter(|tr| tr.iter().any(|e| e.terms().any(|(m, _)| m.iter().any(|(g, _)| odd.contains(g)))))
            .count();
        ensure(with_odd == samples.monomials.len(), || format!("d={d}: only {with_odd} triples use an odd generator"))?;
        let r = check_rep_poisson_axioms(&ra, &samples).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
    }
    Ok(format!("{pairs} trace pairs; 200 sampled triples per d pass the Poisson axioms"))
}

fn criterion_9() -> Outcome {
    let a = kxy(KxyVariant::Omega);
    let (x, y, _) = letters(&a);
    let c = global_sign(&a);
    for d in 1..=3usize {
        let ra = rep_of_cobar(&a, d).map_err(|e| e.to_string())?;
        for i in 0..d {
            for j in 0..d {
                for u in 0..d {
                    for v in 0..d {
                        let got = ra.rep_bracket(&ra.entry(x, i, j), &ra.entry(y, u, v)).map_err(|e| e.to_string())?;
                        let expect = if i == v && u == j { CommElement::scalar(c.clone()) } else { CommElement::zero() };
                        ensure(got == expect, || format!("d={d} {{x{i}{j}, y{u}{v}}}"))?;
                    }
                }
            }
        }
        let (ex, ey) = (Element::letter(x), Element::letter(y));
        let lhs = ra.rep_bracket(&ra.trace(&ex), &ra.trace(&ey)).map_err(|e| e.to_string())?;
        let natural = ra.trace(&natural_bracket(&a, &a.project(&ex, false), &a.project(&ey, false)).lift());
        let expect = CommElement::scalar(&c * q(d as i64));
        ensure(lhs == expect && natural == expect, || format!("d={d}: {} / {}", ra.format(&lhs), ra.format(&natural)))?;
    }
    Ok(format!("{{x_ij, y_uv}} = {c}·δ_iv·δ_uj and {{Tr x, Tr y}} = {c}·d for d = 1..3"))
}

fn criterion_10() -> Outcome {
    let a = kxy(KxyVariant::Omega);
    let (x, y, _) = letters(&a);
    let ra = rep_of_cobar(&a, 2).map_err(|e| e.to_string())?;
    let (dim, _) = rep_homology_slice(&ra, 0, 2).map_err(|e| e.to_string())?;
    // oracle: quadratic monomials in 8 commuting variables modulo the span
    // of the entries of xy - yx, built directly from the generators
    let (basis, h) = ra.homology_slice(0, 2).map_err(|e| e.to_string())?;
    let comm = ra.comm();
    let mut entries = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut e = CommElement::zero();
            for k in 0..2 {
                e.add_scaled(&q(1), &comm.comm_multiply(&ra.entry(x, i, k), &ra.entry(y, k, j)));
                e.add_scaled(&q(-1), &comm.comm_multiply(&ra.entry(y, i, k), &ra.entry(x, k, j)));
            }
            entries.push(e);
        }
    }
    let n_monomials = (8 * 9) / 2;
    let vecs: Vec<_> = entries.iter().map(|e| ra.coordinates(&basis, e).expect("quadratic entries")).collect();
    let oracle = n_monomials - Subspace::from_vectors(basis.len(), vecs.clone()).dim();
    ensure(basis.len() == n_monomials, || format!("slice has {} monomials", basis.len()))?;
    ensure(dim == 33 && oracle == 33, || format!("homology {dim}, oracle {oracle}"))?;
    ensure(vecs.iter().all(|v| h.is_boundary(v)), || "a commutator entry is not a boundary".into())?;
    Ok("dim 33, matching the commutator-span oracle; all entries of π(xy-yx) are boundaries".into())
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn criterion_11() -> Outcome {
    let load = |n: &str| load_coalgebra(&fixture(n)).map_err(|e| e.to_string()).and_then(|c| cobar(&c).map_err(|e| e.to_string()));
    let clean = load("kxy-omega.coalg")?;
    let mut found = Vec::new();

    let bs = load("mutation-bracket-sign.coalg")?;
    let (good, bad) = (axiom_suite(&clean, 6), axiom_suite(&bs, 6));
    let jac = bad.family("double-jacobi").unwrap();
    ensure(good.family("double-jacobi").unwrap().passed() && !jac.passed(), || "bracket-sign: double-jacobi does not fail".into())?;
    found.push(format!("bracket-sign -> double-jacobi ({} failures)", jac.failed));

    let rt = load("mutation-rep-transpose.coalg")?;
    let words = natural_basis_words(&rt, 3).map_err(|e| e.0)?;
    let ra = rep_of_cobar(&rt, 2).map_err(|e| e.to_string())?;
    let ra_clean = rep_of_cobar(&clean, 2).map_err(|e| e.to_string())?;
    let mut bad_pairs = 0;
    for u in &words {
        for v in &words {
            let (eu, ev) = (Element::word(u.clone()), Element::word(v.clone()));
            ensure(check_trace_poisson(&ra_clean, &eu, &ev).map_err(|e| e.to_string())?.is_ok(), || "clean traces fail".into())?;
            bad_pairs += check_trace_poisson(&ra, &eu, &ev).map_err(|e| e.to_string())?.is_err() as usize;
        }
    }
    ensure(bad_pairs > 0, || "rep-transpose: trace check does not fail".into())?;
    found.push(format!("rep-transpose -> trace-poisson ({bad_pairs} pairs at d=2)"));

    let rs = load("mutation-rotation-sign.coalg")?;
    let good = natural_lie_suite(&clean, 6, true).map_err(|e| e.to_string())?;
    let bad = natural_lie_suite(&rs, 6, true).map_err(|e| e.to_string())?;
    let wd = bad.family("well-defined").unwrap();
    ensure(good.passed() && !wd.passed(), || "rotation-sign: well-defined does not fail".into())?;
    found.push(format!("rotation-sign -> well-defined ({} failures)", wd.failed));
    Ok(found.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("double Poisson axioms at weight 6/5", criterion_1),
        ("Lie structure on FT, weight 5", criterion_2),
        ("bracket formulas on powers and forms", criterion_3),
        ("HC0 bracket is the Poisson bracket", criterion_4),
        ("HC1 x HC1 brackets vanish", criterion_5),
        ("HC dimension table", criterion_6),
        ("cobar quotient vs cyclic complex", criterion_7),
        ("traces are Poisson, d = 1..3", criterion_8),
        ("representation bracket structure", criterion_9),
        ("representation homology degree 0", criterion_10),
        ("mutation sensitivity", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = run();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.1}s]: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.1}s]: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
