use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use necklace::cobar_bracket::{axiom_suite, cobar, CobarAlgebra};
use necklace::cyclic_coalgebra::CyclicCoalgebra;
use necklace::cyclic_homology::compare_with_cobar;
use necklace::exactla::Q;
use necklace::graded_core::{format_terms, Element, Word};
use necklace::natural_quotient::{
    abelianize, homology_bracket, kxy_letters, natural_bracket, natural_lie_suite, Form1, NaturalComplex, Poly2,
};
use necklace::rep_poisson::{check_rep_poisson_axioms, check_trace_poisson, rep_homology_slice, rep_of_cobar, sample_triples};

use crate::expr::parse_expr;
use crate::input::load_coalgebra;
use crate::output::{Format, Report, Table};

/// Bounds and options shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_weight: Option<u32>,
    pub max_degree: Option<i64>,
    pub dims: Vec<usize>,
    pub reduced: bool,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_weight: None, max_degree: None, dims: Vec::new(), reduced: false, seed: 0, samples: 0, format: Format::Text }
    }
}

impl RunConfig {
    fn weight_or(&self, default: u32) -> u32 {
        self.max_weight.unwrap_or(default)
    }

    fn dims_or(&self, default: &[usize]) -> Vec<usize> {
        if self.dims.is_empty() {
            default.to_vec()
        } else {
            self.dims.clone()
        }
    }

    fn degree_ok(&self, d: i64) -> bool {
        self.max_degree.map_or(true, |m| d <= m)
    }
}

/// Anything that makes the input unusable; reported with exit status 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<necklace::Error> for CliError {
    fn from(e: necklace::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<crate::input::InputError> for CliError {
    fn from(e: crate::input::InputError) -> Self {
        CliError(e.to_string())
    }
}

/// Output of a command that ran to completion; `passed` picks exit 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

fn load_cobar(file: &Path) -> Result<CobarAlgebra, CliError> {
    let c = load_coalgebra(file)?;
    cobar(&c).map_err(|e| CliError(format!("{}: {e}", file.display())))
}

fn mutation_note(report: &mut Report, c: &CyclicCoalgebra) {
    if let Some(m) = c.mutation() {
        report.note(format!("mutation: {}", m.name()));
    }
}

pub fn cmd_validate(file: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = load_coalgebra(file)?;
    let v = c.validate();
    let mut r = Report::new(cfg.format);
    let mut t = Table::new(&["check", "required", "status", "witness"]);
    for ch in &v.checks {
        let status = match &ch.witness {
            None => "pass",
            Some(w) if w.starts_with("skipped") => "skip",
            Some(_) => "FAIL",
        };
        t.push(vec![ch.name.into(), if ch.required { "yes" } else { "no" }.into(), status.into(), ch.witness.clone().unwrap_or_default()]);
    }
    r.table(&t);
    let passed = v.required_passed();
    if passed && v.check("cyclicity-strict").is_some_and(|c| !c.passed) {
        r.note("note: the strict cyclicity identity fails; only the weak four-term condition is needed downstream");
    }
    r.note(if passed { "required checks pass" } else { "required checks FAIL" });
    Ok(Outcome { stdout: r.into_string(), passed })
}

pub fn cmd_axioms(file: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let a = load_cobar(file)?;
    let w = cfg.weight_or(6);
    let rep = axiom_suite(&a, w);
    let mut r = Report::new(cfg.format);
    mutation_note(&mut r, a.source());
    r.note(format!("pairs up to weight {}, triples up to weight {}", rep.pair_weight, rep.triple_weight));
    let mut t = Table::new(&["family", "checked", "failed", "status", "first failure"]);
    for f in &rep.families {
        t.push(vec![
            f.name.into(),
            f.checked.to_string(),
            f.failed.to_string(),
            if f.passed() { "pass" } else { "FAIL" }.into(),
            f.first_failure.as_ref().map(|v| format!("{} residual {}", v.inputs, v.residual)).unwrap_or_default(),
        ]);
    }
    r.table(&t);
    Ok(Outcome { stdout: r.into_string(), passed: rep.passed() })
}

pub fn cmd_lie(file: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let a = load_cobar(file)?;
    let rep = natural_lie_suite(&a, cfg.weight_or(6), cfg.reduced)?;
    let mut r = Report::new(cfg.format);
    mutation_note(&mut r, a.source());
    r.note(format!("{} up to total weight {}", if rep.reduced { "FT" } else { "natural quotient" }, rep.max_weight));
    let mut t = Table::new(&["family", "checked", "failed", "status", "first failure"]);
    for f in &rep.families {
        t.push(vec![
            f.name.into(),
            f.checked.to_string(),
            f.failed.to_string(),
            if f.passed() { "pass" } else { "FAIL" }.into(),
            f.first_failure.clone().unwrap_or_default(),
        ]);
    }
    r.table(&t);
    Ok(Outcome { stdout: r.into_string(), passed: rep.passed() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BracketMode {
    /// The double bracket in `A ⊗ A`.
    Double,
    /// The induced bracket on the commutator quotient.
    Natural,
    /// The induced bracket on homology classes of cycles.
    Homology,
}

fn mono2(a: u32, b: u32) -> String {
    let mut s = String::new();
    for (v, e) in [("x", a), ("y", b)] {
        match e {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{e}")),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn format_poly(p: &Poly2) -> String {
    format_terms(p.iter().map(|(&(a, b), c)| (mono2(a, b), c.clone())))
}

fn format_coordinates(c: &[Q]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn cmd_bracket(file: &Path, cfg: &RunConfig, lhs: &str, rhs: &str, mode: BracketMode) -> Result<Outcome, CliError> {
    let a = load_cobar(file)?;
    let parse = |s: &str, which: &str| parse_expr(s, a.algebra()).map_err(|e| CliError(format!("{which} operand `{s}`: {e}")));
    let (ea, eb) = (parse(lhs, "left")?, parse(rhs, "right")?);
    let mut r = Report::new(cfg.format);
    mutation_note(&mut r, a.source());
    let mut fields = vec![("lhs", a.algebra().format(&ea)), ("rhs", a.algebra().format(&eb))];
    match mode {
        BracketMode::Double => {
            fields.push(("double bracket", a.format_double(&a.double_bracket(&ea, &eb))));
        }
        BracketMode::Natural => {
            let (na, nb) = (a.project(&ea, cfg.reduced), a.project(&eb, cfg.reduced));
            fields.push(("quotient", if cfg.reduced { "FT" } else { "natural" }.into()));
            fields.push(("bracket", a.format_natural(&natural_bracket(&a, &na, &nb))));
        }
        BracketMode::Homology => {
            let complex = NaturalComplex::for_cobar(&a, cfg.reduced)?;
            let (na, nb) = (complex.project(&ea), complex.project(&eb));
            let cls = homology_bracket(&a, &complex, &na, &nb).map_err(|e| match e {
                necklace::Error::NotACycle => CliError("both operands must be cycles in the quotient complex".into()),
                e => e.into(),
            })?;
            fields.push(("quotient", if cfg.reduced { "FT" } else { "natural" }.into()));
            fields.push(("class", a.format_natural(&cls.representative)));
            fields.push(("degree", cls.degree.to_string()));
            fields.push(("weight", cls.weight.to_string()));
            fields.push(("coordinates", format_coordinates(&cls.coordinates)));
            if let Ok(l) = kxy_letters(&a) {
                if cls.representative.is_zero() {
                    fields.push(("form", "0".into()));
                } else if let Ok(p) = abelianize(&l, &cls.representative) {
                    fields.push(("polynomial", format_poly(&p)));
                } else if let Ok(f) = Form1::from_cycle(&l, &cls.representative) {
                    fields.push(("form", f.to_string()));
                }
            }
        }
    }
    r.fields(&fields);
    Ok(Outcome { stdout: r.into_string(), passed: true })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum HomologyTarget {
    /// The commutator quotient of the cobar construction.
    Natural,
    /// The cyclic complex of the coalgebra, compared with the natural one.
    Cyclic,
    /// Representation algebras for each `--dim`.
    Rep,
}

fn word_degrees(a: &CobarAlgebra, wt: u32) -> BTreeSet<i64> {
    a.algebra().words_of_weight(wt).iter().map(|w| a.word_degree(w)).collect()
}

pub fn cmd_homology(file: &Path, cfg: &RunConfig, target: HomologyTarget) -> Result<Outcome, CliError> {
    let a = load_cobar(file)?;
    let max_w = cfg.weight_or(4);
    let mut r = Report::new(cfg.format);
    mutation_note(&mut r, a.source());
    let mut passed = true;
    match target {
        HomologyTarget::Natural => {
            let complex = NaturalComplex::for_cobar(&a, cfg.reduced)?;
            r.note(if cfg.reduced { "reduced quotient FT" } else { "natural quotient" });
            let mut t = Table::new(&["degree", "weight", "dim", "representatives"]);
            for wt in 1..=max_w {
                for deg in word_degrees(&a, wt).into_iter().filter(|&d| cfg.degree_ok(d)) {
                    let h = complex.homology(deg, wt)?;
                    let reps: Vec<String> = h.representatives.iter().map(|x| a.format_natural(x)).collect();
                    t.push(vec![deg.to_string(), wt.to_string(), h.dim().to_string(), reps.join("; ")]);
                }
            }
            r.table(&t);
        }
        HomologyTarget::Cyclic => {
            let report = compare_with_cobar(a.source(), max_w)?;
            r.note("natural: homology of the natural quotient; cyclic: homology of the cyclic complex");
            let mut t = Table::new(&["degree", "weight", "natural", "cyclic", "chain-iso", "match"]);
            for s in report.slices.iter().filter(|s| cfg.degree_ok(s.degree)) {
                t.push(vec![
                    s.degree.to_string(),
                    s.weight.to_string(),
                    s.natural_homology.to_string(),
                    s.cyclic_homology.to_string(),
                    if s.is_isomorphism() { "yes" } else { "no" }.into(),
                    if s.passed() { "ok" } else { "FAIL" }.into(),
                ]);
            }
            r.table(&t);
            passed = report.slices.iter().filter(|s| cfg.degree_ok(s.degree)).all(|s| s.passed());
        }
        HomologyTarget::Rep => {
            let mut t = Table::new(&["d", "degree", "weight", "dim", "representatives"]);
            for d in cfg.dims_or(&[1]) {
                let ra = rep_of_cobar(&a, d)?;
                for wt in 1..=max_w {
                    for deg in word_degrees(&a, wt).into_iter().filter(|&x| cfg.degree_ok(x)) {
                        let (dim, reps) = rep_homology_slice(&ra, deg, wt)?;
                        let reps: Vec<String> = reps.iter().map(|x| ra.format(x)).collect();
                        t.push(vec![d.to_string(), deg.to_string(), wt.to_string(), dim.to_string(), reps.join("; ")]);
                    }
                }
            }
            r.table(&t);
        }
    }
    Ok(Outcome { stdout: r.into_string(), passed })
}

/// Canonical words of the reduced quotient with weight `1..=max_weight`.
pub fn natural_basis_words(a: &CobarAlgebra, max_weight: u32) -> Result<Vec<Word>, CliError> {
    let complex = NaturalComplex::for_cobar(a, true)?;
    let mut out = Vec::new();
    for wt in 1..=max_weight {
        for deg in word_degrees(a, wt) {
            out.extend(complex.slice(deg, wt).basis.iter().cloned());
        }
    }
    Ok(out)
}

const LISTED_FAILURES: usize = 10;

pub fn cmd_traces(file: &Path, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let a = load_cobar(file)?;
    let max_w = cfg.weight_or(4);
    let words = natural_basis_words(&a, max_w)?;
    let pairs: Vec<(&Word, &Word)> = words.iter().flat_map(|u| words.iter().map(move |v| (u, v))).collect();
    let mut r = Report::new(cfg.format);
    mutation_note(&mut r, a.source());
    r.note(format!("Tr{{a,b}} = {{Tr a, Tr b}} on pairs of quotient basis words of weight <= {max_w}"));
    let mut t = Table::new(&["d", "pairs", "failed", "status"]);
    let mut failures = Vec::new();
    let mut axioms = Vec::new();
    let mut passed = true;
    for d in cfg.dims_or(&[1, 2]) {
        let ra = rep_of_cobar(&a, d)?;
        let results: Result<Vec<_>, _> = pairs
            .par_iter()
            .map(|(u, v)| check_trace_poisson(&ra, &Element::word((*u).clone()), &Element::word((*v).clone())))
            .collect();
        let bad: Vec<_> = results?.into_iter().filter_map(|x| x.err()).collect();
        passed &= bad.is_empty();
        t.push(vec![d.to_string(), pairs.len().to_string(), bad.len().to_string(), if bad.is_empty() { "pass" } else { "FAIL" }.into()]);
        for m in bad.iter().take(LISTED_FAILURES) {
            failures.push(format!("d={d} {m}"));
        }
        if bad.len() > LISTED_FAILURES {
            failures.push(format!("d={d} ... and {} more", bad.len() - LISTED_FAILURES));
        }
        if cfg.samples > 0 {
            let samples = sample_triples(&ra, cfg.samples, 3, cfg.seed);
            let rep = check_rep_poisson_axioms(&ra, &samples)?;
            passed &= rep.passed();
            axioms.push(rep);
        }
    }
    r.table(&t);
    for f in &failures {
        r.note(f);
    }
    if !axioms.is_empty() {
        r.note(format!("Poisson axioms on {} seeded samples (seed {})", cfg.samples, cfg.seed));
        let mut at = Table::new(&["d", "family", "checked", "failed", "status", "first failure"]);
        for rep in &axioms {
            for f in &rep.families {
                at.push(vec![
                    rep.dim.to_string(),
                    f.name.into(),
                    f.checked.to_string(),
                    f.failed.to_string(),
                    if f.failed == 0 { "pass" } else { "FAIL" }.into(),
                    f.first_failure.clone().unwrap_or_default(),
                ]);
            }
        }
        r.table(&at);
    }
    Ok(Outcome { stdout: r.into_string(), passed })
}
