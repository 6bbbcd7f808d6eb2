//! Coalgebra files.
//!
//! A file is a preamble of `key = value` lines followed by sections:
//!
//! ```text
//! cyclic_degree = -2
//! kind = coalgebra            # or `algebra`, dualized on load
//! mutation = bracket-sign     # optional
//!
//! [basis]
//! a 1 1 x                     # name degree weight [cobar letter]
//! [coproduct]
//! s a b 1                     # element left right coefficient
//! [differential]
//! u v 1/2                     # element target coefficient
//! [pairing]
//! a b 1                       # u v <u,v>, one entry per line
//! ```
//!
//! Algebra files use `[multiplication]` with `left right result coefficient`
//! in place of `[coproduct]`. Coefficients are integers or `p/q`.

use std::fmt;
use std::path::Path;

use necklace::cyclic_coalgebra::{dualize, CyclicAlgebra, CyclicCoalgebra, Mutation};
use necklace::exactla::Q;
use necklace::graded_core::Generator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl InputError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        InputError { line, column, message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Coalgebra,
    Algebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Basis,
    Coproduct,
    Multiplication,
    Differential,
    Pairing,
}

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    col: usize,
    text: &'a str,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { col: line[..s].chars().count() + 1, text: &line[s..i] });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { col: line[..s].chars().count() + 1, text: &line[s..] });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

pub fn parse_rational(s: &str) -> Option<Q> {
    let ok = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    let body = s.strip_prefix('-').unwrap_or(s);
    let valid = match body.split_once('/') {
        Some((n, d)) => ok(n) && ok(d) && d.bytes().any(|b| b != b'0'),
        None => ok(body),
    };
    if valid {
        s.parse().ok()
    } else {
        None
    }
}

struct Row {
    line: usize,
    section: Section,
    fields: Vec<(usize, String)>,
}

struct BasisRow {
    gen: Generator,
    cobar: Option<String>,
}

struct Parsed {
    kind: Kind,
    cyclic_degree: i64,
    mutation: Option<Mutation>,
    basis: Vec<BasisRow>,
    rows: Vec<Row>,
}

fn parse_int<T: std::str::FromStr>(line: usize, t: Token<'_>, what: &str) -> Result<T, InputError> {
    t.text.parse().map_err(|_| InputError::at(line, t.col, format!("expected {what}, found `{}`", t.text)))
}

fn scan(text: &str) -> Result<Parsed, InputError> {
    let mut kind = Kind::Coalgebra;
    let mut cyclic_degree = None;
    let mut mutation = None;
    let mut section: Option<Section> = None;
    let mut basis = Vec::new();
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        let line = strip_comment(raw);
        let ts = tokens(line);
        let Some(first) = ts.first().copied() else { continue };
        if first.text.starts_with('[') {
            let name = line.trim();
            section = Some(match name {
                "[basis]" => Section::Basis,
                "[coproduct]" => Section::Coproduct,
                "[multiplication]" => Section::Multiplication,
                "[differential]" => Section::Differential,
                "[pairing]" => Section::Pairing,
                _ => return Err(InputError::at(ln, first.col, format!("unknown section {name}"))),
            });
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            if section.is_some() {
                return Err(InputError::at(ln, first.col, "settings must come before the first section"));
            }
            let key = key.trim();
            let value = value.trim();
            let vcol = line.find(value).map_or(first.col, |i| line[..i].chars().count() + 1);
            match key {
                "cyclic_degree" => {
                    cyclic_degree = Some(value.parse::<i64>().map_err(|_| InputError::at(ln, vcol, format!("expected an integer, found `{value}`")))?)
                }
                "kind" => {
                    kind = match value {
                        "coalgebra" => Kind::Coalgebra,
                        "algebra" => Kind::Algebra,
                        _ => return Err(InputError::at(ln, vcol, format!("kind must be coalgebra or algebra, found `{value}`"))),
                    }
                }
                "mutation" => {
                    mutation = Some(Mutation::parse(value).ok_or_else(|| {
                        InputError::at(ln, vcol, format!("unknown mutation `{value}` (bracket-sign, rep-transpose, rotation-sign)"))
                    })?)
                }
                _ => return Err(InputError::at(ln, first.col, format!("unknown setting `{key}`"))),
            }
            continue;
        }
        let Some(sec) = section else {
            return Err(InputError::at(ln, first.col, "expected `key = value` or a section header"));
        };
        if sec == Section::Basis {
            if !(3..=4).contains(&ts.len()) {
                return Err(InputError::at(ln, first.col, "basis lines are `name degree weight [cobar-name]`"));
            }
            let degree = parse_int::<i64>(ln, ts[1], "a degree")?;
            let weight = parse_int::<u32>(ln, ts[2], "a nonnegative weight")?;
            basis.push(BasisRow { gen: Generator::new(ts[0].text, degree, weight), cobar: ts.get(3).map(|t| t.text.to_string()) });
            continue;
        }
        rows.push(Row { line: ln, section: sec, fields: ts.iter().map(|t| (t.col, t.text.to_string())).collect() });
    }
    let cyclic_degree = cyclic_degree.ok_or_else(|| InputError::at(0, 0, "missing `cyclic_degree = n`"))?;
    Ok(Parsed { kind, cyclic_degree, mutation, basis, rows })
}

/// Resolves names and coefficients of one table row.
struct RowReader<'a> {
    row: &'a Row,
    names: &'a [String],
}

impl RowReader<'_> {
    fn expect_len(&self, n: usize, shape: &str) -> Result<(), InputError> {
        if self.row.fields.len() != n {
            let col = self.row.fields.first().map_or(1, |f| f.0);
            return Err(InputError::at(self.row.line, col, format!("expected `{shape}`")));
        }
        Ok(())
    }

    fn index(&self, k: usize) -> Result<usize, InputError> {
        let (col, name) = &self.row.fields[k];
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| InputError::at(self.row.line, *col, format!("unknown basis element `{name}`")))
    }

    fn coef(&self, k: usize) -> Result<Q, InputError> {
        let (col, s) = &self.row.fields[k];
        parse_rational(s).ok_or_else(|| InputError::at(self.row.line, *col, format!("expected a rational `p/q`, found `{s}`")))
    }
}

fn located(line: usize, e: necklace::Error) -> InputError {
    InputError::at(line, 1, e.to_string())
}

/// Parses a file into a coalgebra. Algebra files are dualized. Validation
/// is left to the caller.
pub fn parse_coalgebra(text: &str) -> Result<CyclicCoalgebra, InputError> {
    let p = scan(text)?;
    let names: Vec<String> = p.basis.iter().map(|b| b.gen.name.clone()).collect();
    let gens: Vec<Generator> = p.basis.iter().map(|b| b.gen.clone()).collect();
    let mut c = match p.kind {
        Kind::Coalgebra => {
            let mut c = CyclicCoalgebra::new(gens, p.cyclic_degree).map_err(|e| located(0, e))?;
            for row in &p.rows {
                let r = RowReader { row, names: &names };
                match row.section {
                    Section::Coproduct => {
                        r.expect_len(4, "element left right coefficient")?;
                        c.add_coproduct(r.index(0)?, r.index(1)?, r.index(2)?, r.coef(3)?).map_err(|e| located(row.line, e))?;
                    }
                    Section::Differential => {
                        r.expect_len(3, "element target coefficient")?;
                        c.add_differential(r.index(0)?, r.index(1)?, r.coef(2)?).map_err(|e| located(row.line, e))?;
                    }
                    Section::Pairing => {
                        r.expect_len(3, "u v coefficient")?;
                        c.set_pairing_entry(r.index(0)?, r.index(1)?, r.coef(2)?).map_err(|e| located(row.line, e))?;
                    }
                    Section::Multiplication => {
                        return Err(InputError::at(row.line, 1, "[multiplication] needs `kind = algebra`"));
                    }
                    Section::Basis => unreachable!(),
                }
            }
            c
        }
        Kind::Algebra => {
            let mut a = CyclicAlgebra::new(gens, p.cyclic_degree).map_err(|e| located(0, e))?;
            for row in &p.rows {
                let r = RowReader { row, names: &names };
                match row.section {
                    Section::Multiplication => {
                        r.expect_len(4, "left right result coefficient")?;
                        a.add_product(r.index(0)?, r.index(1)?, r.index(2)?, r.coef(3)?).map_err(|e| located(row.line, e))?;
                    }
                    Section::Differential => {
                        r.expect_len(3, "element target coefficient")?;
                        a.add_differential(r.index(0)?, r.index(1)?, r.coef(2)?).map_err(|e| located(row.line, e))?;
                    }
                    Section::Pairing => {
                        r.expect_len(3, "u v coefficient")?;
                        a.set_pairing_entry(r.index(0)?, r.index(1)?, r.coef(2)?).map_err(|e| located(row.line, e))?;
                    }
                    Section::Coproduct => {
                        return Err(InputError::at(row.line, 1, "[coproduct] needs `kind = coalgebra`"));
                    }
                    Section::Basis => unreachable!(),
                }
            }
            dualize(&a).map_err(|e| located(0, e))?
        }
    };
    for (i, b) in p.basis.iter().enumerate() {
        if let Some(n) = &b.cobar {
            c.set_cobar_name(i, n.clone()).map_err(|e| located(0, e))?;
        }
    }
    c.set_mutation(p.mutation);
    Ok(c)
}

pub fn load_coalgebra(path: &Path) -> Result<CyclicCoalgebra, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::at(0, 0, format!("{}: {e}", path.display())))?;
    parse_coalgebra(&text).map_err(|mut e| {
        e.message = format!("{}: {}", path.display(), e.message);
        e
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use necklace::cyclic_coalgebra::{kxy_coalgebra, KxyVariant};
    use necklace::exactla::q;

    const OMEGA: &str = "\
cyclic_degree = -2
[basis]
a 1 1 x
b 1 1 y
s 2 2 t
[coproduct]
s a b 1
s b a -1
[pairing]
a b 1
b a -1
";

    #[test]
    fn parses_kxy() {
        assert_eq!(parse_coalgebra(OMEGA).unwrap(), kxy_coalgebra(KxyVariant::Omega));
    }

    #[test]
    fn torus_dualizes_to_kxy() {
        let text = "\
cyclic_degree = 2
kind = algebra
[basis]
alpha 1 1 x
beta 1 1 y
sigma 2 2 t
[multiplication]
alpha beta sigma 1
beta alpha sigma -1
[pairing]
alpha beta 1
beta alpha -1
";
        let c = parse_coalgebra(text).unwrap();
        assert_eq!(c.cyclic_degree(), -2);
        assert_eq!(c.coproduct(2).len(), 2);
        assert_eq!(c.pairing(0, 1), q(1));
        assert_eq!(c.cobar_name(2), "t");
        assert!(c.validate().required_passed());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6"), Some(q(-1) / q(2)));
        assert_eq!(parse_rational("7"), Some(q(7)));
        for bad in ["", "1/0", "x", "1/", "--1", "+1", "1.5"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn located_errors() {
        let e = parse_coalgebra("cyclic_degree = -2\n[basis]\na 1 1\n[pairing]\na  c 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 4));
        let e = parse_coalgebra("cyclic_degree = -2\n[basis]\na 1 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));
        let e = parse_coalgebra("cyclic_degree = -2\n[cobasis]\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_coalgebra("[basis]\n").unwrap_err();
        assert!(e.message.contains("cyclic_degree"));
        let e = parse_coalgebra("cyclic_degree = -2\n[basis]\na 1 1\n[pairing]\na a 1/0\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 5));
    }

    #[test]
    fn empty_basis() {
        let c = parse_coalgebra("cyclic_degree = 0\n").unwrap();
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn mutation_setting() {
        let c = parse_coalgebra(&format!("mutation = rotation-sign\n{OMEGA}")).unwrap();
        assert_eq!(c.mutation(), Some(Mutation::RotationSign));
        assert!(parse_coalgebra(&format!("mutation = flip\n{OMEGA}")).is_err());
    }
}
