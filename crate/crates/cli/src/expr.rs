//! Noncommutative polynomial expressions in the cobar generators.
//!
//! `expr := term (('+' | '-') term)*`, `term := unary ('*' unary)*`,
//! `unary := ('+' | '-') unary | power`, `power := atom ('^' n)?`,
//! `atom := rational | name | '(' expr ')'`. Rationals are `n` or `p/q`.

use std::fmt;

use necklace::exactla::{q, Q};
use necklace::graded_core::{Element, FreeDGAlgebra};

use crate::input::parse_rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ExprError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Name(String),
    Op(char),
    End,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if "+-*^()".contains(c) {
            out.push((col, Tok::Op(c)));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                i += 1;
            }
            let lit: String = cs[start..i].iter().collect();
            let v = parse_rational(&lit).ok_or_else(|| ExprError { column: col, message: format!("bad rational `{lit}`") })?;
            out.push((col, Tok::Num(v)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Name(cs[start..i].iter().collect())));
        } else {
            return Err(ExprError { column: col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((cs.len() + 1, Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    alg: &'a FreeDGAlgebra,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn col(&self) -> usize {
        self.toks[self.pos].0
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { column: self.col(), message: message.into() })
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.alg.multiply(a, b).expect("operands are built from this algebra")
    }

    fn expr(&mut self) -> Result<Element, ExprError> {
        let mut acc = self.term()?;
        loop {
            let s = match self.peek() {
                Tok::Op('+') => q(1),
                Tok::Op('-') => q(-1),
                _ => return Ok(acc),
            };
            self.pos += 1;
            let t = self.term()?;
            acc.add_scaled(&s, &t);
        }
    }

    fn term(&mut self) -> Result<Element, ExprError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Op('*') {
            self.pos += 1;
            let f = self.unary()?;
            acc = self.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Element, ExprError> {
        match self.peek() {
            Tok::Op('-') => {
                self.pos += 1;
                Ok(self.unary()?.scaled(&q(-1)))
            }
            Tok::Op('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Element, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let n = match self.peek() {
            Tok::Num(v) if v.is_integer() && *v >= q(0) => v.to_integer(),
            _ => return self.err("exponent must be a nonnegative integer"),
        };
        let n: u32 = n.try_into().map_err(|_| ExprError { column: self.col(), message: "exponent too large".into() })?;
        self.pos += 1;
        let mut acc = Element::one();
        for _ in 0..n {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Element, ExprError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(Element::scalar(v))
            }
            Tok::Name(n) => match self.alg.generator(&n) {
                Some(g) => {
                    self.pos += 1;
                    Ok(Element::letter(g))
                }
                None => self.err(format!("unknown generator `{n}`")),
            },
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of expression"),
            Tok::Op(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

pub fn parse_expr(s: &str, alg: &FreeDGAlgebra) -> Result<Element, ExprError> {
    let mut p = Parser { toks: lex(s)?, pos: 0, alg };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
