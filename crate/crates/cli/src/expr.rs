//! A small expression language for plumbing trees.
//!
//! ```text
//! expr   := atom
//!         | "plumb(" expr "," expr [";" "X=" matrix] ")"
//!         | "stab(" expr ";" sign ["," "x=" vector] ")"
//!         | "knotplumb(" expr ";" kind ["," "x=" vector] ["," "c=" int] ")"
//! atom   := "U" | "H+" | "H-" | "T+" | "E"
//! sign   := "+" | "-"
//! kind   := "T+" | "E"
//! vector := "[" [int {"," int}] "]"
//! matrix := "[" [vector {"," vector}] "]"
//! ```
//!
//! Whitespace between tokens is ignored. Omitted gluing data defaults to zero
//! and an omitted crossing coefficient to 1.

use std::fmt;

use hopfweave::{BandSign, HopfError, IntMatrix, KnotKind, PlumbingTree};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Unknot,
    HopfPositive,
    HopfNegative,
    Trefoil,
    FigureEight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Atom(Atom),
    Plumb {
        left: Box<Expression>,
        right: Box<Expression>,
        coupling: Option<Vec<Vec<i64>>>,
    },
    Stab {
        inner: Box<Expression>,
        sign: BandSign,
        x: Option<Vec<i64>>,
    },
    KnotPlumb {
        inner: Box<Expression>,
        kind: KnotKind,
        x: Option<Vec<i64>>,
        c: Option<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub message: String,
    /// Byte offset into the input, zero-based.
    pub offset: usize,
    /// One-based.
    pub line: usize,
    /// One-based, counted in characters.
    pub column: usize,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = self.src[line_start..self.pos].chars().count() + 1;
        ParseError {
            message: message.into(),
            offset: self.pos,
            line,
            column,
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn found(&self) -> String {
        match self.rest().chars().next() {
            None => "end of input".into(),
            Some(c) => format!("{c:?}"),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?}, found {}", self.found())))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    /// `H+`, `T-`, … with optional whitespace before the sign.
    fn signed_letter(&mut self) -> Option<char> {
        if self.eat("+") {
            Some('+')
        } else if self.eat("-") {
            Some('-')
        } else {
            None
        }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let w = self.word();
        let atom = |a| Ok(Expression::Atom(a));
        match w {
            "U" => atom(Atom::Unknot),
            "E" => atom(Atom::FigureEight),
            "H" => match self.signed_letter() {
                Some('+') => atom(Atom::HopfPositive),
                Some(_) => atom(Atom::HopfNegative),
                None => Err(self.error(format!(
                    "expected '+' or '-' after H, found {}",
                    self.found()
                ))),
            },
            "T" => match self.signed_letter() {
                Some('+') => atom(Atom::Trefoil),
                _ => {
                    self.pos = start;
                    Err(self.error("only the positive trefoil T+ is an atom"))
                }
            },
            "plumb" => {
                self.expect("(")?;
                let left = self.expr()?;
                self.expect(",")?;
                let right = self.expr()?;
                let coupling = if self.eat(";") {
                    self.expect("X")?;
                    self.expect("=")?;
                    Some(self.matrix()?)
                } else {
                    None
                };
                self.expect(")")?;
                Ok(Expression::Plumb {
                    left: Box::new(left),
                    right: Box::new(right),
                    coupling,
                })
            }
            "stab" => {
                self.expect("(")?;
                let inner = self.expr()?;
                self.expect(";")?;
                let sign = match self.signed_letter() {
                    Some('+') => BandSign::Positive,
                    Some(_) => BandSign::Negative,
                    None => {
                        return Err(
                            self.error(format!("expected sign '+' or '-', found {}", self.found()))
                        )
                    }
                };
                let x = if self.eat(",") {
                    self.expect("x")?;
                    self.expect("=")?;
                    Some(self.vector()?)
                } else {
                    None
                };
                self.expect(")")?;
                Ok(Expression::Stab {
                    inner: Box::new(inner),
                    sign,
                    x,
                })
            }
            "knotplumb" => {
                self.expect("(")?;
                let inner = self.expr()?;
                self.expect(";")?;
                self.skip_ws();
                let kind_at = self.pos;
                let kind = match self.word() {
                    "E" => KnotKind::E,
                    "T" if self.eat("+") => KnotKind::TPlus,
                    _ => {
                        self.pos = kind_at;
                        return Err(self.error(format!(
                            "expected knot kind T+ or E, found {}",
                            self.found()
                        )));
                    }
                };
                let (mut x, mut c) = (None, None);
                while self.eat(",") {
                    self.skip_ws();
                    if x.is_none() && c.is_none() && self.eat("x") {
                        self.expect("=")?;
                        x = Some(self.vector()?);
                    } else if c.is_none() && self.eat("c") {
                        self.expect("=")?;
                        c = Some(self.int()?);
                    } else {
                        return Err(
                            self.error(format!("expected x= or c=, found {}", self.found()))
                        );
                    }
                }
                self.expect(")")?;
                Ok(Expression::KnotPlumb {
                    inner: Box::new(inner),
                    kind,
                    x,
                    c,
                })
            }
            _ => {
                self.pos = start;
                Err(self.error(format!("expected expression, found {}", self.found())))
            }
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut len = 0;
        let bytes = self.rest().as_bytes();
        if matches!(bytes.first(), Some(b'-' | b'+')) {
            len = 1;
        }
        let digits = bytes[len..]
            .iter()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if digits == 0 {
            self.pos = start + len;
            return Err(self.error(format!("expected integer, found {}", self.found())));
        }
        let text = &self.rest()[..len + digits];
        let value = text
            .parse()
            .map_err(|_| self.error(format!("integer {text} out of range")))?;
        self.pos += len + digits;
        Ok(value)
    }

    fn vector(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>, ParseError> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.vector()?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expression, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error(format!("unexpected trailing input {}", p.found())));
    }
    Ok(e)
}

fn write_vector(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Atom(a) => f.write_str(match a {
                Atom::Unknot => "U",
                Atom::HopfPositive => "H+",
                Atom::HopfNegative => "H-",
                Atom::Trefoil => "T+",
                Atom::FigureEight => "E",
            }),
            Expression::Plumb {
                left,
                right,
                coupling,
            } => {
                write!(f, "plumb({left},{right}")?;
                if let Some(rows) = coupling {
                    write!(f, ";X=[")?;
                    for (i, row) in rows.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write_vector(f, row)?;
                    }
                    write!(f, "]")?;
                }
                write!(f, ")")
            }
            Expression::Stab { inner, sign, x } => {
                write!(f, "stab({inner};{sign}")?;
                if let Some(x) = x {
                    write!(f, ",x=")?;
                    write_vector(f, x)?;
                }
                write!(f, ")")
            }
            Expression::KnotPlumb { inner, kind, x, c } => {
                let kind = match kind {
                    KnotKind::TPlus => "T+",
                    KnotKind::E => "E",
                };
                write!(f, "knotplumb({inner};{kind}")?;
                if let Some(x) = x {
                    write!(f, ",x=")?;
                    write_vector(f, x)?;
                }
                if let Some(c) = c {
                    write!(f, ",c={c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub fn render_expr(e: &Expression) -> String {
    e.to_string()
}

/// Builds the tree an expression denotes, checking every dimension.
pub fn elaborate(e: &Expression) -> Result<PlumbingTree, HopfError> {
    match e {
        Expression::Atom(a) => Ok(match a {
            Atom::Unknot => PlumbingTree::unknot(),
            Atom::HopfPositive => PlumbingTree::hopf_band(BandSign::Positive),
            Atom::HopfNegative => PlumbingTree::hopf_band(BandSign::Negative),
            Atom::Trefoil => PlumbingTree::trefoil(),
            Atom::FigureEight => PlumbingTree::figure_eight(),
        }),
        Expression::Plumb {
            left,
            right,
            coupling,
        } => {
            let (l, r) = (elaborate(left)?, elaborate(right)?);
            let x = match coupling {
                None => IntMatrix::zeros(l.mu(), r.mu()),
                Some(rows) if rows.is_empty() => IntMatrix::zeros(0, r.mu()),
                Some(rows) => IntMatrix::from_rows(rows)?,
            };
            l.plumb(&r, &x)
        }
        Expression::Stab { inner, sign, x } => {
            let t = elaborate(inner)?;
            let x = x.clone().unwrap_or_else(|| vec![0; t.mu()]);
            t.hopf_plumb(*sign, &x)
        }
        Expression::KnotPlumb { inner, kind, x, c } => {
            let t = elaborate(inner)?;
            let x = x.clone().unwrap_or_else(|| vec![0; t.mu()]);
            t.knot_plumb(*kind, &x, c.unwrap_or(1))
        }
    }
}
