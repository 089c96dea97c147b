//! Recursive-descent parser for homogeneous polynomial expressions.
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | var | '(' expr ')' | '-' atom
//! rational := int ('/' int)?
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Poly, VarSpace};
use crate::scalar::{FieldConfig, Scalar};

const MAX_EXPONENT: u32 = 256;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

/// Possibly inhomogeneous intermediate value.
#[derive(Clone)]
struct Raw(BTreeMap<Monomial, Scalar>);

impl Raw {
    fn constant(n: usize, c: Scalar) -> Raw {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Monomial::one(n), c);
        }
        Raw(m)
    }

    fn add(mut self, other: Raw, sign: bool) -> Raw {
        for (m, c) in other.0 {
            let c = if sign { c } else { -c };
            let e = self.0.entry(m.clone()).or_insert_with(|| c.field().zero());
            *e += &c;
            if e.is_zero() {
                self.0.remove(&m);
            }
        }
        self
    }

    fn mul(&self, other: &Raw) -> Raw {
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                let m = ma.mul(mb);
                let c = ca * cb;
                let e = out.entry(m.clone()).or_insert_with(|| c.field().zero());
                *e += &c;
                if e.is_zero() {
                    out.remove(&m);
                }
            }
        }
        Raw(out)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [String],
    field: FieldConfig,
    // degree of the first top-level term; the nominal degree of a result that cancels to 0
    first_term_degree: Option<u32>,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.at(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Raw> {
        let n = self.vars.len();
        let mut sign = true;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                sign = false;
            }
            _ => {}
        }
        let mut acc = Raw::constant(n, self.field.zero());
        loop {
            let t = self.term()?;
            if self.depth == 0 && self.first_term_degree.is_none() {
                self.first_term_degree = t.0.keys().next().map(Monomial::degree);
            }
            acc = acc.add(t, sign);
            match self.peek() {
                Tok::Plus => sign = true,
                Tok::Minus => sign = false,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Raw> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Tok::Slash => return Err(Error::NonLiteralDivision { pos: self.at() }),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Raw> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.at();
        let e = match self.bump() {
            Tok::Int(e) => e,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: "expected a natural-number exponent".into(),
                })
            }
        };
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("exponent larger than {MAX_EXPONENT}"),
                })
            }
        };
        let mut acc = Raw::constant(self.vars.len(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Raw> {
        let n = self.vars.len();
        let pos = self.at();
        match self.bump() {
            Tok::Int(num) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.at();
                    let den = match self.bump() {
                        Tok::Int(d) => d,
                        _ => return Err(Error::NonLiteralDivision { pos: dpos }),
                    };
                    let c = self.field.from_ratio(&num, &den)?;
                    Ok(Raw::constant(n, c))
                } else {
                    Ok(Raw::constant(n, self.field.from_bigint(&num)))
                }
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    let mut m = BTreeMap::new();
                    m.insert(Monomial::var(n, i), self.field.one());
                    Ok(Raw(m))
                }
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::LParen => {
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => {
                let inner = self.atom()?;
                Ok(Raw::constant(n, self.field.zero()).add(inner, false))
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parses `text` over the named primal variables into a canonical
/// homogeneous polynomial.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S], field: FieldConfig) -> Result<Poly> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars: &vars,
        field,
        first_term_degree: None,
        depth: 0,
    };
    let raw = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    let mut degrees = raw.0.keys().map(Monomial::degree);
    let degree = match degrees.next() {
        Some(d) => d,
        None => p.first_term_degree.unwrap_or(0),
    };
    // keys are graded-ordered, so the last key has the largest degree
    if let Some(top) = raw.0.keys().next_back().map(Monomial::degree) {
        if top != degree {
            return Err(Error::NonHomogeneous {
                first: top,
                second: degree,
            });
        }
    }
    Poly::from_terms(VarSpace::Primal, vars.len(), degree, field, raw.0)
}
