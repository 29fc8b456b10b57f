//! Polynomial literals: integers, variables, `+ - * ^`, parentheses.
//! The identifier `p` always denotes the prime.

use crate::error::{Error, Result};
use crate::ring::CommRing;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<u64>().map_err(|_| Error::Parse {
                column: col,
                message: format!("integer literal `{text}` too large"),
            })?;
            out.push((Tok::Int(n), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::Parse { column: col, message: format!("unexpected character `{c}`") }),
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, R: CommRing> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    ring: &'a R,
    lookup: &'a dyn Fn(&str) -> Option<R::Elem>,
    p: R::Elem,
}

impl<R: CommRing> Parser<'_, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { column: self.col(), message: message.into() })
    }

    fn expr(&mut self) -> Result<R::Elem> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<R::Elem> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                // juxtaposition, as in `2x` or `x(y+1)`
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<R::Elem> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let f = self.factor()?;
                return Ok(self.ring.neg(&f));
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    Ok(self.ring.pow(&base, e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<R::Elem> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let r = match i64::try_from(n) {
                    Ok(v) => Ok(self.ring.from_int(v)),
                    Err(_) => self.err("integer literal too large"),
                };
                self.pos += 1;
                r
            }
            Some(Tok::Ident(name)) => {
                if name == "p" {
                    self.pos += 1;
                    return Ok(self.p.clone());
                }
                match (self.lookup)(&name) {
                    Some(v) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src` directly into `ring`, resolving identifiers with `lookup`.
pub fn parse_into<R: CommRing>(
    src: &str,
    ring: &R,
    lookup: &dyn Fn(&str) -> Option<R::Elem>,
    p: R::Elem,
) -> Result<R::Elem> {
    let toks = lex(src)?;
    let mut parser = Parser { toks, pos: 0, end_col: src.chars().count() + 1, ring, lookup, p };
    if parser.peek().is_none() {
        return parser.err("empty expression");
    }
    let v = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(v)
}
