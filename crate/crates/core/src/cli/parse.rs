//! Expression grammar for algebra elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := int | 'q' | generator | '(' expr ')' | '[' '-'? int (';' int)? ']'
//! ```
//!
//! Generators are `E<i>`, `F<i>`, `K<i>`, `Kb<i>`, `D<i>`, `Db<i>` and `J`.
//! `[n]` is the quantum integer in base `q`, `[n;i]` in base `q_i`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::presentation::{AlgebraElement, Letter, Presentation, Word};
use crate::qscalar::{quantum_integer, QScalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String, Option<usize>),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k] as char;
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let s = k;
            while k < b.len() && b[k].is_ascii_digit() {
                k += 1;
            }
            out.push((s, Tok::Int(text[s..k].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let s = k;
            while k < b.len() && b[k].is_ascii_alphabetic() {
                k += 1;
            }
            let name = text[s..k].to_string();
            let ds = k;
            while k < b.len() && b[k].is_ascii_digit() {
                k += 1;
            }
            let idx = if ds < k {
                Some(text[ds..k].parse().map_err(|_| Error::Syntax { position: ds, message: "index too large".into() })?)
            } else {
                None
            };
            out.push((s, Tok::Ident(name, idx)));
        } else if "+-*/^()[];".contains(c) {
            out.push((k, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(Error::Syntax { position: k, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    p: &'a Presentation,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.offset(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(..) | Tok::Sym('(' | '[')))
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.concat(&self.unary()?);
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.unary()?;
                let Some(c) = d.as_scalar() else {
                    return Err(Error::Syntax { position: at, message: "division by a non-scalar".into() });
                };
                let inv = c.inverse().map_err(|_| Error::Syntax { position: at, message: "division by zero".into() })?;
                acc = acc.scale(&inv);
            } else if self.starts_factor() {
                acc = acc.concat(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<AlgebraElement> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let v: i64 = n.try_into().map_err(|_| Error::Syntax { position: self.offset(), message: "integer too large".into() })?;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn power(&mut self) -> Result<AlgebraElement> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        let e = self.signed_int()?;
        if e >= 0 {
            return Ok(base.concat_pow(e as usize));
        }
        match base.as_scalar() {
            Some(c) if !c.is_zero() => Ok(AlgebraElement::scalar(c.pow(e)?)),
            _ => Err(Error::Syntax { position: at, message: "negative power of a non-scalar".into() }),
        }
    }

    fn index(&self, idx: Option<usize>, name: &str) -> Result<u8> {
        let i = match idx {
            Some(i) => i,
            None => return self.err(format!("generator {name} needs an index")),
        };
        if i >= self.p.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.p.rank() });
        }
        Ok(i as u8)
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(AlgebraElement::scalar(QScalar::from_bigint(n)))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                self.pos += 1;
                let n = self.signed_int()?;
                let base = if self.eat(';') {
                    let at = self.offset();
                    let i = self.signed_int()?;
                    if i < 0 || i as usize >= self.p.rank() {
                        return Err(Error::IndexOutOfRange { index: i.max(0) as usize, rank: self.p.rank() })
                            .map_err(|e| if i < 0 { Error::Syntax { position: at, message: "negative index".into() } } else { e });
                    }
                    self.p.datum().symmetrizer(i as usize)
                } else {
                    1
                };
                self.expect(']')?;
                Ok(AlgebraElement::scalar(quantum_integer(n, base)))
            }
            Tok::Ident(name, idx) => {
                let at = self.offset();
                self.pos += 1;
                let l = match name.as_str() {
                    "q" if idx.is_none() => return Ok(AlgebraElement::scalar(QScalar::q_pow(1))),
                    "J" if idx.is_none() => Letter::J,
                    "E" => Letter::E(self.index(idx, &name)?),
                    "F" => Letter::F(self.index(idx, &name)?),
                    "K" => Letter::K(self.index(idx, &name)?),
                    "Kb" => Letter::Kb(self.index(idx, &name)?),
                    "D" => Letter::D(self.index(idx, &name)?),
                    "Db" => Letter::Db(self.index(idx, &name)?),
                    _ => {
                        let full = idx.map_or(name.clone(), |i| format!("{name}{i}"));
                        return Err(Error::UnknownGenerator(format!("`{full}` at position {at}")));
                    }
                };
                Ok(AlgebraElement::from_word(Word::letter(l)))
            }
            Tok::Sym(c) => self.err(format!("unexpected '{c}'")),
        }
    }
}

/// Parses `text` into an unreduced element over the generators of `p`.
pub fn parse_expression(text: &str, p: &Presentation) -> Result<AlgebraElement> {
    let toks = lex(text)?;
    let mut ps = Parser { toks, pos: 0, end: text.len(), p };
    if ps.peek().is_none() {
        return ps.err("empty expression");
    }
    let e = ps.expr()?;
    if ps.pos < ps.toks.len() {
        return ps.err("unexpected trailing input");
    }
    Ok(e)
}
