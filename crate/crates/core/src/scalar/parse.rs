//! A small expression reader for elements of F_q(θ).
//!
//! Grammar: sums and differences of products and quotients of powers of
//! atoms; an atom is an integer, `theta`/`θ`, or a parenthesized expression.
//! Juxtaposition multiplies (`2theta^3`). Integers denote F_p elements in a
//! prime field and element codes `0..q` in an extension field.

use super::field::Field;
use super::poly::{Poly, Var};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::Open);
                i += 1
            }
            ')' => {
                out.push(Tok::Close);
                i += 1
            }
            'θ' => {
                out.push(Tok::Var);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("integer too large: {text}")))?;
                out.push(Tok::Int(v));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "theta" {
                    out.push(Tok::Var);
                } else {
                    return Err(Error::Parse(format!("unknown symbol '{word}' in '{s}'")));
                }
            }
            other => return Err(Error::Parse(format!("unexpected '{other}' in '{s}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                Some(Tok::Int(_)) | Some(Tok::Var) | Some(Tok::Open) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.next() {
                Some(Tok::Int(k)) => {
                    let k = i64::try_from(k).map_err(|_| Error::Parse("exponent too large".into()))?;
                    return base.pow(if neg { -k } else { k });
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.next() {
            Some(Tok::Int(v)) => {
                let c = if self.field.is_prime_field() {
                    (v % self.field.p() as u64) as u32
                } else if v < self.field.q() as u64 {
                    v as u32
                } else {
                    return Err(Error::Parse(format!(
                        "{v} is not an element code of F_{}",
                        self.field.q()
                    )));
                };
                Ok(RatFunc::constant(self.field, c))
            }
            Some(Tok::Var) => Ok(RatFunc::theta(self.field)),
            Some(Tok::Open) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::Close) => Ok(e),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_ratfunc(field: &Field, s: &str) -> Result<RatFunc> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        field,
        toks,
        pos: 0,
    };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{s}'")));
    }
    Ok(r)
}

/// Parses a polynomial in θ; rejects proper fractions.
pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    let r = parse_ratfunc(field, s)?;
    if !r.is_polynomial() {
        return Err(Error::Parse(format!("'{s}' is not a polynomial")));
    }
    Ok(r.num().with_var(Var::Theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_common_forms() {
        let f = Field::new(3).unwrap();
        let p = parse_poly(&f, "2theta^3 + θ - 1").unwrap();
        assert_eq!(p, Poly::new(&f, Var::Theta, vec![2, 1, 0, 2]));
        let r = parse_ratfunc(&f, "(theta+1)^2/(theta+1)").unwrap();
        assert_eq!(r, RatFunc::from_poly(&Poly::new(&f, Var::Theta, vec![1, 1])));
        assert_eq!(parse_ratfunc(&f, "theta^-1").unwrap(), RatFunc::theta(&f).inv().unwrap());
    }

    #[test]
    fn rejects_garbage() {
        let f = Field::new(3).unwrap();
        for bad in ["", "theta +", "(theta", "x+1", "1/0", "theta/(theta", "2 3)"] {
            assert!(parse_ratfunc(&f, bad).is_err(), "{bad}");
        }
        assert!(parse_poly(&f, "1/theta").is_err());
        assert!(parse_ratfunc(&Field::new(4).unwrap(), "7").is_err());
    }
}
