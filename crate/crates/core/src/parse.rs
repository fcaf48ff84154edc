//! Parser for elements of `F_q[T]`, `F_q(T)` and `F{tau}`.
//!
//! Grammar: integers are reduced mod `p`, `w` is the generator of `F_(p^e)`, `T` the variable and
//! `t` stands for `tau`. Juxtaposition multiplies (`2T`, `T(T+1)`); `^` takes integer exponents.

use crate::algebra::{Field, Fq, FqAlgebra, FqElem, Poly, RationalField, RationalFunc};
use crate::drinfeld::{module_over_f, GlobalModule};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    T,
    W,
    Tau,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| Error::Syntax { pos: start, msg: "integer too large".into() })?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            'T' => Tok::T,
            'w' => Tok::W,
            't' => Tok::Tau,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            _ => return Err(Error::Syntax { pos: i, msg: format!("unexpected character '{c}'") }),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// A skew polynomial `sum c_i tau^i` with coefficients in `F_q(T)`.
type Skew = Vec<RationalFunc>;

struct Parser<'a> {
    f: &'a RationalField,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn scalar(&self, c: RationalFunc) -> Skew {
        vec![c]
    }

    fn trim(&self, mut s: Skew) -> Skew {
        while s.len() > 1 && self.f.is_zero(s.last().unwrap()) {
            s.pop();
        }
        s
    }

    fn add(&self, a: &Skew, b: &Skew) -> Skew {
        let n = a.len().max(b.len());
        let z = self.f.zero();
        let s = (0..n)
            .map(|i| self.f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.trim(s)
    }

    fn neg(&self, a: &Skew) -> Skew {
        a.iter().map(|c| self.f.neg(c)).collect()
    }

    /// `(sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^(q^i) tau^(i+j)`.
    fn mul(&self, a: &Skew, b: &Skew) -> Skew {
        let mut out = vec![self.f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let t = self.f.mul(x, &self.f.frob_q_iter(y, i));
                out[i + j] = self.f.add(&out[i + j], &t);
            }
        }
        self.trim(out)
    }

    fn as_scalar(&self, a: &Skew) -> Option<RationalFunc> {
        (a.len() == 1).then(|| a[0].clone())
    }

    fn expr(&mut self) -> Result<Skew> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let t = self.term()?;
                self.neg(&t)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.add(&acc, &self.neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Skew> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let p = self.power()?;
                    acc = self.mul(&acc, &p);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let p = self.power()?;
                    let d = self
                        .as_scalar(&p)
                        .ok_or(Error::Syntax { pos: at, msg: "can only divide by an element of F".into() })?;
                    let inv = self.f.inv(&d).ok_or(Error::DivisionByZero)?;
                    acc = self.mul(&acc, &self.scalar(inv));
                }
                Some(Tok::Num(_) | Tok::T | Tok::W | Tok::Tau | Tok::Open) => {
                    let p = self.power()?;
                    acc = self.mul(&acc, &p);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Skew> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.pos += 1;
        if negative {
            let c = self.as_scalar(&base).ok_or(Error::Syntax {
                pos: self.here(),
                msg: "negative powers need an element of F".into(),
            })?;
            let inv = self.f.inv(&c).ok_or(Error::DivisionByZero)?;
            return Ok(self.scalar(self.f.pow_u64(&inv, n)));
        }
        let mut acc = self.scalar(self.f.one());
        for _ in 0..n {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Skew> {
        let f = self.f;
        let fq = f.fq();
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(self.scalar(f.from_fq(fq.from_int((n % fq.p() as u64) as i64)))),
            Tok::T => Ok(self.scalar(f.t())),
            Tok::W => {
                if fq.order() == fq.p() as usize {
                    return Err(Error::FieldMismatch(format!("w is not defined over F_{}", fq.order())));
                }
                Ok(self.scalar(f.from_fq(FqElem(fq.p()))))
            }
            Tok::Tau => Ok(vec![f.zero(), f.one()]),
            Tok::Open => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                self.err("expected a number, T, w, t or '('")
            }
        }
    }
}

/// Parses a skew polynomial in `t`; coefficients `c_i` of `t^i`, low to high.
pub fn parse_skew(f: &RationalField, text: &str) -> Result<Vec<RationalFunc>> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser {
        f,
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected token");
    }
    Ok(e)
}

/// Parses an element of `F_q(T)`.
pub fn parse_element(f: &RationalField, text: &str) -> Result<RationalFunc> {
    let s = parse_skew(f, text)?;
    if s.len() > 1 {
        return Err(Error::FieldMismatch("expected an element of F_q(T), found t".into()));
    }
    Ok(s[0].clone())
}

/// Parses an element of `F_q[T]`.
pub fn parse_poly(fq: &Fq, text: &str) -> Result<Poly<FqElem>> {
    let f = RationalField::new(fq);
    let r = parse_element(&f, text)?;
    f.as_poly(&r)
        .ok_or_else(|| Error::FieldMismatch(format!("'{text}' is not a polynomial")))
}

/// Parses `phi_T`; the constant term must be `T`.
pub fn parse_module(f: &RationalField, text: &str) -> Result<GlobalModule> {
    let s = parse_skew(f, text)?;
    if s[0] != f.t() {
        return Err(Error::InvalidInput(format!(
            "phi_T must have constant term T, found {}",
            f.display(&s[0])
        )));
    }
    if s.len() < 2 {
        return Err(Error::InvalidInput("phi_T has rank 0".into()));
    }
    module_over_f(f, s[1..].to_vec())
}
