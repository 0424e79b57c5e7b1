//! Text syntax for binary forms.
//!
//! Two shapes are accepted:
//!
//! * a coefficient list `[a0, a1, ..., an]`, entries integer, `p/q` or
//!   decimal (decimals are read exactly as rationals);
//! * a homogeneous expression in `X` and `Y` built from numbers, `+ - *`,
//!   integer powers `^`, parentheses and juxtaposition (`XY(X-Y)`), plus the
//!   shorthands `P(k)` and `FSTAR(n)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::families::{make_fstar, make_pk};
use super::form::{rational_to_f64, BinaryForm, Coeffs};
use crate::error::{Error, Result};

pub fn parse_form(src: &str) -> Result<BinaryForm> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, src_len: src.len() };
    if p.peek_is(&Tok::LBracket) {
        let form = p.coefficient_list()?;
        p.expect_end()?;
        return Ok(form);
    }
    let poly = p.expr()?;
    p.expect_end()?;
    poly.into_form()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    X,
    Y,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        let start = i;
        let simple = match ch {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() || ch == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            out.push((start, Tok::Num(parse_decimal(&src[start..i], start)?)));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &src[start..i];
            match word {
                "X" | "x" => out.push((start, Tok::X)),
                "Y" | "y" => out.push((start, Tok::Y)),
                _ if word.chars().all(|c| matches!(c, 'X' | 'Y' | 'x' | 'y')) => {
                    // juxtaposed variables such as "XY"
                    for (k, c) in word.chars().enumerate() {
                        let t = if c.eq_ignore_ascii_case(&'x') { Tok::X } else { Tok::Y };
                        out.push((start + k, t));
                    }
                }
                _ => out.push((start, Tok::Ident(word.to_ascii_uppercase()))),
            }
            continue;
        }
        return Err(Error::Parse { pos: start, msg: format!("unexpected character {ch:?}") });
    }
    Ok(out)
}

fn parse_decimal(s: &str, pos: usize) -> Result<BigRational> {
    let err = || Error::Parse { pos, msg: format!("malformed number {s:?}") };
    let (int, frac) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return Err(err());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| err())?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    Ok(BigRational::new(num, den))
}

/// Exact or complex-float scalar used while building a polynomial.
#[derive(Debug, Clone)]
enum Scalar {
    Exact(BigRational),
    Float(Complex64),
}

impl Scalar {
    fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(rational_to_f64(r), 0.0),
            Scalar::Float(z) => *z,
        }
    }

    fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Float(self.to_complex() + o.to_complex()),
        }
    }

    fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Float(self.to_complex() * o.to_complex()),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(a) => a.is_zero(),
            Scalar::Float(z) => z.norm_sqr() == 0.0,
        }
    }
}

/// Sparse polynomial in X and Y keyed by (deg_x, deg_y).
#[derive(Debug, Clone, Default)]
struct Poly(BTreeMap<(u32, u32), Scalar>);

impl Poly {
    fn constant(c: Scalar) -> Poly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((0, 0), c);
        }
        Poly(m)
    }

    fn monomial(dx: u32, dy: u32) -> Poly {
        let mut m = BTreeMap::new();
        m.insert((dx, dy), Scalar::Exact(BigRational::one()));
        Poly(m)
    }

    fn from_form(f: &BinaryForm) -> Poly {
        let n = f.degree() as u32;
        let mut m = BTreeMap::new();
        match f.coeffs() {
            Coeffs::Exact(c) => {
                for (k, a) in c.iter().enumerate() {
                    if !a.is_zero() {
                        m.insert((n - k as u32, k as u32), Scalar::Exact(a.clone()));
                    }
                }
            }
            Coeffs::Complex(c) => {
                for (k, a) in c.iter().enumerate() {
                    if a.norm_sqr() != 0.0 {
                        m.insert((n - k as u32, k as u32), Scalar::Float(*a));
                    }
                }
            }
        }
        Poly(m)
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let sum = match m.get(k) {
                Some(a) => a.add(v),
                None => v.clone(),
            };
            if sum.is_zero() {
                m.remove(k);
            } else {
                m.insert(*k, sum);
            }
        }
        Poly(m)
    }

    fn neg(&self) -> Poly {
        self.scale(&Scalar::Exact(-BigRational::one()))
    }

    fn scale(&self, c: &Scalar) -> Poly {
        Poly(
            self.0
                .iter()
                .map(|(k, v)| (*k, v.mul(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut acc = Poly::default();
        for ((ax, ay), a) in &self.0 {
            let mut term = BTreeMap::new();
            for ((bx, by), b) in &o.0 {
                term.insert((ax + bx, ay + by), a.mul(b));
            }
            acc = acc.add(&Poly(term));
        }
        acc
    }

    fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(Scalar::Exact(BigRational::one()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn as_constant(&self) -> Option<Scalar> {
        match self.0.len() {
            0 => Some(Scalar::Exact(BigRational::zero())),
            1 => self.0.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn into_form(self) -> Result<BinaryForm> {
        let degrees: Vec<u32> = self.0.keys().map(|(x, y)| x + y).collect();
        let Some(&n) = degrees.first() else {
            return Err(Error::ZeroForm);
        };
        if degrees.iter().any(|&d| d != n) {
            return Err(Error::Parse { pos: 0, msg: "expression is not homogeneous".into() });
        }
        if n == 0 {
            return Err(Error::Parse { pos: 0, msg: "constant expression is not a form".into() });
        }
        let exact = self.0.values().all(|v| matches!(v, Scalar::Exact(_)));
        if exact {
            let mut c = vec![BigRational::zero(); n as usize + 1];
            for ((_, y), v) in self.0 {
                if let Scalar::Exact(r) = v {
                    c[y as usize] = r;
                }
            }
            BinaryForm::from_rationals(c)
        } else {
            let mut c = vec![Complex64::new(0.0, 0.0); n as usize + 1];
            for ((_, y), v) in self.0 {
                c[y as usize] = v.to_complex();
            }
            BinaryForm::from_complex(c)
        }
    }
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    src_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn peek_is(&self, t: &Tok) -> bool {
        self.peek() == Some(t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.src_len)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek_is(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {t:?}"))
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.pos < self.tokens.len() {
            return self.error("trailing input");
        }
        Ok(())
    }

    fn coefficient_list(&mut self) -> Result<BinaryForm> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        loop {
            out.push(self.signed_number()?);
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBracket) => break,
                _ => {
                    self.pos -= 1;
                    return self.error("expected ',' or ']'");
                }
            }
        }
        BinaryForm::from_rationals(out)
    }

    fn signed_number(&mut self) -> Result<BigRational> {
        let mut sign = BigRational::one();
        while let Some(t) = self.peek() {
            match t {
                Tok::Minus => sign = -sign,
                Tok::Plus => {}
                _ => break,
            }
            self.pos += 1;
        }
        let Some(Tok::Num(mut v)) = self.peek().cloned() else {
            return self.error("expected a number");
        };
        self.pos += 1;
        if self.peek_is(&Tok::Slash) {
            self.pos += 1;
            let Some(Tok::Num(d)) = self.peek().cloned() else {
                return self.error("expected a denominator");
            };
            if d.is_zero() {
                return self.error("division by zero");
            }
            self.pos += 1;
            v /= d;
        }
        Ok(sign * v)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    let Some(c) = rhs.as_constant() else {
                        return self.error("can only divide by a constant");
                    };
                    let inv = match c {
                        Scalar::Exact(r) if !r.is_zero() => Scalar::Exact(r.recip()),
                        Scalar::Float(z) if z.norm_sqr() != 0.0 => Scalar::Float(z.inv()),
                        _ => return self.error("division by zero"),
                    };
                    acc = acc.scale(&inv);
                }
                // juxtaposition: "2X", "XY(X-Y)"
                Some(Tok::X | Tok::Y | Tok::LParen | Tok::Ident(_) | Tok::Num(_)) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek_is(&Tok::Caret) {
            self.pos += 1;
            let e = self.small_integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn small_integer(&mut self) -> Result<u32> {
        match self.bump() {
            Some(Tok::Num(v)) if v.is_integer() => {
                let n: BigInt = v.to_integer();
                u32::try_from(n).or_else(|_| {
                    self.pos -= 1;
                    self.error("integer too large")
                })
            }
            _ => {
                self.pos -= 1;
                self.error("expected a non-negative integer")
            }
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.pos;
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Poly::constant(Scalar::Exact(v))),
            Some(Tok::X) => Ok(Poly::monomial(1, 0)),
            Some(Tok::Y) => Ok(Poly::monomial(0, 1)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.expect(Tok::LParen)?;
                let k = self.small_integer()?;
                self.expect(Tok::RParen)?;
                let form = match name.as_str() {
                    "P" => make_pk(k),
                    "FSTAR" => make_fstar(k),
                    _ => {
                        self.pos = at;
                        return self.error(format!("unknown function {name}"));
                    }
                };
                form.map(|f| Poly::from_form(&f)).map_err(|e| Error::Parse {
                    pos: self.tokens[at].0,
                    msg: e.to_string(),
                })
            }
            _ => {
                self.pos = at;
                self.error("expected X, Y, a number or '('")
            }
        }
    }
}
