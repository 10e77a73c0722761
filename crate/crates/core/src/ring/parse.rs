//! Text form of rings and scalars.
//!
//! Scalars print as expanded polynomials (`3*X1^2*X2 - 1/2`), rationals as `p/q`
//! and localized fractions as `(poly)/s^k`. The parser accepts any arithmetic
//! expression over the ring, so canonical strings round-trip exactly.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Field, Poly, Ring, Scalar};
use crate::error::{Error, Result};

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn format_monomial(ring: &Ring, exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in ring.vars().iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

pub(crate) fn format_poly(ring: &Ring, poly: &Poly) -> String {
    let field = ring.field();
    if poly.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in poly.terms().iter().enumerate() {
        let negative = field.is_negative(c);
        let magnitude = if negative { field.neg(c) } else { c.clone() };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = format_monomial(ring, &m.0);
        if mono.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if field.is_one(&magnitude) {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{magnitude}*{mono}"));
        }
    }
    out
}

pub(crate) fn format_scalar(x: &Scalar) -> String {
    let base = format_poly(x.ring(), x.numerator());
    match x.denominator_exponent() {
        0 => base,
        k => format!("({base})/s^{k}"),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Num(digits.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.text))
    }

    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' { &acc * &rhs } else { acc.div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                self.ring.from_ratio(&BigRational::from_integer(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if self.ring.var_index(&name).is_some() {
                    self.ring.var(&name)
                } else if name == "s" && self.ring.is_localization() {
                    Ok(self.ring.s().expect("localization"))
                } else {
                    Err(Error::UnboundVariable(name))
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

pub(crate) fn parse_scalar(ring: &Ring, text: &str) -> Result<Scalar> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut p = Parser {
        ring,
        tokens,
        pos: 0,
        text,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// `QQ`, `GF(p)`, optionally `[v1,v2,...]`, optionally `[1/<expr>]`.
pub(crate) fn parse_ring(text: &str) -> Result<Ring> {
    let bad = |why: &str| Error::InvalidRing(format!("{why}: `{text}`"));
    let t = text.trim();
    let (field, mut rest) = if let Some(r) = t.strip_prefix("QQ") {
        (Field::Rationals, r)
    } else if let Some(r) = t.strip_prefix("GF(") {
        let close = r.find(')').ok_or_else(|| bad("unclosed GF("))?;
        let p: u64 = r[..close].trim().parse().map_err(|_| bad("bad characteristic"))?;
        Ring::prime_field(p)?;
        (Field::Prime(p), &r[close + 1..])
    } else {
        return Err(bad("expected QQ or GF(p)"));
    };
    let mut ring = match field {
        Field::Rationals => Ring::rationals(),
        Field::Prime(p) => Ring::prime_field(p)?,
    };
    rest = rest.trim_start();
    if rest.starts_with('[') && !rest.starts_with("[1/") {
        let close = rest.find(']').ok_or_else(|| bad("unclosed variable list"))?;
        let vars: Vec<&str> = rest[1..close].split(',').map(str::trim).collect();
        ring = Ring::polynomial(field, &vars)?;
        rest = rest[close + 1..].trim_start();
    }
    if let Some(r) = rest.strip_prefix("[1/") {
        let inner = r.strip_suffix(']').ok_or_else(|| bad("unclosed localization"))?;
        let s = parse_scalar(&ring, inner)?;
        ring = Ring::localization(&ring, &s)?;
        rest = "";
    }
    if !rest.trim().is_empty() {
        return Err(bad("trailing input"));
    }
    Ok(ring)
}
