use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient field of every supported ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// Odd prime characteristic, kept below 2^31 so products fit in a `u64`.
    Prime(u64),
}

/// A coefficient. `P` values are canonical representatives in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coef {
    Q(BigRational),
    P(u64),
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Numerator and denominator when both fit in an `i64`.
fn small(q: &BigRational) -> Option<(i128, i128)> {
    Some((q.numer().to_i64()? as i128, q.denom().to_i64()? as i128))
}

/// `n / d` with `d > 0`, reduced in `i128` arithmetic.
fn reduced(n: i128, d: i128) -> BigRational {
    let g = n.gcd(&d);
    BigRational::new_raw(BigInt::from(n / g), BigInt::from(d / g))
}

fn q_add(x: &BigRational, y: &BigRational, sign: i128) -> BigRational {
    match (small(x), small(y)) {
        (Some((a, b)), Some((c, d))) if b == d => reduced(a + sign * c, b),
        (Some((a, b)), Some((c, d))) => reduced(a * d + sign * c * b, b * d),
        _ if sign < 0 => x - y,
        _ => x + y,
    }
}

fn q_mul(x: &BigRational, y: &BigRational) -> BigRational {
    match (small(x), small(y)) {
        (Some((a, b)), Some((c, d))) => reduced(a * c, b * d),
        _ => x * y,
    }
}

impl Field {
    pub fn zero(&self) -> Coef {
        match self {
            Field::Rationals => Coef::Q(BigRational::zero()),
            Field::Prime(_) => Coef::P(0),
        }
    }

    pub fn one(&self) -> Coef {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coef {
        match *self {
            Field::Rationals => Coef::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coef::P(v.rem_euclid(p as i64) as u64),
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_ratio(&self, q: &BigRational) -> Option<Coef> {
        match *self {
            Field::Rationals => Some(Coef::Q(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64()?;
                let den = q.denom().mod_floor(&pb).to_u64()?;
                if den == 0 {
                    return None;
                }
                Some(Coef::P(num * mod_pow(den, p - 2, p) % p))
            }
        }
    }

    pub fn is_zero(&self, c: &Coef) -> bool {
        match c {
            Coef::Q(q) => q.is_zero(),
            Coef::P(v) => *v == 0,
        }
    }

    pub fn is_one(&self, c: &Coef) -> bool {
        match c {
            Coef::Q(q) => q.is_one(),
            Coef::P(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b, self) {
            (Coef::Q(x), Coef::Q(y), _) => Coef::Q(q_add(x, y, 1)),
            (Coef::P(x), Coef::P(y), Field::Prime(p)) => Coef::P((x + y) % p),
            _ => unreachable!("coefficient from a different field"),
        }
    }

    pub fn neg(&self, a: &Coef) -> Coef {
        match (a, self) {
            (Coef::Q(x), _) => Coef::Q(-x),
            (Coef::P(x), Field::Prime(p)) => Coef::P((p - x) % p),
            _ => unreachable!("coefficient from a different field"),
        }
    }

    pub fn sub(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b, self) {
            (Coef::Q(x), Coef::Q(y), _) => Coef::Q(q_add(x, y, -1)),
            (Coef::P(x), Coef::P(y), Field::Prime(p)) => Coef::P((x + p - y) % p),
            _ => unreachable!("coefficient from a different field"),
        }
    }

    pub fn mul(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b, self) {
            (Coef::Q(x), Coef::Q(y), _) => Coef::Q(q_mul(x, y)),
            (Coef::P(x), Coef::P(y), Field::Prime(p)) => Coef::P(x * y % p),
            _ => unreachable!("coefficient from a different field"),
        }
    }

    pub fn inv(&self, a: &Coef) -> Option<Coef> {
        if self.is_zero(a) {
            return None;
        }
        match (a, self) {
            (Coef::Q(x), _) => Some(Coef::Q(x.recip())),
            (Coef::P(x), Field::Prime(p)) => Some(Coef::P(mod_pow(*x, p - 2, *p))),
            _ => unreachable!("coefficient from a different field"),
        }
    }

    /// True when the coefficient prints with a leading minus sign.
    pub(crate) fn is_negative(&self, c: &Coef) -> bool {
        matches!(c, Coef::Q(q) if q.is_negative())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coef::P(v) => write!(f, "{v}"),
        }
    }
}
