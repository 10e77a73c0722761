//! Exact scalars: rationals, prime fields, multivariate polynomials over either,
//! and localizations of those polynomial rings at the powers of one element `s`.
//!
//! Every ring is described by a [`Ring`] handle and every value is a [`Scalar`]
//! in canonical form, so structural equality is ring equality. A scalar is stored
//! uniformly as `numerator / s^k` with `k = 0` outside localizations; in a
//! localization `s` never divides the numerator while `k > 0`.

mod coef;
mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use coef::{Coef, Field};
pub use poly::{Monomial, Poly};

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: Field,
    vars: Vec<String>,
    s: Option<Poly>,
}

/// Shared handle to a ring descriptor.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

/// Which of the supported descriptor shapes a ring has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Rationals,
    PrimeField(u64),
    Polynomial,
    Localization,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn rationals() -> Ring {
        Ring(Arc::new(RingData {
            field: Field::Rationals,
            vars: Vec::new(),
            s: None,
        }))
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !coef::is_odd_prime(p) || p >= (1 << 31) {
            return Err(Error::InvalidRing(format!(
                "characteristic {p} must be an odd prime below 2^31"
            )));
        }
        Ok(Ring(Arc::new(RingData {
            field: Field::Prime(p),
            vars: Vec::new(),
            s: None,
        })))
    }

    /// Polynomial ring over `field` in the given variables (in this order).
    pub fn polynomial(field: Field, vars: &[&str]) -> Result<Ring> {
        if let Field::Prime(p) = field {
            Ring::prime_field(p)?;
        }
        let mut names: Vec<String> = Vec::new();
        for v in vars {
            if !parse::is_identifier(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
            names.push(v.to_string());
        }
        Ok(Ring(Arc::new(RingData {
            field,
            vars: names,
            s: None,
        })))
    }

    /// Localization of a polynomial ring at the powers of `s`.
    ///
    /// `s` must be a non-constant polynomial: constants are units (the localization
    /// would be the ring itself and s-orders would be unbounded).
    pub fn localization(base: &Ring, s: &Scalar) -> Result<Ring> {
        if base.kind() != RingKind::Polynomial {
            return Err(Error::InvalidRing(
                "localization needs a polynomial base ring".into(),
            ));
        }
        if s.ring != *base {
            return Err(Error::DescriptorMismatch(
                s.ring.to_string(),
                base.to_string(),
            ));
        }
        if s.num.as_constant(&base.0.field).is_some() {
            return Err(Error::InvalidRing(format!(
                "s = {s} must be a non-constant polynomial"
            )));
        }
        if let Some(idx) = base.0.vars.iter().position(|v| v == "s") {
            let var = Poly::monomial(&base.0.field, Monomial::var(base.nvars(), idx), base.0.field.one());
            if var != s.num {
                return Err(Error::InvalidRing(
                    "a variable named `s` must be the localized element".into(),
                ));
            }
        }
        Ok(Ring(Arc::new(RingData {
            field: base.0.field,
            vars: base.0.vars.clone(),
            s: Some(s.num.clone()),
        })))
    }

    /// Parses descriptors such as `QQ`, `GF(10007)`, `QQ[s,t,X]`, `QQ[s,X][1/s]`.
    pub fn parse(text: &str) -> Result<Ring> {
        parse::parse_ring(text)
    }

    pub fn kind(&self) -> RingKind {
        match (&self.0.s, self.0.vars.is_empty(), self.0.field) {
            (Some(_), _, _) => RingKind::Localization,
            (None, false, _) => RingKind::Polynomial,
            (None, true, Field::Rationals) => RingKind::Rationals,
            (None, true, Field::Prime(p)) => RingKind::PrimeField(p),
        }
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn is_localization(&self) -> bool {
        self.0.s.is_some()
    }

    /// The ring with the localization stripped (identity for other kinds).
    pub fn base(&self) -> Ring {
        if self.0.s.is_none() {
            return self.clone();
        }
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            s: None,
        }))
    }

    /// The distinguished element `s` as a scalar of this ring.
    pub fn s(&self) -> Option<Scalar> {
        self.0.s.as_ref().map(|p| self.make(p.clone(), 0))
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            ring: self.clone(),
            num: Poly::zero(),
            s_exp: 0,
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        self.coef(self.0.field.from_i64(v))
    }

    /// `num / den` mapped into the ring.
    pub fn rational(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::NotAUnit("0".into()));
        }
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        self.from_ratio(&q)
    }

    pub fn from_ratio(&self, q: &BigRational) -> Result<Scalar> {
        self.0
            .field
            .from_ratio(q)
            .map(|c| self.coef(c))
            .ok_or_else(|| Error::NotAUnit(q.denom().to_string()))
    }

    pub fn coef(&self, c: Coef) -> Scalar {
        let num = Poly::constant(&self.0.field, self.nvars(), c);
        self.make(num, 0)
    }

    pub fn var(&self, name: &str) -> Result<Scalar> {
        let idx = self
            .var_index(name)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))?;
        let num = Poly::monomial(&self.0.field, Monomial::var(self.nvars(), idx), self.0.field.one());
        Ok(self.make(num, 0))
    }

    /// `s^k` (negative `k` gives the fraction `1/s^|k|`).
    pub fn s_pow(&self, k: i64) -> Result<Scalar> {
        let s = self
            .s()
            .ok_or_else(|| Error::InvalidRing(format!("{self} is not a localization")))?;
        if k >= 0 {
            Ok(s.pow(k as u32))
        } else {
            Ok(self.make(Poly::constant(&self.0.field, self.nvars(), self.0.field.one()), (-k) as u32))
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        parse::parse_scalar(self, text)
    }

    /// Canonicalizes `num / s^k`.
    pub(crate) fn make(&self, mut num: Poly, mut s_exp: u32) -> Scalar {
        if num.is_zero() {
            s_exp = 0;
        }
        if let Some(s) = &self.0.s {
            while s_exp > 0 {
                match num.div_exact(s, &self.0.field) {
                    Some(q) => {
                        num = q;
                        s_exp -= 1;
                    }
                    None => break,
                }
            }
        } else {
            debug_assert_eq!(s_exp, 0);
        }
        Scalar {
            ring: self.clone(),
            num,
            s_exp,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.field)?;
        if !self.0.vars.is_empty() {
            write!(f, "[{}]", self.0.vars.join(","))?;
        }
        if let Some(s) = &self.0.s {
            let base = self.base();
            let s = base.make(s.clone(), 0);
            write!(f, "[1/{}]", parse::format_poly(&base, &s.num))?;
        }
        Ok(())
    }
}

/// Element of a [`Ring`] in canonical form.
#[derive(Clone, Debug)]
pub struct Scalar {
    ring: Ring,
    num: Poly,
    s_exp: u32,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.s_exp == other.s_exp && self.num == other.num && self.ring == other.ring
    }
}

impl Eq for Scalar {}

/// Binary operation selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked arithmetic entry point: mixed rings and non-units are errors, not panics.
pub fn scalar_arith(op: ArithOp, lhs: &Scalar, rhs: Option<&Scalar>) -> Result<Scalar> {
    match op {
        ArithOp::Neg => Ok(-lhs),
        ArithOp::Inv => lhs.inv(),
        ArithOp::Add | ArithOp::Mul => {
            let rhs = rhs.ok_or_else(|| Error::Parse("missing right operand".into()))?;
            lhs.same_ring(rhs)?;
            Ok(if op == ArithOp::Add { lhs + rhs } else { lhs * rhs })
        }
    }
}

impl Scalar {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Exponent `k` of the canonical denominator `s^k`.
    pub fn denominator_exponent(&self) -> u32 {
        self.s_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.s_exp == 0 && self.num.as_constant(&self.ring.0.field).is_some_and(|c| self.ring.0.field.is_one(&c))
    }

    pub fn same_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }

    fn field(&self) -> &Field {
        &self.ring.0.field
    }

    fn s_power_poly(&self, k: u32) -> Poly {
        let field = self.field();
        let s = self.ring.0.s.as_ref().expect("localization");
        s.pow(k, field, self.ring.nvars())
    }

    fn add_impl(&self, other: &Scalar) -> Scalar {
        assert!(self.ring == other.ring, "scalar from a different ring");
        let field = self.field();
        if self.s_exp == other.s_exp {
            return self.ring.make(self.num.add(&other.num, field), self.s_exp);
        }
        let k = self.s_exp.max(other.s_exp);
        let a = if self.s_exp < k {
            self.num.mul(&self.s_power_poly(k - self.s_exp), field)
        } else {
            self.num.clone()
        };
        let b = if other.s_exp < k {
            other.num.mul(&other.s_power_poly(k - other.s_exp), field)
        } else {
            other.num.clone()
        };
        self.ring.make(a.add(&b, field), k)
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        assert!(self.ring == other.ring, "scalar from a different ring");
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let num = self.num.mul(&other.num, self.field());
        self.ring.make(num, self.s_exp + other.s_exp)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse. Units recognized: nonzero constants and, in a
    /// localization, `c * s^j` for any integer `j`.
    pub fn inv(&self) -> Result<Scalar> {
        let field = *self.field();
        let not_unit = || Error::NotAUnit(self.to_string());
        // peel every factor of s from the numerator
        let mut num = self.num.clone();
        let mut j: i64 = -(self.s_exp as i64);
        if let Some(s) = &self.ring.0.s {
            if !num.is_zero() {
                while let Some(q) = num.div_exact(s, &field) {
                    num = q;
                    j += 1;
                }
            }
        }
        let c = num.as_constant(&field).ok_or_else(not_unit)?;
        let c_inv = field.inv(&c).ok_or_else(not_unit)?;
        let unit = self.ring.coef(c_inv);
        if j == 0 {
            Ok(unit)
        } else {
            Ok(&unit * &self.ring.s_pow(-j)?)
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn half(&self) -> Scalar {
        let two_inv = self.ring.rational(1, 2).expect("2 is invertible");
        self * &two_inv
    }

    /// s-order: `-k` for a reduced fraction `x / s^k` with `k > 0`, otherwise the
    /// largest `e` with `s^e` dividing the element. `None` for zero (infinite order).
    ///
    /// Outside a localization there is no distinguished `s`; the order is `Some(0)`
    /// for nonzero elements.
    pub fn s_order(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        if self.s_exp > 0 {
            return Some(-(self.s_exp as i64));
        }
        let Some(s) = &self.ring.0.s else {
            return Some(0);
        };
        let field = self.field();
        let mut num = self.num.clone();
        let mut e = 0;
        while let Some(q) = num.div_exact(s, field) {
            num = q;
            e += 1;
        }
        Some(e)
    }

    /// Canonical form together with its s-order (see [`Scalar::s_order`]).
    pub fn s_normalize(&self) -> (Scalar, Option<i64>) {
        let canon = self.ring.make(self.num.clone(), self.s_exp);
        let order = canon.s_order();
        (canon, order)
    }

    /// Ring homomorphism replacing variables by scalars of `target`.
    ///
    /// Every variable occurring in the element (numerator or `s`) must be bound.
    pub fn substitute(&self, assignment: &[(&str, Scalar)], target: &Ring) -> Result<Scalar> {
        let lookup = |idx: usize| -> Result<&Scalar> {
            let name = &self.ring.0.vars[idx];
            assignment
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v)
                .ok_or_else(|| Error::UnboundVariable(name.clone()))
        };
        for (_, v) in assignment {
            if v.ring != *target {
                return Err(Error::DescriptorMismatch(
                    v.ring.to_string(),
                    target.to_string(),
                ));
            }
        }
        let eval = |p: &Poly| -> Result<Scalar> {
            let mut acc = target.zero();
            for (m, c) in &p.terms {
                let c = self.map_coef(c, target)?;
                let mut term = target.coef(c);
                for (idx, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        term = &term * &lookup(idx)?.pow(e);
                    }
                }
                acc = &acc + &term;
            }
            Ok(acc)
        };
        let num = eval(&self.num)?;
        if self.s_exp == 0 {
            return Ok(num);
        }
        let s = eval(self.ring.0.s.as_ref().expect("localization"))?;
        Ok(&num * &s.inv()?.pow(self.s_exp))
    }

    /// Substitutes one variable, mapping every other variable to itself.
    pub fn substitute_var(&self, name: &str, value: &Scalar) -> Result<Scalar> {
        if self.ring.var_index(name).is_none() {
            return Err(Error::UnboundVariable(name.to_string()));
        }
        let mut assignment: Vec<(&str, Scalar)> = Vec::new();
        for v in &self.ring.0.vars {
            if v == name {
                assignment.push((v.as_str(), value.clone()));
            } else {
                assignment.push((v.as_str(), self.ring.var(v)?));
            }
        }
        self.substitute(&assignment, &self.ring)
    }

    fn map_coef(&self, c: &Coef, target: &Ring) -> Result<Coef> {
        let from = *self.field();
        let to = target.0.field;
        match (c, from, to) {
            _ if from == to => Ok(c.clone()),
            (Coef::Q(q), Field::Rationals, Field::Prime(_)) => to
                .from_ratio(q)
                .ok_or_else(|| Error::NotAUnit(format!("{} mod {to}", q.denom()))),
            _ => Err(Error::DescriptorMismatch(
                self.ring.to_string(),
                target.to_string(),
            )),
        }
    }

    /// Maps the element into `target` by variable name: embeds a polynomial ring in
    /// its localization, clears a localization when the element is denominator-free,
    /// and reduces rational coefficients modulo `p`.
    pub fn to_ring(&self, target: &Ring) -> Result<Scalar> {
        if self.ring == *target {
            return Ok(self.clone());
        }
        let mut assignment: Vec<(&str, Scalar)> = Vec::new();
        for v in &self.ring.0.vars {
            assignment.push((v.as_str(), target.var(v)?));
        }
        let num = Scalar {
            ring: self.ring.base(),
            num: self.num.clone(),
            s_exp: 0,
        };
        let image = num.substitute(&assignment, target)?;
        if self.s_exp == 0 {
            return Ok(image);
        }
        let s = self.ring.s().expect("localization").to_ring_base_numerator();
        let s_image = s.substitute(&assignment, target)?;
        Ok(&image * &s_image.inv()?.pow(self.s_exp))
    }

    fn to_ring_base_numerator(&self) -> Scalar {
        Scalar {
            ring: self.ring.base(),
            num: self.num.clone(),
            s_exp: 0,
        }
    }

    /// Splits `p(X) = p(0) + X * q(X)` along variable `name`.
    pub fn split_at_zero(&self, name: &str) -> Result<(Scalar, Scalar)> {
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))?;
        if self.ring.0.s.as_ref().is_some_and(|s| s.uses_var(idx)) {
            return Err(Error::InvalidRing(format!("s depends on {name}")));
        }
        let (c, rest) = self.num.split_at_zero(idx);
        Ok((self.ring.make(c, self.s_exp), self.ring.make(rest, self.s_exp)))
    }

    /// `p(.., X, ..) ↦ p(.., c·X, ..)`, grouping terms by their `X`-degree.
    pub fn scale_var(&self, name: &str, c: &Scalar) -> Result<Scalar> {
        self.same_ring(c)?;
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))?;
        if self.ring.0.s.as_ref().is_some_and(|s| s.uses_var(idx)) {
            return self.substitute_var(name, &(c * &self.ring.var(name)?));
        }
        let field = self.field();
        let mut groups: BTreeMap<u32, Vec<(Monomial, Coef)>> = BTreeMap::new();
        for (m, coef) in self.num.terms() {
            groups.entry(m.0[idx]).or_default().push((m.clone(), coef.clone()));
        }
        let mut acc = self.ring.zero();
        let mut power = self.ring.one();
        let mut at = 0;
        for (e, terms) in groups {
            power = &power * &c.pow(e - at);
            at = e;
            let part = self.ring.make(Poly::from_terms(field, terms), 0);
            acc = &acc + &(&part * &power);
        }
        if self.s_exp == 0 {
            Ok(acc)
        } else {
            Ok(&acc * &self.ring.s_pow(-(self.s_exp as i64))?)
        }
    }

    pub fn uses_var(&self, name: &str) -> bool {
        self.ring
            .var_index(name)
            .is_some_and(|idx| self.num.uses_var(idx))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_scalar(self))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $imp(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_impl(b));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_impl(b));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_impl(&-b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ring: self.ring.clone(),
            num: self.num.neg(&self.ring.0.field),
            s_exp: self.s_exp,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loc() -> Ring {
        let base = Ring::polynomial(Field::Rationals, &["s", "x", "X"]).unwrap();
        let s = base.var("s").unwrap();
        Ring::localization(&base, &s).unwrap()
    }

    #[test]
    fn half_plus_half() {
        let q = Ring::rationals();
        let h = q.rational(1, 2).unwrap();
        assert_eq!(&h + &h, q.one());
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::polynomial(Field::Rationals, &["X1"]).unwrap();
        let x = r.var("X1").unwrap();
        let one = r.one();
        let lhs = (&x + &one) * (&x - &one);
        assert_eq!(lhs, &(&x * &x) - &one);
    }

    #[test]
    fn inverse_of_s_squared() {
        let r = loc();
        let s2 = r.s().unwrap().pow(2);
        let inv = s2.inv().unwrap();
        assert_eq!(inv.denominator_exponent(), 2);
        assert_eq!(inv.numerator().as_constant(&r.field()), Some(r.field().one()));
        assert_eq!(&inv * &s2, r.one());
    }

    #[test]
    fn non_units_and_mismatch() {
        let r = loc();
        let x = r.var("x").unwrap();
        assert!(matches!(x.inv(), Err(Error::NotAUnit(_))));
        assert!(matches!(r.zero().inv(), Err(Error::NotAUnit(_))));
        let q = Ring::rationals();
        assert!(matches!(
            scalar_arith(ArithOp::Add, &x, Some(&q.one())),
            Err(Error::DescriptorMismatch(_, _))
        ));
    }

    #[test]
    fn s_normalization() {
        let r = loc();
        let s = r.s().unwrap();
        let x = r.var("x").unwrap();
        let v = (&s.pow(4) * &x).div(&s.pow(2)).unwrap();
        assert_eq!(v, &s.pow(2) * &x);
        assert_eq!(v.s_normalize().1, Some(2));
        let w = x.div(&s.pow(3)).unwrap();
        assert_eq!(w.denominator_exponent(), 3);
        assert_eq!(w.s_order(), Some(-3));
        assert_eq!(r.zero().s_order(), None);
    }

    #[test]
    fn substitution_examples() {
        let r = loc();
        let xx = r.var("X").unwrap();
        let p = &(&xx * &xx) + &r.one();
        assert_eq!(p.substitute_var("X", &r.zero()).unwrap(), r.one());
        let s = r.s().unwrap();
        let q = &s.pow(3) * &xx;
        let image = q.substitute_var("X", &(&s.pow(2) * &xx)).unwrap();
        assert_eq!(image, &s.pow(5) * &xx);
    }

    #[test]
    fn unbound_variable() {
        let r = Ring::polynomial(Field::Rationals, &["a", "b"]).unwrap();
        let a = r.var("a").unwrap();
        let b = r.var("b").unwrap();
        let p = &a * &b;
        let err = p.substitute(&[("a", r.one())], &r).unwrap_err();
        assert_eq!(err, Error::UnboundVariable("b".into()));
    }

    #[test]
    fn reduce_mod_p() {
        let q = Ring::polynomial(Field::Rationals, &["t"]).unwrap();
        let fp = Ring::polynomial(Field::Prime(7), &["t"]).unwrap();
        let v = q.parse_scalar("1/2*t + 3").unwrap();
        let red = v.to_ring(&fp).unwrap();
        assert_eq!(red.to_string(), "4*t + 3");
        let bad = q.parse_scalar("1/7*t").unwrap();
        assert!(bad.to_ring(&fp).is_err());
    }

    #[test]
    fn localization_rejects_constant_s() {
        let base = Ring::polynomial(Field::Rationals, &["t"]).unwrap();
        assert!(Ring::localization(&base, &base.int(3)).is_err());
    }

    #[test]
    fn non_monomial_s() {
        let base = Ring::polynomial(Field::Rationals, &["t"]).unwrap();
        let s = base.parse_scalar("t^2 - 1").unwrap();
        let r = Ring::localization(&base, &s).unwrap();
        let v = r.parse_scalar("(t^3 - t)/s^2").unwrap();
        // t^3 - t = t * (t^2 - 1)
        assert_eq!(v.denominator_exponent(), 1);
        assert_eq!(v.to_string(), "(t)/s^1");
        assert_eq!(r.parse_scalar("t^4 - 2*t^2 + 1").unwrap().s_order(), Some(2));
    }

    #[test]
    fn scale_var_matches_substitution() {
        let r = Ring::parse("QQ[s,t,X][1/s]").unwrap();
        let p = r.parse_scalar("(3*X^3*t - X*t^2 + 5*X^2 + 7)/s^2").unwrap();
        let c = r.parse_scalar("s^3*t - 1/2").unwrap();
        let direct = p.substitute_var("X", &(&c * &r.var("X").unwrap())).unwrap();
        assert_eq!(p.scale_var("X", &c).unwrap(), direct);
        assert!(p.scale_var("Y", &c).is_err());
    }
}
