use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::coef::{Coef, Field};

/// Exponent vector over the ring's fixed variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

// Graded lexicographic: total degree first, then earlier variables dominate.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with terms sorted by descending grlex order and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    pub(crate) terms: Vec<(Monomial, Coef)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: Coef) -> Self {
        if field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(nvars), c)],
            }
        }
    }

    pub fn monomial(field: &Field, m: Monomial, c: Coef) -> Self {
        if field.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn terms(&self) -> &[(Monomial, Coef)] {
        &self.terms
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Monomial, Coef)>) -> Self {
        let mut acc: BTreeMap<Monomial, Coef> = BTreeMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(slot) => *slot = field.add(slot, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when the polynomial has degree 0 (zero included).
    pub fn as_constant(&self, field: &Field) -> Option<Coef> {
        match self.terms.as_slice() {
            [] => Some(field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Coef)> {
        self.terms.first()
    }

    pub fn add(&self, other: &Poly, field: &Field) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(ca, cb);
                    if !field.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self, field: &Field) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly, field: &Field) -> Poly {
        self.add(&other.neg(field), field)
    }

    pub fn scale(&self, c: &Coef, field: &Field) -> Poly {
        if field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Coef, field: &Field) -> Poly {
        if field.is_zero(c) {
            return Poly::zero();
        }
        // multiplying by a monomial preserves the order of terms
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly, field: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m, c, field);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m, c, field);
        }
        let mut acc: BTreeMap<Monomial, Coef> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = field.add(slot, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !field.is_zero(c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32, field: &Field, nvars: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(field, nvars, field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    ///
    /// A single polynomial is a Groebner basis of the ideal it generates, so the
    /// division algorithm decides membership: if the leading term of the running
    /// dividend is not divisible by the leading term of `divisor`, neither is the dividend.
    pub fn div_exact(&self, divisor: &Poly, field: &Field) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let lc_inv = field.inv(lc)?;
        if divisor.terms.len() == 1 {
            let terms = self
                .terms
                .iter()
                .map(|(m, c)| Some((m.div(lm)?, field.mul(c, &lc_inv))))
                .collect::<Option<Vec<_>>>()?;
            return Some(Poly { terms });
        }
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let qm = m.div(lm)?;
            let qc = field.mul(&c, &lc_inv);
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc, field), field);
            quotient.push((qm, qc));
        }
        // quotient terms are produced in descending order
        Some(Poly { terms: quotient })
    }

    /// Derivative-free split `p(X) = p(0) + X * p'(X)` along variable `idx`.
    pub fn split_at_zero(&self, idx: usize) -> (Poly, Poly) {
        let mut constant = Vec::new();
        let mut rest = Vec::new();
        for (m, c) in &self.terms {
            if m.0[idx] == 0 {
                constant.push((m.clone(), c.clone()));
            } else {
                let mut e = m.0.clone();
                e[idx] -= 1;
                rest.push((Monomial(e), c.clone()));
            }
        }
        // both filtered lists keep descending order: lowering one exponent uniformly
        // by 1 on terms that all contain the variable is order preserving for grlex
        (Poly { terms: constant }, Poly { terms: rest })
    }

    pub fn uses_var(&self, idx: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[idx] > 0)
    }

    pub fn map_coefs(&self, f: impl Fn(&Coef) -> Option<Coef>, field: &Field) -> Option<Poly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Some((m.clone(), f(c)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::from_terms(field, terms))
    }
}
