//! Seeded random parameters for the identity suites.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use crate::dser::{CoordSpec, Word};
use crate::matrix::Matrix;
use crate::quad_space::{AmbientSpace, Direction, HomMatrix};
use crate::ring::{Field, Ring, Scalar};

pub type Rng = ChaCha8Rng;

/// Stream for `(seed, identity, case)`; independent of scheduling order.
pub fn case_rng(seed: u64, identity: &str, case: usize) -> Rng {
    use rand::SeedableRng;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in identity.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    let mixed = seed ^ h.rotate_left(17) ^ (case as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Seed of a case, reported alongside it.
pub fn case_seed(seed: u64, identity: &str, case: usize) -> u64 {
    use rand::RngCore;
    case_rng(seed, identity, case).next_u64()
}

fn coefficient(rng: &mut Rng, ring: &Ring) -> Scalar {
    match ring.field() {
        Field::Rationals => {
            let num = rng.gen_range(-5..=5);
            let den = rng.gen_range(1..=3);
            ring.rational(num, den).expect("nonzero denominator")
        }
        Field::Prime(p) => ring.int(rng.gen_range(0..p) as i64),
    }
}

fn nonzero_coefficient(rng: &mut Rng, ring: &Ring) -> Scalar {
    loop {
        let c = coefficient(rng, ring);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A polynomial in the ring's variables (excluding `avoid`) of total degree `≤ degree`.
pub fn poly(rng: &mut Rng, ring: &Ring, degree: u32, avoid: &[&str]) -> Scalar {
    let vars: Vec<Scalar> = ring
        .vars()
        .iter()
        .filter(|v| !avoid.contains(&v.as_str()))
        .map(|v| ring.var(v).expect("declared variable"))
        .collect();
    let terms = if vars.is_empty() { 1 } else { rng.gen_range(1..=3) };
    let mut acc = ring.zero();
    for _ in 0..terms {
        let mut t = coefficient(rng, ring);
        if !vars.is_empty() {
            for _ in 0..rng.gen_range(0..=degree) {
                t = &t * vars.choose(rng).expect("nonempty");
            }
        }
        acc = &acc + &t;
    }
    acc
}

pub fn nonzero_poly(rng: &mut Rng, ring: &Ring, degree: u32, avoid: &[&str]) -> Scalar {
    loop {
        let p = poly(rng, ring, degree, avoid);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A general element: polynomial, divided by a power of `s` in a localization.
pub fn scalar(rng: &mut Rng, ring: &Ring) -> Scalar {
    let p = poly(rng, ring, 2, &[]);
    if ring.is_localization() && rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=2);
        &p * &ring.s_pow(-k).expect("s is a unit")
    } else {
        p
    }
}

pub fn nonzero_scalar(rng: &mut Rng, ring: &Ring) -> Scalar {
    loop {
        let c = scalar(rng, ring);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Symmetric `φ = LDLᵗ` with constant unit-lower-triangular `L` and nonzero constant `D`,
/// so `det φ` is a unit. Diagonal about half the time.
pub fn gram(rng: &mut Rng, ring: &Ring, n: usize) -> Matrix {
    let mut l = Matrix::identity(ring, n);
    let diagonal = rng.gen_bool(0.5);
    if !diagonal {
        for r in 1..n {
            for c in 0..r {
                l.set(r, c, ring.int(rng.gen_range(-2..=2)));
            }
        }
    }
    let mut d = Matrix::zeros(ring, n, n);
    for k in 0..n {
        d.set(k, k, nonzero_coefficient(rng, ring));
    }
    l.mul(&d).mul(&l.transpose())
}

pub fn space(rng: &mut Rng, ring: &Ring, n_max: usize, m_max: usize, m_min: usize) -> AmbientSpace {
    let n = rng.gen_range(1..=n_max.max(1));
    let m = rng.gen_range(m_min.max(1)..=m_max.max(m_min).max(1));
    AmbientSpace::new(&gram(rng, ring, n), m).expect("unit determinant")
}

pub fn direction(rng: &mut Rng) -> Direction {
    if rng.gen_bool(0.5) {
        Direction::Alpha
    } else {
        Direction::BetaStar
    }
}

pub fn hom(rng: &mut Rng, space: &AmbientSpace, dir: Direction) -> HomMatrix {
    let ring = space.ring();
    let mut e = Matrix::zeros(ring, space.m(), space.n());
    for r in 0..space.m() {
        for c in 0..space.n() {
            e.set(r, c, scalar(rng, ring));
        }
    }
    HomMatrix::new(dir, e)
}

pub fn row(rng: &mut Rng, space: &AmbientSpace) -> usize {
    rng.gen_range(1..=space.m())
}

pub fn col(rng: &mut Rng, space: &AmbientSpace) -> usize {
    rng.gen_range(1..=space.n())
}

/// A row different from `avoid` (requires `m ≥ 2`).
pub fn other_row(rng: &mut Rng, space: &AmbientSpace, avoid: usize) -> usize {
    let rows: Vec<usize> = (1..=space.m()).filter(|&r| r != avoid).collect();
    *rows.choose(rng).expect("m >= 2")
}

pub fn coord(rng: &mut Rng, space: &AmbientSpace) -> CoordSpec {
    CoordSpec::new(direction(rng), row(rng, space), col(rng, space), scalar(rng, space.ring()))
}

/// Isotropic `u` in one hyperbolic half with a unit coordinate, and `v` with `B(u, v) = 0`.
pub fn eichler_pair(rng: &mut Rng, space: &AmbientSpace) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
    let ring = space.ring();
    let m = space.m();
    let in_p = rng.gen_bool(0.5);
    let (own, dual): (Vec<usize>, Vec<usize>) = if in_p {
        ((1..=m).map(|i| space.x(i)).collect(), (1..=m).map(|i| space.f(i)).collect())
    } else {
        ((1..=m).map(|i| space.f(i)).collect(), (1..=m).map(|i| space.x(i)).collect())
    };
    let lead = rng.gen_range(0..m);
    let mut u = vec![ring.zero(); space.dim()];
    for (k, &idx) in own.iter().enumerate() {
        u[idx] = if k == lead { ring.one() } else { scalar(rng, ring) };
    }
    let orth = |rng: &mut Rng| -> Vec<Scalar> {
        let mut v: Vec<Scalar> = (0..space.dim()).map(|_| scalar(rng, ring)).collect();
        // cancel B(u, v) = Σ u_own[k]·v_dual[k] through the lead coordinate
        let mut rest = ring.zero();
        for k in 0..m {
            if k != lead {
                rest = &rest + &(&u[own[k]] * &v[dual[k]]);
            }
        }
        v[dual[lead]] = -&rest;
        v
    };
    let v = orth(rng);
    let w = orth(rng);
    (u, v, w)
}

/// `θ_s` shapes whose value at `X = 0` is the identity, over `n = 1`-style spaces:
/// `[E_G(c+Xp1), E_H(Xp2), E_G(−c+Xp3)]`, `[E_G(c+Xp1), E_G(−c+Xp2)]`, `[E_G(Xp)]`.
pub fn theta_s(rng: &mut Rng, space: &AmbientSpace, var: &str, shape: usize) -> Word {
    let ring = space.ring();
    let x = ring.var(var).expect("declared variable");
    let base_poly = |rng: &mut Rng| nonzero_poly(rng, ring, 1, &["s"]);
    let denom = |rng: &mut Rng, lo: i64| ring.s_pow(-rng.gen_range(lo..=2)).expect("unit");
    let xp = |rng: &mut Rng| {
        let p = &base_poly(rng) * &denom(rng, 0);
        &x * &p
    };
    let c = {
        let p = nonzero_poly(rng, ring, 1, &["s", var]);
        &p * &denom(rng, 1)
    };
    let g = (direction(rng), row(rng, space), col(rng, space));
    let h = (direction(rng), row(rng, space), col(rng, space));
    let e = |(k, i, j): (Direction, usize, usize), y: Scalar| Word::coord(space, k, i, j, y);
    let words = match shape % 3 {
        0 => vec![e(g, &c + &xp(rng)), e(h, xp(rng)), e(g, &(-&c) + &xp(rng))],
        1 => vec![e(g, &c + &xp(rng)), e(g, &(-&c) + &xp(rng))],
        _ => vec![e(g, xp(rng))],
    };
    Word::product(space, &words).expect("one space")
}

/// A partition of unity `Σ d_i b_i = 1` with `b_i = s_i^N` for `Σ s_i = 1`, obtained by
/// expanding `(Σ s_i)^K`, `K = r(N−1)+1`, and charging each monomial to a slot whose
/// exponent reaches `N`.
pub fn partition_of_unity(rng: &mut Rng, ring: &Ring, r: usize, avoid: &[&str]) -> Vec<(Scalar, Scalar)> {
    let r = r.max(1);
    let mut parts: Vec<Scalar> = (0..r - 1).map(|_| poly(rng, ring, 1, avoid)).collect();
    let rest = parts.iter().fold(ring.one(), |acc, p| &acc - p);
    parts.push(rest);
    let n: u32 = rng.gen_range(1..=2);
    let k = r as u32 * (n - 1) + 1;
    let mut d = vec![ring.zero(); r];
    for exps in compositions(k, r) {
        let slot = exps.iter().position(|&e| e >= n).expect("pigeonhole");
        let mut term = ring.int(multinomial(k, &exps) as i64);
        for (idx, (&e, p)) in exps.iter().zip(&parts).enumerate() {
            let e = if idx == slot { e - n } else { e };
            term = &term * &p.pow(e);
        }
        d[slot] = &d[slot] + &term;
    }
    d.into_iter().zip(parts.iter().map(|p| p.pow(n))).collect()
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut tail in compositions(total - first, parts - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn multinomial(total: u32, exps: &[u32]) -> u64 {
    let fact = |k: u32| (1..=k as u64).product::<u64>();
    exps.iter().fold(fact(total), |acc, &e| acc / fact(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        use rand::RngCore;
        let a = case_rng(7, "membership", 3).next_u64();
        assert_eq!(a, case_rng(7, "membership", 3).next_u64());
        assert_ne!(a, case_rng(7, "membership", 4).next_u64());
        assert_ne!(a, case_rng(7, "splitting", 3).next_u64());
    }

    #[test]
    fn partitions_sum_to_one() {
        let ring = Ring::parse("QQ[t,u]").unwrap();
        for seed in 0..20 {
            let mut rng = case_rng(seed, "pou", 0);
            let r = 1 + (seed as usize % 4);
            let shares = partition_of_unity(&mut rng, &ring, r, &[]);
            let total = shares.iter().fold(ring.zero(), |acc, (d, b)| &acc + &(d * b));
            assert!(total.is_one());
        }
    }

    #[test]
    fn eichler_pairs_are_admissible() {
        let ring = Ring::parse("GF(10007)[t]").unwrap();
        for seed in 0..20 {
            let mut rng = case_rng(seed, "eichler", 0);
            let sp = space(&mut rng, &ring, 3, 3, 1);
            let (u, v, w) = eichler_pair(&mut rng, &sp);
            assert!(sp.q_value(&u).unwrap().is_zero());
            assert!(sp.bilinear(&u, &v).unwrap().is_zero());
            assert!(sp.bilinear(&u, &w).unwrap().is_zero());
        }
    }
}
