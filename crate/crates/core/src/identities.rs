//! Exact verification of the splitting, generation, commutator and Eichler identities.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dser::{commutator, gen_coord, CoordSpec, Factor, Generator, Word};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quad_space::{AmbientSpace, Direction, HomMatrix};
use crate::ring::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Violated {
        row: usize,
        col: usize,
        lhs: String,
        rhs: String,
    },
    /// A check that is not an entrywise comparison, or a kernel error.
    Failed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub case: usize,
    pub seed: u64,
    pub space: String,
    pub lhs_digest: String,
    pub rhs_digest: String,
    pub verdict: Verdict,
}

impl IdentityReport {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    pub fn with_case(mut self, case: usize, seed: u64) -> Self {
        self.case = case;
        self.seed = seed;
        self
    }

    pub fn failed(identity: &str, space: &AmbientSpace, reason: String) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            case: 0,
            seed: 0,
            space: space.summary(),
            lhs_digest: String::new(),
            rhs_digest: String::new(),
            verdict: Verdict::Failed { reason },
        }
    }

    pub fn renamed(mut self, identity: &str) -> Self {
        self.identity = identity.to_string();
        self
    }
}

pub fn digest(m: &Matrix) -> String {
    let bytes = Sha256::digest(m.to_string().as_bytes());
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Compares `lhs` against every right-hand side; the first mismatch is the witness.
pub fn compare(identity: &str, space: &AmbientSpace, lhs: &Matrix, rhs: &[&Matrix]) -> IdentityReport {
    let mut verdict = Verdict::Equal;
    for r in rhs {
        if let Some((row, col)) = lhs.first_difference(r) {
            let fetch = |m: &Matrix| {
                if row < m.rows() && col < m.cols() {
                    m.get(row, col).to_string()
                } else {
                    format!("{}x{} matrix", m.rows(), m.cols())
                }
            };
            verdict = Verdict::Violated {
                row,
                col,
                lhs: fetch(lhs),
                rhs: fetch(r),
            };
            break;
        }
    }
    IdentityReport {
        identity: identity.to_string(),
        case: 0,
        seed: 0,
        space: space.summary(),
        lhs_digest: digest(lhs),
        rhs_digest: rhs.first().map_or_else(String::new, |m| digest(m)),
        verdict,
    }
}

/// `TᵗψT = ψ` for the matrix of a generator.
pub fn check_membership(space: &AmbientSpace, g: &Generator) -> Result<IdentityReport> {
    g.validate(space)?;
    let t = g.matrix(space)?;
    let lhs = t.transpose().mul(&space.psi().mul(&t));
    Ok(compare("membership", space, &lhs, &[space.psi()]))
}

/// `E(α1+α2) = E(α1/2)E(α2)E(α1/2) = E(α2/2)E(α1)E(α2/2)`.
pub fn check_splitting(space: &AmbientSpace, a1: &HomMatrix, a2: &HomMatrix) -> Result<IdentityReport> {
    let sum = a1.add(a2)?;
    space.check_hom(a1)?;
    space.check_hom(a2)?;
    let e = |h: &HomMatrix| Generator::Full(h.clone());
    let lhs = e(&sum).matrix(space)?;
    let w1 = Word::from_factors(
        space,
        vec![Factor::new(e(&a1.half())), Factor::new(e(a2)), Factor::new(e(&a1.half()))],
    );
    let w2 = Word::from_factors(
        space,
        vec![Factor::new(e(&a2.half())), Factor::new(e(a1)), Factor::new(e(&a2.half()))],
    );
    Ok(compare("splitting", space, &lhs, &[&w1.matrix()?, &w2.matrix()?]))
}

/// The generator of a single-entry piece `b·e_i·e_jᵗ`. When `φ` is diagonal with a unit
/// `φ_jj` this is the coordinate generator with `y = b/φ_jj`.
pub fn piece_generator(space: &AmbientSpace, h: &HomMatrix, i: usize, j: usize) -> Generator {
    let b = h.entries.get(i - 1, j - 1);
    let phi = space.phi();
    let diagonal = (0..space.n()).all(|c| c == j - 1 || phi.get(j - 1, c).is_zero());
    if diagonal {
        if let Ok(inv) = phi.get(j - 1, j - 1).inv() {
            return Generator::coord(h.direction, i, j, b * &inv);
        }
    }
    Generator::Full(h.piece(i, j))
}

/// The palindrome `E(α_11/2)E(α_21/2)…E(α_mn)…E(α_21/2)E(α_11/2)` (2mn − 1 factors).
pub fn factor_generators(space: &AmbientSpace, h: &HomMatrix) -> Result<Word> {
    space.check_hom(h)?;
    let order: Vec<(usize, usize)> = (1..=space.n())
        .flat_map(|j| (1..=space.m()).map(move |i| (i, j)))
        .collect();
    let halves: Vec<Generator> = order[..order.len() - 1]
        .iter()
        .map(|&(i, j)| piece_generator(space, &h.half(), i, j))
        .collect();
    let (mi, mj) = order[order.len() - 1];
    let mut factors: Vec<Factor> = halves.iter().cloned().map(Factor::new).collect();
    factors.push(Factor::new(piece_generator(space, h, mi, mj)));
    factors.extend(halves.into_iter().rev().map(Factor::new));
    Ok(Word::from_factors(space, factors))
}

pub fn check_generation(space: &AmbientSpace, h: &HomMatrix) -> Result<IdentityReport> {
    let w = factor_generators(space, h)?;
    let lhs = w.matrix()?;
    let rhs = Generator::Full(h.clone()).matrix(space)?;
    Ok(compare("generation", space, &lhs, &[&rhs]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    AA,
    ABstar,
    BstarBstar,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::AA, Family::ABstar, Family::BstarBstar];

    pub fn kinds(self) -> (Direction, Direction) {
        match self {
            Family::AA => (Direction::Alpha, Direction::Alpha),
            Family::ABstar => (Direction::Alpha, Direction::BetaStar),
            Family::BstarBstar => (Direction::BetaStar, Direction::BetaStar),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::AA => "AA",
            Family::ABstar => "ABstar",
            Family::BstarBstar => "BstarBstar",
        }
    }
}

/// Indices and scales of `[E(y1·α_ij), E(y2·δ_kl)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairParams {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub y1: Scalar,
    pub y2: Scalar,
}

impl PairParams {
    pub fn specs(&self, family: Family) -> (CoordSpec, CoordSpec) {
        let (k1, k2) = family.kinds();
        (
            CoordSpec::new(k1, self.i, self.j, self.y1.clone()),
            CoordSpec::new(k2, self.k, self.l, self.y2.clone()),
        )
    }
}

fn bracket(space: &AmbientSpace, g: &CoordSpec, h: &CoordSpec) -> Result<Word> {
    commutator(&g.word(space), &h.word(space))
}

/// `I + M₂M₁* − M₁M₂*` for the maps of the two generators; for the three families this
/// reads `I + δα* − αδ*`, `I − αβ* + βα*` and `I + γβ* − βγ*`.
pub fn commutator_closed_form(space: &AmbientSpace, g: &CoordSpec, h: &CoordSpec) -> Matrix {
    let (hg, hh) = (g.hom(space), h.hom(space));
    let m1 = space.embed(&hg);
    let s1 = space.embed_star(&hg);
    let m2 = space.embed(&hh);
    let s2 = space.embed_star(&hh);
    Matrix::identity(space.ring(), space.dim())
        .add(&m2.mul(&s1))
        .sub(&m1.mul(&s2))
}

fn check_pair_indices(space: &AmbientSpace, p: &PairParams) -> Result<()> {
    space.check_indices(p.i, p.j)?;
    space.check_indices(p.k, p.l)?;
    if p.i == p.k {
        return Err(Error::IndexClash(format!("i = k = {}", p.i)));
    }
    Ok(())
}

pub fn check_commutator_family(space: &AmbientSpace, family: Family, p: &PairParams) -> Result<IdentityReport> {
    check_pair_indices(space, p)?;
    let (g, h) = p.specs(family);
    let lhs = bracket(space, &g, &h)?.matrix()?;
    let rhs = commutator_closed_form(space, &g, &h);
    Ok(compare(&format!("commutator-{}", family.name()), space, &lhs, &[&rhs]))
}

/// `(closed form − I)² = 0`.
pub fn check_unipotent(space: &AmbientSpace, family: Family, p: &PairParams) -> Result<IdentityReport> {
    check_pair_indices(space, p)?;
    let (g, h) = p.specs(family);
    let id = Matrix::identity(space.ring(), space.dim());
    let nil = commutator_closed_form(space, &g, &h).sub(&id);
    let sq = nil.mul(&nil);
    Ok(compare("commutator-unipotent", space, &sq, &[&Matrix::zeros(space.ring(), space.dim(), space.dim())]))
}

/// Whether `[E(α_ij), E(δ_il)]` is the identity (outside the lemma's `i ≠ k`).
pub fn same_row_bracket_is_trivial(space: &AmbientSpace, family: Family, p: &PairParams) -> Result<bool> {
    let (g, h) = p.specs(family);
    let h = CoordSpec::new(h.kind, g.i, h.j, h.y);
    Ok(bracket(space, &g, &h)?.matrix()?.is_identity())
}

/// `[E(a·α_ij), E(b·δ_kl)] = [E(c·α_ij), E(d·δ_kl)]` when `ab = cd`.
pub fn check_scaling_corollary(
    space: &AmbientSpace,
    family: Family,
    (a, b): (&Scalar, &Scalar),
    (c, d): (&Scalar, &Scalar),
    p: &PairParams,
) -> Result<IdentityReport> {
    check_pair_indices(space, p)?;
    if a * b != c * d {
        return Err(Error::HypothesisViolated(format!("ab = {} but cd = {}", a * b, c * d)));
    }
    let (g, h) = p.specs(family);
    let lhs = bracket(space, &g.scaled(a), &h.scaled(b))?.matrix()?;
    let rhs = bracket(space, &g.scaled(c), &h.scaled(d))?.matrix()?;
    Ok(compare(&format!("scaling-{}", family.name()), space, &lhs, &[&rhs]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NestedVariant {
    I,
    II,
    III,
    IV,
}

impl NestedVariant {
    pub const ALL: [NestedVariant; 4] = [NestedVariant::I, NestedVariant::II, NestedVariant::III, NestedVariant::IV];

    /// Kinds of (outer, middle, inner) in `[outer, [middle, inner]]`.
    pub fn kinds(self) -> (Direction, Direction, Direction) {
        use Direction::{Alpha, BetaStar};
        match self {
            NestedVariant::I => (BetaStar, Alpha, Alpha),
            NestedVariant::II => (Alpha, Alpha, BetaStar),
            NestedVariant::III => (BetaStar, BetaStar, Alpha),
            NestedVariant::IV => (Alpha, BetaStar, BetaStar),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NestedVariant::I => "i",
            NestedVariant::II => "ii",
            NestedVariant::III => "iii",
            NestedVariant::IV => "iv",
        }
    }
}

/// `[E(y_out·_ij), [E(y_mid·_kl), E(y_inn·_pq)]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedParams {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub p: usize,
    pub q: usize,
    pub y_out: Scalar,
    pub y_mid: Scalar,
    pub y_inn: Scalar,
}

impl NestedParams {
    pub fn specs(&self, v: NestedVariant) -> (CoordSpec, CoordSpec, CoordSpec) {
        let (ko, km, ki) = v.kinds();
        (
            CoordSpec::new(ko, self.i, self.j, self.y_out.clone()),
            CoordSpec::new(km, self.k, self.l, self.y_mid.clone()),
            CoordSpec::new(ki, self.p, self.q, self.y_inn.clone()),
        )
    }
}

fn check_nested_indices(space: &AmbientSpace, p: &NestedParams) -> Result<()> {
    if space.m() < 2 {
        return Err(Error::RankTooSmall { need: 2, got: space.m() });
    }
    space.check_indices(p.i, p.j)?;
    space.check_indices(p.k, p.l)?;
    space.check_indices(p.p, p.q)?;
    if p.i == p.k {
        return Err(Error::IndexClash(format!("i = k = {}", p.i)));
    }
    if p.k == p.p {
        return Err(Error::IndexClash(format!("k = p = {}", p.k)));
    }
    Ok(())
}

pub fn nested_bracket(space: &AmbientSpace, out: &CoordSpec, mid: &CoordSpec, inn: &CoordSpec) -> Result<Word> {
    commutator(&out.word(space), &bracket(space, mid, inn)?)
}

/// The composite `mid ∘ inn* ∘ out` (λ, μ, ν or ξ) as a map of the middle generator's kind.
pub fn nested_composite(space: &AmbientSpace, out: &CoordSpec, mid: &CoordSpec, inn: &CoordSpec) -> HomMatrix {
    let comp = space
        .embed(&mid.hom(space))
        .mul(&space.embed_star(&inn.hom(space)))
        .mul(&space.embed(&out.hom(space)));
    space.extract_hom(mid.kind, &comp)
}

/// `E(λ)·[outer, E(λ/2)]`.
pub fn nested_rhs(space: &AmbientSpace, out: &CoordSpec, lambda: &HomMatrix) -> Result<Word> {
    let e = Word::single(space, Generator::Full(lambda.clone()));
    let half = Word::single(space, Generator::Full(lambda.half()));
    e.concat(&commutator(&out.word(space), &half)?)
}

pub fn check_nested_family(space: &AmbientSpace, variant: NestedVariant, p: &NestedParams) -> Result<IdentityReport> {
    check_nested_indices(space, p)?;
    let (out, mid, inn) = p.specs(variant);
    let lhs = nested_bracket(space, &out, &mid, &inn)?.matrix()?;
    let lambda = nested_composite(space, &out, &mid, &inn);
    let rhs = nested_rhs(space, &out, &lambda)?.matrix()?;
    Ok(compare(&format!("nested-{}", variant.name()), space, &lhs, &[&rhs]))
}

/// Equal nested brackets when `abc = def` and `a²bc = d²ef`.
pub fn check_nested_scaling(
    space: &AmbientSpace,
    variant: NestedVariant,
    (a, b, c): (&Scalar, &Scalar, &Scalar),
    (d, e, f): (&Scalar, &Scalar, &Scalar),
    p: &NestedParams,
) -> Result<IdentityReport> {
    check_nested_indices(space, p)?;
    let abc = &(a * b) * c;
    let def = &(d * e) * f;
    if abc != def {
        return Err(Error::HypothesisViolated(format!("abc = {abc} but def = {def}")));
    }
    if &abc * a != &def * d {
        return Err(Error::HypothesisViolated("a²bc differs from d²ef".into()));
    }
    let (out, mid, inn) = p.specs(variant);
    let lhs = nested_bracket(space, &out.scaled(a), &mid.scaled(b), &inn.scaled(c))?.matrix()?;
    let rhs = nested_bracket(space, &out.scaled(d), &mid.scaled(e), &inn.scaled(f))?.matrix()?;
    Ok(compare(&format!("nested-scaling-{}", variant.name()), space, &lhs, &[&rhs]))
}

/// `E_{α_ij} = Σ_{x_i, w_ij, q(w_ij)} = σ_{x_i, ⟨w_ij,w_ij⟩/2, w_ij}` and the `P*` twin.
pub fn check_bridges(space: &AmbientSpace, spec: &CoordSpec) -> Result<IdentityReport> {
    let coord = gen_coord(space, spec.kind, spec.i, spec.j, &spec.y)?;
    let u = space.basis(match spec.kind {
        Direction::Alpha => space.x(spec.i),
        Direction::BetaStar => space.f(spec.i),
    });
    let mut w = vec![space.ring().zero(); space.dim()];
    w[space.z(spec.j)] = spec.y.clone();
    let r = space.q_value(&w)?;
    let eichler = crate::dser::gen_eichler(space, &u, &w, &r)?;
    let a0 = space.bilinear(&w, &w)?.half();
    let bass = crate::dser::gen_bass(space, &u, &a0, &w)?;
    Ok(compare(
        "bridges",
        space,
        coord.matrix(),
        &[eichler.matrix(), bass.matrix()],
    ))
}

fn eichler(u: &[Scalar], v: &[Scalar], r: &Scalar) -> Generator {
    Generator::Eichler {
        u: u.to_vec(),
        v: v.to_vec(),
        r: r.clone(),
    }
}

/// Properties (i)–(iv) of `Σ_{u,v,q(v)}` for admissible `u, v, w` and an orthogonal `σ`.
/// Property (ii) reads the third slot as `q(v) + q(w) + B(v, w)`.
pub fn check_eichler_properties(
    space: &AmbientSpace,
    u: &[Scalar],
    v: &[Scalar],
    w: &[Scalar],
    sigma: &Word,
) -> Result<Vec<IdentityReport>> {
    let qv = space.q_value(v)?;
    let qw = space.q_value(w)?;
    let sv = eichler(u, v, &qv);
    sv.validate(space)?;
    eichler(u, w, &qw).validate(space)?;
    let t = sv.matrix(space)?;

    let mut out = vec![check_membership(space, &sv)?.renamed("eichler-i")];

    let sum: Vec<Scalar> = v.iter().zip(w).map(|(a, b)| a + b).collect();
    let slot = &(&qv + &qw) + &space.bilinear(v, w)?;
    let lhs = t.mul(&eichler(u, w, &qw).matrix(space)?);
    let rhs = eichler(u, &sum, &slot).matrix(space)?;
    out.push(compare("eichler-ii", space, &lhs, &[&rhs]));

    let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
    let prod = t.mul(&eichler(u, &neg, &qv).matrix(space)?);
    out.push(compare("eichler-iii", space, &prod, &[&Matrix::identity(space.ring(), space.dim())]));

    let s = sigma.matrix()?;
    let apply = |x: &[Scalar]| -> Vec<Scalar> {
        (0..space.dim())
            .map(|r| (0..space.dim()).fold(space.ring().zero(), |acc, c| &acc + &(s.get(r, c) * &x[c])))
            .collect()
    };
    let lhs = s.mul(&t).mul(&space.orth_inverse(&s));
    let rhs = eichler(&apply(u), &apply(v), &qv).matrix(space)?;
    out.push(compare("eichler-iv", space, &lhs, &[&rhs]));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn q() -> Ring {
        Ring::rationals()
    }

    fn pair(i: usize, j: usize, k: usize, l: usize, y1: Scalar, y2: Scalar) -> PairParams {
        PairParams { i, j, k, l, y1, y2 }
    }

    #[test]
    fn splitting_examples() {
        let r = Ring::parse("QQ[a]").unwrap();
        let a = r.var("a").unwrap();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        let h = HomMatrix::new(Direction::Alpha, Matrix::from_rows(&r, vec![vec![a.clone()]]).unwrap());
        assert!(check_splitting(&sp, &h, &h).unwrap().is_equal());
        let zero = HomMatrix::zero(&sp, Direction::Alpha);
        assert!(check_splitting(&sp, &h, &zero).unwrap().is_equal());
        let beta = HomMatrix::zero(&sp, Direction::BetaStar);
        assert_eq!(check_splitting(&sp, &h, &beta), Err(Error::DirectionMismatch));
    }

    #[test]
    fn generation_word_shape() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2, -2], 2).unwrap();
        let rows = vec![vec![r.int(1), r.int(2)], vec![r.int(3), r.int(-1)]];
        let h = HomMatrix::new(Direction::BetaStar, Matrix::from_rows(&r, rows).unwrap());
        let w = factor_generators(&sp, &h).unwrap();
        assert_eq!(w.len(), 7);
        for (a, b) in w.factors().iter().zip(w.factors().iter().rev()) {
            assert_eq!(a, b);
        }
        assert!(check_generation(&sp, &h).unwrap().is_equal());

        let one = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        let h1 = HomMatrix::new(Direction::Alpha, Matrix::from_rows(&r, vec![vec![r.int(5)]]).unwrap());
        let w1 = factor_generators(&one, &h1).unwrap();
        assert_eq!(w1.len(), 1);
        assert!(check_generation(&one, &h1).unwrap().is_equal());
    }

    #[test]
    fn generation_with_off_diagonal_form() {
        let r = q();
        let g = Matrix::from_rows(&r, vec![vec![r.int(2), r.int(1)], vec![r.int(1), r.int(1)]]).unwrap();
        let sp = AmbientSpace::new(&g, 2).unwrap();
        let rows = vec![vec![r.int(1), r.int(-2)], vec![r.int(4), r.int(3)]];
        let h = HomMatrix::new(Direction::Alpha, Matrix::from_rows(&r, rows).unwrap());
        assert!(check_generation(&sp, &h).unwrap().is_equal());
    }

    #[test]
    fn commutator_small_example() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let p = pair(1, 1, 2, 1, r.one(), r.one());
        for fam in Family::ALL {
            assert!(check_commutator_family(&sp, fam, &p).unwrap().is_equal(), "{fam:?}");
            assert!(check_unipotent(&sp, fam, &p).unwrap().is_equal());
        }
        let zero = pair(1, 1, 2, 1, r.zero(), r.one());
        let rep = check_commutator_family(&sp, Family::AA, &zero).unwrap();
        assert!(rep.is_equal());
        assert!(matches!(
            check_commutator_family(&sp, Family::AA, &pair(1, 1, 1, 1, r.one(), r.one())),
            Err(Error::IndexClash(_))
        ));
    }

    #[test]
    fn commutator_identity_generic_form() {
        let r = Ring::parse("QQ[a,b]").unwrap();
        let g = Matrix::from_rows(&r, vec![vec![r.int(2), r.int(1)], vec![r.int(1), r.int(3)]]).unwrap();
        let sp = AmbientSpace::new(&g, 3).unwrap();
        let p = pair(3, 2, 1, 1, r.var("a").unwrap(), r.var("b").unwrap());
        for fam in Family::ALL {
            assert!(check_commutator_family(&sp, fam, &p).unwrap().is_equal(), "{fam:?}");
        }
    }

    #[test]
    fn same_kind_same_row_commutes() {
        let r = Ring::parse("QQ[a,b]").unwrap();
        let sp = AmbientSpace::diagonal(&r, &[2, 4], 2).unwrap();
        let p = pair(1, 1, 1, 2, r.var("a").unwrap(), r.var("b").unwrap());
        assert!(same_row_bracket_is_trivial(&sp, Family::AA, &p).unwrap());
        assert!(same_row_bracket_is_trivial(&sp, Family::BstarBstar, &p).unwrap());
        assert!(!same_row_bracket_is_trivial(&sp, Family::ABstar, &p).unwrap());
    }

    #[test]
    fn scaling_examples() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let p = pair(1, 1, 2, 1, r.one(), r.one());
        let (n2, n3, n6, n1) = (r.int(2), r.int(3), r.int(6), r.int(1));
        for fam in Family::ALL {
            assert!(check_scaling_corollary(&sp, fam, (&n2, &n3), (&n6, &n1), &p).unwrap().is_equal());
        }
        assert!(matches!(
            check_scaling_corollary(&sp, Family::AA, (&n2, &n3), (&n2, &n1), &p),
            Err(Error::HypothesisViolated(_))
        ));

        let l = Ring::parse("QQ[s][1/s]").unwrap();
        let spl = AmbientSpace::diagonal(&l, &[2], 2).unwrap();
        let s = l.s().unwrap();
        let pl = pair(2, 1, 1, 1, l.one(), l.one());
        let rep = check_scaling_corollary(&spl, Family::ABstar, (&s.pow(2), &s), (&s.pow(3), &l.one()), &pl).unwrap();
        assert!(rep.is_equal());
    }

    #[test]
    fn nested_small_example() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2], 3).unwrap();
        let p = NestedParams {
            i: 1,
            j: 1,
            k: 2,
            l: 1,
            p: 1,
            q: 1,
            y_out: r.one(),
            y_mid: r.one(),
            y_inn: r.one(),
        };
        for v in NestedVariant::ALL {
            let (out, mid, inn) = p.specs(v);
            let lambda = nested_composite(&sp, &out, &mid, &inn);
            assert!(!lambda.is_zero());
            assert!(check_nested_family(&sp, v, &p).unwrap().is_equal(), "{v:?}");
        }
        let small = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        assert!(matches!(
            check_nested_family(&small, NestedVariant::I, &p),
            Err(Error::RankTooSmall { .. })
        ));
    }

    #[test]
    fn nested_scaling_examples() {
        let l = Ring::parse("QQ[s][1/s]").unwrap();
        let sp = AmbientSpace::diagonal(&l, &[2], 2).unwrap();
        let s = l.s().unwrap();
        let one = l.one();
        let p = NestedParams {
            i: 1,
            j: 1,
            k: 2,
            l: 1,
            p: 1,
            q: 1,
            y_out: one.clone(),
            y_mid: one.clone(),
            y_inn: one.clone(),
        };
        for v in NestedVariant::ALL {
            let lhs = (&one, &s.pow(4), &s);
            let rhs = (&one, &s.pow(3), &s.pow(2));
            assert!(check_nested_scaling(&sp, v, lhs, rhs, &p).unwrap().is_equal());
            let lhs = (&s, &s, &s);
            let rhs = (&s, &s.pow(2), &one);
            assert!(check_nested_scaling(&sp, v, lhs, rhs, &p).unwrap().is_equal());
        }
    }

    #[test]
    fn bridges_small_example() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        for kind in [Direction::Alpha, Direction::BetaStar] {
            assert!(check_bridges(&sp, &CoordSpec::new(kind, 1, 1, r.one())).unwrap().is_equal());
            assert!(check_bridges(&sp, &CoordSpec::new(kind, 1, 1, r.zero())).unwrap().is_equal());
        }
    }

    #[test]
    fn violated_report_carries_witness() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        let id = Matrix::identity(&r, 3);
        let mut bad = id.clone();
        bad.set(1, 2, r.int(7));
        let rep = compare("x", &sp, &id, &[&bad]);
        assert_eq!(
            rep.verdict,
            Verdict::Violated {
                row: 1,
                col: 2,
                lhs: "0".into(),
                rhs: "7".into()
            }
        );
    }
}
