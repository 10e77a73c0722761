//! Polynomial-parameter words, dilation with denominator clearing, and telescoping.
//!
//! Words over `A_s[X]` live in a localization ring such as `QQ[s,x,X][1/s]`; the
//! dilated outputs are moved to its base ring `QQ[s,x,X]`.

use serde::{Deserialize, Serialize};

use crate::dser::{commutator, CoordSpec, Generator, Word};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quad_space::{AmbientSpace, Direction};
use crate::ring::{Ring, Scalar};

/// Substitutes `var → v` in every scalar parameter.
pub fn specialize_word(w: &Word, var: &str, v: &Scalar) -> Result<Word> {
    if w.space().ring().var_index(var).is_none() {
        return Err(Error::UnboundVariable(var.to_string()));
    }
    w.map_scalars(w.space(), |y| y.substitute_var(var, v))
}

/// `θ(0)⁻¹θ(X)`.
pub fn normalize_theta(w: &Word, var: &str) -> Result<Word> {
    let at_zero = specialize_word(w, var, &w.space().ring().zero())?;
    at_zero.inverse().concat(w)
}

/// `∏ a_i b_i = ∏ r_i b_i r_i⁻¹ · ∏ a_i` with `r_i = a_1⋯a_i`.
pub fn regroup(a: &[Word], b: &[Word]) -> Result<(Vec<Word>, Word)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let Some(first) = a.first() else {
        return Err(Error::LengthMismatch(0, 0));
    };
    let mut prefix = Word::new(first.space());
    let mut conj = Vec::with_capacity(a.len());
    for (ai, bi) in a.iter().zip(b) {
        prefix = prefix.concat(ai)?;
        conj.push(crate::dser::conjugate(bi, &prefix)?);
    }
    Ok((conj, prefix))
}

/// One term `γ · E(X·p(X)) · γ⁻¹` of [`conjugate_factor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatePiece {
    pub gamma: Word,
    pub arg: CoordSpec,
}

impl ConjugatePiece {
    pub fn word(&self) -> Result<Word> {
        crate::dser::conjugate(&self.arg.word(self.gamma.space()), &self.gamma)
    }
}

fn coord_of(g: &Generator) -> Result<CoordSpec> {
    match g {
        Generator::Coord { kind, i, j, y } => Ok(CoordSpec::new(*kind, *i, *j, y.clone())),
        _ => Err(Error::NotCoordinate),
    }
}

/// Writes a word with `θ(0) = Id` as `∏ γ_k E(X·p_k(X)) γ_k⁻¹`.
///
/// With `E(c_k + X p_k) = E(c_k/2)E(X p_k)E(c_k/2)` the conjugators are
/// `γ_k = E(c_1)⋯E(c_{k−1})E(c_k/2)`; the leftover tail is `∏E(c_k) = θ(0)`.
pub fn conjugate_factor(w: &Word, var: &str) -> Result<Vec<ConjugatePiece>> {
    let space = w.space();
    let specs = w
        .factors()
        .iter()
        .map(|f| coord_of(&f.effective(space)))
        .collect::<Result<Vec<_>>>()?;
    let mut consts = Vec::with_capacity(specs.len());
    let mut args = Vec::with_capacity(specs.len());
    for c in &specs {
        let (c0, rest) = c.y.split_at_zero(var)?;
        consts.push(CoordSpec::new(c.kind, c.i, c.j, c0));
        let x = space.ring().var(var)?;
        args.push(CoordSpec::new(c.kind, c.i, c.j, &x * &rest));
    }
    let tail = Word::from_factors(space, consts.iter().map(|c| crate::dser::Factor::new(c.generator())).collect());
    if !tail.matrix()?.is_identity() {
        return Err(Error::NotNormalized);
    }
    let mut out = Vec::new();
    let mut prefix = Word::new(space);
    for (c, arg) in consts.iter().zip(args) {
        let half = CoordSpec::new(c.kind, c.i, c.j, c.y.half());
        if !arg.y.is_zero() {
            let gamma = prefix.concat(&half.word(space))?.simplify();
            out.push(ConjugatePiece { gamma, arg });
        }
        prefix = prefix.concat(&c.word(space))?.simplify();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DilationCase {
    /// Conjugation by the identity, or an identity target.
    #[serde(rename = "trivial")]
    Trivial,
    /// Same kind, different rows.
    #[serde(rename = "1a")]
    SameKindApart,
    /// Same kind, same row: the two generators commute.
    #[serde(rename = "1b")]
    SameKindSameRow,
    /// Mixed kinds, different rows.
    #[serde(rename = "2a")]
    MixedApart,
    /// Mixed kinds, same row: the nested-commutator rewrite.
    #[serde(rename = "2b")]
    MixedSameRow,
}

impl DilationCase {
    pub fn classify(conj: Direction, i: usize, target: Direction, k: usize) -> DilationCase {
        match (conj == target, i == k) {
            (true, false) => DilationCase::SameKindApart,
            (true, true) => DilationCase::SameKindSameRow,
            (false, false) => DilationCase::MixedApart,
            (false, true) => DilationCase::MixedSameRow,
        }
    }

    /// Smallest budget `d` for a conjugator with denominator `s^r` when every output
    /// parameter must have s-order at least `floor`.
    pub fn d_min(self, r: u32, floor: u32) -> u32 {
        match self {
            DilationCase::Trivial => floor,
            DilationCase::MixedSameRow => 3 * r + 4 * floor + 2,
            _ => r + 2 * floor,
        }
    }

    /// Upper bound on the number of output factors.
    pub fn max_len(self) -> usize {
        match self {
            DilationCase::Trivial | DilationCase::SameKindSameRow => 1,
            DilationCase::SameKindApart | DilationCase::MixedApart => 5,
            DilationCase::MixedSameRow => 52,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DilationCase::Trivial => "trivial",
            DilationCase::SameKindApart => "1a",
            DilationCase::SameKindSameRow => "1b",
            DilationCase::MixedApart => "2a",
            DilationCase::MixedSameRow => "2b",
        }
    }
}

/// The conjugator `E((a/s^r)·X_ij)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugator {
    pub kind: Direction,
    pub i: usize,
    pub j: usize,
    pub a: Scalar,
    pub r: u32,
}

/// The conjugated generator `E(s^d·x·Y_kl)` (without `d`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub kind: Direction,
    pub k: usize,
    pub l: usize,
    pub x: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationWitness {
    pub case: DilationCase,
    pub conj: Conjugator,
    pub target: Target,
    pub d: u32,
    /// Output word over the base ring of the localization.
    pub word: Word,
    /// Least s-order of the output parameters (`None` when every parameter is zero).
    pub min_s_order: Option<i64>,
    pub verified: bool,
}

fn s_of(ring: &Ring) -> Result<Scalar> {
    ring.s()
        .ok_or_else(|| Error::InvalidRing(format!("{ring} is not a localization")))
}

/// `y = a / s^r` with `r ≥ 0` least.
fn split_denominator(y: &Scalar) -> Result<(Scalar, u32)> {
    match y.s_order() {
        Some(o) if o < 0 => {
            let r = (-o) as u32;
            Ok((y * &y.ring().s_pow(r as i64)?, r))
        }
        _ => Ok((y.clone(), 0)),
    }
}

/// `y = s^o · x` with `o` the s-order (0 for zero).
fn split_order(y: &Scalar) -> Result<(Scalar, u32)> {
    match y.s_order() {
        Some(o) if o > 0 => Ok((y * &y.ring().s_pow(-o)?, o as u32)),
        _ => Ok((y.clone(), 0)),
    }
}

/// The composite `mid ∘ inn* ∘ out` of three coordinate maps as a coordinate generator.
fn nested_coord(space: &AmbientSpace, out: &CoordSpec, mid: &CoordSpec, inn: &CoordSpec) -> CoordSpec {
    debug_assert!(inn.kind != out.kind && inn.i == out.i);
    let phi = space.phi().get(mid.j - 1, inn.j - 1);
    let y = &(&(&out.y * &mid.y) * &inn.y) * phi;
    CoordSpec::new(mid.kind, mid.i, out.j, y)
}

struct Dilator<'a> {
    space: &'a AmbientSpace,
    s: Scalar,
}

impl Dilator<'_> {
    fn pow(&self, k: i64) -> Scalar {
        self.space.ring().s_pow(k).expect("s is a unit")
    }

    fn bracket(&self, g: &CoordSpec, h: &CoordSpec) -> Result<Word> {
        commutator(&g.word(self.space), &h.word(self.space))
    }

    /// `g·T·g⁻¹` for `g = E((a/s^r)·X_ij)` and `T = E(s^d·x·Y_kl)`, every output parameter
    /// of s-order at least `floor` (given `ord(a), ord(x) ≥ 0`).
    fn dilate(&self, c: &Conjugator, t: &Target, d: u32, floor: u32) -> Result<(DilationCase, Word)> {
        let sp = self.space;
        let target = CoordSpec::new(t.kind, t.k, t.l, &self.pow(d as i64) * &t.x);
        if t.x.is_zero() {
            return Ok((DilationCase::Trivial, Word::new(sp)));
        }
        if c.a.is_zero() {
            return Ok((DilationCase::Trivial, target.word(sp)));
        }
        let case = DilationCase::classify(c.kind, c.i, t.kind, t.k);
        let d_min = case.d_min(c.r, floor);
        if d < d_min {
            return Err(Error::BudgetTooSmall { d, d_min });
        }
        let word = match case {
            DilationCase::SameKindSameRow => target.word(sp),
            DilationCase::SameKindApart | DilationCase::MixedApart => {
                // [E(a/s^r X), E(s^d x Y)] = [E(a s^p X), E(s^q x Y)] with p + q = d − r
                let p = floor as i64;
                let q = d as i64 - c.r as i64 - p;
                let g = CoordSpec::new(c.kind, c.i, c.j, &c.a * &self.pow(p));
                let h = CoordSpec::new(t.kind, t.k, t.l, &t.x * &self.pow(q));
                self.bracket(&g, &h)?.concat(&target.word(sp))?
            }
            DilationCase::MixedSameRow => self.mixed_same_row(c, t, d, floor)?,
            DilationCase::Trivial => unreachable!(),
        };
        Ok((case, word.simplify()))
    }

    /// Mixed kinds on one row. With an auxiliary row `k'`:
    /// `T = [A, [B, C]]·[D, A]` by the nested identity, where `A = E(s^N1 ·_{k'l})`,
    /// `B = E(s^N2 x ·_{il})`, `C = E(s^N3 c ·_{k'q})`, `D = E(s^d x/2 ·_{il})` and `c φ_lq = 1`.
    /// Then `gTg⁻¹ = [gAg⁻¹, g[B,C]g⁻¹]·g[D,A]g⁻¹`; each conjugate is expanded again with
    /// the nested identity (brackets reversed where needed) and the scaling corollary.
    fn mixed_same_row(&self, c: &Conjugator, t: &Target, d: u32, floor: u32) -> Result<Word> {
        let sp = self.space;
        if sp.m() < 2 {
            return Err(Error::RankTooSmall { need: 2, got: sp.m() });
        }
        let i = c.i;
        let l = t.l;
        let k2 = (1..=sp.m()).find(|&k| k != i).expect("m >= 2");
        let phi = sp.phi();
        let q = std::iter::once(l)
            .chain(1..=sp.n())
            .find(|&q| phi.get(l - 1, q - 1).inv().is_ok())
            .ok_or_else(|| Error::NonUnitPairing(format!("row {l} of the form has no unit entry")))?;
        let c_unit = phi.get(l - 1, q - 1).inv()?;
        let (kk, kb) = (c.kind, t.kind);

        let n1 = c.r + 2 * floor;
        let rest = d - n1;
        let n2 = rest.div_ceil(2);
        let n3 = rest - n2;
        let pw = |k: u32| self.pow(k as i64);

        let g = CoordSpec::new(kk, i, c.j, c.a.div(&pw(c.r))?);
        let a1 = CoordSpec::new(kk, k2, l, pw(n1));
        let b = CoordSpec::new(kb, i, l, &pw(n2) * &t.x);
        let cc = CoordSpec::new(kb, k2, q, &pw(n3) * &c_unit);
        let dh = CoordSpec::new(kb, i, l, (&pw(d) * &t.x).half());

        let lambda = nested_coord(sp, &a1, &b, &cc);
        if lambda.y != &pw(d) * &t.x {
            return Err(Error::RewriteFailure {
                row: 0,
                col: 0,
                lhs: lambda.y.to_string(),
                rhs: (&pw(d) * &t.x).to_string(),
            });
        }

        let (_, p1) = self.dilate(
            c,
            &Target {
                kind: kk,
                k: k2,
                l,
                x: sp.ring().one(),
            },
            n1,
            floor,
        )?;

        // g E(ξ/2) g⁻¹ E(−ξ/2) rescaled so that g's parameter is a·s^floor
        let rescaled = |xi: &CoordSpec| -> Result<Word> {
            let g2 = CoordSpec::new(kk, i, c.j, &c.a * &pw(floor));
            let shift = self.pow(-((c.r + floor) as i64));
            let h2 = CoordSpec::new(xi.kind, xi.i, xi.j, &xi.y.half() * &shift);
            self.bracket(&g2, &h2)
        };

        // g[C,B]g⁻¹ = E(ξ)·[g, E(ξ/2)]·[C,B]
        let xi = nested_coord(sp, &g, &cc, &b);
        let w2 = xi.word(sp).concat(&rescaled(&xi)?)?.concat(&self.bracket(&cc, &b)?)?;
        let p2 = w2.inverse();

        // g[A,D]g⁻¹ = E(μ)·[g, E(μ/2)]·[A,D]
        let mu = nested_coord(sp, &g, &a1, &dh);
        let w3 = mu.word(sp).concat(&rescaled(&mu)?)?.concat(&self.bracket(&a1, &dh)?)?;
        let p3 = w3.inverse();

        Word::product(sp, &[p1.clone(), p2.clone(), p1.inverse(), p2.inverse(), p3])
    }
}

fn verify_equal(lhs: &Matrix, rhs: &Matrix) -> Result<()> {
    if let Some((row, col)) = lhs.first_difference(rhs) {
        return Err(Error::RewriteFailure {
            row,
            col,
            lhs: lhs.get(row, col).to_string(),
            rhs: rhs.get(row, col).to_string(),
        });
    }
    Ok(())
}

fn check_floor(word: &Word, floor: u32) -> Result<Option<i64>> {
    let m = word.min_s_order();
    if let Some(o) = m {
        if o < floor as i64 {
            return Err(Error::HypothesisViolated(format!(
                "output parameter of s-order {o} below {floor}"
            )));
        }
    }
    Ok(m)
}

/// The base-ring space of a localized space.
pub fn base_space(space: &AmbientSpace) -> Result<AmbientSpace> {
    space.to_ring(&space.ring().base())
}

/// Rewrites `E((a/s^r)·X_ij)·E(s^d x·Y_kl)·E((a/s^r)·X_ij)⁻¹` as a product of
/// generators whose parameters all lie in `s·A`.
pub fn dilate_generator(space: &AmbientSpace, conj: &Conjugator, target: &Target, d: u32) -> Result<DilationWitness> {
    let s = s_of(space.ring())?;
    space.check_indices(conj.i, conj.j)?;
    space.check_indices(target.k, target.l)?;
    let dil = Dilator { space, s };
    let (case, word) = dil.dilate(conj, target, d, 1)?;
    let min_s_order = check_floor(&word, 1)?;

    let g = CoordSpec::new(conj.kind, conj.i, conj.j, conj.a.div(&dil.s.pow(conj.r))?).word(space);
    let t = CoordSpec::new(target.kind, target.k, target.l, &dil.s.pow(d) * &target.x).word(space);
    let expect = crate::dser::conjugate(&t, &g)?.matrix()?;
    verify_equal(&word.matrix()?, &expect)?;

    Ok(DilationWitness {
        case,
        conj: conj.clone(),
        target: target.clone(),
        d,
        word: word.to_space(&base_space(space)?)?,
        min_s_order,
        verified: true,
    })
}

/// Budget an input needs so that conjugating by `E(y·_)` (with `y = a/s^r`) leaves
/// every output parameter with s-order at least `floor`.
fn worst_d_min(space: &AmbientSpace, r: u32, floor: u32) -> u32 {
    if space.m() >= 2 {
        DilationCase::MixedSameRow.d_min(r, floor)
    } else {
        DilationCase::SameKindApart.d_min(r, floor)
    }
}

fn conjugator_specs(xi: &Word) -> Result<Vec<CoordSpec>> {
    xi.factors()
        .iter()
        .map(|f| coord_of(&f.effective(xi.space())))
        .collect()
}

/// Floors per conjugator, outermost first, and the budget the target needs.
fn budget_chain(space: &AmbientSpace, specs: &[CoordSpec]) -> Result<(Vec<u32>, u32)> {
    let mut floors = Vec::with_capacity(specs.len());
    let mut need = 1;
    for c in specs {
        floors.push(need);
        let (_, r) = split_denominator(&c.y)?;
        need = worst_d_min(space, r, need);
    }
    Ok((floors, need))
}

/// Least `d` accepted by [`conjugate_rewrite`] for this conjugating word.
pub fn required_budget(xi: &Word) -> Result<u32> {
    Ok(budget_chain(xi.space(), &conjugator_specs(xi)?)?.1)
}

/// `ξ·E(s^d x·Z_ij)·ξ⁻¹` as a word over the base ring, conjugating by the factors of
/// `ξ` from the innermost out. Returns the required budget and the word.
pub fn conjugate_rewrite(xi: &Word, target: &Target, d: u32) -> Result<(u32, Word)> {
    let space = xi.space();
    let s = s_of(space.ring())?;
    space.check_indices(target.k, target.l)?;
    let specs = conjugator_specs(xi)?;
    let (floors, need) = budget_chain(space, &specs)?;
    if d < need {
        return Err(Error::BudgetTooSmall { d, d_min: need });
    }
    let dil = Dilator { space, s };
    let start = CoordSpec::new(target.kind, target.k, target.l, &dil.s.pow(d) * &target.x);
    let mut current = start.word(space);
    for (c, &floor) in specs.iter().zip(&floors).rev() {
        let (a, r) = split_denominator(&c.y)?;
        let conj = Conjugator {
            kind: c.kind,
            i: c.i,
            j: c.j,
            a,
            r,
        };
        let mut next = Word::new(space);
        for f in current.factors() {
            let t = coord_of(&f.effective(space))?;
            let (x, o) = split_order(&t.y)?;
            let tgt = Target {
                kind: t.kind,
                k: t.i,
                l: t.j,
                x,
            };
            let (_, w) = dil.dilate(&conj, &tgt, o, floor)?;
            next = next.concat(&w)?;
        }
        current = next.simplify();
    }
    check_floor(&current, 1)?;
    let expect = crate::dser::conjugate(&start.word(space), xi)?.matrix()?;
    verify_equal(&current.matrix()?, &expect)?;
    Ok((need, current.to_space(&base_space(space)?)?))
}

/// For `θ_s(0) = Id` over `A_s[X]`, finds `d` and a word over `A[X]` equal to `θ_s(s^d X)`.
pub fn dilate_theta(theta: &Word, var: &str) -> Result<(u32, Word)> {
    let space = theta.space();
    let ring = space.ring();
    let s = s_of(ring)?;
    let base = base_space(space)?;
    let pieces = conjugate_factor(theta, var)?;
    if pieces.is_empty() {
        return Ok((1, Word::new(&base)));
    }
    let mut d = 1;
    let mut needs = Vec::with_capacity(pieces.len());
    for p in &pieces {
        let need = required_budget(&p.gamma)?;
        let (_, r) = split_denominator(&p.arg.y)?;
        d = d.max(need + r);
        needs.push(need);
    }
    let sd = s.pow(d);
    let mut out = Word::new(&base);
    for (p, need) in pieces.iter().zip(needs) {
        let y = p.arg.y.scale_var(var, &sd)?;
        let x = &y * &ring.s_pow(-(need as i64))?;
        let tgt = Target {
            kind: p.arg.kind,
            k: p.arg.i,
            l: p.arg.j,
            x,
        };
        let (_, w) = conjugate_rewrite(&p.gamma, &tgt, need)?;
        out = out.concat(&w)?;
    }
    let out = out.simplify();
    let expect = theta.map_scalars(space, |y| y.scale_var(var, &sd))?.matrix()?;
    verify_equal(&out.to_space(space)?.matrix()?, &expect)?;
    Ok((d, out))
}

/// `θ(X) = ∏ κ_i` with `κ_i = θ(S_i X)·θ(S_{i+1} X)⁻¹` and `S_i = Σ_{k≥i} d_k b_k`,
/// i.e. `κ(d_i b_i X, T_i)` for `κ(X, Y) = θ(X+Y)θ(Y)⁻¹`.
pub fn telescope(
    space: &AmbientSpace,
    theta: &Matrix,
    var: &str,
    shares: &[(Scalar, Scalar)],
) -> Result<Vec<Matrix>> {
    let ring = space.ring();
    let total = shares.iter().fold(ring.zero(), |acc, (d, b)| &acc + &(d * b));
    if !total.is_one() {
        return Err(Error::PartitionOfUnityFailed(total.to_string()));
    }
    let at = |c: &Scalar| -> Result<Matrix> { theta.try_map(ring, |e| e.scale_var(var, c)) };
    let mut tails = vec![ring.zero(); shares.len() + 1];
    for idx in (0..shares.len()).rev() {
        let (d, b) = &shares[idx];
        tails[idx] = &tails[idx + 1] + &(d * b);
    }
    let mut out = Vec::with_capacity(shares.len());
    let mut current = at(&tails[0])?;
    for idx in 0..shares.len() {
        let next = at(&tails[idx + 1])?;
        out.push(current.mul(&space.orth_inverse(&next)));
        current = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dser::{word_to_matrix, Factor};

    fn loc() -> Ring {
        Ring::parse("QQ[s,x,X][1/s]").unwrap()
    }

    fn coord(space: &AmbientSpace, kind: Direction, i: usize, j: usize, y: Scalar) -> Word {
        Word::coord(space, kind, i, j, y)
    }

    #[test]
    fn specialize_examples() {
        let r = loc();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        let x = r.var("X").unwrap();
        let w = coord(&sp, Direction::Alpha, 1, 1, x.clone());
        assert!(specialize_word(&w, "X", &r.zero()).unwrap().matrix().unwrap().is_identity());
        let s3 = r.s().unwrap().pow(3);
        let sw = specialize_word(&w, "X", &s3).unwrap();
        assert_eq!(sw, coord(&sp, Direction::Alpha, 1, 1, s3.clone()));
        let entrywise = w.matrix().unwrap().try_map(&r, |e| e.substitute_var("X", &s3)).unwrap();
        assert_eq!(sw.matrix().unwrap(), entrywise);
        assert!(matches!(specialize_word(&w, "Z", &s3), Err(Error::UnboundVariable(_))));
    }

    #[test]
    fn normalize_examples() {
        let r = loc();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let x = r.var("X").unwrap();
        let w = Word::product(
            &sp,
            &[
                coord(&sp, Direction::Alpha, 1, 1, &x + &r.one()),
                coord(&sp, Direction::BetaStar, 1, 1, r.int(3)),
            ],
        )
        .unwrap();
        let n = normalize_theta(&w, "X").unwrap();
        assert!(specialize_word(&n, "X", &r.zero()).unwrap().matrix().unwrap().is_identity());
        let c = coord(&sp, Direction::Alpha, 1, 1, r.int(5));
        assert!(normalize_theta(&c, "X").unwrap().matrix().unwrap().is_identity());
    }

    #[test]
    fn regroup_examples() {
        let r = Ring::rationals();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let a: Vec<Word> = (1..=4)
            .map(|t| coord(&sp, if t % 2 == 0 { Direction::Alpha } else { Direction::BetaStar }, 1 + t % 2, 1, r.int(t as i64)))
            .collect();
        let b: Vec<Word> = (1..=4)
            .map(|t| coord(&sp, Direction::Alpha, 2 - t % 2, 1, r.int(-(t as i64))))
            .collect();
        let (conj, tail) = regroup(&a, &b).unwrap();
        let lhs = a.iter().zip(&b).fold(Word::new(&sp), |acc, (x, y)| acc.concat(x).unwrap().concat(y).unwrap());
        let rhs = Word::product(&sp, &conj).unwrap().concat(&tail).unwrap();
        assert_eq!(lhs.matrix().unwrap(), rhs.matrix().unwrap());
        assert_eq!(regroup(&a, &b[..2]).unwrap_err(), Error::LengthMismatch(4, 2));
    }

    #[test]
    fn conjugate_factor_reassembles() {
        let r = loc();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let x = r.var("X").unwrap();
        let c = r.parse_scalar("x/s").unwrap();
        let w = Word::product(
            &sp,
            &[
                coord(&sp, Direction::Alpha, 1, 1, &c + &x),
                coord(&sp, Direction::BetaStar, 2, 1, &x * &x),
                coord(&sp, Direction::Alpha, 1, 1, &(-&c) + &(&x * &r.int(3))),
            ],
        )
        .unwrap();
        let pieces = conjugate_factor(&w, "X").unwrap();
        assert_eq!(pieces.len(), 3);
        let words: Vec<Word> = pieces.iter().map(|p| p.word().unwrap()).collect();
        assert_eq!(Word::product(&sp, &words).unwrap().matrix().unwrap(), w.matrix().unwrap());

        let single = coord(&sp, Direction::Alpha, 1, 1, x.clone());
        let p = conjugate_factor(&single, "X").unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0].gamma.is_empty());

        let inv = coord(&sp, Direction::Alpha, 1, 1, &c + &x);
        let pair = inv.concat(&inv.inverse()).unwrap();
        let pp = conjugate_factor(&pair, "X").unwrap();
        let words: Vec<Word> = pp.iter().map(|p| p.word().unwrap()).collect();
        assert!(Word::product(&sp, &words).unwrap().matrix().unwrap().is_identity());

        let bad = coord(&sp, Direction::Alpha, 1, 1, &c + &x);
        assert_eq!(conjugate_factor(&bad, "X").unwrap_err(), Error::NotNormalized);
    }

    fn witness(
        sp: &AmbientSpace,
        (ck, i, j, a, r): (Direction, usize, usize, &str, u32),
        (tk, k, l, x): (Direction, usize, usize, &str),
        d: u32,
    ) -> Result<DilationWitness> {
        let ring = sp.ring();
        let conj = Conjugator {
            kind: ck,
            i,
            j,
            a: ring.parse_scalar(a).unwrap(),
            r,
        };
        let target = Target {
            kind: tk,
            k,
            l,
            x: ring.parse_scalar(x).unwrap(),
        };
        dilate_generator(sp, &conj, &target, d)
    }

    #[test]
    fn dilation_cases() {
        use Direction::{Alpha, BetaStar};
        let r = loc();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let w = witness(&sp, (Alpha, 1, 1, "0", 2), (BetaStar, 1, 1, "x"), 1).unwrap();
        assert_eq!((w.case, w.word.len()), (DilationCase::Trivial, 1));

        let w = witness(&sp, (Alpha, 1, 1, "x + 1", 2), (Alpha, 2, 1, "x"), 4).unwrap();
        assert_eq!(w.case, DilationCase::SameKindApart);
        assert!(w.word.len() <= 5);
        assert!(w.min_s_order.unwrap() >= 1);

        let w = witness(&sp, (Alpha, 1, 1, "x + 1", 2), (Alpha, 1, 1, "x"), 4).unwrap();
        assert_eq!((w.case, w.word.len()), (DilationCase::SameKindSameRow, 1));

        let w = witness(&sp, (BetaStar, 2, 1, "3*x - 1", 1), (Alpha, 1, 1, "x^2"), 3).unwrap();
        assert_eq!(w.case, DilationCase::MixedApart);

        for (ck, tk) in [(Alpha, BetaStar), (BetaStar, Alpha)] {
            let w = witness(&sp, (ck, 1, 1, "x + 2", 1), (tk, 1, 1, "x"), 9).unwrap();
            assert_eq!(w.case, DilationCase::MixedSameRow);
            assert!(w.word.len() <= 52, "{}", w.word.len());
            assert!(w.min_s_order.unwrap() >= 1);
        }

        assert_eq!(
            witness(&sp, (Alpha, 1, 1, "x", 1), (BetaStar, 1, 1, "x"), 8).unwrap_err(),
            Error::BudgetTooSmall { d: 8, d_min: 9 }
        );
        let one = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        assert!(matches!(
            witness(&one, (Alpha, 1, 1, "x", 1), (BetaStar, 1, 1, "x"), 9),
            Err(Error::RankTooSmall { .. })
        ));
    }

    #[test]
    fn mixed_same_row_with_full_form() {
        let r = loc();
        let g = Matrix::from_rows(&r, vec![vec![r.int(2), r.int(1)], vec![r.int(1), r.int(1)]]).unwrap();
        let sp = AmbientSpace::new(&g, 2).unwrap();
        let w = witness(&sp, (Direction::BetaStar, 2, 1, "x", 2), (Direction::Alpha, 2, 2, "1 - x"), 12).unwrap();
        assert!(w.verified);
    }

    #[test]
    fn conjugate_rewrite_budgets() {
        let r = loc();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let tgt = Target {
            kind: Direction::Alpha,
            k: 1,
            l: 1,
            x: r.var("x").unwrap(),
        };
        let (need, w) = conjugate_rewrite(&Word::new(&sp), &tgt, 1).unwrap();
        assert_eq!((need, w.len()), (1, 1));

        let xi = coord(&sp, Direction::BetaStar, 1, 1, r.parse_scalar("1/s").unwrap());
        let need = required_budget(&xi).unwrap();
        assert_eq!(need, 9);
        let (_, w) = conjugate_rewrite(&xi, &tgt, need).unwrap();
        assert!(w.len() <= 52);

        let xi2 = xi.concat(&coord(&sp, Direction::Alpha, 2, 1, r.parse_scalar("x/s").unwrap())).unwrap();
        let need2 = required_budget(&xi2).unwrap();
        let (_, w2) = conjugate_rewrite(&xi2, &tgt, need2).unwrap();
        assert!(w2.len() <= 52 * 52);
    }

    #[test]
    fn dilate_theta_single_factor() {
        let r = loc();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        let theta = coord(&sp, Direction::Alpha, 1, 1, r.parse_scalar("x*X/s").unwrap());
        let (d, out) = dilate_theta(&theta, "X").unwrap();
        assert_eq!(d, 2);
        let base = out.space().ring().clone();
        assert!(!base.is_localization());
        let zero = base.zero();
        assert!(specialize_word(&out, "X", &zero).unwrap().matrix().unwrap().is_identity());

        let id = Word::new(&sp);
        let (d0, out0) = dilate_theta(&id, "X").unwrap();
        assert_eq!((d0, out0.len()), (1, 0));
    }

    #[test]
    fn dilate_theta_conjugated_shape() {
        let r = loc();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let c = r.parse_scalar("(x + 1)/s").unwrap();
        let theta = Word::product(
            &sp,
            &[
                coord(&sp, Direction::Alpha, 1, 1, &c + &r.parse_scalar("X/s").unwrap()),
                coord(&sp, Direction::BetaStar, 1, 1, r.parse_scalar("x*X").unwrap()),
                coord(&sp, Direction::Alpha, 1, 1, -&c),
            ],
        )
        .unwrap();
        let (d, out) = dilate_theta(&theta, "X").unwrap();
        assert!(d >= 9);
        let zero = out.space().ring().zero();
        assert!(specialize_word(&out, "X", &zero).unwrap().matrix().unwrap().is_identity());
    }

    #[test]
    fn telescope_examples() {
        let r = Ring::parse("QQ[t,X]").unwrap();
        let sp = AmbientSpace::diagonal(&r, &[2], 2).unwrap();
        let x = r.var("X").unwrap();
        let t = r.var("t").unwrap();
        let theta = Word::from_factors(
            &sp,
            vec![
                Factor::new(Generator::coord(Direction::Alpha, 1, 1, &x * &t)),
                Factor::new(Generator::coord(Direction::BetaStar, 1, 1, &x * &x)),
            ],
        );
        let m = word_to_matrix(&theta).unwrap().into_matrix();
        let one = telescope(&sp, &m, "X", &[(r.one(), r.one())]).unwrap();
        assert_eq!(one, vec![m.clone()]);
        let half = r.rational(1, 2).unwrap();
        let two = telescope(&sp, &m, "X", &[(half.clone(), r.one()), (half.clone(), r.one())]).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].mul(&two[1]), m);
        let one_minus_t = &r.one() - &t;
        let three = telescope(
            &sp,
            &m,
            "X",
            &[(t.clone(), t.clone()), (r.int(2), &t * &one_minus_t), (one_minus_t.clone(), one_minus_t.clone())],
        )
        .unwrap();
        assert_eq!(three.iter().fold(Matrix::identity(&r, sp.dim()), |acc, k| acc.mul(k)), m);
        assert!(matches!(
            telescope(&sp, &m, "X", &[(half.clone(), r.one())]),
            Err(Error::PartitionOfUnityFailed(_))
        ));
    }
}
