//! The elementary transformations `E_α`, `E*_β`, their coordinate pieces, the
//! Eichler maps `Σ_{u,v,r}`, Bass transvections, and words over them.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quad_space::{AmbientSpace, Direction, HomMatrix};
use crate::ring::Scalar;

/// A symbolic factor. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `E_α` or `E*_β` for a full hom matrix.
    Full(HomMatrix),
    /// `E_{α_ij}` (or `E*_{β_ij}`) with `w_ij = y·z_j` (or `v_ij = y·z_j`).
    Coord {
        kind: Direction,
        i: usize,
        j: usize,
        y: Scalar,
    },
    Eichler {
        u: Vec<Scalar>,
        v: Vec<Scalar>,
        r: Scalar,
    },
    Bass {
        p0: Vec<Scalar>,
        a0: Scalar,
        w0: Vec<Scalar>,
    },
    /// An explicit orthogonal matrix.
    Matrix(Matrix),
}

impl Generator {
    pub fn coord(kind: Direction, i: usize, j: usize, y: Scalar) -> Generator {
        Generator::Coord { kind, i, j, y }
    }

    /// The generator of the inverse transformation.
    pub fn inverse(&self, space: &AmbientSpace) -> Generator {
        match self {
            Generator::Full(h) => Generator::Full(h.neg()),
            Generator::Coord { kind, i, j, y } => Generator::coord(*kind, *i, *j, -y),
            Generator::Eichler { u, v, r } => Generator::Eichler {
                u: u.clone(),
                v: v.iter().map(|x| -x).collect(),
                r: r.clone(),
            },
            Generator::Bass { p0, a0, w0 } => Generator::Bass {
                p0: p0.clone(),
                a0: a0.clone(),
                w0: w0.iter().map(|x| -x).collect(),
            },
            Generator::Matrix(t) => Generator::Matrix(space.orth_inverse(t)),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Generator::Full(h) => h.is_zero(),
            Generator::Coord { y, .. } => y.is_zero(),
            Generator::Eichler { u, v, .. } => {
                v.iter().all(Scalar::is_zero) || u.iter().all(Scalar::is_zero)
            }
            Generator::Bass { p0, w0, .. } => {
                w0.iter().all(Scalar::is_zero) || p0.iter().all(Scalar::is_zero)
            }
            Generator::Matrix(t) => t.is_identity(),
        }
    }

    /// Applies `f` to every scalar parameter.
    pub fn map_scalars(
        &self,
        target: &AmbientSpace,
        f: &impl Fn(&Scalar) -> Result<Scalar>,
    ) -> Result<Generator> {
        let vec = |v: &[Scalar]| v.iter().map(f).collect::<Result<Vec<_>>>();
        Ok(match self {
            Generator::Full(h) => Generator::Full(HomMatrix::new(
                h.direction,
                h.entries.try_map(target.ring(), f)?,
            )),
            Generator::Coord { kind, i, j, y } => Generator::coord(*kind, *i, *j, f(y)?),
            Generator::Eichler { u, v, r } => Generator::Eichler {
                u: vec(u)?,
                v: vec(v)?,
                r: f(r)?,
            },
            Generator::Bass { p0, a0, w0 } => Generator::Bass {
                p0: vec(p0)?,
                a0: f(a0)?,
                w0: vec(w0)?,
            },
            Generator::Matrix(t) => Generator::Matrix(t.try_map(target.ring(), f)?),
        })
    }

    /// Every scalar parameter (for s-order bookkeeping).
    pub fn scalars(&self) -> Vec<&Scalar> {
        match self {
            Generator::Full(h) => h.entries.entries().collect(),
            Generator::Coord { y, .. } => vec![y],
            Generator::Eichler { u, v, r } => u.iter().chain(v).chain(std::iter::once(r)).collect(),
            Generator::Bass { p0, a0, w0 } => p0.iter().chain(w0).chain(std::iter::once(a0)).collect(),
            Generator::Matrix(t) => t.entries().collect(),
        }
    }

    /// The uncertified matrix of the generator.
    pub fn matrix(&self, space: &AmbientSpace) -> Result<Matrix> {
        match self {
            Generator::Full(h) => {
                space.check_hom(h)?;
                Ok(full_matrix(space, h))
            }
            Generator::Coord { kind, i, j, y } => {
                space.check_indices(*i, *j)?;
                Ok(coord_matrix(space, *kind, *i, *j, y))
            }
            Generator::Eichler { u, v, r } => eichler_matrix(space, u, v, r),
            Generator::Bass { p0, a0, w0 } => eichler_matrix(space, p0, w0, a0),
            Generator::Matrix(t) => {
                if t.rows() != space.dim() || t.cols() != space.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: format!("{0}x{0}", space.dim()),
                        got: format!("{}x{}", t.rows(), t.cols()),
                    });
                }
                Ok(t.clone())
            }
        }
    }

    /// Checks the admissibility conditions of the generator.
    pub fn validate(&self, space: &AmbientSpace) -> Result<()> {
        match self {
            Generator::Eichler { u, v, r } => check_eichler(space, u, v, r),
            Generator::Bass { p0, a0, w0 } => check_eichler(space, p0, w0, a0),
            _ => self.matrix(space).map(|_| ()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Full(h) => write!(f, "E[{}]({})", h.direction, h.entries),
            Generator::Coord { kind, i, j, y } => write!(f, "E[{kind}_{i}{j}]({y})"),
            Generator::Eichler { .. } => write!(f, "Sigma"),
            Generator::Bass { .. } => write!(f, "sigma"),
            Generator::Matrix(_) => write!(f, "T"),
        }
    }
}

/// Parameters of a coordinate generator `E_{α_ij}` / `E*_{β_ij}` (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordSpec {
    pub kind: Direction,
    pub i: usize,
    pub j: usize,
    pub y: Scalar,
}

impl CoordSpec {
    pub fn new(kind: Direction, i: usize, j: usize, y: Scalar) -> CoordSpec {
        CoordSpec { kind, i, j, y }
    }

    pub fn generator(&self) -> Generator {
        Generator::coord(self.kind, self.i, self.j, self.y.clone())
    }

    pub fn word(&self, space: &AmbientSpace) -> Word {
        Word::single(space, self.generator())
    }

    pub fn scaled(&self, c: &Scalar) -> CoordSpec {
        CoordSpec::new(self.kind, self.i, self.j, &self.y * c)
    }

    /// The underlying map `z ↦ ⟨y·z_j, z⟩·x_i` (or `·f_i`): row `i` is `y·φ_{j,·}`.
    pub fn hom(&self, space: &AmbientSpace) -> HomMatrix {
        let mut h = HomMatrix::zero(space, self.kind);
        for c in 0..space.n() {
            h.entries.set(self.i - 1, c, &self.y * space.phi().get(self.j - 1, c));
        }
        h
    }
}

/// Block matrix `[[I, 0, -S], [A, I, -½AS], [0, 0, I]]` (α) or
/// `[[I, -S, 0], [0, I, 0], [B, -½BS, I]]` (β), with `S = φ⁻¹Aᵗ`.
pub fn full_matrix(space: &AmbientSpace, h: &HomMatrix) -> Matrix {
    let star = space.embed_star(h);
    let map = space.embed(h);
    let quad = map.mul(&star).map(Scalar::half);
    Matrix::identity(space.ring(), space.dim())
        .sub(&star)
        .add(&map)
        .sub(&quad)
}

fn coord_entries(
    space: &AmbientSpace,
    kind: Direction,
    i: usize,
    j: usize,
    y: &Scalar,
) -> Vec<(usize, usize, Scalar)> {
    if y.is_zero() {
        return Vec::new();
    }
    let phi = space.phi();
    let (near, far) = match kind {
        Direction::Alpha => (space.x(i), space.f(i)),
        Direction::BetaStar => (space.f(i), space.x(i)),
    };
    let mut out = vec![(space.z(j), far, -y)];
    for c in 1..=space.n() {
        let p = phi.get(j - 1, c - 1);
        if !p.is_zero() {
            out.push((near, space.z(c), y * p));
        }
    }
    let q_w = (&(y * y) * phi.get(j - 1, j - 1)).half();
    if !q_w.is_zero() {
        out.push((near, far, -q_w));
    }
    out
}

/// `E_{α_ij}(z,x,f) = (z − ⟨f,x_i⟩w, x + ⟨w,z⟩x_i − ⟨f,x_i⟩q(w)x_i, f)` with `w = y·z_j`,
/// and its `P*` mirror.
pub fn coord_matrix(space: &AmbientSpace, kind: Direction, i: usize, j: usize, y: &Scalar) -> Matrix {
    let mut t = Matrix::identity(space.ring(), space.dim());
    for (r, c, v) in coord_entries(space, kind, i, j, y) {
        let cur = t.get(r, c) + &v;
        t.set(r, c, cur);
    }
    t
}

fn check_eichler(space: &AmbientSpace, u: &[Scalar], v: &[Scalar], r: &Scalar) -> Result<()> {
    if !space.q_value(u)?.is_zero() {
        return Err(Error::NotIsotropic);
    }
    if !space.bilinear(u, v)?.is_zero() {
        return Err(Error::NotOrthogonalPair);
    }
    if space.q_value(v)? != *r {
        return Err(Error::WrongR);
    }
    Ok(())
}

/// `Σ_{u,v,r}(x) = x + u·B(v,x) − v·B(u,x) − u·r·B(u,x)`.
pub fn eichler_matrix(space: &AmbientSpace, u: &[Scalar], v: &[Scalar], r: &Scalar) -> Result<Matrix> {
    let dim = space.dim();
    for w in [u, v] {
        if w.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {dim}"),
                got: format!("length {}", w.len()),
            });
        }
    }
    let ring = space.ring();
    let row = |w: &[Scalar]| -> Vec<Scalar> {
        // wᵗψ
        (0..dim)
            .map(|c| (0..dim).fold(ring.zero(), |acc, k| &acc + &(&w[k] * space.psi().get(k, c))))
            .collect()
    };
    let (bv, bu) = (row(v), row(u));
    let mut t = Matrix::identity(ring, dim);
    for a in 0..dim {
        for c in 0..dim {
            let term = &(&(&u[a] * &bv[c]) - &(&v[a] * &bu[c])) - &(&(&u[a] * r) * &bu[c]);
            if !term.is_zero() {
                let cur = t.get(a, c) + &term;
                t.set(a, c, cur);
            }
        }
    }
    Ok(t)
}

/// A matrix certified to satisfy `TᵗψT = ψ` for its space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthMatrix {
    space: AmbientSpace,
    matrix: Matrix,
}

impl OrthMatrix {
    pub fn certify(space: &AmbientSpace, matrix: Matrix) -> Result<OrthMatrix> {
        if let Some((row, col)) = space.orthogonality_defect(&matrix)? {
            return Err(Error::CertificationFailure { row, col });
        }
        Ok(OrthMatrix {
            space: space.clone(),
            matrix,
        })
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn inverse(&self) -> OrthMatrix {
        OrthMatrix {
            space: self.space.clone(),
            matrix: self.space.orth_inverse(&self.matrix),
        }
    }
}

pub fn gen_full(space: &AmbientSpace, h: &HomMatrix) -> Result<OrthMatrix> {
    space.check_hom(h)?;
    OrthMatrix::certify(space, full_matrix(space, h))
}

pub fn gen_full_alpha(space: &AmbientSpace, alpha: &HomMatrix) -> Result<OrthMatrix> {
    if alpha.direction != Direction::Alpha {
        return Err(Error::DirectionMismatch);
    }
    gen_full(space, alpha)
}

pub fn gen_full_beta_star(space: &AmbientSpace, beta: &HomMatrix) -> Result<OrthMatrix> {
    if beta.direction != Direction::BetaStar {
        return Err(Error::DirectionMismatch);
    }
    gen_full(space, beta)
}

pub fn gen_coord(space: &AmbientSpace, kind: Direction, i: usize, j: usize, y: &Scalar) -> Result<OrthMatrix> {
    space.check_indices(i, j)?;
    OrthMatrix::certify(space, coord_matrix(space, kind, i, j, y))
}

pub fn gen_eichler(space: &AmbientSpace, u: &[Scalar], v: &[Scalar], r: &Scalar) -> Result<OrthMatrix> {
    check_eichler(space, u, v, r)?;
    OrthMatrix::certify(space, eichler_matrix(space, u, v, r)?)
}

/// `σ_{p0,a0,w0}(x) = x + p0⟨w0,x⟩ − w0⟨p0,x⟩ − p0·a0·⟨p0,x⟩` (with `Λ = 0`, `λ = 1`).
pub fn gen_bass(space: &AmbientSpace, p0: &[Scalar], a0: &Scalar, w0: &[Scalar]) -> Result<OrthMatrix> {
    check_eichler(space, p0, w0, a0)?;
    let dim = space.dim();
    let ring = space.ring();
    let mut t = Matrix::identity(ring, dim);
    for c in 0..dim {
        let e = space.basis(c);
        let w_x = space.bilinear(w0, &e)?;
        let p_x = space.bilinear(p0, &e)?;
        for a in 0..dim {
            let term = &(&(&p0[a] * &w_x) - &(&w0[a] * &p_x)) - &(&(&p0[a] * a0) * &p_x);
            if !term.is_zero() {
                let cur = t.get(a, c) + &term;
                t.set(a, c, cur);
            }
        }
    }
    OrthMatrix::certify(space, t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub gen: Generator,
    /// `1` or `-1`.
    pub exp: i8,
}

impl Factor {
    pub fn new(gen: Generator) -> Factor {
        Factor { gen, exp: 1 }
    }

    pub fn inverse(&self) -> Factor {
        Factor {
            gen: self.gen.clone(),
            exp: -self.exp,
        }
    }

    /// The generator this factor denotes, with the exponent folded in.
    pub fn effective(&self, space: &AmbientSpace) -> Generator {
        if self.exp >= 0 {
            self.gen.clone()
        } else {
            self.gen.inverse(space)
        }
    }

    pub fn matrix(&self, space: &AmbientSpace) -> Result<Matrix> {
        self.effective(space).matrix(space)
    }
}

/// An ordered product of generators in one ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    space: AmbientSpace,
    factors: Vec<Factor>,
}

impl Word {
    pub fn new(space: &AmbientSpace) -> Word {
        Word {
            space: space.clone(),
            factors: Vec::new(),
        }
    }

    pub fn from_factors(space: &AmbientSpace, factors: Vec<Factor>) -> Word {
        Word {
            space: space.clone(),
            factors,
        }
    }

    pub fn single(space: &AmbientSpace, gen: Generator) -> Word {
        Word::from_factors(space, vec![Factor::new(gen)])
    }

    pub fn coord(space: &AmbientSpace, kind: Direction, i: usize, j: usize, y: Scalar) -> Word {
        Word::single(space, Generator::coord(kind, i, j, y))
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, gen: Generator) {
        self.factors.push(Factor::new(gen));
    }

    pub fn push_factor(&mut self, f: Factor) {
        self.factors.push(f);
    }

    /// `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Word::from_factors(&self.space, factors))
    }

    pub fn product(space: &AmbientSpace, words: &[Word]) -> Result<Word> {
        words.iter().try_fold(Word::new(space), |acc, w| acc.concat(w))
    }

    /// Reverses the order and flips every exponent.
    pub fn inverse(&self) -> Word {
        Word::from_factors(&self.space, self.factors.iter().rev().map(Factor::inverse).collect())
    }

    /// The exact product matrix, without certification.
    pub fn matrix(&self) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.space.ring(), self.space.dim());
        for f in &self.factors {
            acc = right_multiply(&self.space, acc, f)?;
        }
        Ok(acc)
    }

    /// Applies `f` to every scalar parameter, moving the word to `target`.
    pub fn map_scalars(
        &self,
        target: &AmbientSpace,
        f: impl Fn(&Scalar) -> Result<Scalar>,
    ) -> Result<Word> {
        let factors = self
            .factors
            .iter()
            .map(|fac| {
                Ok(Factor {
                    gen: fac.gen.map_scalars(target, &f)?,
                    exp: fac.exp,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::from_factors(target, factors))
    }

    /// Moves every parameter into the ring of `target` (see [`Scalar::to_ring`]).
    pub fn to_space(&self, target: &AmbientSpace) -> Result<Word> {
        let ring = target.ring().clone();
        self.map_scalars(target, |x| x.to_ring(&ring))
    }

    /// Folds exponents into the generators and merges adjacent coordinate
    /// generators with equal `(kind, i, j)`; identity factors are dropped.
    pub fn simplify(&self) -> Word {
        let mut out: Vec<Generator> = Vec::new();
        for f in &self.factors {
            let g = f.effective(&self.space);
            if g.is_identity() {
                continue;
            }
            if let (
                Some(Generator::Coord {
                    kind: k0,
                    i: i0,
                    j: j0,
                    y: y0,
                }),
                Generator::Coord { kind, i, j, y },
            ) = (out.last(), &g)
            {
                if (k0, i0, j0) == (kind, i, j) {
                    let sum = y0 + y;
                    out.pop();
                    if !sum.is_zero() {
                        out.push(Generator::coord(*kind, *i, *j, sum));
                    }
                    continue;
                }
            }
            out.push(g);
        }
        Word::from_factors(&self.space, out.into_iter().map(Factor::new).collect())
    }

    /// Smallest s-order over every nonzero scalar parameter (`None` if there are none).
    pub fn min_s_order(&self) -> Option<i64> {
        self.factors
            .iter()
            .flat_map(|f| f.gen.scalars())
            .filter_map(Scalar::s_order)
            .min()
    }
}

/// `acc · M(f)`, exploiting the sparsity of coordinate generators.
fn right_multiply(space: &AmbientSpace, acc: Matrix, f: &Factor) -> Result<Matrix> {
    match f.effective(space) {
        Generator::Coord { kind, i, j, y } => {
            space.check_indices(i, j)?;
            let entries = coord_entries(space, kind, i, j, &y);
            let mut out = acc.clone();
            for r in 0..acc.rows() {
                for (k, c, v) in &entries {
                    let a = acc.get(r, *k);
                    if !a.is_zero() {
                        let cur = out.get(r, *c) + &(a * v);
                        out.set(r, *c, cur);
                    }
                }
            }
            Ok(out)
        }
        g => Ok(acc.mul(&g.matrix(space)?)),
    }
}

/// The certified product of a word.
pub fn word_to_matrix(w: &Word) -> Result<OrthMatrix> {
    OrthMatrix::certify(w.space(), w.matrix()?)
}

pub fn word_inverse(w: &Word) -> Word {
    w.inverse()
}

/// `h · g · h⁻¹`.
pub fn conjugate(g: &Word, h: &Word) -> Result<Word> {
    h.concat(g)?.concat(&h.inverse())
}

/// `g · h · g⁻¹ · h⁻¹`.
pub fn commutator(g: &Word, h: &Word) -> Result<Word> {
    g.concat(h)?.concat(&g.inverse())?.concat(&h.inverse())
}
