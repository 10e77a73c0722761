//! Quadratic spaces `Q ⊥ H(P)` with free `Q` (rank n) and `P` (rank m).
//!
//! Coordinates are ordered `z_1..z_n, x_1..x_m, f_1..f_m`. The Gram matrix `φ`
//! stores the bilinear form `B_q`, so `q(z) = ½ zᵗφz`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSpace {
    gram: Matrix,
    gram_inv: Matrix,
}

/// Builds the space of a symmetric Gram matrix with unit determinant.
pub fn make_space(gram: &Matrix) -> Result<QuadraticSpace> {
    if !gram.is_square() || gram.rows() == 0 {
        return Err(Error::DimensionMismatch {
            expected: "non-empty square gram matrix".into(),
            got: format!("{}x{}", gram.rows(), gram.cols()),
        });
    }
    if gram.transpose() != *gram {
        return Err(Error::NotSymmetric);
    }
    let det = gram.determinant();
    let det_inv = det.inv().map_err(|_| Error::SingularForm(det.to_string()))?;
    Ok(QuadraticSpace {
        gram: gram.clone(),
        gram_inv: gram.adjugate().scale(&det_inv),
    })
}

impl QuadraticSpace {
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    pub fn ring(&self) -> &Ring {
        self.gram.ring()
    }

    pub fn q_value(&self, z: &[Scalar]) -> Scalar {
        let n = self.rank();
        let mut acc = self.ring().zero();
        for a in 0..n {
            for b in 0..n {
                acc = &acc + &(&(&z[a] * self.gram.get(a, b)) * &z[b]);
            }
        }
        acc.half()
    }
}

/// Which hyperbolic half a map `Q → P` or `Q → P*` lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// `α ∈ Hom(Q, P)`, giving `E_α`.
    #[serde(rename = "alpha")]
    Alpha,
    /// `β ∈ Hom(Q, P*)`, giving `E*_β`.
    #[serde(rename = "beta*", alias = "beta_star")]
    BetaStar,
}

impl Direction {
    pub fn other(self) -> Direction {
        match self {
            Direction::Alpha => Direction::BetaStar,
            Direction::BetaStar => Direction::Alpha,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Alpha => "alpha",
            Direction::BetaStar => "beta*",
        })
    }
}

/// An m×n matrix of a map `Q → P` or `Q → P*` in the bases `z_j` and `x_i` / `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix {
    pub direction: Direction,
    pub entries: Matrix,
}

impl HomMatrix {
    pub fn new(direction: Direction, entries: Matrix) -> HomMatrix {
        HomMatrix { direction, entries }
    }

    pub fn zero(space: &AmbientSpace, direction: Direction) -> HomMatrix {
        HomMatrix::new(direction, Matrix::zeros(space.ring(), space.m(), space.n()))
    }

    pub fn scale(&self, c: &Scalar) -> HomMatrix {
        HomMatrix::new(self.direction, self.entries.scale(c))
    }

    pub fn half(&self) -> HomMatrix {
        HomMatrix::new(self.direction, self.entries.map(Scalar::half))
    }

    pub fn neg(&self) -> HomMatrix {
        HomMatrix::new(self.direction, self.entries.neg())
    }

    pub fn add(&self, other: &HomMatrix) -> Result<HomMatrix> {
        if self.direction != other.direction {
            return Err(Error::DirectionMismatch);
        }
        Ok(HomMatrix::new(self.direction, self.entries.add(&other.entries)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    /// The piece `η_i∘p_i∘h∘η_j∘p_j` (1-based indices): only entry `(i, j)` survives.
    pub fn piece(&self, i: usize, j: usize) -> HomMatrix {
        let mut e = Matrix::zeros(self.entries.ring(), self.entries.rows(), self.entries.cols());
        e.set(i - 1, j - 1, self.entries.get(i - 1, j - 1).clone());
        HomMatrix::new(self.direction, e)
    }

    /// The row `η_i∘p_i∘h`.
    pub fn row_piece(&self, i: usize) -> HomMatrix {
        let mut e = Matrix::zeros(self.entries.ring(), self.entries.rows(), self.entries.cols());
        for c in 0..self.entries.cols() {
            e.set(i - 1, c, self.entries.get(i - 1, c).clone());
        }
        HomMatrix::new(self.direction, e)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct AmbientData {
    q: QuadraticSpace,
    m: usize,
    psi: Matrix,
    psi_inv: Matrix,
}

/// `Q ⊥ H(P)` with its block Gram matrix `ψ = diag(φ, [[0, I], [I, 0]])`.
#[derive(Clone, Debug)]
pub struct AmbientSpace(Arc<AmbientData>);

impl PartialEq for AmbientSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for AmbientSpace {}

pub fn ambient(q: &QuadraticSpace, m: usize) -> Result<AmbientSpace> {
    if m == 0 {
        return Err(Error::RankTooSmall { need: 1, got: 0 });
    }
    let ring = q.ring();
    let n = q.rank();
    let dim = n + 2 * m;
    let mut psi = Matrix::zeros(ring, dim, dim);
    let mut psi_inv = Matrix::zeros(ring, dim, dim);
    psi.set_block(0, 0, q.gram());
    psi_inv.set_block(0, 0, q.gram_inv());
    for i in 0..m {
        for (a, b) in [(n + i, n + m + i), (n + m + i, n + i)] {
            psi.set(a, b, ring.one());
            psi_inv.set(a, b, ring.one());
        }
    }
    Ok(AmbientSpace(Arc::new(AmbientData {
        q: q.clone(),
        m,
        psi,
        psi_inv,
    })))
}

impl AmbientSpace {
    /// Convenience constructor from a Gram matrix and hyperbolic rank.
    pub fn new(gram: &Matrix, m: usize) -> Result<AmbientSpace> {
        ambient(&make_space(gram)?, m)
    }

    /// Diagonal `φ` given by integer entries.
    pub fn diagonal(ring: &Ring, diag: &[i64], m: usize) -> Result<AmbientSpace> {
        let mut g = Matrix::zeros(ring, diag.len(), diag.len());
        for (k, &d) in diag.iter().enumerate() {
            g.set(k, k, ring.int(d));
        }
        AmbientSpace::new(&g, m)
    }

    pub fn q_part(&self) -> &QuadraticSpace {
        &self.0.q
    }

    pub fn n(&self) -> usize {
        self.0.q.rank()
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn dim(&self) -> usize {
        self.n() + 2 * self.m()
    }

    pub fn ring(&self) -> &Ring {
        self.0.q.ring()
    }

    pub fn phi(&self) -> &Matrix {
        self.0.q.gram()
    }

    pub fn phi_inv(&self) -> &Matrix {
        self.0.q.gram_inv()
    }

    pub fn psi(&self) -> &Matrix {
        &self.0.psi
    }

    pub fn psi_inv(&self) -> &Matrix {
        &self.0.psi_inv
    }

    /// Ambient index of `z_j` (1-based `j`).
    pub fn z(&self, j: usize) -> usize {
        j - 1
    }

    /// Ambient index of `x_i` (1-based `i`).
    pub fn x(&self, i: usize) -> usize {
        self.n() + i - 1
    }

    /// Ambient index of `f_i` (1-based `i`).
    pub fn f(&self, i: usize) -> usize {
        self.n() + self.m() + i - 1
    }

    pub fn basis(&self, idx: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring().zero(); self.dim()];
        v[idx] = self.ring().one();
        v
    }

    pub fn check_indices(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i > self.m() {
            return Err(Error::IndexOutOfRange(format!("i = {i} not in 1..={}", self.m())));
        }
        if j == 0 || j > self.n() {
            return Err(Error::IndexOutOfRange(format!("j = {j} not in 1..={}", self.n())));
        }
        Ok(())
    }

    fn check_vector(&self, u: &[Scalar]) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.dim()),
                got: format!("length {}", u.len()),
            });
        }
        Ok(())
    }

    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        let psi = self.psi();
        let mut acc = self.ring().zero();
        for a in 0..self.dim() {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..self.dim() {
                let p = psi.get(a, b);
                if !p.is_zero() && !v[b].is_zero() {
                    acc = &acc + &(&(&u[a] * p) * &v[b]);
                }
            }
        }
        Ok(acc)
    }

    pub fn q_value(&self, u: &[Scalar]) -> Result<Scalar> {
        Ok(self.bilinear(u, u)?.half())
    }

    /// `α* = φ⁻¹Aᵗ` (n×m), characterized by `(f∘α)(z) = B_q(α*(f), z)`.
    pub fn dual_star(&self, h: &HomMatrix) -> Matrix {
        self.phi_inv().mul(&h.entries.transpose())
    }

    pub fn check_hom(&self, h: &HomMatrix) -> Result<()> {
        if h.entries.rows() != self.m() || h.entries.cols() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{} hom matrix", self.m(), self.n()),
                got: format!("{}x{}", h.entries.rows(), h.entries.cols()),
            });
        }
        Ok(())
    }

    /// `h` as an endomorphism of `Q ⊕ P ⊕ P*` (zero off its `Q → P` or `Q → P*` block).
    pub fn embed(&self, h: &HomMatrix) -> Matrix {
        let mut out = Matrix::zeros(self.ring(), self.dim(), self.dim());
        let row0 = match h.direction {
            Direction::Alpha => self.x(1),
            Direction::BetaStar => self.f(1),
        };
        out.set_block(row0, 0, &h.entries);
        out
    }

    /// `h*` as an endomorphism: `α*` maps `P* → Q`, `β*` maps `P → Q`.
    pub fn embed_star(&self, h: &HomMatrix) -> Matrix {
        self.embed_star_block(h.direction, &self.dual_star(h))
    }

    /// Embeds an explicit n×m star block (used for the displayed `α*_ij`).
    pub fn embed_star_block(&self, direction: Direction, block: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.ring(), self.dim(), self.dim());
        let col0 = match direction {
            Direction::Alpha => self.f(1),
            Direction::BetaStar => self.x(1),
        };
        out.set_block(0, col0, block);
        out
    }

    /// Extracts the `Q → P` (or `Q → P*`) block of an endomorphism.
    pub fn extract_hom(&self, direction: Direction, t: &Matrix) -> HomMatrix {
        let row0 = match direction {
            Direction::Alpha => self.x(1),
            Direction::BetaStar => self.f(1),
        };
        HomMatrix::new(direction, t.block(row0, 0, self.m(), self.n()))
    }

    /// The displayed `α*_ij = η_j∘p_j∘α*∘η_i∘p_i`: only entry `(j, i)` of `α*` survives.
    pub fn star_piece(&self, h: &HomMatrix, i: usize, j: usize) -> Matrix {
        let full = self.dual_star(h);
        let mut out = Matrix::zeros(self.ring(), self.n(), self.m());
        out.set(j - 1, i - 1, full.get(j - 1, i - 1).clone());
        out
    }

    /// Whether the displayed `α*_ij` agrees with `(α_ij)*` for every `(i, j)`.
    pub fn star_pieces_coincide(&self, h: &HomMatrix) -> bool {
        (1..=self.m()).all(|i| {
            (1..=self.n()).all(|j| self.star_piece(h, i, j) == self.dual_star(&h.piece(i, j)))
        })
    }

    /// `TᵗψT = ψ` and `T` invertible (the first implies `det(T)² = 1`).
    pub fn is_orthogonal(&self, t: &Matrix) -> Result<bool> {
        Ok(self.orthogonality_defect(t)?.is_none())
    }

    /// First entry where `TᵗψT` differs from `ψ`.
    pub fn orthogonality_defect(&self, t: &Matrix) -> Result<Option<(usize, usize)>> {
        if t.rows() != self.dim() || t.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("{0}x{0} matrix", self.dim()),
                got: format!("{}x{}", t.rows(), t.cols()),
            });
        }
        let lhs = t.transpose().mul(&self.psi().mul(t));
        Ok(lhs.first_difference(self.psi()))
    }

    /// Inverse of an orthogonal matrix, `ψ⁻¹Tᵗψ`.
    pub fn orth_inverse(&self, t: &Matrix) -> Matrix {
        self.psi_inv().mul(&t.transpose().mul(self.psi()))
    }

    /// The same space with `φ` mapped into another ring.
    pub fn to_ring(&self, target: &Ring) -> Result<AmbientSpace> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        AmbientSpace::new(&self.phi().to_ring(target)?, self.m())
    }

    pub fn summary(&self) -> String {
        format!("{} n={} m={} phi={}", self.ring(), self.n(), self.m(), self.phi())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    fn int_matrix(r: &Ring, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(r, rows.iter().map(|row| row.iter().map(|&v| r.int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn make_space_examples() {
        let r = q();
        let s = make_space(&int_matrix(&r, &[&[2]])).unwrap();
        assert_eq!(s.q_value(&[r.int(3)]), r.int(9));
        assert!(make_space(&int_matrix(&r, &[&[2, 0], &[0, -2]])).is_ok());
        assert!(make_space(&int_matrix(&r, &[&[0, 1], &[1, 0]])).is_ok());
        assert_eq!(make_space(&int_matrix(&r, &[&[1, 2], &[0, 1]])), Err(Error::NotSymmetric));
        assert!(matches!(
            make_space(&int_matrix(&r, &[&[1, 2], &[2, 4]])),
            Err(Error::SingularForm(_))
        ));
        let poly = Ring::parse("QQ[t]").unwrap();
        let t = poly.var("t").unwrap();
        let g = Matrix::from_rows(&poly, vec![vec![t]]).unwrap();
        assert!(matches!(make_space(&g), Err(Error::SingularForm(_))));
    }

    #[test]
    fn psi_layout() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        assert_eq!(*sp.psi(), int_matrix(&r, &[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        let sp2 = AmbientSpace::new(&int_matrix(&r, &[&[2, 1], &[1, 3]]), 2).unwrap();
        let expect = int_matrix(
            &r,
            &[
                &[2, 1, 0, 0, 0, 0],
                &[1, 3, 0, 0, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 0, 1],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
            ],
        );
        assert_eq!(*sp2.psi(), expect);
        assert_eq!(sp2.psi().determinant(), sp2.phi().determinant());
        assert!(sp2.psi().mul(sp2.psi_inv()).is_identity());
    }

    #[test]
    fn bilinear_examples() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        let (z, x, f) = (sp.basis(sp.z(1)), sp.basis(sp.x(1)), sp.basis(sp.f(1)));
        assert_eq!(sp.bilinear(&x, &f).unwrap(), r.one());
        assert_eq!(sp.q_value(&x).unwrap(), r.zero());
        assert_eq!(sp.q_value(&f).unwrap(), r.zero());
        assert_eq!(sp.q_value(&z).unwrap(), r.one());
        assert!(matches!(sp.bilinear(&x, &[r.one()]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dual_star_examples() {
        let r = Ring::parse("QQ[a]").unwrap();
        let a = r.var("a").unwrap();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        let h = HomMatrix::new(Direction::Alpha, Matrix::from_rows(&r, vec![vec![a.clone()]]).unwrap());
        assert_eq!(*sp.dual_star(&h).get(0, 0), a.half());
        assert!(sp.dual_star(&HomMatrix::zero(&sp, Direction::Alpha)).is_zero());
    }

    #[test]
    fn swap_is_not_orthogonal() {
        let r = q();
        let sp = AmbientSpace::diagonal(&r, &[2], 1).unwrap();
        assert!(sp.is_orthogonal(&Matrix::identity(&r, 3)).unwrap());
        let swap = int_matrix(&r, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(!sp.is_orthogonal(&swap).unwrap());
    }

    #[test]
    fn star_piece_coincidence_tracks_diagonality() {
        let r = q();
        let h = HomMatrix::new(Direction::Alpha, int_matrix(&r, &[&[1, 2], &[3, 4]]));
        let diag = AmbientSpace::diagonal(&r, &[2, 6], 2).unwrap();
        assert!(diag.star_pieces_coincide(&h));
        let full = AmbientSpace::new(&int_matrix(&r, &[&[2, 1], &[1, 2]]), 2).unwrap();
        assert!(!full.star_pieces_coincide(&h));
    }
}
