//! Dense matrices over a [`Ring`].

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: format!("{ncols} columns"),
                    got: format!("{} columns", row.len()),
                });
            }
            for x in row {
                x.same_ring(&ring.zero())?;
                data.push(x);
            }
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Parses a row-major grid of scalar strings.
    pub fn parse(ring: &Ring, rows: &[Vec<String>]) -> Result<Matrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|t| ring.parse_scalar(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(ring, parsed)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.map(|x| x * c)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, ring: &Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Matrix> {
        Ok(Matrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn to_ring(&self, target: &Ring) -> Result<Matrix> {
        self.try_map(target, |x| x.to_ring(target))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// First entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| self.get(r, c) != other.get(r, c))
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    /// Coefficients `[1, c_1, .., c_n]` of `det(t I - A)` by Berkowitz's division-free algorithm.
    pub fn char_poly(&self) -> Vec<Scalar> {
        assert!(self.is_square());
        let n = self.rows;
        let one = self.ring.one();
        let mut v = vec![one.clone()];
        for r in 0..n {
            // toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
            let mut t = Vec::with_capacity(r + 2);
            t.push(one.clone());
            t.push(-self.get(r, r));
            let mut col: Vec<Scalar> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let dot = (0..r).fold(self.ring.zero(), |acc, j| &acc + &(self.get(r, j) * &col[j]));
                t.push(-dot);
                col = (0..r)
                    .map(|i| (0..r).fold(self.ring.zero(), |acc, j| &acc + &(self.get(i, j) * &col[j])))
                    .collect();
            }
            let mut next = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut acc = self.ring.zero();
                for (j, vj) in v.iter().enumerate().take(i.min(r) + 1) {
                    acc = &acc + &(&t[i - j] * vj);
                }
                next.push(acc);
            }
            v = next;
        }
        v
    }

    pub fn determinant(&self) -> Scalar {
        let n = self.rows;
        let c = self.char_poly();
        if n % 2 == 0 {
            c[n].clone()
        } else {
            -&c[n]
        }
    }

    /// Adjugate via Cayley–Hamilton, so no division is needed.
    pub fn adjugate(&self) -> Matrix {
        let n = self.rows;
        if n == 0 {
            return self.clone();
        }
        let c = self.char_poly();
        // horner: B = A^{n-1} + c_1 A^{n-2} + ... + c_{n-1} I
        let id = Matrix::identity(&self.ring, n);
        let mut b = id.clone();
        for ck in c.iter().take(n).skip(1) {
            b = self.mul(&b).add(&id.scale(ck));
        }
        if n % 2 == 1 {
            b
        } else {
            b.neg()
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        let det_inv = self.determinant().inv()?;
        Ok(self.adjugate().scale(&det_inv))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
