//! Dense exact rational matrices.

mod ldlt;
mod smith;
mod tensor;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::{self, Rat};

pub use ldlt::{ldlt, psd_rank, Ldlt};
pub use smith::{smith_invariants, smith_normal_form};
pub use tensor::SymTensor4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NonSymmetric { i: usize, j: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({i}, {j}) is not an integer")]
    NonInteger { i: usize, j: usize },
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
}

/// Row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape("entry count differs from rows*cols"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows"));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for literals; panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.as_ref().iter().map(|&x| rat::int(x)).collect()).collect(),
        )
        .expect("rectangular literal")
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
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

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn require_square(&self) -> Result<usize, LinalgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// First off-diagonal pair `(i, j)` with `M[i][j] != M[j][i]`.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != self[(j, i)])
    }

    pub fn require_symmetric(&self) -> Result<usize, LinalgError> {
        let n = self.require_square()?;
        match self.asymmetry() {
            Some((i, j)) => Err(LinalgError::NonSymmetric { i, j }),
            None => Ok(n),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape("inner dimensions differ"));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[Rat], v: &[Rat]) -> Rat {
        u.iter().zip(self.mul_vec(v)).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn principal(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..k).collect();
        self.principal(&idx)
    }

    /// `Bᵀ M B` for a change of basis given as integer columns.
    pub fn congruence(&self, b: &Self) -> Result<Self, LinalgError> {
        b.transpose().mul(self)?.mul(b)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(rat::is_int)
    }

    /// Entries as integers, or the first offending position.
    pub fn to_integer(&self) -> Result<Vec<Vec<BigInt>>, LinalgError> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let x = &self[(i, j)];
                if !rat::is_int(x) {
                    return Err(LinalgError::NonInteger { i, j });
                }
                row.push(x.numer().clone());
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Rat, LinalgError> {
        let n = self.require_square()?;
        // Clear denominators row by row, then divide them back out.
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let l = rat::lcm_denoms(self.row(i));
            a.push(self.row(i).iter().map(|x| (x * rat::big(&l)).to_integer()).collect());
            scale *= l;
        }
        Ok(Rat::new(bareiss_det(a), scale))
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(LinalgError::Singular)?;
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            let piv = a[(col, col)].recip();
            a.scale_row(col, &piv);
            inv.scale_row(col, &piv);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                a.sub_row_multiple(r, col, &f);
                inv.sub_row_multiple(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Rat) {
        for j in 0..self.cols {
            self[(r, j)] *= f;
        }
    }

    /// row `r` -= f * row `src`
    fn sub_row_multiple(&mut self, r: usize, src: usize, f: &Rat) {
        for j in 0..self.cols {
            let t = f * &self[(src, j)];
            self[(r, j)] -= t;
        }
    }
}

pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
    if sign.is_negative() {
        -d
    } else {
        d
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn bordered_indefinite() -> RatMatrix {
        RatMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 4), frac(2, 1), frac(2, 1)],
            vec![frac(1, 4), frac(1, 2), frac(2, 1), frac(2, 1)],
            vec![frac(2, 1), frac(2, 1), frac(14, 1), frac(7, 1)],
            vec![frac(2, 1), frac(2, 1), frac(7, 1), frac(14, 1)],
        ])
        .unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(RatMatrix::identity(3).det().unwrap(), rat::int(1));
        assert_eq!(RatMatrix::from_i64(&[[2, -1], [-1, 2]]).det().unwrap(), rat::int(3));
        assert_eq!(bordered_indefinite().det().unwrap(), frac(-7, 16));
        assert_eq!(RatMatrix::from_i64(&[[0, 1], [1, 0]]).det().unwrap(), rat::int(-1));
        assert_eq!(RatMatrix::from_i64(&[[1, 2], [2, 4]]).det().unwrap(), rat::int(0));
        assert!(RatMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn inverses() {
        let a2 = RatMatrix::from_i64(&[[2, -1], [-1, 2]]);
        let inv = a2.inverse().unwrap();
        assert_eq!(
            inv,
            RatMatrix::from_rows(vec![vec![frac(2, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 3)]])
                .unwrap()
        );
        assert_eq!(a2.mul(&inv).unwrap(), RatMatrix::identity(2));
        let d = RatMatrix::from_i64(&[[2, 0], [0, 2]]).inverse().unwrap();
        assert_eq!(d, RatMatrix::diagonal(&[frac(1, 2), frac(1, 2)]));
        assert_eq!(
            RatMatrix::from_i64(&[[1, 2], [2, 4]]).inverse(),
            Err(LinalgError::Singular)
        );
    }

    #[test]
    fn symmetry_checks() {
        let m = RatMatrix::from_i64(&[[1, 2], [3, 1]]);
        assert_eq!(m.require_symmetric(), Err(LinalgError::NonSymmetric { i: 0, j: 1 }));
        assert_eq!(bordered_indefinite().require_symmetric(), Ok(4));
    }
}
