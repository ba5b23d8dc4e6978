//! Dense matrices over any [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<T: Field> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    ctx: T::Context,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, ctx: &T::Context) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(ctx); rows * cols],
            ctx: ctx.clone(),
        }
    }

    pub fn identity(n: usize, ctx: &T::Context) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m[(i, i)] = T::one(ctx);
        }
        m
    }

    pub fn from_fn<F>(rows: usize, cols: usize, ctx: &T::Context, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> T,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            ctx: ctx.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> &T::Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols, &self.ctx);
        for i in 0..self.rows {
            for m in 0..self.cols {
                let a = &self[(i, m)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(m, j)];
                    if !b.is_zero() {
                        let acc = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = acc;
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m[(rank, col)].inv().expect("pivot is nonzero");
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() * inv.clone();
                for c in col..m.cols {
                    let v = m[(r, c)].clone() - factor.clone() * m[(rank, c)].clone();
                    m[(r, c)] = v;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T: Field> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Field> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<_> = (0..self.cols).map(|j| &self[(i, j)]).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn rank_over_small_prime_depends_on_characteristic() {
        // [[1,2],[2,4+3]] has determinant 3: singular mod 3, regular mod 5
        let build = |p| {
            let f = PrimeField::new(p).unwrap();
            let vals = [[1, 2], [2, 7]];
            Matrix::from_fn(2, 2, &f, |i, j| f.from_i64(vals[i][j]))
        };
        assert_eq!(build(3).rank(), 1);
        assert_eq!(build(5).rank(), 2);
    }

    #[test]
    fn rational_rank_and_product() {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let a = Matrix::from_fn(3, 3, &(), |i, j| q((i * 3 + j) as i64));
        assert_eq!(a.rank(), 2);
        let id = Matrix::identity(3, &());
        assert_eq!(a.mul(&id), a);
    }

    #[test]
    fn float_rank() {
        let a = Matrix::<f64>::from_fn(2, 3, &(), |i, j| ((i + 1) * (j + 1)) as f64);
        assert_eq!(a.rank(), 1);
    }
}
