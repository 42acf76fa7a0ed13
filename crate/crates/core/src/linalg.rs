//! Exact linear algebra over `Q` using fraction-free (Bareiss) elimination.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

/// Dense matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigRational>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged matrix");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Each row scaled to integers (by the lcm of its denominators).
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
            })
            .collect()
    }

    /// Row echelon form by Bareiss elimination; returns the integer matrix and
    /// the pivot columns.
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..self.cols {
                    let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                    debug_assert!((&v % &prev).is_zero());
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Reduced row echelon form over `Q` and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (ech, pivots) = self.bareiss();
        let mut out = Matrix::zeros(pivots.len(), self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            let lead = &ech[r][c];
            for j in 0..self.cols {
                out[(r, j)] = BigRational::new(ech[r][j].clone(), lead.clone());
            }
        }
        // back-substitute to clear entries above each pivot
        for r in (0..pivots.len()).rev() {
            let c = pivots[r];
            for above in 0..r {
                let f = out[(above, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = &out[(r, j)] * &f;
                    out[(above, j)] -= v;
                }
            }
        }
        (out, pivots)
    }

    /// A basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rref[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `M v = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![BigRational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = rref[(r, self.cols)].clone();
        }
        Some(v)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Determinant of a square matrix via Bareiss.
    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let scale = (0..self.rows).fold(BigRational::one(), |acc, i| {
            let l = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            acc * BigRational::from_integer(l)
        });
        let mut m = self.integer_rows();
        let n = self.rows;
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
        BigRational::from_integer(sign * det) / scale
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        let v = m.solve(&[q(3), q(5)]).unwrap();
        assert_eq!(v, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        let s = mat(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(mat(&[&[2, 1], &[1, 3]]).determinant(), q(5));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).determinant(), q(-1));
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).determinant(), q(0));
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(entries in prop::collection::vec(-4i64..5, 12)) {
            let rows: Vec<Vec<BigRational>> = entries.chunks(4).map(|c| c.iter().map(|&x| q(x)).collect()).collect();
            let m = Matrix::from_rows(rows);
            let ker = m.kernel();
            prop_assert_eq!(ker.len() + m.rank(), 4);
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_recovers_rhs(entries in prop::collection::vec(-4i64..5, 9), x in prop::collection::vec(-3i64..4, 3)) {
            let rows: Vec<Vec<BigRational>> = entries.chunks(3).map(|c| c.iter().map(|&v| q(v)).collect()).collect();
            let m = Matrix::from_rows(rows);
            let xv: Vec<BigRational> = x.iter().map(|&v| q(v)).collect();
            let b = m.mul_vec(&xv);
            let sol = m.solve(&b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }
    }
}
