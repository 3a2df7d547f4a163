//! Dense exact-rational matrices: Gaussian elimination, linear solves, and
//! the LDL^T factorization used to check positive semidefiniteness without
//! floating point.

use num_traits::{Signed, Zero};

use crate::algebra::Scalar;

/// Row-major dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn matvec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    if !self.get(i, j).is_zero() && !v[j].is_zero() {
                        acc += self.get(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `self * other`.
    pub fn matmul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zeros(self.rows, other.cols);
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
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            // Partial pivot: largest absolute value keeps entries tame.
            let pivot_row = (row..self.rows)
                .filter(|&r| !self.get(r, col).is_zero())
                .max_by(|&a, &b| self.get(a, col).abs().cmp(&self.get(b, col).abs()));
            let Some(p) = pivot_row else { continue };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = {
                let v = self.get(row, col).clone();
                Scalar::new(v.denom().clone(), v.numer().clone())
            };
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = self.get(r, j) - &factor * self.get(row, j);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// LDL^T factorization of a symmetric matrix, refusing any certificate of
    /// indefiniteness: returns unit-lower `L` and diagonal `d` with
    /// `self = L diag(d) L^T` and all `d >= 0`, or `None` if the matrix is
    /// not positive semidefinite.
    pub fn ldlt_psd(&self) -> Option<(RatMat, Vec<Scalar>)> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        for i in 0..n {
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return None;
                }
            }
        }
        let mut l = RatMat::zeros(n, n);
        for i in 0..n {
            l.set(i, i, Scalar::from_integer(1.into()));
        }
        let mut d = vec![Scalar::zero(); n];
        for j in 0..n {
            let mut dj = self.get(j, j).clone();
            for k in 0..j {
                dj -= l.get(j, k) * &d[k] * l.get(j, k);
            }
            if dj.is_negative() {
                return None;
            }
            d[j] = dj;
            for i in (j + 1)..n {
                let mut v = self.get(i, j).clone();
                for k in 0..j {
                    v -= l.get(i, k) * &d[k] * l.get(j, k);
                }
                if d[j].is_zero() {
                    // A PSD matrix with a zero pivot must have a zero
                    // remainder column; otherwise some 2x2 minor is negative.
                    if !v.is_zero() {
                        return None;
                    }
                    l.set(i, j, Scalar::zero());
                } else {
                    l.set(i, j, v / &d[j]);
                }
            }
        }
        Some((l, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    #[test]
    fn rref_and_rank() {
        let mut m = RatMat::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RatMat::from_rows(vec![vec![q(2), q(0)], vec![q(0), q(4)]]);
        let x = m.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(x, vec![qr(1, 2), qr(1, 2)]);

        let sing = RatMat::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert!(sing.solve(&[q(1), q(3)]).is_none());
        assert!(sing.solve(&[q(1), q(2)]).is_some());
    }

    #[test]
    fn ldlt_accepts_psd_rejects_indefinite() {
        let psd = RatMat::from_rows(vec![vec![q(4), q(2)], vec![q(2), q(2)]]);
        let (l, d) = psd.ldlt_psd().unwrap();
        assert_eq!(d, vec![q(4), q(1)]);
        // Re-expand L D L^T and compare.
        let mut ld = RatMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Scalar::zero();
                for k in 0..2 {
                    acc += l.get(i, k) * &d[k] * l.get(j, k);
                }
                ld.set(i, j, acc);
            }
        }
        assert_eq!(ld, psd);

        let indef = RatMat::from_rows(vec![vec![q(1), q(3)], vec![q(3), q(1)]]);
        assert!(indef.ldlt_psd().is_none());
        let neg = RatMat::from_rows(vec![vec![q(-1)]]);
        assert!(neg.ldlt_psd().is_none());
    }

    #[test]
    fn ldlt_zero_pivot_needs_zero_column() {
        let ok = RatMat::from_rows(vec![vec![q(0), q(0)], vec![q(0), q(5)]]);
        let (_, d) = ok.ldlt_psd().unwrap();
        assert_eq!(d, vec![q(0), q(5)]);

        let bad = RatMat::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(5)]]);
        assert!(bad.ldlt_psd().is_none());
    }
}
