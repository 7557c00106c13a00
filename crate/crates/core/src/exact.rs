//! Small dense exact rational linear algebra used by the exact modules:
//! reduced row echelon form, linear solves, nullspaces, ranks, determinants.

use num_traits::{One, Signed, Zero};

use crate::Q;

/// Dense rational matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Q>>,
}

impl QMat {
    pub fn new(data: Vec<Vec<Q>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        debug_assert!(data.iter().all(|r| r.len() == cols));
        QMat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::novikov::qi(x)).collect())
                .collect(),
        )
    }

    /// In-place Gauss–Jordan elimination; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            // Partial pivoting by largest absolute value keeps entries tame.
            let piv = (r..self.rows)
                .filter(|&i| !self.data[i][c].is_zero())
                .max_by(|&i, &j| self.data[i][c].abs().cmp(&self.data[j][c].abs()));
            let Some(piv) = piv else { continue };
            self.data.swap(r, piv);
            let inv = self.data[r][c].clone().recip();
            for x in &mut self.data[r] {
                *x = x.clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = self.data[i][c].clone();
                    for c2 in c..self.cols {
                        let delta = f.clone() * self.data[r][c2].clone();
                        self.data[i][c2] = self.data[i][c2].clone() - delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.data[r][f].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Q::zero();
            };
            if piv != c {
                m.swap(c, piv);
                det = -det;
            }
            det *= m[c][c].clone();
            let inv = m[c][c].clone().recip();
            for i in (c + 1)..n {
                if !m[i][c].is_zero() {
                    let f = m[i][c].clone() * inv.clone();
                    for c2 in c..n {
                        let delta = f.clone() * m[c][c2].clone();
                        m[i][c2] = m[i][c2].clone() - delta;
                    }
                }
            }
        }
        det
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Q::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

/// Solution of `A x = b`: one particular solution plus a nullspace basis.
pub struct AffineSolution {
    pub particular: Vec<Q>,
    pub nullspace: Vec<Vec<Q>>,
}

/// Solve `A x = b` exactly; `None` when inconsistent.
pub fn solve(a: &QMat, b: &[Q]) -> Option<AffineSolution> {
    assert_eq!(a.rows, b.len());
    let mut aug = QMat::new(
        a.data
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                r.push(bi.clone());
                r
            })
            .collect(),
    );
    let pivots = aug.rref();
    if pivots.contains(&a.cols) {
        return None; // pivot in the constant column
    }
    let mut particular = vec![Q::zero(); a.cols];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = aug.data[r][a.cols].clone();
    }
    Some(AffineSolution {
        particular,
        nullspace: a.nullspace(),
    })
}

/// Dot product of integer and rational vectors.
pub fn dot_iq(a: &[i64], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .fold(Q::zero(), |acc, (&x, y)| acc + crate::novikov::qi(x) * y.clone())
}

/// Integer dot product.
pub fn dot_ii(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{q, qi};

    #[test]
    fn solve_unique() {
        // x + y = 3, x - y = 1  =>  (2, 1)
        let a = QMat::from_int_rows(&[vec![1, 1], vec![1, -1]]);
        let s = solve(&a, &[qi(3), qi(1)]).unwrap();
        assert_eq!(s.particular, vec![qi(2), qi(1)]);
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn solve_inconsistent() {
        let a = QMat::from_int_rows(&[vec![1, 1], vec![2, 2]]);
        assert!(solve(&a, &[qi(1), qi(3)]).is_none());
    }

    #[test]
    fn nullspace_and_rank() {
        let a = QMat::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn det_examples() {
        let a = QMat::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.det(), qi(-1));
        let b = QMat::new(vec![vec![q(1, 2), qi(0)], vec![qi(0), q(2, 3)]]);
        assert_eq!(b.det(), q(1, 3));
    }
}
