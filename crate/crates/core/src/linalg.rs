//! Exact Gaussian elimination and symmetric LDLᵀ inertia.
//!
//! Everything here is generic over [`Field`], so the same code runs over
//! `BigRational`, `Ratio<i64>` or (for rough experiments) `f64`. The library
//! itself only instantiates it with [`crate::Rational`]: zero tests are exact
//! comparisons, which is only meaningful for exact fields.

use std::fmt::Debug;

use num_traits::{Num, Signed};

use crate::matrix::Matrix;

pub trait Field: Clone + PartialOrd + Num + Signed + Debug {}

impl<T> Field for T where T: Clone + PartialOrd + Num + Signed + Debug {}

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref<T: Field>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                let tmp = a[(r, k)].clone();
                a[(r, k)] = a[(p, k)].clone();
                a[(p, k)] = tmp;
            }
        }
        let inv = T::one() / a[(r, c)].clone();
        for k in 0..cols {
            a[(r, k)] = a[(r, k)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for k in 0..cols {
                    a[(i, k)] = a[(i, k)].clone() - f.clone() * a[(r, k)].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, or `None` if the system is inconsistent.
pub fn solve<T: Field>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows(), b.len());
    let aug = Matrix::from_fn(m.rows(), m.cols() + 1, |r, c| {
        if c < m.cols() {
            m[(r, c)].clone()
        } else {
            b[r].clone()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![T::zero(); m.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(row, m.cols())].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<T: Field>(m: &Matrix<T>) -> Option<Matrix<T>> {
    assert!(m.is_square());
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m[(r, c)].clone()
        } else if c - n == r {
            T::one()
        } else {
            T::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

/// Signature data of a symmetric matrix from an LDLᵀ factorisation with
/// diagonal pivoting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.negative == 0
    }
}

/// Inertia of a symmetric matrix.
///
/// Pivots on the largest remaining diagonal entry. When every remaining
/// diagonal entry is zero but an off-diagonal one is not, the block
/// `[[0, b], [b, 0]]` contributes one positive and one negative eigenvalue;
/// it is eliminated with a 2×2 pivot.
pub fn inertia<T: Field>(m: &Matrix<T>) -> Inertia {
    assert!(m.is_square());
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    while !active.is_empty() {
        let (pos, &p) = active
            .iter()
            .enumerate()
            .max_by(|x, y| {
                let (dx, dy) = (a[(*x.1, *x.1)].abs(), a[(*y.1, *y.1)].abs());
                dx.partial_cmp(&dy).unwrap()
            })
            .unwrap();
        let d = a[(p, p)].clone();
        if !d.is_zero() {
            if d.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            active.remove(pos);
            for &i in &active {
                let f = a[(i, p)].clone() / d.clone();
                for &j in &active {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(p, j)].clone();
                }
            }
            continue;
        }
        // All remaining diagonal entries vanish.
        let off = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
        let Some((i, j)) = off else {
            out.zero += active.len();
            break;
        };
        // Congruence e_i -> e_i + e_j makes the (i,i) entry 2 a_ij != 0.
        for &k in &active {
            a[(i, k)] = a[(i, k)].clone() + a[(j, k)].clone();
        }
        for &k in &active {
            a[(k, i)] = a[(k, i)].clone() + a[(k, j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Ratio};

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_fn(rows.len(), rows[0].len(), |r, c| BigRational::from_integer(rows[r][c].into()))
    }

    #[test]
    fn rank_nullspace_solve() {
        let m = q(&[&[2, -2], &[-2, 2]]);
        assert_eq!(rank(&m), 1);
        let ker = nullspace(&m);
        assert_eq!(ker.len(), 1);
        assert_eq!(m.mul_vec(&ker[0]), vec![BigRational::from_integer(0.into()); 2]);
        let b = vec![BigRational::from_integer(1.into()), BigRational::from_integer(1.into())];
        assert!(solve(&m, &b).is_none());
        let a2 = q(&[&[2, -1], &[-1, 2]]);
        let x = solve(&a2, &b).unwrap();
        assert_eq!(a2.mul_vec(&x), b);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = q(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inverse(&q(&[&[1, 1], &[1, 1]])).is_none());
    }

    #[test]
    fn inertia_cases() {
        let pd = inertia(&q(&[&[2, -1], &[-1, 2]]));
        assert!(pd.is_positive_definite());
        let psd = inertia(&q(&[&[2, -2], &[-2, 2]]));
        assert_eq!(psd, Inertia { positive: 1, negative: 0, zero: 1 });
        let hyp = inertia(&q(&[&[0, 1], &[1, 0]]));
        assert_eq!(hyp, Inertia { positive: 1, negative: 1, zero: 0 });
        let z = inertia(&q(&[&[0, 0], &[0, 0]]));
        assert_eq!(z.zero, 2);
    }

    #[test]
    fn generic_over_small_rationals_and_floats() {
        let m: Matrix<Ratio<i64>> = Matrix::from_rows(&[
            vec![Ratio::from_integer(2), Ratio::from_integer(-3)],
            vec![Ratio::from_integer(-3), Ratio::from_integer(2)],
        ]);
        assert_eq!(inertia(&m), Inertia { positive: 1, negative: 1, zero: 0 });
        let f = Matrix::from_rows(&[vec![4.0f64, 2.0], vec![2.0, 1.0]]);
        assert_eq!(rank(&f), 1);
    }
}
