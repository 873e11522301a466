//! Dense matrices over commutative rings.
//!
//! The determinant uses Berkowitz's division-free algorithm so the same code
//! serves scalar, polynomial and truncated-ring entries.

use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Scalar;

pub type Matrix<T> = Vec<Vec<T>>;

/// Determinant of a square matrix without divisions.
///
/// `one` supplies the ring's unit (and, through `one - one`, its zero), so
/// empty matrices work as well.
pub fn determinant<T>(m: &[Vec<T>], one: &T) -> T
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
    for<'a> &'a T: Neg<Output = T>,
{
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return one.clone();
    }
    let zero = one - one;
    // Characteristic polynomial coefficients of the trailing principal
    // submatrix, highest degree first.
    let mut coeffs = vec![one.clone(), -&m[n - 1][n - 1]];
    for k in (0..n - 1).rev() {
        let size = n - k - 1;
        let row = &m[k][k + 1..];
        let mut x: Vec<T> = (k + 1..n).map(|i| m[i][k].clone()).collect();
        let mut toeplitz = Vec::with_capacity(size + 2);
        toeplitz.push(one.clone());
        toeplitz.push(-&m[k][k]);
        for step in 0..size {
            let dot = row
                .iter()
                .zip(&x)
                .fold(zero.clone(), |acc, (r, xi)| &acc + &(r * xi));
            toeplitz.push(-&dot);
            if step + 1 < size {
                x = (0..size)
                    .map(|i| {
                        (0..size).fold(zero.clone(), |acc, j| {
                            &acc + &(&m[k + 1 + i][k + 1 + j] * &x[j])
                        })
                    })
                    .collect();
            }
        }
        coeffs = (0..size + 2)
            .map(|i| {
                (0..=i.min(size)).fold(zero.clone(), |acc, j| {
                    &acc + &(&toeplitz[i - j] * &coeffs[j])
                })
            })
            .collect();
    }
    let last = coeffs.pop().expect("nonempty");
    if n % 2 == 0 {
        last
    } else {
        -&last
    }
}

pub fn mat_mul<T>(a: &[Vec<T>], b: &[Vec<T>], zero: &T) -> Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(zero.clone(), |acc, k| &acc + &(&row[k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse of a scalar matrix; `None` when singular.
pub fn invert_scalar_matrix(m: &[Vec<Scalar>]) -> Option<Matrix<Scalar>> {
    let n = m.len();
    let field = m.first()?.first()?.field().clone();
    let mut work: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    field.one_scalar()
                } else {
                    field.zero_scalar()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let inv = work[col][col].inverse().ok()?;
        for x in work[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &work[col][c];
                    work[r][c] = &work[r][c] - &delta;
                }
            }
        }
    }
    Some(work.into_iter().map(|r| r[n..].to_vec()).collect())
}
