//! Dense Gaussian elimination over a coefficient field.

use crate::error::{Error, Result};
use crate::poly::Coeff;

pub type Matrix<T> = Vec<Vec<T>>;

/// Solve a symmetric positive definite system without pivoting. Every pivot
/// is a ratio of consecutive leading principal minors, so a nonpositive
/// pivot proves the matrix is not positive definite.
pub fn solve_spd<T: Coeff>(mut a: Matrix<T>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    for k in 0..n {
        let piv = a[k][k].clone();
        if !(piv > T::zero()) {
            return Err(Error::NotPositiveDefinite(k + 1));
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / piv.clone();
            for j in k..n {
                let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                a[i][j] = v;
            }
            let v = b[i].clone() - f * b[k].clone();
            b[i] = v;
        }
    }
    back_substitute(&a, b)
}

fn back_substitute<T: Coeff>(a: &Matrix<T>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    for k in (0..n).rev() {
        let mut s = b[k].clone();
        for j in (k + 1)..n {
            s = s - a[k][j].clone() * b[j].clone();
        }
        b[k] = s / a[k][k].clone();
    }
    Ok(b)
}

fn pick_pivot<T: Coeff>(a: &Matrix<T>, col: usize, from: usize) -> Option<usize> {
    if T::EXACT {
        (from..a.len()).find(|&r| !a[r][col].is_zero())
    } else {
        (from..a.len())
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&x, &y| {
                a[x][col]
                    .abs_val()
                    .partial_cmp(&a[y][col].abs_val())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    }
}

/// Solve a square system with partial pivoting.
pub fn solve<T: Coeff>(mut a: Matrix<T>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    for k in 0..n {
        let p = pick_pivot(&a, k, k).ok_or(Error::Singular("zero pivot column"))?;
        a.swap(k, p);
        b.swap(k, p);
        let piv = a[k][k].clone();
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / piv.clone();
            for j in k..n {
                let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                a[i][j] = v;
            }
            let v = b[i].clone() - f * b[k].clone();
            b[i] = v;
        }
    }
    back_substitute(&a, b)
}

/// Solution structure of a general (possibly rectangular) exact system.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<T> {
    Unique(Vec<T>),
    /// A particular solution and the nullity of the coefficient matrix.
    Many(Vec<T>, usize),
    Inconsistent,
}

/// Row-reduce `[a | b]` and classify the system. Intended for exact fields.
pub fn solve_general<T: Coeff>(mut a: Matrix<T>, mut b: Vec<T>, cols: usize) -> Solution<T> {
    let rows = b.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pick_pivot(&a, c, r) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = T::one() / a[r][c].clone();
        for j in c..cols {
            a[r][j] = a[r][j].clone() * inv.clone();
        }
        b[r] = b[r].clone() * inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                a[i][j] = v;
            }
            let v = b[i].clone() - f * b[r].clone();
            b[i] = v;
        }
        pivots.push(c);
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return Solution::Inconsistent;
    }
    let mut x = vec![T::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = b[row].clone();
    }
    let nullity = cols - pivots.len();
    if nullity == 0 {
        Solution::Unique(x)
    } else {
        Solution::Many(x, nullity)
    }
}
