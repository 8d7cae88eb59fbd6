//! Dense Gaussian elimination over any [`Field`].
//!
//! Pivoting picks the entry of largest magnitude; for exact scalars the
//! zero test is exact and no tolerance is involved.

use crate::error::Error;
use crate::scalar::Field;

/// Solves `a · x = b` for a system with at least as many equations as
/// unknowns. Fails unless the solution exists and is unique.
pub fn solve_unique<T: Field>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Result<Vec<T>, Error> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    if rows < cols {
        return Err(Error::Singular);
    }

    for col in 0..cols {
        let pivot = (col..rows)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&r, &s| {
                a[r][col]
                    .abs()
                    .partial_cmp(&a[s][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or(Error::Singular)?;
        a.swap(col, pivot);
        b.swap(col, pivot);

        let inv = T::one() / a[col][col].clone();
        for r in (col + 1)..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() * inv.clone();
            let (top, bottom) = a.split_at_mut(r);
            for (x, p) in bottom[0][col..cols].iter_mut().zip(&top[col][col..cols]) {
                *x = x.clone() - factor.clone() * p.clone();
            }
            b[r] = b[r].clone() - factor * b[col].clone();
        }
    }

    if b[cols..].iter().any(|v| !v.is_zero()) {
        return Err(Error::Inconsistent);
    }

    let mut x = vec![T::zero(); cols];
    for r in (0..cols).rev() {
        let mut acc = b[r].clone();
        for c in (r + 1)..cols {
            acc = acc - a[r][c].clone() * x[c].clone();
        }
        x[r] = acc / a[r][r].clone();
    }
    Ok(x)
}
