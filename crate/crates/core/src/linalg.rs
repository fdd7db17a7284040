//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Solves the (possibly overdetermined) system `A x = b` exactly.
///
/// Fails with [`Error::RankDeficient`] when `A` does not have full column
/// rank and with [`Error::Inconsistent`] when no exact solution exists.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "row count of A and b differ");
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for x in m[rank][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    if rank < cols {
        return Err(Error::RankDeficient {
            rows,
            columns: cols,
            rank,
        });
    }
    if let Some(r) = (rank..rows).find(|&r| !m[r][cols].is_zero()) {
        return Err(Error::Inconsistent(format!(
            "equation {r} of the overdetermined system has a nonzero residual"
        )));
    }
    Ok((0..cols).map(|i| m[i][cols].clone()).collect())
}
