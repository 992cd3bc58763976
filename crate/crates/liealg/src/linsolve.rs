//! Small dense exact solves, used for decompositions in a basis.

use bcov_numeric::Rational;
use num_traits::Zero;

use crate::Mat;

/// Solutions of `A x = b`: `None` if inconsistent, otherwise the solution with
/// free variables set to zero, plus the number of free variables.
pub fn solve(a: &Mat<Rational>, b: &[Rational]) -> Option<(Vec<Rational>, usize)> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m);
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut r: Vec<Rational> = (0..n).map(|j| a.get(i, j).clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some((x, n - pivots.len()))
}

/// Rank of a rational matrix.
pub fn rank(a: &Mat<Rational>) -> usize {
    let zeros = vec![Rational::zero(); a.rows()];
    let (_, free) = solve(a, &zeros).expect("homogeneous systems are consistent");
    a.cols() - free
}
