//! Exact Gauss-Jordan elimination over the rationals.

use num_traits::Zero;

use crate::series::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// No solution: some row reduces to `0 = c` with `c != 0`.
    Inconsistent { row: usize },
    /// Solutions exist but are not unique.
    Underdetermined { rank: usize, unknowns: usize },
}

/// Solve `A x = b` for the unique `x`. `rows[i]` is row `i` of `A`.
pub fn solve_unique(rows: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, SolveError> {
    assert_eq!(rows.len(), rhs.len());
    let n = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n, "ragged matrix");
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(p) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot).skip(col) {
                *v -= &factor * pv;
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }

    if let Some(row) = (pivot_row..m.len()).find(|&r| !m[r][n].is_zero()) {
        return Err(SolveError::Inconsistent { row });
    }
    if pivots.len() < n {
        return Err(SolveError::Underdetermined { rank: pivots.len(), unknowns: n });
    }
    Ok((0..n).map(|i| m[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{rat, ratio};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn square_system() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let x = solve_unique(&a, &[rat(3), rat(5)]).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
    }

    #[test]
    fn overdetermined_consistent_and_not() {
        let a = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve_unique(&a, &[rat(1), rat(2), rat(3)]).unwrap(), vec![rat(1), rat(2)]);
        assert!(matches!(solve_unique(&a, &[rat(1), rat(2), rat(4)]), Err(SolveError::Inconsistent { .. })));
    }

    #[test]
    fn rank_deficient() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            solve_unique(&a, &[rat(1), rat(2)]),
            Err(SolveError::Underdetermined { rank: 1, unknowns: 2 })
        );
    }
}
