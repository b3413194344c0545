use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::Rational;

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Unique(Vec<Rational>),
    /// Consistent but rank deficient. `particular` sets every free unknown to
    /// zero; `determined[i]` is `Some` exactly when the system forces unknown `i`.
    Underdetermined {
        particular: Vec<Rational>,
        determined: Vec<Option<Rational>>,
    },
}

/// Gauss-Jordan elimination over the rationals. `rows` is row-major with
/// `cols` unknowns; `rhs` has one entry per row.
pub fn solve_exact(rows: &[Vec<Rational>], rhs: &[Rational], cols: usize) -> Solution {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), cols);
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut().skip(col) {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..=cols {
                let delta = &f * &m[row][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Solution::Inconsistent;
    }

    let mut particular = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][cols].clone();
    }
    if pivots.len() == cols {
        return Solution::Unique(particular);
    }
    let is_pivot = |c: usize| pivots.contains(&c);
    let mut determined = vec![None; cols];
    for (r, &c) in pivots.iter().enumerate() {
        if (0..cols).all(|j| is_pivot(j) || m[r][j].is_zero()) {
            determined[c] = Some(m[r][cols].clone());
        }
    }
    Solution::Underdetermined {
        particular,
        determined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn unique_solution() {
        let a = [row(&[2, 1]), row(&[1, 3])];
        let b = row(&[3, 5]);
        assert_eq!(
            solve_exact(&a, &b, 2),
            Solution::Unique(vec![ratio(4, 5), ratio(7, 5)])
        );
    }

    #[test]
    fn inconsistent_overdetermined() {
        let a = [row(&[1, 0]), row(&[0, 1]), row(&[1, 1])];
        assert_eq!(solve_exact(&a, &row(&[1, 1, 3]), 2), Solution::Inconsistent);
    }

    #[test]
    fn partially_determined() {
        // x0 fixed, x1 + x2 fixed
        let a = [row(&[1, 0, 0]), row(&[0, 1, 1])];
        match solve_exact(&a, &row(&[4, 2]), 3) {
            Solution::Underdetermined { determined, .. } => {
                assert_eq!(determined, vec![Some(rat(4)), None, None]);
            }
            other => panic!("unexpected {:?}", other),
        }
    }
}
