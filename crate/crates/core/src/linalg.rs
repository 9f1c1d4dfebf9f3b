//! Exact Gaussian elimination over `Q`.

use num_traits::Zero;

use crate::poly::Q;

/// Reduces `rows` to row echelon form in place and returns the pivot columns.
fn echelon(rows: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut().skip(c) {
            *x *= inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m = rows.to_vec();
    echelon(&mut m, ncols).len()
}

/// One solution of `A x = b` (free variables set to zero), or `None` if the
/// system is inconsistent. `a` is given by rows.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = echelon(&mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = m[row][ncols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(&[vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solve_examples() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![Q::new(4, 5), Q::new(7, 5)]);
        assert!(solve(&[vec![q(1)], vec![q(1)]], &[q(1), q(2)]).is_none());
        // underdetermined: any solution satisfies the system
        let a = vec![vec![q(1), q(1), q(0)]];
        let x = solve(&a, &[q(4)]).unwrap();
        assert_eq!(x[0] + x[1], q(4));
    }
}
