//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::Rational;

/// Reduced row echelon form of a matrix, with pivot columns.
#[derive(Clone, Debug)]
pub struct RowReduced {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl RowReduced {
    pub fn new(mut rows: Vec<Vec<Rational>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, found);
            let inv = rows[r][col].recip();
            for v in rows[r].iter_mut() {
                *v *= &inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for j in col..ncols {
                        let d = &f * &rows[r][j];
                        rows[i][j] -= d;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        RowReduced { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rank(rows: Vec<Vec<Rational>>) -> usize {
    RowReduced::new(rows).rank()
}

/// Solves `matrix * x = rhs` (matrix given by rows). Free variables are set
/// to zero. Returns `None` when the system is inconsistent.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = matrix.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let red = RowReduced::new(aug);
    if red.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        debug_assert!(row[p].is_one());
        x[p] = row[ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_solve() {
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[1, 2], &[0, 1], &[3, 3]])), 2);
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let sing = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&sing, &[int(1), int(3)]), None);
        assert_eq!(solve(&sing, &[int(1), int(2)]), Some(vec![int(1), int(0)]));
    }
}
