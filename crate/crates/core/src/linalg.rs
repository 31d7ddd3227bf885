//! Exact Gaussian elimination: rank and affine solution sets of `A w = b`.

use num_traits::{One, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Inconsistent,
    /// `basepoint + span(kernel)`; `kernel` is empty iff the solution is unique.
    Affine { basepoint: Vec<Q>, kernel: Vec<Vec<Q>> },
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut Vec<Vec<Q>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for a in m[r].iter_mut() {
            *a *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (a, pa) in row.iter_mut().zip(&pivot_row) {
                    *a -= &f * pa;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Solves `a w = b` over the rationals, `a` given row-wise with `n` columns.
pub fn solve_affine(a: &[Vec<Q>], b: &[Q], n: usize) -> Solution {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if m
        .iter()
        .skip(pivots.len())
        .any(|row| !row[n].is_zero())
    {
        return Solution::Inconsistent;
    }
    let mut basepoint = vec![Q::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        basepoint[c] = m[r][n].clone();
    }
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[r][free];
            }
            v
        })
        .collect();
    Solution::Affine { basepoint, kernel }
}
