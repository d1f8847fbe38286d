//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::Rational;

/// Reduce `rows` to reduced row echelon form in place, considering only the
/// first `ncols` columns for pivots. Returns the pivot column of each
/// nonzero row; zero rows are moved to the bottom.
pub(crate) fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for v in rows[r].iter_mut() {
                *v *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Affine dimension of a point set; `-1` when empty.
pub(crate) fn affine_dimension(points: &[&[Rational]]) -> i64 {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs, first.len()) as i64
}

/// Incrementally maintained row-echelon basis used for independence tests.
#[derive(Clone, Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Try to add `row`; returns false (and leaves the basis unchanged) when
    /// it is linearly dependent on the current rows.
    pub(crate) fn push(&mut self, row: &[Rational]) -> bool {
        let mut v = row.to_vec();
        for (pc, b) in &self.rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((pc, v));
        true
    }

    pub(crate) fn pop(&mut self) {
        self.rows.pop();
    }
}

/// Solve an augmented system `[A | b]` whose coefficient part has rank
/// `ncols - 1`: returns a particular solution and a spanning direction of
/// the solution line, or `None` when the system is inconsistent.
pub(crate) fn solution_line(mut aug: Vec<Vec<Rational>>, ncols: usize) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let pivots = rref(&mut aug, ncols);
    if aug[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut x0 = vec![Rational::zero(); ncols];
    let mut dir = vec![Rational::zero(); ncols];
    dir[free] = Rational::one();
    for (row, &pc) in aug.iter().zip(&pivots) {
        x0[pc] = row[ncols].clone();
        dir[pc] = -row[free].clone();
    }
    Some((x0, dir))
}

/// Solve `[A | b]` with full column rank; `None` if inconsistent.
pub(crate) fn unique_solution(mut aug: Vec<Vec<Rational>>, ncols: usize) -> Option<Vec<Rational>> {
    let pivots = rref(&mut aug, ncols);
    if aug[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) || pivots.len() < ncols {
        return None;
    }
    Some(aug.iter().take(ncols).map(|row| row[ncols].clone()).collect())
}
