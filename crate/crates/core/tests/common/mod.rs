//! Brute-force oracles shared by the integration tests. They share no code
//! with the library's enumeration and counting routines.

#![allow(dead_code)]

use std::collections::BTreeSet;

use marked_polytopes::{HRepresentation, Rational};
use num_traits::Zero;

/// All constraints as `(a, b)` meaning `a · x ≤ b`; equalities become two rows.
pub fn rows(h: &HRepresentation) -> Vec<(Vec<Rational>, Rational)> {
    let conv = |c: &marked_polytopes::LinearInequality| -> Vec<Rational> {
        c.coeffs().iter().map(|v| Rational::from_integer(v.clone())).collect()
    };
    let mut out: Vec<(Vec<Rational>, Rational)> = h.inequalities().iter().map(|c| (conv(c), c.rhs().clone())).collect();
    for c in h.equalities() {
        let a = conv(c);
        out.push((a.iter().map(|v| -v).collect(), -c.rhs().clone()));
        out.push((a, c.rhs().clone()));
    }
    out
}

fn solve_square(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let d = m.len();
    for col in 0..d {
        let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

pub fn feasible(rows: &[(Vec<Rational>, Rational)], x: &[Rational]) -> bool {
    rows.iter().all(|(a, b)| a.iter().zip(x).map(|(u, v)| u * v).sum::<Rational>() <= *b)
}

/// Vertices by solving every square subsystem of the constraints.
pub fn brute_vertices(h: &HRepresentation) -> BTreeSet<Vec<Rational>> {
    let d = h.dim();
    let rows = rows(h);
    let mut out = BTreeSet::new();
    if d == 0 {
        out.insert(Vec::new());
        return out;
    }
    combinations(rows.len(), d, &mut |idx| {
        let m: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| {
                let mut r = rows[i].0.clone();
                r.push(rows[i].1.clone());
                r
            })
            .collect();
        if let Some(x) = solve_square(m) {
            if feasible(&rows, &x) {
                out.insert(x);
            }
        }
    });
    out
}

/// Integer points of `n · P` by scanning the vertex bounding box.
pub fn brute_count(h: &HRepresentation, n: i64) -> u64 {
    let verts = brute_vertices(h);
    let d = h.dim();
    let nn = Rational::from_integer(n.into());
    let lo: Vec<i64> = (0..d)
        .map(|i| verts.iter().map(|v| (&v[i] * &nn).ceil().to_integer()).min().unwrap().try_into().unwrap())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| verts.iter().map(|v| (&v[i] * &nn).floor().to_integer()).max().unwrap().try_into().unwrap())
        .collect();
    let rows: Vec<(Vec<Rational>, Rational)> = rows(h).into_iter().map(|(a, b)| (a, b * &nn)).collect();
    let mut count = 0;
    let mut x: Vec<i64> = lo.clone();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return 0;
    }
    loop {
        let xr: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
        if feasible(&rows, &xr) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return count;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}
