//! Small dense exact linear algebra over the rationals.

use num::{Signed, Zero};

use crate::rational::Rational;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns (ascending).
pub fn rref(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
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
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows.to_vec()).1.len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn null_space(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows.to_vec());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::from_integer(1.into());
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Some `c` with `sum_i c[i] * vectors[i] = target`, if `target` lies in
/// the span.
pub fn solve_combination(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = vectors.len();
    // augmented system: one row per coordinate, columns = vectors + target
    let rows: Vec<Vec<Rational>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    if rows.is_empty() {
        return Some(vec![Rational::zero(); k]);
    }
    let (r, pivots) = rref(rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn max_abs(v: &[Rational]) -> Rational {
    v.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}
