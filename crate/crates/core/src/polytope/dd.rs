//! Vertex-to-facet conversion by the double description method.
//!
//! For points `y_1..y_m` spanning `R^r` affinely, the valid inequalities
//! `h·y <= beta` form the cone `{(h, beta) : h·y_i - beta <= 0}`. Its
//! extreme rays are the facets plus the trivial ray `(0, 1)`. Rays are kept
//! as primitive integer vectors and constraints are added one vertex at a
//! time; adjacency uses the combinatorial zero-set test.

use num::{BigInt, Integer, Signed, Zero};

use super::linalg::rref;
use crate::rational::Rational;

/// Vertex count is bounded by the width of the zero-set mask.
pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone)]
struct Ray {
    v: Vec<BigInt>,
    zeros: u64,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

fn eval(row: &[BigInt], ray: &[BigInt]) -> BigInt {
    row.iter().zip(ray).map(|(a, b)| a * b).sum()
}

/// Facets `(h, beta)` of the convex hull of full-dimensional integer points,
/// meaning `h·y <= beta`, each as a primitive integer vector. Callers
/// guarantee at most [`MAX_POINTS`] points whose affine hull is all of
/// `R^r`.
pub fn facets(points: &[Vec<BigInt>]) -> Vec<(Vec<BigInt>, BigInt)> {
    assert!(
        points.len() <= MAX_POINTS,
        "too many points for double description"
    );
    let r = points.first().map_or(0, |p| p.len());
    if r == 0 {
        return Vec::new();
    }
    let d = r + 1;
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut row = p.clone();
            row.push(BigInt::from(-1));
            row
        })
        .collect();

    // greedy choice of d independent constraint rows
    let mut initial: Vec<usize> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial: Vec<Vec<Rational>> = initial
            .iter()
            .map(|&k| {
                rows[k]
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        trial.push(
            row.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        );
        if rref(trial).1.len() == initial.len() + 1 {
            initial.push(i);
            if initial.len() == d {
                break;
            }
        }
    }
    assert_eq!(initial.len(), d, "points are not full-dimensional");

    // rays of {x : A0 x <= 0} are the columns of -A0^{-1}
    let inverse = invert(
        &initial
            .iter()
            .map(|&k| {
                rows[k]
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect::<Vec<_>>(),
    );
    let mut processed: Vec<usize> = initial.clone();
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: Vec<Rational> = (0..d).map(|i| -inverse[i][j].clone()).collect();
            let ints = crate::rational::to_coprime_integers(&col);
            let v = primitive(ints);
            let zeros = processed
                .iter()
                .filter(|&&k| eval(&rows[k], &v).is_zero())
                .fold(0u64, |m, &k| m | (1 << k));
            Ray { v, zeros }
        })
        .collect();

    for k in 0..rows.len() {
        if processed.contains(&k) {
            continue;
        }
        let row = &rows[k];
        let values: Vec<BigInt> = rays.iter().map(|ray| eval(row, &ray.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (i, ray) in rays.iter().enumerate() {
            if values[i].is_zero() {
                next.push(Ray {
                    v: ray.v.clone(),
                    zeros: ray.zeros | (1 << k),
                });
            } else if values[i].is_negative() {
                next.push(ray.clone());
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros & rays[n].zeros;
                if (common.count_ones() as usize) + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, other)| i == p || i == n || other.zeros & common != common);
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vn = &values[n];
                let combined: Vec<BigInt> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[n].v)
                    .map(|(xp, xn)| vp * xn - vn * xp)
                    .collect();
                next.push(Ray {
                    v: primitive(combined),
                    zeros: common | (1 << k),
                });
            }
        }
        rays = next;
        processed.push(k);
    }

    rays.into_iter()
        .filter(|ray| ray.v[..r].iter().any(|x| !x.is_zero()))
        .map(|ray| {
            let beta = ray.v[r].clone();
            let mut h = ray.v;
            h.truncate(r);
            (h, beta)
        })
        .collect()
}

fn invert(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    assert_eq!(
        &pivots[..],
        &(0..n).collect::<Vec<_>>()[..],
        "singular matrix"
    );
    red.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(p: &[&[i64]]) -> Vec<Vec<BigInt>> {
        p.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn sorted(mut f: Vec<(Vec<BigInt>, BigInt)>) -> Vec<(Vec<BigInt>, BigInt)> {
        f.sort();
        f
    }

    #[test]
    fn unit_square() {
        let f = sorted(facets(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])));
        let expect = sorted(vec![
            (vec![(-1).into(), 0.into()], 0.into()),
            (vec![0.into(), (-1).into()], 0.into()),
            (vec![1.into(), 0.into()], 1.into()),
            (vec![0.into(), 1.into()], 1.into()),
        ]);
        assert_eq!(f, expect);
    }

    #[test]
    fn triangle_with_interior_point() {
        let f = facets(&pts(&[&[0, 0], &[1, 1], &[4, 0], &[0, 4]]));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn segment() {
        let f = sorted(facets(&pts(&[&[3], &[1], &[2]])));
        assert_eq!(
            f,
            vec![(vec![(-1).into()], (-1).into()), (vec![1.into()], 3.into())]
        );
    }

    #[test]
    fn cube_and_cross_polytope() {
        let mut cube = Vec::new();
        for m in 0..8i64 {
            cube.push(vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]);
        }
        let cube: Vec<&[i64]> = cube.iter().map(|v| v.as_slice()).collect();
        assert_eq!(facets(&pts(&cube)).len(), 6);
        let cross = pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]);
        let f = facets(&cross);
        assert_eq!(f.len(), 8);
        assert!(f
            .iter()
            .all(|(h, b)| *b == BigInt::from(1) && h.iter().all(|x| x.abs() == BigInt::from(1))));
    }
}
