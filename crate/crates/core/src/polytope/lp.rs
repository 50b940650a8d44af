//! Exact two-phase tableau simplex with Bland's rule.
//!
//! Solves `min c·x` subject to `A x = b`, `x >= 0`. Infeasible problems come
//! back with a Farkas vector `u` satisfying `uᵀA >= 0` and `uᵀb < 0`.

use num::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

struct Tableau {
    /// `m` constraint rows followed by the reduced-cost row; last column is
    /// the right-hand side (negated objective value in the cost row).
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Columns that may not enter the basis.
    barred: Vec<bool>,
}

impl Tableau {
    fn rows(&self) -> usize {
        self.t.len() - 1
    }

    fn rhs(&self) -> usize {
        self.t[0].len() - 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for v in self.t[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland's rule to optimality. Returns false when unbounded.
    fn optimize(&mut self) -> bool {
        let cost = self.rows();
        let rhs = self.rhs();
        loop {
            let entering = (0..rhs).find(|&j| !self.barred[j] && self.t[cost][j].is_negative());
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..self.rows() {
                if self.t[i][col].is_positive() {
                    let ratio = &self.t[i][rhs] / &self.t[i][col];
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                Some((_, row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }
}

pub fn solve(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m + 1;
    let rhs = n + m;
    let sign: Vec<Rational> = b
        .iter()
        .map(|v| {
            if v.is_negative() {
                -Rational::one()
            } else {
                Rational::one()
            }
        })
        .collect();

    let mut t = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            row[j] = &a[i][j] * &sign[i];
        }
        row[n + i] = Rational::one();
        row[rhs] = &b[i] * &sign[i];
        t.push(row);
    }
    // phase I costs: 1 on artificials, reduced against the artificial basis
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }
    t.push(cost);
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        barred: vec![false; width - 1],
    };
    tab.optimize();

    let phase1 = -tab.t[m][rhs].clone();
    if phase1.is_positive() {
        // y'_i = 1 - d_art_i, u = -S y'
        let farkas = (0..m)
            .map(|i| -(Rational::one() - &tab.t[m][n + i]) * &sign[i])
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // drive artificials out of the basis; rows where that is impossible are
    // redundant and dropped
    let mut i = 0;
    while i < tab.rows() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for j in n..n + m {
        tab.barred[j] = true;
    }
    let rows = tab.rows();
    let mut cost = vec![Rational::zero(); width];
    cost[..n].clone_from_slice(c);
    for r in 0..rows {
        let cb = c[tab.basis[r]].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            let delta = &cb * &tab.t[r][j];
            cost[j] -= delta;
        }
    }
    tab.t[rows] = cost;
    if !tab.optimize() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for r in 0..rows {
        x[tab.basis[r]] = tab.t[r][rhs].clone();
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, value }
}
