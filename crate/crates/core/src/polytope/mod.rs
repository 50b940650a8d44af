//! The classical polytope: convex hull of the two-valued states viewed as
//! 0/1 vectors over the atoms. Everything here is exact.

pub mod dd;
mod functional;
pub mod linalg;
pub mod lp;

use indexmap::IndexMap;
use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::diagram::OrthoDiagram;
use crate::rational::{self, Rational};
use crate::states::{check_weight, RationalWeight, StateSet, WeightViolation};
pub use functional::{Inequality, LinearFunctional, Sense};
use linalg::{dot, null_space, rank, rref, solve_combination};
use lp::LpOutcome;

pub const MAX_FACET_DIMENSION: usize = 12;
pub const MAX_FACET_VERTICES: usize = dd::MAX_POINTS;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("empty state set")]
    EmptyStateSet,
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("weight is not admissible ({} violation(s))", .0.len())]
    InadmissibleWeight(Vec<WeightViolation>),
    #[error(
        "facet enumeration limited to {MAX_FACET_DIMENSION} dimensions and \
         {MAX_FACET_VERTICES} vertices (got {dimension} and {vertices})"
    )]
    GuardExceeded { dimension: usize, vertices: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

fn vertices(states: &StateSet<'_>) -> Vec<Vec<Rational>> {
    states
        .states()
        .iter()
        .map(|s| {
            s.bits()
                .iter()
                .map(|&b| if b { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalMax {
    #[serde(with = "rational::text")]
    pub value: Rational,
    /// 0-based indices of the maximizing states.
    pub argmax: Vec<usize>,
}

/// Maximum of `f` over the two-valued states, which is its maximum over
/// their convex hull.
pub fn classical_max(
    states: &StateSet<'_>,
    f: &LinearFunctional,
) -> Result<ClassicalMax, PolytopeError> {
    if states.is_empty() {
        return Err(PolytopeError::EmptyStateSet);
    }
    let coeffs = f.dense(states.diagram())?;
    let values: Vec<Rational> = states
        .states()
        .iter()
        .map(|s| s.true_atoms().map(|a| coeffs[a].clone()).sum())
        .collect();
    let value = values.iter().max().unwrap().clone();
    let argmax = (0..values.len()).filter(|&i| values[i] == value).collect();
    Ok(ClassicalMax { value, argmax })
}

/// Affine hull of a point set: `base + span(directions)`, directions in
/// reduced row echelon form with pivot coordinates `pivots`.
#[derive(Debug, Clone)]
pub struct AffineHull {
    pub base: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl AffineHull {
    pub fn of(points: &[Vec<Rational>]) -> Self {
        let base = points[0].clone();
        let diffs: Vec<Vec<Rational>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
            .collect();
        let (directions, pivots) = if diffs.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            rref(diffs)
        };
        AffineHull {
            base,
            directions,
            pivots,
        }
    }

    pub fn dimension(&self) -> usize {
        self.pivots.len()
    }

    /// On the hull, `f·x = g·y + c` where `y` are the pivot coordinates.
    /// Returns `(g, c)`.
    pub fn reduce(&self, f: &[Rational]) -> (Vec<Rational>, Rational) {
        let g: Vec<Rational> = self.directions.iter().map(|d| dot(f, d)).collect();
        let shift: Rational = self
            .pivots
            .iter()
            .zip(&g)
            .map(|(&p, gl)| &self.base[p] * gl)
            .sum();
        (g, dot(f, &self.base) - shift)
    }

    /// Basis of the affine equalities `c·x = e` holding on the hull.
    pub fn equalities(&self) -> Vec<(Vec<Rational>, Rational)> {
        let n = self.base.len();
        null_space(&self.directions, n)
            .into_iter()
            .map(|c| {
                let e = dot(&c, &self.base);
                (c, e)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "member", rename_all = "snake_case")]
pub enum HullMembership {
    /// `w = sum_i coefficients[i] * state_i`, coefficients >= 0 summing to 1.
    Inside {
        #[serde(serialize_with = "ser_rationals")]
        coefficients: Vec<Rational>,
    },
    /// An inequality valid on every state and violated by `w`;
    /// `value` is its left-hand side at `w`.
    Outside {
        inequality: Inequality,
        #[serde(with = "rational::text")]
        value: Rational,
    },
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

/// Decides whether an admissible weight is a convex combination of the
/// states, by exact phase-one simplex. A negative answer carries a
/// separating inequality: the first violated facet in canonical order when
/// the polytope is small enough to enumerate, otherwise the Farkas
/// certificate. Either way it is rewritten with
/// [`nonnegative_form`].
pub fn hull_membership(
    states: &StateSet<'_>,
    w: &RationalWeight,
) -> Result<HullMembership, PolytopeError> {
    let d = states.diagram();
    let check = check_weight(d, w);
    if !check.admissible {
        return Err(PolytopeError::InadmissibleWeight(check.violations));
    }
    let verts = vertices(states);
    let target = w.dense(d);
    let n_atoms = d.num_atoms();
    // rows: one per atom, plus the normalization row
    let mut a: Vec<Vec<Rational>> = (0..n_atoms)
        .map(|i| verts.iter().map(|v| v[i].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); verts.len()]);
    let mut b = target.clone();
    b.push(Rational::one());
    let c = vec![Rational::zero(); verts.len()];

    match lp::solve(&a, &b, &c) {
        LpOutcome::Optimal { x, .. } => {
            let mut mix = vec![Rational::zero(); n_atoms];
            for (v, mu) in verts.iter().zip(&x) {
                for i in 0..n_atoms {
                    mix[i] += &v[i] * mu;
                }
            }
            if mix != target || x.iter().any(|m| m.is_negative()) {
                return Err(PolytopeError::Internal("convex certificate".into()));
            }
            Ok(HullMembership::Inside { coefficients: x })
        }
        LpOutcome::Infeasible { farkas } => {
            // u_x·s + u_0 >= 0 on states, u_x·w + u_0 < 0:  (-u_x)·x <= u_0
            let (ux, u0) = farkas.split_at(n_atoms);
            let coeffs: Vec<Rational> = ux.iter().map(|v| -v.clone()).collect();
            let mut ineq = Inequality::normalized_from_dense(d, &coeffs, &u0[0], Sense::LessEq);
            let small = verts.len() <= MAX_FACET_VERTICES
                && AffineHull::of(&verts).dimension() <= MAX_FACET_DIMENSION;
            if small {
                let facets = enumerate_facets(states)?;
                if let Some(f) = facets.facets.iter().find(|f| f.lhs(w) > f.bound) {
                    ineq = f.clone();
                }
            }
            let ineq = nonnegative_form(d, &ineq);
            let value = ineq.lhs(w);
            let valid = verts.iter().all(|v| ineq.holds_at(d, v));
            if !valid || value <= ineq.bound {
                return Err(PolytopeError::Internal("separating certificate".into()));
            }
            Ok(HullMembership::Outside {
                inequality: ineq,
                value,
            })
        }
        LpOutcome::Unbounded => Err(PolytopeError::Internal("unbounded feasibility LP".into())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FacetDescription {
    /// Dimension of the affine hull of the states.
    pub dimension: usize,
    /// A basis of the affine equalities of the hull.
    pub equalities: Vec<Inequality>,
    /// Irredundant facets, each supported on the hull's pivot atoms.
    pub facets: Vec<Inequality>,
}

/// Complete irredundant facet list of the state polytope, relative to its
/// affine hull.
///
/// Facets are written in the pivot atoms of the hull (the first atoms, in
/// canonical order, whose coordinates parametrize it) with coprime integer
/// coefficients, and sorted by coefficient vector then bound. Every facet is
/// checked to be valid and tight on `dimension` affinely independent states.
pub fn enumerate_facets(states: &StateSet<'_>) -> Result<FacetDescription, PolytopeError> {
    if states.is_empty() {
        return Err(PolytopeError::EmptyStateSet);
    }
    let d = states.diagram();
    let verts = vertices(states);
    let hull = AffineHull::of(&verts);
    let dim = hull.dimension();
    if dim > MAX_FACET_DIMENSION || verts.len() > MAX_FACET_VERTICES {
        return Err(PolytopeError::GuardExceeded {
            dimension: dim,
            vertices: verts.len(),
        });
    }
    let equalities = hull
        .equalities()
        .into_iter()
        .map(|(c, e)| Inequality::normalized_from_dense(d, &c, &e, Sense::Equal))
        .collect();

    let projected: Vec<Vec<BigInt>> = verts
        .iter()
        .map(|v| hull.pivots.iter().map(|&p| v[p].to_integer()).collect())
        .collect();
    let mut dense_facets: Vec<(Vec<BigInt>, BigInt)> = dd::facets(&projected)
        .into_iter()
        .map(|(h, beta)| {
            let mut full = vec![BigInt::zero(); d.num_atoms()];
            for (&p, c) in hull.pivots.iter().zip(h) {
                full[p] = c;
            }
            (full, beta)
        })
        .collect();
    dense_facets.sort();

    let facets: Vec<Inequality> = dense_facets
        .into_iter()
        .map(|(c, beta)| {
            let c: Vec<Rational> = c.into_iter().map(Rational::from_integer).collect();
            Inequality::normalized_from_dense(d, &c, &Rational::from_integer(beta), Sense::LessEq)
        })
        .collect();
    for f in &facets {
        let check = check_facet(d, &verts, dim, f);
        if !check.valid || check.tight_rank < dim {
            return Err(PolytopeError::Internal(format!("not a facet: {f}")));
        }
    }
    Ok(FacetDescription {
        dimension: dim,
        equalities,
        facets,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FacetCheck {
    pub valid: bool,
    /// Largest number of affinely independent vertices on which the
    /// inequality is tight.
    pub tight_rank: usize,
}

pub fn check_facet(
    diagram: &OrthoDiagram,
    vertices: &[Vec<Rational>],
    _dimension: usize,
    ineq: &Inequality,
) -> FacetCheck {
    let valid = vertices.iter().all(|v| ineq.holds_at(diagram, v));
    let tight: Vec<&Vec<Rational>> = vertices
        .iter()
        .filter(|v| ineq.lhs_dense(diagram, v) == ineq.bound)
        .collect();
    let tight_rank = match tight.split_first() {
        None => 0,
        Some((first, rest)) => {
            let diffs: Vec<Vec<Rational>> = rest
                .iter()
                .map(|v| v.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
                .collect();
            1 + if diffs.is_empty() { 0 } else { rank(&diffs) }
        }
    };
    FacetCheck { valid, tight_rank }
}

/// Vertices of the state polytope as exact 0/1 vectors.
pub fn state_vertices(states: &StateSet<'_>) -> Vec<Vec<Rational>> {
    vertices(states)
}

fn context_indicators(diagram: &OrthoDiagram) -> Vec<Vec<Rational>> {
    diagram
        .contexts()
        .iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); diagram.num_atoms()];
            for &a in c {
                v[a] = Rational::one();
            }
            v
        })
        .collect()
}

/// If `a` equals a positive multiple of `b` plus a rational combination of
/// the context equalities `sum_{x in C} x = 1`, returns that multiple and
/// the per-context multipliers.
pub fn equivalent_modulo_contexts(
    diagram: &OrthoDiagram,
    a: &Inequality,
    b: &Inequality,
) -> Option<(Rational, Vec<Rational>)> {
    let fa = a.functional().dense(diagram).ok()?;
    let fb = b.functional().dense(diagram).ok()?;
    let mut vectors = vec![{
        let mut v = fb;
        v.push(b.bound.clone());
        v
    }];
    for mut ind in context_indicators(diagram) {
        ind.push(Rational::one());
        vectors.push(ind);
    }
    let mut target = fa;
    target.push(a.bound.clone());
    let sol = solve_combination(&vectors, &target)?;
    if !sol[0].is_positive() {
        return None;
    }
    Some((sol[0].clone(), sol[1..].to_vec()))
}

/// Nonnegative multipliers `lambda` (one per facet) showing that `ineq` is
/// implied by the facets together with the context equalities:
/// `f = sum_j lambda_j F_j + sum_C mu_C 1_C` and
/// `bound >= sum_j lambda_j g_j + sum_C mu_C`.
pub fn implied_by_facets(
    diagram: &OrthoDiagram,
    facets: &[Inequality],
    ineq: &Inequality,
) -> Option<Vec<Rational>> {
    let n = diagram.num_atoms();
    let f = ineq.functional().dense(diagram).ok()?;
    let fs: Vec<Vec<Rational>> = facets
        .iter()
        .map(|x| x.functional().dense(diagram))
        .collect::<Result<_, _>>()
        .ok()?;
    let ctx = context_indicators(diagram);
    let k = facets.len();
    let m = ctx.len();
    // columns: lambda (k), mu+ (m), mu- (m), slack (1)
    let cols = k + 2 * m + 1;
    let mut a = Vec::with_capacity(n + 1);
    for atom in 0..n {
        let mut row = vec![Rational::zero(); cols];
        for j in 0..k {
            row[j] = fs[j][atom].clone();
        }
        for c in 0..m {
            row[k + c] = ctx[c][atom].clone();
            row[k + m + c] = -ctx[c][atom].clone();
        }
        a.push(row);
    }
    let mut row = vec![Rational::zero(); cols];
    for j in 0..k {
        row[j] = facets[j].bound.clone();
    }
    for c in 0..m {
        row[k + c] = Rational::one();
        row[k + m + c] = -Rational::one();
    }
    row[cols - 1] = Rational::one();
    a.push(row);
    let mut b = f;
    b.push(ineq.bound.clone());
    match lp::solve(&a, &b, &vec![Rational::zero(); cols]) {
        LpOutcome::Optimal { x, .. } => Some(x[..k].to_vec()),
        _ => None,
    }
}

/// Rewrites a valid inequality modulo the context equalities so that every
/// coefficient is nonnegative and the bound is as small as possible, then
/// scales to coprime integers. Returns the input unchanged if the
/// rewriting program has no optimum.
pub fn nonnegative_form(diagram: &OrthoDiagram, ineq: &Inequality) -> Inequality {
    let Ok(f) = ineq.functional().dense(diagram) else {
        return ineq.clone();
    };
    let n = diagram.num_atoms();
    let m = diagram.num_contexts();
    // columns: mu+ (m), mu- (m), coefficient slack s_a (n)
    // rows:    sum_{C∋a} (mu+_C - mu-_C) - s_a = -f_a
    let cols = 2 * m + n;
    let mut a = Vec::with_capacity(n);
    for atom in 0..n {
        let mut row = vec![Rational::zero(); cols];
        for &c in diagram.contexts_of(atom) {
            row[c] = Rational::one();
            row[m + c] = -Rational::one();
        }
        row[2 * m + atom] = -Rational::one();
        a.push(row);
    }
    let b: Vec<Rational> = f.iter().map(|x| -x.clone()).collect();
    let mut c = vec![Rational::zero(); cols];
    for i in 0..m {
        c[i] = Rational::one();
        c[m + i] = -Rational::one();
    }
    match lp::solve(&a, &b, &c) {
        LpOutcome::Optimal { x, value } => {
            let coeffs = &x[2 * m..];
            let bound = &ineq.bound + value;
            Inequality::normalized_from_dense(diagram, coeffs, &bound, ineq.sense)
        }
        _ => ineq.clone(),
    }
}

/// The list of atom ids carrying nonzero coefficients, in canonical order.
pub fn support(diagram: &OrthoDiagram, ineq: &Inequality) -> Vec<String> {
    let coeffs: IndexMap<&str, &Rational> = ineq
        .coefficients
        .iter()
        .map(|(a, c)| (a.as_str(), c))
        .collect();
    diagram
        .atoms()
        .iter()
        .filter(|a| coeffs.get(a.as_str()).is_some_and(|c| !c.is_zero()))
        .cloned()
        .collect()
}
