//! Real orthogonal representations: atoms as unit vectors, contexts as
//! orthonormal families, probabilities as squared inner products.

mod umbrella;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::diagram::OrthoDiagram;
use crate::float::{serialize_vec, F17};
use crate::polytope::LinearFunctional;
use crate::rational;

pub use umbrella::{lovasz_umbrella, pentagon_cycle, umbrella_representation, UMBRELLA_ORDER};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Residual norm below which a Gram–Schmidt candidate is skipped.
pub const GS_SKIP: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantumError {
    #[error("no vector for atom `{0}`")]
    MissingAtom(String),
    #[error("vector for `{atom}` has length {found}, expected {expected}")]
    Dimension {
        atom: String,
        expected: usize,
        found: usize,
    },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("`{what}` is not a unit vector (norm {norm})")]
    NotUnit { what: String, norm: f64 },
    #[error("non-finite component in `{0}`")]
    NonFinite(String),
    #[error("inputs {first} and {second} are not orthonormal (inner product {inner})")]
    NotOrthonormal {
        first: usize,
        second: usize,
        inner: f64,
    },
    #[error("cannot complete {given} vectors in dimension {dimension}")]
    NothingToComplete { given: usize, dimension: usize },
    #[error("diagram is not a pentagon of 3-atom contexts: {0}")]
    NotPentagon(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Atom-indexed unit vectors in `R^dimension`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorRep {
    pub dimension: usize,
    #[serde(serialize_with = "serialize_vectors")]
    pub vectors: IndexMap<String, Vec<f64>>,
    #[serde(default = "default_tolerance", serialize_with = "serialize_tolerance")]
    pub tolerance: f64,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn serialize_tolerance<S: serde::Serializer>(t: &f64, s: S) -> Result<S::Ok, S::Error> {
    F17(*t).serialize(s)
}

fn serialize_vectors<S: serde::Serializer>(
    v: &IndexMap<String, Vec<f64>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    struct Row<'a>(&'a [f64]);
    impl Serialize for Row<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize_vec(self.0, s)
        }
    }
    s.collect_map(v.iter().map(|(k, x)| (k, Row(x))))
}

impl VectorRep {
    /// Checks lengths, finiteness and unit norms.
    pub fn new(
        dimension: usize,
        vectors: IndexMap<String, Vec<f64>>,
        tolerance: f64,
    ) -> Result<Self, QuantumError> {
        let rep = VectorRep {
            dimension,
            vectors,
            tolerance,
        };
        rep.check()?;
        Ok(rep)
    }

    fn check(&self) -> Result<(), QuantumError> {
        if self.dimension == 0 {
            return Err(QuantumError::ZeroDimension);
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(QuantumError::Malformed("tolerance must be positive".into()));
        }
        for (atom, v) in &self.vectors {
            if v.len() != self.dimension {
                return Err(QuantumError::Dimension {
                    atom: atom.clone(),
                    expected: self.dimension,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(QuantumError::NonFinite(atom.clone()));
            }
        }
        Ok(())
    }

    /// Parses JSON and checks shapes; unit norms are left to
    /// [`check_faithful`] so that degenerate reps can still be reported on.
    pub fn from_json(text: &str) -> Result<Self, QuantumError> {
        let rep: VectorRep =
            serde_json::from_str(text).map_err(|e| QuantumError::Malformed(e.to_string()))?;
        rep.check()?;
        Ok(rep)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("finite floats")
    }

    pub fn vector(&self, atom: &str) -> Result<&[f64], QuantumError> {
        self.vectors
            .get(atom)
            .map(Vec::as_slice)
            .ok_or_else(|| QuantumError::MissingAtom(atom.to_string()))
    }
}

/// A unit preparation vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(Vec<f64>);

impl StateVector {
    pub fn new(components: Vec<f64>, tolerance: f64) -> Result<Self, QuantumError> {
        if components.iter().any(|x| !x.is_finite()) {
            return Err(QuantumError::NonFinite("state".into()));
        }
        let n = norm(&components);
        if (n - 1.0).abs() > tolerance {
            return Err(QuantumError::NotUnit {
                what: "state".into(),
                norm: n,
            });
        }
        Ok(StateVector(components))
    }

    /// `(1, 0, 0)`, the symmetry axis of the umbrella.
    pub fn handle() -> Self {
        StateVector(vec![1.0, 0.0, 0.0])
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepViolation {
    NotUnit {
        atom: String,
        norm: F17,
    },
    /// Same context, yet not orthogonal.
    NotOrthogonal {
        first: String,
        second: String,
        inner: F17,
    },
    /// Never in a common context, yet orthogonal.
    UnexpectedOrthogonality {
        first: String,
        second: String,
        inner: F17,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaithfulnessReport {
    pub faithful: bool,
    pub violations: Vec<RepViolation>,
}

/// Unit norms, orthogonality within contexts and non-orthogonality across
/// non-adjacent atoms, all within the rep's tolerance.
pub fn check_faithful(
    diagram: &OrthoDiagram,
    rep: &VectorRep,
) -> Result<FaithfulnessReport, QuantumError> {
    let eps = rep.tolerance;
    let vs: Vec<&[f64]> = diagram
        .atoms()
        .iter()
        .map(|a| rep.vector(a))
        .collect::<Result<_, _>>()?;
    let names = diagram.atoms();
    let mut violations = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let n = norm(v);
        if (n - 1.0).abs() > eps {
            violations.push(RepViolation::NotUnit {
                atom: names[i].clone(),
                norm: F17(n),
            });
        }
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let inner = dot(vs[i], vs[j]);
            let orthogonal = inner.abs() <= eps;
            let (first, second) = (names[i].clone(), names[j].clone());
            if diagram.co_contextual(i, j) {
                if !orthogonal {
                    violations.push(RepViolation::NotOrthogonal {
                        first,
                        second,
                        inner: F17(inner),
                    });
                }
            } else if orthogonal {
                violations.push(RepViolation::UnexpectedOrthogonality {
                    first,
                    second,
                    inner: F17(inner),
                });
            }
        }
    }
    Ok(FaithfulnessReport {
        faithful: violations.is_empty(),
        violations,
    })
}

/// Completes `partial` (orthonormal within `tolerance`) to an orthonormal
/// basis of `R^dimension`. Candidates are the canonical basis vectors in
/// order; residuals shorter than [`GS_SKIP`] are skipped; each output is
/// signed so its first nonzero component is positive.
pub fn gram_schmidt_complete(
    partial: &[Vec<f64>],
    dimension: usize,
    tolerance: f64,
) -> Result<Vec<Vec<f64>>, QuantumError> {
    let k = partial.len();
    if k >= dimension {
        return Err(QuantumError::NothingToComplete {
            given: k,
            dimension,
        });
    }
    for (i, v) in partial.iter().enumerate() {
        if v.len() != dimension {
            return Err(QuantumError::Dimension {
                atom: i.to_string(),
                expected: dimension,
                found: v.len(),
            });
        }
        for (j, w) in partial.iter().enumerate().skip(i) {
            let inner = dot(v, w);
            let expected = if i == j { 1.0 } else { 0.0 };
            if (inner - expected).abs() > tolerance {
                return Err(QuantumError::NotOrthonormal {
                    first: i,
                    second: j,
                    inner,
                });
            }
        }
    }
    let mut basis: Vec<Vec<f64>> = partial.to_vec();
    let mut out = Vec::with_capacity(dimension - k);
    for axis in 0..dimension {
        if basis.len() == dimension {
            break;
        }
        let mut r = vec![0.0; dimension];
        r[axis] = 1.0;
        // two passes keep the residual orthogonal to working precision
        for _ in 0..2 {
            for b in &basis {
                let p = dot(&r, b);
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= p * y;
                }
            }
        }
        let n = norm(&r);
        if n < GS_SKIP {
            continue;
        }
        for x in r.iter_mut() {
            *x /= n;
        }
        if let Some(first) = r.iter().find(|x| x.abs() > GS_SKIP) {
            if *first < 0.0 {
                for x in r.iter_mut() {
                    *x = -*x;
                }
            }
        }
        basis.push(r.clone());
        out.push(r);
    }
    Ok(out)
}

/// `<c|v_atom>^2`.
pub fn born_probability(rep: &VectorRep, c: &StateVector, atom: &str) -> Result<f64, QuantumError> {
    let v = rep.vector(atom)?;
    if v.len() != c.0.len() {
        return Err(QuantumError::Dimension {
            atom: "state".into(),
            expected: v.len(),
            found: c.0.len(),
        });
    }
    let x = dot(c.components(), v);
    Ok(x * x)
}

/// `sum_a f(a) <c|v_a>^2`, accumulated in the rep's atom order.
pub fn quantum_value(
    rep: &VectorRep,
    c: &StateVector,
    f: &LinearFunctional,
) -> Result<f64, QuantumError> {
    for atom in f.coefficients.keys() {
        rep.vector(atom)?;
    }
    let mut total = 0.0;
    for atom in rep.vectors.keys() {
        if let Some(coef) = f.coefficients.get(atom) {
            total += rational::to_f64(coef) * born_probability(rep, c, atom)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
