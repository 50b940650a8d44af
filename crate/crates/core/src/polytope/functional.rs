use std::fmt;

use indexmap::IndexMap;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PolytopeError;
use crate::diagram::OrthoDiagram;
use crate::rational::{self, Rational};
use crate::states::RationalWeight;

/// Exact rational coefficients on atoms; absent atoms count as zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct LinearFunctional {
    #[serde(with = "rational::text::map")]
    pub coefficients: IndexMap<String, Rational>,
}

impl LinearFunctional {
    pub fn from_json(text: &str) -> Result<Self, PolytopeError> {
        serde_json::from_str(text).map_err(|e| PolytopeError::Malformed(e.to_string()))
    }

    /// Coefficient one on each listed atom.
    pub fn indicator<S: AsRef<str>>(atoms: &[S]) -> Self {
        LinearFunctional {
            coefficients: atoms
                .iter()
                .map(|a| (a.as_ref().to_string(), Rational::one()))
                .collect(),
        }
    }

    /// Coefficients in canonical atom order. Atoms outside the diagram are
    /// an error.
    pub fn dense(&self, diagram: &OrthoDiagram) -> Result<Vec<Rational>, PolytopeError> {
        let mut out = vec![Rational::zero(); diagram.num_atoms()];
        for (atom, c) in &self.coefficients {
            let i = diagram
                .atom_index(atom)
                .ok_or_else(|| PolytopeError::UnknownAtom(atom.clone()))?;
            out[i] += c;
        }
        Ok(out)
    }

    pub fn from_dense(diagram: &OrthoDiagram, dense: &[Rational]) -> Self {
        LinearFunctional {
            coefficients: diagram
                .atoms()
                .iter()
                .zip(dense)
                .filter(|(_, c)| !c.is_zero())
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Value on a weight; atoms the weight omits read as zero.
    pub fn evaluate(&self, w: &RationalWeight) -> Rational {
        self.coefficients
            .iter()
            .filter_map(|(a, c)| w.get(a).map(|v| c * v))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Sense {
    #[default]
    #[serde(rename = "<=")]
    LessEq,
    #[serde(rename = "=")]
    Equal,
}

/// `sum_a coefficients[a] * x_a  <=  bound` (or `=` for hull equalities).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(with = "rational::text::map")]
    pub coefficients: IndexMap<String, Rational>,
    #[serde(with = "rational::text")]
    pub bound: Rational,
    #[serde(default)]
    pub sense: Sense,
}

impl Inequality {
    pub fn new(functional: LinearFunctional, bound: Rational) -> Self {
        Inequality {
            coefficients: functional.coefficients,
            bound,
            sense: Sense::LessEq,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, PolytopeError> {
        serde_json::from_str(text).map_err(|e| PolytopeError::Malformed(e.to_string()))
    }

    pub fn functional(&self) -> LinearFunctional {
        LinearFunctional {
            coefficients: self.coefficients.clone(),
        }
    }

    /// Builds from canonical-order coefficients, dropping zeros and scaling
    /// by a positive factor to coprime integers.
    pub fn normalized_from_dense(
        diagram: &OrthoDiagram,
        dense: &[Rational],
        bound: &Rational,
        sense: Sense,
    ) -> Self {
        let mut all: Vec<Rational> = dense.to_vec();
        all.push(bound.clone());
        let ints = rational::to_coprime_integers(&all);
        let scaled: Vec<Rational> = ints.into_iter().map(Rational::from_integer).collect();
        let n = dense.len();
        Inequality {
            coefficients: LinearFunctional::from_dense(diagram, &scaled[..n]).coefficients,
            bound: scaled[n].clone(),
            sense,
        }
    }

    pub fn lhs(&self, w: &RationalWeight) -> Rational {
        self.functional().evaluate(w)
    }

    pub fn lhs_dense(&self, diagram: &OrthoDiagram, x: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .filter_map(|(a, c)| diagram.atom_index(a).map(|i| c * &x[i]))
            .sum()
    }

    pub fn holds_at(&self, diagram: &OrthoDiagram, x: &[Rational]) -> bool {
        let v = self.lhs_dense(diagram, x);
        match self.sense {
            Sense::LessEq => v <= self.bound,
            Sense::Equal => v == self.bound,
        }
    }
}

impl fmt::Display for Inequality {
    /// `c1*a1 + c2*a2 + ... <= b`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| format!("{c}*{a}"))
            .collect();
        let lhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        let op = match self.sense {
            Sense::LessEq => "<=",
            Sense::Equal => "=",
        };
        write!(f, "{lhs} {op} {}", self.bound)
    }
}
