//! Exact rational weights and the admissibility check (nonnegative, summing
//! to one on every context).

use indexmap::IndexMap;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{StateError, TwoValuedState};
use crate::diagram::OrthoDiagram;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct RationalWeight {
    #[serde(with = "rational::text::map")]
    pub values: IndexMap<String, Rational>,
}

impl RationalWeight {
    pub fn get(&self, atom: &str) -> Option<&Rational> {
        self.values.get(atom)
    }

    pub fn from_state(diagram: &OrthoDiagram, state: &TwoValuedState) -> Self {
        RationalWeight {
            values: diagram
                .atoms()
                .iter()
                .enumerate()
                .map(|(a, id)| {
                    let v = if state.value(a) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    (id.clone(), v)
                })
                .collect(),
        }
    }

    /// `sum_i coefficients[i] * states[i]`, over the diagram's atoms.
    pub fn mixture(
        diagram: &OrthoDiagram,
        states: &[TwoValuedState],
        coefficients: &[Rational],
    ) -> Self {
        let mut values: IndexMap<String, Rational> = diagram
            .atoms()
            .iter()
            .map(|a| (a.clone(), Rational::zero()))
            .collect();
        for (s, c) in states.iter().zip(coefficients) {
            for a in s.true_atoms() {
                *values.get_index_mut(a).unwrap().1 += c;
            }
        }
        RationalWeight { values }
    }

    /// Either a JSON object `{"atom": "p/q", ...}` or text lines
    /// `atom p/q` (`#` comments allowed).
    pub fn parse(text: &str) -> Result<Self, StateError> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| StateError::Malformed(e.to_string()));
        }
        let mut values = IndexMap::new();
        for (n, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            match toks.as_slice() {
                [] => continue,
                [atom, value] => {
                    let q = rational::parse(value)
                        .map_err(|e| StateError::Malformed(format!("line {}: {e}", n + 1)))?;
                    values.insert(atom.to_string(), q);
                }
                _ => {
                    return Err(StateError::Malformed(format!(
                        "line {}: expected `atom p/q`",
                        n + 1
                    )))
                }
            }
        }
        Ok(RationalWeight { values })
    }

    /// Values in canonical atom order; missing atoms read as zero.
    pub fn dense(&self, diagram: &OrthoDiagram) -> Vec<Rational> {
        diagram
            .atoms()
            .iter()
            .map(|a| self.values.get(a).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightViolation {
    MissingAtom {
        atom: String,
    },
    UnknownAtom {
        atom: String,
    },
    Negative {
        atom: String,
        #[serde(with = "rational::text")]
        value: Rational,
    },
    ContextSum {
        context: usize,
        #[serde(with = "rational::text")]
        sum: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    pub admissible: bool,
    pub violations: Vec<WeightViolation>,
}

pub fn check_weight(diagram: &OrthoDiagram, w: &RationalWeight) -> WeightCheck {
    let mut violations = Vec::new();
    for atom in diagram.atoms() {
        match w.values.get(atom) {
            None => violations.push(WeightViolation::MissingAtom { atom: atom.clone() }),
            Some(v) if v.is_negative() => violations.push(WeightViolation::Negative {
                atom: atom.clone(),
                value: v.clone(),
            }),
            _ => {}
        }
    }
    for atom in w.values.keys() {
        if diagram.atom_index(atom).is_none() {
            violations.push(WeightViolation::UnknownAtom { atom: atom.clone() });
        }
    }
    let dense = w.dense(diagram);
    for (ci, c) in diagram.contexts().iter().enumerate() {
        let sum: Rational = c.iter().map(|&a| dense[a].clone()).sum();
        if !sum.is_one() {
            violations.push(WeightViolation::ContextSum { context: ci, sum });
        }
    }
    WeightCheck {
        admissible: violations.is_empty(),
        violations,
    }
}
