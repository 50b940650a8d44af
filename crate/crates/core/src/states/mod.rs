//! Two-valued (dispersion-free) states and what can be read off them.

mod analysis;
mod enumerate;
mod partition;
mod weight;

use std::fmt;

use crate::diagram::OrthoDiagram;

pub use analysis::{is_separating, true_implies_true, Separability};
pub use enumerate::{enumerate_states, enumerate_states_with, EnumerateOptions, DEFAULT_MAX_NODES};
pub use partition::{
    build_partition_logic, partition_logic_bijection, partition_logics_isomorphic, relabel,
    PartitionLogic,
};
pub use weight::{check_weight, RationalWeight, WeightCheck, WeightViolation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateError {
    #[error("search node limit of {limit} exceeded")]
    LimitExceeded { limit: u64 },
    #[error("empty state set")]
    EmptyStateSet,
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("vacuous implication: no two-valued state assigns 1 to `{0}`")]
    VacuousImplication(String),
    #[error("state {index} is not two-valued on context {context}")]
    InvalidState { index: usize, context: usize },
    #[error("state has {got} entries, diagram has {expected} atoms")]
    StateLength { expected: usize, got: usize },
    #[error("labels of context {context} do not partition the ground set")]
    PartitionInvariant { context: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// A {0,1} assignment over the canonical atom order with exactly one true
/// atom per context. Ordering is lexicographic over the bit vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedState(Vec<bool>);

impl TwoValuedState {
    /// Checks the one-true-per-context rule against `diagram`.
    pub fn new(diagram: &OrthoDiagram, bits: Vec<bool>) -> Result<Self, StateError> {
        if bits.len() != diagram.num_atoms() {
            return Err(StateError::StateLength {
                expected: diagram.num_atoms(),
                got: bits.len(),
            });
        }
        for (ci, c) in diagram.contexts().iter().enumerate() {
            if c.iter().filter(|&&a| bits[a]).count() != 1 {
                return Err(StateError::InvalidState {
                    index: 0,
                    context: ci,
                });
            }
        }
        Ok(TwoValuedState(bits))
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<bool>) -> Self {
        TwoValuedState(bits)
    }

    pub fn value(&self, atom: usize) -> bool {
        self.0[atom]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn true_atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }
}

impl fmt::Display for TwoValuedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// All (or a chosen set of) two-valued states of one diagram, sorted and
/// free of duplicates.
#[derive(Debug, Clone)]
pub struct StateSet<'d> {
    diagram: &'d OrthoDiagram,
    states: Vec<TwoValuedState>,
}

impl<'d> StateSet<'d> {
    /// Validates every state, then sorts and deduplicates.
    pub fn new(diagram: &'d OrthoDiagram, states: Vec<Vec<bool>>) -> Result<Self, StateError> {
        let mut checked = Vec::with_capacity(states.len());
        for (i, bits) in states.into_iter().enumerate() {
            let s = TwoValuedState::new(diagram, bits).map_err(|e| match e {
                StateError::InvalidState { context, .. } => {
                    StateError::InvalidState { index: i, context }
                }
                other => other,
            })?;
            checked.push(s);
        }
        checked.sort();
        checked.dedup();
        Ok(StateSet {
            diagram,
            states: checked,
        })
    }

    pub(crate) fn from_sorted(diagram: &'d OrthoDiagram, states: Vec<TwoValuedState>) -> Self {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        StateSet { diagram, states }
    }

    pub fn diagram(&self) -> &'d OrthoDiagram {
        self.diagram
    }

    pub fn states(&self) -> &[TwoValuedState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// JSON form: an array of 0/1 arrays in canonical atom order.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.states
                .iter()
                .map(|s| {
                    serde_json::Value::Array(s.bits().iter().map(|&b| (b as u8).into()).collect())
                })
                .collect(),
        )
    }

    pub fn from_json(diagram: &'d OrthoDiagram, text: &str) -> Result<Self, StateError> {
        let rows: Vec<Vec<u8>> =
            serde_json::from_str(text).map_err(|e| StateError::Malformed(e.to_string()))?;
        let mut bits = Vec::with_capacity(rows.len());
        for row in rows {
            if row.iter().any(|&v| v > 1) {
                return Err(StateError::Malformed("state entries must be 0 or 1".into()));
            }
            bits.push(row.into_iter().map(|v| v == 1).collect());
        }
        StateSet::new(diagram, bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn state_set_validates_and_sorts() {
        let d = parse_diagram("a b c").unwrap();
        let s = StateSet::new(
            &d,
            vec![
                vec![true, false, false],
                vec![false, false, true],
                vec![true, false, false],
            ],
        )
        .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.states()[0].to_string(), "001");
        assert!(matches!(
            StateSet::new(&d, vec![vec![true, true, false]]),
            Err(StateError::InvalidState {
                index: 0,
                context: 0
            })
        ));
        assert_eq!(s.to_json_value().to_string(), "[[0,0,1],[1,0,0]]");
        let back = StateSet::from_json(&d, "[[0,0,1],[1,0,0]]").unwrap();
        assert_eq!(back.states(), s.states());
    }
}
