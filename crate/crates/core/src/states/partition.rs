//! Partition logics read off a state set.
//!
//! Number the states `1..=n` in canonical order and label each atom by the
//! indices of the states that make it true. Every context then becomes a
//! partition of `{1..n}`.

use std::collections::{BTreeSet, HashMap};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{StateError, StateSet};
use crate::diagram::OrthoDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionLogic {
    pub ground_size: usize,
    /// Atom id to a 1-based subset of the ground set.
    pub labels: IndexMap<String, BTreeSet<usize>>,
}

impl PartitionLogic {
    /// Same labels under new atom ids; `rename[i]` replaces the i-th key.
    pub fn rename_atoms(&self, rename: &[String]) -> PartitionLogic {
        PartitionLogic {
            ground_size: self.ground_size,
            labels: rename
                .iter()
                .cloned()
                .zip(self.labels.values().cloned())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, StateError> {
        let p: PartitionLogic =
            serde_json::from_str(text).map_err(|e| StateError::Malformed(e.to_string()))?;
        for (atom, label) in &p.labels {
            if label.iter().any(|&i| i == 0 || i > p.ground_size) {
                return Err(StateError::Malformed(format!(
                    "label of `{atom}` leaves the ground set 1..={}",
                    p.ground_size
                )));
            }
        }
        Ok(p)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("partition logic json")
    }

    /// The labels of each context's atoms, in context order.
    pub fn context_views(&self, diagram: &OrthoDiagram) -> Vec<Vec<BTreeSet<usize>>> {
        diagram
            .contexts()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&a| {
                        self.labels
                            .get(&diagram.atoms()[a])
                            .cloned()
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks that every context's labels are nonempty, pairwise disjoint
    /// and cover `{1..ground_size}`.
    pub fn check_partitions(&self, diagram: &OrthoDiagram) -> Result<(), StateError> {
        for (ci, view) in self.context_views(diagram).iter().enumerate() {
            let mut union = BTreeSet::new();
            let mut total = 0;
            for label in view {
                if label.is_empty() {
                    return Err(StateError::PartitionInvariant { context: ci });
                }
                total += label.len();
                union.extend(label.iter().copied());
            }
            if total != union.len() || union != (1..=self.ground_size).collect() {
                return Err(StateError::PartitionInvariant { context: ci });
            }
        }
        Ok(())
    }
}

pub fn build_partition_logic(states: &StateSet<'_>) -> Result<PartitionLogic, StateError> {
    if states.is_empty() {
        return Err(StateError::EmptyStateSet);
    }
    let d = states.diagram();
    let labels = d
        .atoms()
        .iter()
        .enumerate()
        .map(|(a, id)| {
            let label = states
                .states()
                .iter()
                .enumerate()
                .filter(|(_, s)| s.value(a))
                .map(|(i, _)| i + 1)
                .collect();
            (id.clone(), label)
        })
        .collect();
    let logic = PartitionLogic {
        ground_size: states.len(),
        labels,
    };
    logic.check_partitions(d)?;
    Ok(logic)
}

/// A bijection `pi` of ground sets (`pi[i-1]` is the image of `i`) with
/// `pi(label_p(a)) = label_q(a)` for every atom, if one exists.
///
/// Ground elements are matched by backtracking; an element of `p` may only
/// go to an element of `q` that lies in exactly the same atoms' labels.
pub fn partition_logic_bijection(p: &PartitionLogic, q: &PartitionLogic) -> Option<Vec<usize>> {
    if p.ground_size != q.ground_size || p.labels.len() != q.labels.len() {
        return None;
    }
    let atoms: Vec<&String> = p.labels.keys().collect();
    if atoms.iter().any(|a| !q.labels.contains_key(*a)) {
        return None;
    }
    let n = p.ground_size;
    let signature = |logic: &PartitionLogic, i: usize| -> Vec<bool> {
        atoms
            .iter()
            .map(|a| logic.labels[*a].contains(&i))
            .collect()
    };
    let sig_p: Vec<Vec<bool>> = (1..=n).map(|i| signature(p, i)).collect();
    let sig_q: Vec<Vec<bool>> = (1..=n).map(|i| signature(q, i)).collect();

    fn extend(
        i: usize,
        sig_p: &[Vec<bool>],
        sig_q: &[Vec<bool>],
        used: &mut [bool],
        image: &mut Vec<usize>,
    ) -> bool {
        if i == sig_p.len() {
            return true;
        }
        for j in 0..sig_q.len() {
            if !used[j] && sig_p[i] == sig_q[j] {
                used[j] = true;
                image.push(j + 1);
                if extend(i + 1, sig_p, sig_q, used, image) {
                    return true;
                }
                image.pop();
                used[j] = false;
            }
        }
        false
    }

    let mut used = vec![false; n];
    let mut image = Vec::with_capacity(n);
    if extend(0, &sig_p, &sig_q, &mut used, &mut image) {
        Some(image)
    } else {
        None
    }
}

pub fn partition_logics_isomorphic(p: &PartitionLogic, q: &PartitionLogic) -> bool {
    partition_logic_bijection(p, q).is_some()
}

/// Applies a ground-set bijection to every label.
pub fn relabel(p: &PartitionLogic, image: &[usize]) -> PartitionLogic {
    let map: HashMap<usize, usize> = image.iter().enumerate().map(|(i, &j)| (i + 1, j)).collect();
    PartitionLogic {
        ground_size: p.ground_size,
        labels: p
            .labels
            .iter()
            .map(|(a, l)| (a.clone(), l.iter().map(|i| map[i]).collect()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::states::{enumerate_states, is_separating};

    #[test]
    fn single_context_labels() {
        let d = parse_diagram("a b c").unwrap();
        let s = enumerate_states(&d).unwrap();
        let p = build_partition_logic(&s).unwrap();
        assert_eq!(p.ground_size, 3);
        // states sorted: 001, 010, 100
        assert_eq!(p.labels["c"], BTreeSet::from([1]));
        assert_eq!(p.labels["b"], BTreeSet::from([2]));
        assert_eq!(p.labels["a"], BTreeSet::from([3]));
    }

    #[test]
    fn l12_matches_transcription() {
        let d = parse_diagram("1 2 3 / 3 4 5").unwrap();
        let p = build_partition_logic(&enumerate_states(&d).unwrap()).unwrap();
        let q = PartitionLogic::from_json(
            r#"{"ground_size":5,"labels":{"1":[2,3],"2":[4,5],"3":[1],"4":[3,5],"5":[2,4]}}"#,
        )
        .unwrap();
        let pi = partition_logic_bijection(&p, &q).unwrap();
        assert_eq!(relabel(&p, &pi), q);
        assert!(partition_logics_isomorphic(&p, &p));
    }

    #[test]
    fn different_ground_sizes_are_not_isomorphic() {
        let pent = parse_diagram("1 2 3 / 3 4 5 / 5 6 7 / 7 8 9 / 9 10 1").unwrap();
        let l12 = parse_diagram("1 2 3 / 3 4 5").unwrap();
        let p = build_partition_logic(&enumerate_states(&pent).unwrap()).unwrap();
        let q = build_partition_logic(&enumerate_states(&l12).unwrap()).unwrap();
        assert!(!partition_logics_isomorphic(&p, &q));
    }

    #[test]
    fn empty_state_set_is_an_error() {
        let d = parse_diagram("a b / b c / c a").unwrap();
        let s = enumerate_states(&d).unwrap();
        assert_eq!(
            build_partition_logic(&s).unwrap_err(),
            StateError::EmptyStateSet
        );
    }

    #[test]
    fn separating_sets_give_injective_labels() {
        for src in [
            "1 2 3 / 3 4 5",
            "1 2 3 / 3 4 5 / 5 6 1",
            "a b c d / d e / e f g",
        ] {
            let d = parse_diagram(src).unwrap();
            let s = enumerate_states(&d).unwrap();
            assert!(is_separating(&s).separating);
            let p = build_partition_logic(&s).unwrap();
            let distinct: BTreeSet<_> = p.labels.values().collect();
            assert_eq!(distinct.len(), d.num_atoms());
        }
    }

    #[test]
    fn rejects_out_of_range_labels() {
        assert!(PartitionLogic::from_json(r#"{"ground_size":2,"labels":{"a":[3]}}"#).is_err());
    }
}
