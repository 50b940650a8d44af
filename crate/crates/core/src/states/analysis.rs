use serde::Serialize;

use super::{StateError, StateSet};

/// Outcome of the separation test. `witness` names one pair of distinct
/// atoms that no state tells apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separability {
    pub separating: bool,
    pub witness: Option<(String, String)>,
    pub reason: Option<String>,
}

/// Decides whether every pair of distinct atoms takes different values in
/// some state. Two atoms are inseparable exactly when their value columns
/// over the state set coincide.
pub fn is_separating(states: &StateSet<'_>) -> Separability {
    let d = states.diagram();
    let columns: Vec<Vec<bool>> = (0..d.num_atoms())
        .map(|a| states.states().iter().map(|s| s.value(a)).collect())
        .collect();
    let mut seen: std::collections::HashMap<&[bool], usize> = std::collections::HashMap::new();
    for (a, col) in columns.iter().enumerate() {
        if let Some(&first) = seen.get(col.as_slice()) {
            return Separability {
                separating: false,
                witness: Some((d.atoms()[first].clone(), d.atoms()[a].clone())),
                reason: Some(if states.is_empty() {
                    "no states".into()
                } else {
                    "inseparable atom pair".into()
                }),
            };
        }
        seen.insert(col, a);
    }
    Separability {
        separating: true,
        witness: None,
        reason: None,
    }
}

/// Atoms (other than `target`) that are true in every state where
/// `target` is true, in canonical order.
pub fn true_implies_true(states: &StateSet<'_>, target: &str) -> Result<Vec<String>, StateError> {
    let d = states.diagram();
    let t = d
        .atom_index(target)
        .ok_or_else(|| StateError::UnknownAtom(target.to_string()))?;
    let selecting: Vec<_> = states.states().iter().filter(|s| s.value(t)).collect();
    if selecting.is_empty() {
        return Err(StateError::VacuousImplication(target.to_string()));
    }
    Ok((0..d.num_atoms())
        .filter(|&b| b != t && selecting.iter().all(|s| s.value(b)))
        .map(|b| d.atoms()[b].clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::states::enumerate_states;

    #[test]
    fn pentagon_separates() {
        let d = parse_diagram("1 2 3 / 3 4 5 / 5 6 7 / 7 8 9 / 9 10 1").unwrap();
        let s = enumerate_states(&d).unwrap();
        assert!(is_separating(&s).separating);
    }

    #[test]
    fn single_context_separates() {
        let d = parse_diagram("a b c d").unwrap();
        let s = enumerate_states(&d).unwrap();
        let r = is_separating(&s);
        assert!(r.separating);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn odd_cycle_of_pairs_has_no_states() {
        let d = parse_diagram("a b / b c / c a").unwrap();
        let s = enumerate_states(&d).unwrap();
        assert!(s.is_empty());
        let r = is_separating(&s);
        assert!(!r.separating);
        assert_eq!(r.reason.as_deref(), Some("no states"));
        assert_eq!(r.witness, Some(("a".into(), "b".into())));
    }

    #[test]
    fn implication_in_single_context_is_empty() {
        let d = parse_diagram("a b c").unwrap();
        let s = enumerate_states(&d).unwrap();
        assert_eq!(true_implies_true(&s, "b").unwrap(), Vec::<String>::new());
        assert_eq!(
            true_implies_true(&s, "zz").unwrap_err(),
            StateError::UnknownAtom("zz".into())
        );
    }

    #[test]
    fn l12_intertwining_atom() {
        // Brute-force scan: the only state with atom 3 true sets 1, 2, 4, 5
        // false, so nothing else is implied.
        let d = parse_diagram("1 2 3 / 3 4 5").unwrap();
        let s = enumerate_states(&d).unwrap();
        let selecting: Vec<_> = s.states().iter().filter(|st| st.value(2)).collect();
        assert_eq!(selecting.len(), 1);
        assert_eq!(true_implies_true(&s, "3").unwrap(), Vec::<String>::new());
        // An outer atom forces nothing either: 1 true leaves 4 or 5 open.
        assert_eq!(true_implies_true(&s, "1").unwrap(), Vec::<String>::new());
    }

    #[test]
    fn vacuous_target_is_an_error() {
        // In the triangle-of-pairs plus a tail, no state exists at all.
        let d = parse_diagram("a b / b c / c a").unwrap();
        let s = enumerate_states(&d).unwrap();
        assert_eq!(
            true_implies_true(&s, "a").unwrap_err(),
            StateError::VacuousImplication("a".into())
        );
    }
}
