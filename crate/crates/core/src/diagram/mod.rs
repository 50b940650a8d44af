//! The orthogonality-diagram data model: named atoms grouped into ordered
//! contexts, pasted at shared atoms.

mod dsl;
mod iso;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use dsl::{parse_diagram, to_dsl};
pub use iso::isomorphism;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("malformed diagram JSON: {0}")]
    Json(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A broken diagram invariant. Context indices are 0-based positions in the
/// context list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyDiagram,
    EmptyAtomId {
        context: usize,
    },
    ContextTooSmall {
        context: usize,
        atoms: Vec<String>,
    },
    DuplicateAtomInContext {
        context: usize,
        atom: String,
    },
    IntertwiningViolation {
        first: usize,
        second: usize,
        shared: Vec<String>,
    },
    DuplicateContext {
        first: usize,
        second: usize,
    },
    IsolatedAtom {
        atom: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyDiagram => write!(f, "empty diagram"),
            Violation::EmptyAtomId { context } => {
                write!(f, "context {context} contains an empty atom id")
            }
            Violation::ContextTooSmall { context, atoms } => write!(
                f,
                "context {context} has {} atom(s), at least 2 required",
                atoms.len()
            ),
            Violation::DuplicateAtomInContext { context, atom } => {
                write!(f, "duplicate atom `{atom}` in context {context}")
            }
            Violation::IntertwiningViolation {
                first,
                second,
                shared,
            } => write!(
                f,
                "intertwining violation: contexts {first} and {second} share {} atoms ({})",
                shared.len(),
                shared.join(", ")
            ),
            Violation::DuplicateContext { first, second } => {
                write!(f, "contexts {first} and {second} are identical")
            }
            Violation::IsolatedAtom { atom } => {
                write!(f, "atom `{atom}` belongs to no context")
            }
        }
    }
}

/// Atoms plus ordered contexts. Atom order is canonical: first appearance in
/// the context list, with atoms declared outside every context appended in
/// declaration order.
#[derive(Debug, Clone)]
pub struct OrthoDiagram {
    atoms: Vec<String>,
    contexts: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for OrthoDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms && self.contexts == other.contexts
    }
}

impl Eq for OrthoDiagram {}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    #[serde(default)]
    atoms: Vec<String>,
    contexts: Vec<Vec<String>>,
}

impl OrthoDiagram {
    /// Builds and validates a diagram from its contexts.
    pub fn new<S: AsRef<str>>(contexts: &[Vec<S>]) -> Result<Self, DiagramError> {
        let d = Self::from_parts::<S, S>(&[], contexts);
        let violations = d.validate();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(DiagramError::Invalid(violations))
        }
    }

    /// Builds a diagram without validating it. `declared` atoms that appear
    /// in no context are kept (and reported by [`validate`](Self::validate)).
    pub fn from_parts<A: AsRef<str>, S: AsRef<str>>(declared: &[A], contexts: &[Vec<S>]) -> Self {
        let mut atoms: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |name: &str, atoms: &mut Vec<String>| -> usize {
            if let Some(&i) = index.get(name) {
                return i;
            }
            atoms.push(name.to_string());
            index.insert(name.to_string(), atoms.len() - 1);
            atoms.len() - 1
        };
        let contexts: Vec<Vec<usize>> = contexts
            .iter()
            .map(|c| c.iter().map(|a| intern(a.as_ref(), &mut atoms)).collect())
            .collect();
        for a in declared {
            intern(a.as_ref(), &mut atoms);
        }
        let mut incidence = vec![Vec::new(); atoms.len()];
        for (ci, c) in contexts.iter().enumerate() {
            let distinct: BTreeSet<usize> = c.iter().copied().collect();
            for a in distinct {
                incidence[a].push(ci);
            }
        }
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        OrthoDiagram {
            atoms,
            contexts,
            index,
            incidence,
        }
    }

    /// Every invariant violation; empty iff the diagram is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.contexts.is_empty() {
            out.push(Violation::EmptyDiagram);
        }
        let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(self.contexts.len());
        for (ci, c) in self.contexts.iter().enumerate() {
            if c.iter().any(|&a| self.atoms[a].is_empty()) {
                out.push(Violation::EmptyAtomId { context: ci });
            }
            let mut seen = BTreeSet::new();
            for &a in c {
                if !seen.insert(a) {
                    out.push(Violation::DuplicateAtomInContext {
                        context: ci,
                        atom: self.atoms[a].clone(),
                    });
                }
            }
            if seen.len() < 2 {
                out.push(Violation::ContextTooSmall {
                    context: ci,
                    atoms: c.iter().map(|&a| self.atoms[a].clone()).collect(),
                });
            }
            sets.push(seen);
        }
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i] == sets[j] {
                    out.push(Violation::DuplicateContext {
                        first: i,
                        second: j,
                    });
                    continue;
                }
                let shared: Vec<String> = sets[i]
                    .intersection(&sets[j])
                    .map(|&a| self.atoms[a].clone())
                    .collect();
                if shared.len() >= 2 {
                    out.push(Violation::IntertwiningViolation {
                        first: i,
                        second: j,
                        shared,
                    });
                }
            }
        }
        for (a, ctxs) in self.incidence.iter().enumerate() {
            if ctxs.is_empty() {
                out.push(Violation::IsolatedAtom {
                    atom: self.atoms[a].clone(),
                });
            }
        }
        out
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn num_contexts(&self) -> usize {
        self.contexts.len()
    }

    /// Contexts as lists of atom indices into [`atoms`](Self::atoms).
    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn context_names(&self, context: usize) -> Vec<&str> {
        self.contexts[context]
            .iter()
            .map(|&a| self.atoms[a].as_str())
            .collect()
    }

    pub fn atom_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Indices of the contexts containing `atom`, ascending.
    pub fn contexts_of(&self, atom: usize) -> &[usize] {
        &self.incidence[atom]
    }

    /// True when `a` and `b` lie in a common context.
    pub fn co_contextual(&self, a: usize, b: usize) -> bool {
        self.incidence[a]
            .iter()
            .any(|c| self.incidence[b].contains(c))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = DiagramJson {
            atoms: self.atoms.clone(),
            contexts: (0..self.contexts.len())
                .map(|c| {
                    self.context_names(c)
                        .into_iter()
                        .map(String::from)
                        .collect()
                })
                .collect(),
        };
        serde_json::to_value(j).expect("diagram json")
    }

    /// Reads `{"atoms":[...], "contexts":[[...],...]}`; `atoms` may be
    /// omitted. The result is validated.
    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let j: DiagramJson =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        let d = Self::from_parts(&j.atoms, &j.contexts);
        let v = d.validate();
        if v.is_empty() {
            Ok(d)
        } else {
            Err(DiagramError::Invalid(v))
        }
    }
}
