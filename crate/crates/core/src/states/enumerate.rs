//! Exhaustive two-valued state search.
//!
//! Depth-first over contexts in input order. At each context without a true
//! atom one of its still-open atoms is made true; every context-mate of that
//! atom (across all contexts it belongs to) is forced false. A branch dies as
//! soon as some context has all of its atoms false.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::{StateError, StateSet, TwoValuedState};
use crate::diagram::OrthoDiagram;

pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Cap on tentative assignments (search nodes).
    pub max_nodes: u64,
    /// Fan out over the branches of the first context, one thread each.
    pub parallel: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_nodes: DEFAULT_MAX_NODES,
            parallel: false,
        }
    }
}

pub fn enumerate_states(diagram: &OrthoDiagram) -> Result<StateSet<'_>, StateError> {
    enumerate_states_with(diagram, &EnumerateOptions::default())
}

pub fn enumerate_states_with<'d>(
    diagram: &'d OrthoDiagram,
    options: &EnumerateOptions,
) -> Result<StateSet<'d>, StateError> {
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let mut found = if options.parallel && diagram.num_contexts() > 0 {
        let first = diagram.contexts()[0].clone();
        let results: Vec<Result<Vec<TwoValuedState>, StateError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = first
                .iter()
                .map(|&atom| {
                    let nodes = &nodes;
                    let aborted = &aborted;
                    scope.spawn(move || {
                        let mut search = Search::new(diagram, options.max_nodes, nodes, aborted);
                        let mut out = Vec::new();
                        search.branch(0, atom, &mut out)?;
                        Ok(out)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        });
        let mut all = Vec::new();
        for r in results {
            all.extend(r?);
        }
        all
    } else {
        let mut search = Search::new(diagram, options.max_nodes, &nodes, &aborted);
        let mut out = Vec::new();
        search.descend(0, &mut out)?;
        out
    };
    found.sort();
    found.dedup();
    Ok(StateSet::from_sorted(diagram, found))
}

const OPEN: i8 = -1;

struct Search<'a> {
    diagram: &'a OrthoDiagram,
    values: Vec<i8>,
    trail: Vec<usize>,
    max_nodes: u64,
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
}

impl<'a> Search<'a> {
    fn new(
        diagram: &'a OrthoDiagram,
        max_nodes: u64,
        nodes: &'a AtomicU64,
        aborted: &'a AtomicBool,
    ) -> Self {
        Search {
            diagram,
            values: vec![OPEN; diagram.num_atoms()],
            trail: Vec::new(),
            max_nodes,
            nodes,
            aborted,
        }
    }

    fn descend(&mut self, pos: usize, out: &mut Vec<TwoValuedState>) -> Result<(), StateError> {
        let contexts = self.diagram.contexts();
        let mut pos = pos;
        while pos < contexts.len() && contexts[pos].iter().any(|&a| self.values[a] == 1) {
            pos += 1;
        }
        if pos == contexts.len() {
            debug_assert!(self.values.iter().all(|&v| v != OPEN));
            out.push(TwoValuedState::from_bits_unchecked(
                self.values.iter().map(|&v| v == 1).collect(),
            ));
            return Ok(());
        }
        for i in 0..contexts[pos].len() {
            let atom = contexts[pos][i];
            if self.values[atom] == OPEN {
                self.branch(pos, atom, out)?;
            }
        }
        Ok(())
    }

    fn branch(
        &mut self,
        pos: usize,
        atom: usize,
        out: &mut Vec<TwoValuedState>,
    ) -> Result<(), StateError> {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if count > self.max_nodes || self.aborted.load(Ordering::Relaxed) {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(StateError::LimitExceeded {
                limit: self.max_nodes,
            });
        }
        let mark = self.trail.len();
        if self.make_true(atom) {
            self.descend(pos + 1, out)?;
        }
        self.undo(mark);
        Ok(())
    }

    fn set(&mut self, atom: usize, value: i8) {
        self.values[atom] = value;
        self.trail.push(atom);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            self.values[a] = OPEN;
        }
    }

    /// Sets `atom` true and its context-mates false. Returns false on a
    /// contradiction or when some context is left without a candidate.
    fn make_true(&mut self, atom: usize) -> bool {
        if self.values[atom] == 0 {
            return false;
        }
        if self.values[atom] == OPEN {
            self.set(atom, 1);
        }
        let diagram = self.diagram;
        let mut cleared = Vec::new();
        for &c in diagram.contexts_of(atom) {
            for &mate in &diagram.contexts()[c] {
                if mate == atom {
                    continue;
                }
                match self.values[mate] {
                    1 => return false,
                    OPEN => {
                        self.set(mate, 0);
                        cleared.push(mate);
                    }
                    _ => {}
                }
            }
        }
        for mate in cleared {
            for &c in diagram.contexts_of(mate) {
                if diagram.contexts()[c].iter().all(|&a| self.values[a] == 0) {
                    return false;
                }
            }
        }
        true
    }
}
