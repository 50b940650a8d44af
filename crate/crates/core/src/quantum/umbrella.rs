use std::f64::consts::PI;

use indexmap::IndexMap;

use super::{gram_schmidt_complete, QuantumError, VectorRep, DEFAULT_TOLERANCE};
use crate::diagram::OrthoDiagram;

/// Umbrella index (1-based) assigned to the i-th vertex of the pentagon
/// cycle: consecutive vertices get pentagram-adjacent umbrella vectors.
pub const UMBRELLA_ORDER: [usize; 5] = [1, 3, 5, 2, 4];

/// `u_l = 5^(-1/4) (1, sqrt(sqrt5 - 1) cos(2 pi l / 5), sqrt(sqrt5 - 1) sin(2 pi l / 5))`
/// for `l = 1..5`, returned at index `l - 1`.
pub fn lovasz_umbrella() -> [[f64; 3]; 5] {
    let s5 = 5f64.sqrt();
    let scale = 5f64.powf(-0.25);
    let r = (s5 - 1.0).sqrt();
    std::array::from_fn(|i| {
        let t = 2.0 * PI * (i + 1) as f64 / 5.0;
        [scale, scale * r * t.cos(), scale * r * t.sin()]
    })
}

/// A pentagon of three-atom contexts read as a cycle: the five shared atoms
/// in cycle order, and for each `i` the private atom of the context joining
/// shared atoms `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PentagonCycle {
    pub vertices: [usize; 5],
    pub middles: [usize; 5],
}

/// Walks the cycle from the first shared atom in canonical order, leaving
/// through its first context.
pub fn pentagon_cycle(diagram: &OrthoDiagram) -> Result<PentagonCycle, QuantumError> {
    let bad = |m: &str| QuantumError::NotPentagon(m.to_string());
    if diagram.num_contexts() != 5 || diagram.contexts().iter().any(|c| c.len() != 3) {
        return Err(bad("need five contexts of three atoms"));
    }
    let shared: Vec<usize> = (0..diagram.num_atoms())
        .filter(|&a| diagram.contexts_of(a).len() == 2)
        .collect();
    if shared.len() != 5 || diagram.num_atoms() != 10 {
        return Err(bad("need five shared and five private atoms"));
    }
    let mut vertices = [0; 5];
    let mut middles = [0; 5];
    let mut v = shared[0];
    let mut ctx = diagram.contexts_of(v)[0];
    for i in 0..5 {
        vertices[i] = v;
        let c = &diagram.contexts()[ctx];
        let others: Vec<usize> = c.iter().copied().filter(|&a| a != v).collect();
        let next: Vec<usize> = others
            .iter()
            .copied()
            .filter(|a| shared.contains(a))
            .collect();
        let mid: Vec<usize> = others
            .iter()
            .copied()
            .filter(|a| !shared.contains(a))
            .collect();
        if next.len() != 1 || mid.len() != 1 {
            return Err(bad("context must hold two shared atoms"));
        }
        middles[i] = mid[0];
        v = next[0];
        ctx = *diagram
            .contexts_of(v)
            .iter()
            .find(|&&k| k != ctx)
            .ok_or_else(|| bad("broken cycle"))?;
    }
    if v != vertices[0] {
        return Err(bad("shared atoms do not close a 5-cycle"));
    }
    Ok(PentagonCycle { vertices, middles })
}

/// Umbrella vectors on the shared atoms (per [`UMBRELLA_ORDER`]) and
/// Gram–Schmidt completions on the private ones, in canonical atom order.
pub fn umbrella_representation(diagram: &OrthoDiagram) -> Result<VectorRep, QuantumError> {
    let cycle = pentagon_cycle(diagram)?;
    let u = lovasz_umbrella();
    let mut by_atom: Vec<Option<Vec<f64>>> = vec![None; diagram.num_atoms()];
    for (i, &a) in cycle.vertices.iter().enumerate() {
        by_atom[a] = Some(u[UMBRELLA_ORDER[i] - 1].to_vec());
    }
    for i in 0..5 {
        let a = by_atom[cycle.vertices[i]].clone().unwrap();
        let b = by_atom[cycle.vertices[(i + 1) % 5]].clone().unwrap();
        let mut done = gram_schmidt_complete(&[a, b], 3, 1e-9)?;
        by_atom[cycle.middles[i]] = done.pop();
    }
    let vectors: IndexMap<String, Vec<f64>> = diagram
        .atoms()
        .iter()
        .cloned()
        .zip(by_atom.into_iter().map(Option::unwrap))
        .collect();
    VectorRep::new(3, vectors, DEFAULT_TOLERANCE)
}
