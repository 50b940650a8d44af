//! Bundled example diagrams, partition-logic transcriptions, functionals,
//! weights and urns. The same files live under `crates/core/corpus/`.

use crate::diagram::{parse_diagram, OrthoDiagram};

/// `(file name, contents)` for every bundled file.
pub const FILES: &[(&str, &str)] = &[
    ("l12.gd", include_str!("../corpus/l12.gd")),
    ("pentagon.gd", include_str!("../corpus/pentagon.gd")),
    ("triangle.gd", include_str!("../corpus/triangle.gd")),
    ("square.gd", include_str!("../corpus/square.gd")),
    ("combo.gd", include_str!("../corpus/combo.gd")),
    (
        "pentagon_inner1.gd",
        include_str!("../corpus/pentagon_inner1.gd"),
    ),
    (
        "pentagon_inner3.gd",
        include_str!("../corpus/pentagon_inner3.gd"),
    ),
    (
        "pentagon_fig2f.gd",
        include_str!("../corpus/pentagon_fig2f.gd"),
    ),
    (
        "single_context_3.gd",
        include_str!("../corpus/single_context_3.gd"),
    ),
    ("eq2.json", include_str!("../corpus/eq2.json")),
    ("l12_labels.json", include_str!("../corpus/l12_labels.json")),
    (
        "triangle_labels.json",
        include_str!("../corpus/triangle_labels.json"),
    ),
    (
        "square_labels.json",
        include_str!("../corpus/square_labels.json"),
    ),
    (
        "combo_labels.json",
        include_str!("../corpus/combo_labels.json"),
    ),
    (
        "pentagon_inner1_labels.json",
        include_str!("../corpus/pentagon_inner1_labels.json"),
    ),
    (
        "pentagon_inner3_labels.json",
        include_str!("../corpus/pentagon_inner3_labels.json"),
    ),
    (
        "pentagon_fig2f_labels.json",
        include_str!("../corpus/pentagon_fig2f_labels.json"),
    ),
    (
        "functional_bubstairs.json",
        include_str!("../corpus/functional_bubstairs.json"),
    ),
    (
        "functional_zero.json",
        include_str!("../corpus/functional_zero.json"),
    ),
    (
        "weight_exotic.json",
        include_str!("../corpus/weight_exotic.json"),
    ),
    ("urn_l12.urn", include_str!("../corpus/urn_l12.urn")),
    ("urn_e6sq.urn", include_str!("../corpus/urn_e6sq.urn")),
    ("urn_e5sq.urn", include_str!("../corpus/urn_e5sq.urn")),
];

/// Diagram files of the golden corpus.
pub const DIAGRAMS: &[&str] = &[
    "l12.gd",
    "pentagon.gd",
    "triangle.gd",
    "square.gd",
    "combo.gd",
    "pentagon_inner1.gd",
    "pentagon_inner3.gd",
    "pentagon_fig2f.gd",
    "single_context_3.gd",
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}

/// Parses a bundled diagram. Panics on unknown names, which are a
/// programming error.
pub fn diagram(name: &str) -> OrthoDiagram {
    let src = file(name).unwrap_or_else(|| panic!("no corpus file {name}"));
    parse_diagram(src).unwrap_or_else(|e| panic!("corpus file {name}: {e}"))
}

pub fn pentagon() -> OrthoDiagram {
    diagram("pentagon.gd")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_diagram_parses() {
        for name in DIAGRAMS {
            let d = diagram(name);
            assert!(d.validate().is_empty(), "{name}");
            assert!(d.num_atoms() <= 20);
        }
    }
}
