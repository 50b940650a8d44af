//! The `.gd` text format.
//!
//! One context per line, atoms separated by whitespace. `#` starts a comment
//! running to the end of the line and blank lines are ignored. Several
//! contexts may share a line when separated by `/`.
//!
//! ```text
//! # L12
//! a b c / c d e
//! ```

use super::{DiagramError, OrthoDiagram};

fn is_atom_char(c: char) -> bool {
    c.is_alphanumeric() || "_-.,:;{}[]()+'*|<>=@$%&!?^~".contains(c)
}

/// Parses `.gd` source into a validated diagram.
pub fn parse_diagram(text: &str) -> Result<OrthoDiagram, DiagramError> {
    let mut contexts: Vec<Vec<String>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        // (start column, tokens) per `/`-separated segment
        let mut segments: Vec<(usize, Vec<String>)> = vec![(1, Vec::new())];
        let mut token = String::new();
        let flush = |token: &mut String, segments: &mut Vec<(usize, Vec<String>)>| {
            if !token.is_empty() {
                segments.last_mut().unwrap().1.push(std::mem::take(token));
            }
        };
        for (col0, ch) in body.chars().enumerate() {
            let column = col0 + 1;
            if ch.is_whitespace() {
                flush(&mut token, &mut segments);
            } else if ch == '/' {
                flush(&mut token, &mut segments);
                if segments.last().unwrap().1.is_empty() {
                    return Err(DiagramError::Syntax {
                        line,
                        column,
                        message: "empty context before `/`".into(),
                    });
                }
                segments.push((column + 1, Vec::new()));
            } else if is_atom_char(ch) {
                token.push(ch);
            } else {
                return Err(DiagramError::Syntax {
                    line,
                    column,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        }
        flush(&mut token, &mut segments);
        let (start, last) = segments.last().unwrap();
        if last.is_empty() {
            return Err(DiagramError::Syntax {
                line,
                column: *start,
                message: "empty context after `/`".into(),
            });
        }
        contexts.extend(segments.into_iter().map(|(_, atoms)| atoms));
    }
    OrthoDiagram::new(&contexts)
}

/// Serializes a diagram as `.gd` source, one context per line in canonical
/// order.
pub fn to_dsl(diagram: &OrthoDiagram) -> String {
    let mut out = String::new();
    for c in 0..diagram.num_contexts() {
        out.push_str(&diagram.context_names(c).join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Violation;
    use proptest::prelude::*;

    #[test]
    fn l12_on_one_line() {
        let d = parse_diagram("a b c / c d e").unwrap();
        assert_eq!(d.num_atoms(), 5);
        assert_eq!(d.num_contexts(), 2);
        assert_eq!(d.contexts_of(d.atom_index("c").unwrap()), &[0, 1]);
    }

    #[test]
    fn minimal_single_context() {
        let d = parse_diagram("x y\n").unwrap();
        assert_eq!(d.num_atoms(), 2);
        assert_eq!(d.num_contexts(), 1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let d = parse_diagram("# header\n\n a b c  # first\n\nc d e\n").unwrap();
        assert_eq!(d.atoms(), &["a", "b", "c", "d", "e"]);
    }

    #[test]
    fn shared_pair_is_intertwining_violation() {
        let err = parse_diagram("a b c\na b d\n").unwrap_err();
        assert!(matches!(
            err,
            DiagramError::Invalid(ref v) if matches!(v[0], Violation::IntertwiningViolation { .. })
        ));
        assert!(err.to_string().contains("intertwining violation"));
    }

    #[test]
    fn syntax_errors_report_position() {
        assert_eq!(
            parse_diagram("a b\nc \"d\n").unwrap_err(),
            DiagramError::Syntax {
                line: 2,
                column: 3,
                message: "unexpected character '\"'".into()
            }
        );
        assert!(matches!(
            parse_diagram("a b / / c d").unwrap_err(),
            DiagramError::Syntax {
                line: 1,
                column: 7,
                ..
            }
        ));
        assert!(matches!(
            parse_diagram("a b /").unwrap_err(),
            DiagramError::Syntax {
                line: 1,
                column: 6,
                ..
            }
        ));
    }

    #[test]
    fn other_parse_errors() {
        assert!(matches!(
            parse_diagram("a a b").unwrap_err(),
            DiagramError::Invalid(ref v) if matches!(v[0], Violation::DuplicateAtomInContext { .. })
        ));
        assert!(matches!(
            parse_diagram("a b\nc\n").unwrap_err(),
            DiagramError::Invalid(ref v) if matches!(v[0], Violation::ContextTooSmall { .. })
        ));
        assert_eq!(
            parse_diagram("# nothing\n").unwrap_err(),
            DiagramError::Invalid(vec![Violation::EmptyDiagram])
        );
    }

    /// Random hypergraphs pasted at single atoms: each new context reuses
    /// at most one existing atom.
    fn arb_source() -> impl Strategy<Value = String> {
        prop::collection::vec(
            (2usize..5, prop::option::of(0usize..64), any::<bool>()),
            1..8,
        )
        .prop_map(|specs| {
            let mut next = 0usize;
            let mut lines = Vec::new();
            for (size, reuse, same_line) in specs {
                let mut atoms: Vec<String> = Vec::new();
                if let Some(r) = reuse {
                    if next > 0 {
                        atoms.push(format!("a{}", r % next));
                    }
                }
                while atoms.len() < size {
                    atoms.push(format!("a{next}"));
                    next += 1;
                }
                let text = atoms.join(" ");
                match (same_line, lines.last_mut()) {
                    (true, Some(last)) => *last = format!("{last} / {text}"),
                    _ => lines.push(text),
                }
            }
            lines.join("\n")
        })
    }

    proptest! {
        #[test]
        fn serialize_then_parse_round_trips(src in arb_source()) {
            let d = parse_diagram(&src).unwrap();
            let again = parse_diagram(&to_dsl(&d)).unwrap();
            prop_assert_eq!(&again, &d);
            for i in 0..d.num_contexts() {
                for j in i + 1..d.num_contexts() {
                    let shared = d.contexts()[i].iter().filter(|a| d.contexts()[j].contains(a)).count();
                    prop_assert!(shared <= 1);
                }
            }
        }
    }
}
