use std::path::Path;

use greechie::diagram::{parse_diagram, DiagramError, OrthoDiagram};
use greechie::Error;
use serde_json::{json, Value};

/// A domain failure, reported on stderr as
/// `{"error": {"kind": ..., "message": ..., "details": ...}}`.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub details: Option<Value>,
}

impl CliError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            details: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut e = json!({"kind": self.kind, "message": self.message});
        if let Some(d) = &self.details {
            e["details"] = d.clone();
        }
        json!({ "error": e }).to_string()
    }
}

impl<E: Into<Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        let e: Error = e.into();
        let details = match &e {
            Error::Diagram(DiagramError::Invalid(v)) => serde_json::to_value(v).ok(),
            Error::Diagram(DiagramError::Syntax { line, column, .. }) => {
                Some(json!({"line": line, "column": column}))
            }
            Error::Polytope(greechie::polytope::PolytopeError::InadmissibleWeight(v)) => {
                serde_json::to_value(v).ok()
            }
            _ => None,
        };
        CliError {
            kind: e.kind(),
            message: e.to_string(),
            details,
        }
    }
}

/// File contents. A bare file name that does not exist falls back to the
/// bundled corpus file of that name.
pub fn read_text(path: &Path) -> Result<String, CliError> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(err) => {
            let bare = path.parent().is_none_or(|p| p.as_os_str().is_empty());
            if bare && !path.exists() {
                if let Some(text) = path.to_str().and_then(greechie::corpus::file) {
                    return Ok(text.to_string());
                }
            }
            Err(CliError::new("io", format!("{}: {err}", path.display())))
        }
    }
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

/// `.json` files hold `{"atoms", "contexts"}`; anything else is the text
/// format.
pub fn diagram(path: &Path) -> Result<OrthoDiagram, CliError> {
    let text = read_text(path)?;
    let d = if is_json(path) {
        OrthoDiagram::from_json(&text)?
    } else {
        parse_diagram(&text)?
    };
    Ok(d)
}
