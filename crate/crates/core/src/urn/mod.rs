//! Generalized urn models: balls carrying one symbol per color, observed
//! through a single color filter at a time.

mod experiment;
mod relational;

use indexmap::IndexMap;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramError, OrthoDiagram};
use crate::rational::{self, Rational};
use crate::states::RationalWeight;

pub use experiment::{
    chsh_statistic, exact_chsh, run_experiment, ChshReport, ChshVariant, Draw, ExperimentRecord,
    PairStat, Protocol, ALICE_COLORS, BOB_COLORS, SETTING_PAIRS,
};
pub use relational::{
    relational_urn, squared_subensemble, subensemble, subensemble_predicate, two_digit_universe,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UrnError {
    #[error("malformed urn: {0}")]
    Malformed(String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("no symbol for ball type `{ball_type}` in color `{color}`")]
    MissingSymbol { ball_type: String, color: String },
    #[error("load must be nonnegative, got {value} for `{ball_type}`")]
    NegativeLoad { ball_type: String, value: Rational },
    #[error("load sums to {0}, not 1")]
    LoadSum(Rational),
    #[error("symbol `{0}` is not a binary digit")]
    NonBinarySymbol(String),
    #[error("no draws for setting pair ({0}, {1})")]
    EmptySettingPair(String, String),
    #[error("number of draws must be positive")]
    NoDraws,
    #[error("every color induces a single block; no contexts remain")]
    NoContexts,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `symbols[type][color]` is the symbol painted on `type` in `color`;
/// `load[type]` is the probability of drawing `type`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UrnModel {
    pub types: Vec<String>,
    pub colors: Vec<String>,
    pub symbols: IndexMap<String, IndexMap<String, String>>,
    #[serde(with = "rational::text::map")]
    pub load: IndexMap<String, Rational>,
}

impl UrnModel {
    /// Validated urn: unique ids, a total symbol table and a nonnegative
    /// load summing to one.
    pub fn new(
        types: Vec<String>,
        colors: Vec<String>,
        symbols: IndexMap<String, IndexMap<String, String>>,
        load: IndexMap<String, Rational>,
    ) -> Result<Self, UrnError> {
        let urn = UrnModel {
            types,
            colors,
            symbols,
            load,
        };
        urn.validate()?;
        Ok(urn)
    }

    pub fn from_json(text: &str) -> Result<Self, UrnError> {
        let urn: UrnModel =
            serde_json::from_str(text).map_err(|e| UrnError::Malformed(e.to_string()))?;
        urn.validate()?;
        Ok(urn)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    fn validate(&self) -> Result<(), UrnError> {
        let malformed = |m: String| Err(UrnError::Malformed(m));
        if self.types.is_empty() {
            return malformed("no ball types".into());
        }
        if self.colors.is_empty() {
            return malformed("no colors".into());
        }
        for (what, ids) in [("type", &self.types), ("color", &self.colors)] {
            for (i, id) in ids.iter().enumerate() {
                if ids[..i].contains(id) {
                    return malformed(format!("duplicate {what} `{id}`"));
                }
            }
        }
        for t in self.symbols.keys() {
            if !self.types.contains(t) {
                return malformed(format!("symbols for unknown type `{t}`"));
            }
        }
        for t in &self.types {
            for c in &self.colors {
                if self.symbols.get(t).and_then(|row| row.get(c)).is_none() {
                    return Err(UrnError::MissingSymbol {
                        ball_type: t.clone(),
                        color: c.clone(),
                    });
                }
            }
            if let Some(row) = self.symbols.get(t) {
                if let Some(c) = row.keys().find(|c| !self.colors.contains(c)) {
                    return Err(UrnError::UnknownColor(c.clone()));
                }
            }
        }
        for t in self.load.keys() {
            if !self.types.contains(t) {
                return malformed(format!("load for unknown type `{t}`"));
            }
        }
        let mut sum = Rational::zero();
        for t in &self.types {
            let v = self.load.get(t).cloned().unwrap_or_else(Rational::zero);
            if v.is_negative() {
                return Err(UrnError::NegativeLoad {
                    ball_type: t.clone(),
                    value: v,
                });
            }
            sum += v;
        }
        if sum != Rational::from_integer(1.into()) {
            return Err(UrnError::LoadSum(sum));
        }
        Ok(())
    }

    pub fn symbol(&self, ball_type: &str, color: &str) -> &str {
        &self.symbols[ball_type][color]
    }

    /// Load of a type; types absent from the load map weigh zero.
    pub fn load_of(&self, ball_type: &str) -> Rational {
        self.load
            .get(ball_type)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Same types and symbols with a new load.
    pub fn with_load(&self, load: IndexMap<String, Rational>) -> Result<Self, UrnError> {
        UrnModel::new(
            self.types.clone(),
            self.colors.clone(),
            self.symbols.clone(),
            load,
        )
    }
}

/// Ball types grouped by their symbol in `color`. Blocks appear in order of
/// their first member; members keep type order.
pub fn induced_partition(urn: &UrnModel, color: &str) -> Result<Vec<Vec<String>>, UrnError> {
    if !urn.colors.iter().any(|c| c == color) {
        return Err(UrnError::UnknownColor(color.to_string()));
    }
    let mut blocks: IndexMap<&str, Vec<String>> = IndexMap::new();
    for t in &urn.types {
        blocks
            .entry(urn.symbol(t, color))
            .or_default()
            .push(t.clone());
    }
    Ok(blocks.into_values().collect())
}

/// Atom id of a block of ball types: `{t1,t2,...}`.
pub fn block_id(block: &[String]) -> String {
    format!("{{{}}}", block.join(","))
}

/// One context per color, one atom per block; equal blocks are the same
/// atom. Colors inducing a single block and repeats of an earlier color's
/// partition add no context. The load is pushed forward to block weights.
pub fn urn_to_diagram(urn: &UrnModel) -> Result<(OrthoDiagram, RationalWeight), UrnError> {
    let mut contexts: Vec<Vec<String>> = Vec::new();
    let mut seen: Vec<Vec<Vec<String>>> = Vec::new();
    for color in &urn.colors {
        let mut p = induced_partition(urn, color)?;
        if p.len() < 2 {
            continue;
        }
        p.sort();
        if seen.contains(&p) {
            continue;
        }
        contexts.push(
            induced_partition(urn, color)?
                .iter()
                .map(|b| block_id(b))
                .collect(),
        );
        seen.push(p);
    }
    if contexts.is_empty() {
        return Err(UrnError::NoContexts);
    }
    let diagram = OrthoDiagram::new(&contexts)?;
    let mut values = IndexMap::new();
    for color in &urn.colors {
        for block in induced_partition(urn, color)? {
            let id = block_id(&block);
            if diagram.atom_index(&id).is_some() && !values.contains_key(&id) {
                let w: Rational = block.iter().map(|t| urn.load_of(t)).sum();
                values.insert(id, w);
            }
        }
    }
    let mut ordered = IndexMap::new();
    for a in diagram.atoms() {
        ordered.insert(a.clone(), values[a].clone());
    }
    Ok((diagram, RationalWeight { values: ordered }))
}
