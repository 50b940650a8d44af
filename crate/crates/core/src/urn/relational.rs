//! Relational encodings: ball types as digit strings, one digit per color,
//! and subensembles cut out by digit predicates.

use indexmap::IndexMap;

use super::{UrnError, UrnModel};
use crate::rational::Rational;

pub fn two_digit_universe() -> Vec<String> {
    ["00", "01", "10", "11"].map(String::from).to_vec()
}

/// Predicate of subensemble `E_k`, `k = 1..=6`, on two-digit strings:
/// first digit 0, first 1, second 0, second 1, digits equal, digits differ.
pub fn subensemble_predicate(k: usize) -> Option<fn(&[u8]) -> bool> {
    let p: fn(&[u8]) -> bool = match k {
        1 => |d| d[0] == b'0',
        2 => |d| d[0] == b'1',
        3 => |d| d[1] == b'0',
        4 => |d| d[1] == b'1',
        5 => |d| d[0] == d[1],
        6 => |d| d[0] != d[1],
        _ => return None,
    };
    Some(p)
}

/// Members of `E_k` among the two-digit strings, in ascending order.
pub fn subensemble(k: usize) -> Option<Vec<String>> {
    let p = subensemble_predicate(k)?;
    Some(
        two_digit_universe()
            .into_iter()
            .filter(|s| p(s.as_bytes()))
            .collect(),
    )
}

/// Members of `(E_k)^2` among the four-digit strings: both digit pairs
/// satisfy `E_k`.
pub fn squared_subensemble(k: usize) -> Option<Vec<String>> {
    let p = subensemble_predicate(k)?;
    Some(
        (0..16u32)
            .map(|n| format!("{n:04b}"))
            .filter(|s| p(&s.as_bytes()[..2]) && p(&s.as_bytes()[2..]))
            .collect(),
    )
}

/// Urn with types `1..=n` for the given digit rows, digit `i` painted in
/// `colors[i]`, and uniform load.
pub fn relational_urn<S: AsRef<str>>(rows: &[S], colors: &[&str]) -> Result<UrnModel, UrnError> {
    let types: Vec<String> = (1..=rows.len()).map(|i| i.to_string()).collect();
    let mut symbols = IndexMap::new();
    for (t, row) in types.iter().zip(rows) {
        let row = row.as_ref();
        if row.chars().count() != colors.len() {
            return Err(UrnError::Malformed(format!(
                "row `{row}` needs {} digits",
                colors.len()
            )));
        }
        symbols.insert(
            t.clone(),
            colors
                .iter()
                .zip(row.chars())
                .map(|(c, d)| (c.to_string(), d.to_string()))
                .collect(),
        );
    }
    let n = rows.len() as i64;
    let load = types
        .iter()
        .map(|t| (t.clone(), Rational::new(1.into(), n.into())))
        .collect();
    UrnModel::new(
        types,
        colors.iter().map(|c| c.to_string()).collect(),
        symbols,
        load,
    )
}
