//! Bell numbers: the number of set partitions of an `n`-element set.

pub const MAX_N: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("bell number argument {0} out of range 1..={MAX_N}")]
pub struct BellRangeError(pub u32);

/// Computes `B_n` with the Bell triangle: each row starts with the last
/// entry of the previous row, and every further entry adds its left
/// neighbour to the entry above that neighbour.
pub fn bell_number(n: u32) -> Result<u64, BellRangeError> {
    if !(1..=MAX_N).contains(&n) {
        return Err(BellRangeError(n));
    }
    let mut row = vec![1u64];
    for _ in 1..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for above in &row {
            let left = *next.last().unwrap();
            next.push(left + above);
        }
        row = next;
    }
    Ok(*row.last().unwrap())
}
