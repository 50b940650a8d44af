//! Two agents reading one shared ball. Alice filters in red or blue, Bob in
//! green or orange.
//!
//! Sampling contract (format version 1): a `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)`. Each draw consumes one `u64` `u` for the ball
//! type, the first type whose cumulative load exceeds `u / 2^64`, and, for
//! [`Protocol::SeededUniform`] only, one more `u64` whose top two bits pick
//! the setting pair in [`SETTING_PAIRS`] order.

use num::{BigInt, One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use super::{UrnError, UrnModel};
use crate::float::F17;
use crate::rational::{self, Rational};

pub const ALICE_COLORS: [&str; 2] = ["red", "blue"];
pub const BOB_COLORS: [&str; 2] = ["green", "orange"];
/// Round-robin order and the index space of uniform setting choice.
pub const SETTING_PAIRS: [(&str, &str); 4] = [
    ("red", "green"),
    ("red", "orange"),
    ("blue", "green"),
    ("blue", "orange"),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Protocol {
    Fixed { alice: String, bob: String },
    RoundRobin,
    SeededUniform,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Draw {
    pub ball_type: String,
    pub alice_color: String,
    pub alice_symbol: String,
    pub bob_color: String,
    pub bob_symbol: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentRecord {
    pub seed: u64,
    pub protocol: Protocol,
    pub draws: Vec<Draw>,
}

/// Deterministic in `(urn, protocol, n_draws, seed)`.
pub fn run_experiment(
    urn: &UrnModel,
    protocol: &Protocol,
    n_draws: usize,
    seed: u64,
) -> Result<ExperimentRecord, UrnError> {
    if n_draws == 0 {
        return Err(UrnError::NoDraws);
    }
    let needed: Vec<&str> = match protocol {
        Protocol::Fixed { alice, bob } => vec![alice.as_str(), bob.as_str()],
        _ => ALICE_COLORS.iter().chain(&BOB_COLORS).copied().collect(),
    };
    for c in needed {
        if !urn.colors.iter().any(|x| x == c) {
            return Err(UrnError::UnknownColor(c.to_string()));
        }
    }
    // thresholds[i] = cumulative load through type i, scaled by 2^64
    let two64 = BigInt::one() << 64;
    let mut acc = Rational::zero();
    let thresholds: Vec<(BigInt, BigInt)> = urn
        .types
        .iter()
        .map(|t| {
            acc += urn.load_of(t);
            (acc.numer() * &two64, acc.denom().clone())
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(n_draws);
    for i in 0..n_draws {
        let u = BigInt::from(rng.next_u64());
        let k = thresholds
            .iter()
            .position(|(num, den)| &u * den < *num)
            .expect("load sums to one");
        let ball_type = &urn.types[k];
        let (alice, bob) = match protocol {
            Protocol::Fixed { alice, bob } => (alice.as_str(), bob.as_str()),
            Protocol::RoundRobin => SETTING_PAIRS[i % 4],
            Protocol::SeededUniform => SETTING_PAIRS[(rng.next_u64() >> 62) as usize],
        };
        draws.push(Draw {
            ball_type: ball_type.clone(),
            alice_color: alice.to_string(),
            alice_symbol: urn.symbol(ball_type, alice).to_string(),
            bob_color: bob.to_string(),
            bob_symbol: urn.symbol(ball_type, bob).to_string(),
        });
    }
    Ok(ExperimentRecord {
        seed,
        protocol: protocol.clone(),
        draws,
    })
}

/// Which setting pair carries the minus sign in `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChshVariant {
    RedGreen,
    RedOrange,
    #[default]
    BlueGreen,
    BlueOrange,
}

impl ChshVariant {
    pub const ALL: [ChshVariant; 4] = [
        ChshVariant::RedGreen,
        ChshVariant::RedOrange,
        ChshVariant::BlueGreen,
        ChshVariant::BlueOrange,
    ];

    fn sign(self, pair: usize) -> i64 {
        if SETTING_PAIRS[pair] == SETTING_PAIRS[self as usize] {
            -1
        } else {
            1
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "red-green" => Some(ChshVariant::RedGreen),
            "red-orange" => Some(ChshVariant::RedOrange),
            "blue-green" => Some(ChshVariant::BlueGreen),
            "blue-orange" => Some(ChshVariant::BlueOrange),
            _ => None,
        }
    }
}

fn spin(symbol: &str) -> Result<i64, UrnError> {
    match symbol {
        "0" => Ok(1),
        "1" => Ok(-1),
        other => Err(UrnError::NonBinarySymbol(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairStat {
    pub alice: String,
    pub bob: String,
    pub count: usize,
    pub expectation: F17,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChshReport {
    pub variant: ChshVariant,
    pub s: F17,
    pub pairs: Vec<PairStat>,
}

/// Empirical `S`; with the default variant
/// `S = E(r,g) + E(b,o) + E(r,o) - E(b,g)`, symbols `0 -> +1`, `1 -> -1`.
pub fn chsh_statistic(
    record: &ExperimentRecord,
    variant: ChshVariant,
) -> Result<ChshReport, UrnError> {
    let mut sums = [0i64; 4];
    let mut counts = [0usize; 4];
    for d in &record.draws {
        let a = spin(&d.alice_symbol)?;
        let b = spin(&d.bob_symbol)?;
        if let Some(k) = SETTING_PAIRS
            .iter()
            .position(|&(x, y)| x == d.alice_color && y == d.bob_color)
        {
            sums[k] += a * b;
            counts[k] += 1;
        }
    }
    let mut pairs = Vec::with_capacity(4);
    let mut s = 0.0;
    for k in 0..4 {
        let (alice, bob) = SETTING_PAIRS[k];
        if counts[k] == 0 {
            return Err(UrnError::EmptySettingPair(alice.into(), bob.into()));
        }
        let e = sums[k] as f64 / counts[k] as f64;
        s += variant.sign(k) as f64 * e;
        pairs.push(PairStat {
            alice: alice.into(),
            bob: bob.into(),
            count: counts[k],
            expectation: F17(e),
        });
    }
    Ok(ChshReport {
        variant,
        s: F17(s),
        pairs,
    })
}

/// Load-weighted `S` and the four exact expectations in
/// [`SETTING_PAIRS`] order.
pub fn exact_chsh(
    urn: &UrnModel,
    variant: ChshVariant,
) -> Result<(Rational, [Rational; 4]), UrnError> {
    for c in ALICE_COLORS.iter().chain(&BOB_COLORS) {
        if !urn.colors.iter().any(|x| x == c) {
            return Err(UrnError::UnknownColor(c.to_string()));
        }
    }
    let mut e: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
    for t in &urn.types {
        let w = urn.load_of(t);
        for (k, &(x, y)) in SETTING_PAIRS.iter().enumerate() {
            let prod = spin(urn.symbol(t, x))? * spin(urn.symbol(t, y))?;
            e[k] += &w * rational::from_int(prod);
        }
    }
    let s = (0..4)
        .map(|k| rational::from_int(variant.sign(k)) * &e[k])
        .sum();
    Ok((s, e))
}
