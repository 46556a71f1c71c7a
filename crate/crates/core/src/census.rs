//! Integer partitions and the genus census of periodic mapping classes.
//!
//! A partition `g = Σ k·p_k` corresponds to the map built from `p_k` copies
//! of the period-`k` piece, whose periodic expansion is
//!
//! ```text
//! orientable:      a_1 = −2(p_1 − 1),  a_k = −2p_k  (k ≠ 1)
//! non-orientable:  a_1 = 2 − p_1,      a_k = −p_k   (k ≠ 1)
//! ```
//!
//! Distinct partitions give distinct expansions, hence non-conjugate
//! mapping classes, so `P(g)` bounds the number of conjugacy classes of
//! mapping classes containing Morse–Smale diffeomorphisms from below.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::arith::DoldClass;

/// A partition stored as multiplicities `k ↦ p_k` (no zero entries).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: BTreeMap<u64, u64>,
}

impl Partition {
    /// From a list of parts in any order; zero parts are ignored.
    pub fn from_parts<I: IntoIterator<Item = u64>>(parts: I) -> Self {
        let mut map = BTreeMap::new();
        for k in parts.into_iter().filter(|&k| k > 0) {
            *map.entry(k).or_insert(0) += 1;
        }
        Self { parts: map }
    }

    pub fn from_multiplicities(parts: BTreeMap<u64, u64>) -> Self {
        Self {
            parts: parts.into_iter().filter(|&(k, p)| k > 0 && p > 0).collect(),
        }
    }

    /// `p_k`.
    pub fn multiplicity(&self, k: u64) -> u64 {
        self.parts.get(&k).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<u64, u64> {
        &self.parts
    }

    /// The partitioned integer `Σ k·p_k`.
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|(k, p)| k * p).sum()
    }

    /// Parts in nonincreasing order.
    pub fn parts(&self) -> Vec<u64> {
        self.parts
            .iter()
            .rev()
            .flat_map(|(&k, &p)| std::iter::repeat_n(k, p as usize))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `P(n)` by Euler's pentagonal-number recurrence.
pub fn partition_count(n: u64) -> BigUint {
    let n = n as usize;
    let mut table: Vec<BigInt> = Vec::with_capacity(n + 1);
    table.push(BigInt::from(1));
    for i in 1..=n {
        let mut sum = BigInt::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = table[i - g1].clone();
            if g2 <= i {
                term += &table[i - g2];
            }
            if k % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        table.push(sum);
    }
    table[n]
        .to_biguint()
        .expect("partition counts are nonnegative")
}

/// Iterator over the partitions of `n` in decreasing lexicographic order of
/// their (nonincreasing) part lists, starting from `{n}`.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u64>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        let out = Partition::from_parts(parts.iter().copied());
        self.current = successor(parts);
        Some(out)
    }
}

/// Next partition in reverse lexicographic order, `None` after `{1, ..., 1}`.
fn successor(mut parts: Vec<u64>) -> Option<Vec<u64>> {
    let mut freed = 0u64;
    while parts.last() == Some(&1) {
        parts.pop();
        freed += 1;
    }
    let last = parts.pop()?;
    let k = last - 1;
    parts.push(k);
    freed += 1;
    while freed >= k {
        parts.push(k);
        freed -= k;
    }
    if freed > 0 {
        parts.push(freed);
    }
    Some(parts)
}

/// All partitions of `n`; `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: u64) -> Partitions {
    Partitions {
        current: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// `exp(π√(2N/3)) / (4N√3)`.
pub fn hardy_ramanujan_estimate(n: u64) -> f64 {
    let n = n as f64;
    (PI * (2.0 * n / 3.0).sqrt()).exp() / (4.0 * n * 3f64.sqrt())
}

pub fn partition_to_dold_orientable(p: &Partition) -> DoldClass {
    let mut pairs: Vec<(u64, BigInt)> = p
        .multiplicities()
        .iter()
        .filter(|(&k, _)| k != 1)
        .map(|(&k, &m)| (k, BigInt::from(-2) * m))
        .collect();
    pairs.push((1, BigInt::from(-2) * (BigInt::from(p.multiplicity(1)) - 1)));
    DoldClass::from_pairs(pairs)
}

pub fn partition_to_dold_nonorientable(p: &Partition) -> DoldClass {
    let mut pairs: Vec<(u64, BigInt)> = p
        .multiplicities()
        .iter()
        .filter(|(&k, _)| k != 1)
        .map(|(&k, &m)| (k, -BigInt::from(m)))
        .collect();
    pairs.push((1, BigInt::from(2) - p.multiplicity(1)));
    DoldClass::from_pairs(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correspondence {
    Orientable,
    NonOrientable,
}

impl Correspondence {
    pub fn apply(self, p: &Partition) -> DoldClass {
        match self {
            Self::Orientable => partition_to_dold_orientable(p),
            Self::NonOrientable => partition_to_dold_nonorientable(p),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Orientable => "orientable",
            Self::NonOrientable => "nonorientable",
        }
    }
}

impl std::str::FromStr for Correspondence {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "orientable" => Ok(Self::Orientable),
            "nonorientable" => Ok(Self::NonOrientable),
            other => Err(format!("unknown correspondence `{other}`")),
        }
    }
}

/// Census of genus `g`: `P(g)` is a lower bound on the number of conjugacy
/// classes of mapping classes containing Morse–Smale diffeomorphisms, on
/// both `S_g` and `N_g`.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub genus: u64,
    pub exact_count: BigUint,
    pub hr_estimate: f64,
    /// `hr_estimate / exact_count`.
    pub ratio: f64,
    pub correspondence: Option<Correspondence>,
    /// Partitions with their periodic expansions, when requested.
    pub sample_dold_classes: Option<Vec<(Partition, DoldClass)>>,
}

/// Builds the census; with `sample = Some((c, limit))` the first `limit`
/// partitions (all of them for `None`) are listed with their image under
/// `c`.
pub fn census(g: u64, sample: Option<(Correspondence, Option<usize>)>) -> CensusReport {
    let exact_count = partition_count(g);
    let hr_estimate = hardy_ramanujan_estimate(g);
    let ratio = hr_estimate / exact_count.to_f64().unwrap_or(f64::INFINITY);
    let sample_dold_classes = sample.map(|(c, limit)| {
        enumerate_partitions(g)
            .take(limit.unwrap_or(usize::MAX))
            .map(|p| {
                let d = c.apply(&p);
                (p, d)
            })
            .collect()
    });
    CensusReport {
        genus: g,
        exact_count,
        hr_estimate,
        ratio,
        correspondence: sample.map(|(c, _)| c),
        sample_dold_classes,
    }
}
