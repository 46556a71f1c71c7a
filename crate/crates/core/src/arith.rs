//! Number-theoretic kernel.
//!
//! Möbius function, divisors, the elementary periodic sequences
//! `reg_k(n)` (equal to `k` when `k | n`, else `0`) and the Dold transform
//! between a sequence of Lefschetz numbers and the coefficients of its
//! periodic expansion
//!
//! ```text
//! L(f^n) = Σ_k a_k reg_k(n),      a_n = (1/n) Σ_{k | n} μ(n/k) L(f^k).
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The Möbius function μ(n).
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn moebius(n: u64) -> i32 {
    assert!(n >= 1, "moebius is defined for positive integers");
    let mut sign = 1;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Euler's totient φ(n); φ(0) is taken to be 0.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n` in increasing order. Empty for `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Elementary periodic sequence: `k` if `k | n`, otherwise `0`.
///
/// Equivalently the sum of the `n`-th powers of all `k`-th roots of unity.
pub fn reg(k: u64, n: u64) -> u64 {
    if k != 0 && n.is_multiple_of(k) {
        k
    } else {
        0
    }
}

/// A finite sequence of Lefschetz numbers `n ↦ L(f^n)` on a divisor-closed
/// domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzSequence {
    values: BTreeMap<u64, BigInt>,
}

impl LefschetzSequence {
    /// Validates that the domain is nonempty and closed under divisors.
    pub fn new(values: BTreeMap<u64, BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDomain("empty domain".into()));
        }
        for &n in values.keys() {
            if n == 0 {
                return Err(Error::InvalidDomain("0 is not a valid iterate".into()));
            }
            if let Some(missing) = divisors(n).into_iter().find(|d| !values.contains_key(d)) {
                return Err(Error::InvalidDomain(format!(
                    "{missing} divides {n} but has no value"
                )));
            }
        }
        Ok(Self { values })
    }

    /// The sequence `L_1, ..., L_N` given as a list.
    pub fn from_prefix<I, T>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let values = values
            .into_iter()
            .zip(1u64..)
            .map(|(v, n)| (n, v.into()))
            .collect();
        Self::new(values)
    }

    pub fn get(&self, n: u64) -> Option<&BigInt> {
        self.values.get(&n)
    }

    pub fn domain(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.values.iter().map(|(&n, v)| (n, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ_{k | n} μ(n/k) L_k`, which Dold's theorem says is divisible by `n`.
    fn moebius_sum(&self, n: u64) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for k in divisors(n) {
            let lk = self.values.get(&k).ok_or(Error::OutsideDomain(k))?;
            match moebius(n / k) {
                1 => acc += lk,
                -1 => acc -= lk,
                _ => {}
            }
        }
        Ok(acc)
    }
}

/// Finitely supported coefficients `n ↦ a_n` of a periodic expansion.
///
/// Zero coefficients are never stored, so equality is equality of the
/// underlying functions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DoldClass {
    coefficients: BTreeMap<u64, BigInt>,
}

impl DoldClass {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a class from `(n, a_n)` pairs, summing repeated indices and
    /// dropping zeros. Index `0` is ignored.
    pub fn from_pairs<I, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u64, T)>,
        T: Into<BigInt>,
    {
        let mut out = Self::new();
        for (n, a) in pairs {
            out.add(n, &a.into());
        }
        out
    }

    fn add(&mut self, n: u64, a: &BigInt) {
        if n == 0 || a.is_zero() {
            return;
        }
        let entry = self.coefficients.entry(n).or_insert_with(BigInt::zero);
        *entry += a;
        if entry.is_zero() {
            self.coefficients.remove(&n);
        }
    }

    /// The coefficient `a_n`; zero outside the support.
    pub fn get(&self, n: u64) -> BigInt {
        self.coefficients.get(&n).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.coefficients.keys().copied().collect()
    }

    pub fn odd_support(&self) -> BTreeSet<u64> {
        self.coefficients
            .keys()
            .copied()
            .filter(|n| n % 2 == 1)
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coefficients.iter().map(|(&n, a)| (n, a))
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `Σ_n n·a_n`, the Lefschetz number of any iterate divisible by every
    /// index in the support.
    pub fn weighted_sum(&self) -> BigInt {
        self.coefficients
            .iter()
            .map(|(&n, a)| a * BigInt::from(n))
            .sum()
    }

    /// Restriction to indices in `domain`.
    pub fn restrict(&self, domain: &BTreeSet<u64>) -> Self {
        Self {
            coefficients: self
                .coefficients
                .iter()
                .filter(|(n, _)| domain.contains(n))
                .map(|(&n, a)| (n, a.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for DoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (n, a)) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}: {a}")?;
        }
        f.write_str("}")
    }
}

/// Möbius inversion of a Lefschetz sequence into its periodic-expansion
/// coefficients.
///
/// Fails with [`Error::DoldViolation`] if some `a_n` is not an integer,
/// i.e. the input cannot be the Lefschetz sequence of any map.
pub fn dold_coefficients(seq: &LefschetzSequence) -> Result<DoldClass> {
    let mut out = DoldClass::new();
    for n in seq.domain() {
        let numerator = seq.moebius_sum(n)?;
        let (q, r) = numerator.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::DoldViolation { n, numerator });
        }
        out.add(n, &q);
    }
    Ok(out)
}

/// `L_n = Σ_{k | n} k·a_k`.
pub fn lefschetz_from_dold(d: &DoldClass, n: u64) -> BigInt {
    d.iter()
        .filter(|&(k, _)| reg(k, n) != 0)
        .map(|(k, a)| a * BigInt::from(k))
        .sum()
}

/// Whether `n` divides `Σ_{k | n} μ(n/k) L_k`.
///
/// Errors with [`Error::OutsideDomain`] if a divisor of `n` has no value.
pub fn dold_congruence_check(seq: &LefschetzSequence, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::OutsideDomain(0));
    }
    let s = seq.moebius_sum(n)?;
    Ok(s.mod_floor(&BigInt::from(n)).is_zero())
}
