//! Lefschetz zeta functions `ζ(z) = exp(Σ_n L_n z^n / n)` written as finite
//! products of binomials `(1 + δ·z^r)^m`, `δ = ±1`.
//!
//! Since `−log(1 − z^k) = Σ_j z^{kj}/j`, a sequence with periodic expansion
//! `L_n = Σ_k a_k reg_k(n)` has `ζ(z) = Π_k (1 − z^k)^{−a_k}`; this product
//! of `(1 − z^k)` powers is unique, and [`canonicalize`] rewrites any
//! binomial product into it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::DoldClass;
use crate::error::{Error, Result};

/// Sign `δ` of a binomial factor `(1 + δ·z^r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Delta {
    /// `(1 − z^r)`
    Minus,
    /// `(1 + z^r)`
    Plus,
}

impl Delta {
    fn symbol(self) -> char {
        match self {
            Self::Minus => '-',
            Self::Plus => '+',
        }
    }
}

/// A normalized product `Π (1 + δ·z^r)^m`: equal `(δ, r)` pairs are merged
/// and zero exponents dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ZetaFactorization {
    factors: BTreeMap<(Delta, u64), BigInt>,
}

impl ZetaFactorization {
    /// The empty product, `ζ = 1`.
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplies in `(1 + δ·z^r)^m`.
    ///
    /// # Panics
    ///
    /// Panics if `r == 0`.
    pub fn push(&mut self, delta: Delta, r: u64, m: impl Into<BigInt>) {
        assert!(r >= 1, "binomial factors need r >= 1");
        let m = m.into();
        if m.is_zero() {
            return;
        }
        let entry = self.factors.entry((delta, r)).or_insert_with(BigInt::zero);
        *entry += m;
        if entry.is_zero() {
            self.factors.remove(&(delta, r));
        }
    }

    pub fn from_factors<I, T>(factors: I) -> Self
    where
        I: IntoIterator<Item = (Delta, u64, T)>,
        T: Into<BigInt>,
    {
        let mut out = Self::new();
        for (delta, r, m) in factors {
            out.push(delta, r, m);
        }
        out
    }

    /// `Π (1 − z^k)^{e_k}`.
    pub fn from_canonical(exponents: &BTreeMap<u64, BigInt>) -> Self {
        Self::from_factors(exponents.iter().map(|(&k, e)| (Delta::Minus, k, e.clone())))
    }

    pub fn factors(&self) -> impl Iterator<Item = (Delta, u64, &BigInt)> {
        self.factors.iter().map(|(&(d, r), m)| (d, r, m))
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total exponent of `(1 + δ·z^r)`.
    pub fn exponent(&self, delta: Delta, r: u64) -> BigInt {
        self.factors.get(&(delta, r)).cloned().unwrap_or_default()
    }
}

impl fmt::Display for ZetaFactorization {
    /// Same grammar as [`FromStr`]: `SIGN,r,m` terms joined by `;`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (delta, r, m)) in self.factors().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{},{r},{m}", delta.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for ZetaFactorization {
    type Err = Error;

    /// Parses semicolon-separated terms `SIGN,r,m` with `SIGN` one of `+`,
    /// `-` (or `−`); `"+,3,2;-,1,-1"` is `(1 + z³)²(1 − z)^{−1}`. Whitespace
    /// is ignored and repeated terms are merged.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Self::new();
        for term in cleaned.split(';').filter(|t| !t.is_empty()) {
            let fields: Vec<&str> = term.split(',').collect();
            let [sign, r, m] = fields[..] else {
                return Err(Error::FactorParse(format!(
                    "term `{term}` must have the form SIGN,r,m"
                )));
            };
            let delta = match sign {
                "+" => Delta::Plus,
                "-" | "\u{2212}" => Delta::Minus,
                other => {
                    return Err(Error::FactorParse(format!(
                        "bad sign `{other}` in `{term}`"
                    )))
                }
            };
            let r: u64 = r
                .parse()
                .map_err(|_| Error::FactorParse(format!("bad power `{r}` in `{term}`")))?;
            if r == 0 {
                return Err(Error::FactorParse(format!(
                    "power must be positive in `{term}`"
                )));
            }
            let m: BigInt = m
                .replace('\u{2212}', "-")
                .parse()
                .map_err(|_| Error::FactorParse(format!("bad exponent `{m}` in `{term}`")))?;
            out.push(delta, r, m);
        }
        Ok(out)
    }
}

/// Truncated power series with integer coefficients, index = degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Truncation order `N`; coefficients are known for degrees `0..=N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn mul_truncated(&self, rhs: &[BigInt]) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }
}

/// `ζ = Π_k (1 − z^k)^{−a_k}`.
pub fn zeta_from_dold(d: &DoldClass) -> ZetaFactorization {
    ZetaFactorization::from_factors(d.iter().map(|(k, a)| (Delta::Minus, k, -a)))
}

/// Coefficients of the product through degree `n`.
pub fn series_expand(f: &ZetaFactorization, n: usize) -> PowerSeries {
    let mut acc = PowerSeries {
        coeffs: {
            let mut c = vec![BigInt::zero(); n + 1];
            c[0] = BigInt::one();
            c
        },
    };
    for (delta, r, m) in f.factors() {
        let r = r as usize;
        // (1 + u)^m = Σ_j binom(m, j) u^j with u = δ z^r; binom(m, j) for
        // negative m by the falling-factorial recurrence.
        let mut factor = vec![BigInt::zero(); n + 1];
        let mut binom = BigInt::one();
        let mut j = 0usize;
        while j * r <= n {
            let sign_neg = delta == Delta::Minus && j % 2 == 1;
            factor[j * r] = if sign_neg { -&binom } else { binom.clone() };
            binom = binom * (m - BigInt::from(j)) / BigInt::from(j + 1);
            j += 1;
            if binom.is_zero() {
                break;
            }
        }
        acc = acc.mul_truncated(&factor);
    }
    acc
}

/// `L_1, ..., L_n` from `z·(d/dz) log ζ = Σ L_n z^n`.
///
/// `log (1 + δz^r)^m = m Σ_j (−1)^{j+1} δ^j z^{rj} / j`, so the factor adds
/// `m·r·(−1)^{j+1}·δ^j` to `L_{rj}`.
pub fn lefschetz_from_zeta(f: &ZetaFactorization, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (delta, r, m) in f.factors() {
        let mr = m * BigInt::from(r);
        let mut j = 1u64;
        while (r * j) as usize <= n {
            // (−1)^{j+1} δ^j is −1 for δ = −1, and (−1)^{j+1} for δ = +1
            let negative = match delta {
                Delta::Minus => true,
                Delta::Plus => j.is_multiple_of(2),
            };
            let slot = &mut out[(r * j) as usize - 1];
            if negative {
                *slot -= &mr;
            } else {
                *slot += &mr;
            }
            j += 1;
        }
    }
    out
}

/// The unique exponents `e_k` with `ζ = Π (1 − z^k)^{e_k}`.
///
/// With `c_k`, `d_k` the exponents of `(1 − z^k)` and `(1 + z^k)`, and
/// `(1 + z^k) = (1 − z^{2k})/(1 − z^k)`:
/// `e_k = c_k + d_{k/2} − d_k` for even `k`, `e_k = c_k − d_k` for odd `k`.
pub fn canonicalize(f: &ZetaFactorization) -> BTreeMap<u64, BigInt> {
    let mut keys: BTreeSet<u64> = BTreeSet::new();
    for (delta, r, _) in f.factors() {
        keys.insert(r);
        if delta == Delta::Plus {
            keys.insert(2 * r);
        }
    }
    keys.into_iter()
        .filter_map(|k| {
            let mut e = f.exponent(Delta::Minus, k) - f.exponent(Delta::Plus, k);
            if k % 2 == 0 {
                e += f.exponent(Delta::Plus, k / 2);
            }
            (!e.is_zero()).then_some((k, e))
        })
        .collect()
}

/// Odd indices with a nonzero canonical exponent: the minimal set of
/// Lefschetz periods of any sequence with this zeta function.
pub fn mper_from_factorization(f: &ZetaFactorization) -> BTreeSet<u64> {
    canonicalize(f).into_keys().filter(|k| k % 2 == 1).collect()
}

/// Periodic-expansion coefficients of the sequence with this zeta function,
/// `a_k = −e_k`.
pub fn dold_from_zeta(f: &ZetaFactorization) -> DoldClass {
    DoldClass::from_pairs(canonicalize(f).into_iter().map(|(k, e)| (k, -e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::lefschetz_from_dold;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn canon(pairs: &[(u64, i64)]) -> BTreeMap<u64, BigInt> {
        pairs.iter().map(|&(k, e)| (k, BigInt::from(e))).collect()
    }

    #[test]
    fn zeta_of_dold_classes() {
        let z = zeta_from_dold(&DoldClass::from_pairs([(1, 2)]));
        assert_eq!(z, ZetaFactorization::from_factors([(Delta::Minus, 1, -2)]));
        assert!(zeta_from_dold(&DoldClass::new()).is_empty());
        let z = zeta_from_dold(&DoldClass::from_pairs([(1, 2), (2, -2)]));
        assert_eq!(z.to_string(), "-,1,-2;-,2,2");
    }

    #[test]
    fn series_examples() {
        let f = ZetaFactorization::from_factors([(Delta::Minus, 1, -1)]);
        assert_eq!(series_expand(&f, 4).coeffs(), ints(&[1, 1, 1, 1, 1]));
        let f = ZetaFactorization::from_factors([(Delta::Plus, 1, 2)]);
        assert_eq!(series_expand(&f, 3).coeffs(), ints(&[1, 2, 1, 0]));
        let f = ZetaFactorization::from_factors([(Delta::Minus, 2, -1), (Delta::Minus, 1, -1)]);
        assert_eq!(series_expand(&f, 4).coeffs(), ints(&[1, 1, 2, 2, 3]));
        // (1 − z³)²
        let f = zeta_from_dold(&DoldClass::from_pairs([(3, -2)]));
        assert_eq!(
            series_expand(&f, 9).coeffs(),
            ints(&[1, 0, 0, -2, 0, 0, 1, 0, 0, 0])
        );
    }

    #[test]
    fn series_matches_exp_of_lefschetz_sum() {
        // exp(Σ 2 z^n / n) = (1 − z)^{−2}: coefficients n + 1
        let f = zeta_from_dold(&DoldClass::from_pairs([(1, 2)]));
        let s = series_expand(&f, 10);
        for (i, c) in s.coeffs().iter().enumerate() {
            assert_eq!(*c, BigInt::from(i + 1));
        }
    }

    #[test]
    fn lefschetz_examples() {
        let l = lefschetz_from_zeta(&zeta_from_dold(&DoldClass::from_pairs([(1, 2)])), 6);
        assert_eq!(l, ints(&[2; 6]));
        let l = lefschetz_from_zeta(&zeta_from_dold(&DoldClass::from_pairs([(3, -2)])), 9);
        assert_eq!(l, ints(&[0, 0, -6, 0, 0, -6, 0, 0, -6]));
    }

    #[test]
    fn plus_factors_through_lefschetz() {
        // (1 + z) = (1 − z²)/(1 − z): a_1 = 1, a_2 = −1
        let f: ZetaFactorization = "+,1,1".parse().unwrap();
        let d = DoldClass::from_pairs([(1, 1), (2, -1)]);
        let expected: Vec<BigInt> = (1..=12).map(|n| lefschetz_from_dold(&d, n)).collect();
        assert_eq!(lefschetz_from_zeta(&f, 12), expected);
        assert_eq!(dold_from_zeta(&f), d);
    }

    #[test]
    fn canonicalize_examples() {
        let f: ZetaFactorization = "+,1,1".parse().unwrap();
        assert_eq!(canonicalize(&f), canon(&[(1, -1), (2, 1)]));
        let f = ZetaFactorization::from_factors([(Delta::Minus, 3, 2)]);
        assert_eq!(canonicalize(&f), canon(&[(3, 2)]));
        let f: ZetaFactorization = "+,2,5".parse().unwrap();
        assert_eq!(canonicalize(&f), canon(&[(2, -5), (4, 5)]));
        assert!(mper_from_factorization(&f).is_empty());
        assert!(mper_from_factorization(&ZetaFactorization::new()).is_empty());
    }

    #[test]
    fn parse_grammar() {
        let f: ZetaFactorization = " +,3,2 ; -,1,-1 ".parse().unwrap();
        assert_eq!(
            f,
            ZetaFactorization::from_factors([(Delta::Plus, 3, 2), (Delta::Minus, 1, -1)])
        );
        let merged: ZetaFactorization = "+,3,2;+,3,-2;−,1,1".parse().unwrap();
        assert_eq!(
            merged,
            ZetaFactorization::from_factors([(Delta::Minus, 1, 1)])
        );
        assert!("".parse::<ZetaFactorization>().unwrap().is_empty());
        for bad in ["*,1,1", "+,0,1", "+,1", "+,a,1", "+,1,1.5"] {
            assert!(
                matches!(bad.parse::<ZetaFactorization>(), Err(Error::FactorParse(_))),
                "{bad}"
            );
        }
        let round: ZetaFactorization = f.to_string().parse().unwrap();
        assert_eq!(round, f);
    }
}
