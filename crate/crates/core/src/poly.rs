//! Dense integer polynomials, cyclotomic polynomials and the cyclotomic
//! factorization used to decide quasi-unipotence.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; there are no trailing zeros, so
/// the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new([1])
    }

    /// `c·x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// `x^n − 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Long division with quotient and remainder required to be integral.
    ///
    /// Errors with [`Error::DivisionByZero`] for a zero divisor and
    /// [`Error::ExactnessError`] when some quotient coefficient would be a
    /// proper fraction.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::ExactnessError);
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division, `None` if the remainder is nonzero or
    /// the division is not integral.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

type CyclotomicTable = RwLock<HashMap<u64, Arc<IntPolynomial>>>;

fn cyclotomic_table() -> &'static CyclotomicTable {
    static TABLE: OnceLock<CyclotomicTable> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// The `d`-th cyclotomic polynomial Φ_d.
///
/// Computed as `(x^d − 1) / Π_{e | d, e < d} Φ_e` and memoized in a
/// process-wide table. Concurrent callers may race to fill an entry; they
/// all compute the same value.
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn cyclotomic(d: u64) -> Arc<IntPolynomial> {
    assert!(
        d >= 1,
        "cyclotomic polynomials are indexed by positive integers"
    );
    if let Some(p) = cyclotomic_table().read().unwrap().get(&d) {
        return Arc::clone(p);
    }
    let mut denominator = IntPolynomial::one();
    for e in divisors(d).into_iter().filter(|&e| e < d) {
        denominator = &denominator * &cyclotomic(e);
    }
    let phi = IntPolynomial::x_pow_minus_one(d as usize)
        .exact_div(&denominator)
        .expect("x^d - 1 is divisible by the cyclotomic factors of its proper divisors");
    let phi = Arc::new(phi);
    cyclotomic_table()
        .write()
        .unwrap()
        .entry(d)
        .or_insert_with(|| Arc::clone(&phi))
        .clone()
}

/// Multiplicities `d ↦ m_d` with `p = Π Φ_d^{m_d}`.
///
/// Every `d` with `φ(d) ≤ deg p` is tried as a trial divisor; candidates are
/// enumerated up to `2·(deg p)²`, which is enough because
/// `φ(d) ≥ √(d/2)`. Fails with [`Error::NotQuasiUnipotent`] carrying the
/// cofactor left over after all cyclotomic factors are removed.
pub fn cyclotomic_factorization(p: &IntPolynomial) -> Result<BTreeMap<u64, u32>> {
    if !p.is_monic() {
        return Err(Error::NonMonicInput(p.clone()));
    }
    let deg = p.degree().unwrap_or(0) as u64;
    let mut residual = p.clone();
    let mut out = BTreeMap::new();
    for d in 1..=(2 * deg * deg).max(1) {
        let res_deg = residual.degree().unwrap_or(0) as u64;
        if res_deg == 0 {
            break;
        }
        if euler_phi(d) > res_deg {
            continue;
        }
        let phi = cyclotomic(d);
        while let Some(q) = residual.exact_div(&phi) {
            residual = q;
            *out.entry(d).or_insert(0) += 1;
        }
    }
    if residual.is_one_poly() {
        Ok(out)
    } else {
        Err(Error::NotQuasiUnipotent { residual })
    }
}

impl IntPolynomial {
    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

/// Sum of the roots of Φ_m, i.e. the negated coefficient below the leading
/// one. Always equals μ(m).
pub fn cyclotomic_root_sum(m: u64) -> BigInt {
    let phi = cyclotomic(m);
    let deg = phi.degree().expect("cyclotomic polynomials are nonzero");
    -phi.coeff(deg - 1)
}

/// Power sums `s_1, ..., s_n` of the roots of a monic polynomial, by Newton's
/// identities. For a characteristic polynomial these are the traces of the
/// matrix powers. A constant polynomial yields all zeros.
pub fn trace_sequence_from_charpoly(p: &IntPolynomial, n: usize) -> Result<Vec<BigInt>> {
    if !p.is_monic() {
        return Err(Error::NonMonicInput(p.clone()));
    }
    let deg = p.degree().unwrap_or(0);
    // p = x^deg + b_1 x^{deg-1} + ... + b_deg
    let b: Vec<BigInt> = (0..=deg).map(|i| p.coeff(deg - i)).collect();
    let mut s: Vec<BigInt> = Vec::with_capacity(n + 1);
    s.push(BigInt::zero());
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..k.min(deg + 1) {
            acc += &b[i] * &s[k - i];
        }
        if k <= deg {
            acc += &b[k] * BigInt::from(k);
        }
        s.push(-acc);
    }
    s.remove(0);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{moebius, reg};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.iter().copied())
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&p(&[1, 2]) + &p(&[-1, -2, 3]), p(&[0, 0, 3]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPolynomial::zero());
        assert_eq!(p(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn division_examples() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1]), IntPolynomial::zero()));

        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[1, 0, 1])).unwrap();
        assert_eq!((q, r), (p(&[1]), p(&[-2])));

        assert_eq!(
            p(&[1, 1]).div_rem(&IntPolynomial::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(p(&[0, 1]).div_rem(&p(&[1, 2])), Err(Error::ExactnessError));
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), p(&[-1, 1]));
        assert_eq!(*cyclotomic(2), p(&[1, 1]));
        assert_eq!(*cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(*cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        // first cyclotomic with a coefficient of absolute value 2
        assert!(cyclotomic(105)
            .coeffs()
            .iter()
            .any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn x_pow_n_minus_one_factors_into_cyclotomics() {
        for n in 1..=200u64 {
            let prod = divisors(n)
                .into_iter()
                .fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
        }
    }

    #[test]
    fn root_sum_is_moebius() {
        assert_eq!(cyclotomic_root_sum(1), BigInt::from(1));
        assert_eq!(cyclotomic_root_sum(2), BigInt::from(-1));
        assert_eq!(cyclotomic_root_sum(12), BigInt::zero());
        for m in 1..=500 {
            assert_eq!(cyclotomic_root_sum(m), BigInt::from(moebius(m)), "m = {m}");
        }
    }

    #[test]
    fn factorization_examples() {
        let sq = p(&[-1, 0, 1]).pow(2);
        assert_eq!(
            cyclotomic_factorization(&sq).unwrap(),
            BTreeMap::from([(1, 2), (2, 2)])
        );
        assert_eq!(
            cyclotomic_factorization(&p(&[-1, 0, 0, 1])).unwrap(),
            BTreeMap::from([(1, 1), (3, 1)])
        );
        let err = cyclotomic_factorization(&p(&[1, -3, 1])).unwrap_err();
        assert_eq!(
            err,
            Error::NotQuasiUnipotent {
                residual: p(&[1, -3, 1])
            }
        );
        assert!(matches!(
            cyclotomic_factorization(&p(&[1, 2])),
            Err(Error::NonMonicInput(_))
        ));
        assert!(cyclotomic_factorization(&IntPolynomial::one())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn factorization_reports_partial_residual() {
        // (x^2 - 3x + 1)(x^3 - 1)
        let q = &p(&[1, -3, 1]) * &p(&[-1, 0, 0, 1]);
        assert_eq!(
            cyclotomic_factorization(&q),
            Err(Error::NotQuasiUnipotent {
                residual: p(&[1, -3, 1])
            })
        );
    }

    #[test]
    fn newton_power_sums() {
        let t = trace_sequence_from_charpoly(&p(&[-1, 0, 0, 1]), 6).unwrap();
        assert_eq!(t, [0, 0, 3, 0, 0, 3].map(BigInt::from));
        let t = trace_sequence_from_charpoly(&p(&[-1, 1]), 4).unwrap();
        assert_eq!(t, [1, 1, 1, 1].map(BigInt::from));
        let t = trace_sequence_from_charpoly(&p(&[-1, 0, 1]).pow(2), 4).unwrap();
        assert_eq!(t, [0, 4, 0, 4].map(BigInt::from));
        assert!(trace_sequence_from_charpoly(&p(&[1, 3]), 2).is_err());
    }

    #[test]
    fn power_sums_of_products_of_x_n_minus_one() {
        // Π (x^n − 1)^{m_n}  ↦  Σ m_n reg_n
        let spec = [(2u64, 2u32), (3, 1), (6, 3)];
        let poly = spec.iter().fold(IntPolynomial::one(), |acc, &(n, m)| {
            &acc * &IntPolynomial::x_pow_minus_one(n as usize).pow(m)
        });
        let sums = trace_sequence_from_charpoly(&poly, 30).unwrap();
        for (l, s) in (1u64..).zip(sums) {
            let expected: u64 = spec.iter().map(|&(n, m)| u64::from(m) * reg(n, l)).sum();
            assert_eq!(s, BigInt::from(expected), "l = {l}");
        }
    }

    #[test]
    fn cyclotomic_table_is_thread_safe() {
        let handles: Vec<_> = (0..8)
            .map(|t| {
                std::thread::spawn(move || {
                    (1..=60u64)
                        .filter(|d| cyclotomic(d * (t % 3 + 1)).is_monic())
                        .count()
                })
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), 60);
        }
        assert_eq!(*cyclotomic(120), {
            let q = IntPolynomial::x_pow_minus_one(120);
            divisors(120)
                .into_iter()
                .filter(|&e| e < 120)
                .fold(q, |acc, e| acc.exact_div(&cyclotomic(e)).unwrap())
        });
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -3, 1]).to_string(), "x^2 - 3x + 1");
        assert_eq!(p(&[-1, 0, 0, 1]).to_string(), "x^3 - 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
