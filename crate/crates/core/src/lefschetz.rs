//! Lefschetz numbers, algebraic periods and periodic-point certificates of
//! a homology model.
//!
//! A [`HomologyModel`] is the integer matrix of the map induced on the
//! torsion-free part of first homology, together with the surface kind. The
//! kind fixes the rest of the homological data: `H_0` always contributes
//! `1`, and `H_2` contributes `ε^l` with `ε = +1` for orientation-preserving
//! maps, `ε = −1` for orientation-reversing maps, and nothing on a
//! non-orientable surface (rational coefficients). Hence
//!
//! ```text
//! L(f^l) = 1 − tr(A^l) + ε^l      (orientable)
//! L(f^l) = 1 − tr(A^l)            (non-orientable)
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{divisors, dold_coefficients, lcm, DoldClass, LefschetzSequence};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::{cyclotomic_factorization, trace_sequence_from_charpoly, IntPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    OrientablePreserving,
    OrientableReversing,
    NonOrientable,
}

impl SurfaceKind {
    /// The degree `ε` of the map on `H_2`, if `H_2` contributes.
    pub fn top_degree(self) -> Option<i32> {
        match self {
            Self::OrientablePreserving => Some(1),
            Self::OrientableReversing => Some(-1),
            Self::NonOrientable => None,
        }
    }

    pub fn is_orientable(self) -> bool {
        self != Self::NonOrientable
    }

    /// Rank of the torsion-free part of `H_1` on a surface of genus `genus`.
    pub fn homology_rank(self, genus: u64) -> Result<u64> {
        match self {
            Self::NonOrientable if genus == 0 => Err(Error::GenusMismatch {
                kind: self,
                genus,
                expected: 0,
                actual: 0,
            }),
            Self::NonOrientable => Ok(genus - 1),
            _ => Ok(2 * genus),
        }
    }

    /// Euler characteristic of the closed surface of genus `genus`.
    pub fn euler_characteristic(self, genus: u64) -> BigInt {
        let g = BigInt::from(genus);
        if self.is_orientable() {
            BigInt::from(2) - 2 * g
        } else {
            BigInt::from(2) - g
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::OrientablePreserving => "preserving",
            Self::OrientableReversing => "reversing",
            Self::NonOrientable => "nonorientable",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SurfaceKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "preserving" => Ok(Self::OrientablePreserving),
            "reversing" => Ok(Self::OrientableReversing),
            "nonorientable" => Ok(Self::NonOrientable),
            other => Err(format!(
                "unknown surface kind `{other}` (expected preserving, reversing or nonorientable)"
            )),
        }
    }
}

/// The action of a surface map on rank-relevant first homology.
#[derive(Debug, Clone)]
pub struct HomologyModel {
    kind: SurfaceKind,
    genus: u64,
    matrix: IntMatrix,
    charpoly: OnceLock<IntPolynomial>,
}

impl PartialEq for HomologyModel {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.genus == other.genus && self.matrix == other.matrix
    }
}

impl Eq for HomologyModel {}

impl HomologyModel {
    /// Checks only that the matrix dimension fits the genus: `2g` for
    /// orientable surfaces and `g − 1` for non-orientable ones.
    pub fn new(kind: SurfaceKind, genus: u64, matrix: IntMatrix) -> Result<Self> {
        let expected = kind.homology_rank(genus)?;
        if matrix.dim() as u64 != expected {
            return Err(Error::GenusMismatch {
                kind,
                genus,
                expected,
                actual: matrix.dim(),
            });
        }
        Ok(Self {
            kind,
            genus,
            matrix,
            charpoly: OnceLock::new(),
        })
    }

    /// Like [`HomologyModel::new`], additionally requiring the matrix to be
    /// symplectic (preserving) or antisymplectic (reversing).
    pub fn new_strict(kind: SurfaceKind, genus: u64, matrix: IntMatrix) -> Result<Self> {
        let model = Self::new(kind, genus, matrix)?;
        model.check_form()?;
        Ok(model)
    }

    pub fn with_strictness(
        kind: SurfaceKind,
        genus: u64,
        matrix: IntMatrix,
        strict: bool,
    ) -> Result<Self> {
        if strict {
            Self::new_strict(kind, genus, matrix)
        } else {
            Self::new(kind, genus, matrix)
        }
    }

    /// Verifies the intersection-form condition appropriate to the kind.
    pub fn check_form(&self) -> Result<()> {
        match self.kind {
            SurfaceKind::OrientablePreserving if !self.matrix.is_symplectic()? => {
                Err(Error::FormViolation("symplectic"))
            }
            SurfaceKind::OrientableReversing if !self.matrix.is_antisymplectic()? => {
                Err(Error::FormViolation("antisymplectic"))
            }
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.kind.euler_characteristic(self.genus)
    }

    pub fn charpoly(&self) -> &IntPolynomial {
        self.charpoly.get_or_init(|| self.matrix.charpoly())
    }

    /// `L_l` from the `H_1` trace `t = tr(A^l)`.
    fn lefschetz_from_trace(&self, l: u64, trace: &BigInt) -> BigInt {
        let mut value = BigInt::one() - trace;
        if let Some(eps) = self.kind.top_degree() {
            value += if eps < 0 && l % 2 == 1 { -1 } else { 1 };
        }
        value
    }

    /// Multiplicities of the cyclotomic factors of the characteristic
    /// polynomial; fails with [`Error::NotQuasiUnipotent`] otherwise.
    pub fn cyclotomic_orders(&self) -> Result<BTreeMap<u64, u32>> {
        cyclotomic_factorization(self.charpoly())
    }

    pub fn is_quasi_unipotent(&self) -> bool {
        self.cyclotomic_orders().is_ok()
    }
}

/// `lcm` of the cyclotomic orders present (1 if there are none).
pub fn orders_lcm(orders: &BTreeMap<u64, u32>) -> u64 {
    orders.keys().fold(1, |acc, &d| lcm(acc, d))
}

/// The Lefschetz number of the `l`-th iterate, from an explicit matrix power.
pub fn lefschetz_number(m: &HomologyModel, l: u64) -> BigInt {
    let trace = m.matrix.pow(l).trace();
    m.lefschetz_from_trace(l, &trace)
}

/// `L_1, ..., L_n`, with traces of powers taken from the characteristic
/// polynomial by Newton's identities.
pub fn lefschetz_numbers(m: &HomologyModel, n: usize) -> Vec<BigInt> {
    trace_sequence_from_charpoly(m.charpoly(), n)
        .expect("characteristic polynomials are monic")
        .iter()
        .zip(1u64..)
        .map(|(t, l)| m.lefschetz_from_trace(l, t))
        .collect()
}

/// Periodic-expansion coefficients of the model's Lefschetz sequence.
///
/// Only divisors of cyclotomic orders of the characteristic polynomial (and
/// `1`, `2` from the `H_0`, `H_2` terms) can carry nonzero coefficients: the
/// trace of `A^l` is a sum of Ramanujan sums `c_d(l) = Σ_{k | d} μ(d/k) reg_k(l)`.
/// The sequence is evaluated on that divisor-closed set and inverted exactly.
pub fn algebraic_periods(m: &HomologyModel) -> Result<DoldClass> {
    let orders = m.cyclotomic_orders()?;
    let mut candidates: BTreeSet<u64> = BTreeSet::from([1, 2]);
    for &d in orders.keys() {
        candidates.extend(divisors(d));
    }
    let top = *candidates.last().expect("candidate set contains 1 and 2") as usize;
    let values = lefschetz_numbers(m, top);
    let seq = LefschetzSequence::new(
        candidates
            .iter()
            .map(|&l| (l, values[l as usize - 1].clone()))
            .collect(),
    )?;
    dold_coefficients(&seq)
}

/// Odd algebraic periods.
pub fn ap_odd(m: &HomologyModel) -> Result<BTreeSet<u64>> {
    Ok(algebraic_periods(m)?.odd_support())
}

/// Minimal set of Lefschetz periods; it coincides with the odd algebraic
/// periods (see [`crate::zeta::mper_from_factorization`] for the
/// independent route through the zeta function).
pub fn mper_l(m: &HomologyModel) -> Result<BTreeSet<u64>> {
    ap_odd(m)
}

/// Whether `L_l = 0` for every odd `l ≤ bound`, as it must for an
/// orientation-reversing map.
pub fn odd_vanishing_check(m: &HomologyModel, bound: u64) -> Result<bool> {
    if m.kind != SurfaceKind::OrientableReversing {
        return Err(Error::WrongKind(m.kind));
    }
    if !m.matrix.is_antisymplectic()? {
        return Err(Error::FormViolation("antisymplectic"));
    }
    let values = lefschetz_numbers(m, bound as usize);
    Ok(values.iter().step_by(2).all(num_traits::Zero::is_zero))
}

/// What a nonzero `a_n` guarantees for every transversal map in the
/// homotopy class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PeriodGuarantee {
    /// `n` is odd and is a period.
    Period(u64),
    /// `n` is even and `n` or `n/2` is a period.
    PeriodOrHalf(u64),
}

impl PeriodGuarantee {
    pub fn n(self) -> u64 {
        match self {
            Self::Period(n) | Self::PeriodOrHalf(n) => n,
        }
    }
}

impl fmt::Display for PeriodGuarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Period(n) => write!(f, "{n} ∈ Per(h)"),
            Self::PeriodOrHalf(n) => write!(f, "{n} ∈ Per(h) or {} ∈ Per(h)", n / 2),
        }
    }
}

pub fn periodic_point_certificate(d: &DoldClass) -> Vec<PeriodGuarantee> {
    d.support()
        .into_iter()
        .map(|n| {
            if n % 2 == 1 {
                PeriodGuarantee::Period(n)
            } else {
                PeriodGuarantee::PeriodOrHalf(n)
            }
        })
        .collect()
}
