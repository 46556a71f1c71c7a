//! Square matrices with arbitrary-precision integer entries.
//!
//! Besides ring operations this module holds the exact characteristic
//! polynomial, the standard intersection form `Ω = [[0, I_g], [−I_g, 0]]` in
//! the basis `(a_1..a_g, b_1..b_g)`, the (anti)symplectic predicates, and the
//! building blocks used by the realization constructions.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A `dim × dim` integer matrix stored row-major. `dim == 0` is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    /// The empty `0 × 0` matrix.
    pub fn empty() -> Self {
        Self::zero(0)
    }

    pub fn from_diagonal<I, T>(diag: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let diag: Vec<BigInt> = diag.into_iter().map(Into::into).collect();
        let mut m = Self::zero(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * m.dim + i] = d;
        }
        m
    }

    /// Builds a matrix from rows; every row must have as many entries as
    /// there are rows.
    pub fn from_rows<R, T>(rows: Vec<R>) -> Result<Self>
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let len = entries.len() - before;
            if len != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {len} entries, expected {dim}"
                )));
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.dim + j] = value.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.dim).map(move |i| self.row(i))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.entries[j * self.dim + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Exact product. Zero entries of the left factor are skipped, which
    /// keeps products of permutation-like matrices cheap.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            let out_row = &mut out.entries[i * n..(i + 1) * n];
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.entries[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `A^l` by binary exponentiation; `A^0` is the identity.
    pub fn pow(&self, mut l: u64) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        while l > 0 {
            if l & 1 == 1 {
                acc = &acc * &base;
            }
            l >>= 1;
            if l > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `det(xI − A)` by the Faddeev–LeVerrier recurrence.
    ///
    /// With `M_0 = 0`, `c_n = 1`: `M_k = A·M_{k−1} + c_{n−k+1}·I` and
    /// `c_{n−k} = −tr(A·M_k)/k`. Each division is exact since its quotient
    /// is a coefficient of `det(xI − A)`.
    pub fn charpoly(&self) -> IntPolynomial {
        let n = self.dim;
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        let mut m = Self::zero(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self * &m;
            for i in 0..n {
                next.entries[i * n + i] += &c[n - k + 1];
            }
            m = next;
            let t = (self * &m).trace();
            let (q, r) = t.div_rem(&BigInt::from(k));
            assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            c[n - k] = -q;
        }
        IntPolynomial::new(c)
    }

    /// `det(A)`, read off the constant term of the characteristic polynomial.
    pub fn determinant(&self) -> BigInt {
        let c0 = self.charpoly().coeff(0);
        if self.dim.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }

    /// Conjugate `P·A·P⁻¹` given both `P` and its inverse.
    pub fn conjugate(&self, p: &Self, p_inv: &Self) -> Result<Self> {
        p.try_mul(self)?.try_mul(p_inv)
    }

    /// `AᵀΩA` with `Ω` the standard form of genus `dim/2`.
    fn pullback_of_standard_form(&self) -> Result<Self> {
        if !self.dim.is_multiple_of(2) {
            return Err(Error::OddDimension(self.dim));
        }
        let omega = standard_symplectic_form(self.dim as u64 / 2);
        Ok(&(&self.transpose() * omega.matrix()) * self)
    }

    /// `AᵀΩA = Ω`. The empty matrix is symplectic.
    pub fn is_symplectic(&self) -> Result<bool> {
        let pulled = self.pullback_of_standard_form()?;
        Ok(pulled == standard_symplectic_form(self.dim as u64 / 2).matrix)
    }

    /// `AᵀΩA = −Ω`. The empty matrix is antisymplectic.
    pub fn is_antisymplectic(&self) -> Result<bool> {
        let pulled = self.pullback_of_standard_form()?;
        Ok(pulled == -&standard_symplectic_form(self.dim as u64 / 2).matrix)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// # Panics
    ///
    /// Panics on a dimension mismatch; use [`IntMatrix::try_mul`] otherwise.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// The `n × n` cyclic permutation sending basis vector `e_i` to
/// `e_{(i+1) mod n}`; its characteristic polynomial is `x^n − 1` and the
/// trace of its `l`-th power is `reg_n(l)`.
pub fn cyclic_permutation(n: usize) -> IntMatrix {
    assert!(n >= 1, "cycle length must be positive");
    let mut m = IntMatrix::zero(n);
    for i in 0..n {
        m.set((i + 1) % n, i, 1);
    }
    m
}

/// Companion matrix of `1 + x + ... + x^{n−1} = (x^n − 1)/(x − 1)`: ones on
/// the subdiagonal and `−1` down the last column. It is the action of an
/// `n`-cycle on the quotient of `Z^n` by the sum of the basis vectors, so
/// the trace of its `l`-th power is `reg_n(l) − reg_1(l)`.
pub fn companion_cycle_quotient(n: usize) -> IntMatrix {
    assert!(n >= 2, "quotient cycle needs n >= 2");
    let d = n - 1;
    let mut m = IntMatrix::zero(d);
    for i in 1..d {
        m.set(i, i - 1, 1);
    }
    for i in 0..d {
        m.set(i, d - 1, -1);
    }
    m
}

/// Direct sum of square blocks along the diagonal.
pub fn block_diag<'a, I>(blocks: I) -> IntMatrix
where
    I: IntoIterator<Item = &'a IntMatrix>,
{
    let blocks: Vec<&IntMatrix> = blocks.into_iter().collect();
    let dim = blocks.iter().map(|b| b.dim).sum();
    let mut out = IntMatrix::zero(dim);
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.dim {
            for j in 0..b.dim {
                let e = b.get(i, j);
                if !e.is_zero() {
                    out.set(offset + i, offset + j, e.clone());
                }
            }
        }
        offset += b.dim;
    }
    out
}

/// The standard intersection form of a genus-`g` surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    genus: u64,
    matrix: IntMatrix,
}

impl SymplecticForm {
    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `ω(x, y) = xᵀΩy`.
    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let g = self.genus as usize;
        (0..g).map(|i| &x[i] * &y[g + i] - &x[g + i] * &y[i]).sum()
    }
}

/// `Ω = [[0, I_g], [−I_g, 0]]`.
pub fn standard_symplectic_form(g: u64) -> SymplecticForm {
    let n = g as usize;
    let mut m = IntMatrix::zero(2 * n);
    for i in 0..n {
        m.set(i, n + i, 1);
        m.set(n + i, i, -1);
    }
    SymplecticForm {
        genus: g,
        matrix: m,
    }
}

/// The symplectic transvection `x ↦ x + λ·ω(v, x)·v`, i.e. `I + λ·v·vᵀΩ`,
/// together with its inverse (the transvection with `−λ`).
pub fn symplectic_transvection(v: &[BigInt], lambda: &BigInt) -> Result<(IntMatrix, IntMatrix)> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::OddDimension(v.len()));
    }
    let n = v.len();
    let omega = standard_symplectic_form(n as u64 / 2);
    // row vector vᵀΩ
    let v_omega: Vec<BigInt> = (0..n)
        .map(|j| (0..n).map(|k| &v[k] * omega.matrix.get(k, j)).sum())
        .collect();
    let build = |scale: &BigInt| {
        let mut m = IntMatrix::identity(n);
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in v_omega.iter().enumerate() {
                let delta = scale * vi * wj;
                if !delta.is_zero() {
                    m.entries[i * n + j] += delta;
                }
            }
        }
        m
    };
    Ok((build(lambda), build(&-lambda)))
}

/// Checks the functional equation `χ_A(x) = (−1)^g x^{2g} χ_A(−1/x)` of an
/// antisymplectic matrix through its coefficients, `c_i = (−1)^{g+i} c_{2g−i}`.
///
/// Errors with [`Error::NotAntisymplectic`] if `A` is not antisymplectic.
pub fn antisymplectic_charpoly_identity_check(a: &IntMatrix) -> Result<bool> {
    if !a.is_antisymplectic()? {
        return Err(Error::NotAntisymplectic);
    }
    let n = a.dim();
    let g = n / 2;
    let chi = a.charpoly();
    Ok((0..=n).all(|i| {
        let mirrored = chi.coeff(n - i);
        let expected = if (g + i).is_multiple_of(2) {
            mirrored
        } else {
            -mirrored
        };
        chi.coeff(i) == expected
    }))
}
