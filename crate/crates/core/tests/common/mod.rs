//! Independent oracles and random instance generators shared by the
//! integration tests.

#![allow(dead_code)]

use algper::matrix::{block_diag, symplectic_transvection};
use algper::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_into(acc: &mut Vec<BigInt>, p: &[BigInt], negate: bool) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (i, c) in p.iter().enumerate() {
        if negate {
            acc[i] -= c;
        } else {
            acc[i] += c;
        }
    }
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Laplace expansion along the first row of a matrix of polynomials.
fn det_poly(m: &[Vec<Vec<BigInt>>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut acc = Vec::new();
    for j in 0..n {
        if m[0][j].iter().all(Zero::is_zero) {
            continue;
        }
        let minor: Vec<Vec<Vec<BigInt>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(&m[0][j], &det_poly(&minor));
        poly_add_into(&mut acc, &term, j % 2 == 1);
    }
    acc
}

/// Coefficients (constant first) of `det(xI − A)` by cofactor expansion.
pub fn cofactor_charpoly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.dim();
    let m: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -a.get(i, j);
                    if i == j {
                        vec![c, BigInt::one()]
                    } else {
                        vec![c]
                    }
                })
                .collect()
        })
        .collect();
    trim(det_poly(&m))
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(a: &IntMatrix) -> BigInt {
    let n = a.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.rows().map(<[BigInt]>::to_vec).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `P(n)` by the coin-change recurrence over part sizes.
pub fn partition_count_dp(n: usize) -> BigInt {
    let mut ways = vec![BigInt::zero(); n + 1];
    ways[0] = BigInt::one();
    for part in 1..=n {
        for total in part..=n {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways[n].clone()
}

/// Every partition of `n` as a nonincreasing list, by recursion on the
/// largest part.
pub fn partitions_exhaustive(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(rows).expect("square")
}

/// A random `g × g` signed permutation matrix.
pub fn random_signed_permutation(rng: &mut ChaCha8Rng, g: usize) -> IntMatrix {
    let mut perm: Vec<usize> = (0..g).collect();
    perm.shuffle(rng);
    let mut m = IntMatrix::zero(g);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    m
}

/// `Q ⊕ (−Q)` for a signed permutation `Q`, conjugated by a product of
/// 1 to 3 random integer symplectic transvections. The result is
/// antisymplectic and of finite order, hence quasi-unipotent.
pub fn random_antisymplectic(rng: &mut ChaCha8Rng, g: usize) -> IntMatrix {
    let q = random_signed_permutation(rng, g);
    let mut a = block_diag([&q, &-&q]);
    for _ in 0..rng.gen_range(1..=3) {
        let v: Vec<BigInt> = (0..2 * g)
            .map(|_| BigInt::from(rng.gen_range(-1..=1)))
            .collect();
        let lambda = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        let (t, t_inv) = symplectic_transvection(&v, &lambda).expect("even length");
        a = a.conjugate(&t, &t_inv).expect("same dimension");
    }
    a
}

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C(
            (self.0 * o.0 + self.1 * o.1) / d,
            (self.1 * o.0 - self.0 * o.1) / d,
        )
    }
    fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

/// Moduli of the roots of a monic integer polynomial (constant term first)
/// by Durand–Kerner iteration.
pub fn root_moduli(coeffs: &[BigInt]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    assert!(coeffs[n].is_one(), "monic input");
    let c: Vec<f64> = coeffs.iter().map(|x| x.to_f64().unwrap()).collect();
    let eval = |z: C| {
        c.iter()
            .rev()
            .fold(C(0.0, 0.0), |acc, &a| acc.mul(z).add(C(a, 0.0)))
    };
    let seed = C(0.4, 0.9);
    let mut roots: Vec<C> = Vec::with_capacity(n);
    let mut p = C(1.0, 0.0);
    for _ in 0..n {
        roots.push(p);
        p = p.mul(seed);
    }
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = C(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let diff = roots[i].sub(roots[j]);
                    denom = denom.mul(if diff.abs() == 0.0 {
                        C(1e-12, 0.0)
                    } else {
                        diff
                    });
                }
            }
            let step = eval(roots[i]).div(denom);
            roots[i] = roots[i].sub(step);
            moved = moved.max(step.abs());
        }
        if moved < 1e-14 {
            break;
        }
    }
    roots.into_iter().map(C::abs).collect()
}

/// Whether every root lies within `tol` of the unit circle.
pub fn roots_on_unit_circle(coeffs: &[BigInt], tol: f64) -> bool {
    coeffs.len() == 1 || root_moduli(coeffs).iter().all(|m| (m - 1.0).abs() < tol)
}
