//! Explicit homology models with a prescribed set of algebraic periods.
//!
//! Every construction glues pieces `Σ_n` carrying a periodic map that
//! cyclically permutes `τ(n)` handles. Only the induced action on first
//! homology is built; the pieces are recorded as [`PieceSpec`] metadata.
//! The achieved periodic expansion is always recomputed from the emitted
//! matrix, never copied from the construction's bookkeeping.
//!
//! Orientable matrices use the symplectic basis ordering
//! `(a_1..a_g, b_1..b_g)`, so a map that moves `a`-curves among `a`-curves
//! and `b`-curves among `b`-curves is the direct sum of an `a`-block and a
//! `b`-block.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::arith::DoldClass;
use crate::error::{Error, Result};
use crate::lefschetz::{algebraic_periods, HomologyModel, SurfaceKind};
use crate::matrix::{block_diag, companion_cycle_quotient, cyclic_permutation, IntMatrix};

/// A finite nonempty set of positive integers to be realized as algebraic
/// periods.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetSet(BTreeSet<u64>);

impl TargetSet {
    pub fn new<I: IntoIterator<Item = u64>>(elements: I) -> Result<Self> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyTarget);
        }
        if set.contains(&0) {
            return Err(Error::NonPositivePeriod);
        }
        Ok(Self(set))
    }

    pub fn elements(&self) -> &BTreeSet<u64> {
        &self.0
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.contains(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn odd_elements(&self) -> BTreeSet<u64> {
        self.0.iter().copied().filter(|n| n % 2 == 1).collect()
    }

    /// `A ∖ {pivot}` if `pivot ∈ A`, else `A ∪ {pivot}`.
    fn toggled(&self, pivot: u64) -> BTreeSet<u64> {
        let mut out = self.0.clone();
        if !out.remove(&pivot) {
            out.insert(pivot);
        }
        out
    }
}

impl fmt::Display for TargetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl FromStr for TargetSet {
    type Err = String;

    /// Comma-separated positive integers, e.g. `2,3,5`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let elements = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|e| format!("invalid period `{t}`: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(elements).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ReversingMode {
    /// The doubling construction exactly as stated, including the extra
    /// period-2 piece when `2 ∉ A`.
    Faithful,
    /// Drops the period-2 piece and, when `2 ∉ A`, adds one handle acted on
    /// by `diag(1, −1)` so that the achieved periods are exactly `A`.
    #[default]
    Corrected,
}

impl ReversingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Faithful => "faithful",
            Self::Corrected => "corrected",
        }
    }
}

impl fmt::Display for ReversingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReversingMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "faithful" => Ok(Self::Faithful),
            "corrected" => Ok(Self::Corrected),
            other => Err(format!(
                "unknown mode `{other}` (expected faithful or corrected)"
            )),
        }
    }
}

/// One piece `Σ_n` of the decomposition: a surface of genus `tau` (per copy)
/// on which the map has order `tau`, taken `copies` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PieceSpec {
    pub n: u64,
    pub tau: u64,
    pub copies: u32,
}

impl PieceSpec {
    pub fn genus(&self) -> u64 {
        self.tau * u64::from(self.copies)
    }
}

/// Result of a realization: the model together with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    target: TargetSet,
    mode: Option<ReversingMode>,
    pieces: Vec<PieceSpec>,
    model: HomologyModel,
    achieved: DoldClass,
}

impl SurfaceModel {
    fn assemble(
        target: TargetSet,
        kind: SurfaceKind,
        mode: Option<ReversingMode>,
        genus: u64,
        pieces: Vec<PieceSpec>,
        matrix: IntMatrix,
    ) -> Result<Self> {
        let model = HomologyModel::new_strict(kind, genus, matrix)?;
        let achieved = algebraic_periods(&model)?;
        Ok(Self {
            target,
            mode,
            pieces,
            model,
            achieved,
        })
    }

    pub fn target(&self) -> &TargetSet {
        &self.target
    }

    pub fn kind(&self) -> SurfaceKind {
        self.model.kind()
    }

    pub fn mode(&self) -> Option<ReversingMode> {
        self.mode
    }

    pub fn genus(&self) -> u64 {
        self.model.genus()
    }

    pub fn pieces(&self) -> &[PieceSpec] {
        &self.pieces
    }

    pub fn model(&self) -> &HomologyModel {
        &self.model
    }

    pub fn achieved(&self) -> &DoldClass {
        &self.achieved
    }

    pub fn achieved_periods(&self) -> BTreeSet<u64> {
        self.achieved.support()
    }

    pub fn matches_target(&self) -> bool {
        self.achieved_periods() == *self.target.elements()
    }

    /// Errors with [`Error::TargetMismatch`] when the recomputed periods
    /// differ from the target.
    pub fn ensure_matches_target(&self) -> Result<()> {
        if self.matches_target() {
            Ok(())
        } else {
            Err(Error::TargetMismatch {
                target: self.target.elements().clone(),
                achieved: self.achieved_periods(),
            })
        }
    }
}

/// Closed-form genus of the realization for each kind; for the reversing
/// kind, that of the literal doubling construction.
pub fn closed_form_genus(kind: SurfaceKind, a: &TargetSet) -> u64 {
    let sum = |pred: &dyn Fn(u64) -> bool, weight: u64| -> u64 {
        a.iter().filter(|&n| pred(n)).map(|n| weight * n).sum()
    };
    match kind {
        SurfaceKind::OrientablePreserving => {
            if a.contains(1) {
                sum(&|n| n != 1, 1)
            } else {
                1 + sum(&|_| true, 1)
            }
        }
        SurfaceKind::OrientableReversing => {
            let base = sum(&|n| n % 4 == 0, 2) + sum(&|n| n % 4 != 0 && n != 2, 1);
            if a.contains(2) {
                base
            } else {
                2 + base
            }
        }
        SurfaceKind::NonOrientable => {
            if a.elements().len() == 1 && a.contains(1) {
                1
            } else if a.contains(1) {
                sum(&|n| n != 1, 1)
            } else {
                2 + sum(&|_| true, 1)
            }
        }
    }
}

/// Orientable matrix from per-handle `a`-blocks and `b`-blocks.
fn orientable_matrix(a_blocks: &[IntMatrix], b_blocks: &[IntMatrix]) -> IntMatrix {
    let a = block_diag(a_blocks);
    let b = block_diag(b_blocks);
    block_diag([&a, &b])
}

/// Orientation-preserving model with `copies[n]` pieces `Σ_n` for each `n`,
/// each piece contributing `P_n` on its `a`-curves and on its `b`-curves.
///
/// Its periodic expansion is `a_1 = 2 − 2·copies[1]`, `a_n = −2·copies[n]`.
pub fn preserving_from_multiplicities(
    copies: &BTreeMap<u64, u64>,
) -> Result<(Vec<PieceSpec>, HomologyModel)> {
    let mut pieces = Vec::new();
    let mut blocks = Vec::new();
    for (&n, &count) in copies {
        if n == 0 {
            return Err(Error::NonPositivePeriod);
        }
        for _ in 0..count {
            pieces.push(PieceSpec {
                n,
                tau: n,
                copies: 1,
            });
            blocks.push(cyclic_permutation(n as usize));
        }
    }
    let genus = pieces.iter().map(PieceSpec::genus).sum();
    let model = HomologyModel::new_strict(
        SurfaceKind::OrientablePreserving,
        genus,
        orientable_matrix(&blocks, &blocks),
    )?;
    Ok((pieces, model))
}

/// Realization by an orientation-preserving map.
///
/// `A′ = A ∖ {1}` if `1 ∈ A`, else `A ∪ {1}`; one piece `Σ_n` with
/// `τ(n) = n` per `n ∈ A′`. Achieves `a_n = −2` on `A ∖ {1}` and
/// `a_1 = 2` when `1 ∈ A`.
pub fn realize_orientable_preserving(a: &TargetSet) -> Result<SurfaceModel> {
    let copies: BTreeMap<u64, u64> = a.toggled(1).into_iter().map(|n| (n, 1)).collect();
    let (pieces, model) = preserving_from_multiplicities(&copies)?;
    SurfaceModel::assemble(
        a.clone(),
        SurfaceKind::OrientablePreserving,
        None,
        model.genus(),
        pieces,
        model.matrix().clone(),
    )
}

/// Action on the `a`-curves of a doubled piece: `a_j ↦ a′_{j+1}`,
/// `a′_j ↦ a_{j+1}` (indices mod `tau`), first copy then second.
fn swap_shift(tau: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(2 * tau);
    for j in 0..tau {
        let next = (j + 1) % tau;
        m.set(tau + next, j, 1);
        m.set(next, tau + j, 1);
    }
    m
}

/// `D·M·D` with `D` negating the second half of the coordinates.
fn negate_second_copy(m: &IntMatrix) -> IntMatrix {
    let half = m.dim() / 2;
    let mut out = m.clone();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if (i < half) != (j < half) {
                out.set(i, j, -m.get(i, j));
            }
        }
    }
    out
}

fn reversing_tau(n: u64) -> u64 {
    if n.is_multiple_of(4) {
        n
    } else {
        n / 2
    }
}

/// Realization by an orientation-reversing map; requires `A ⊂ 2N`.
///
/// Each piece `n` is doubled (`Σ_n`, `Σ′_n`) with `τ(n) = n` if `4 | n` and
/// `n/2` otherwise, and the map swaps the copies while shifting handles.
/// On `a`-curves this is [`swap_shift`]; on `b`-curves the same permutation
/// conjugated by the sign change of the second copy's `b`-coordinates,
/// which makes the assembled matrix antisymplectic. The characteristic
/// polynomial is `Π_{4|n}(x^n − 1)^4 · Π_{4∤n}(x^n − 1)^2`.
///
/// With `L(f^l) = reg_2(l) − tr(A^l)`, a period-2 piece contributes
/// `a_2 = −1`. [`ReversingMode::Faithful`] keeps the literal piece set
/// `A′ = A △ {2}` (so `2 ∉ A` ends with `a_2 = −1`, recorded as a target
/// mismatch); [`ReversingMode::Corrected`] uses the pieces of `A ∖ {2}` and,
/// when `2 ∉ A`, one extra handle with action `diag(1, −1)` whose trace
/// `reg_2(l)` cancels the `H_0`/`H_2` term.
pub fn realize_orientable_reversing(a: &TargetSet, mode: ReversingMode) -> Result<SurfaceModel> {
    let odd = a.odd_elements();
    if !odd.is_empty() {
        return Err(Error::OddTargetUnrealizable(odd));
    }
    let piece_periods: BTreeSet<u64> = match mode {
        ReversingMode::Faithful => a.toggled(2),
        ReversingMode::Corrected => a.iter().filter(|&n| n != 2).collect(),
    };
    let mut pieces = Vec::new();
    let mut a_blocks = Vec::new();
    let mut b_blocks = Vec::new();
    for n in piece_periods {
        let tau = reversing_tau(n);
        pieces.push(PieceSpec { n, tau, copies: 2 });
        let shift = swap_shift(tau as usize);
        b_blocks.push(negate_second_copy(&shift));
        a_blocks.push(shift);
    }
    if mode == ReversingMode::Corrected && !a.contains(2) {
        pieces.push(PieceSpec {
            n: 2,
            tau: 1,
            copies: 1,
        });
        a_blocks.push(IntMatrix::identity(1));
        b_blocks.push(-&IntMatrix::identity(1));
    }
    let genus = pieces.iter().map(PieceSpec::genus).sum();
    SurfaceModel::assemble(
        a.clone(),
        SurfaceKind::OrientableReversing,
        Some(mode),
        genus,
        pieces,
        orientable_matrix(&a_blocks, &b_blocks),
    )
}

/// Action on `H_1(N)/torsion` of a map permuting the cross-cap generators
/// in cycles of the given lengths, where the generators are subject to the
/// single relation that their sum vanishes rationally.
///
/// A fixed generator is eliminated when one exists, leaving a block
/// diagonal of cyclic permutations; otherwise a generator of the shortest
/// cycle `n_0` is eliminated and that cycle becomes the companion matrix
/// of `(x^{n_0} − 1)/(x − 1)`. Blocks are ordered as: companion (if any),
/// nontrivial cycles ascending, remaining fixed generators.
fn nonorientable_quotient_matrix(mut cycles: Vec<u64>) -> IntMatrix {
    cycles.sort_unstable();
    let fixed = cycles.iter().filter(|&&n| n == 1).count();
    let moving: Vec<u64> = cycles.into_iter().filter(|&n| n > 1).collect();
    let mut blocks = Vec::new();
    let rest: &[u64] = if fixed == 0 {
        let (pivot, rest) = moving.split_first().expect("at least one cycle");
        blocks.push(companion_cycle_quotient(*pivot as usize));
        rest
    } else {
        &moving
    };
    blocks.extend(rest.iter().map(|&n| cyclic_permutation(n as usize)));
    if fixed > 1 {
        blocks.push(IntMatrix::identity(fixed - 1));
    }
    block_diag(&blocks)
}

/// Non-orientable model with `copies[n]` pieces `Σ_n` of genus `n` for each
/// `n` (a piece `Σ_1` carries the identity). Its periodic expansion is
/// `a_1 = 2 − copies[1]`, `a_n = −copies[n]`.
pub fn nonorientable_from_multiplicities(
    copies: &BTreeMap<u64, u64>,
) -> Result<(Vec<PieceSpec>, HomologyModel)> {
    let mut pieces = Vec::new();
    let mut cycles = Vec::new();
    for (&n, &count) in copies {
        if n == 0 {
            return Err(Error::NonPositivePeriod);
        }
        for _ in 0..count {
            pieces.push(PieceSpec {
                n,
                tau: n,
                copies: 1,
            });
            cycles.push(n);
        }
    }
    if cycles.is_empty() {
        return Err(Error::EmptyTarget);
    }
    let genus = pieces.iter().map(PieceSpec::genus).sum();
    let model = HomologyModel::new_strict(
        SurfaceKind::NonOrientable,
        genus,
        nonorientable_quotient_matrix(cycles),
    )?;
    Ok((pieces, model))
}

/// Realization on a non-orientable surface.
///
/// `A = {1}` is the identity of the projective plane. Otherwise
/// `A′ = A ∖ {1}` if `1 ∈ A`, else `A ∪ {1}` with `τ(1) = 2` (the identity
/// on a genus-2 piece) and `τ(n) = n` for `n ≠ 1`. Achieves `a_n = −1` on
/// `A ∖ {1}` and `a_1 = 2` when `1 ∈ A`.
pub fn realize_nonorientable(a: &TargetSet) -> Result<SurfaceModel> {
    let kind = SurfaceKind::NonOrientable;
    if a.elements().len() == 1 && a.contains(1) {
        let pieces = vec![PieceSpec {
            n: 1,
            tau: 1,
            copies: 1,
        }];
        return SurfaceModel::assemble(a.clone(), kind, None, 1, pieces, IntMatrix::empty());
    }
    let mut pieces = Vec::new();
    let mut cycles = Vec::new();
    for n in a.toggled(1) {
        if n == 1 {
            pieces.push(PieceSpec {
                n: 1,
                tau: 2,
                copies: 1,
            });
            cycles.extend([1, 1]);
        } else {
            pieces.push(PieceSpec {
                n,
                tau: n,
                copies: 1,
            });
            cycles.push(n);
        }
    }
    let genus = pieces.iter().map(PieceSpec::genus).sum();
    SurfaceModel::assemble(
        a.clone(),
        kind,
        None,
        genus,
        pieces,
        nonorientable_quotient_matrix(cycles),
    )
}

/// Dispatches on the kind; `mode` is only consulted for reversing maps.
pub fn realize(a: &TargetSet, kind: SurfaceKind, mode: ReversingMode) -> Result<SurfaceModel> {
    match kind {
        SurfaceKind::OrientablePreserving => realize_orientable_preserving(a),
        SurfaceKind::OrientableReversing => realize_orientable_reversing(a, mode),
        SurfaceKind::NonOrientable => realize_nonorientable(a),
    }
}
