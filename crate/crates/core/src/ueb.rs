//! Unitary error bases and their duality with maximally entangled bases,
//! plus the monomiality obstruction.

use alloc::vec::Vec;

use thiserror::Error;

use crate::bases::{extract_unitary, BipartiteBasis, BipartiteState, MubReport};
use crate::error::{Error, Result};
use crate::hadamard::HadamardFamily;
use crate::numerics::{lcm_up_to, mat_power, CMatrix, C64};
use crate::squares::QuantumLatinSquare;

/// `n²` unitaries on `C^n` with `tr(U_a† U_b) = n δ_ab`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryErrorBasis {
    n: usize,
    members: Vec<CMatrix>,
}

impl UnitaryErrorBasis {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[CMatrix] {
        &self.members
    }

    pub fn member(&self, index: usize) -> &CMatrix {
        &self.members[index]
    }

    pub fn into_members(self) -> Vec<CMatrix> {
        self.members
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UebViolation {
    #[error("an error basis on C^{n} needs {expected} members, found {found}")]
    MemberCount { n: usize, expected: usize, found: usize },
    #[error("member {index} has shape {shape:?}, expected {n}x{n}")]
    Shape { index: usize, shape: (usize, usize), n: usize },
    #[error("member {index} is not unitary (‖UU†−I‖_F = {residual:e})")]
    NotUnitary { index: usize, residual: f64 },
    #[error("tr(U_{a}† U_{b}) = {value}, expected {expected}")]
    TraceOrthogonality { a: usize, b: usize, value: C64, expected: f64 },
}

/// `tr(a† b)` without forming the product.
pub fn trace_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.data().iter().zip(b.data()).map(|(x, y)| x.conj() * y).sum()
}

pub fn validate_ueb(members: &[CMatrix], tol: f64) -> Result<UnitaryErrorBasis, UebViolation> {
    let n = members.first().map_or(0, CMatrix::rows);
    if n == 0 || members.len() != n * n {
        return Err(UebViolation::MemberCount {
            n,
            expected: n * n,
            found: members.len(),
        });
    }
    for (index, m) in members.iter().enumerate() {
        if m.shape() != (n, n) {
            return Err(UebViolation::Shape { index, shape: m.shape(), n });
        }
        let residual = m.unitarity_residual();
        if residual > tol {
            return Err(UebViolation::NotUnitary { index, residual });
        }
    }
    for a in 0..members.len() {
        for b in a..members.len() {
            let value = trace_inner(&members[a], &members[b]);
            let expected = if a == b { n as f64 } else { 0.0 };
            if (value - C64::new(expected, 0.0)).norm() > tol {
                return Err(UebViolation::TraceOrthogonality { a, b, value, expected });
            }
        }
    }
    Ok(UnitaryErrorBasis {
        n,
        members: members.to_vec(),
    })
}

/// Member `s` is the unitary of state `s`.
pub fn meb_to_ueb(b: &BipartiteBasis, tol: f64) -> Result<UnitaryErrorBasis> {
    let members = b
        .states()
        .iter()
        .map(|s| extract_unitary(s, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(validate_ueb(&members, tol)?)
}

/// State `s` is `(1/√n) Σ_k |k⟩ ⊗ U_s|k⟩`.
pub fn ueb_to_meb(u: &UnitaryErrorBasis) -> BipartiteBasis {
    let states = u
        .members
        .iter()
        .map(|m| BipartiteState::from_unitary(m).expect("members are square"))
        .collect();
    BipartiteBasis::new(u.n, states).expect("n² members of order n")
}

/// Member `(i, j)` at `i * n + j` is `Σ_k (H_j)_{ki} |Q_{kj}⟩⟨k|`: column `k`
/// is the grid entry in row `j`, column `k`, scaled by `(H_j)_{ki}`.
pub fn shift_multiply_ueb(q: &QuantumLatinSquare, f: &HadamardFamily) -> Result<UnitaryErrorBasis> {
    let n = q.order();
    if f.order() != n {
        return Err(Error::OrderMismatch { left: n, right: f.order() });
    }
    let grid = q.grid();
    let mut members = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let h = f.member(j);
            members.push(CMatrix::from_fn(n, n, |p, k| h.get(k, i) * grid.entry(j, k)[p]));
        }
    }
    Ok(UnitaryErrorBasis { n, members })
}

/// Overlap statistics for two error bases.
///
/// `mub` uses the state-normalized value `|tr(U_a† V_b)/n|²` against `1/n²`,
/// which is what the dual bases see. `raw_trace_sq` keeps `|tr(U_a† V_b)|²`
/// in row-major order so the alternative `1/n` reading can be inspected.
#[derive(Debug, Clone, PartialEq)]
pub struct MuUebReport {
    pub mub: MubReport,
    pub raw_trace_sq: Vec<f64>,
}

impl MuUebReport {
    pub fn raw_min(&self) -> f64 {
        self.raw_trace_sq.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn raw_max(&self) -> f64 {
        self.raw_trace_sq.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn check_mu_ueb(u: &UnitaryErrorBasis, v: &UnitaryErrorBasis, tol: f64) -> Result<MuUebReport> {
    if u.n != v.n {
        return Err(Error::OrderMismatch { left: u.n, right: v.n });
    }
    let n = u.n as f64;
    let raw: Vec<f64> = u
        .members
        .iter()
        .flat_map(|a| v.members.iter().map(move |b| trace_inner(a, b).norm_sqr()))
        .collect();
    let mub = MubReport::from_overlaps(u.n * u.n, 1.0 / (n * n), raw.iter().map(|t| t / (n * n)), tol);
    Ok(MuUebReport { mub, raw_trace_sq: raw })
}

/// Relative tolerance under which two commutator norms count as tied when
/// picking the worst pair.
pub const WORST_PAIR_TIE_TOL: f64 = 1e-9;

/// `m^mu` by repeated squaring.
pub fn raise(m: &CMatrix, mu: u64) -> CMatrix {
    mat_power(m, mu).expect("error basis members are square")
}

/// `(U_s U_normalizer†)^μ` for every member, `μ = lcm(1..=n)`.
#[derive(Debug, Clone)]
pub struct PoweredMembers {
    pub mu: u64,
    pub normalizer: usize,
    powers: Vec<CMatrix>,
}

impl PoweredMembers {
    pub fn new(u: &UnitaryErrorBasis, normalizer: usize) -> Result<Self> {
        Self::build(u, normalizer, |ms, mu| ms.iter().map(|m| raise(m, mu)).collect())
    }

    /// Same as [`PoweredMembers::new`] with a caller-supplied strategy for
    /// raising the normalized members `X'_s` to the `μ`-th power (e.g. in
    /// parallel via [`raise`]). The strategy must keep input order.
    pub fn build(
        u: &UnitaryErrorBasis,
        normalizer: usize,
        strategy: impl FnOnce(&[CMatrix], u64) -> Vec<CMatrix>,
    ) -> Result<Self> {
        let len = u.members.len();
        if normalizer >= len {
            return Err(Error::IndexOutOfRange { index: normalizer, len });
        }
        let mu = lcm_up_to(u.n as u64);
        let inv = u.members[normalizer].adjoint();
        let normalized: Vec<CMatrix> = u.members.iter().map(|m| m.matmul(&inv)).collect();
        let powers = strategy(&normalized, mu);
        if powers.len() != len {
            return Err(Error::EntryCount { expected: len, found: powers.len() });
        }
        Ok(Self { mu, normalizer, powers })
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn power(&self, s: usize) -> &CMatrix {
        &self.powers[s]
    }

    /// `A B − B A` for `A = power(a)`, `B = power(b)`.
    pub fn commutator(&self, a: usize, b: usize) -> CMatrix {
        let (x, y) = (&self.powers[a], &self.powers[b]);
        &x.matmul(y) - &y.matmul(x)
    }

    /// Worst `‖X'^μ X'^μ† − I‖_F` over all members.
    pub fn max_unitarity_residual(&self) -> f64 {
        self.powers.iter().map(CMatrix::unitarity_residual).fold(0.0, f64::max)
    }

    /// All unordered pairs `(a, b)`, `a < b`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.powers.len();
        (0..len).flat_map(move |a| (a + 1..len).map(move |b| (a, b)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub mu: u64,
    pub normalizer_index: usize,
    pub worst_pair: (usize, usize),
    pub worst_commutator_norm: f64,
    /// `⟨0|K|0⟩` of the worst pair's commutator.
    pub sample_entry: C64,
    pub threshold: f64,
    pub obstructed_pairs: usize,
    pub pairs_checked: usize,
    pub max_power_unitarity_residual: f64,
    pub obstructed: bool,
}

/// One entry per pair, in [`PoweredMembers::pairs`] order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCommutator {
    pub pair: (usize, usize),
    pub norm: f64,
    pub corner: C64,
}

impl PairCommutator {
    pub fn compute(powers: &PoweredMembers, pair: (usize, usize)) -> Self {
        let k = powers.commutator(pair.0, pair.1);
        Self {
            pair,
            norm: k.frobenius_norm(),
            corner: k[(0, 0)],
        }
    }
}

impl ObstructionReport {
    /// Aggregates per-pair results. The worst pair is the lexicographically
    /// smallest pair whose norm ties the maximum within
    /// [`WORST_PAIR_TIE_TOL`], so the choice does not depend on rounding.
    pub fn from_pairs(powers: &PoweredMembers, pairs: &[PairCommutator], threshold: f64) -> Self {
        let max = pairs.iter().map(|p| p.norm).fold(0.0, f64::max);
        let cutoff = max - WORST_PAIR_TIE_TOL * max.max(1.0);
        let worst = pairs.iter().find(|p| p.norm >= cutoff).copied().unwrap_or(PairCommutator {
            pair: (powers.normalizer, powers.normalizer),
            norm: 0.0,
            corner: C64::new(0.0, 0.0),
        });
        let obstructed_pairs = pairs.iter().filter(|p| p.norm > threshold).count();
        Self {
            mu: powers.mu,
            normalizer_index: powers.normalizer,
            worst_pair: worst.pair,
            worst_commutator_norm: worst.norm,
            sample_entry: worst.corner,
            threshold,
            obstructed_pairs,
            pairs_checked: pairs.len(),
            max_power_unitarity_residual: powers.max_unitarity_residual(),
            obstructed: worst.norm > threshold,
        }
    }
}

/// Normalizes the basis so member `normalizer` becomes the identity, raises
/// every member to `μ = lcm(1..=n)` and looks for a non-commuting pair.
///
/// A monomial error basis (every Latin-square shift-and-multiply basis) has
/// diagonal `μ`-th powers, which commute; a commutator above `threshold`
/// therefore rules out equivalence to any monomial basis.
pub fn monomial_obstruction(u: &UnitaryErrorBasis, threshold: f64, normalizer: usize) -> Result<ObstructionReport> {
    let powers = PoweredMembers::new(u, normalizer)?;
    let pairs: Vec<PairCommutator> = powers.pairs().map(|p| PairCommutator::compute(&powers, p)).collect();
    Ok(ObstructionReport::from_pairs(&powers, &pairs, threshold))
}
