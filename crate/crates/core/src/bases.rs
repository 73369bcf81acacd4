//! Maximally entangled bases built from quantum Latin squares and Hadamards,
//! and the checks used to verify them.
//!
//! A bipartite amplitude for `|k, p⟩` sits at flat index `k * n + p`; a basis
//! state labelled `(i, j)` sits at position `i * n + j` of its basis.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // f64 math without std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hadamard::{HadamardFamily, HadamardMatrix};
use crate::numerics::{partial_trace_second, CMatrix, CVector, DensityMatrix, C64, ONE, ZERO};
use crate::squares::{left_conjugate, LatinSquare, QuantumLatinSquare};

/// A unit vector of `C^n ⊗ C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    n: usize,
    vec: CVector,
}

impl BipartiteState {
    /// Requires `vec.dim() == n²` and unit norm within `tol`.
    pub fn new(n: usize, vec: CVector, tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if vec.dim() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: vec.dim(),
            });
        }
        if (vec.norm() - 1.0).abs() > tol {
            return Err(Error::InvalidDensity {
                reason: "state is not normalized",
            });
        }
        Ok(Self { n, vec })
    }

    /// `(1/√n) Σ_k |k⟩ ⊗ U|k⟩`.
    pub fn from_unitary(u: &CMatrix) -> Result<Self> {
        let n = u.square_check()?;
        let s = 1.0 / (n as f64).sqrt();
        let mut amps = vec![ZERO; n * n];
        for k in 0..n {
            for p in 0..n {
                amps[k * n + p] = u[(p, k)] * s;
            }
        }
        Ok(Self {
            n,
            vec: CVector::new(amps)?,
        })
    }

    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn vector(&self) -> &CVector {
        &self.vec
    }

    pub fn amplitude(&self, k: usize, p: usize) -> C64 {
        self.vec[k * self.n + p]
    }

    /// `‖Tr_B |s⟩⟨s| − I/n‖_F`.
    pub fn entanglement_residual(&self) -> f64 {
        let rho = DensityMatrix::from_pure(&self.vec);
        let reduced = partial_trace_second(&rho, self.n).expect("dimension fixed at construction");
        let target = CMatrix::identity(self.n).scale(C64::new(1.0 / self.n as f64, 0.0));
        (&reduced - &target).frobenius_norm()
    }
}

impl AsRef<CVector> for BipartiteState {
    fn as_ref(&self) -> &CVector {
        &self.vec
    }
}

/// `n²` bipartite states, labelled `(i, j)` at position `i * n + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteBasis {
    n: usize,
    states: Vec<BipartiteState>,
}

impl BipartiteBasis {
    /// Checks count and dimensions only; orthonormality is a separate check.
    pub fn new(n: usize, states: Vec<BipartiteState>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if states.len() != n * n {
            return Err(Error::EntryCount {
                expected: n * n,
                found: states.len(),
            });
        }
        if let Some(bad) = states.iter().find(|s| s.n != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n,
            });
        }
        Ok(Self { n, states })
    }

    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn states(&self) -> &[BipartiteState] {
        &self.states
    }

    pub fn state(&self, i: usize, j: usize) -> &BipartiteState {
        &self.states[i * self.n + j]
    }

    pub fn into_states(self) -> Vec<BipartiteState> {
        self.states
    }
}

fn check_orders(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::OrderMismatch { left, right });
    }
    Ok(())
}

/// State `(i, j)` is `(1/√n) Σ_k |k⟩ ⊗ |Q_{kj}⟩ ⟨k|H_j|i⟩`, where `Q_{kj}` is
/// the vector in column `k` of row `j`.
pub fn qls_meb(q: &QuantumLatinSquare, f: &HadamardFamily) -> Result<BipartiteBasis> {
    let n = q.order();
    check_orders(n, f.order())?;
    let grid = q.grid();
    let s = 1.0 / (n as f64).sqrt();
    let mut states = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let h = f.member(j);
            let mut amps = vec![ZERO; n * n];
            for k in 0..n {
                let coeff = h.get(k, i) * s;
                for (p, z) in grid.entry(j, k).entries().iter().enumerate() {
                    amps[k * n + p] = coeff * z;
                }
            }
            states.push(BipartiteState {
                n,
                vec: CVector::new(amps)?,
            });
        }
    }
    Ok(BipartiteBasis { n, states })
}

/// State `(i, j)` has amplitude `(1/√n) H_{ik} [L_{kp} = j]` at `|k, p⟩`, with
/// `L_{kp}` the symbol in column `k` of row `p`.
pub fn lbw_meb(l: &LatinSquare, h: &HadamardMatrix) -> Result<BipartiteBasis> {
    let n = l.order();
    check_orders(n, h.order())?;
    let s = 1.0 / (n as f64).sqrt();
    let mut states = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut amps = vec![ZERO; n * n];
            for k in 0..n {
                for p in 0..n {
                    if l.get(p, k) == j {
                        amps[k * n + p] = h.get(i, k) * s;
                    }
                }
            }
            states.push(BipartiteState {
                n,
                vec: CVector::new(amps)?,
            });
        }
    }
    Ok(BipartiteBasis { n, states })
}

pub fn is_maximally_entangled(s: &BipartiteState, tol: f64) -> bool {
    s.entanglement_residual() <= tol
}

/// The `U` with `s = (1/√n) Σ_k |k⟩ ⊗ U|k⟩`, i.e. `U_{pk} = √n · amp(k, p)`.
pub fn extract_unitary(s: &BipartiteState, tol: f64) -> Result<CMatrix> {
    let residual = s.entanglement_residual();
    if residual > tol {
        return Err(Error::NotMaximallyEntangled { residual });
    }
    let n = s.n;
    let scale = (n as f64).sqrt();
    Ok(CMatrix::from_fn(n, n, |p, k| s.amplitude(k, p) * scale))
}

/// Largest deviation of the Gram matrix from the identity.
pub fn gram_residual<V: AsRef<CVector>>(states: &[V]) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, va) in states.iter().enumerate() {
        for (b, vb) in states.iter().enumerate().skip(a) {
            let target = if a == b { ONE } else { ZERO };
            worst = worst.max((va.as_ref().inner(vb.as_ref()) - target).norm());
        }
    }
    worst
}

pub fn is_orthonormal_basis(b: &BipartiteBasis, tol: f64) -> bool {
    gram_residual(b.states()) <= tol
}

/// Squared-overlap statistics between two bases of the same space.
#[derive(Debug, Clone, PartialEq)]
pub struct MubReport {
    pub dim: usize,
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub tol: f64,
    pub pass: bool,
}

impl MubReport {
    /// Folds overlaps given in canonical (row-major) order; `target` is the
    /// value every overlap must match.
    pub fn from_overlaps(dim: usize, target: f64, overlaps: impl IntoIterator<Item = f64>, tol: f64) -> Self {
        let (mut min, mut max, mut sum, mut count) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0usize);
        for v in overlaps {
            min = min.min(v);
            max = max.max(v);
            sum += v;
            count += 1;
        }
        let pass = count > 0 && (max - target).abs() <= tol && (min - target).abs() <= tol;
        Self {
            dim,
            count,
            min,
            max,
            mean: if count > 0 { sum / count as f64 } else { f64::NAN },
            tol,
            pass,
        }
    }

    pub fn target(&self) -> f64 {
        1.0 / self.dim as f64
    }
}

/// `|⟨a_s|b_t⟩|²` for one state of `a` against every state of `b`.
pub fn overlap_row<V: AsRef<CVector>>(a_state: &CVector, b: &[V]) -> Vec<f64> {
    b.iter().map(|bt| a_state.inner(bt.as_ref()).norm_sqr()).collect()
}

/// All `d²` squared overlaps; passes iff each is within `tol` of `1/d`.
pub fn check_mub<A: AsRef<CVector>, B: AsRef<CVector>>(a: &[A], b: &[B], tol: f64) -> Result<MubReport> {
    let dim = a.first().map_or(0, |v| v.as_ref().dim());
    for v in a.iter().map(AsRef::as_ref).chain(b.iter().map(AsRef::as_ref)) {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
    }
    if a.len() != dim || b.len() != dim {
        return Err(Error::EntryCount {
            expected: dim,
            found: if a.len() != dim { a.len() } else { b.len() },
        });
    }
    let overlaps = a.iter().flat_map(|s| overlap_row(s.as_ref(), b));
    Ok(MubReport::from_overlaps(dim, 1.0 / dim as f64, overlaps, tol))
}

/// `a_s = phases[s] · b_{pairing[s]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatching {
    pub pairing: Vec<usize>,
    pub phases: Vec<C64>,
}

/// Decides whether `b` is a relabelling of `a` with per-state phases: the
/// overlap moduli must form a permutation pattern within `tol`.
pub fn bases_match_up_to_phase<A: AsRef<CVector>, B: AsRef<CVector>>(
    a: &[A],
    b: &[B],
    tol: f64,
) -> Option<PhaseMatching> {
    if a.len() != b.len() {
        return None;
    }
    let mut taken = vec![false; b.len()];
    let mut pairing = Vec::with_capacity(a.len());
    let mut phases = Vec::with_capacity(a.len());
    for sa in a {
        let sa = sa.as_ref();
        let mut hit = None;
        for (t, sb) in b.iter().enumerate() {
            let sb = sb.as_ref();
            if sa.dim() != sb.dim() {
                return None;
            }
            let ov = sb.inner(sa);
            let modulus = ov.norm();
            if (modulus - 1.0).abs() <= tol {
                if hit.is_some() || taken[t] {
                    return None;
                }
                hit = Some((t, ov));
            } else if modulus > tol {
                return None;
            }
        }
        let (t, phase) = hit?;
        taken[t] = true;
        pairing.push(t);
        phases.push(phase);
    }
    Some(PhaseMatching { pairing, phases })
}

/// Candidate ways of feeding a Latin square and Hadamard to [`lbw_meb`] so
/// that it reproduces [`qls_meb`] with a constant family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetCorrespondence {
    pub conjugate_square: bool,
    pub transpose_hadamard: bool,
}

impl SubsetCorrespondence {
    pub const ALL: [SubsetCorrespondence; 4] = [
        Self { conjugate_square: false, transpose_hadamard: false },
        Self { conjugate_square: false, transpose_hadamard: true },
        Self { conjugate_square: true, transpose_hadamard: false },
        Self { conjugate_square: true, transpose_hadamard: true },
    ];

    pub fn lbw_basis(&self, l: &LatinSquare, h: &HadamardMatrix) -> Result<BipartiteBasis> {
        let square = if self.conjugate_square { left_conjugate(l) } else { l.clone() };
        let had = if self.transpose_hadamard { h.transpose() } else { h.clone() };
        lbw_meb(&square, &had)
    }
}

/// Every candidate correspondence under which `lbw_meb` matches
/// `qls_meb(l, constant_family(h))` up to relabelling and phases.
pub fn subset_correspondences(
    l: &LatinSquare,
    h: &HadamardMatrix,
    tol: f64,
) -> Result<Vec<SubsetCorrespondence>> {
    let qls = qls_meb(&QuantumLatinSquare::from(l), &crate::hadamard::constant_family(h))?;
    let mut out = Vec::new();
    for cand in SubsetCorrespondence::ALL {
        let lbw = cand.lbw_basis(l, h)?;
        if bases_match_up_to_phase(qls.states(), lbw.states(), tol).is_some() {
            out.push(cand);
        }
    }
    Ok(out)
}
