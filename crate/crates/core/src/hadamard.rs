//! Generalized complex Hadamard matrices: unimodular entries with
//! `H H† = H† H = n I`.

use alloc::vec::Vec;

#[allow(unused_imports)] // f64 math without std
use num_traits::Float;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::numerics::{kron, root_of_unity, CMatrix, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct HadamardMatrix {
    mat: CMatrix,
    residual: f64,
}

impl HadamardMatrix {
    pub fn order(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.mat[(r, c)]
    }

    /// Largest deviation seen across the three defining identities.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `(1/√n) H`, a unitary.
    pub fn normalized(&self) -> CMatrix {
        self.mat.scale(C64::new(1.0 / (self.order() as f64).sqrt(), 0.0))
    }

    /// The transpose is again Hadamard.
    pub fn transpose(&self) -> HadamardMatrix {
        HadamardMatrix {
            mat: self.mat.transpose(),
            residual: self.residual,
        }
    }

    /// `D_r · P_r · H · P_c · D_c`: rows permuted by `row_perm` then scaled by
    /// `row_phases`, columns likewise. Equivalent Hadamards stay Hadamard.
    pub fn equivalent(
        &self,
        row_perm: &[usize],
        row_phases: &[C64],
        col_perm: &[usize],
        col_phases: &[C64],
        tol: f64,
    ) -> Result<HadamardMatrix, HadamardViolation> {
        let n = self.order();
        let m = CMatrix::from_fn(n, n, |r, c| {
            row_phases[r] * self.mat[(row_perm[r], col_perm[c])] * col_phases[c]
        });
        validate_hadamard(&m, tol)
    }
}

/// The first identity that fails, in the order: entry moduli, row products
/// (`H H† = n I`), column products (`H† H = n I`).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HadamardViolation {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("|H[{row},{col}]| = {modulus}, expected 1")]
    EntryModulus { row: usize, col: usize, modulus: f64 },
    #[error("H·H† ≠ nI: rows {i},{j} have product {value}, expected {expected}")]
    RowProduct {
        i: usize,
        j: usize,
        value: C64,
        expected: f64,
    },
    #[error("H†·H ≠ nI: columns {i},{j} have product {value}, expected {expected}")]
    ColumnProduct {
        i: usize,
        j: usize,
        value: C64,
        expected: f64,
    },
}

pub fn validate_hadamard(m: &CMatrix, tol: f64) -> Result<HadamardMatrix, HadamardViolation> {
    if !m.is_square() {
        return Err(HadamardViolation::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut residual: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            let modulus = m[(r, c)].norm();
            let dev = (modulus - 1.0).abs();
            if dev > tol {
                return Err(HadamardViolation::EntryModulus { row: r, col: c, modulus });
            }
            residual = residual.max(dev);
        }
    }
    let rows = m.matmul(&m.adjoint());
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { n as f64 } else { 0.0 };
            let dev = (rows[(i, j)] - C64::new(expected, 0.0)).norm();
            if dev > tol {
                return Err(HadamardViolation::RowProduct {
                    i,
                    j,
                    value: rows[(i, j)],
                    expected,
                });
            }
            residual = residual.max(dev);
        }
    }
    let cols = m.adjoint().matmul(m);
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { n as f64 } else { 0.0 };
            let dev = (cols[(i, j)] - C64::new(expected, 0.0)).norm();
            if dev > tol {
                return Err(HadamardViolation::ColumnProduct {
                    i,
                    j,
                    value: cols[(i, j)],
                    expected,
                });
            }
            residual = residual.max(dev);
        }
    }
    Ok(HadamardMatrix {
        mat: m.clone(),
        residual,
    })
}

/// Fourier matrix `F_n[r, c] = e^{2πi rc/n}`.
pub fn fourier(n: usize) -> HadamardMatrix {
    assert!(n >= 1, "Fourier order must be positive");
    let mat = CMatrix::from_fn(n, n, |r, c| root_of_unity(n, (r * c) % n));
    validate_hadamard(&mat, 1e-9).expect("Fourier matrices are Hadamard")
}

/// `a ⊗ b`, revalidated.
pub fn tensor_hadamard(a: &HadamardMatrix, b: &HadamardMatrix) -> HadamardMatrix {
    validate_hadamard(&kron(a.matrix(), b.matrix()), crate::DEFAULT_TOL)
        .expect("tensor products of Hadamards are Hadamard")
}

/// `F_{f_0} ⊗ F_{f_1} ⊗ …`, of order `Π f_i`; the empty product is `F_1`.
pub fn fourier_product(factors: &[usize]) -> HadamardMatrix {
    factors
        .iter()
        .fold(fourier(1), |acc, &f| tensor_hadamard(&acc, &fourier(f)))
}

/// One Hadamard per row index of a square, all of the same order `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardFamily {
    members: Vec<HadamardMatrix>,
}

impl HadamardFamily {
    pub fn new(members: Vec<HadamardMatrix>) -> Result<Self> {
        let n = members.first().map_or(0, HadamardMatrix::order);
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if members.len() != n {
            return Err(Error::FamilyLength {
                expected: n,
                found: members.len(),
            });
        }
        if let Some(bad) = members.iter().find(|h| h.order() != n) {
            return Err(Error::OrderMismatch {
                left: n,
                right: bad.order(),
            });
        }
        Ok(Self { members })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn member(&self, j: usize) -> &HadamardMatrix {
        &self.members[j]
    }

    pub fn members(&self) -> &[HadamardMatrix] {
        &self.members
    }
}

/// `n` copies of `h`.
pub fn constant_family(h: &HadamardMatrix) -> HadamardFamily {
    HadamardFamily {
        members: (0..h.order()).map(|_| h.clone()).collect(),
    }
}
