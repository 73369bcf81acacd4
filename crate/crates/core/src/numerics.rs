//! Dense complex vectors and matrices plus the structural predicates the rest
//! of the crate is built on.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

#[allow(unused_imports)] // f64 math without std
use num_traits::Float;

use crate::error::{Error, Result};

pub type C64 = num_complex::Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// `e^{2πi k / n}`.
pub fn root_of_unity(n: usize, k: usize) -> C64 {
    let k = k % n.max(1);
    match (n, k) {
        (_, 0) => ONE,
        (2, 1) => C64::new(-1.0, 0.0),
        (4, 1) => C64::new(0.0, 1.0),
        (4, 3) => C64::new(0.0, -1.0),
        (4, 2) => C64::new(-1.0, 0.0),
        _ => {
            let theta = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
            C64::new(theta.cos(), theta.sin())
        }
    }
}

fn check_finite(entries: &[C64]) -> Result<()> {
    match entries
        .iter()
        .position(|z| !(z.re.is_finite() && z.im.is_finite()))
    {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// A vector in `C^dim`, `dim >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    entries: Vec<C64>,
}

impl CVector {
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        check_finite(&entries)?;
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self {
            entries: vec![ZERO; dim],
        }
    }

    /// Computational basis state `|k⟩` of `C^dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut v = Self::zeros(dim);
        v.entries[k] = ONE;
        v
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<C64> {
        self.entries
    }

    /// Sesquilinear product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVector) -> C64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(ZERO, |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> CVector {
        Self {
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// `None` for the zero vector.
    pub fn normalized(&self) -> Option<CVector> {
        let norm = self.norm();
        (norm > 0.0).then(|| self.scale(C64::new(1.0 / norm, 0.0)))
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Index of the single entry within `tol` of 1 when every other entry is
    /// within `tol` of 0. No phase is allowed.
    pub fn as_basis_index(&self, tol: f64) -> Option<usize> {
        let mut found = None;
        for (k, z) in self.entries.iter().enumerate() {
            if (z - ONE).norm() <= tol {
                if found.is_some() {
                    return None;
                }
                found = Some(k);
            } else if z.norm() > tol {
                return None;
            }
        }
        found
    }
}

impl AsRef<CVector> for CVector {
    fn as_ref(&self) -> &CVector {
        self
    }
}

impl Index<usize> for CVector {
    type Output = C64;

    fn index(&self, k: usize) -> &C64 {
        &self.entries[k]
    }
}

impl Add for &CVector {
    type Output = CVector;

    fn add(self, rhs: &CVector) -> CVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        CVector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CVector {
    type Output = CVector;

    fn sub(self, rhs: &CVector) -> CVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        CVector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Classical Gram–Schmidt in input order. Returns `None` if some input is
/// (numerically) dependent on the ones before it.
pub fn gram_schmidt(vectors: &[CVector]) -> Option<Vec<CVector>> {
    let mut out: Vec<CVector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            w = &w - &u.scale(u.inner(v));
        }
        if w.norm() <= 1e-12 * v.norm().max(1.0) {
            return None;
        }
        out.push(w.normalized()?);
    }
    Some(out)
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension);
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                found: data.len(),
            });
        }
        check_finite(&data)?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::EntryCount {
                expected: c,
                found: bad.len(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(columns: &[CVector]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, CVector::dim);
        if let Some(bad) = columns.iter().find(|c| c.dim() != rows) {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: bad.dim(),
            });
        }
        Ok(Self::from_fn(rows, cols, |r, c| columns[c][r]))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r] } else { ZERO })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> CVector {
        CVector {
            entries: (0..self.rows).map(|r| self[(r, c)]).collect(),
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    pub fn square_check(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Matrix product; panics on inner-dimension mismatch (see `checked_mul`).
    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let lhs_row = self.row(r);
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for (k, a) in lhs_row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(self.matmul(rhs))
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        CVector {
            entries: (0..self.rows)
                .map(|r| self.row(r).iter().zip(v.entries()).map(|(a, b)| a * b).sum())
                .collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖U U† − I‖_F`; meaningful for square matrices.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.matmul(&self.adjoint());
        (&prod - &CMatrix::identity(self.rows)).frobenius_norm()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// A density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validates all three density-operator properties within `tol`.
    pub fn new(mat: CMatrix, tol: f64) -> Result<Self> {
        mat.square_check()?;
        if (&mat - &mat.adjoint()).max_abs() > tol {
            return Err(Error::InvalidDensity {
                reason: "not Hermitian",
            });
        }
        if (mat.trace() - ONE).norm() > tol {
            return Err(Error::InvalidDensity {
                reason: "trace differs from 1",
            });
        }
        if !is_psd_within(&mat, tol) {
            return Err(Error::InvalidDensity {
                reason: "not positive semidefinite",
            });
        }
        Ok(Self { mat })
    }

    /// `|v⟩⟨v|`. The caller supplies a unit vector.
    pub fn from_pure(v: &CVector) -> Self {
        let e = v.entries();
        Self {
            mat: CMatrix::from_fn(e.len(), e.len(), |r, c| e[r] * e[c].conj()),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }
}

/// Gershgorin discs first; if they are inconclusive, a Cholesky attempt on
/// `A + 2·tol·I`, which succeeds iff the smallest eigenvalue exceeds `-2·tol`.
fn is_psd_within(mat: &CMatrix, tol: f64) -> bool {
    let n = mat.rows();
    let gershgorin_ok = (0..n).all(|i| {
        let radius: f64 = (0..n).filter(|&j| j != i).map(|j| mat[(i, j)].norm()).sum();
        mat[(i, i)].re - radius >= -tol
    });
    if gershgorin_ok {
        return true;
    }
    let shift = 2.0 * tol;
    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = mat[(j, j)].re + shift;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 {
            return false;
        }
        let d = d.sqrt();
        l[(j, j)] = C64::new(d, 0.0);
        for i in j + 1..n {
            let mut s = mat[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / d;
        }
    }
    true
}

/// Kronecker product: entry `(i·b.rows + k, j·b.cols + l) = a[i,j]·b[k,l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (br, bc) = b.shape();
    CMatrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

/// `ρ_A = Σ_k (I ⊗ ⟨k|) ρ (I ⊗ |k⟩)` for `ρ` on `C^n ⊗ C^n`.
pub fn partial_trace_second(rho: &DensityMatrix, n: usize) -> Result<CMatrix> {
    if n == 0 || rho.dim() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: rho.dim(),
        });
    }
    let m = rho.matrix();
    Ok(CMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| m[(i * n + k, j * n + k)]).sum()
    }))
}

/// `u^e` by binary exponentiation; `e = 0` gives the identity.
pub fn mat_power(u: &CMatrix, mut e: u64) -> Result<CMatrix> {
    let n = u.square_check()?;
    let mut result = CMatrix::identity(n);
    let mut base = u.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = result.matmul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.matmul(&base);
        }
    }
    Ok(result)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `lcm(1, …, n)`. Panics on overflow (first at n = 43).
pub fn lcm_up_to(n: u64) -> u64 {
    (1..=n).fold(1u64, |acc, k| {
        (acc / gcd(acc, k))
            .checked_mul(k)
            .expect("lcm(1..=n) overflows u64")
    })
}

/// Every row and every column holds exactly one entry within `tol` of 1 and
/// all other entries are within `tol` of 0.
pub fn is_permutation_matrix(m: &CMatrix, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    let mut col_hits = vec![0usize; n];
    for r in 0..n {
        let mut row_hits = 0;
        for (c, z) in m.row(r).iter().enumerate() {
            if (z - ONE).norm() <= tol {
                row_hits += 1;
                col_hits[c] += 1;
            } else if z.norm() > tol {
                return false;
            }
        }
        if row_hits != 1 {
            return false;
        }
    }
    col_hits.iter().all(|&h| h == 1)
}

/// Every row and every column has exactly one entry of modulus above `tol`.
pub fn is_monomial(m: &CMatrix, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    let mut col_hits = vec![0usize; n];
    for r in 0..n {
        let mut row_hits = 0;
        for (c, z) in m.row(r).iter().enumerate() {
            if z.norm() > tol {
                row_hits += 1;
                col_hits[c] += 1;
            }
        }
        if row_hits != 1 {
            return false;
        }
    }
    col_hits.iter().all(|&h| h == 1)
}

pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok((a - b).frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> CMatrix {
        CMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn pauli_x() -> CMatrix {
        real(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    #[test]
    fn kron_of_identities_is_identity() {
        assert_eq!(kron(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
    }

    #[test]
    fn kron_swap_with_identity_is_block_antidiagonal() {
        let m = kron(&pauli_x(), &CMatrix::identity(2));
        let expected = real(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]);
        assert_eq!(m, expected);
    }

    #[test]
    fn kron_is_associative_on_integer_matrices() {
        let a = real(&[&[1.0, 2.0], &[3.0, -1.0]]);
        let b = real(&[&[0.0, 5.0, 1.0]]);
        let d = real(&[&[2.0], &[-3.0]]);
        assert_eq!(kron(&kron(&a, &b), &d), kron(&a, &kron(&b, &d)));
    }

    #[test]
    fn bell_state_reduces_to_half_identity() {
        let s = 1.0 / 2f64.sqrt();
        let bell = CVector::from_reals(&[s, 0.0, 0.0, s]).unwrap();
        let rho = DensityMatrix::from_pure(&bell);
        let reduced = partial_trace_second(&rho, 2).unwrap();
        let half = CMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(frobenius_distance(&reduced, &half).unwrap() < 1e-15);
    }

    #[test]
    fn product_state_reduces_to_projector() {
        let rho = DensityMatrix::from_pure(&CVector::basis(4, 0));
        let reduced = partial_trace_second(&rho, 2).unwrap();
        assert_eq!(reduced, real(&[&[1.0, 0.0], &[0.0, 0.0]]));
        assert_eq!(reduced.trace(), ONE);
    }

    #[test]
    fn partial_trace_rejects_wrong_dimension() {
        let rho = DensityMatrix::from_pure(&CVector::basis(3, 0));
        assert_eq!(
            partial_trace_second(&rho, 2),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn density_validation() {
        let s = 1.0 / 2f64.sqrt();
        let plus = CVector::from_reals(&[s, s]).unwrap();
        let pure = DensityMatrix::from_pure(&plus).matrix().clone();
        assert!(DensityMatrix::new(pure, 1e-9).is_ok());
        // pure state that Gershgorin alone cannot certify
        let v = CVector::from_reals(&[0.8, 0.6]).unwrap();
        assert!(DensityMatrix::new(DensityMatrix::from_pure(&v).matrix().clone(), 1e-9).is_ok());
        let indefinite = real(&[&[0.5, 0.9], &[0.9, 0.5]]);
        assert_eq!(
            DensityMatrix::new(indefinite, 1e-9),
            Err(Error::InvalidDensity { reason: "not positive semidefinite" })
        );
        let skew = CMatrix::from_rows(alloc::vec![
            alloc::vec![c(0.5, 0.0), c(0.0, 0.1)],
            alloc::vec![c(0.0, 0.1), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(DensityMatrix::new(skew, 1e-9), Err(Error::InvalidDensity { .. })));
        assert!(matches!(
            DensityMatrix::new(CMatrix::identity(2), 1e-9),
            Err(Error::InvalidDensity { reason: "trace differs from 1" })
        ));
    }

    #[test]
    fn power_of_identity() {
        let p = mat_power(&CMatrix::identity(3), 2520).unwrap();
        assert_eq!(p, CMatrix::identity(3));
        assert_eq!(mat_power(&pauli_x(), 0).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn power_of_cube_roots_of_unity() {
        let w = root_of_unity(3, 1);
        let d = CMatrix::diagonal(&[w, w * w, ONE]);
        let p = mat_power(&d, 2520).unwrap();
        // rounding grows roughly linearly in the exponent
        assert!(frobenius_distance(&p, &CMatrix::identity(3)).unwrap() < 1e-11);
    }

    #[test]
    fn power_rejects_non_square() {
        let m = CMatrix::zeros(2, 3);
        assert_eq!(mat_power(&m, 2), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_up_to(9), 2520);
        assert_eq!(lcm_up_to(1), 1);
        assert_eq!(lcm_up_to(4), 12);
        // direct: lcm(1,2,3,4) by enumeration of common multiples
        let brute = (1..).find(|m| (1..=4).all(|k| m % k == 0)).unwrap();
        assert_eq!(lcm_up_to(4), brute);
    }

    #[test]
    fn permutation_predicate() {
        assert!(is_permutation_matrix(&CMatrix::identity(3), 1e-9));
        assert!(!is_permutation_matrix(&real(&[&[1.0, 1.0], &[0.0, 0.0]]), 1e-9));
        assert!(!is_permutation_matrix(&CMatrix::diagonal(&[c(0.0, 1.0), ONE]), 1e-9));
    }

    #[test]
    fn monomial_predicate() {
        assert!(is_monomial(&CMatrix::diagonal(&[c(0.0, 1.0), c(-1.0, 0.0)]), 1e-9));
        let f2 = real(&[&[1.0, 1.0], &[1.0, -1.0]]);
        assert!(!is_monomial(&f2, 1e-9));
        assert!(!is_monomial(&CMatrix::zeros(2, 3), 1e-9));
    }

    #[test]
    fn frobenius_examples() {
        let i2 = CMatrix::identity(2);
        assert_eq!(frobenius_distance(&i2, &i2).unwrap(), 0.0);
        assert_eq!(frobenius_distance(&i2, &pauli_x()).unwrap(), 2.0);
        assert!(frobenius_distance(&i2, &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert_eq!(CVector::new(alloc::vec![]), Err(Error::EmptyDimension));
        assert_eq!(
            CVector::new(alloc::vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { index: 0 })
        );
        assert_eq!(
            CMatrix::new(2, 2, alloc::vec![ONE; 3]),
            Err(Error::EntryCount { expected: 4, found: 3 })
        );
    }

    #[test]
    fn basis_index_detection() {
        assert_eq!(CVector::basis(4, 2).as_basis_index(1e-9), Some(2));
        assert_eq!(CVector::basis(4, 2).scale(c(-1.0, 0.0)).as_basis_index(1e-9), None);
        let s = 1.0 / 2f64.sqrt();
        assert_eq!(CVector::from_reals(&[s, s]).unwrap().as_basis_index(1e-9), None);
    }

    #[test]
    fn gram_schmidt_orthonormalizes() {
        let v = [
            CVector::from_reals(&[1.0, 1.0, 0.0]).unwrap(),
            CVector::from_reals(&[1.0, 0.0, 1.0]).unwrap(),
            CVector::from_reals(&[0.0, 1.0, 1.0]).unwrap(),
        ];
        let q = gram_schmidt(&v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((q[i].inner(&q[j]) - c(expected, 0.0)).norm() < 1e-12);
            }
        }
        assert!(gram_schmidt(&[v[0].clone(), v[0].scale(c(2.0, 0.0))]).is_none());
    }
}
