//! Quantum Latin squares, Latin squares, left conjugates and the orthogonality
//! relations between them.
//!
//! Grids are stored row-major. When `Q_{ij}` denotes the
//! vector in column `i` of row `j`, this module reads `entry(j, i)`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::numerics::{CMatrix, CVector, C64, ONE, ZERO};

/// An `n × n` array of vectors in `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorGrid {
    n: usize,
    entries: Vec<CVector>,
}

impl VectorGrid {
    /// `entries` is row-major and must hold `n²` vectors of dimension `n`.
    pub fn new(n: usize, entries: Vec<CVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != n * n {
            return Err(Error::EntryCount {
                expected: n * n,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<CVector>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::EntryCount {
                expected: n,
                found: bad.len(),
            });
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// The grid whose cells are the computational basis states named by `l`.
    pub fn from_latin(l: &LatinSquare) -> Self {
        let n = l.order();
        Self {
            n,
            entries: l.cells.iter().map(|&s| CVector::basis(n, s)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &CVector {
        &self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[CVector] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn entries(&self) -> &[CVector] {
        &self.entries
    }
}

/// A grid whose rows and columns are all orthonormal bases.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumLatinSquare {
    grid: VectorGrid,
    tol: f64,
}

impl QuantumLatinSquare {
    pub fn grid(&self) -> &VectorGrid {
        &self.grid
    }

    pub fn order(&self) -> usize {
        self.grid.order()
    }

    /// Tolerance the square was validated at.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn into_grid(self) -> VectorGrid {
        self.grid
    }
}

impl From<&LatinSquare> for QuantumLatinSquare {
    fn from(l: &LatinSquare) -> Self {
        Self {
            grid: VectorGrid::from_latin(l),
            tol: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineKind {
    Row,
    Column,
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineKind::Row => "row",
            LineKind::Column => "column",
        })
    }
}

/// One Gram entry `⟨v_a|v_b⟩` of a line that misses its target (δ_ab).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramEntry {
    pub pair: (usize, usize),
    pub value: C64,
}

/// First line (rows before columns, in index order) whose vectors are not
/// orthonormal, with every offending Gram entry of that line (`a <= b`).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{line} {index} is not orthonormal: Gram entry {pair:?} = {value} ({} offending entries)", .offending.len())]
pub struct QlsViolation {
    pub line: LineKind,
    pub index: usize,
    pub pair: (usize, usize),
    pub value: C64,
    pub offending: Vec<GramEntry>,
}

fn line_violations(vectors: &[&CVector], tol: f64) -> Vec<GramEntry> {
    let mut out = Vec::new();
    for a in 0..vectors.len() {
        for b in a..vectors.len() {
            let value = vectors[a].inner(vectors[b]);
            let target = if a == b { ONE } else { ZERO };
            if (value - target).norm() > tol {
                out.push(GramEntry { pair: (a, b), value });
            }
        }
    }
    out
}

/// Checks that all `2n` lines are orthonormal within `tol`.
pub fn validate_qls(g: &VectorGrid, tol: f64) -> Result<QuantumLatinSquare, QlsViolation> {
    let n = g.order();
    let lines = (0..n)
        .map(|r| (LineKind::Row, r))
        .chain((0..n).map(|c| (LineKind::Column, c)));
    for (line, index) in lines {
        let vectors: Vec<&CVector> = match line {
            LineKind::Row => g.row(index).iter().collect(),
            LineKind::Column => (0..n).map(|r| g.entry(r, index)).collect(),
        };
        let offending = line_violations(&vectors, tol);
        if let Some(first) = offending.first() {
            return Err(QlsViolation {
                line,
                index,
                pair: first.pair,
                value: first.value,
                offending,
            });
        }
    }
    Ok(QuantumLatinSquare {
        grid: g.clone(),
        tol,
    })
}

/// Integer Latin square on symbols `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    /// `cells` row-major; every symbol must occur once per row and column.
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if cells.len() != n * n {
            return Err(Error::EntryCount {
                expected: n * n,
                found: cells.len(),
            });
        }
        if cells.iter().any(|&s| s >= n) {
            return Err(Error::InvalidLatinSquare {
                reason: "symbol out of range",
            });
        }
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..n {
                let s = &mut seen[cells[r * n + c]];
                if *s {
                    return Err(Error::InvalidLatinSquare {
                        reason: "repeated symbol in a row",
                    });
                }
                *s = true;
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let s = &mut seen[cells[r * n + c]];
                if *s {
                    return Err(Error::InvalidLatinSquare {
                        reason: "repeated symbol in a column",
                    });
                }
                *s = true;
            }
        }
        Ok(Self { n, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::EntryCount {
                expected: n,
                found: bad.len(),
            });
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::new(n, (0..n * n).map(|k| f(k / n, k % n)).collect())
    }

    /// Cayley table of `Z_n`: `cell(r, c) = r + c mod n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |r, c| (r + c) % n).expect("group tables are Latin")
    }

    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<usize>) -> Self {
        debug_assert!(Self::new(n, cells.clone()).is_ok());
        Self { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.n + col]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.n)
    }

    pub fn transpose(&self) -> LatinSquare {
        let n = self.n;
        Self::from_cells_unchecked(n, (0..n * n).map(|k| self.get(k % n, k / n)).collect())
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            for (c, s) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reads the grid as a Latin square when every entry is literally a
/// computational basis vector (no phase) and the Latin property holds.
pub fn as_latin_square(g: &VectorGrid, tol: f64) -> Option<LatinSquare> {
    let cells = g
        .entries()
        .iter()
        .map(|v| v.as_basis_index(tol))
        .collect::<Option<Vec<_>>>()?;
    LatinSquare::new(g.order(), cells).ok()
}

/// Left conjugate (left division `a\c = b` whenever `a*b = c`).
///
/// The product `a*b` puts `a` on the column index and `b` on the row index,
/// so in row-major storage the conjugate inverts each column:
/// `cell'(r, c) = b` where `cell(b, c) = r`. The map is an involution.
pub fn left_conjugate(l: &LatinSquare) -> LatinSquare {
    let n = l.order();
    let mut cells = vec![0; n * n];
    for b in 0..n {
        for c in 0..n {
            cells[l.get(b, c) * n + c] = b;
        }
    }
    LatinSquare::from_cells_unchecked(n, cells)
}

fn same_order(a: &LatinSquare, b: &LatinSquare) -> Result<usize> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(a.order())
}

/// `P = Σ_{r,c} |r, c⟩⟨a(r,c)|⟨b(r,c)|` on computational indices; a
/// permutation matrix exactly when `a` and `b` are orthogonal.
pub fn orthogonality_map(a: &LatinSquare, b: &LatinSquare) -> Result<CMatrix> {
    let n = same_order(a, b)?;
    let mut p = CMatrix::zeros(n * n, n * n);
    for r in 0..n {
        for c in 0..n {
            p[(r * n + c, a.get(r, c) * n + b.get(r, c))] = ONE;
        }
    }
    Ok(p)
}

/// Superimposing the squares yields every ordered symbol pair.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    let n = same_order(a, b)?;
    let mut seen = vec![false; n * n];
    for (x, y) in a.cells().iter().zip(b.cells()) {
        let slot = &mut seen[x * n + y];
        if *slot {
            return Ok(false);
        }
        *slot = true;
    }
    Ok(true)
}

pub fn are_left_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    same_order(a, b)?;
    are_orthogonal(&left_conjugate(a), &left_conjugate(b))
}

/// `t[i][j]`: the column where row `i` of the first grid and row `j` of the
/// second have componentwise inner product 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakOrthWitness {
    n: usize,
    t: Vec<usize>,
}

impl WeakOrthWitness {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.t[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.t.chunks(self.n)
    }

    /// The table with the roles of the two grids exchanged.
    pub fn transposed(&self) -> WeakOrthWitness {
        let n = self.n;
        WeakOrthWitness {
            n,
            t: (0..n * n).map(|k| self.get(k % n, k / n)).collect(),
        }
    }
}

/// Why a pair of grids is not weak orthogonal. Positions are
/// `(row of q, row of p, column)`; the first violation is the
/// lexicographically smallest.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeakOrthError {
    #[error("grid orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("rows ({row_q}, {row_p}) column {column}: product {value} is neither 0 nor 1")]
    NotBinary {
        row_q: usize,
        row_p: usize,
        column: usize,
        value: C64,
    },
    #[error("rows ({row_q}, {row_p}): second unit product at column {column} (first at {first})")]
    NonUniqueUnit {
        row_q: usize,
        row_p: usize,
        first: usize,
        column: usize,
        value: C64,
    },
    #[error("rows ({row_q}, {row_p}): no unit product in any column")]
    MissingUnit { row_q: usize, row_p: usize },
}

/// Componentwise products `v_k = ⟨q(i,k)|p(j,k)⟩` must be `n−1` zeros and
/// a single exact 1 for every row pair `(i, j)`.
pub fn weak_orth_witness(
    q: &VectorGrid,
    p: &VectorGrid,
    tol: f64,
) -> Result<WeakOrthWitness, WeakOrthError> {
    let n = q.order();
    if p.order() != n {
        return Err(WeakOrthError::OrderMismatch {
            left: n,
            right: p.order(),
        });
    }
    let mut t = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut unit = None;
            for k in 0..n {
                let value = q.entry(i, k).inner(p.entry(j, k));
                if (value - ONE).norm() <= tol {
                    if let Some(first) = unit {
                        return Err(WeakOrthError::NonUniqueUnit {
                            row_q: i,
                            row_p: j,
                            first,
                            column: k,
                            value,
                        });
                    }
                    unit = Some(k);
                } else if value.norm() > tol {
                    return Err(WeakOrthError::NotBinary {
                        row_q: i,
                        row_p: j,
                        column: k,
                        value,
                    });
                }
            }
            match unit {
                Some(k) => t.push(k),
                None => return Err(WeakOrthError::MissingUnit { row_q: i, row_p: j }),
            }
        }
    }
    Ok(WeakOrthWitness { n, t })
}

/// Witness (or failure) for every unordered pair `(a, b)`, `a < b`.
pub fn moqls_witnesses(
    family: &[VectorGrid],
    tol: f64,
) -> Result<Vec<((usize, usize), Result<WeakOrthWitness, WeakOrthError>)>> {
    if family.len() < 2 {
        return Err(Error::FamilyTooShort {
            found: family.len(),
        });
    }
    let n = family[0].order();
    if let Some(bad) = family.iter().find(|g| g.order() != n) {
        return Err(Error::OrderMismatch {
            left: n,
            right: bad.order(),
        });
    }
    let mut out = Vec::new();
    for a in 0..family.len() {
        for b in a + 1..family.len() {
            out.push(((a, b), weak_orth_witness(&family[a], &family[b], tol)));
        }
    }
    Ok(out)
}

/// Pairwise weak orthogonality of a family of grids.
pub fn is_moqls(family: &[VectorGrid], tol: f64) -> Result<bool> {
    Ok(moqls_witnesses(family, tol)?.iter().all(|(_, w)| w.is_ok()))
}

/// Distinct symbols of a row; `n` for any row of a Latin square.
pub fn distinct_in_row(l: &LatinSquare, row: usize) -> usize {
    (0..l.order()).map(|c| l.get(row, c)).collect::<BTreeSet<_>>().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> LatinSquare {
        LatinSquare::cyclic(3)
    }

    fn z3_second() -> LatinSquare {
        LatinSquare::from_fn(3, |r, c| (r + 2 * c) % 3).unwrap()
    }

    #[test]
    fn order_one_grid_is_qls() {
        let g = VectorGrid::new(1, vec![CVector::basis(1, 0)]).unwrap();
        assert!(validate_qls(&g, 1e-9).is_ok());
    }

    #[test]
    fn cyclic_table_is_qls_and_latin() {
        let g = VectorGrid::from_latin(&z3());
        assert!(validate_qls(&g, 1e-9).is_ok());
        assert_eq!(as_latin_square(&g, 1e-9), Some(z3()));
    }

    #[test]
    fn duplicated_entry_fails_validation() {
        let mut rows: Vec<Vec<CVector>> = (0..2)
            .map(|r| (0..2).map(|c| CVector::basis(2, (r + c) % 2)).collect())
            .collect();
        rows[1][1] = CVector::basis(2, 1);
        let g = VectorGrid::from_rows(rows).unwrap();
        let err = validate_qls(&g, 1e-9).unwrap_err();
        assert_eq!(err.line, LineKind::Row);
        assert_eq!(err.index, 1);
        assert_eq!(err.pair, (0, 1));
        assert!((err.value - ONE).norm() < 1e-12);
    }

    #[test]
    fn phased_basis_state_is_not_latin() {
        let mut entries: Vec<CVector> = VectorGrid::from_latin(&z3()).entries().to_vec();
        entries[0] = entries[0].scale(C64::new(-1.0, 0.0));
        let g = VectorGrid::new(3, entries).unwrap();
        assert!(validate_qls(&g, 1e-9).is_ok());
        assert_eq!(as_latin_square(&g, 1e-9), None);
    }

    #[test]
    fn latin_constructor_rejects_repeats() {
        assert!(LatinSquare::from_rows(&[vec![0, 1], vec![0, 1]]).is_err());
        assert!(LatinSquare::from_rows(&[vec![0, 0], vec![1, 1]]).is_err());
        assert!(LatinSquare::from_rows(&[vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn left_conjugate_of_cyclic_group() {
        // Left division in Z3 is b = c - a. With a on the column index and
        // c on the row index of the conjugate this reads cell'(r, c) = r - c.
        let lc = left_conjugate(&z3());
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(lc.get(r, c), (3 + r - c) % 3);
            }
        }
        assert_eq!(left_conjugate(&lc), z3());
    }

    #[test]
    fn left_conjugate_of_order_one() {
        let one = LatinSquare::cyclic(1);
        assert_eq!(left_conjugate(&one), one);
    }

    #[test]
    fn cyclic_pair_is_orthogonal() {
        // oracle: list all 9 ordered pairs and check distinctness by hand
        let mut pairs: Vec<(usize, usize)> = (0..3)
            .flat_map(|r| (0..3).map(move |c| ((r + c) % 3, (r + 2 * c) % 3)))
            .collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 9);
        let p = orthogonality_map(&z3(), &z3_second()).unwrap();
        assert!(crate::numerics::is_permutation_matrix(&p, 1e-9));
        assert!(are_orthogonal(&z3(), &z3_second()).unwrap());
        assert!(are_orthogonal(&z3_second(), &z3()).unwrap());
    }

    #[test]
    fn square_is_not_orthogonal_to_itself() {
        for n in 2..5 {
            let l = LatinSquare::cyclic(n);
            let p = orthogonality_map(&l, &l).unwrap();
            assert!(!crate::numerics::is_permutation_matrix(&p, 1e-9));
            assert!(!are_orthogonal(&l, &l).unwrap());
            assert!(!are_left_orthogonal(&l, &l).unwrap());
        }
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let e = are_orthogonal(&LatinSquare::cyclic(2), &LatinSquare::cyclic(3));
        assert_eq!(e, Err(Error::OrderMismatch { left: 2, right: 3 }));
        assert!(orthogonality_map(&LatinSquare::cyclic(2), &LatinSquare::cyclic(3)).is_err());
    }

    #[test]
    fn left_conjugates_of_orthogonal_pair_are_left_orthogonal() {
        let a = left_conjugate(&z3());
        let b = left_conjugate(&z3_second());
        assert!(are_left_orthogonal(&a, &b).unwrap());
        let w = weak_orth_witness(&VectorGrid::from_latin(&a), &VectorGrid::from_latin(&b), 1e-9);
        assert!(w.is_ok());
    }

    #[test]
    fn latin_square_is_not_weak_orthogonal_to_itself() {
        let g = VectorGrid::from_latin(&z3());
        match weak_orth_witness(&g, &g, 1e-9) {
            Err(WeakOrthError::NonUniqueUnit { row_q: 0, row_p: 0, first: 0, column: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn order_one_grids_are_weak_orthogonal() {
        let g = VectorGrid::new(1, vec![CVector::basis(1, 0)]).unwrap();
        let w = weak_orth_witness(&g, &g, 1e-9).unwrap();
        assert_eq!(w.get(0, 0), 0);
    }

    #[test]
    fn unit_modulus_with_wrong_phase_is_rejected() {
        let g = VectorGrid::new(1, vec![CVector::basis(1, 0)]).unwrap();
        let h = VectorGrid::new(1, vec![CVector::basis(1, 0).scale(C64::new(0.0, 1.0))]).unwrap();
        assert!(matches!(
            weak_orth_witness(&g, &h, 1e-9),
            Err(WeakOrthError::NotBinary { .. })
        ));
    }

    #[test]
    fn witness_is_symmetric_for_latin_pair() {
        let a = VectorGrid::from_latin(&z3());
        let b = VectorGrid::from_latin(&z3_second());
        let ab = weak_orth_witness(&a, &b, 1e-9).unwrap();
        let ba = weak_orth_witness(&b, &a, 1e-9).unwrap();
        assert_eq!(ab.transposed(), ba);
    }

    #[test]
    fn moqls_needs_two_members() {
        let g = VectorGrid::from_latin(&z3());
        assert_eq!(is_moqls(&[g.clone()], 1e-9), Err(Error::FamilyTooShort { found: 1 }));
        assert!(!is_moqls(&[g.clone(), g], 1e-9).unwrap());
    }

    #[test]
    fn rows_of_latin_square_are_permutations() {
        let l = z3_second();
        assert!((0..3).all(|r| distinct_in_row(&l, r) == 3));
    }
}
