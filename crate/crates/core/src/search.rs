//! Exhaustive enumeration of small Latin squares and brute-force checks of
//! the orthogonality characterizations over every ordered pair.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::is_permutation_matrix;
use crate::squares::{
    are_left_orthogonal, are_orthogonal, left_conjugate, orthogonality_map, weak_orth_witness,
    LatinSquare, VectorGrid,
};

/// Largest order accepted by [`enumerate_latin`].
pub const ENUMERATION_CAP: usize = 5;

/// Largest order accepted by the all-pairs searches.
pub const PAIR_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub order: usize,
    pub squares: Vec<LatinSquare>,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.squares.len()
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if n > cap {
        return Err(Error::OrderCap { order: n, cap });
    }
    Ok(())
}

/// Every permutation of `0..n` in lexicographic order; the possible first
/// rows of a Latin square of order `n`.
pub fn first_rows(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for s in 0..n {
            if !used[s] {
                used[s] = true;
                cur.push(s);
                go(n, used, cur, out);
                cur.pop();
                used[s] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut vec![false; n], &mut Vec::with_capacity(n), &mut out);
    out
}

struct Filler {
    n: usize,
    cells: Vec<usize>,
    row_used: Vec<bool>,
    col_used: Vec<bool>,
}

impl Filler {
    fn place(&mut self, pos: usize, s: usize, on: bool) {
        let (r, c) = (pos / self.n, pos % self.n);
        self.row_used[r * self.n + s] = on;
        self.col_used[c * self.n + s] = on;
        self.cells[pos] = s;
    }

    fn fill(&mut self, pos: usize, out: &mut Vec<LatinSquare>) {
        let n = self.n;
        if pos == n * n {
            out.push(LatinSquare::from_cells_unchecked(n, self.cells.clone()));
            return;
        }
        let (r, c) = (pos / n, pos % n);
        for s in 0..n {
            if !self.row_used[r * n + s] && !self.col_used[c * n + s] {
                self.place(pos, s, true);
                self.fill(pos + 1, out);
                self.place(pos, s, false);
            }
        }
    }
}

/// All Latin squares of order `n` whose first row is `first_row`, in
/// lexicographic order of their row-major cells.
pub fn enumerate_with_first_row(n: usize, first_row: &[usize]) -> Result<Vec<LatinSquare>> {
    check_cap(n, ENUMERATION_CAP)?;
    if first_row.len() != n {
        return Err(Error::EntryCount {
            expected: n,
            found: first_row.len(),
        });
    }
    let mut f = Filler {
        n,
        cells: vec![0; n * n],
        row_used: vec![false; n * n],
        col_used: vec![false; n * n],
    };
    for (c, &s) in first_row.iter().enumerate() {
        if s >= n || f.row_used[s] {
            return Err(Error::InvalidLatinSquare {
                reason: "first row is not a permutation",
            });
        }
        f.place(c, s, true);
    }
    let mut out = Vec::new();
    f.fill(n, &mut out);
    Ok(out)
}

/// Every Latin square of order `n ≤ 5`, in lexicographic order.
pub fn enumerate_latin(n: usize) -> Result<EnumerationResult> {
    check_cap(n, ENUMERATION_CAP)?;
    let mut squares = Vec::new();
    for row in first_rows(n) {
        squares.extend(enumerate_with_first_row(n, &row)?);
    }
    Ok(EnumerationResult { order: n, squares })
}

/// Ordered pairs `(a, b)` of `squares` that are orthogonal, in index order.
pub fn orthogonal_pairs_in(squares: &[LatinSquare]) -> Vec<(LatinSquare, LatinSquare)> {
    let mut out = Vec::new();
    for a in squares {
        for b in squares {
            if are_orthogonal(a, b).unwrap_or(false) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Every ordered orthogonal pair of order `n ≤ 4`.
pub fn find_orthogonal_pairs(n: usize) -> Result<Vec<(LatinSquare, LatinSquare)>> {
    check_cap(n, PAIR_CAP)?;
    Ok(orthogonal_pairs_in(&enumerate_latin(n)?.squares))
}

/// The three predicates evaluated on one ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma16Verdict {
    pub a: usize,
    pub b: usize,
    /// The squares, read as grids of basis vectors, are weak orthogonal.
    pub weak_orthogonal: bool,
    pub left_orthogonal: bool,
    /// The orthogonality map of the left conjugates is a permutation.
    pub conjugate_map_is_permutation: bool,
}

impl Lemma16Verdict {
    pub fn agrees(&self) -> bool {
        self.weak_orthogonal == self.left_orthogonal
            && self.left_orthogonal == self.conjugate_map_is_permutation
    }
}

/// Squares prepared once for repeated pair checks.
#[derive(Debug, Clone)]
pub struct Lemma16Inputs {
    pub squares: Vec<LatinSquare>,
    grids: Vec<VectorGrid>,
    conjugates: Vec<LatinSquare>,
}

impl Lemma16Inputs {
    pub fn new(squares: Vec<LatinSquare>) -> Self {
        let grids = squares.iter().map(VectorGrid::from_latin).collect();
        let conjugates = squares.iter().map(left_conjugate).collect();
        Self {
            squares,
            grids,
            conjugates,
        }
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn verdict(&self, a: usize, b: usize) -> Lemma16Verdict {
        let map = orthogonality_map(&self.conjugates[a], &self.conjugates[b]).expect("same order");
        Lemma16Verdict {
            a,
            b,
            weak_orthogonal: weak_orth_witness(&self.grids[a], &self.grids[b], crate::DEFAULT_TOL).is_ok(),
            left_orthogonal: are_left_orthogonal(&self.squares[a], &self.squares[b]).expect("same order"),
            conjugate_map_is_permutation: is_permutation_matrix(&map, crate::DEFAULT_TOL),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma16Report {
    pub order: usize,
    pub pairs: usize,
    pub weak_orthogonal: usize,
    pub left_orthogonal: usize,
    pub conjugate_map_is_permutation: usize,
    /// Pairs on which the predicates disagree, as `(a, b)` indices into the
    /// lexicographic enumeration.
    pub counterexamples: Vec<Lemma16Verdict>,
}

impl Lemma16Report {
    pub fn from_verdicts(order: usize, verdicts: &[Lemma16Verdict]) -> Self {
        let count = |f: fn(&Lemma16Verdict) -> bool| verdicts.iter().filter(|v| f(v)).count();
        Self {
            order,
            pairs: verdicts.len(),
            weak_orthogonal: count(|v| v.weak_orthogonal),
            left_orthogonal: count(|v| v.left_orthogonal),
            conjugate_map_is_permutation: count(|v| v.conjugate_map_is_permutation),
            counterexamples: verdicts.iter().filter(|v| !v.agrees()).copied().collect(),
        }
    }

    pub fn all_agree(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks weak orthogonality ⇔ left orthogonality ⇔ "orthogonality map of
/// the left conjugates is a permutation" on every ordered pair of order
/// `n ≤ 4`.
pub fn cross_validate_lemma16(n: usize) -> Result<Lemma16Report> {
    check_cap(n, PAIR_CAP)?;
    let inputs = Lemma16Inputs::new(enumerate_latin(n)?.squares);
    let len = inputs.len();
    let verdicts: Vec<Lemma16Verdict> = (0..len)
        .flat_map(|a| (0..len).map(move |b| (a, b)))
        .map(|(a, b)| inputs.verdict(a, b))
        .collect();
    Ok(Lemma16Report::from_verdicts(n, &verdicts))
}
