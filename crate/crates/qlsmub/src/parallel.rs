//! Rayon-backed versions of the expensive sweeps. Work is split over
//! independent rows or pairs and merged in canonical order, so every result
//! is bit-identical to its serial counterpart in the core crate.

use qlsmub_core::bases::{overlap_row, MubReport};
use qlsmub_core::search::{
    enumerate_with_first_row, first_rows, EnumerationResult, Lemma16Inputs,
    Lemma16Report, Lemma16Verdict, ENUMERATION_CAP, PAIR_CAP,
};
use qlsmub_core::squares::{are_orthogonal, LatinSquare};
use qlsmub_core::ueb::{raise, ObstructionReport, PairCommutator, PoweredMembers, UnitaryErrorBasis};
use qlsmub_core::{CVector, Error, Result};
use rayon::prelude::*;

/// A pool with `jobs` workers; `None` or `0` uses rayon's default.
pub fn pool(jobs: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs.filter(|&j| j > 0) {
        b = b.num_threads(j);
    }
    b.build().expect("thread pool")
}

pub fn check_mub<A, B>(a: &[A], b: &[B], tol: f64) -> Result<MubReport>
where
    A: AsRef<CVector> + Sync,
    B: AsRef<CVector> + Sync,
{
    let dim = a.first().map_or(0, |v| v.as_ref().dim());
    let shaped = a.len() == dim
        && b.len() == dim
        && a.iter().map(AsRef::as_ref).chain(b.iter().map(AsRef::as_ref)).all(|v| v.dim() == dim);
    if !shaped {
        // the serial path produces the matching error
        return qlsmub_core::bases::check_mub(a, b, tol);
    }
    let rows: Vec<Vec<f64>> = a.par_iter().map(|s| overlap_row(s.as_ref(), b)).collect();
    Ok(MubReport::from_overlaps(dim, 1.0 / dim as f64, rows.into_iter().flatten(), tol))
}

pub fn monomial_obstruction(u: &UnitaryErrorBasis, threshold: f64, normalizer: usize) -> Result<ObstructionReport> {
    let powers = PoweredMembers::build(u, normalizer, |ms, mu| ms.par_iter().map(|m| raise(m, mu)).collect())?;
    let pairs: Vec<(usize, usize)> = powers.pairs().collect();
    let results: Vec<PairCommutator> = pairs.par_iter().map(|&p| PairCommutator::compute(&powers, p)).collect();
    Ok(ObstructionReport::from_pairs(&powers, &results, threshold))
}

fn cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if n > cap {
        return Err(Error::OrderCap { order: n, cap });
    }
    Ok(())
}

pub fn enumerate_latin(n: usize) -> Result<EnumerationResult> {
    cap(n, ENUMERATION_CAP)?;
    let parts: Vec<Vec<LatinSquare>> = first_rows(n)
        .par_iter()
        .map(|row| enumerate_with_first_row(n, row))
        .collect::<Result<_>>()?;
    Ok(EnumerationResult {
        order: n,
        squares: parts.into_iter().flatten().collect(),
    })
}

pub fn find_orthogonal_pairs(n: usize) -> Result<Vec<(LatinSquare, LatinSquare)>> {
    cap(n, PAIR_CAP)?;
    let squares = enumerate_latin(n)?.squares;
    let parts: Vec<Vec<(LatinSquare, LatinSquare)>> = squares
        .par_iter()
        .map(|a| {
            squares
                .iter()
                .filter(|b| are_orthogonal(a, b).unwrap_or(false))
                .map(|b| (a.clone(), b.clone()))
                .collect()
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

pub fn cross_validate_lemma16(n: usize) -> Result<Lemma16Report> {
    cap(n, PAIR_CAP)?;
    let inputs = Lemma16Inputs::new(enumerate_latin(n)?.squares);
    let len = inputs.len();
    let verdicts: Vec<Lemma16Verdict> = (0..len * len)
        .into_par_iter()
        .map(|k| inputs.verdict(k / len, k % len))
        .collect();
    Ok(Lemma16Report::from_verdicts(n, &verdicts))
}
