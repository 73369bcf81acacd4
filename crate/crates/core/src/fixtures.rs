//! Named reference data for order 9: grids, state triples and Hadamards.
//!
//! Grids are written as symbol templates. `0`..`8` are computational basis
//! states of `C^9`, `a`/`b`/`c` the triple on `span{|3⟩,|4⟩,|5⟩}` and
//! `A`/`B`/`G` the Fourier triple α, β, γ on `span{|0⟩,|1⟩,|2⟩}`.

use alloc::string::ToString;
use alloc::vec::Vec;

#[allow(unused_imports)] // f64 math without std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hadamard::{fourier, tensor_hadamard, HadamardMatrix};
use crate::numerics::{gram_schmidt, root_of_unity, CMatrix, CVector, C64};
use crate::squares::VectorGrid;

pub const NAMES: &[&str] = &[
    "paper-P",
    "paper-Q",
    "paper-P-printed",
    "paper-Q-printed",
    "corrected-triple",
    "fourier-triple",
    "hadamard-9-corrected",
    "hadamard-9-printed",
    "block-square",
];

const DIM: usize = 9;

const P_TEMPLATE: [&str; 9] = [
    "021354687",
    "210543876",
    "102435768",
    "687021354",
    "876210543",
    "768102435",
    "acb687AGB",
    "cba876GBA",
    "bac768BAG",
];

const Q_TEMPLATE: [&str; 9] = [
    "012678345",
    "201867534",
    "120786453",
    "abc012678",
    "cab201867",
    "bca120786",
    "678345ABG",
    "867534GAB",
    "786453BGA",
];

const BLOCK_TEMPLATE: [&str; 9] = [
    "000000AAA",
    "111111BBB",
    "222222GGG",
    "aaa333333",
    "bbb444444",
    "ccc555555",
    "666666666",
    "777777777",
    "888888888",
];

/// Exponents of ω = e^{2πi/3}, as printed (rows 3 and 4 coincide).
const H9_PRINTED_EXPONENTS: [[usize; 9]; 9] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 0, 1, 2, 0, 1, 2],
    [0, 2, 1, 0, 2, 1, 0, 2, 1],
    [0, 0, 0, 1, 1, 1, 2, 2, 2],
    [0, 0, 0, 1, 1, 1, 2, 2, 2],
    [0, 2, 1, 1, 0, 2, 2, 1, 0],
    [0, 0, 0, 2, 2, 2, 1, 1, 1],
    [0, 1, 2, 2, 0, 1, 1, 2, 0],
    [0, 2, 1, 2, 1, 0, 1, 0, 2],
];

/// Three states of `C^9`.
pub type Triple = [CVector; 3];

#[derive(Debug, Clone, PartialEq)]
pub enum Fixture {
    Grid(VectorGrid),
    Triple(Triple),
    Hadamard(HadamardMatrix),
    /// A matrix that is not expected to be Hadamard.
    Matrix(CMatrix),
}

impl Fixture {
    /// The matrix behind a Hadamard or plain-matrix fixture.
    pub fn matrix(&self) -> Option<&CMatrix> {
        match self {
            Fixture::Hadamard(h) => Some(h.matrix()),
            Fixture::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn grid(&self) -> Option<&VectorGrid> {
        match self {
            Fixture::Grid(g) => Some(g),
            _ => None,
        }
    }
}

pub fn fixture(name: &str) -> Result<Fixture> {
    Ok(match name {
        "paper-P" => Fixture::Grid(paper_p()),
        "paper-Q" => Fixture::Grid(paper_q()),
        "paper-P-printed" => Fixture::Grid(p_grid(&printed_triple())),
        "paper-Q-printed" => Fixture::Grid(q_grid(&printed_triple())),
        "corrected-triple" => Fixture::Triple(corrected_triple()),
        "fourier-triple" => Fixture::Triple(fourier_triple()),
        "hadamard-9-corrected" => Fixture::Hadamard(hadamard_9_corrected()),
        "hadamard-9-printed" => Fixture::Matrix(hadamard_9_printed()),
        "block-square" => Fixture::Grid(block_square()),
        _ => {
            return Err(Error::UnknownFixture {
                name: name.to_string(),
                valid: NAMES,
            })
        }
    })
}

fn embed(offset: usize, amps: [C64; 3], scale: f64) -> CVector {
    let mut v = Vec::from([C64::new(0.0, 0.0); DIM]);
    for (k, a) in amps.into_iter().enumerate() {
        v[offset + k] = a * scale;
    }
    CVector::new(v).expect("finite amplitudes")
}

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn i(x: f64) -> C64 {
    C64::new(0.0, x)
}

/// a, b, c exactly as printed. They are not pairwise orthogonal.
pub fn printed_triple() -> Triple {
    [
        embed(3, [r(1.0), r(1.0), i(1.0)], 1.0 / 3f64.sqrt()),
        embed(3, [r(2.0), r(-1.0), i(1.0)], 1.0 / 6f64.sqrt()),
        embed(3, [i(-2.0), i(-1.0), r(3.0)], 1.0 / 14f64.sqrt()),
    ]
}

/// Gram–Schmidt of the printed triple in the order a, b, c.
pub fn corrected_triple() -> Triple {
    let [a, b, c]: [CVector; 3] = gram_schmidt(&printed_triple())
        .expect("printed states are independent")
        .try_into()
        .expect("three vectors");
    [a, b, c]
}

/// α, β, γ: the columns of the order-3 Fourier matrix on `|0⟩,|1⟩,|2⟩`.
pub fn fourier_triple() -> Triple {
    let w = root_of_unity(3, 1);
    let wb = root_of_unity(3, 2);
    let one = r(1.0);
    let s = 1.0 / 3f64.sqrt();
    [embed(0, [one, one, one], s), embed(0, [one, w, wb], s), embed(0, [one, wb, w], s)]
}

fn from_template(template: &[&str; 9], triple: &Triple) -> VectorGrid {
    let greek = fourier_triple();
    let rows = template
        .iter()
        .map(|row| {
            row.chars()
                .map(|ch| match ch {
                    'a' => triple[0].clone(),
                    'b' => triple[1].clone(),
                    'c' => triple[2].clone(),
                    'A' => greek[0].clone(),
                    'B' => greek[1].clone(),
                    'G' => greek[2].clone(),
                    d => CVector::basis(DIM, d.to_digit(10).expect("template symbol") as usize),
                })
                .collect()
        })
        .collect();
    VectorGrid::from_rows(rows).expect("templates are 9x9")
}

/// The `P` grid with `triple` in place of a, b, c.
pub fn p_grid(triple: &Triple) -> VectorGrid {
    from_template(&P_TEMPLATE, triple)
}

/// The `Q` grid with `triple` in place of a, b, c.
pub fn q_grid(triple: &Triple) -> VectorGrid {
    from_template(&Q_TEMPLATE, triple)
}

/// The block vector square with `triple` in place of a, b, c.
pub fn block_grid(triple: &Triple) -> VectorGrid {
    from_template(&BLOCK_TEMPLATE, triple)
}

pub fn paper_p() -> VectorGrid {
    p_grid(&corrected_triple())
}

pub fn paper_q() -> VectorGrid {
    q_grid(&corrected_triple())
}

pub fn block_square() -> VectorGrid {
    block_grid(&corrected_triple())
}

/// `F_3 ⊗ F_3`.
pub fn hadamard_9_corrected() -> HadamardMatrix {
    tensor_hadamard(&fourier(3), &fourier(3))
}

pub fn hadamard_9_printed() -> CMatrix {
    CMatrix::from_fn(DIM, DIM, |r, c| root_of_unity(3, H9_PRINTED_EXPONENTS[r][c]))
}
