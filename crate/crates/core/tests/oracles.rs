//! Values frozen from independent oracle runs (numpy and a plain Python
//! brute force), plus recounts with a differently ordered search.

use qlsmub_core::bases::{check_mub, gram_residual, is_maximally_entangled, qls_meb};
use qlsmub_core::fixtures::{self, block_grid, p_grid, q_grid, Triple};
use qlsmub_core::hadamard::constant_family;
use qlsmub_core::numerics::{gram_schmidt, partial_trace_second, DensityMatrix};
use qlsmub_core::search::{cross_validate_lemma16, enumerate_latin, find_orthogonal_pairs};
use qlsmub_core::squares::{is_moqls, left_conjugate, validate_qls, weak_orth_witness, LatinSquare};
use qlsmub_core::ueb::{monomial_obstruction, shift_multiply_ueb};
use qlsmub_core::{CMatrix, CVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fills cells column by column with symbols tried in descending order.
fn recount(n: usize) -> usize {
    fn go(n: usize, pos: usize, cells: &mut Vec<usize>) -> usize {
        if pos == n * n {
            return 1;
        }
        let (c, r) = (pos / n, pos % n);
        let mut total = 0;
        for s in (0..n).rev() {
            let clash = (0..n).any(|k| (k < c && cells[r * n + k] == s) || (k < r && cells[k * n + c] == s));
            if !clash {
                cells[r * n + c] = s;
                total += go(n, pos + 1, cells);
            }
        }
        total
    }
    go(n, 0, &mut vec![usize::MAX; n * n])
}

#[test]
fn enumeration_counts_agree_with_recount() {
    for (n, want) in [(1, 1), (2, 2), (3, 12), (4, 576), (5, 161_280)] {
        assert_eq!(enumerate_latin(n).unwrap().count(), want, "order {n}");
        assert_eq!(recount(n), want, "recount order {n}");
    }
}

#[test]
fn orthogonal_pair_counts() {
    // oracle: Python brute force over all ordered pairs
    assert_eq!(find_orthogonal_pairs(3).unwrap().len(), 72);
    assert_eq!(find_orthogonal_pairs(4).unwrap().len(), 6912);
}

#[test]
fn lemma16_order_four() {
    let r = cross_validate_lemma16(4).unwrap();
    assert_eq!(r.pairs, 576 * 576);
    assert_eq!(r.weak_orthogonal, 6912);
    assert_eq!(r.left_orthogonal, 6912);
    assert_eq!(r.conjugate_map_is_permutation, 6912);
    assert!(r.all_agree());
    let r3 = cross_validate_lemma16(3).unwrap();
    assert_eq!((r3.weak_orthogonal, r3.left_orthogonal), (72, 72));
}

#[test]
fn involution_on_every_order_four_square() {
    for l in enumerate_latin(4).unwrap().squares {
        assert_eq!(left_conjugate(&left_conjugate(&l)), l);
    }
}

#[test]
fn conjugate_of_z3_is_difference() {
    let z3 = LatinSquare::cyclic(3);
    let d = LatinSquare::from_fn(3, |r, c| (r + 3 - c) % 3).unwrap();
    assert_eq!(left_conjugate(&z3), d);
}

#[test]
fn fixture_overlaps_match_oracle() {
    let f = constant_family(&fixtures::hadamard_9_corrected());
    let p = validate_qls(&fixtures::paper_p(), 1e-12).unwrap();
    let q = validate_qls(&fixtures::paper_q(), 1e-12).unwrap();
    let a = qls_meb(&p, &f).unwrap();
    let b = qls_meb(&q, &f).unwrap();
    let r = check_mub(a.states(), b.states(), 1e-9).unwrap();
    assert!(r.pass);
    assert_eq!(r.count, 6561);
    // oracle: min 0.01234567901234564, max 0.012345679012345708
    assert!((r.min - 0.012_345_679_012_345_64).abs() < 1e-15);
    assert!((r.max - 0.012_345_679_012_345_708).abs() < 1e-15);
    assert!(gram_residual(a.states()) < 1e-14);
    for s in a.states().iter().chain(b.states()) {
        assert!(is_maximally_entangled(s, 1e-9));
        let rho = DensityMatrix::from_pure(s.vector());
        let reduced = partial_trace_second(&rho, 9).unwrap();
        let target = CMatrix::identity(9).scale(C64::new(1.0 / 9.0, 0.0));
        assert!(qlsmub_core::numerics::frobenius_distance(&reduced, &target).unwrap() < 1e-9);
    }
}

#[test]
fn obstruction_matches_oracle() {
    let q = validate_qls(&fixtures::paper_p(), 1e-12).unwrap();
    let x = shift_multiply_ueb(&q, &constant_family(&fixtures::hadamard_9_corrected())).unwrap();
    let r = monomial_obstruction(&x, 1e-6, 0).unwrap();
    assert_eq!(r.mu, 2520);
    assert_eq!(r.worst_pair, (25, 26));
    assert!((r.worst_commutator_norm - 4.478_539_007_222_574).abs() < 1e-9);
    assert!((r.sample_entry - C64::new(-0.393_136_167_938_802_7, -1.342_255_553_368_119)).norm() < 1e-9);
    assert_eq!(r.obstructed_pairs, 324);
    assert_eq!(r.pairs_checked, 3240);
    assert!(r.max_power_unitarity_residual < 1e-10);
    assert!(r.obstructed);
}

#[test]
fn single_pair_commutator_matches_oracle() {
    use qlsmub_core::ueb::{PairCommutator, PoweredMembers};
    let q = validate_qls(&fixtures::paper_p(), 1e-12).unwrap();
    let x = shift_multiply_ueb(&q, &constant_family(&fixtures::hadamard_9_corrected())).unwrap();
    let powers = PoweredMembers::new(&x, 0).unwrap();
    let k = PairCommutator::compute(&powers, (6, 7));
    assert!((k.norm - 1.798_732_217_459_705_4).abs() < 1e-9);
    assert!((k.corner - C64::new(-0.061_565_885_005_753_22, 0.011_019_876_690_444_574)).norm() < 1e-9);
}

fn random_triple(rng: &mut ChaCha8Rng) -> Triple {
    let raw: Vec<CVector> = (0..3)
        .map(|_| {
            let mut v = vec![C64::new(0.0, 0.0); 9];
            for k in 3..6 {
                v[k] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            CVector::new(v).unwrap()
        })
        .collect();
    gram_schmidt(&raw).unwrap().try_into().unwrap()
}

#[test]
fn any_orthonormal_triple_works() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..3 {
        let t = random_triple(&mut rng);
        let (p, q, block) = (p_grid(&t), q_grid(&t), block_grid(&t));
        assert!(validate_qls(&p, 1e-12).is_ok());
        assert!(validate_qls(&q, 1e-12).is_ok());
        assert!(weak_orth_witness(&q, &p, 1e-9).is_ok());
        assert!(is_moqls(&[p, q, block], 1e-9).unwrap());
    }
}
