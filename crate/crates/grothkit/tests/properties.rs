//! Property tests for the structural invariants: serialization round
//! trips, skew symmetry, augmentation zero sums, quadrant pigeonholing,
//! witness preservation under index mapping, and the oracle identities.

use grothkit::cutnorm::{augment, map_back, quadrant_extract};
use grothkit::oracles;
use grothkit::parse::{parse_auto, InputObject};
use grothkit::types::{DenseMatrix, Digraph, SignVector, SubsetPair};
use proptest::prelude::*;

fn finite_f64() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e9..1e9f64,
        -1.0..1.0f64,
        Just(0.0),
        Just(-0.0),
        Just(1.0 / 3.0),
        Just(1e-300),
    ]
}

fn small_matrix() -> impl Strategy<Value = DenseMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(m, n)| {
        proptest::collection::vec(finite_f64(), m * n)
            .prop_map(move |entries| DenseMatrix::new(m, n, entries).unwrap())
    })
}

fn small_int_matrix() -> impl Strategy<Value = DenseMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| {
        proptest::collection::vec(-3i32..=3, m * n).prop_map(move |entries| {
            DenseMatrix::new(m, n, entries.into_iter().map(f64::from).collect()).unwrap()
        })
    })
}

fn sign_vector(len: usize) -> impl Strategy<Value = SignVector> {
    proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], len)
        .prop_map(|v| SignVector::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_roundtrip_is_bit_identical(a in small_matrix()) {
        let text = a.to_text();
        let InputObject::Matrix(back) = parse_auto(&text).unwrap() else {
            panic!("expected matrix");
        };
        prop_assert_eq!(back.rows(), a.rows());
        prop_assert_eq!(back.cols(), a.cols());
        for (x, y) in back.entries().iter().zip(a.entries()) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn skew_matrix_is_exactly_antisymmetric(
        n in 2usize..=6,
        arcs in proptest::collection::vec((0usize..6, 0usize..6, -4i32..=4), 0..12),
    ) {
        let arcs: Vec<(usize, usize, f64)> = arcs
            .into_iter()
            .filter(|&(u, v, _)| u != v && u < n && v < n)
            .map(|(u, v, w)| (u, v, f64::from(w)))
            .collect();
        let g = Digraph::new(n, arcs).unwrap();
        let w = g.skew_matrix();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(w.get(i, j) + w.get(j, i), 0.0);
            }
        }
    }

    #[test]
    fn augmented_lines_sum_to_zero_on_integers(a in small_int_matrix()) {
        let b = augment(&a);
        for i in 0..b.rows() {
            prop_assert_eq!(b.row(i).iter().sum::<f64>(), 0.0);
        }
        for j in 0..b.cols() {
            prop_assert_eq!((0..b.rows()).map(|i| b.get(i, j)).sum::<f64>(), 0.0);
        }
    }

    #[test]
    fn augmentation_preserves_the_cut_norm(a in small_int_matrix()) {
        let cut = oracles::exact_cut_norm(&a).unwrap().value;
        let cut_augmented = oracles::exact_cut_norm(&augment(&a)).unwrap().value;
        prop_assert_eq!(cut, cut_augmented);
        // and the ∞→1 identity
        let inf = oracles::exact_infty1(&augment(&a)).unwrap().value;
        prop_assert_eq!(4.0 * cut, inf);
    }

    #[test]
    fn best_quadrant_covers_a_quarter(
        a in small_int_matrix(),
        bits in proptest::collection::vec(any::<bool>(), 10),
    ) {
        let eps = SignVector::new(
            (0..a.rows()).map(|i| if bits[i] { 1 } else { -1 }).collect()
        ).unwrap();
        let del = SignVector::new(
            (0..a.cols()).map(|j| if bits[j + 5] { 1 } else { -1 }).collect()
        ).unwrap();
        let bilinear = a.bilinear(&eps, &del);
        let pair = quadrant_extract(&a, &eps, &del);
        let block = a.block_sum(&pair.row_set, &pair.col_set).abs();
        prop_assert!(block >= bilinear / 4.0 - 1e-12);
    }

    #[test]
    fn map_back_preserves_block_sums(
        a in small_int_matrix(),
        row_bits in proptest::collection::vec(any::<bool>(), 5),
        col_bits in proptest::collection::vec(any::<bool>(), 5),
    ) {
        let b = augment(&a);
        let rows: Vec<usize> = (0..=a.rows()).filter(|&i| row_bits[i.min(4)]).collect();
        let cols: Vec<usize> = (0..=a.cols()).filter(|&j| col_bits[j.min(4)]).collect();
        let on_b = b.block_sum(&rows, &cols).abs();
        let mapped = map_back(&SubsetPair::new(rows, cols), a.rows(), a.cols());
        let on_a = a.block_sum(&mapped.row_set, &mapped.col_set).abs();
        prop_assert_eq!(on_b, on_a);
    }

    #[test]
    fn oracle_witnesses_reproduce_their_values(a in small_int_matrix()) {
        let cut = oracles::exact_cut_norm(&a).unwrap();
        prop_assert_eq!(oracles::witness_value(&a, &cut.witness).unwrap(), cut.value);
        let inf = oracles::exact_infty1(&a).unwrap();
        prop_assert_eq!(oracles::witness_value(&a, &inf.witness).unwrap(), inf.value);
        prop_assert!(inf.value <= 4.0 * cut.value);
    }

    #[test]
    fn spin_energy_matches_bilinear_on_signs(
        a in small_int_matrix(),
        signs in sign_vector(4),
    ) {
        // ±1 spins turn the masked quadratic into the plain bilinear form
        prop_assume!(a.rows() == a.cols());
        let n = a.rows();
        let sym = a.symmetric_part();
        let mask = grothkit::EdgeMask::complete_with_diagonal(n);
        let s = SignVector::new(signs.values()[..n].to_vec()).unwrap();
        let masked = mask.spin_energy(&sym, &s);
        prop_assert!((masked - sym.bilinear(&s, &s)).abs() < 1e-9);
    }
}
