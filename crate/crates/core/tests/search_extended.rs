//! Extended search suite: the four-dimensional analogues of the desk
//! checks. The full d = 4 augmentation grid is behind `--ignored` because
//! it censuses 6561 nine-point sets.

use num_bigint::BigInt;
use num_rational::BigRational;
use tricensus::search::{augment_orthoplex, perturb_orthoplex, GridSpec};

fn grid(step: (i64, i64), radius: (i64, i64)) -> GridSpec {
    GridSpec::new(
        BigRational::new(BigInt::from(step.0), BigInt::from(step.1)),
        BigRational::new(BigInt::from(radius.0), BigInt::from(radius.1)),
    )
    .unwrap()
}

#[test]
fn augment_orthoplex_d4_unit_grid_is_clean() {
    let result = augment_orthoplex(4, &grid((1, 1), (1, 1)), 1_000_000).unwrap();
    assert_eq!(result.candidates_tested, 81 - 8);
    assert_eq!(result.violation_count(), 0);
    assert!(result.min_triangle_classes_observed >= 3);
}

#[test]
fn perturb_orthoplex_d4_half_grid_is_clean() {
    let result = perturb_orthoplex(4, &grid((1, 2), (1, 2)), 1_000_000).unwrap();
    assert_eq!(
        result.candidates_tested + result.skipped_degenerate,
        8 * (81 - 1)
    );
    assert_eq!(result.violation_count(), 0);
}

#[test]
#[ignore = "full d = 4 grid: 6561 candidates, minutes in debug builds"]
fn augment_orthoplex_d4_full_grid_is_clean() {
    let result = augment_orthoplex(4, &grid((1, 2), (2, 1)), 10_000_000).unwrap();
    assert_eq!(result.candidates_tested, 9usize.pow(4) - 8);
    assert_eq!(result.violation_count(), 0);
}
