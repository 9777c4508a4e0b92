use cube_sections::eulerian::{
    calibrate_convention, eulerian_row, hypersimplex_check_with, step_discontinuity, EulerianConvention, CALIBRATED,
};
use cube_sections::sections::factorial;
use proptest::prelude::*;

#[test]
fn small_rows() {
    let strings = |d| eulerian_row(d).unwrap().to_strings();
    assert_eq!(strings(1), ["1"]);
    assert_eq!(strings(4), ["1", "11", "11", "1"]);
    assert_eq!(strings(5), ["1", "26", "66", "26", "1"]);
}

#[test]
fn calibration_is_unique() {
    assert_eq!(calibrate_convention(20), Some(CALIBRATED));
    // the unshifted convention fails already for small d
    let plain = EulerianConvention { row_offset: 0, index_offset: 0 };
    assert!(!(2..=6u32).all(|d| (0..=d / 2).all(|i| hypersimplex_check_with(d, i, plain).unwrap().holds)));
}

#[test]
fn step_near_three_tenths() {
    let s = step_discontinuity(2000).unwrap();
    assert!(s.holds, "{s:?}");
    assert!(s.step >= s.lower_bound);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rows_are_symmetric_with_factorial_sum(d in 1u32..=300) {
        let row = eulerian_row(d).unwrap();
        prop_assert!(row.is_symmetric());
        prop_assert_eq!(row.sum(), factorial(d));
    }
}
