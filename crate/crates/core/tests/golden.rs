mod common;

use common::*;

#[test]
fn kk8_matches_reference() {
    assert_eq!(exact_integer_gain(8), parse_rationals(KK8));
}

#[test]
fn kk11_matches_reference() {
    assert_eq!(exact_integer_gain(11), parse_rationals(KK11));
}

#[test]
fn kk12_matches_reference() {
    assert_eq!(exact_integer_gain(12), parse_rationals(KK12));
}
