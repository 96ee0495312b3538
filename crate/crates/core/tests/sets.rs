use fermat_prank::sets::{closed_count, enumerate_count, enumerate_count_exhaustive, SetParams};
use num_bigint::BigUint;

#[test]
fn quadruple_count_matches_enumeration() {
    for p in [2u64, 3, 5, 7, 11] {
        let params = SetParams::Quadruples { p };
        assert_eq!(closed_count(&params).unwrap(), enumerate_count(&params).unwrap(), "p={p}");
    }
}

#[test]
fn tuple_counts_match_enumeration() {
    for b in 1..=9u64 {
        for m in 1..=4u32 {
            for n in 1..=4u32 {
                let mut all = vec![SetParams::BelowMin { b, m, n }, SetParams::BelowMinAndComplement { b, m, n }];
                if b >= 2 {
                    all.push(SetParams::BelowCentered { b, m, n });
                }
                for params in all {
                    assert_eq!(closed_count(&params).unwrap(), enumerate_count(&params).unwrap(), "{params}");
                }
            }
        }
    }
}

#[test]
fn both_parities_of_the_centered_bound() {
    for b in [4u64, 5] {
        for m in 1..=3 {
            for n in 1..=2 {
                let params = SetParams::BelowCentered { b, m, n };
                let full = enumerate_count_exhaustive(&params).unwrap();
                assert_eq!(closed_count(&params).unwrap(), BigUint::from(full), "{params}");
            }
        }
    }
}
