use atlas_core::invariants::*;
use atlas_core::monomial::binomial_i;
use proptest::prelude::*;

#[test]
fn bound_branches_meet() {
    for s in 1..=6i64 {
        let first = (s - 1) * (2 * s) + 1 - binomial_i(s + 2, 3);
        assert_eq!(beorchia_bound(2 * s, s).unwrap(), first);
        let second = binomial_i(s + 1, 2) - binomial_i(s - 1, 3);
        assert_eq!(beorchia_bound(2 * s + 1, s).unwrap(), second);
        for d in s..30 {
            assert!(beorchia_bound(d + 1, s).unwrap() >= beorchia_bound(d, s).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn admissible_types_obey_the_sum_rule(d in 2u32..7, l in 0u32..4, filtered in any::<bool>()) {
        let types = admissible_types(d, l, filtered);
        prop_assert!(!types.is_empty());
        for t in &types {
            prop_assert_eq!(t.degree(), d);
            prop_assert!(t.is_superadditive());
            let (di, li) = (d as i64, l as i64);
            prop_assert_eq!(t.b.iter().sum::<i64>() + (t.a - li) * binomial_i(di, 2), binomial_i(di, 3));
            // every admissible type has the C_{d,l} genus
            prop_assert_eq!(qp_genus(t), cdl_genus(di, li));
        }
        if filtered {
            let all = admissible_types(d, l, false);
            prop_assert!(types.iter().all(|t| all.contains(t)));
        }
    }

    #[test]
    fn cdl_genus_matches_bound_at_level_zero(d in 1i64..20) {
        prop_assert_eq!(cdl_genus(d, 0), beorchia_bound(d, d).unwrap());
    }
}
