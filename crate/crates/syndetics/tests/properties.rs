//! Property tests for the window-set algebra and the classifier relations.

use proptest::prelude::*;

use syndetics::classify::{syndetic_on_window, thick_on_window};
use syndetics::window::WindowSet;

fn window_set(max_e: u32) -> impl Strategy<Value = WindowSet> {
    (1..=max_e, any::<u64>()).prop_map(|(e, seed)| {
        let mut state = seed | 1;
        WindowSet::from_fn(e, |_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state & 1 == 1
        })
    })
}

proptest! {
    #[test]
    fn translate_down_composes(a in window_set(200), n in 0u32..32, m in 0u32..32) {
        let stepwise = a.translate_down(n).translate_down(m);
        let direct = a.translate_down(n + m);
        prop_assert_eq!(stepwise, direct);
    }

    #[test]
    fn translate_round_trip(a in window_set(200), n in 0u32..64) {
        prop_assert_eq!(a.translate_up(n).translate_down(n), a.clone());
    }

    #[test]
    fn dilate_contract_round_trip(a in window_set(256), k in 1u32..=16) {
        prop_assert_eq!(a.dilate(k).contract(k), a.clone());
    }

    #[test]
    fn difference_union_distributes_over_intersection(
        a in window_set(160),
        b in window_set(160),
        f in proptest::collection::vec(0u32..24, 0..5),
    ) {
        let b = b.shrink_to(a.effective_horizon());
        let a = a.shrink_to(b.effective_horizon());
        let lhs = a.intersection(&b).difference_union(&f);
        let rhs = a
            .difference_union(&f)
            .intersection(&b.difference_union(&f));
        prop_assert!(lhs.is_subset_of(&rhs));
        if f.len() == 1 {
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gap_profile_survives_translate_up_and_restriction(
        a in window_set(160),
        n in 0u32..32,
    ) {
        let lifted = a.translate_up(n).translate_down(n);
        prop_assert_eq!(lifted.gap_profile(), a.gap_profile());
    }

    #[test]
    fn full_window_covering_gap_is_one(e in 1u32..512) {
        prop_assert_eq!(WindowSet::full(e).gap_profile().covering_gap, Some(1));
    }

    #[test]
    fn syndetic_thick_duality(a in window_set(150), n in 1u32..32) {
        prop_assume!(n <= a.effective_horizon());
        let s = syndetic_on_window(&a, n).unwrap().holds();
        let t = thick_on_window(&a.complement(), n).unwrap().holds();
        prop_assert_eq!(s, !t);
    }

    #[test]
    fn text_format_round_trips(a in window_set(300)) {
        let parsed: WindowSet = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn members_and_contains_agree(a in window_set(200)) {
        let members: Vec<u32> = a.members().collect();
        for i in 0..a.effective_horizon() {
            prop_assert_eq!(a.contains(i), members.binary_search(&i).is_ok());
        }
    }
}
