/// Sorts a sequence of distinct circle indices into descending order.
/// Returns the resulting bitmask and the sign of the permutation, or `None`
/// when an index repeats (the wedge vanishes).
pub(crate) fn sort_descending(seq: &[u8]) -> Option<(u32, i32)> {
    let mut seen = 0u32;
    let mut inversions = 0u32;
    for &e in seq {
        let bit = 1u32 << e;
        if seen & bit != 0 {
            return None;
        }
        // earlier entries smaller than e are out of descending order
        inversions += (seen & (bit - 1)).count_ones();
        seen |= bit;
    }
    Some((seen, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(sort_descending(&[]), Some((0, 1)));
        assert_eq!(sort_descending(&[2, 1, 0]), Some((0b111, 1)));
        assert_eq!(sort_descending(&[0, 1]), Some((0b11, -1)));
        assert_eq!(sort_descending(&[0, 2, 1]), Some((0b111, 1)));
        assert_eq!(sort_descending(&[3, 3]), None);
    }

    proptest! {
        #[test]
        fn sign_matches_bubble_sort(perm in Just((0u8..8).collect::<Vec<_>>()).prop_shuffle()) {
            // oracle: count swaps of a bubble sort into descending order
            let mut v = perm.clone();
            let mut swaps = 0;
            for i in 0..v.len() {
                for j in 0..v.len() - 1 - i {
                    if v[j] < v[j + 1] {
                        v.swap(j, j + 1);
                        swaps += 1;
                    }
                }
            }
            let (m, s) = sort_descending(&perm).unwrap();
            prop_assert_eq!(m, 0xff);
            prop_assert_eq!(s, if swaps % 2 == 0 { 1 } else { -1 });
        }
    }
}
