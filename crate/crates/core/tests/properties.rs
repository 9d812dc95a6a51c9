use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use spherical_curves::corpus::{self, chord_diagrams, gauss_parity, is_prime, realizable_decorations};
use spherical_curves::embedding::genus;
use spherical_curves::invariants::{invariant_vector, pattern_counts, seifert_count};
use spherical_curves::word::{KeyMode, Word};

/// Any valid word with up to `max_n` chords.
fn any_word(max_n: usize) -> impl Strategy<Value = Word> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let slots: Vec<u32> = (1..=n as u32).flat_map(|c| [c, c]).collect();
            (Just(slots).prop_shuffle(), proptest::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(slots, head_first)| {
            let mut seen = BTreeSet::new();
            let values: Vec<i64> = slots
                .iter()
                .map(|&c| {
                    let first = seen.insert(c);
                    if first == head_first[c as usize - 1] {
                        c as i64
                    } else {
                        -(c as i64)
                    }
                })
                .collect();
            Word::from_signed(&values).unwrap()
        })
}

fn curves() -> &'static [Word] {
    static CURVES: OnceLock<Vec<Word>> = OnceLock::new();
    CURVES.get_or_init(|| corpus::enumerate_by_diagrams(5).iter().map(|k| k.to_word()).collect())
}

/// A realizable word with up to five chords, at an arbitrary base point and
/// orientation.
fn curve() -> impl Strategy<Value = Word> {
    (0..curves().len(), 0..10usize, any::<bool>(), any::<bool>()).prop_map(|(i, k, rev, mirror)| {
        let mut w = curves()[i].rotate_base(k);
        if rev {
            w = w.reverse_orientation();
        }
        if mirror {
            w = w.mirror();
        }
        w
    })
}

proptest! {
    #[test]
    fn canonical_key_is_idempotent(w in any_word(7)) {
        for mode in [KeyMode::Based, KeyMode::Unbased, KeyMode::UnbasedUnoriented] {
            let key = w.key(mode);
            prop_assert_eq!(key.to_word().key(mode), key);
        }
    }

    #[test]
    fn reversal_is_an_involution(w in any_word(7)) {
        prop_assert_eq!(w.reverse_orientation().reverse_orientation(), w.canonical());
        prop_assert_eq!(w.mirror().mirror(), w.canonical());
    }

    #[test]
    fn subword_keeps_the_chosen_chords(w in any_word(7), mask in any::<u8>()) {
        let chosen: BTreeSet<u32> = w.chords().into_iter().filter(|c| mask >> (c - 1) & 1 == 1).collect();
        prop_assert_eq!(w.subword(&chosen).unwrap().crossings(), chosen.len());
    }

    #[test]
    fn genus_ignores_base_point_and_orientation(w in any_word(7), k in 0..14usize) {
        let g = genus(&w);
        prop_assert_eq!(genus(&w.rotate_base(k)), g);
        prop_assert_eq!(genus(&w.reverse_orientation()), g);
        prop_assert_eq!(genus(&w.mirror()), g);
    }

    #[test]
    fn reversal_swaps_l_and_r(w in any_word(7)) {
        let (a, b) = (pattern_counts(&w), pattern_counts(&w.reverse_orientation()));
        prop_assert_eq!((a.u, a.b, a.l, a.r), (b.u, b.b, b.r, b.l));
    }

    #[test]
    fn mirror_swaps_l_and_r(w in any_word(7)) {
        let (a, b) = (pattern_counts(&w), pattern_counts(&w.mirror()));
        prop_assert_eq!((a.u, a.b, a.l, a.r), (b.b, b.u, b.r, b.l));
    }

    #[test]
    fn seifert_count_ignores_base_point(w in any_word(7), k in 0..14usize) {
        prop_assert_eq!(seifert_count(&w.rotate_base(k)), seifert_count(&w));
    }

    #[test]
    fn curves_have_u_equal_b(w in curve()) {
        let v = invariant_vector(&w);
        prop_assert!(v.realizable);
        prop_assert_eq!(v.u, v.b);
    }

    #[test]
    fn connected_sums_are_additive(w1 in curve(), w2 in curve(), a1 in 0..11usize, a2 in 0..11usize) {
        let (a1, a2) = (a1 % (w1.len() + 1), a2 % (w2.len() + 1));
        let sum = w1.connected_sum(&w2, a1, a2).unwrap();
        prop_assert_eq!(genus(&sum), 0);
        let (c, c1, c2) = (pattern_counts(&sum), pattern_counts(&w1), pattern_counts(&w2.rotate_base(a2)));
        prop_assert_eq!((c.u, c.b, c.l, c.r), (c1.u + c2.u, c1.b + c2.b, c1.l + c2.l, c1.r + c2.r));
        prop_assert_eq!(seifert_count(&sum), seifert_count(&w1) + seifert_count(&w2) - 1);
    }
}

#[test]
fn prime_diagrams_have_one_decoration_up_to_mirror() {
    for n in 1..=5 {
        for seq in chord_diagrams(n).into_iter().filter(|s| gauss_parity(s)) {
            let decorations = realizable_decorations(&seq);
            let Some(first) = decorations.first() else { continue };
            if is_prime(first) {
                assert_eq!(decorations.len(), 2, "{seq:?}");
                assert_eq!(decorations[0].mirror(), decorations[1].canonical());
            } else {
                assert!(decorations.len() > 2, "{seq:?}");
            }
        }
    }
}

#[test]
fn parity_diagrams_up_to_four_are_realizable() {
    for n in 0..=4 {
        for seq in chord_diagrams(n).into_iter().filter(|s| gauss_parity(s)) {
            assert!(!realizable_decorations(&seq).is_empty(), "{seq:?}");
        }
    }
}
