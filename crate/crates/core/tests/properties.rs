//! Shrinking property tests: engines and the vEB map against plain models.

use std::collections::BTreeMap;

use dynmem::algebra::{Elem, FiniteSemigroup};
use dynmem::engines::Registry;
use dynmem::gallery;
use dynmem::veb::VebMap;
use proptest::prelude::*;

fn fold(s: &FiniteSemigroup, w: &[Elem]) -> Option<Elem> {
    s.eval_or_identity(w.iter().copied())
}

fn word_and_updates() -> impl Strategy<Value = (usize, Vec<usize>, Vec<(usize, usize)>)> {
    (0..gallery::entries().len()).prop_flat_map(|g| {
        let k = gallery::entries()[g].1.size();
        (1usize..80).prop_flat_map(move |n| {
            (Just(g), prop::collection::vec(0..k, n), prop::collection::vec((0..n, 0..k), 0..60))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn engines_track_the_fold((g, mut word, updates) in word_and_updates()) {
        let (name, s) = &gallery::entries()[g];
        let registry = Registry::standard();
        for e in registry.eligible(s) {
            let mut eng = registry.build(e, s, &word).unwrap();
            let mut w = word.clone();
            for &(pos, a) in &updates {
                eng.update(pos, a).unwrap();
                w[pos] = a;
                prop_assert_eq!(eng.query(), fold(s, &w), "{} / {}", name, e);
            }
            prop_assert_eq!(eng.word(), w);
        }
        for &(pos, a) in &updates {
            word[pos] = a;
        }
        let mut prefix = registry.build("prefix", s, &word).unwrap();
        for len in 0..=word.len() {
            prop_assert_eq!(prefix.prefix(len).unwrap(), fold(s, &word[..len]));
        }
    }

    #[test]
    fn veb_matches_btreemap(span_bits in 1u32..12, ops in prop::collection::vec((0u8..4, any::<u32>()), 1..400)) {
        let span = 1usize << span_bits;
        let mut m = VebMap::new(span);
        let mut o = BTreeMap::new();
        for (i, (op, r)) in ops.into_iter().enumerate() {
            let key = 1 + r as usize % span;
            match op {
                0 => {
                    let fresh = !o.contains_key(&key);
                    o.entry(key).or_insert(i);
                    prop_assert_eq!(m.insert(key, i).is_ok(), fresh);
                }
                1 => prop_assert_eq!(m.delete(key).ok(), o.remove(&key)),
                2 => prop_assert_eq!(m.find_prev(key), o.range(..=key).next_back().map(|(&k, _)| k)),
                _ => prop_assert_eq!(m.find_next(key), o.range(key..).next().map(|(&k, _)| k)),
            }
        }
        prop_assert!(m.iter().eq(o.iter().map(|(&k, &v)| (k, v))));
    }
}
