//! Reductions between problems, checked against direct scans.

use dynmem::algebra::{check_variety, Elem, Variety};
use dynmem::gadgets::*;
use dynmem::gallery;
use dynmem::syntactic::{languages, Language};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.into_iter().flat_map(|w: Vec<usize>| (0..k).map(move |a| [w.clone(), vec![a]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn random_words(k: usize, n: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..64).map(|_| (0..n).map(|_| rng.gen_range(0..k)).collect()).collect()
}

fn check_prefix_u1_via_monoid(word: &[Elem], m: &dynmem::algebra::FiniteSemigroup, engine: &str) {
    let u1 = gallery::u1();
    let witness = NonCentralWitness::find(m).unwrap();
    let mut g = PrefixU1ViaMonoid::new(m, witness, word, engine).unwrap();
    for len in 0..=word.len() {
        let before = g.target_word();
        assert_eq!(g.prefix(len).unwrap(), scan_prefix(&u1, word, len), "{word:?} {len}");
        assert_eq!(g.target_word(), before);
    }
}

#[test]
fn prefix_u1_via_non_ze_monoids() {
    let monoids: Vec<_> = ["U2", "ab*1", "pq1"]
        .into_iter()
        .map(|n| gallery::by_name(n).unwrap())
        .filter(|m| !check_variety(m, &Variety::Ze))
        .collect();
    assert!(monoids.len() >= 2);
    for m in &monoids {
        for w in words(2, 5) {
            check_prefix_u1_via_monoid(&w, m, "naive");
        }
        for w in random_words(2, 64, 1) {
            check_prefix_u1_via_monoid(&w, m, "kary");
        }
    }
    // with updates, through the O(log log n) engine
    let m = gallery::u2();
    let u1 = gallery::u1();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut w: Vec<Elem> = (0..64).map(|_| rng.gen_range(0..2)).collect();
    let mut g = PrefixU1ViaMonoid::new(&m, NonCentralWitness::find(&m).unwrap(), &w, "sg").unwrap();
    for _ in 0..500 {
        let (p, a) = (rng.gen_range(0..64), rng.gen_range(0..2));
        w[p] = a;
        g.update(p, a).unwrap();
        let len = rng.gen_range(0..=64);
        let before = g.target_word();
        assert_eq!(g.prefix(len).unwrap(), scan_prefix(&u1, &w, len));
        assert_eq!(g.target_word(), before);
    }
}

#[test]
fn prefix_u1_rejects_ze_monoids() {
    assert!(NonCentralWitness::find(&gallery::cyclic(3)).is_none());
    assert!(NonCentralWitness::find(&gallery::zg_monoid()).is_none());
}

#[test]
fn prefix_u2_via_language() {
    let u2 = gallery::u2();
    let mut cases = words(3, 5);
    cases.extend(random_words(3, 64, 3));
    for w in cases {
        let mut g = PrefixU2ViaLanguage::new(&w).unwrap();
        for len in 0..=w.len() {
            let before = g.target_word();
            assert_eq!(g.prefix(len).unwrap(), scan_prefix(&u2, &w, len), "{w:?} {len}");
            assert_eq!(g.target_word(), before);
        }
    }
}

#[test]
fn prefix_u1_via_language() {
    let u1 = gallery::u1();
    let mut cases = words(2, 5);
    cases.extend(random_words(2, 64, 4));
    for w in cases {
        let mut g = PrefixU1ViaLanguage::new(&w).unwrap();
        for len in 0..=w.len() {
            let before = g.target_word();
            assert_eq!(g.prefix(len).unwrap(), scan_prefix(&u1, &w, len), "{w:?} {len}");
            assert_eq!(g.target_word(), before);
        }
    }
}

#[test]
fn membership_via_prefix_engines() {
    let l2 = Language::from_spec(languages::l_u2()).unwrap();
    let l1 = Language::from_spec(languages::l_u1()).unwrap();
    let mut sparse = ChaCha8Rng::seed_from_u64(5);
    // random words with few `x`s so that members actually occur
    let mut sample = |k: usize, x: usize| -> Vec<usize> {
        (0..64).map(|_| if sparse.gen_bool(0.03) { x } else { sparse.gen_range(0..k) }).collect()
    };
    let mut c2 = words(4, 5);
    let mut c1 = words(3, 5);
    let x2 = l2.morphism.letter('x').unwrap();
    let x1 = l1.morphism.letter('x').unwrap();
    for _ in 0..64 {
        c2.push(sample(4, x2));
        c1.push(sample(3, x1));
    }
    let mut hits = 0;
    for w in c2 {
        let got = LanguageU2ViaPrefix::new(&w).unwrap().member().unwrap();
        assert_eq!(got, l2.accepts(&w), "{}", l2.morphism.format_word(&w));
        hits += got as usize;
    }
    for w in c1 {
        let got = LanguageU1ViaPrefix::new(&w).unwrap().member().unwrap();
        assert_eq!(got, l1.accepts(&w), "{}", l1.morphism.format_word(&w));
        hits += got as usize;
    }
    assert!(hits > 100);
}

#[test]
fn membership_via_prefix_under_updates() {
    let l2 = Language::from_spec(languages::l_u2()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut w: Vec<usize> = (0..64).map(|_| rng.gen_range(0..3)).collect();
    let x = l2.morphism.letter('x').unwrap();
    w[40] = x;
    let mut g = LanguageU2ViaPrefix::new(&w).unwrap();
    for _ in 0..2000 {
        let p = rng.gen_range(0..64);
        let a = if rng.gen_bool(0.05) { x } else { rng.gen_range(0..4) };
        w[p] = a;
        g.update(p, a).unwrap();
        assert_eq!(g.member().unwrap(), l2.accepts(&w));
    }
}

fn check_infix(lang: &Language, w: &[usize]) {
    let mut g = InfixAdapter::new(lang, w).unwrap();
    for i in 0..w.len() {
        for j in i..w.len() {
            let before = g.target_word();
            assert_eq!(g.infix(i, j).unwrap(), lang.accepts(&w[i..=j]), "{} {i}..={j}", lang.morphism.format_word(w));
            assert_eq!(g.target_word(), before);
        }
    }
}

#[test]
fn infix_via_marked_language() {
    for spec in [languages::a_star_b_star(), languages::aa_star_b_a_star(), languages::parity()] {
        let lang = Language::from_spec(spec).unwrap();
        let k = lang.alphabet().len();
        for w in words(k, 5).into_iter().filter(|w| !w.is_empty()) {
            check_infix(&lang, &w);
        }
        for w in random_words(k, 64, 7).into_iter().take(16) {
            check_infix(&lang, &w);
        }
    }
}

#[test]
fn infix_under_updates() {
    let lang = Language::from_spec(languages::a_star_b_star()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for w0 in random_words(2, 64, 9) {
        let mut w = w0.clone();
        let mut g = InfixAdapter::new(&lang, &w).unwrap();
        for _ in 0..20 {
            let (p, a) = (rng.gen_range(0..64), rng.gen_range(0..2));
            w[p] = a;
            g.update(p, a).unwrap();
            let i = rng.gen_range(0..64);
            let j = rng.gen_range(i..64);
            assert_eq!(g.infix(i, j).unwrap(), lang.accepts(&w[i..=j]));
        }
    }
    let mut g = InfixAdapter::new(&lang, &[0, 1]).unwrap();
    assert!(g.infix(1, 0).is_err());
}
