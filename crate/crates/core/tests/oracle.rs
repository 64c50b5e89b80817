//! Every eligible engine against a from-scratch fold of the word.

use dynmem::algebra::{Elem, FiniteSemigroup};
use dynmem::engines::{Engine, Registry};
use dynmem::gallery;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fold(s: &FiniteSemigroup, word: &[Elem]) -> Option<Elem> {
    let mut it = word.iter().copied();
    let first = match it.next() {
        Some(a) => a,
        None => return s.identity(),
    };
    Some(it.fold(first, |acc, a| s.mul(acc, a)))
}

fn lockstep(name: &str, s: &FiniteSemigroup, n: usize, steps: usize, seed: u64) -> usize {
    let registry = Registry::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..s.size())).collect();
    let mut engines: Vec<Box<dyn Engine>> =
        registry.eligible(s).into_iter().map(|e| registry.build(e, s, &word).unwrap()).collect();
    assert!(engines.len() >= 3, "{name}: only {} engines", engines.len());
    let mut mismatches = 0;
    for _ in 0..steps {
        let pos = rng.gen_range(0..n);
        let a = rng.gen_range(0..s.size());
        word[pos] = a;
        let want = fold(s, &word);
        for e in engines.iter_mut() {
            e.update(pos, a).unwrap();
            let got = e.query();
            if got != want {
                mismatches += 1;
                eprintln!("{name} n={n} {}: got {got:?}, want {want:?}", e.kind());
            }
        }
    }
    for e in &engines {
        assert_eq!(e.word(), word, "{name} {}", e.kind());
    }
    mismatches
}

#[test]
fn random_ops_match_the_fold() {
    let mut total = 0;
    for (i, (name, s)) in gallery::entries().into_iter().enumerate() {
        for (j, n) in [17, 64, 1000, 4096].into_iter().enumerate() {
            total += lockstep(name, &s, n, 10_000, (i * 16 + j) as u64);
        }
    }
    assert_eq!(total, 0);
}

fn words(size: usize, len: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..size).map(move |a| [w.clone(), vec![a]].concat())).collect();
    }
    out
}

#[test]
fn exhaustive_small_words_and_substitutions() {
    let registry = Registry::standard();
    for (name, s) in gallery::entries().into_iter().filter(|(_, s)| s.size() <= 5) {
        let names = registry.eligible(&s);
        for len in 1..=5 {
            for w in words(s.size(), len) {
                for &e in &names {
                    let mut eng = registry.build(e, &s, &w).unwrap();
                    assert_eq!(eng.query(), fold(&s, &w), "{name} {e} {w:?}");
                    for pos in 0..len {
                        for a in s.elements() {
                            let mut v = w.clone();
                            v[pos] = a;
                            eng.update(pos, a).unwrap();
                            assert_eq!(eng.query(), fold(&s, &v), "{name} {e} {w:?} [{pos}]={a}");
                            eng.update(pos, w[pos]).unwrap();
                        }
                    }
                    assert_eq!(eng.query(), fold(&s, &w), "{name} {e} {w:?} restored");
                }
            }
        }
    }
}

#[test]
fn empty_word() {
    let registry = Registry::standard();
    for (name, s) in gallery::entries() {
        for e in registry.eligible(&s) {
            let mut eng = registry.build(e, &s, &[]).unwrap();
            assert_eq!(eng.query(), s.identity(), "{name} {e}");
            assert!(eng.update(0, 0).is_err());
        }
    }
}
