use dynmem::algebra::{check_variety, Elem, FiniteSemigroup, Variety};
use dynmem::engines::{
    Engine, KaryEngine, LanguageEngine, PrefixEngine, Registry, SemidirectEngine, SemidirectSpec, SgEngine,
};
use dynmem::gallery;
use dynmem::syntactic::{languages, EnginePlan, Language, LanguageClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fold(s: &FiniteSemigroup, word: &[Elem]) -> Option<Elem> {
    s.eval_or_identity(word.iter().copied())
}

#[test]
fn semidirect_inner_word_is_the_twisted_word() {
    let spec = SemidirectSpec::example();
    let table = spec.table().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 300;
    let mut word: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..table.size())).collect();
    let mut e = SemidirectEngine::new(spec.clone(), &word).unwrap();
    for step in 1..=5000 {
        let (p, a) = (rng.gen_range(0..n), rng.gen_range(0..table.size()));
        word[p] = a;
        e.update(p, a).unwrap();
        assert_eq!(e.query(), fold(&table, &word));
        if step % 100 == 0 {
            // act by the whole prefix, recomputed from scratch
            let expected: Vec<Elem> = (0..n)
                .map(|i| {
                    let (t, _) = spec.decode(word[i]);
                    match spec.s.eval(word[..i].iter().map(|&c| spec.decode(c).1)) {
                        Some(prefix) => spec.act[prefix][t],
                        None => t,
                    }
                })
                .collect();
            assert_eq!(e.inner_word(), expected, "step {step}");
        }
    }
}

#[test]
fn semidirect_rejects_bad_actions() {
    let mut spec = SemidirectSpec::example();
    spec.act[0][1] = 1;
    assert!(SemidirectEngine::new(spec, &[]).is_err());
}

#[test]
fn kary_infix_splits() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (name, s) in gallery::entries() {
        for n in [1, 2, 5, 17, 100, 1000] {
            let mut word: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..s.size())).collect();
            for k in [2, 3, 5] {
                let mut e = KaryEngine::with_branching(&s, &word, k).unwrap();
                for _ in 0..200 {
                    let (p, a) = (rng.gen_range(0..n), rng.gen_range(0..s.size()));
                    word[p] = a;
                    e.update(p, a).unwrap();
                    let whole = e.query();
                    assert_eq!(e.infix(0, n - 1).unwrap(), whole, "{name}");
                    let i = rng.gen_range(0..n);
                    let l = rng.gen_range(i..n);
                    let j = rng.gen_range(i..=l);
                    let left = e.infix(i, j).unwrap().unwrap();
                    let joined = if j < l { s.mul(left, e.infix(j + 1, l).unwrap().unwrap()) } else { left };
                    assert_eq!(e.infix(i, l).unwrap(), Some(joined), "{name} {i} {j} {l}");
                    assert_eq!(Some(joined), s.eval(word[i..=l].iter().copied()), "{name}");
                    let len = rng.gen_range(0..=n);
                    assert_eq!(e.prefix(len).unwrap(), fold(&s, &word[..len]), "{name}");
                }
            }
        }
    }
}

#[test]
fn kary_tables_fit_the_budget() {
    for bits in [10, 12, 16] {
        let n = 1usize << bits;
        let e = KaryEngine::new(&gallery::u1(), &vec![0; n]).unwrap();
        let budget = (n as f64).sqrt().ceil() as usize;
        let k = e.branching();
        assert!(k == 2 || 2usize.pow(k as u32) * k * k <= budget, "n={n} k={k}");
    }
}

#[test]
fn prefix_engine_exhaustive() {
    let cases = [(gallery::cyclic(2), 64), (gallery::u1(), 64), (gallery::u2(), 64), (gallery::s3(), 40)];
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (s, max_n) in cases {
        for n in 1..=max_n {
            let mut word: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..s.size())).collect();
            let mut e = PrefixEngine::new(&s, &word).unwrap();
            for _ in 0..4 {
                for len in 0..=n {
                    assert_eq!(e.prefix(len).unwrap(), fold(&s, &word[..len]));
                }
                for i in 0..n {
                    let j = rng.gen_range(i..n);
                    assert_eq!(e.infix(i, j).unwrap(), s.eval(word[i..=j].iter().copied()));
                }
                let (p, a) = (rng.gen_range(0..n), rng.gen_range(0..s.size()));
                word[p] = a;
                e.update(p, a).unwrap();
            }
        }
    }
}

#[test]
fn prefix_engine_uses_predecessor_maps_for_u1_u2() {
    assert!(PrefixEngine::new(&gallery::u1(), &[0, 1]).unwrap().uses_predecessor());
    assert!(PrefixEngine::new(&gallery::u2(), &[0, 1]).unwrap().uses_predecessor());
    assert!(!PrefixEngine::new(&gallery::cyclic(2), &[0, 1]).unwrap().uses_predecessor());
}

fn stress_sg(s: &FiniteSemigroup, n: usize, steps: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..s.size())).collect();
    let mut e = SgEngine::new(s, &word).unwrap();
    let mut naive = Registry::standard().build("naive", s, &word).unwrap();
    for step in 0..steps {
        // long runs of one letter exercise run merges and splits
        let p = rng.gen_range(0..n);
        let a = if step % 3 == 0 { word[p.saturating_sub(1)] } else { rng.gen_range(0..s.size()) };
        word[p] = a;
        e.update(p, a).unwrap();
        naive.update(p, a).unwrap();
        assert_eq!(e.query(), naive.query(), "step {step}");
    }
    assert_eq!(e.word(), word);
}

#[test]
fn sg_engine_on_stable_semigroups() {
    for spec in [languages::abc_squared(), languages::l_u2(), languages::l_u1(), languages::a_star_b_star()] {
        let lang = Language::from_spec(spec).unwrap();
        stress_sg(&lang.stable.stable, 1 << 12, 10_000, 14);
        stress_sg(&lang.morphism.target, 1 << 10, 3_000, 15);
    }
}

#[test]
fn sg_engine_with_few_letters() {
    for (_, s) in gallery::entries().into_iter().filter(|(_, s)| check_variety(s, &Variety::Sg)) {
        for n in 1..=9 {
            stress_sg(&s, n, 400, n as u64);
        }
    }
}

#[test]
fn language_engines_under_updates() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (name, spec) in languages::entries() {
        let lang = Language::from_spec(spec).unwrap();
        let k = lang.alphabet().len();
        for n in [0, 1, 7, 300, 1 << 12] {
            let mut word: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            let mut plans = vec![EnginePlan::Kary];
            match lang.report.class {
                LanguageClass::QLzg => plans.extend([EnginePlan::ChunkedLzg, EnginePlan::ChunkedSg]),
                LanguageClass::QSgOnly => plans.push(EnginePlan::ChunkedSg),
                LanguageClass::OutsideQSg => {}
            }
            let mut engines: Vec<LanguageEngine> =
                plans.iter().map(|&p| LanguageEngine::with_plan(&lang, &word, p).unwrap()).collect();
            for e in engines.iter_mut() {
                assert_eq!(e.member(), lang.accepts(&word), "{name}");
            }
            if n == 0 {
                continue;
            }
            for _ in 0..2000 {
                let (p, a) = (rng.gen_range(0..n), rng.gen_range(0..k));
                word[p] = a;
                let want = lang.accepts(&word);
                for e in engines.iter_mut() {
                    e.update(p, a).unwrap();
                    assert_eq!(e.member(), want, "{name} {}", e.kind());
                }
            }
        }
    }
}

/// Largest cost of a single update followed by a query.
fn max_step(e: &mut dyn Engine, s: &FiniteSemigroup, steps: usize, seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = e.len();
    let mut worst = 0;
    for _ in 0..steps {
        let before = e.ops();
        e.update(rng.gen_range(0..n), rng.gen_range(0..s.size())).unwrap();
        e.query();
        worst = worst.max(e.ops() - before);
    }
    worst
}

#[test]
fn constant_time_engines_do_not_grow() {
    let registry = Registry::standard();
    let cases = [("count", gallery::cyclic(5)), ("nilpotent", gallery::pq_monoid()), ("zg", gallery::z2_times_zg())];
    for (name, s) in cases {
        let costs: Vec<u64> = [1usize << 8, 1 << 12, 1 << 14]
            .into_iter()
            .map(|n| {
                let word = vec![0; n];
                let mut e = registry.build(name, &s, &word).unwrap();
                max_step(e.as_mut(), &s, 20_000, 17)
            })
            .collect();
        assert!(costs.windows(2).all(|w| w[0] == w[1]), "{name}: {costs:?}");
    }
}
