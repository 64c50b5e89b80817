//! Structural facts about finite semigroups, checked on the whole gallery.

use dynmem::algebra::{check_variety, green_j, rees_decompose_with, subsemigroup, Elem, ElemSet, FiniteSemigroup, Variety};
use dynmem::gallery;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sg_gallery() -> Vec<(&'static str, FiniteSemigroup)> {
    gallery::entries().into_iter().filter(|(_, s)| check_variety(s, &Variety::Sg)).collect()
}

/// Peels maximal classes until nothing is left, calling `f` on each
/// intermediate subsemigroup with its inclusion map and the class removed.
fn peel(s: &FiniteSemigroup, mut f: impl FnMut(&FiniteSemigroup, &[Elem], usize)) {
    let mut alive: Vec<Elem> = s.elements().collect();
    while !alive.is_empty() {
        let (sub, incl) = subsemigroup(s, &ElemSet::from_iter(s.size(), alive.iter().copied())).unwrap();
        let j = green_j(&sub);
        let c = *j.maximal_classes.iter().min().unwrap();
        f(&sub, &incl, c);
        let gone: Vec<Elem> = j.classes[c].iter().map(|&x| incl[x]).collect();
        alive.retain(|x| !gone.contains(x));
    }
}

#[test]
fn zg_is_sg_meet_ze() {
    for (name, s) in gallery::entries() {
        let zg = check_variety(&s, &Variety::Zg);
        let sg = check_variety(&s, &Variety::Sg);
        let ze = check_variety(&s, &Variety::Ze);
        assert_eq!(zg, sg && ze, "{name}");
        // independent: x^{ω+1} central, by brute force
        let brute = s.elements().all(|x| {
            let g = s.omega_plus_one(x);
            s.elements().all(|y| s.mul(g, y) == s.mul(y, g))
        });
        assert_eq!(zg, brute, "{name}");
    }
}

#[test]
fn local_sg_is_sg() {
    for (name, s) in gallery::entries() {
        assert_eq!(check_variety(&s, &Variety::Sg), check_variety(&s, &Variety::local(Variety::Sg)), "{name}");
    }
}

#[test]
fn maximal_classes_absorb() {
    for (name, s) in gallery::entries() {
        let j = green_j(&s);
        for &c in &j.maximal_classes {
            let class = j.members(c);
            for x in s.elements() {
                for y in s.elements() {
                    if class.contains(s.mul(x, y)) {
                        assert!(class.contains(x) && class.contains(y), "{name}: {x}*{y}");
                    }
                }
            }
        }
    }
}

#[test]
fn non_regular_maximal_classes_collapse_pairs() {
    let mut seen = 0;
    for (name, s) in gallery::entries() {
        peel(&s, |sub, _, c| {
            let j = green_j(sub);
            if !j.regular[c] {
                seen += 1;
                let class = j.members(c);
                for x in class.iter() {
                    for y in class.iter() {
                        assert!(!class.contains(sub.mul(x, y)), "{name}");
                    }
                }
            }
        });
    }
    assert!(seen > 0);
}

#[test]
fn rees_coordinates_reconstruct_every_regular_class() {
    let mut seen = 0;
    for (name, s) in gallery::entries() {
        peel(&s, |sub, _, c| {
            let j = green_j(sub);
            if !j.regular[c] {
                return;
            }
            seen += 1;
            let r = rees_decompose_with(sub, &j, c).unwrap();
            r.verify(sub).unwrap();
            for &x in &j.classes[c] {
                let co = r.coord(x).unwrap();
                assert_eq!(r.uncoord(co), x, "{name}");
            }
            // products inside the class agree with the table
            for &x in &j.classes[c] {
                for &y in &j.classes[c] {
                    let xy = sub.mul(x, y);
                    match r.product(r.coord(x).unwrap(), r.coord(y).unwrap()) {
                        Some(co) => assert_eq!(r.uncoord(co), xy, "{name}"),
                        None => assert!(!r.contains(xy), "{name}"),
                    }
                }
            }
        });
    }
    assert!(seen > 10);
}

#[test]
fn structuring_groups_of_sg_are_commutative() {
    for (name, s) in sg_gallery() {
        peel(&s, |sub, _, c| {
            let j = green_j(sub);
            if j.regular[c] {
                let r = rees_decompose_with(sub, &j, c).unwrap();
                assert!(r.group.is_commutative(), "{name}");
            }
        });
    }
}

fn random_word(rng: &mut ChaCha8Rng, size: usize) -> Vec<Elem> {
    let len = rng.gen_range(0..4);
    (0..len).map(|_| rng.gen_range(0..size)).collect()
}

#[test]
fn swapping_group_mass_between_class_letters() {
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    let mut checked = 0;
    for (name, s) in sg_gallery() {
        let j = green_j(&s);
        for &c in &j.maximal_classes {
            if !j.regular[c] {
                continue;
            }
            let r = rees_decompose_with(&s, &j, c).unwrap();
            let gsize = r.group.size();
            let gid = r.group_identity();
            for _ in 0..1000 {
                let (pre, mid, post) =
                    (random_word(&mut rng, s.size()), random_word(&mut rng, s.size()), random_word(&mut rng, s.size()));
                let (i, i2) = (rng.gen_range(0..r.i_count), rng.gen_range(0..r.i_count));
                let (jj, j2) = (rng.gen_range(0..r.j_count), rng.gen_range(0..r.j_count));
                let (g, g2) = (rng.gen_range(0..gsize), rng.gen_range(0..gsize));
                let build = |x: Elem, y: Elem| -> Vec<Elem> { [&pre[..], &[x], &mid[..], &[y], &post[..]].concat() };
                let left = build(r.uncoord((i, r.group_mul(g, g2), jj)), r.uncoord((i2, gid, j2)));
                let right = build(r.uncoord((i, g, jj)), r.uncoord((i2, g2, j2)));
                assert_eq!(s.eval(left), s.eval(right), "{name}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 1000);
}
