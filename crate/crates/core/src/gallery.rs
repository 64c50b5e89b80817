//! Small named semigroups used by tests, benches and the CLI.

use crate::algebra::{adjoin_identity_fresh, direct_product, Elem, FiniteSemigroup};

fn from_fn(names: &[&str], mul: impl Fn(Elem, Elem) -> Elem) -> FiniteSemigroup {
    let n = names.len();
    let table = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
    FiniteSemigroup::with_names(table, names.iter().map(|s| s.to_string()).collect())
        .expect("gallery tables are associative")
}

pub fn trivial() -> FiniteSemigroup {
    from_fn(&["1"], |_, _| 0)
}

/// `{1, 0}` under AND.
pub fn u1() -> FiniteSemigroup {
    from_fn(&["1", "0"], |x, y| x.max(y))
}

/// `{1, a, b}` with `xy = y` on `{a, b}`.
pub fn u2() -> FiniteSemigroup {
    from_fn(&["1", "a", "b"], |x, y| if y == 0 { x } else { y })
}

/// `Z_n`; element `k` is the residue `k`.
pub fn cyclic(n: usize) -> FiniteSemigroup {
    let names: Vec<String> = (0..n).map(|k| k.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    from_fn(&refs, |x, y| (x + y) % n)
}

/// Permutations of three points, composed left to right (`xy` applies `x`
/// first). Names are cycle notations; the identity is `e`.
pub fn s3() -> FiniteSemigroup {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let names: Vec<String> = perms.iter().map(cycle_name).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    from_fn(&refs, |x, y| {
        let composed = [perms[y][perms[x][0]], perms[y][perms[x][1]], perms[y][perms[x][2]]];
        perms.iter().position(|p| *p == composed).unwrap()
    })
}

fn cycle_name(p: &[usize; 3]) -> String {
    let mut seen = [false; 3];
    let mut out = String::new();
    for start in 0..3 {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push(char::from(b'1' + i as u8));
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// `{a, b, ab, 0}` with `a² = a`, `b² = b`, `ba = 0`.
pub fn ab_star_semigroup() -> FiniteSemigroup {
    const A: Elem = 0;
    const B: Elem = 1;
    const AB: Elem = 2;
    const Z: Elem = 3;
    from_fn(&["a", "b", "ab", "0"], |x, y| match (x, y) {
        (Z, _) | (_, Z) => Z,
        (A, A) => A,
        (A, B) | (A, AB) | (AB, B) => AB,
        (B, B) => B,
        _ => Z,
    })
}

/// `{1, a, b, ab, 0}`: the previous semigroup with an identity.
pub fn ab_star_monoid() -> FiniteSemigroup {
    adjoin_identity_fresh(&ab_star_semigroup())
}

/// `{1, a, b, ab, 0}` with `a² = b² = ba = 0`.
pub fn zg_monoid() -> FiniteSemigroup {
    from_fn(&["1", "a", "b", "ab", "0"], |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        (1, 2) => 3,
        _ => 4,
    })
}

/// `{1, a, 0}` with `a² = 0`.
pub fn nil_one() -> FiniteSemigroup {
    from_fn(&["1", "a", "0"], |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        _ => 2,
    })
}

/// `{p, q, pq, qp, 0}` with `p² = q² = 0` and all products of three letters
/// zero, plus an identity.
pub fn pq_monoid() -> FiniteSemigroup {
    let nil = from_fn(&["p", "q", "pq", "qp", "0"], |x, y| match (x, y) {
        (0, 1) => 2,
        (1, 0) => 3,
        _ => 4,
    });
    adjoin_identity_fresh(&nil)
}

pub fn z2_times_u1() -> FiniteSemigroup {
    direct_product(&cyclic(2), &u1())
}

pub fn z2_times_zg() -> FiniteSemigroup {
    direct_product(&cyclic(2), &zg_monoid())
}

/// The standard test gallery.
pub fn entries() -> Vec<(&'static str, FiniteSemigroup)> {
    vec![
        ("U1", u1()),
        ("U2", u2()),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", s3()),
        ("ab*", ab_star_semigroup()),
        ("zg5", zg_monoid()),
        ("nil1", nil_one()),
        ("pq1", pq_monoid()),
        ("Z2xU1", z2_times_u1()),
        ("Z2xzg5", z2_times_zg()),
    ]
}

pub fn by_name(name: &str) -> Option<FiniteSemigroup> {
    if let Some(n) = name.strip_prefix('Z').and_then(|r| r.parse::<usize>().ok()) {
        return (n >= 1).then(|| cyclic(n));
    }
    match name {
        "trivial" => Some(trivial()),
        "ab*1" => Some(ab_star_monoid()),
        _ => entries().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s),
    }
}
