//! Standard constructions: products, sub- and quotient semigroups, adjoined
//! identity and zero.

use super::congruence::Congruence;
use super::semigroup::{Elem, ElemSet, FiniteSemigroup};
use crate::error::{Error, Result};

/// Componentwise product. Element `(s, t)` has id `s * |T| + t`.
pub fn direct_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> FiniteSemigroup {
    let (ns, nt) = (s.size(), t.size());
    let n = ns * nt;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (xs, xt) = (x / nt, x % nt);
            let (ys, yt) = (y / nt, y % nt);
            table.push(s.mul(xs, ys) * nt + t.mul(xt, yt));
        }
    }
    let names = (0..n).map(|x| format!("({},{})", s.name(x / nt), t.name(x % nt))).collect();
    FiniteSemigroup::from_flat(n, table, names).expect("product of semigroups is associative")
}

/// Quotient by a congruence; block `b` becomes element `b`, named after its
/// smallest member.
pub fn quotient(s: &FiniteSemigroup, c: &Congruence) -> Result<FiniteSemigroup> {
    c.validate(s)?;
    let k = c.block_count();
    let reps: Vec<Elem> = c.blocks().iter().map(|b| b[0]).collect();
    let mut table = Vec::with_capacity(k * k);
    for &x in &reps {
        for &y in &reps {
            table.push(c.block_of(s.mul(x, y)));
        }
    }
    let names = c
        .blocks()
        .iter()
        .map(|b| if b.len() == 1 { s.name(b[0]).to_string() } else { format!("[{}]", s.name(b[0])) })
        .collect();
    FiniteSemigroup::from_flat(k, table, names)
}

/// Subsemigroup on an element set closed under the law. Returns the
/// subsemigroup and its inclusion map (new id -> old id), ordered by old id.
pub fn subsemigroup(s: &FiniteSemigroup, elems: &ElemSet) -> Result<(FiniteSemigroup, Vec<Elem>)> {
    let incl: Vec<Elem> = elems.iter().collect();
    if incl.is_empty() {
        return Err(Error::Range("empty subsemigroup".into()));
    }
    let mut back = vec![usize::MAX; s.size()];
    for (i, &x) in incl.iter().enumerate() {
        back[x] = i;
    }
    let k = incl.len();
    let mut table = Vec::with_capacity(k * k);
    for &x in &incl {
        for &y in &incl {
            let xy = s.mul(x, y);
            if back[xy] == usize::MAX {
                return Err(Error::Range(format!(
                    "subset not closed: {}*{} = {}",
                    s.name(x),
                    s.name(y),
                    s.name(xy)
                )));
            }
            table.push(back[xy]);
        }
    }
    let names = incl.iter().map(|&x| s.name(x).to_string()).collect();
    Ok((FiniteSemigroup::from_flat(k, table, names)?, incl))
}

/// Closure of `seed` under the law.
pub fn generated_subsemigroup(s: &FiniteSemigroup, seed: &[Elem]) -> Result<(FiniteSemigroup, Vec<Elem>)> {
    let mut set = ElemSet::new(s.size());
    let mut frontier: Vec<Elem> = Vec::new();
    for &x in seed {
        if x >= s.size() {
            return Err(Error::Range(format!("seed element {x} out of range")));
        }
        if set.insert(x) {
            frontier.push(x);
        }
    }
    while let Some(x) = frontier.pop() {
        for &g in seed {
            for p in [s.mul(x, g), s.mul(g, x)] {
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
    }
    subsemigroup(s, &set)
}

/// `S` plus a fresh zero (id `|S|`). With `reuse`, an existing zero is kept
/// and the semigroup is returned unchanged.
pub fn adjoin_zero(s: &FiniteSemigroup, reuse: bool) -> FiniteSemigroup {
    if reuse && s.zero().is_some() {
        return s.clone();
    }
    let n = s.size();
    let z = n;
    let m = n + 1;
    let mut table = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            table.push(if x == z || y == z { z } else { s.mul(x, y) });
        }
    }
    let mut names = s.names().to_vec();
    names.push(fresh_name(s, "0"));
    FiniteSemigroup::from_flat(m, table, names).expect("adjoining a zero keeps associativity")
}

/// `S^1`: `S` itself when it already has an identity, otherwise `S` plus a
/// fresh identity (id `|S|`).
pub fn adjoin_identity(s: &FiniteSemigroup) -> FiniteSemigroup {
    if s.is_monoid() {
        return s.clone();
    }
    adjoin_identity_fresh(s)
}

/// `S` plus a fresh identity (id `|S|`), even if `S` is already a monoid.
pub fn adjoin_identity_fresh(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.size();
    let e = n;
    let m = n + 1;
    let mut table = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            table.push(if x == e {
                y
            } else if y == e {
                x
            } else {
                s.mul(x, y)
            });
        }
    }
    let mut names = s.names().to_vec();
    names.push(fresh_name(s, "1"));
    FiniteSemigroup::from_flat(m, table, names).expect("adjoining an identity keeps associativity")
}

fn fresh_name(s: &FiniteSemigroup, base: &str) -> String {
    let mut name = base.to_string();
    while s.element_by_name(&name).is_some() {
        name.push('\'');
    }
    name
}
