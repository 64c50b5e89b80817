use super::monoid::Morphism;
use crate::algebra::{subsemigroup, Elem, ElemSet, FiniteSemigroup};
use crate::error::{Error, Result};

/// Stability index `s` and the stable semigroup `η(Σ^s)`.
#[derive(Debug, Clone)]
pub struct StableData {
    pub index: usize,
    pub stable: FiniteSemigroup,
    /// Stable id -> id in the syntactic monoid.
    pub inclusion: Vec<Elem>,
    /// Monoid id -> stable id, when the element is stable.
    pub to_stable: Vec<Option<Elem>>,
}

fn set_product(m: &FiniteSemigroup, x: &ElemSet, y: &ElemSet) -> ElemSet {
    let mut out = ElemSet::new(m.size());
    for a in x.iter() {
        for b in y.iter() {
            out.insert(m.mul(a, b));
        }
    }
    out
}

const MAX_INDEX: usize = 1 << 20;

pub fn stable_data(m: &Morphism) -> Result<StableData> {
    let t = &m.target;
    if m.eta.is_empty() {
        return Err(Error::Range("empty alphabet".into()));
    }
    let base = ElemSet::from_iter(t.size(), m.eta.iter().copied());
    let mut x = base.clone();
    let mut s = 1;
    loop {
        if set_product(t, &x, &x) == x {
            break;
        }
        x = set_product(t, &x, &base);
        s += 1;
        if s > MAX_INDEX {
            return Err(Error::Internal("stability index search did not terminate".into()));
        }
    }
    let (stable, inclusion) = subsemigroup(t, &x)?;
    let mut to_stable = vec![None; t.size()];
    for (i, &e) in inclusion.iter().enumerate() {
        to_stable[e] = Some(i);
    }
    Ok(StableData { index: s, stable, inclusion, to_stable })
}

impl StableData {
    /// Stable id of a block of exactly `index` letters.
    pub fn block_image(&self, m: &Morphism, block: &[usize]) -> Elem {
        debug_assert_eq!(block.len(), self.index);
        self.to_stable[m.eval(block)].expect("blocks of stable length land in the stable semigroup")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;
    use crate::syntactic::{minimize_dfa, parse_regex, regex_to_dfa, syntactic_monoid};

    fn morphism(re: &str, alpha: &[char]) -> Morphism {
        let d = minimize_dfa(&regex_to_dfa(&parse_regex(re, alpha).unwrap(), alpha));
        syntactic_monoid(&d).unwrap()
    }

    /// Independent oracle: least `s` with `X^s · X^s = X^s`, recomputing
    /// every power from scratch.
    fn oracle_index(m: &Morphism) -> usize {
        let t = &m.target;
        let pow = |k: usize| -> HashSet<Elem> {
            let mut cur: HashSet<Elem> = m.eta.iter().copied().collect();
            for _ in 1..k {
                cur = cur.iter().flat_map(|&a| m.eta.iter().map(move |&b| t.mul(a, b))).collect();
            }
            cur
        };
        (1..).find(|&k| {
            let p = pow(k);
            let sq: HashSet<Elem> = p.iter().flat_map(|&a| p.iter().map(move |&b| t.mul(a, b))).collect();
            sq == p
        })
        .unwrap()
    }

    #[test]
    fn a_star_b_star_index_two() {
        let m = morphism("a*b*", &['a', 'b']);
        let sd = stable_data(&m).unwrap();
        assert_eq!(sd.index, 2);
        assert_eq!(sd.index, oracle_index(&m));
        let mut names: Vec<&str> = sd.stable.names().iter().map(|s| s.as_str()).collect();
        names.sort();
        assert_eq!(names, vec!["a", "ab", "b", "ba"]);
    }

    #[test]
    fn unary_parity_index_two() {
        let m = morphism("(aa)*", &['a']);
        let sd = stable_data(&m).unwrap();
        assert_eq!(sd.index, 2);
        assert_eq!(sd.stable.size(), 1);
        assert_eq!(sd.inclusion, vec![m.identity()]);
    }

    #[test]
    fn idempotent_image_index_one() {
        let m = morphism("(a+b)*a", &['a', 'b']);
        let sd = stable_data(&m).unwrap();
        assert_eq!(sd.index, 1);
        assert_eq!(oracle_index(&m), 1);
    }

    #[test]
    fn stable_is_closed() {
        let m = morphism("(aa)*ba*", &['a', 'b']);
        let sd = stable_data(&m).unwrap();
        assert_eq!(sd.index, oracle_index(&m));
        let image: HashSet<Elem> = sd.inclusion.iter().copied().collect();
        let t = &m.target;
        let sq: HashSet<Elem> = image.iter().flat_map(|&a| image.iter().map(move |&b| t.mul(a, b))).collect();
        assert_eq!(sq, image);
    }
}
