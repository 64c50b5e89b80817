use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::local::local_monoids;
use super::semigroup::{Elem, FiniteSemigroup};
use crate::error::{Error, Result};

/// Varieties decided by exhaustive equation checks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Variety {
    Com,
    Aperiodic,
    Ze,
    Zg,
    Sg,
    Nilpotent,
    Definite,
    NilPlusOne,
    Local(Box<Variety>),
}

impl Variety {
    pub fn local(v: Variety) -> Variety {
        Variety::Local(Box::new(v))
    }

    /// The plain (non-local) varieties.
    pub fn basic() -> [Variety; 8] {
        use Variety::*;
        [Com, Aperiodic, Ze, Zg, Sg, Nilpotent, Definite, NilPlusOne]
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::Com => f.write_str("COM"),
            Variety::Aperiodic => f.write_str("APERIODIC"),
            Variety::Ze => f.write_str("ZE"),
            Variety::Zg => f.write_str("ZG"),
            Variety::Sg => f.write_str("SG"),
            Variety::Nilpotent => f.write_str("NILPOTENT"),
            Variety::Definite => f.write_str("DEFINITE"),
            Variety::NilPlusOne => f.write_str("NIL_PLUS_ONE"),
            Variety::Local(v) => write!(f, "LOCAL({v})"),
        }
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let upper = t.to_ascii_uppercase();
        if let Some(inner) = upper.strip_prefix("LOCAL(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Variety::local(inner.parse()?));
        }
        Ok(match upper.as_str() {
            "COM" => Variety::Com,
            "APERIODIC" | "A" => Variety::Aperiodic,
            "ZE" => Variety::Ze,
            "ZG" => Variety::Zg,
            "SG" => Variety::Sg,
            "NILPOTENT" | "NIL" => Variety::Nilpotent,
            "DEFINITE" | "D" => Variety::Definite,
            "NIL_PLUS_ONE" => Variety::NilPlusOne,
            _ => return Err(Error::UnsupportedVariety(t.to_string())),
        })
    }
}

/// A failing instance of a variety's equation. `elems` are ids in the
/// checked semigroup; for a local variety, `idempotent` names the local monoid
/// `eSe` the instance lives in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub variety: String,
    pub elems: Vec<Elem>,
    pub idempotent: Option<Elem>,
}

impl Violation {
    fn new(v: &Variety, elems: Vec<Elem>) -> Self {
        Violation { variety: v.to_string(), elems, idempotent: None }
    }
}

pub fn check_variety(s: &FiniteSemigroup, v: &Variety) -> bool {
    find_violation(s, v).is_none()
}

/// Variety check by textual id, e.g. `"LOCAL(ZG)"`.
pub fn check_variety_named(s: &FiniteSemigroup, id: &str) -> Result<bool> {
    Ok(check_variety(s, &id.parse()?))
}

fn all_pairs(s: &FiniteSemigroup) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    s.elements().flat_map(move |x| s.elements().map(move |y| (x, y)))
}

pub fn find_violation(s: &FiniteSemigroup, v: &Variety) -> Option<Violation> {
    let w = |x: Elem| s.omega_elem(x);
    let w1 = |x: Elem| s.omega_plus_one(x);
    let pair = |p: Option<(Elem, Elem)>| p.map(|(x, y)| Violation::new(v, vec![x, y]));
    match v {
        Variety::Com => pair(all_pairs(s).find(|&(x, y)| s.mul(x, y) != s.mul(y, x))),
        Variety::Aperiodic => s.elements().find(|&x| w1(x) != w(x)).map(|x| Violation::new(v, vec![x])),
        Variety::Ze => pair(all_pairs(s).find(|&(x, y)| s.mul(w(x), y) != s.mul(y, w(x)))),
        Variety::Zg => pair(all_pairs(s).find(|&(x, y)| s.mul(w1(x), y) != s.mul(y, w1(x)))),
        Variety::Sg => pair(all_pairs(s).find(|&(x, y)| {
            s.mul(s.mul(w1(x), y), w(x)) != s.mul(s.mul(w(x), y), w1(x))
        })),
        Variety::Nilpotent => nilpotent_violation(s).map(|e| Violation::new(v, e)),
        Variety::Definite => pair(all_pairs(s).find(|&(x, y)| s.mul(y, w(x)) != w(x))),
        Variety::NilPlusOne => nil_plus_one_violation(s).map(|e| Violation::new(v, e)),
        Variety::Local(inner) => {
            for lm in local_monoids(s) {
                if let Some(mut viol) = find_violation(&lm.monoid, inner) {
                    viol.elems = viol.elems.iter().map(|&x| lm.embedding[x]).collect();
                    viol.variety = v.to_string();
                    viol.idempotent = Some(lm.idempotent);
                    return Some(viol);
                }
            }
            None
        }
    }
}

fn nilpotent_violation(s: &FiniteSemigroup) -> Option<Vec<Elem>> {
    if s.zero().is_none() {
        return Some(Vec::new());
    }
    all_pairs(s)
        .find(|&(x, y)| {
            let e = s.omega_elem(x);
            s.mul(e, y) != e || s.mul(y, e) != e
        })
        .map(|(x, y)| vec![x, y])
}

fn nil_plus_one_violation(s: &FiniteSemigroup) -> Option<Vec<Elem>> {
    let Some(one) = s.identity() else {
        return Some(Vec::new());
    };
    if s.size() == 1 {
        return None;
    }
    let rest: Vec<Elem> = s.elements().filter(|&x| x != one).collect();
    for &x in &rest {
        for &y in &rest {
            let xy = s.mul(x, y);
            if xy == one {
                return Some(vec![x, y]);
            }
            let e = s.omega_elem(x);
            if s.mul(e, y) != e || s.mul(y, e) != e {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

/// Least `k` with `S^k = {0}`, for a nilpotent semigroup (or for `S∖{1}` in a
/// nil-plus-one monoid when `skip_identity` is set).
pub fn nilpotency_degree(s: &FiniteSemigroup, skip_identity: bool) -> Option<usize> {
    let one = if skip_identity { s.identity() } else { None };
    let base: Vec<Elem> = s.elements().filter(|&x| Some(x) != one).collect();
    if base.is_empty() {
        return Some(1);
    }
    let zero = {
        let mut z = base[0];
        for _ in 0..s.size() {
            for &x in &base {
                z = s.mul(z, x);
            }
        }
        z
    };
    let mut cur: Vec<bool> = vec![false; s.size()];
    for &x in &base {
        cur[x] = true;
    }
    for k in 1..=s.size() + 1 {
        let members: Vec<Elem> = (0..s.size()).filter(|&x| cur[x]).collect();
        if members == [zero] {
            return Some(k);
        }
        let mut next = vec![false; s.size()];
        for &x in &members {
            for &y in &base {
                next[s.mul(x, y)] = true;
            }
        }
        if next == cur {
            return None;
        }
        cur = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn zg_monoid_is_zg() {
        assert!(check_variety(&gallery::zg_monoid(), &Variety::Zg));
    }

    #[test]
    fn u2_is_sg_not_ze() {
        let u2 = gallery::u2();
        assert!(check_variety(&u2, &Variety::Sg));
        assert!(check_variety(&u2, &Variety::Aperiodic));
        let v = find_violation(&u2, &Variety::Ze).unwrap();
        let names: Vec<&str> = v.elems.iter().map(|&x| u2.name(x)).collect();
        assert!(names == ["a", "b"] || names == ["b", "a"]);
    }

    #[test]
    fn ab_star_semigroup_is_locally_zg() {
        let s = gallery::ab_star_semigroup();
        assert!(check_variety(&s, &Variety::local(Variety::Zg)));
        assert!(!check_variety(&s, &Variety::Zg));
        assert!(check_variety(&s, &Variety::Sg));
    }

    #[test]
    fn parsing() {
        assert_eq!("local(zg)".parse::<Variety>().unwrap(), Variety::local(Variety::Zg));
        assert_eq!(Variety::local(Variety::Sg).to_string(), "LOCAL(SG)");
        assert!(matches!("GROUPS".parse::<Variety>(), Err(Error::UnsupportedVariety(_))));
        assert!(check_variety_named(&gallery::u1(), "NOPE").is_err());
    }

    #[test]
    fn nilpotency_degrees() {
        assert_eq!(nilpotency_degree(&gallery::zg_monoid(), true), Some(3));
        assert_eq!(nilpotency_degree(&gallery::nil_one(), true), Some(2));
        assert_eq!(nilpotency_degree(&gallery::cyclic(2), false), None);
    }

    #[test]
    fn nil_plus_one_examples() {
        assert!(check_variety(&gallery::zg_monoid(), &Variety::NilPlusOne));
        assert!(check_variety(&gallery::pq_monoid(), &Variety::NilPlusOne));
        assert!(check_variety(&gallery::u1(), &Variety::Com));
        assert!(check_variety(&gallery::u1(), &Variety::NilPlusOne));
        assert!(!check_variety(&gallery::cyclic(2), &Variety::NilPlusOne));
        assert!(!check_variety(&gallery::ab_star_semigroup(), &Variety::NilPlusOne));
    }

    #[test]
    fn definite_right_zero() {
        let rz = FiniteSemigroup::new(vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(check_variety(&rz, &Variety::Definite));
        assert!(!check_variety(&rz.reversed(), &Variety::Definite));
    }
}
