//! `classify` and `algebra` reports.

use std::fmt::Write as _;

use anyhow::Result;
use dynmem::algebra::{
    check_variety, green_j, local_monoids, rees_decompose_with, Elem, FiniteSemigroup, Variety,
};
use dynmem::syntactic::{Language, TrichotomyReport};
use serde::Serialize;

pub fn cmd_classify(lang: &Language) -> TrichotomyReport {
    lang.report.clone()
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaRow {
    pub element: String,
    pub exponent: usize,
    pub omega: String,
    pub omega_plus_one: String,
    pub group_element: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub id: usize,
    pub elements: Vec<String>,
    pub regular: bool,
    pub maximal: bool,
    /// Classes strictly below this one.
    pub below: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalRow {
    pub idempotent: String,
    pub elements: Vec<String>,
    pub flags: Vec<(String, bool)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReesRow {
    pub class: usize,
    pub idempotent: String,
    pub group: Vec<String>,
    pub group_commutative: bool,
    pub i_count: usize,
    pub j_count: usize,
    /// `(element, i, g, j)` with `g` named by its element of the group.
    pub coordinates: Vec<(String, usize, String, usize)>,
    /// `sandwich[j][i]`, `None` outside the class.
    pub sandwich: Vec<Vec<Option<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub size: usize,
    pub elements: Vec<String>,
    pub identity: Option<String>,
    pub zero: Option<String>,
    pub idempotents: Vec<String>,
    pub omega: Vec<OmegaRow>,
    pub classes: Vec<ClassRow>,
    pub varieties: Vec<(String, bool)>,
    pub local_monoids: Vec<LocalRow>,
    pub rees: Vec<ReesRow>,
}

/// The plain varieties followed by their local versions.
pub fn all_varieties() -> Vec<Variety> {
    let basic = Variety::basic();
    basic.iter().cloned().chain(basic.iter().cloned().map(Variety::local)).collect()
}

fn flags(s: &FiniteSemigroup, vs: &[Variety]) -> Vec<(String, bool)> {
    vs.iter().map(|v| (v.to_string(), check_variety(s, v))).collect()
}

pub fn cmd_algebra(s: &FiniteSemigroup) -> Result<AlgebraReport> {
    let name = |x: Elem| s.name(x).to_string();
    let names = |xs: &[Elem]| xs.iter().map(|&x| name(x)).collect::<Vec<_>>();
    let j = green_j(s);
    let classes = (0..j.class_count())
        .map(|c| ClassRow {
            id: c,
            elements: names(&j.classes[c]),
            regular: j.regular[c],
            maximal: j.is_maximal(c),
            below: (0..j.class_count()).filter(|&d| j.lt(d, c)).collect(),
        })
        .collect();
    let mut rees = Vec::new();
    for &c in &j.maximal_classes {
        if !j.regular[c] {
            continue;
        }
        let r = rees_decompose_with(s, &j, c)?;
        let gname = |g: usize| name(r.group_elems[g]);
        rees.push(ReesRow {
            class: c,
            idempotent: name(r.idempotent),
            group: (0..r.group.size()).map(gname).collect(),
            group_commutative: r.group.is_commutative(),
            i_count: r.i_count,
            j_count: r.j_count,
            coordinates: r
                .class
                .iter()
                .map(|&x| {
                    let (i, g, jj) = r.coord(x).expect("class member");
                    (name(x), i, gname(g), jj)
                })
                .collect(),
            sandwich: r.matrix.iter().map(|row| row.iter().map(|p| p.map(gname)).collect()).collect(),
        });
    }
    let basic = Variety::basic();
    Ok(AlgebraReport {
        size: s.size(),
        elements: s.names().to_vec(),
        identity: s.identity().map(name),
        zero: s.zero().map(name),
        idempotents: names(&s.idempotents()),
        omega: s
            .elements()
            .map(|x| {
                let o = s.omega_data(x);
                OmegaRow {
                    element: name(x),
                    exponent: o.exponent,
                    omega: name(o.element),
                    omega_plus_one: name(o.plus_one),
                    group_element: o.is_group_element,
                }
            })
            .collect(),
        classes,
        varieties: flags(s, &all_varieties()),
        local_monoids: local_monoids(s)
            .into_iter()
            .map(|l| LocalRow {
                idempotent: name(l.idempotent),
                elements: names(&l.embedding),
                flags: flags(&l.monoid, &basic),
            })
            .collect(),
        rees,
    })
}

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn set(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

impl AlgebraReport {
    pub fn to_text(&self) -> String {
        let mut t = String::new();
        let none = || "-".to_string();
        let _ = writeln!(t, "elements ({}): {}", self.size, set(&self.elements));
        let _ = writeln!(
            t,
            "identity: {}  zero: {}",
            self.identity.clone().unwrap_or_else(none),
            self.zero.clone().unwrap_or_else(none)
        );
        let _ = writeln!(t, "idempotents: {}", set(&self.idempotents));
        let _ = writeln!(t, "omega:");
        for o in &self.omega {
            let _ = writeln!(
                t,
                "  {}: exponent {}, ω = {}, ω+1 = {}{}",
                o.element,
                o.exponent,
                o.omega,
                o.omega_plus_one,
                if o.group_element { ", group element" } else { "" }
            );
        }
        let _ = writeln!(t, "J-classes:");
        for c in &self.classes {
            let mut tags = vec![if c.regular { "regular" } else { "non-regular" }];
            if c.maximal {
                tags.push("maximal");
            }
            let below: Vec<String> = c.below.iter().map(|d| format!("J{d}")).collect();
            let _ = write!(t, "  J{} {} {}", c.id, set(&c.elements), tags.join(" "));
            if !below.is_empty() {
                let _ = write!(t, "  > {}", below.join(" "));
            }
            t.push('\n');
        }
        let _ = writeln!(t, "varieties:");
        for (v, ok) in &self.varieties {
            let _ = writeln!(t, "  {v} {}", mark(*ok));
        }
        let _ = writeln!(t, "local monoids:");
        for l in &self.local_monoids {
            let fl: Vec<String> = l.flags.iter().filter(|(_, ok)| *ok).map(|(v, _)| v.clone()).collect();
            let _ = writeln!(t, "  {}S{} = {}  in: {}", l.idempotent, l.idempotent, set(&l.elements), fl.join(" "));
        }
        for r in &self.rees {
            let _ = writeln!(
                t,
                "rees J{}: I = {}, J = {}, group at {} = {}{}",
                r.class,
                r.i_count,
                r.j_count,
                r.idempotent,
                set(&r.group),
                if r.group_commutative { " (commutative)" } else { "" }
            );
            for (x, i, g, j) in &r.coordinates {
                let _ = writeln!(t, "  {x} = ({i}, {g}, {j})");
            }
            for (j, row) in r.sandwich.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|p| p.clone().unwrap_or_else(|| "0".into())).collect();
                let _ = writeln!(t, "  P[{j}] = [{}]", cells.join(", "));
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynmem::gallery;

    fn flag(r: &AlgebraReport, v: &str) -> bool {
        r.varieties.iter().find(|(n, _)| n == v).unwrap().1
    }

    #[test]
    fn ab_star_flags() {
        let r = cmd_algebra(&gallery::ab_star_semigroup()).unwrap();
        assert!(flag(&r, "SG"));
        assert!(flag(&r, "LOCAL(ZG)"));
        assert!(!flag(&r, "ZG"));
        assert!(r.to_text().contains("SG ✓"));
    }

    #[test]
    fn u2_and_z5() {
        let r = cmd_algebra(&gallery::u2()).unwrap();
        assert!(flag(&r, "APERIODIC"));
        assert!(!flag(&r, "ZE"));
        let r = cmd_algebra(&gallery::cyclic(5)).unwrap();
        assert!(flag(&r, "COM"));
        assert_eq!(r.classes.len(), 1);
        assert!(r.omega.iter().all(|o| o.group_element));
        assert_eq!(r.rees.len(), 1);
        assert_eq!(r.rees[0].group.len(), 5);
    }
}
