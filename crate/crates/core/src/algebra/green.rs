use super::semigroup::{Elem, ElemSet, FiniteSemigroup};

/// Two-sided ideal `S¹xS¹` of every element.
pub fn two_sided_ideals(s: &FiniteSemigroup) -> Vec<ElemSet> {
    s.elements()
        .map(|x| {
            let mut set = ElemSet::new(s.size());
            set.insert(x);
            for u in s.elements() {
                let ux = s.mul(u, x);
                set.insert(ux);
                set.insert(s.mul(x, u));
                for v in s.elements() {
                    set.insert(s.mul(ux, v));
                }
            }
            set
        })
        .collect()
}

/// Right ideals `xS¹`.
pub fn right_ideals(s: &FiniteSemigroup) -> Vec<ElemSet> {
    s.elements()
        .map(|x| ElemSet::from_iter(s.size(), std::iter::once(x).chain(s.elements().map(|u| s.mul(x, u)))))
        .collect()
}

/// Left ideals `S¹x`.
pub fn left_ideals(s: &FiniteSemigroup) -> Vec<ElemSet> {
    s.elements()
        .map(|x| ElemSet::from_iter(s.size(), std::iter::once(x).chain(s.elements().map(|u| s.mul(u, x)))))
        .collect()
}

/// Groups elements by equal ideal; classes are numbered by smallest member.
pub(crate) fn classes_by_ideal(ideals: &[ElemSet]) -> (Vec<usize>, Vec<Vec<Elem>>) {
    let mut class_of = vec![usize::MAX; ideals.len()];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for x in 0..ideals.len() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<Elem> = (x..ideals.len()).filter(|&y| ideals[y] == ideals[x]).collect();
        for &y in &members {
            class_of[y] = id;
        }
        classes.push(members);
    }
    (class_of, classes)
}

/// J-classes with their order.
#[derive(Debug, Clone)]
pub struct JStructure {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<Elem>>,
    /// `le[c][d]` iff class `c` is below class `d`.
    pub le: Vec<Vec<bool>>,
    pub maximal_classes: Vec<usize>,
    pub regular: Vec<bool>,
}

impl JStructure {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Strict order `c <_J d`.
    pub fn lt(&self, c: usize, d: usize) -> bool {
        c != d && self.le[c][d]
    }

    pub fn is_maximal(&self, c: usize) -> bool {
        self.maximal_classes.contains(&c)
    }

    pub fn members(&self, c: usize) -> ElemSet {
        ElemSet::from_iter(self.class_of.len(), self.classes[c].iter().copied())
    }
}

pub fn green_j(s: &FiniteSemigroup) -> JStructure {
    let ideals = two_sided_ideals(s);
    let (class_of, classes) = classes_by_ideal(&ideals);
    let k = classes.len();
    let rep: Vec<&ElemSet> = classes.iter().map(|c| &ideals[c[0]]).collect();
    let le: Vec<Vec<bool>> = (0..k).map(|c| (0..k).map(|d| rep[c].is_subset(rep[d])).collect()).collect();
    let maximal_classes = (0..k).filter(|&c| (0..k).all(|d| d == c || !le[c][d])).collect();
    let regular = classes.iter().map(|c| c.iter().any(|&x| s.is_idempotent(x))).collect();
    JStructure { class_of, classes, le, maximal_classes, regular }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn ab_star_semigroup_classes() {
        let s = gallery::ab_star_semigroup();
        let j = green_j(&s);
        assert_eq!(j.class_count(), 4);
        let name = |c: usize| s.name(j.classes[c][0]).to_string();
        let mut maxes: Vec<String> = j.maximal_classes.iter().map(|&c| name(c)).collect();
        maxes.sort();
        assert_eq!(maxes, vec!["a", "b"]);
        let ab = j.class_of[s.element_by_name("ab").unwrap()];
        for c in 0..4 {
            assert_eq!(j.regular[c], c != ab);
        }
    }

    #[test]
    fn group_is_one_regular_class() {
        let j = green_j(&gallery::cyclic(2));
        assert_eq!(j.class_count(), 1);
        assert!(j.regular[0]);
        assert_eq!(j.maximal_classes, vec![0]);
    }

    #[test]
    fn trivial_monoid_single_class() {
        let j = green_j(&gallery::trivial());
        assert_eq!(j.classes, vec![vec![0]]);
    }
}
