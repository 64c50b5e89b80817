use super::construct::subsemigroup;
use super::green::{classes_by_ideal, green_j, left_ideals, right_ideals, JStructure};
use super::semigroup::{Elem, ElemSet, FiniteSemigroup};
use crate::error::{Error, Result};

/// `(i, g, j)` coordinates of an element of a regular maximal J-class.
pub type Coord = (usize, usize, usize);

/// Rees matrix coordinates of a regular maximal J-class `C`: every element of
/// `C` is `a_i g b_j` with `g` in the maximal subgroup at the base idempotent.
#[derive(Debug, Clone)]
pub struct ReesRepresentation {
    pub class_id: usize,
    pub class: Vec<Elem>,
    /// Base idempotent `e`.
    pub idempotent: Elem,
    /// Structuring group `H_e`, with its own ids.
    pub group: FiniteSemigroup,
    /// Group id -> element of `S`.
    pub group_elems: Vec<Elem>,
    pub i_count: usize,
    pub j_count: usize,
    /// `matrix[j][i]`: `b_j a_i` as a group id, or `None` when it leaves `C`.
    pub matrix: Vec<Vec<Option<usize>>>,
    coord: Vec<Option<Coord>>,
    uncoord: Vec<Elem>,
}

impl ReesRepresentation {
    pub fn coord(&self, x: Elem) -> Option<Coord> {
        self.coord[x]
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.coord[x].is_some()
    }

    pub fn uncoord(&self, (i, g, j): Coord) -> Elem {
        self.uncoord[(i * self.group.size() + g) * self.j_count + j]
    }

    pub fn group_identity(&self) -> usize {
        self.group.identity().expect("structuring group has an identity")
    }

    pub fn group_mul(&self, g: usize, h: usize) -> usize {
        self.group.mul(g, h)
    }

    pub fn sandwich(&self, j: usize, i: usize) -> Option<usize> {
        self.matrix[j][i]
    }

    /// Product computed in coordinates; `None` when it falls out of `C`.
    pub fn product(&self, (i, g, j): Coord, (i2, g2, j2): Coord) -> Option<Coord> {
        self.matrix[j][i2].map(|p| (i, self.group.mul(self.group.mul(g, p), g2), j2))
    }

    /// Checks the coordinate product law against `s` on all pairs of `C`.
    pub fn verify(&self, s: &FiniteSemigroup) -> Result<()> {
        for &x in &self.class {
            for &y in &self.class {
                let via = self.product(self.coord[x].unwrap(), self.coord[y].unwrap()).map(|c| self.uncoord(c));
                let xy = s.mul(x, y);
                let direct = self.contains(xy).then_some(xy);
                if via != direct {
                    return Err(Error::Internal(format!(
                        "coordinates disagree on {}*{}",
                        s.name(x),
                        s.name(y)
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn rees_decompose(s: &FiniteSemigroup, class_id: usize) -> Result<ReesRepresentation> {
    rees_decompose_with(s, &green_j(s), class_id)
}

pub fn rees_decompose_with(s: &FiniteSemigroup, j: &JStructure, class_id: usize) -> Result<ReesRepresentation> {
    if class_id >= j.class_count() {
        return Err(Error::Range(format!("no J-class {class_id}")));
    }
    if !j.is_maximal(class_id) {
        return Err(Error::NotMaximal(class_id));
    }
    if !j.regular[class_id] {
        return Err(Error::NotRegular(class_id));
    }
    let class = j.classes[class_id].clone();
    let in_c = j.members(class_id);
    let e = *class.iter().find(|&&x| s.is_idempotent(x)).unwrap();

    let (r_of, _) = classes_by_ideal(&right_ideals(s));
    let (l_of, _) = classes_by_ideal(&left_ideals(s));
    // R- and L-classes inside C, ordered by smallest member
    let mut r_ids: Vec<usize> = Vec::new();
    let mut l_ids: Vec<usize> = Vec::new();
    for &x in &class {
        if !r_ids.contains(&r_of[x]) {
            r_ids.push(r_of[x]);
        }
        if !l_ids.contains(&l_of[x]) {
            l_ids.push(l_of[x]);
        }
    }
    let i_of = |x: Elem| r_ids.iter().position(|&r| r == r_of[x]).unwrap();
    let j_of = |x: Elem| l_ids.iter().position(|&l| l == l_of[x]).unwrap();
    let (i_count, j_count) = (r_ids.len(), l_ids.len());
    let (ie, je) = (i_of(e), j_of(e));

    let pick = |want: &dyn Fn(Elem) -> bool| class.iter().copied().find(|&x| want(x)).unwrap();
    let a: Vec<Elem> = (0..i_count)
        .map(|i| if i == ie { e } else { pick(&|x| i_of(x) == i && l_of[x] == l_of[e]) })
        .collect();
    let b: Vec<Elem> = (0..j_count)
        .map(|jj| if jj == je { e } else { pick(&|x| j_of(x) == jj && r_of[x] == r_of[e]) })
        .collect();

    let h_e = ElemSet::from_iter(s.size(), class.iter().copied().filter(|&x| i_of(x) == ie && j_of(x) == je));
    let (group, group_elems) = subsemigroup(s, &h_e)?;
    let g_count = group.size();
    let g_index = |x: Elem| group_elems.iter().position(|&y| y == x);

    let mut matrix = vec![vec![None; i_count]; j_count];
    for (jj, row) in matrix.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate() {
            let p = s.mul(b[jj], a[i]);
            if in_c.contains(p) {
                *cell = Some(g_index(p).ok_or_else(|| Error::Internal("sandwich entry outside H_e".into()))?);
            }
        }
    }

    let mut coord = vec![None; s.size()];
    let mut uncoord = vec![usize::MAX; i_count * g_count * j_count];
    for i in 0..i_count {
        for (g, &ge) in group_elems.iter().enumerate() {
            for jj in 0..j_count {
                let x = s.mul(s.mul(a[i], ge), b[jj]);
                if !in_c.contains(x) || coord[x].is_some() {
                    return Err(Error::Internal(format!("coordinates not bijective at ({i},{g},{jj})")));
                }
                coord[x] = Some((i, g, jj));
                uncoord[(i * g_count + g) * j_count + jj] = x;
            }
        }
    }
    if class.iter().any(|&x| coord[x].is_none()) {
        return Err(Error::Internal("coordinates do not cover the class".into()));
    }
    Ok(ReesRepresentation {
        class_id,
        class,
        idempotent: e,
        group,
        group_elems,
        i_count,
        j_count,
        matrix,
        coord,
        uncoord,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn group_is_its_own_rees_form() {
        let z2 = gallery::cyclic(2);
        let r = rees_decompose(&z2, 0).unwrap();
        assert_eq!(r.group.size(), 2);
        assert_eq!((r.i_count, r.j_count), (1, 1));
        assert_eq!(r.matrix, vec![vec![Some(r.group_identity())]]);
        r.verify(&z2).unwrap();
    }

    #[test]
    fn class_of_a_in_ab_star() {
        let s = gallery::ab_star_semigroup();
        let j = green_j(&s);
        let c = j.class_of[s.element_by_name("a").unwrap()];
        let r = rees_decompose_with(&s, &j, c).unwrap();
        assert_eq!(r.group.size(), 1);
        assert_eq!((r.i_count, r.j_count), (1, 1));
        assert_eq!(r.matrix, vec![vec![Some(0)]]);
    }

    #[test]
    fn rejects_non_maximal_and_non_regular() {
        let s = gallery::ab_star_semigroup();
        let j = green_j(&s);
        let zero = j.class_of[s.element_by_name("0").unwrap()];
        assert_eq!(rees_decompose_with(&s, &j, zero).unwrap_err(), Error::NotMaximal(zero));
        let m = gallery::zg_monoid();
        let a = m.element_by_name("a").unwrap();
        let b = m.element_by_name("b").unwrap();
        let (nil, _) = crate::algebra::generated_subsemigroup(&m, &[a, b]).unwrap();
        let jn = green_j(&nil);
        let top = jn.maximal_classes[0];
        assert_eq!(rees_decompose_with(&nil, &jn, top).unwrap_err(), Error::NotRegular(top));
    }

    #[test]
    fn u2_top_class_is_a_rectangular_band() {
        // remove the identity: {a, b} with xy = y is a 1x2 rectangle
        let u2 = gallery::u2();
        let a = u2.element_by_name("a").unwrap();
        let b = u2.element_by_name("b").unwrap();
        let (s, _) = crate::algebra::generated_subsemigroup(&u2, &[a, b]).unwrap();
        let r = rees_decompose(&s, 0).unwrap();
        assert_eq!(r.group.size(), 1);
        assert_eq!(r.i_count * r.j_count, 2);
        r.verify(&s).unwrap();
    }
}
