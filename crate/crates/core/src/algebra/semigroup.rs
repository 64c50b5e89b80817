use std::fmt;

use crate::error::{Error, Result};

/// Dense element id, `0..size`.
pub type Elem = usize;

/// Idempotent-power data of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaData {
    /// Least `k >= 1` with `x^k` idempotent.
    pub exponent: usize,
    /// `x^ω`.
    pub element: Elem,
    /// `x^(ω+1)`.
    pub plus_one: Elem,
    /// `x^(ω+1) = x`, i.e. `x` lies in a subgroup.
    pub is_group_element: bool,
}

/// A finite semigroup given by its full composition table.
///
/// Construction validates associativity on all triples and caches identity,
/// zero and omega data. Values are immutable afterwards.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<Elem>,
    identity: Option<Elem>,
    zero: Option<Elem>,
    names: Vec<String>,
    omega: Vec<OmegaData>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("size", &self.size)
            .field("names", &self.names)
            .field("identity", &self.identity)
            .field("zero", &self.zero)
            .finish()
    }
}

impl FiniteSemigroup {
    /// Builds a semigroup from a square table with default names `0..n`.
    pub fn new(table: Vec<Vec<Elem>>) -> Result<Self> {
        let names = (0..table.len()).map(|i| i.to_string()).collect();
        Self::with_names(table, names)
    }

    pub fn with_names(table: Vec<Vec<Elem>>, names: Vec<String>) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::Range("empty table".into()));
        }
        if names.len() != size {
            return Err(Error::Range(format!("{} names for {} elements", names.len(), size)));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (r, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Range(format!("row {r} has {} entries, expected {size}", row.len())));
            }
            for &v in row {
                if v >= size {
                    return Err(Error::Range(format!("entry {v} in row {r} out of range")));
                }
                flat.push(v);
            }
        }
        Self::from_flat(size, flat, names)
    }

    pub(crate) fn from_flat(size: usize, table: Vec<Elem>, names: Vec<String>) -> Result<Self> {
        debug_assert_eq!(table.len(), size * size);
        let at = |x: Elem, y: Elem| table[x * size + y];
        for x in 0..size {
            for y in 0..size {
                let xy = at(x, y);
                for z in 0..size {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(Error::AssociativityViolation { x, y, z });
                    }
                }
            }
        }
        Ok(Self::from_flat_trusted(size, table, names))
    }

    /// Skips the associativity check; for tables that are associative by
    /// construction, such as composition of transformations.
    pub(crate) fn from_flat_trusted(size: usize, table: Vec<Elem>, names: Vec<String>) -> Self {
        let at = |x: Elem, y: Elem| table[x * size + y];
        let identity = (0..size).find(|&e| (0..size).all(|x| at(e, x) == x && at(x, e) == x));
        let zero = (0..size).find(|&z| (0..size).all(|x| at(z, x) == z && at(x, z) == z));
        let mut s = FiniteSemigroup { size, table, identity, zero, names, omega: Vec::new() };
        s.omega = (0..size).map(|x| s.compute_omega(x)).collect();
        s
    }

    fn compute_omega(&self, x: Elem) -> OmegaData {
        let mut p = x;
        let mut k = 1;
        while self.mul(p, p) != p {
            p = self.mul(p, x);
            k += 1;
        }
        let plus_one = self.mul(p, x);
        OmegaData { exponent: k, element: p, plus_one, is_group_element: plus_one == x }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.size + y]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn identity(&self) -> Option<Elem> {
        self.identity
    }

    pub fn zero(&self) -> Option<Elem> {
        self.zero
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn omega_data(&self, x: Elem) -> OmegaData {
        self.omega[x]
    }

    /// `x^ω` together with its exponent.
    pub fn omega(&self, x: Elem) -> (usize, Elem) {
        let o = self.omega[x];
        (o.exponent, o.element)
    }

    pub fn omega_elem(&self, x: Elem) -> Elem {
        self.omega[x].element
    }

    pub fn omega_plus_one(&self, x: Elem) -> Elem {
        self.omega[x].plus_one
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// `x^k` for `k >= 1`.
    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        assert!(k >= 1, "semigroup powers start at 1");
        let mut acc = x;
        for _ in 1..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Left-to-right product; `None` on the empty word.
    pub fn eval<I: IntoIterator<Item = Elem>>(&self, word: I) -> Option<Elem> {
        word.into_iter().reduce(|a, b| self.mul(a, b))
    }

    /// Product of the word, using the identity for the empty word when it exists.
    pub fn eval_or_identity<I: IntoIterator<Item = Elem>>(&self, word: I) -> Option<Elem> {
        self.eval(word).or(self.identity)
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| (x + 1..self.size).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// The semigroup with reversed law `x ·ᵗ y = y · x`.
    pub fn reversed(&self) -> FiniteSemigroup {
        let n = self.size;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.mul(y, x);
            }
        }
        FiniteSemigroup::from_flat(n, table, self.names.clone()).expect("reversal preserves associativity")
    }

    /// Right powers `x, x^2, ...` up to the first repetition: (index, period) of `x`.
    pub fn index_period(&self, x: Elem) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.size];
        let mut p = x;
        let mut k = 1;
        loop {
            if seen[p] != usize::MAX {
                return (seen[p], k - seen[p]);
            }
            seen[p] = k;
            p = self.mul(p, x);
            k += 1;
        }
    }
}

/// Bitset over element ids, used for ideals and subsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(size: usize) -> Self {
        ElemSet { words: vec![0; size.div_ceil(64)] }
    }

    pub fn from_iter<I: IntoIterator<Item = Elem>>(size: usize, it: I) -> Self {
        let mut s = Self::new(size);
        for x in it {
            s.insert(x);
        }
        s
    }

    pub fn insert(&mut self, x: Elem) -> bool {
        let (w, b) = (x / 64, x % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w & (1u64 << b) != 0).map(move |b| i * 64 + b)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u1() -> FiniteSemigroup {
        // elements {1, 0}: ids 0 -> "1", 1 -> "0"
        FiniteSemigroup::with_names(vec![vec![0, 1], vec![1, 1]], vec!["1".into(), "0".into()]).unwrap()
    }

    #[test]
    fn u1_is_a_monoid_with_zero() {
        let s = u1();
        assert_eq!(s.identity(), Some(0));
        assert_eq!(s.zero(), Some(1));
    }

    #[test]
    fn trivial_monoid() {
        let s = FiniteSemigroup::new(vec![vec![0]]).unwrap();
        assert_eq!(s.identity(), Some(0));
        assert_eq!(s.zero(), Some(0));
    }

    #[test]
    fn rejects_non_associative_table() {
        // x*y = 1 - x  (left projection negated) is not associative
        let err = FiniteSemigroup::new(vec![vec![1, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }));
    }

    #[test]
    fn rejects_out_of_range_entries() {
        assert!(matches!(FiniteSemigroup::new(vec![vec![0, 2], vec![0, 0]]), Err(Error::Range(_))));
        assert!(matches!(FiniteSemigroup::new(vec![vec![0, 0]]), Err(Error::Range(_))));
    }

    #[test]
    fn omega_examples() {
        // U2 = {1, a, b}, xy = y on {a, b}
        let u2 = FiniteSemigroup::new(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]]).unwrap();
        assert_eq!(u2.omega(1), (1, 1));
        // Z3
        let z3 = FiniteSemigroup::new((0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect()).unwrap();
        assert_eq!(z3.omega(1), (3, 0));
        assert!(z3.omega_data(1).is_group_element);
        // {1, a, 0} with a^2 = 0
        let n = FiniteSemigroup::new(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]).unwrap();
        assert_eq!(n.omega(1), (2, 2));
        assert!(!n.omega_data(1).is_group_element);
    }

    #[test]
    fn elem_set_ops() {
        let a = ElemSet::from_iter(70, [1, 65]);
        let b = ElemSet::from_iter(70, [1, 2, 65]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![1, 2, 65]);
        assert_eq!(b.len(), 3);
    }
}
