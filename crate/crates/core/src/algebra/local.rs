use super::construct::subsemigroup;
use super::semigroup::{Elem, ElemSet, FiniteSemigroup};

/// The local monoid `eSe` at an idempotent `e`.
#[derive(Debug, Clone)]
pub struct LocalMonoid {
    pub idempotent: Elem,
    pub monoid: FiniteSemigroup,
    /// Local id -> id in the ambient semigroup.
    pub embedding: Vec<Elem>,
}

pub fn local_monoid_at(s: &FiniteSemigroup, e: Elem) -> LocalMonoid {
    debug_assert!(s.is_idempotent(e));
    let set = ElemSet::from_iter(s.size(), s.elements().map(|x| s.mul(s.mul(e, x), e)));
    let (monoid, embedding) = subsemigroup(s, &set).expect("eSe is closed");
    LocalMonoid { idempotent: e, monoid, embedding }
}

/// One local monoid per idempotent, in idempotent id order.
pub fn local_monoids(s: &FiniteSemigroup) -> Vec<LocalMonoid> {
    s.idempotents().into_iter().map(|e| local_monoid_at(s, e)).collect()
}
