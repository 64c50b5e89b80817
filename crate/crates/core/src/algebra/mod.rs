//! Finite semigroups and monoids given by explicit tables.

mod congruence;
mod construct;
mod green;
mod json;
mod local;
mod rees;
mod semigroup;
mod variety;
mod zg_cert;

pub use congruence::{
    enumerate_congruences, enumerate_congruences_bounded, Congruence, DEFAULT_CONGRUENCE_BOUND, MAX_CONGRUENCES,
};
pub use construct::{
    adjoin_identity, adjoin_identity_fresh, adjoin_zero, direct_product, generated_subsemigroup, quotient,
    subsemigroup,
};
pub use green::{green_j, left_ideals, right_ideals, two_sided_ideals, JStructure};
pub use json::{CongruenceJson, SemigroupJson};
pub use local::{local_monoid_at, local_monoids, LocalMonoid};
pub use rees::{rees_decompose, rees_decompose_with, Coord, ReesRepresentation};
pub use semigroup::{Elem, ElemSet, FiniteSemigroup, OmegaData};
pub use variety::{check_variety, check_variety_named, find_violation, nilpotency_degree, Variety, Violation};
pub use zg_cert::{find_zg_certificate, find_zg_certificate_bounded, CertFactor, FactorKind, ZgCertificate};
