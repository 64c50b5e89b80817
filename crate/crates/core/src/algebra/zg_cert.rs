use std::collections::HashMap;

use serde::Serialize;

use super::congruence::{enumerate_congruences_bounded, Congruence, DEFAULT_CONGRUENCE_BOUND};
use super::construct::quotient;
use super::semigroup::{Elem, FiniteSemigroup};
use super::variety::{check_variety, Variety};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    Commutative,
    NilPlusOne,
}

#[derive(Debug, Clone)]
pub struct CertFactor {
    pub monoid: FiniteSemigroup,
    pub kind: FactorKind,
    pub congruence: Congruence,
}

/// A subdirect embedding of a monoid into commutative and nil-plus-one
/// quotients.
#[derive(Debug, Clone)]
pub struct ZgCertificate {
    pub factors: Vec<CertFactor>,
    /// Element of `M` -> tuple of factor ids.
    pub embedding: Vec<Vec<Elem>>,
    pub projection: HashMap<Vec<Elem>, Elem>,
}

impl ZgCertificate {
    fn from_congruences(m: &FiniteSemigroup, chosen: Vec<(Congruence, FiniteSemigroup, FactorKind)>) -> Self {
        let factors: Vec<CertFactor> = chosen
            .into_iter()
            .map(|(congruence, monoid, kind)| CertFactor { monoid, kind, congruence })
            .collect();
        let embedding: Vec<Vec<Elem>> = m
            .elements()
            .map(|x| factors.iter().map(|f| f.congruence.block_of(x)).collect())
            .collect();
        let projection = embedding.iter().enumerate().map(|(x, t)| (t.clone(), x)).collect();
        ZgCertificate { factors, embedding, projection }
    }

    pub fn factor_kinds(&self) -> Vec<FactorKind> {
        self.factors.iter().map(|f| f.kind).collect()
    }

    /// Exhaustive check: the embedding is an injective morphism and every
    /// factor has its claimed kind.
    pub fn verify(&self, m: &FiniteSemigroup) -> Result<()> {
        for f in &self.factors {
            let ok = match f.kind {
                FactorKind::Commutative => check_variety(&f.monoid, &Variety::Com),
                FactorKind::NilPlusOne => check_variety(&f.monoid, &Variety::NilPlusOne),
            };
            if !ok {
                return Err(Error::Internal(format!("factor is not {:?}", f.kind)));
            }
        }
        for x in m.elements() {
            for y in m.elements() {
                let lhs = &self.embedding[m.mul(x, y)];
                let rhs: Vec<Elem> = self
                    .factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f.monoid.mul(self.embedding[x][k], self.embedding[y][k]))
                    .collect();
                if *lhs != rhs {
                    return Err(Error::Internal(format!("embedding is not a morphism at ({x},{y})")));
                }
            }
        }
        if self.projection.len() != m.size() {
            return Err(Error::Internal("embedding is not injective".into()));
        }
        Ok(())
    }
}

fn kind_of(q: &FiniteSemigroup) -> Option<FactorKind> {
    if check_variety(q, &Variety::Com) {
        Some(FactorKind::Commutative)
    } else if check_variety(q, &Variety::NilPlusOne) {
        Some(FactorKind::NilPlusOne)
    } else {
        None
    }
}

pub fn find_zg_certificate(m: &FiniteSemigroup) -> Result<Option<ZgCertificate>> {
    find_zg_certificate_bounded(m, DEFAULT_CONGRUENCE_BOUND)
}

/// Searches for a subdirect decomposition into commutative and nil-plus-one
/// quotients. `Ok(None)` when none exists or `m` exceeds `bound`.
pub fn find_zg_certificate_bounded(m: &FiniteSemigroup, bound: usize) -> Result<Option<ZgCertificate>> {
    if !m.is_monoid() {
        return Err(Error::NotAMonoid);
    }
    if !check_variety(m, &Variety::Zg) {
        return Err(Error::NotInVariety("ZG"));
    }
    if let Some(kind) = kind_of(m) {
        let id = Congruence::identity(m.size());
        return Ok(Some(ZgCertificate::from_congruences(m, vec![(id, m.clone(), kind)])));
    }
    let congruences = match enumerate_congruences_bounded(m, bound) {
        Ok(c) => c,
        Err(Error::TooLarge { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut candidates: Vec<(Congruence, FiniteSemigroup, FactorKind)> = Vec::new();
    for c in congruences {
        if c.is_universal() || c.is_identity() {
            continue;
        }
        let q = quotient(m, &c)?;
        if let Some(kind) = kind_of(&q) {
            candidates.push((c, q, kind));
        }
    }
    let meet_all = |set: &[&(Congruence, FiniteSemigroup, FactorKind)]| {
        set.iter().fold(Congruence::universal(m.size()), |acc, c| acc.meet(&c.0))
    };
    let all: Vec<&_> = candidates.iter().collect();
    if !meet_all(&all).is_identity() {
        return Ok(None);
    }
    // prune greedily, dropping small quotients first
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&i| (candidates[i].1.size(), i));
    let mut keep = vec![true; candidates.len()];
    for &i in &order {
        keep[i] = false;
        let rest: Vec<&_> = (0..candidates.len()).filter(|&k| keep[k]).map(|k| &candidates[k]).collect();
        if rest.is_empty() || !meet_all(&rest).is_identity() {
            keep[i] = true;
        }
    }
    let chosen = candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    let cert = ZgCertificate::from_congruences(m, chosen);
    debug_assert!(cert.verify(m).is_ok());
    Ok(Some(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn zg_monoid_single_nil_factor() {
        let m = gallery::zg_monoid();
        let c = find_zg_certificate(&m).unwrap().unwrap();
        assert_eq!(c.factor_kinds(), vec![FactorKind::NilPlusOne]);
        c.verify(&m).unwrap();
    }

    #[test]
    fn abelian_group_single_commutative_factor() {
        let z6 = gallery::cyclic(6);
        let c = find_zg_certificate(&z6).unwrap().unwrap();
        assert_eq!(c.factor_kinds(), vec![FactorKind::Commutative]);
    }

    #[test]
    fn product_needs_two_factors() {
        let m = gallery::z2_times_zg();
        let c = find_zg_certificate(&m).unwrap().unwrap();
        let mut kinds = c.factor_kinds();
        kinds.sort_by_key(|k| *k as u8);
        assert_eq!(kinds, vec![FactorKind::Commutative, FactorKind::NilPlusOne]);
        c.verify(&m).unwrap();
    }

    #[test]
    fn rejects_non_zg() {
        assert_eq!(find_zg_certificate(&gallery::u2()).unwrap_err(), Error::NotInVariety("ZG"));
        assert_eq!(find_zg_certificate(&gallery::ab_star_semigroup()).unwrap_err(), Error::NotAMonoid);
    }
}
