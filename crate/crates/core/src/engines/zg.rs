use std::collections::HashMap;

use super::{CountEngine, DivisionEngine, Engine, NilpotentEngine, ProductEngine};
use crate::algebra::{direct_product, find_zg_certificate, Elem, FactorKind, FiniteSemigroup, ZgCertificate};
use crate::error::{Error, Result};

/// Constant-time engine for monoids in ZG, via a subdirect decomposition into
/// commutative and nil-plus-one factors.
pub fn make_zg_engine(m: &FiniteSemigroup, word: &[Elem]) -> Result<Box<dyn Engine>> {
    let cert = find_zg_certificate(m)?.ok_or(Error::NotInVariety("ZG"))?;
    Ok(Box::new(zg_engine_from_certificate(m, &cert, word)?))
}

pub(crate) fn zg_engine_from_certificate(m: &FiniteSemigroup, cert: &ZgCertificate, word: &[Elem]) -> Result<DivisionEngine> {
    let sizes: Vec<usize> = cert.factors.iter().map(|f| f.monoid.size()).collect();
    let encode = |t: &[Elem]| t.iter().zip(&sizes).fold(0, |code, (&c, &k)| code * k + c);
    let rep: Vec<Elem> = cert.embedding.iter().map(|t| encode(t)).collect();
    let projection: HashMap<Elem, Elem> = cert.projection.iter().map(|(t, &x)| (encode(t), x)).collect();
    let inner_s = cert.factors[1..]
        .iter()
        .fold(cert.factors[0].monoid.clone(), |acc, f| direct_product(&acc, &f.monoid));
    let factors: Vec<(FiniteSemigroup, FactorKind)> = cert.factors.iter().map(|f| (f.monoid.clone(), f.kind)).collect();
    let engine = DivisionEngine::new(m, &inner_s, rep, projection, word, |w| {
        let mut parts: Vec<Box<dyn Engine>> = Vec::with_capacity(factors.len());
        for (i, (f, kind)) in factors.iter().enumerate() {
            let radix: usize = sizes[i + 1..].iter().product();
            let component: Vec<Elem> = w.iter().map(|&c| (c / radix) % sizes[i]).collect();
            parts.push(match kind {
                FactorKind::Commutative => Box::new(CountEngine::new(f, &component)?),
                FactorKind::NilPlusOne => Box::new(NilpotentEngine::new(f, &component)?),
            });
        }
        Ok(Box::new(ProductEngine::new(parts, sizes.clone())?))
    })?;
    Ok(engine.with_label("zg"))
}
