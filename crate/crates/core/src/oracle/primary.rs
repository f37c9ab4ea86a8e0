use std::collections::BTreeMap;

use crate::calculus::{zero_count, FiniteMap};
use crate::error::{invalid, Result};
use crate::groups::{AbelianShape, PrimaryComponent};

fn component(shape: &AbelianShape, prime: u64) -> Option<PrimaryComponent> {
    shape.primary_components().into_iter().find(|c| c.prime == prime)
}

/// The map `x ↦ Σ_ℓ f_ℓ(x[ℓ])` built from maps `f_ℓ: A[ℓ^∞] → B[ℓ^∞]`, each
/// given on the components in slot order. Missing primes contribute zero.
pub fn assemble_primary(
    domain: &AbelianShape,
    codomain: &AbelianShape,
    parts: &BTreeMap<u64, FiniteMap>,
) -> Result<FiniteMap> {
    let mut pieces = Vec::new();
    for (&prime, f) in parts {
        let (ca, cb) = component(domain, prime)
            .zip(component(codomain, prime))
            .ok_or_else(|| invalid!("{prime} does not divide both |{domain}| and |{codomain}|"))?;
        if f.domain() != &ca.abelian() || f.codomain() != &cb.abelian() {
            return Err(invalid!(
                "component at {prime} must map {} → {}, got {} → {}",
                ca.abelian(),
                cb.abelian(),
                f.domain(),
                f.codomain()
            ));
        }
        pieces.push((ca, cb, f));
    }
    FiniteMap::from_fn(domain.clone(), codomain.clone(), |x| {
        let mut acc = codomain.zero().0;
        for (ca, cb, f) in &pieces {
            let y = f.value_at(&ca.project(x));
            acc = codomain.add(&acc, &cb.embed(codomain, y));
        }
        acc
    })
}

/// The components `f_ℓ: A[ℓ^∞] → B[ℓ^∞]` of `f` for each prime `ℓ` dividing
/// both `|A|` and `|B|`.
pub fn split_primary(f: &FiniteMap) -> BTreeMap<u64, FiniteMap> {
    let (domain, codomain) = (f.domain(), f.codomain());
    domain
        .primary_components()
        .into_iter()
        .filter_map(|ca| {
            let cb = component(codomain, ca.prime)?;
            let g = FiniteMap::from_fn(ca.abelian(), cb.abelian(), |y| {
                cb.project(f.value_at(&ca.embed(domain, y)))
            })
            .expect("component of an enumerable map");
            Some((ca.prime, g))
        })
        .collect()
}

/// `Π_ℓ #Z(f_{1,ℓ}, ..., f_{r,ℓ})`, where a prime without any component
/// maps contributes `|A[ℓ^∞]|`.
pub fn primary_product_count(domain: &AbelianShape, system: &[FiniteMap]) -> Result<u64> {
    let split: Vec<BTreeMap<u64, FiniteMap>> = system.iter().map(split_primary).collect();
    let mut product = 1u64;
    for ca in domain.primary_components() {
        let local = ca.abelian();
        let maps: Vec<FiniteMap> = split
            .iter()
            .filter_map(|s| s.get(&ca.prime).cloned())
            .collect();
        product *= zero_count(&local, &maps)?.count;
    }
    Ok(product)
}
