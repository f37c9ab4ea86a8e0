use std::collections::BTreeMap;
use std::thread;

use crate::calculus::{functional_degree, ExtendedDegree, FiniteMap};
use crate::error::{invalid, Error, Result};
use crate::groups::{AbelianShape, DEFAULT_ENUMERATION_LIMIT};

/// Default cap on `|B|^|A|` for exhaustive enumeration.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 20;

/// `|B|^|A|`, or a resource error when it exceeds `cap`.
pub fn table_count(domain: &AbelianShape, codomain: &AbelianShape, cap: u64) -> Result<u64> {
    let a = domain.order_within(DEFAULT_ENUMERATION_LIMIT)?;
    let b = codomain.order_within(DEFAULT_ENUMERATION_LIMIT)?;
    let mut total: u64 = 1;
    for _ in 0..a {
        total = total
            .checked_mul(b)
            .filter(|&t| t <= cap)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "{codomain}^{domain} has more than {cap} tables; use sampled mode or raise the cap"
                ))
            })?;
    }
    Ok(total)
}

/// The map whose value at domain element `i` is codomain element number
/// `digit_i`, where `k = Σ_i digit_i |B|^i`.
pub fn map_at(domain: &AbelianShape, codomain: &AbelianShape, mut k: u64) -> FiniteMap {
    let a = domain.order().expect("enumerable domain") as usize;
    let b = codomain.order().expect("enumerable codomain");
    let mut values = Vec::with_capacity(a * codomain.rank());
    for _ in 0..a {
        values.extend(codomain.element_at((k % b) as usize).0);
        k /= b;
    }
    FiniteMap::from_flat(domain.clone(), codomain.clone(), values)
}

fn workers(total: u64) -> u64 {
    let n = thread::available_parallelism().map_or(1, |n| n.get()) as u64;
    n.clamp(1, total.max(1).div_ceil(64).max(1))
}

/// Runs `work` on contiguous index ranges covering `0..total` in parallel and
/// returns the per-range results in range order.
pub(crate) fn partitioned<T: Send>(
    total: u64,
    work: impl Fn(std::ops::Range<u64>) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let w = workers(total);
    let chunk = total.div_ceil(w).max(1);
    let ranges: Vec<_> = (0..w)
        .map(|i| (i * chunk).min(total)..((i + 1) * chunk).min(total))
        .collect();
    thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let work = &work;
                s.spawn(move || work(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Every map `A → B`, bucketed by functional degree. Maps within a bucket
/// appear in table-index order.
pub fn functions_by_degree(
    domain: &AbelianShape,
    codomain: &AbelianShape,
    cap: u64,
) -> Result<BTreeMap<ExtendedDegree, Vec<FiniteMap>>> {
    let total = table_count(domain, codomain, cap)?;
    let parts = partitioned(total, |range| {
        let mut buckets: BTreeMap<ExtendedDegree, Vec<FiniteMap>> = BTreeMap::new();
        for k in range {
            let f = map_at(domain, codomain, k);
            buckets.entry(functional_degree(&f)?).or_default().push(f);
        }
        Ok(buckets)
    })?;
    let mut out: BTreeMap<ExtendedDegree, Vec<FiniteMap>> = BTreeMap::new();
    for part in parts {
        for (d, maps) in part {
            out.entry(d).or_default().extend(maps);
        }
    }
    Ok(out)
}

/// Bucket sizes of [`functions_by_degree`] without keeping the tables.
pub fn degree_histogram(
    domain: &AbelianShape,
    codomain: &AbelianShape,
    cap: u64,
) -> Result<BTreeMap<ExtendedDegree, u64>> {
    let total = table_count(domain, codomain, cap)?;
    let parts = partitioned(total, |range| {
        let mut counts: BTreeMap<ExtendedDegree, u64> = BTreeMap::new();
        for k in range {
            *counts
                .entry(functional_degree(&map_at(domain, codomain, k))?)
                .or_default() += 1;
        }
        Ok(counts)
    })?;
    let mut out = BTreeMap::new();
    for part in parts {
        for (d, c) in part {
            *out.entry(d).or_default() += c;
        }
    }
    Ok(out)
}

/// Largest finite functional degree among all maps `A → B` between
/// `p`-groups, checked against `δ_p(ᾱ, β)`.
pub fn brute_delta(domain: &AbelianShape, codomain: &AbelianShape, cap: u64) -> Result<u64> {
    let p = domain
        .p_group_prime()
        .filter(|&p| codomain.p_group_prime() == Some(p))
        .ok_or_else(|| invalid!("{domain} and {codomain} are not p-groups for a common prime"))?;
    let hist = degree_histogram(domain, codomain, cap)?;
    let max = hist
        .keys()
        .filter_map(|d| d.finite())
        .max()
        .unwrap_or(0);
    let shape = &domain.primary_decomposition()?[&p];
    let expected = shape.delta_max(codomain.exponent_exponent(p));
    if expected != max.into() {
        return Err(Error::Internal(format!(
            "exhaustive maximum degree {max} for {domain} → {codomain} differs from δ = {expected}"
        )));
    }
    Ok(max)
}
