use std::collections::BTreeMap;

use serde::Serialize;

use super::degree::ExtendedDegree;
use super::map::FiniteMap;
use crate::arith;
use crate::error::{invalid, Result};
use crate::groups::{AbelianShape, DEFAULT_ENUMERATION_LIMIT};

/// `#Z(f_1, ..., f_r)` together with `ord_q` of it for each prime `q | |A|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroCount {
    pub count: u64,
    pub ord: BTreeMap<u64, ExtendedDegree>,
}

impl ZeroCount {
    pub fn new(domain: &AbelianShape, count: u64) -> Self {
        let ord = domain
            .primes()
            .into_iter()
            .map(|q| (q, ExtendedDegree::from_valuation(arith::ord(q, count))))
            .collect();
        ZeroCount { count, ord }
    }
}

/// Common zeros of the system, as a mask over the elements of `domain`.
pub fn zero_set(domain: &AbelianShape, system: &[FiniteMap]) -> Result<Vec<bool>> {
    let n = domain.order_within(DEFAULT_ENUMERATION_LIMIT)? as usize;
    let mut mask = vec![true; n];
    for (j, f) in system.iter().enumerate() {
        if f.domain() != domain {
            return Err(invalid!(
                "map {j} is defined on {}, expected {domain}",
                f.domain()
            ));
        }
        for (slot, zero) in mask.iter_mut().zip(f.zero_mask()) {
            *slot &= zero;
        }
    }
    Ok(mask)
}

pub fn zero_count(domain: &AbelianShape, system: &[FiniteMap]) -> Result<ZeroCount> {
    let count = zero_set(domain, system)?.iter().filter(|&&z| z).count() as u64;
    Ok(ZeroCount::new(domain, count))
}
