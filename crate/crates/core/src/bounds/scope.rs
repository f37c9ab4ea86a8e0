use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::theorem::{main_bound, BoundReport, Target, TargetSpec};
use crate::arith;
use crate::error::{invalid, Result};
use crate::groups::AbelianShape;
use crate::partitions::Partition;

/// Splits each non-cyclic `p`-group target `B_j` into its cyclic factors, each
/// inheriting the degree cap `d_j`.
pub fn expand_targets(p: u64, codomains: &[(AbelianShape, u64)]) -> Result<TargetSpec> {
    let mut targets = Vec::new();
    for (shape, d) in codomains {
        if shape.p_group_prime() != Some(p) {
            return Err(invalid!("{shape} is not a nontrivial {p}-group"));
        }
        for &m in shape.factors() {
            let beta = arith::ord(p, m).expect("nonzero modulus");
            targets.push(Target { beta, d: *d });
        }
    }
    TargetSpec::new(p, targets)
}

/// The bound at one prime `ℓ` of `|A|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeBound {
    pub prime: u64,
    pub alpha_partition: Partition,
    /// `None` when no codomain has an `ℓ`-part.
    pub report: Option<BoundReport>,
    pub bound: u64,
    /// Set when no codomain has an `ℓ`-part, so the `ℓ`-component system is
    /// empty and its zero set is all of `A[ℓ^∞]`.
    pub empty_system: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Per-prime bounds for maps `f_j: A → B_j` with `fdeg(f_j) ≤ d_j` between
/// arbitrary finite abelian groups. `#Z` factors over the primary parts, so
/// `ord_ℓ #Z` is the `ℓ`-valuation of the count on `A[ℓ^∞]`.
pub fn multi_prime_bounds(
    domain: &AbelianShape,
    codomains: &[(AbelianShape, u64)],
) -> Result<BTreeMap<u64, PrimeBound>> {
    let parts = domain.primary_decomposition()?;
    let mut out = BTreeMap::new();
    for (prime, shape) in parts {
        let mut targets = Vec::new();
        for (b, d) in codomains {
            if *d == 0 {
                return Err(invalid!("degree caps must be positive"));
            }
            for &m in b.factors() {
                if let Some(beta) = arith::ord(prime, m).filter(|&e| e > 0) {
                    targets.push(Target { beta, d: *d });
                }
            }
        }
        let entry = if targets.is_empty() {
            let total = shape.exponents.total();
            PrimeBound {
                prime,
                alpha_partition: shape.exponents.clone(),
                report: None,
                bound: total,
                empty_system: true,
                note: Some(format!(
                    "no codomain has a {prime}-part: every component map is zero, the zero set is all of A[{prime}^∞] and ord_{prime} #Z = {total}"
                )),
            }
        } else {
            let report = main_bound(prime, &shape.exponents, &TargetSpec::new(prime, targets)?)?;
            PrimeBound {
                prime,
                alpha_partition: shape.exponents.clone(),
                bound: report.bound,
                report: Some(report),
                empty_system: false,
                note: None,
            }
        };
        out.insert(prime, entry);
    }
    Ok(out)
}

/// Bounds for a system of polynomials of degrees `d_j` in `n` variables over
/// `Z/m`, one report per prime of `m`. The polynomial functions have
/// functional degree at most their degree, and `Z/m` splits into the cyclic
/// parts `Z/ℓ^{ord_ℓ m}`.
pub fn rng_system_bound(m: u64, n: usize, degrees: &[u64]) -> Result<BTreeMap<u64, BoundReport>> {
    if m < 2 {
        return Err(invalid!("modulus must be at least 2, got {m}"));
    }
    if n == 0 {
        return Err(invalid!("need at least one variable"));
    }
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(invalid!("need at least one polynomial, each of degree ≥ 1"));
    }
    arith::factorize(m)
        .into_iter()
        .map(|(prime, e)| {
            let alpha = Partition::constant(n, e)?;
            let targets = TargetSpec::new(
                prime,
                degrees.iter().map(|&d| Target { beta: e, d }).collect(),
            )?;
            Ok((prime, main_bound(prime, &alpha, &targets)?))
        })
        .collect()
}
