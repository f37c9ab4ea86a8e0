use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{invalid, Result};

/// Minimum of `S(s) = s - max{0 ≤ t ≤ α : Λ_1 + ... + Λ_t ≤ V_1 + ... + V_s + D}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SminResult {
    pub t0: u64,
    pub s0: u64,
    pub min: i64,
}

/// `V_s` for the sequence given by `v`, whose last entry repeats forever.
pub fn v_at(v: &[BigUint], s: u64) -> &BigUint {
    &v[(s as usize).min(v.len()) - 1]
}

/// `S(s)` evaluated directly from its definition.
pub fn smin_objective(lambda: &[BigUint], v: &[BigUint], d: &BigUint, s: u64) -> i64 {
    let mut budget = d.clone();
    for k in 1..=s {
        budget += v_at(v, k);
    }
    let mut spent = BigUint::zero();
    let mut t = 0i64;
    for l in lambda {
        spent += l;
        if spent > budget {
            break;
        }
        t += 1;
    }
    s as i64 - t
}

/// Closed-form minimiser of [`smin_objective`]: the point
/// `s_0 = max(⌈(Λ_1 + ... + Λ_{t_0} - D) / V_1⌉, 0)` with
/// `t_0 = max{t : Λ_t ≤ V_1}`.
///
/// Requires `Λ` positive and increasing, `V` positive and decreasing,
/// `Λ_1 ≤ V_1`, and `V_t = V_1` for `t ≤ s_0`.
pub fn smin(lambda: &[BigUint], v: &[BigUint], d: &BigUint) -> Result<SminResult> {
    if lambda.is_empty() || v.is_empty() {
        return Err(invalid!("Λ and V must be nonempty"));
    }
    if lambda.iter().chain(v).any(|x| x.is_zero()) {
        return Err(invalid!("Λ and V must be positive"));
    }
    if lambda.windows(2).any(|w| w[0] > w[1]) {
        return Err(invalid!("Λ must be increasing"));
    }
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(invalid!("V must be decreasing"));
    }
    let v1 = &v[0];
    if &lambda[0] > v1 {
        return Err(invalid!("need Λ_1 ≤ V_1, got {} > {v1}", lambda[0]));
    }
    let t0 = lambda.iter().take_while(|l| *l <= v1).count() as u64;
    let head: BigUint = lambda[..t0 as usize].iter().sum();
    let excess = BigInt::from(head) - BigInt::from(d.clone());
    let s0 = arith::ceil_div(&excess, &BigInt::from(v1.clone()))
        .max(BigInt::zero())
        .to_u64()
        .ok_or_else(|| invalid!("s_0 is too large"))?;
    if (1..=s0).any(|s| v_at(v, s) != v1) {
        return Err(invalid!("V must equal V_1 on [1, s_0] with s_0 = {s0}"));
    }
    let min = if s0 > 0 {
        s0 as i64 - t0 as i64
    } else {
        smin_objective(lambda, v, d, 0)
    };
    Ok(SminResult { t0, s0, min })
}
