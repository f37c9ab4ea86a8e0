use num_bigint::BigUint;

use crate::arith;
use crate::bounds::TargetSpec;
use crate::calculus::for_each_point;
use crate::error::{invalid, Error, Result};
use crate::partitions::Partition;

/// Largest total `α` accepted by [`brute_vp_profile`].
pub const BRUTE_VP_MAX_ALPHA: u64 = 32;

/// Cap on the Pascal-table work `Σ_i p^{2α_i}` in [`brute_vp_profile`].
pub const BRUTE_VP_WORK_LIMIT: u64 = 2_000_000_000;

/// Cap on `∏_j (n̂_j(β) + 1)` in [`brute_min_n`].
pub const BRUTE_MIN_N_LIMIT: u64 = 10_000_000;

fn ord_residue(p: u64, r: u64, cap: u64) -> u64 {
    if r == 0 {
        return cap;
    }
    arith::ord(p, r).map_or(cap, |e| (e as u64).min(cap))
}

/// `min ord_p Σ_{x < p^a} C(x, n)` for `n < p^a`, truncated at `cap`, from
/// column sums of Pascal's triangle modulo `p^cap`.
fn column_valuations(p: u64, a: u32, cap: u64, modulus: u64) -> Vec<u64> {
    let size = p.pow(a) as usize;
    let mut row = vec![0u64; size];
    let mut sums = vec![0u64; size];
    row[0] = 1;
    for x in 0..size {
        for n in 0..=x {
            sums[n] += row[n];
            if sums[n] >= modulus {
                sums[n] -= modulus;
            }
        }
        for n in (1..=(x + 1).min(size - 1)).rev() {
            row[n] += row[n - 1];
            if row[n] >= modulus {
                row[n] -= modulus;
            }
        }
    }
    sums.into_iter().map(|s| ord_residue(p, s, cap)).collect()
}

/// `[𝒱_p(ᾱ, D) for D in 0..=max_d]` by direct minimisation of
/// `Σ_i ord_p Σ_{x < p^{α_i}} C(x, n_i)` over `n̄ ∈ [p^ᾱ)` with `|n̄| ≤ D`.
///
/// Sums are taken modulo `p^{α+1}`. Any coordinate whose valuation reaches
/// `α + 1` already exceeds the value at `n̄ = 0̄`, so the minimum is exact.
pub fn brute_vp_profile(p: u64, alpha: &Partition, max_d: u64) -> Result<Vec<u64>> {
    if !arith::is_prime(p) {
        return Err(invalid!("{p} is not prime"));
    }
    let total = alpha.total();
    if total > BRUTE_VP_MAX_ALPHA {
        return Err(Error::Resource(format!(
            "α = {total} exceeds the brute-force limit {BRUTE_VP_MAX_ALPHA}"
        )));
    }
    let cap = total + 1;
    let modulus = arith::checked_pow(p, cap as u32)
        .ok_or_else(|| Error::Resource(format!("{p}^{cap} overflows")))?;
    let mut work: u64 = 0;
    for &a in alpha.parts() {
        let size = arith::checked_pow(p, a).unwrap_or(u64::MAX);
        work = work.saturating_add(size.saturating_mul(size));
    }
    if work > BRUTE_VP_WORK_LIMIT {
        return Err(Error::Resource(format!(
            "Pascal work {work} exceeds {BRUTE_VP_WORK_LIMIT}"
        )));
    }
    let mut best = vec![0u64];
    let mut cache: Vec<(u32, Vec<u64>)> = Vec::new();
    for &a in alpha.parts() {
        if !cache.iter().any(|(e, _)| *e == a) {
            cache.push((a, column_valuations(p, a, cap, modulus)));
        }
        let col = &cache.iter().find(|(e, _)| *e == a).expect("cached").1;
        let mut next = vec![u64::MAX; best.len() + col.len() - 1];
        for (i, &b) in best.iter().enumerate() {
            for (j, &c) in col.iter().enumerate() {
                let v = b + c;
                if v < next[i + j] {
                    next[i + j] = v;
                }
            }
        }
        best = next;
    }
    let mut out = Vec::with_capacity(max_d as usize + 1);
    let mut running = u64::MAX;
    for d in 0..=max_d {
        if let Some(&b) = best.get(d as usize) {
            running = running.min(b);
        }
        out.push(running.min(cap));
    }
    Ok(out)
}

/// `𝒱_p(ᾱ, D)` by exhaustive minimisation.
pub fn brute_vp(p: u64, alpha: &Partition, d: u64) -> Result<u64> {
    let box_degree = arith::to_u64(&alpha.box_degree(p), "box degree")?;
    let profile = brute_vp_profile(p, alpha, d.min(box_degree))?;
    Ok(*profile.last().expect("nonempty profile"))
}

/// Exhaustive minimum of
/// `𝒩(n̄) = Σ_j max(⌈(n_j - (p^{β_j} - 1)) / (p^{β_j - 1}(p - 1))⌉, 0) + 𝒱_p(ᾱ, Σ_j d_j n_j)`
/// over `n̄ ∈ [n̂(β)]`, with the first minimiser in row-major order.
pub fn brute_min_n(
    p: u64,
    alpha: &Partition,
    targets: &TargetSpec,
    beta: u64,
) -> Result<(u64, Vec<u64>)> {
    if beta == 0 {
        return Err(invalid!("β must be positive"));
    }
    if targets.prime() != p {
        return Err(invalid!("targets are for the prime {}, not {p}", targets.prime()));
    }
    let overflow = || Error::Resource("n̂(β) overflows".into());
    let mut bounds = Vec::new();
    let mut steps = Vec::new();
    let mut heads = Vec::new();
    let mut volume: u64 = 1;
    for t in targets.targets() {
        let head = arith::checked_pow(p, t.beta).ok_or_else(overflow)? - 1;
        let step = arith::checked_pow(p, t.beta - 1).ok_or_else(overflow)? * (p - 1);
        let n_hat = (beta - 1)
            .checked_mul(step)
            .and_then(|x| x.checked_add(head))
            .ok_or_else(overflow)?;
        volume = volume
            .checked_mul(n_hat + 1)
            .filter(|&v| v <= BRUTE_MIN_N_LIMIT)
            .ok_or_else(|| {
                Error::Resource(format!("[n̂(β)] has more than {BRUTE_MIN_N_LIMIT} points"))
            })?;
        bounds.push(n_hat + 1);
        steps.push(step);
        heads.push(head);
    }
    let box_degree = arith::to_u64(&alpha.box_degree(p), "box degree")?;
    let profile = brute_vp_profile(p, alpha, box_degree)?;
    let mut best: Option<(u64, Vec<u64>)> = None;
    for_each_point(&bounds, |n| {
        let mut value = 0u64;
        let mut weight = 0u64;
        for (j, &nj) in n.iter().enumerate() {
            if nj > heads[j] {
                value += (nj - heads[j]).div_ceil(steps[j]);
            }
            weight = weight.saturating_add(targets.targets()[j].d.saturating_mul(nj));
        }
        value += profile[weight.min(box_degree) as usize];
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, n.to_vec()));
        }
    });
    best.ok_or_else(|| invalid!("no targets"))
}

/// `min_{0 ≤ s ≤ upto} S(s)` with
/// `S(s) = s - max{t : Λ_1 + ... + Λ_t ≤ V_1 + ... + V_s + D}` and the first
/// minimiser. `V`'s last entry repeats.
pub fn smin_brute(lambda: &[BigUint], v: &[BigUint], d: &BigUint, upto: u64) -> (i64, u64) {
    let mut prefix = vec![BigUint::ZERO];
    for l in lambda {
        let next = prefix.last().expect("nonempty") + l;
        prefix.push(next);
    }
    let mut budget = d.clone();
    let mut best = (i64::MAX, 0);
    for s in 0..=upto {
        if s > 0 {
            budget += &v[(s as usize - 1).min(v.len() - 1)];
        }
        let t = (0..prefix.len()).rev().find(|&t| prefix[t] <= budget).unwrap_or(0);
        let value = s as i64 - t as i64;
        if value < best.0 {
            best = (value, s);
        }
    }
    best
}
