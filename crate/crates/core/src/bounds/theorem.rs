use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::smin::smin;
use super::vp::{check_prime, max_prefix, vp, Budget};
use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::partitions::Partition;

/// A cyclic target `Z/p^β` for a map of functional degree at most `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Target {
    pub beta: u32,
    pub d: u64,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.beta, self.d)
    }
}

/// Targets `(β_j, d_j)` sorted so that `d_1 p^{β_1} ≥ d_2 p^{β_2} ≥ ...`, ties
/// broken by larger `β_j` first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetSpec {
    p: u64,
    targets: Vec<Target>,
}

impl TargetSpec {
    pub fn new(p: u64, mut targets: Vec<Target>) -> Result<Self> {
        check_prime(p)?;
        if targets.is_empty() {
            return Err(invalid!("at least one target is required"));
        }
        if let Some(t) = targets.iter().find(|t| t.beta == 0 || t.d == 0) {
            return Err(invalid!("targets need β ≥ 1 and d ≥ 1, got {t}"));
        }
        let key = |t: &Target| BigUint::from(t.d) * arith::pow_big(p, t.beta);
        targets.sort_by(|a, b| key(b).cmp(&key(a)).then(b.beta.cmp(&a.beta)));
        Ok(TargetSpec { p, targets })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn first(&self) -> Target {
        self.targets[0]
    }

    /// `ℬ = Σ_j d_j (p^{β_j} - 1)/(p - 1)`.
    pub fn b_measure(&self) -> BigUint {
        self.targets
            .iter()
            .map(|t| arith::geometric(self.p, t.beta) * t.d)
            .sum()
    }

    /// `L = β_1 + ⌊log_p d_1⌋`.
    pub fn l_cap(&self) -> u32 {
        let t = self.first();
        t.beta + arith::floor_log(self.p, &BigUint::from(t.d))
    }

    /// `V_j = d_j p^{β_j - 1}` for target `j` (0-based).
    pub fn step(&self, j: usize) -> BigUint {
        let t = self.targets[j];
        arith::pow_big(self.p, t.beta - 1) * t.d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCase {
    /// `𝒜̆ > ℬ`.
    First,
    /// `𝒜̆ ≤ ℬ`.
    Second,
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundCase::First => "first",
            BoundCase::Second => "second",
        })
    }
}

/// Every intermediate quantity of the valuation bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u64,
    pub alpha_partition: Partition,
    pub targets: Vec<Target>,
    #[serde(rename = "A", with = "crate::bigjson::uint")]
    pub a_measure: BigUint,
    #[serde(rename = "B", with = "crate::bigjson::uint")]
    pub b_measure: BigUint,
    #[serde(rename = "L")]
    pub l_cap: u32,
    pub alpha_breve_partition: Partition,
    pub alpha: u64,
    pub alpha_breve: u64,
    #[serde(rename = "A_breve", with = "crate::bigjson::uint")]
    pub a_breve: BigUint,
    pub case: BoundCase,
    /// `⌈(𝒜̆ - ℬ)/(d_1 p^{β_1 - 1})⌉`, first case only.
    pub s0: Option<u64>,
    /// `max{1 ≤ t ≤ α : D_1 + ... + D_t ≤ ℬ}`, second case only.
    pub t_star: Option<u64>,
    pub raw_bound: i64,
    pub bound: u64,
}

fn ceil_ratio(num: &BigUint, den: &BigUint) -> Result<u64> {
    arith::ceil_div(&BigInt::from(num.clone()), &BigInt::from(den.clone()))
        .to_u64()
        .ok_or_else(|| Error::Resource("ceiling term does not fit in 64 bits".into()))
}

/// `max(⌈(𝒜̆ - ℬ)/(d_1 p^{β_1 - 1})⌉, 0)`.
fn s0_term(a_breve: &BigUint, b: &BigUint, targets: &TargetSpec) -> Result<u64> {
    if a_breve <= b {
        return Ok(0);
    }
    ceil_ratio(&(a_breve - b), &targets.step(0))
}

fn check_targets(p: u64, targets: &TargetSpec) -> Result<()> {
    check_prime(p)?;
    if targets.prime() != p {
        return Err(invalid!(
            "targets were sorted for p = {}, not {p}",
            targets.prime()
        ));
    }
    Ok(())
}

/// Lower bound on `ord_p #Z(f_1, ..., f_r)` for maps `f_j` from
/// `⊕_i Z/p^{α_i}` into `Z/p^{β_j}` with `0 < fdeg(f_j) ≤ d_j`:
///
/// * `⌈(𝒜̆ - ℬ)/(d_1 p^{β_1 - 1})⌉ + α - ᾰ` if `𝒜̆ > ℬ`,
/// * `α - max{1 ≤ t ≤ α : D_1 + ... + D_t ≤ ℬ}` otherwise.
///
/// The result is cross-checked against [`min_n`].
pub fn main_bound(p: u64, alpha: &Partition, targets: &TargetSpec) -> Result<BoundReport> {
    check_targets(p, targets)?;
    let a_measure = alpha.geometric_sum(p);
    let b = targets.b_measure();
    let l_cap = targets.l_cap();
    let breve = alpha.truncate(l_cap);
    let a_breve = breve.geometric_sum(p);
    let total = alpha.total();
    let breve_total = breve.total();
    let (case, s0, t_star, raw) = if a_breve > b {
        let s0 = s0_term(&a_breve, &b, targets)?;
        (BoundCase::First, Some(s0), None, s0 + total - breve_total)
    } else {
        let t = max_prefix(p, alpha, &b);
        if t == 0 {
            return Err(Error::Internal("ℬ ≥ 1 must afford D_1 = 1".into()));
        }
        (BoundCase::Second, None, Some(t), total - t)
    };
    let raw_bound = i64::try_from(raw).map_err(|_| Error::Resource("bound overflows".into()))?;
    let bound = raw_bound.max(0) as u64;

    if a_measure <= b && bound != 0 {
        return Err(Error::Internal(format!("𝒜 ≤ ℬ but the bound is {bound}")));
    }
    if a_measure > b && bound == 0 {
        return Err(Error::Internal("𝒜 > ℬ but the bound is 0".into()));
    }
    let via_n = min_n(p, alpha, targets, s0.unwrap_or(0) + 1)?;
    if via_n != bound {
        return Err(Error::Internal(format!(
            "closed form gives {bound}, minimisation of 𝒩 gives {via_n}"
        )));
    }
    Ok(BoundReport {
        p,
        alpha_partition: alpha.clone(),
        targets: targets.targets().to_vec(),
        a_measure,
        b_measure: b,
        l_cap,
        alpha_breve_partition: breve,
        alpha: total,
        alpha_breve: breve_total,
        a_breve,
        case,
        s0,
        t_star,
        raw_bound,
        bound,
    })
}

/// `n̂_j(β) = (p^{β_j} - 1) + (β - 1) p^{β_j - 1} (p - 1)`.
pub fn n_hat(targets: &TargetSpec, beta: u64) -> Vec<BigUint> {
    let p = targets.prime();
    targets
        .targets()
        .iter()
        .map(|t| {
            arith::pow_big(p, t.beta) - 1u32
                + arith::pow_big(p, t.beta - 1) * (p - 1) * beta.saturating_sub(1)
        })
        .collect()
}

/// `𝒩(n̄) = Σ_j max(⌈(n_j - (p^{β_j} - 1)) / (p^{β_j - 1}(p - 1))⌉, 0)
/// + V_p(ᾱ, Σ_j d_j n_j)`, with `n̄` indexed like the sorted targets.
pub fn eval_n(p: u64, alpha: &Partition, targets: &TargetSpec, n: &[BigUint]) -> Result<u64> {
    check_targets(p, targets)?;
    if n.len() != targets.targets().len() {
        return Err(invalid!(
            "expected {} entries, got {}",
            targets.targets().len(),
            n.len()
        ));
    }
    let mut total = 0u64;
    let mut degree = BigUint::zero();
    for (t, nj) in targets.targets().iter().zip(n) {
        let top = arith::pow_big(p, t.beta) - 1u32;
        if nj > &top {
            total += ceil_ratio(&(nj - &top), &(arith::pow_big(p, t.beta - 1) * (p - 1)))?;
        }
        degree += nj * t.d;
    }
    Ok(total + vp(p, alpha, &Budget::Finite(degree))?.value)
}

/// The minimum of [`eval_n`] over the box `[n̂(β)]`, for `β > s_0`, obtained by
/// reducing to [`smin`] with `Λ = (D_t)`, `V = (d_j p^{β_j - 1})` repeated
/// `β - 1` times each, and `D = ℬ`.
pub fn min_n(p: u64, alpha: &Partition, targets: &TargetSpec, beta: u64) -> Result<u64> {
    check_targets(p, targets)?;
    let b = targets.b_measure();
    let a_breve = alpha.truncate(targets.l_cap()).geometric_sum(p);
    let s0 = s0_term(&a_breve, &b, targets)?;
    if beta <= s0 {
        return Err(invalid!("β = {beta} must exceed s_0 = {s0}"));
    }
    let lambda = alpha.weight_sequence(p).weights();
    let mut v = Vec::new();
    for j in 0..targets.targets().len() {
        for _ in 1..beta {
            v.push(targets.step(j));
        }
    }
    if v.is_empty() {
        // β = 1: the box is a single point and only S(0) matters.
        v.push(targets.step(0));
    }
    let r = smin(&lambda, &v, &b)?;
    if r.s0 != s0 {
        return Err(Error::Internal(format!(
            "s_0 from the sequences is {}, from 𝒜̆ and ℬ it is {s0}",
            r.s0
        )));
    }
    let value = r.min + alpha.total() as i64;
    u64::try_from(value).map_err(|_| Error::Internal(format!("negative minimum {value}")))
}

/// The bound for `N` equal parts `α_1`, via `Q = ⌊log_p((p - 1)ℬ/N + 1)⌋` and
/// `R = ⌊(ℬ - N(p^Q - 1)/(p - 1)) / p^Q⌋`. Checked against [`main_bound`].
pub fn equal_alpha_bound(p: u64, n: u64, alpha1: u32, targets: &TargetSpec) -> Result<u64> {
    check_targets(p, targets)?;
    if n == 0 || alpha1 == 0 {
        return Err(invalid!("need N ≥ 1 and α_1 ≥ 1, got N = {n}, α_1 = {alpha1}"));
    }
    let nb = BigUint::from(n);
    let b = targets.b_measure();
    let breve1 = alpha1.min(targets.l_cap());
    let x = arith::geometric(p, breve1) * n;
    let value = if x > b {
        ceil_ratio(&(&x - &b), &targets.step(0))? + n * (alpha1 - breve1) as u64
    } else {
        // Q = max{Q : N p^Q ≤ (p - 1)ℬ + N}
        let q = arith::floor_log(p, &((&b * (p - 1) + &nb) / &nb));
        let r = (BigInt::from(b.clone()) - BigInt::from(arith::geometric(p, q) * n))
            / BigInt::from(arith::pow_big(p, q));
        let raw = BigInt::from(n) * (alpha1 as i64 - q as i64) - r;
        raw.max(BigInt::zero())
            .to_u64()
            .ok_or_else(|| Error::Resource("bound overflows".into()))?
    };
    let general = main_bound(p, &Partition::constant(n as usize, alpha1)?, targets)?.bound;
    if general != value {
        return Err(Error::Internal(format!(
            "equal-parts formula gives {value}, general formula {general}"
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn spec(p: u64, t: &[(u32, u64)]) -> TargetSpec {
        TargetSpec::new(p, t.iter().map(|&(beta, d)| Target { beta, d }).collect()).unwrap()
    }

    fn bu(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn target_ordering() {
        let s = spec(2, &[(1, 3), (2, 3)]);
        assert_eq!(s.targets()[0], Target { beta: 2, d: 3 });
        // 2·2^2 = 8 = 4·2^1: the larger β comes first
        let s = spec(2, &[(1, 4), (2, 2)]);
        assert_eq!(s.targets()[0], Target { beta: 2, d: 2 });
        assert_eq!(s.b_measure(), bu(2 * 3 + 4));
        assert!(TargetSpec::new(2, vec![]).is_err());
        assert!(TargetSpec::new(2, vec![Target { beta: 0, d: 1 }]).is_err());
        assert!(TargetSpec::new(6, vec![Target { beta: 1, d: 1 }]).is_err());
    }

    #[test]
    fn main_bound_examples() {
        let r = main_bound(2, &part(&[2, 1]), &spec(2, &[(1, 1)])).unwrap();
        assert_eq!(r.a_measure, bu(4));
        assert_eq!(r.b_measure, bu(1));
        assert_eq!(r.l_cap, 1);
        assert_eq!(r.a_breve, bu(2));
        assert_eq!(r.case, BoundCase::First);
        assert_eq!((r.s0, r.bound), (Some(1), 2));

        let r = main_bound(2, &part(&[1, 1, 1]), &spec(2, &[(1, 2)])).unwrap();
        assert_eq!(r.bound, 1);

        let r = main_bound(2, &part(&[1, 1]), &spec(2, &[(1, 3)])).unwrap();
        assert_eq!((r.case, r.bound), (BoundCase::Second, 0));
    }

    #[test]
    fn recovers_the_all_ones_formula() {
        for p in [2u64, 3, 5] {
            for n in 1..12u64 {
                for ds in [vec![1u64], vec![2], vec![1, 1], vec![3, 1], vec![2, 2, 1]] {
                    let targets = spec(p, &ds.iter().map(|&d| (1, d)).collect::<Vec<_>>());
                    let r = main_bound(p, &Partition::constant(n as usize, 1).unwrap(), &targets)
                        .unwrap();
                    let sum: u64 = ds.iter().sum();
                    let d1 = targets.first().d;
                    let expected = n.saturating_sub(sum).div_ceil(d1);
                    assert_eq!(r.bound, expected, "p={p} n={n} ds={ds:?}");
                }
            }
        }
    }

    #[test]
    fn n_function_examples() {
        let a = part(&[2, 1]);
        let t = spec(2, &[(1, 1)]);
        assert_eq!(eval_n(2, &a, &t, &[bu(0)]).unwrap(), 3);
        assert_eq!(eval_n(2, &a, &t, &[bu(1)]).unwrap(), 2);
        assert_eq!(eval_n(2, &a, &t, &[bu(3)]).unwrap(), 3);
        assert!(eval_n(2, &a, &t, &[bu(1), bu(1)]).is_err());
        assert_eq!(n_hat(&t, 3), vec![bu(3)]);
        assert_eq!(min_n(2, &a, &t, 3).unwrap(), 2);
        assert!(min_n(2, &a, &t, 1).is_err());

        assert_eq!(min_n(2, &part(&[1, 1]), &spec(2, &[(1, 2)]), 1).unwrap(), 0);
        assert_eq!(min_n(2, &part(&[3]), &spec(2, &[(1, 1)]), 3).unwrap(), 2);
    }

    #[test]
    fn equal_parts_examples() {
        assert_eq!(equal_alpha_bound(2, 2, 2, &spec(2, &[(1, 3)])).unwrap(), 1);
        assert_eq!(equal_alpha_bound(2, 3, 1, &spec(2, &[(1, 2)])).unwrap(), 1);
        assert_eq!(equal_alpha_bound(3, 10, 2, &spec(3, &[(2, 2), (1, 1)])).unwrap(), {
            main_bound(3, &Partition::constant(10, 2).unwrap(), &spec(3, &[(2, 2), (1, 1)]))
                .unwrap()
                .bound
        });
    }

    #[test]
    fn report_json_has_every_field() {
        let r = main_bound(2, &part(&[2, 1]), &spec(2, &[(1, 1)])).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "p", "alpha_partition", "targets", "A", "B", "L", "alpha_breve_partition", "alpha",
            "alpha_breve", "A_breve", "case", "s0", "t_star", "raw_bound", "bound",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["case"], "first");
        let back: BoundReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
