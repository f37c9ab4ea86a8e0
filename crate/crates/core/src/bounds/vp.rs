use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::calculus::ExtendedDegree;
use crate::error::{invalid, Error, Result};
use crate::partitions::Partition;

/// A total-degree budget `D ∈ ℕ ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Budget {
    Finite(BigUint),
    Infinite,
}

impl Budget {
    pub fn finite(d: u64) -> Self {
        Budget::Finite(BigUint::from(d))
    }
}

impl From<u64> for Budget {
    fn from(d: u64) -> Self {
        Budget::finite(d)
    }
}

impl From<BigUint> for Budget {
    fn from(d: BigUint) -> Self {
        Budget::Finite(d)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Finite(d) => write!(f, "{d}"),
            Budget::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Budget::Infinite),
            t => t
                .parse::<BigUint>()
                .map(Budget::Finite)
                .map_err(|_| invalid!("{t:?} is neither a natural number nor \"inf\"")),
        }
    }
}

impl Serialize for Budget {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Budget::Finite(d) => crate::bigjson::uint::serialize(d, s),
            Budget::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Budget {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(n) => Ok(Budget::finite(n)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(invalid!("{p} is not prime"))
    }
}

/// `ν_p(α, n) = α - ord_p(n + 1)` for `n ≤ p^α - 1`, and `∞` beyond.
pub fn nu_p_scalar(p: u64, alpha: u32, n: &BigUint) -> ExtendedDegree {
    if n >= &arith::pow_big(p, alpha) {
        return ExtendedDegree::Infinity;
    }
    let k = arith::ord_big(p, &BigInt::from(n + 1u32)).expect("n + 1 > 0");
    ExtendedDegree::Finite((alpha - k) as u64)
}

/// `ν_p(ᾱ, n̄) = Σ_i ν_p(α_i, n_i)`, with `∞` absorbing.
pub fn nu_p(p: u64, alpha: &Partition, n: &[BigUint]) -> Result<ExtendedDegree> {
    check_prime(p)?;
    if n.len() != alpha.len() {
        return Err(invalid!(
            "multi-index has {} entries, partition {alpha} has {}",
            n.len(),
            alpha.len()
        ));
    }
    let mut total = 0u64;
    for (&a, ni) in alpha.parts().iter().zip(n) {
        match nu_p_scalar(p, a, ni) {
            ExtendedDegree::Finite(v) => total += v,
            _ => return Ok(ExtendedDegree::Infinity),
        }
    }
    Ok(ExtendedDegree::Finite(total))
}

/// The minimum `V_p(ᾱ, D)` of `ν_p(ᾱ, ·)` over `|n̄| ≤ D`, with the minimum
/// point built by filling the Ferrers diagram column by column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VpWitness {
    pub p: u64,
    pub alpha: Partition,
    pub budget: Budget,
    pub value: u64,
    /// Number of selected dots.
    pub t: u64,
    /// Selected dots per row.
    pub mu: Vec<u32>,
    /// `n_i = p^{μ_i} - 1`.
    #[serde(with = "crate::bigjson::uint_vec")]
    pub n: Vec<BigUint>,
    /// Completely selected columns.
    pub q: u32,
    /// Selected dots in the next column.
    pub r: u64,
    /// The value recomputed as `Σ(α_i - μ_i)`, via the `α'_Q` and `α'_{Q+1}`
    /// row sums, and as a column sum.
    pub alternative_forms: [i64; 4],
}

/// `V_p(ᾱ, D) = α - max{0 ≤ t ≤ α : (p - 1)(D_1 + ... + D_t) ≤ D}`.
pub fn vp(p: u64, alpha: &Partition, budget: &Budget) -> Result<VpWitness> {
    check_prime(p)?;
    let conj = alpha.conjugate();
    let cols = conj.parts();
    let affordable = |cost: &BigUint| match budget {
        Budget::Infinite => true,
        Budget::Finite(d) => cost * (p - 1) <= *d,
    };

    // Whole columns first, then single dots of the next column.
    let mut q = 0u32;
    let mut spent = BigUint::zero();
    while (q as usize) < cols.len() {
        let column = arith::pow_big(p, q) * cols[q as usize];
        if !affordable(&(&spent + &column)) {
            break;
        }
        spent += column;
        q += 1;
    }
    let mut r = 0u64;
    if (q as usize) < cols.len() {
        let dot = arith::pow_big(p, q);
        while r < cols[q as usize] as u64 && affordable(&(&spent + &dot)) {
            spent += &dot;
            r += 1;
        }
    }

    let ws = alpha.weight_sequence(p);
    let t = match budget {
        Budget::Infinite => ws.len(),
        Budget::Finite(d) => ws
            .prefix_sums()
            .iter()
            .rposition(|s| s * (p - 1) <= *d)
            .expect("the empty prefix is affordable"),
    } as u64;
    let full: u64 = cols[..q as usize].iter().map(|&c| c as u64).sum();
    if full + r != t {
        return Err(Error::Internal(format!(
            "column filling selected {} dots, prefix search {t}",
            full + r
        )));
    }

    let next_col = alpha.conjugate_at(q + 1);
    let mu: Vec<u32> = alpha
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let row = i as u64 + 1;
            if row <= r {
                q + 1
            } else if row <= next_col {
                q
            } else {
                a
            }
        })
        .collect();
    let n: Vec<BigUint> = mu.iter().map(|&m| arith::pow_big(p, m) - 1u32).collect();
    let value = alpha.total() - t;

    let parts: Vec<i64> = alpha.parts().iter().map(|&a| a as i64).collect();
    let (qi, ri) = (q as i64, r as i64);
    let row_sum = |rows: u64| parts[..rows as usize].iter().sum::<i64>();
    let at_q = alpha.conjugate_at(q);
    let forms = [
        parts.iter().zip(&mu).map(|(&a, &m)| a - m as i64).sum(),
        row_sum(at_q) - at_q as i64 * qi - ri,
        row_sum(next_col) - next_col as i64 * qi - ri,
        (q + 1..=alpha.largest())
            .map(|j| alpha.conjugate_at(j) as i64)
            .sum::<i64>()
            - ri,
    ];
    if forms.iter().any(|&f| f != value as i64) {
        return Err(Error::Internal(format!(
            "alternative forms {forms:?} disagree with V_p = {value}"
        )));
    }
    let nu = nu_p(p, alpha, &n)?;
    let spent_degree: BigUint = n.iter().sum();
    let within = match budget {
        Budget::Infinite => true,
        Budget::Finite(d) => spent_degree <= *d,
    };
    if nu != ExtendedDegree::Finite(value) || !within {
        return Err(Error::Internal(format!(
            "witness {n:?} has ν_p = {nu} and degree {spent_degree}, expected {value} within {budget}"
        )));
    }
    Ok(VpWitness {
        p,
        alpha: alpha.clone(),
        budget: budget.clone(),
        value,
        t,
        mu,
        n,
        q,
        r,
        alternative_forms: forms,
    })
}

/// `V_p` for `N` equal parts `α_1`: `max(N(α_1 - Q) - R, 0)` with
/// `Q = ⌊log_p(D/N + 1)⌋` and `R = ⌊(D - N(p^Q - 1)) / ((p - 1)p^Q)⌋`.
/// Checked against [`vp`] on the constant partition.
pub fn vp_equal_alpha(p: u64, n: u64, alpha1: u32, budget: &Budget) -> Result<u64> {
    check_prime(p)?;
    if n == 0 || alpha1 == 0 {
        return Err(invalid!("need N ≥ 1 and α_1 ≥ 1, got N = {n}, α_1 = {alpha1}"));
    }
    let value = match budget {
        Budget::Infinite => 0,
        Budget::Finite(d) => {
            let nb = BigUint::from(n);
            // Q = max{Q : N p^Q ≤ D + N}
            let q = arith::floor_log(p, &((d + &nb) / &nb));
            let pq = arith::pow_big(p, q);
            let r = (BigInt::from(d.clone()) - BigInt::from(&nb * (&pq - 1u32)))
                / BigInt::from(&pq * (p - 1));
            let raw = BigInt::from(n) * (alpha1 as i64 - q as i64) - r;
            raw.max(BigInt::zero()).to_u64().expect("bounded by N α_1")
        }
    };
    let alpha = Partition::constant(n as usize, alpha1)?;
    let general = vp(p, &alpha, budget)?.value;
    if general != value {
        return Err(Error::Internal(format!(
            "equal-parts formula gives {value}, general formula {general}"
        )));
    }
    Ok(value)
}

/// The largest `t ∈ [0, α]` with `D_1 + ... + D_t ≤ budget` for the weight
/// sequence of `alpha`.
pub(crate) fn max_prefix(p: u64, alpha: &Partition, budget: &BigUint) -> u64 {
    alpha.weight_sequence(p).max_affordable(budget) as u64
}
