//! Integer partitions and the Ferrers-diagram weight sequence.
//!
//! A partition `α_1 ≥ α_2 ≥ ... ≥ α_N ≥ 1` is drawn as a Ferrers diagram with
//! `α_i` dots in row `i`. Its conjugate counts the dots in each column,
//! `α'_j = #{i | α_i ≥ j}`. Giving every dot in column `j` the weight
//! `p^(j-1)` and listing the dots column by column yields the weakly
//! increasing [`WeightSequence`] `D_1, ..., D_α`; its prefix sums are the
//! cheapest total weights of `t` dots.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{invalid, Result};

/// A weakly decreasing sequence of positive integers with at least one part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = crate::Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Partition {
    /// Builds a partition, sorting the parts into weakly decreasing order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid!("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(invalid!("partition parts must be positive, got {parts:?}"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// `N` copies of `a`.
    pub fn constant(n: usize, a: u32) -> Result<Self> {
        Partition::new(vec![a; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts `N`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest part `α_1`.
    pub fn largest(&self) -> u32 {
        self.parts[0]
    }

    /// `α = α_1 + ... + α_N`.
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&a| a as u64).sum()
    }

    /// The conjugate partition `(α'_1, ..., α'_{α_1})`.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|j| self.parts.iter().take_while(|&&a| a >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `α'_j` with the conventions `α'_0 = N` and `α'_j = 0` for `j > α_1`.
    pub fn conjugate_at(&self, j: u32) -> u64 {
        self.parts.iter().filter(|&&a| a >= j).count() as u64
    }

    /// Componentwise `min(α_i, cap)`.
    pub fn truncate(&self, cap: u32) -> Partition {
        assert!(cap >= 1, "truncation cap must be positive");
        Partition {
            parts: self.parts.iter().map(|&a| a.min(cap)).collect(),
        }
    }

    /// Componentwise minimum of two partitions with the same number of parts.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.len() != other.len() {
            return Err(invalid!(
                "meet needs equal lengths, got {} and {}",
                self.len(),
                other.len()
            ));
        }
        Ok(Partition {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        })
    }

    /// `Σ_i (p^{α_i} - 1)/(p - 1)`.
    pub fn geometric_sum(&self, p: u64) -> BigUint {
        self.parts.iter().map(|&a| arith::geometric(p, a)).sum()
    }

    /// `Σ_i (p^{α_i} - 1)`, the largest total degree with a finite `ν_p`.
    pub fn box_degree(&self, p: u64) -> BigUint {
        self.parts
            .iter()
            .map(|&a| arith::pow_big(p, a) - 1u32)
            .sum()
    }

    pub fn weight_sequence(&self, p: u64) -> WeightSequence {
        let conj = self.conjugate();
        let mut exponents = Vec::with_capacity(self.total() as usize);
        for (col, &count) in conj.parts.iter().enumerate() {
            exponents.extend(std::iter::repeat_n(col as u32, count as usize));
        }
        WeightSequence { p, exponents }
    }

    /// Both sides of the conjugation identity
    /// `α'_m x^m + ... + α'_{α_1} x^{α_1} = Σ_{i ≤ α'_m} (x^m + ... + x^{α_i})`
    /// evaluated at `x`.
    pub fn conjugation_identity_sides(&self, m: u32, x: i64) -> Result<(BigInt, BigInt)> {
        if m < 1 || m > self.largest() {
            return Err(invalid!(
                "m = {m} must lie in [1, {}] for {self}",
                self.largest()
            ));
        }
        let x = BigInt::from(x);
        let pow = |k: u32| num_traits::pow(x.clone(), k as usize);
        let lhs = (m..=self.largest())
            .map(|j| pow(j) * BigInt::from(self.conjugate_at(j)))
            .sum();
        let rows = self.conjugate_at(m) as usize;
        let rhs = self.parts[..rows]
            .iter()
            .map(|&a| (m..=a).map(pow).sum::<BigInt>())
            .sum();
        Ok((lhs, rhs))
    }
}

/// The weights `D_1 ≤ D_2 ≤ ... ≤ D_α`, stored as exponents of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSequence {
    p: u64,
    exponents: Vec<u32>,
}

impl WeightSequence {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Column index (0-based) of the `t`-th cheapest dot, `t ≥ 1`.
    pub fn exponent(&self, t: usize) -> u32 {
        self.exponents[t - 1]
    }

    /// `D_t` for `1 ≤ t ≤ α`.
    pub fn weight(&self, t: usize) -> BigUint {
        arith::pow_big(self.p, self.exponent(t))
    }

    pub fn weights(&self) -> Vec<BigUint> {
        (1..=self.len()).map(|t| self.weight(t)).collect()
    }

    /// `[0, D_1, D_1 + D_2, ..., D_1 + ... + D_α]`.
    pub fn prefix_sums(&self) -> Vec<BigUint> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut acc = BigUint::zero();
        out.push(acc.clone());
        for t in 1..=self.len() {
            acc += self.weight(t);
            out.push(acc.clone());
        }
        out
    }

    /// Largest `t ∈ [0, α]` with `D_1 + ... + D_t ≤ budget`.
    pub fn max_affordable(&self, budget: &BigUint) -> usize {
        let prefix = self.prefix_sums();
        prefix.partition_point(|s| s <= budget) - 1
    }

    pub fn total(&self) -> BigUint {
        self.prefix_sums().pop().unwrap_or_default()
    }
}
