//! Finite abelian groups given as direct sums of cyclic groups.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::partitions::Partition;

/// Default cap on the number of elements an enumeration may produce.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

/// `⊕_i Z/m_i Z` for a list of moduli `m_i ≥ 2`. The empty list is the
/// trivial group. Factor order is kept as given; it fixes the element order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianShape {
    factors: Vec<u64>,
}

impl TryFrom<Vec<u64>> for AbelianShape {
    type Error = Error;

    fn try_from(factors: Vec<u64>) -> Result<Self> {
        AbelianShape::new(factors)
    }
}

impl From<AbelianShape> for Vec<u64> {
    fn from(s: AbelianShape) -> Self {
        s.factors
    }
}

impl fmt::Display for AbelianShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// An element, as reduced coordinates `0 ≤ x_i < m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl AbelianShape {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(m) = factors.iter().find(|&&m| m < 2) {
            return Err(invalid!("cyclic factors need modulus at least 2, got {m}"));
        }
        Ok(AbelianShape { factors })
    }

    pub fn trivial() -> Self {
        AbelianShape { factors: Vec::new() }
    }

    /// `Z/m`.
    pub fn cyclic(m: u64) -> Result<Self> {
        AbelianShape::new(vec![m])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `|G|`, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
    }

    pub fn order_big(&self) -> BigUint {
        self.factors.iter().map(|&m| BigUint::from(m)).product()
    }

    /// `|G|`, failing when it exceeds `limit`.
    pub fn order_within(&self, limit: u64) -> Result<u64> {
        match self.order() {
            Some(n) if n <= limit => Ok(n),
            _ => Err(Error::Resource(format!(
                "{self} has more than {limit} elements"
            ))),
        }
    }

    /// Primes dividing `|G|`, increasing.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|&m| arith::factorize(m).into_iter().map(|(p, _)| p))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// `Some(p)` when the group is a nontrivial `p`-group.
    pub fn p_group_prime(&self) -> Option<u64> {
        match self.primes().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    /// Largest exponent `β` with `p^β` dividing some factor, i.e. the group
    /// exponent of a `p`-group is `p^β`.
    pub fn exponent_exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .map(|&m| arith::ord(p, m).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.rank() && x.0.iter().zip(&self.factors).all(|(&c, &m)| c < m)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((&a, &b), &m)| ((a as u128 + b as u128) % m as u128) as u64)
            .collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((&a, &b), &m)| ((a as u128 + m as u128 - b as u128) % m as u128) as u64)
            .collect()
    }

    /// Row-major strides: the last coordinate varies fastest.
    pub fn strides(&self) -> Vec<u64> {
        let mut strides = vec![1u64; self.rank()];
        for i in (0..self.rank().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1].saturating_mul(self.factors[i + 1]);
        }
        strides
    }

    pub fn index_of(&self, x: &[u64]) -> usize {
        let mut idx = 0u64;
        for (&c, &m) in x.iter().zip(&self.factors) {
            idx = idx * m + c;
        }
        idx as usize
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let m = self.factors[i] as usize;
            coords[i] = (idx % m) as u64;
            idx /= m;
        }
        GroupElement(coords)
    }

    /// All elements in row-major order, last coordinate fastest.
    pub fn enumerate_elements(&self, limit: u64) -> Result<Vec<GroupElement>> {
        let n = self.order_within(limit)?;
        Ok((0..n as usize).map(|i| self.element_at(i)).collect())
    }

    /// For each coordinate `i`, the table `idx ↦ index_of(x + e_i)`.
    pub fn generator_shifts(&self) -> Vec<Vec<usize>> {
        let n = self.order().expect("enumerable group") as usize;
        let strides = self.strides();
        (0..self.rank())
            .map(|i| {
                let (m, s) = (self.factors[i] as usize, strides[i] as usize);
                (0..n)
                    .map(|idx| {
                        if (idx / s) % m + 1 < m {
                            idx + s
                        } else {
                            idx + s - m * s
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The `ℓ`-primary parts `G[ℓ^∞]`, keyed by prime.
    pub fn primary_decomposition(&self) -> Result<BTreeMap<u64, PGroupShape>> {
        if self.is_trivial() {
            return Err(invalid!("primary decomposition of the trivial group"));
        }
        Ok(self
            .primary_components()
            .into_iter()
            .map(|c| (c.prime, c.shape))
            .collect())
    }

    /// Primary components together with the coordinate bookkeeping needed to
    /// move elements between `G` and `G[ℓ^∞]`.
    pub fn primary_components(&self) -> Vec<PrimaryComponent> {
        self.primes()
            .into_iter()
            .map(|p| {
                let mut slots: Vec<ComponentSlot> = self
                    .factors
                    .iter()
                    .enumerate()
                    .filter_map(|(factor, &m)| {
                        let e = arith::ord(p, m).unwrap_or(0);
                        (e > 0).then(|| {
                            let q = p.pow(e);
                            ComponentSlot {
                                factor,
                                exponent: e,
                                modulus: q,
                                idempotent: arith::idempotent(m, q),
                            }
                        })
                    })
                    .collect();
                slots.sort_by_key(|s| std::cmp::Reverse(s.exponent));
                let exps = slots.iter().map(|s| s.exponent).collect();
                PrimaryComponent {
                    prime: p,
                    shape: PGroupShape {
                        p,
                        exponents: Partition::new(exps).expect("nonempty positive exponents"),
                    },
                    slots,
                }
            })
            .collect()
    }
}

/// One cyclic summand `Z/ℓ^e` of a primary component, sitting inside
/// factor `factor` of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSlot {
    pub factor: usize,
    pub exponent: u32,
    pub modulus: u64,
    /// `e ≡ 1 (mod ℓ^exponent)`, `e ≡ 0` modulo the cofactor.
    pub idempotent: u64,
}

/// `G[ℓ^∞]` with its embedding into `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub prime: u64,
    pub shape: PGroupShape,
    /// Summands in the order of `shape`'s (descending) exponents.
    pub slots: Vec<ComponentSlot>,
}

impl PrimaryComponent {
    /// The component as an [`AbelianShape`] in slot order.
    pub fn abelian(&self) -> AbelianShape {
        AbelianShape {
            factors: self.slots.iter().map(|s| s.modulus).collect(),
        }
    }

    /// Coordinates of the `ℓ`-part of `x ∈ G`.
    pub fn project(&self, x: &[u64]) -> Vec<u64> {
        self.slots.iter().map(|s| x[s.factor] % s.modulus).collect()
    }

    /// The element of `G` whose `ℓ`-part is `y` and whose other parts vanish.
    pub fn embed(&self, ambient: &AbelianShape, y: &[u64]) -> Vec<u64> {
        let mut x = vec![0u64; ambient.rank()];
        for (s, &c) in self.slots.iter().zip(y) {
            let m = ambient.factors[s.factor];
            x[s.factor] = ((c as u128 * s.idempotent as u128) % m as u128) as u64;
        }
        x
    }
}

/// `⊕_i Z/p^{α_i} Z` described by the prime and the exponent partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PGroupShape {
    pub p: u64,
    pub exponents: Partition,
}

impl PGroupShape {
    pub fn new(p: u64, exponents: Partition) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(invalid!("{p} is not prime"));
        }
        Ok(PGroupShape { p, exponents })
    }

    /// `p^{α_1 + ... + α_N}`.
    pub fn order(&self) -> BigUint {
        arith::pow_big(self.p, self.exponents.total() as u32)
    }

    pub fn abelian(&self) -> Result<AbelianShape> {
        let factors = self
            .exponents
            .parts()
            .iter()
            .map(|&a| {
                arith::checked_pow(self.p, a)
                    .ok_or_else(|| Error::Resource(format!("{}^{a} overflows", self.p)))
            })
            .collect::<Result<Vec<_>>>()?;
        AbelianShape::new(factors)
    }

    /// The largest finite functional degree of a map from this group into a
    /// `p`-group of exponent `p^β`:
    /// `Σ_i (p^{α_i} - 1) + (β - 1)(p - 1) p^{α_1 - 1}`.
    pub fn delta_max(&self, beta: u32) -> BigUint {
        delta_p(self.p, &self.exponents, beta)
    }
}

/// `δ_p(ᾱ, β)`; see [`PGroupShape::delta_max`].
pub fn delta_p(p: u64, alpha: &Partition, beta: u32) -> BigUint {
    assert!(beta >= 1, "β must be positive");
    alpha.box_degree(p)
        + BigUint::from(beta - 1) * (p - 1) * arith::pow_big(p, alpha.largest() - 1)
}
