use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::map::{difference_table, FiniteMap};
use crate::arith;
use crate::error::{Error, Result};
use crate::groups::{delta_p, AbelianShape};
use crate::partitions::Partition;

/// `ℕ ∪ {-∞, ∞}` ordered as `-∞ < 0 < 1 < ... < ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedDegree {
    MinusInfinity,
    Finite(u64),
    Infinity,
}

impl ExtendedDegree {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedDegree::Finite(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedDegree::Finite(_))
    }

    /// Compares against a plain natural number.
    pub fn cmp_nat(self, n: u64) -> Ordering {
        self.cmp(&ExtendedDegree::Finite(n))
    }

    /// Converts an `ord`-style optional valuation, where `None` means `∞`.
    pub fn from_valuation(v: Option<u32>) -> Self {
        v.map_or(ExtendedDegree::Infinity, |k| ExtendedDegree::Finite(k as u64))
    }
}

impl fmt::Display for ExtendedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedDegree::MinusInfinity => write!(f, "-inf"),
            ExtendedDegree::Finite(d) => write!(f, "{d}"),
            ExtendedDegree::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DegreeRepr {
    Number(u64),
    Text(String),
}

impl Serialize for ExtendedDegree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedDegree::Finite(d) => DegreeRepr::Number(*d),
            other => DegreeRepr::Text(other.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtendedDegree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match DegreeRepr::deserialize(d)? {
            DegreeRepr::Number(n) => Ok(ExtendedDegree::Finite(n)),
            DegreeRepr::Text(t) => match t.as_str() {
                "-inf" => Ok(ExtendedDegree::MinusInfinity),
                "inf" => Ok(ExtendedDegree::Infinity),
                _ => Err(serde::de::Error::custom(format!("bad degree {t:?}"))),
            },
        }
    }
}

/// Visits every `n̄` with `Δ^{n̄} f ≢ 0`, level by level in `|n̄|`, handing
/// the visitor the multi-index and the flat difference table. Returns the
/// largest nonzero level, or `None` for the zero map.
///
/// Fails if a nonzero difference survives beyond `cap`.
pub(crate) fn walk_differences(
    f: &FiniteMap,
    cap: u64,
    mut visit: impl FnMut(&[u64], &[u64]),
) -> Result<Option<u64>> {
    if f.is_zero() {
        return Ok(None);
    }
    let rank = f.domain().rank();
    let shifts = f.domain().generator_shifts();
    let moduli = f.codomain().factors();
    let mut level: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    level.insert(vec![0; rank], f.flat().to_vec());
    let mut depth = 0u64;
    loop {
        for (n, table) in &level {
            visit(n, table);
        }
        let mut seen = BTreeSet::new();
        let mut next = BTreeMap::new();
        for (n, table) in &level {
            for i in 0..rank {
                let mut m = n.clone();
                m[i] += 1;
                if !seen.insert(m.clone()) {
                    continue;
                }
                let t = difference_table(table, &shifts[i], moduli);
                if t.iter().any(|&v| v != 0) {
                    next.insert(m, t);
                }
            }
        }
        if next.is_empty() {
            return Ok(Some(depth));
        }
        depth += 1;
        if depth > cap {
            return Err(Error::Internal(format!(
                "nonzero difference of order {depth} exceeds the degree cap {cap}"
            )));
        }
        level = next;
    }
}

/// Exponent partition and `β` for a map between `p`-groups, or `None` if the
/// pair is not of that form.
pub(crate) fn p_group_pair(f: &FiniteMap) -> Option<(u64, Partition, u32)> {
    let p = f.domain().p_group_prime()?;
    if f.codomain().p_group_prime()? != p {
        return None;
    }
    let alpha = exponent_partition(f.domain(), p);
    Some((p, alpha, f.codomain().exponent_exponent(p)))
}

fn exponent_partition(shape: &AbelianShape, p: u64) -> Partition {
    let exps = shape
        .factors()
        .iter()
        .map(|&m| arith::ord(p, m).expect("nonzero modulus"))
        .collect();
    Partition::new(exps).expect("p-group factors have positive exponents")
}

fn p_group_degree(f: &FiniteMap, p: u64, alpha: &Partition, beta: u32) -> Result<ExtendedDegree> {
    let cap = arith::to_u64(&delta_p(p, alpha, beta), "degree cap")?;
    Ok(match walk_differences(f, cap, |_, _| {})? {
        None => ExtendedDegree::MinusInfinity,
        Some(d) => ExtendedDegree::Finite(d),
    })
}

/// `fdeg(f)`: the largest `|n̄|` with `Δ^{n̄} f ≢ 0`, `-∞` for the zero map and
/// `∞` when no such maximum exists.
///
/// Maps between `p`-groups are searched directly. Otherwise the codomain is
/// split into primary parts; the `ℓ`-part of `f` has finite degree exactly
/// when it depends only on the `ℓ`-part of its argument, and the degree is
/// the maximum over the primes of the codomain.
pub fn functional_degree(f: &FiniteMap) -> Result<ExtendedDegree> {
    if f.is_zero() {
        return Ok(ExtendedDegree::MinusInfinity);
    }
    if f.is_constant() {
        return Ok(ExtendedDegree::Finite(0));
    }
    if let Some((p, alpha, beta)) = p_group_pair(f) {
        return p_group_degree(f, p, &alpha, beta);
    }
    let domain = f.domain();
    let domain_parts = domain.primary_components();
    let mut best = ExtendedDegree::MinusInfinity;
    for target in f.codomain().primary_components() {
        let part = |idx: usize| target.project(f.value(idx));
        let degree = match domain_parts.iter().find(|c| c.prime == target.prime) {
            None => {
                let first = part(0);
                if (1..f.len()).any(|idx| part(idx) != first) {
                    return Ok(ExtendedDegree::Infinity);
                }
                if first.iter().all(|&v| v == 0) {
                    ExtendedDegree::MinusInfinity
                } else {
                    ExtendedDegree::Finite(0)
                }
            }
            Some(source) => {
                for idx in 0..f.len() {
                    let x = domain.element_at(idx);
                    let through = source.embed(domain, &source.project(&x.0));
                    if part(idx) != part(domain.index_of(&through)) {
                        return Ok(ExtendedDegree::Infinity);
                    }
                }
                let g = FiniteMap::from_fn(source.abelian(), target.abelian(), |y| {
                    part(domain.index_of(&source.embed(domain, y)))
                })?;
                let beta = g.codomain().exponent_exponent(target.prime);
                p_group_degree(&g, target.prime, &source.shape.exponents, beta)?
            }
        };
        best = best.max(degree);
    }
    Ok(best)
}
