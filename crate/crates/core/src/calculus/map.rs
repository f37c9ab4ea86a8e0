use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::groups::{AbelianShape, GroupElement, DEFAULT_ENUMERATION_LIMIT};

/// A total function `A → B` between finite abelian groups, stored as a value
/// table in the element order of the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMap {
    domain: AbelianShape,
    codomain: AbelianShape,
    len: usize,
    /// Row-major: entry `idx` occupies `values[idx*w .. (idx+1)*w]`, `w = codomain.rank()`.
    values: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct FiniteMapRepr {
    domain: AbelianShape,
    codomain: AbelianShape,
    values: Vec<Vec<u64>>,
}

impl Serialize for FiniteMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FiniteMapRepr {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            values: (0..self.len).map(|i| self.value(i).to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FiniteMapRepr::deserialize(d)?;
        FiniteMap::new(
            repr.domain,
            repr.codomain,
            repr.values.into_iter().map(GroupElement).collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl FiniteMap {
    /// Builds a map from an explicit table of reduced codomain elements.
    pub fn new(
        domain: AbelianShape,
        codomain: AbelianShape,
        values: Vec<GroupElement>,
    ) -> Result<Self> {
        let n = domain.order_within(DEFAULT_ENUMERATION_LIMIT)? as usize;
        if values.len() != n {
            return Err(invalid!(
                "table for {domain} needs {n} entries, got {}",
                values.len()
            ));
        }
        let mut flat = Vec::with_capacity(n * codomain.rank());
        for (idx, v) in values.into_iter().enumerate() {
            if !codomain.contains(&v) {
                return Err(invalid!(
                    "entry {idx} = {:?} is not a reduced element of {codomain}",
                    v.0
                ));
            }
            flat.extend(v.0);
        }
        Ok(FiniteMap {
            domain,
            codomain,
            len: n,
            values: flat,
        })
    }

    /// Tabulates `f`, reducing each output coordinate modulo its factor.
    pub fn from_fn(
        domain: AbelianShape,
        codomain: AbelianShape,
        mut f: impl FnMut(&[u64]) -> Vec<u64>,
    ) -> Result<Self> {
        let n = domain.order_within(DEFAULT_ENUMERATION_LIMIT)? as usize;
        let w = codomain.rank();
        let mut values = Vec::with_capacity(n * w);
        for idx in 0..n {
            let out = f(&domain.element_at(idx).0);
            if out.len() != w {
                return Err(invalid!("expected {w} output coordinates, got {}", out.len()));
            }
            values.extend(out.iter().zip(codomain.factors()).map(|(&v, &m)| v % m));
        }
        Ok(FiniteMap {
            domain,
            codomain,
            len: n,
            values,
        })
    }

    /// Builds a map from an already-flattened table; entries must be reduced.
    pub(crate) fn from_flat(domain: AbelianShape, codomain: AbelianShape, values: Vec<u64>) -> Self {
        let len = domain.order().expect("enumerable domain") as usize;
        debug_assert_eq!(values.len(), len * codomain.rank());
        FiniteMap {
            domain,
            codomain,
            len,
            values,
        }
    }

    pub fn zero(domain: AbelianShape, codomain: AbelianShape) -> Result<Self> {
        let w = codomain.rank();
        FiniteMap::from_fn(domain, codomain, |_| vec![0; w])
    }

    pub fn constant(domain: AbelianShape, codomain: AbelianShape, c: &GroupElement) -> Result<Self> {
        if !codomain.contains(c) {
            return Err(invalid!("{:?} is not a reduced element of {codomain}", c.0));
        }
        FiniteMap::from_fn(domain, codomain, |_| c.0.clone())
    }

    pub fn domain(&self) -> &AbelianShape {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianShape {
        &self.codomain
    }

    /// `|A|`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub(crate) fn flat(&self) -> &[u64] {
        &self.values
    }

    /// Value at the element with enumeration index `idx`.
    pub fn value(&self, idx: usize) -> &[u64] {
        let w = self.codomain.rank();
        &self.values[idx * w..(idx + 1) * w]
    }

    pub fn value_at(&self, x: &[u64]) -> &[u64] {
        self.value(self.domain.index_of(x))
    }

    pub fn values(&self) -> Vec<GroupElement> {
        (0..self.len).map(|i| GroupElement(self.value(i).to_vec())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_constant(&self) -> bool {
        (1..self.len).all(|i| self.value(i) == self.value(0))
    }

    /// `x ↦ f(x + a) - f(x)`.
    pub fn difference(&self, a: &GroupElement) -> Result<FiniteMap> {
        if !self.domain.contains(a) {
            return Err(invalid!(
                "translation {:?} is not a reduced element of {}",
                a.0,
                self.domain
            ));
        }
        let w = self.codomain.rank();
        let mut values = Vec::with_capacity(self.values.len());
        for idx in 0..self.len {
            let x = self.domain.element_at(idx);
            let shifted = self.domain.index_of(&self.domain.add(&x.0, &a.0));
            values.extend(self.codomain.sub(self.value(shifted), self.value(idx)));
        }
        debug_assert_eq!(values.len(), self.len * w);
        Ok(FiniteMap::from_flat(
            self.domain.clone(),
            self.codomain.clone(),
            values,
        ))
    }

    /// `Δ^{n̄} f = Π_i Δ_{e_i}^{n_i} f` over the standard generators.
    pub fn iterated_difference(&self, n: &[u64]) -> Result<FiniteMap> {
        if n.len() != self.domain.rank() {
            return Err(invalid!(
                "multi-index has arity {} but the domain has {} factors",
                n.len(),
                self.domain.rank()
            ));
        }
        let shifts = self.domain.generator_shifts();
        let mut table = self.values.clone();
        for (i, &k) in n.iter().enumerate() {
            for _ in 0..k {
                table = difference_table(&table, &shifts[i], self.codomain.factors());
                if table.iter().all(|&v| v == 0) {
                    return FiniteMap::zero(self.domain.clone(), self.codomain.clone());
                }
            }
        }
        Ok(FiniteMap::from_flat(
            self.domain.clone(),
            self.codomain.clone(),
            table,
        ))
    }

    /// Pointwise sum.
    pub fn add(&self, other: &FiniteMap) -> Result<FiniteMap> {
        self.check_same_shapes(other)?;
        let mut values = Vec::with_capacity(self.values.len());
        for idx in 0..self.len {
            values.extend(self.codomain.add(self.value(idx), other.value(idx)));
        }
        Ok(FiniteMap::from_flat(
            self.domain.clone(),
            self.codomain.clone(),
            values,
        ))
    }

    /// `∫_A f = Σ_{x ∈ A} f(x)` in the codomain.
    pub fn integral(&self) -> GroupElement {
        let mut acc = vec![0u64; self.codomain.rank()];
        for idx in 0..self.len {
            acc = self.codomain.add(&acc, self.value(idx));
        }
        GroupElement(acc)
    }

    /// `f(x) = 0` for each element, in enumeration order.
    pub fn zero_mask(&self) -> Vec<bool> {
        (0..self.len)
            .map(|i| self.value(i).iter().all(|&v| v == 0))
            .collect()
    }

    fn check_same_shapes(&self, other: &FiniteMap) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(invalid!(
                "shape mismatch: {} → {} vs {} → {}",
                self.domain,
                self.codomain,
                other.domain,
                other.codomain
            ));
        }
        Ok(())
    }
}

/// One generator difference of a flat table: `t'(x) = t(x + e_i) - t(x)`.
pub(crate) fn difference_table(table: &[u64], shift: &[usize], moduli: &[u64]) -> Vec<u64> {
    let w = moduli.len();
    let mut out = vec![0u64; table.len()];
    for (idx, &next) in shift.iter().enumerate() {
        for k in 0..w {
            let m = moduli[k];
            let (a, b) = (table[next * w + k], table[idx * w + k]);
            out[idx * w + k] = if a >= b { a - b } else { a + m - b };
        }
    }
    out
}

/// `⊗_j h_j : ⊕_j A_j → Z/m`, `(x_1, ..., x_n) ↦ h_1(x_1) ⋯ h_n(x_n)`, for
/// maps into one common cyclic ring `Z/m`.
pub fn tensor_product(maps: &[FiniteMap]) -> Result<FiniteMap> {
    let first = maps
        .first()
        .ok_or_else(|| invalid!("tensor product of an empty list"))?;
    let ring = first.codomain().clone();
    if ring.rank() != 1 {
        return Err(invalid!("tensor factors must take values in a cyclic ring, got {ring}"));
    }
    if let Some(bad) = maps.iter().find(|h| h.codomain() != &ring) {
        return Err(invalid!(
            "codomain mismatch in tensor product: {} vs {ring}",
            bad.codomain()
        ));
    }
    let m = ring.factors()[0] as u128;
    let factors: Vec<u64> = maps
        .iter()
        .flat_map(|h| h.domain().factors().iter().copied())
        .collect();
    let domain = AbelianShape::new(factors)?;
    domain
        .order_within(DEFAULT_ENUMERATION_LIMIT)
        .map_err(|e| Error::Resource(format!("tensor product domain: {e}")))?;
    FiniteMap::from_fn(domain, ring, |x| {
        let mut offset = 0;
        let mut acc = 1u128 % m;
        for h in maps {
            let r = h.domain().rank();
            acc = acc * h.value_at(&x[offset..offset + r])[0] as u128 % m;
            offset += r;
        }
        vec![acc as u64]
    })
}
