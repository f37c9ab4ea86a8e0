use std::collections::BTreeMap;
use std::ops::AddAssign;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::degree::{p_group_pair, walk_differences, ExtendedDegree};
use super::for_each_point;
use super::map::FiniteMap;
use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::groups::{delta_p, AbelianShape, GroupElement};

/// The coefficients `c(n̄) = Δ^{n̄} f(0̄)` of a map between `p`-groups, so that
/// `f(x̄) = Σ_{n̄} C(x_1, n_1) ⋯ C(x_N, n_N) c(n̄)`. Only nonzero entries are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoefficients {
    domain: AbelianShape,
    codomain: AbelianShape,
    coeffs: BTreeMap<Vec<u64>, GroupElement>,
}

#[derive(Serialize, Deserialize)]
struct CoefficientEntry {
    n: Vec<u64>,
    c: GroupElement,
}

#[derive(Serialize, Deserialize)]
struct SeriesCoefficientsRepr {
    domain: AbelianShape,
    codomain: AbelianShape,
    coefficients: Vec<CoefficientEntry>,
}

impl Serialize for SeriesCoefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesCoefficientsRepr {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            coefficients: self
                .coeffs
                .iter()
                .map(|(n, c)| CoefficientEntry {
                    n: n.clone(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeriesCoefficients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesCoefficientsRepr::deserialize(d)?;
        SeriesCoefficients::new(
            repr.domain,
            repr.codomain,
            repr.coefficients.into_iter().map(|e| (e.n, e.c)),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl SeriesCoefficients {
    pub fn new(
        domain: AbelianShape,
        codomain: AbelianShape,
        coeffs: impl IntoIterator<Item = (Vec<u64>, GroupElement)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            if n.len() != domain.rank() {
                return Err(invalid!(
                    "multi-index {n:?} has arity {} but the domain has {} factors",
                    n.len(),
                    domain.rank()
                ));
            }
            if !codomain.contains(&c) {
                return Err(invalid!("coefficient {:?} is not reduced in {codomain}", c.0));
            }
            if c.0.iter().any(|&v| v != 0) {
                map.insert(n, c);
            }
        }
        Ok(SeriesCoefficients {
            domain,
            codomain,
            coeffs: map,
        })
    }

    pub fn domain(&self) -> &AbelianShape {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianShape {
        &self.codomain
    }

    pub fn get(&self, n: &[u64]) -> GroupElement {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| self.codomain.zero())
    }

    /// Nonzero coefficients in lexicographic order of `n̄`.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u64>, &GroupElement)> {
        self.coeffs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max |n̄|` over the support, `-∞` if empty.
    pub fn degree(&self) -> ExtendedDegree {
        self.coeffs
            .keys()
            .map(|n| ExtendedDegree::Finite(n.iter().sum()))
            .max()
            .unwrap_or(ExtendedDegree::MinusInfinity)
    }
}

/// `c(n̄) = Δ^{n̄} f(0̄)` for every `|n̄| ≤ δ_p(ᾱ, β)`.
pub fn series_coefficients(f: &FiniteMap) -> Result<SeriesCoefficients> {
    let (p, alpha, beta) = p_group_pair(f).ok_or_else(|| {
        Error::Unsupported(format!(
            "series expansion needs p-groups for one prime, got {} → {}",
            f.domain(),
            f.codomain()
        ))
    })?;
    let cap = arith::to_u64(&delta_p(p, &alpha, beta), "degree cap")?;
    let w = f.codomain().rank();
    let mut coeffs = Vec::new();
    walk_differences(f, cap, |n, table| {
        coeffs.push((n.to_vec(), GroupElement(table[..w].to_vec())));
    })?;
    SeriesCoefficients::new(f.domain().clone(), f.codomain().clone(), coeffs)
}

/// Evaluates `Σ_{|n̄| ≤ d} C(x_1, n_1) ⋯ C(x_N, n_N) c(n̄)` on the domain.
pub fn reconstruct(coeffs: &SeriesCoefficients, d: ExtendedDegree) -> Result<FiniteMap> {
    let actual = coeffs.degree();
    if actual > d {
        return Err(invalid!("coefficients reach degree {actual}, above the bound {d}"));
    }
    let domain = coeffs.domain().clone();
    let codomain = coeffs.codomain().clone();
    let modulus = codomain
        .factors()
        .iter()
        .try_fold(1u64, |acc, &m| {
            let l = num_integer::lcm(acc, m);
            (l <= u32::MAX as u64).then_some(l)
        })
        .ok_or_else(|| Error::Resource(format!("exponent of {codomain} is too large")))?;
    let max_n = coeffs
        .iter()
        .flat_map(|(n, _)| n.iter().copied())
        .max()
        .unwrap_or(0) as usize;
    let tables: Vec<Vec<Vec<u64>>> = domain
        .factors()
        .iter()
        .map(|&m| arith::binomial_table_mod(m as usize, max_n, modulus))
        .collect();
    let w = codomain.rank();
    FiniteMap::from_fn(domain, codomain.clone(), |x| {
        let mut acc = vec![0u64; w];
        for (n, c) in coeffs.iter() {
            let mut weight = 1u64;
            for (i, (&xi, &ni)) in x.iter().zip(n).enumerate() {
                weight = weight * tables[i][xi as usize][ni as usize] % modulus;
            }
            for k in 0..w {
                let m = codomain.factors()[k];
                acc[k] = ((acc[k] as u128 + weight as u128 * c.0[k] as u128) % m as u128) as u64;
            }
        }
        acc
    })
}

/// An integer-valued function on `Z^N` given in the binomial basis:
/// `F(x̄) = Σ_{n̄} C(x_1, n_1) ⋯ C(x_N, n_N) coeffs(n̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    arity: usize,
    bound: u64,
    coeffs: BTreeMap<Vec<u64>, BigInt>,
}

impl IntSeries {
    /// Series whose declared bound is the largest `|n̄|` in the support.
    pub fn new(arity: usize, coeffs: impl IntoIterator<Item = (Vec<u64>, BigInt)>) -> Result<Self> {
        let mut s = IntSeries::with_bound(arity, u64::MAX, coeffs)?;
        s.bound = s.coeffs.keys().map(|n| n.iter().sum()).max().unwrap_or(0);
        Ok(s)
    }

    pub fn with_bound(
        arity: usize,
        bound: u64,
        coeffs: impl IntoIterator<Item = (Vec<u64>, BigInt)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            if n.len() != arity {
                return Err(invalid!("multi-index {n:?} does not have arity {arity}"));
            }
            if n.iter().sum::<u64>() > bound {
                return Err(invalid!("multi-index {n:?} exceeds the degree bound {bound}"));
            }
            if !c.is_zero() {
                *map.entry(n).or_insert_with(BigInt::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(IntSeries {
            arity,
            bound,
            coeffs: map,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The declared degree bound.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn coefficient(&self, n: &[u64]) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u64>, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Functional degree of `F` on `Z^N`.
    pub fn degree(&self) -> ExtendedDegree {
        self.coeffs
            .keys()
            .map(|n| ExtendedDegree::Finite(n.iter().sum()))
            .max()
            .unwrap_or(ExtendedDegree::MinusInfinity)
    }

    fn max_index(&self) -> usize {
        self.coeffs
            .keys()
            .flat_map(|n| n.iter().copied())
            .max()
            .unwrap_or(0) as usize
    }

    /// `F(x̄)` at an arbitrary integer point.
    pub fn evaluate(&self, x: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.arity, "arity mismatch");
        let max_n = self.max_index() as u64;
        let rows: Vec<Vec<BigInt>> = x
            .iter()
            .map(|xi| (0..=max_n).map(|n| arith::binomial(xi, n)).collect())
            .collect();
        self.combine(|i, n| &rows[i][n])
    }

    /// `F` on every point of the window `∏_i [0, b_i)`, in row-major order.
    pub fn evaluate_window(&self, bounds: &[u64]) -> Vec<BigInt> {
        assert_eq!(bounds.len(), self.arity, "arity mismatch");
        let max_n = self.max_index();
        let tables: Vec<Vec<Vec<BigInt>>> = bounds
            .iter()
            .map(|&b| pascal_rows(b, max_n))
            .collect();
        let mut out = Vec::new();
        for_each_point(bounds, |x| {
            out.push(self.combine(|i, n| &tables[i][x[i] as usize][n]));
        });
        out
    }

    fn combine<'a>(&self, binom: impl Fn(usize, usize) -> &'a BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (n, c) in &self.coeffs {
            let mut term = c.clone();
            for (i, &ni) in n.iter().enumerate() {
                term *= binom(i, ni as usize);
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        total
    }

    /// `(x̄_1, ..., x̄_k) ↦ F_1(x̄_1) ⋯ F_k(x̄_k)` over `Z`.
    pub fn tensor(parts: &[IntSeries]) -> IntSeries {
        let mut coeffs: BTreeMap<Vec<u64>, BigInt> = BTreeMap::new();
        coeffs.insert(Vec::new(), BigInt::one());
        for part in parts {
            let mut next = BTreeMap::new();
            for (n, c) in &coeffs {
                for (m, d) in &part.coeffs {
                    let mut key = n.clone();
                    key.extend(m);
                    next.insert(key, c * d);
                }
            }
            coeffs = next;
        }
        IntSeries {
            arity: parts.iter().map(|s| s.arity).sum(),
            bound: parts.iter().map(|s| s.bound).sum(),
            coeffs,
        }
    }

    /// Coefficients reduced to `[0, m)`.
    pub fn reduce(&self, m: &BigUint) -> IntSeries {
        let m = BigInt::from(m.clone());
        IntSeries {
            arity: self.arity,
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, c)| (n.clone(), ((c % &m) + &m) % &m))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// True when every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
}

/// `table[x][n] = C(x, n)` for `x < rows`, `n ≤ max_n`, by Pascal's rule.
pub(crate) fn pascal_rows(rows: u64, max_n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(rows as usize);
    let mut row = vec![BigInt::zero(); max_n + 1];
    row[0] = BigInt::one();
    for _ in 0..rows {
        out.push(row.clone());
        for n in (1..=max_n).rev() {
            let prev = row[n - 1].clone();
            row[n] += prev;
        }
    }
    out
}

/// The proper lift of `f: A → Z/p^β` to `Z^N`: coefficients are the
/// representatives in `[0, p^β)` of `c(n̄)`.
pub fn proper_lift(f: &FiniteMap) -> Result<IntSeries> {
    let codomain = f.codomain();
    if codomain.rank() != 1 || codomain.p_group_prime().is_none() {
        return Err(invalid!("proper lifts need a cyclic p-power codomain, got {codomain}"));
    }
    let (p, alpha, beta) = p_group_pair(f).ok_or_else(|| {
        Error::Unsupported(format!(
            "proper lift needs a p-group domain for the codomain prime, got {}",
            f.domain()
        ))
    })?;
    let coeffs = series_coefficients(f)?;
    let bound = arith::to_u64(&delta_p(p, &alpha, beta), "degree cap")?;
    IntSeries::with_bound(
        f.domain().rank(),
        bound,
        coeffs
            .iter()
            .map(|(n, c)| (n.clone(), BigInt::from(c.0[0]))),
    )
}

/// `Δ^{n̄} F(0̄) = Σ_{k̄ ≤ n̄} Π_i (-1)^{n_i - k_i} C(n_i, k_i) F(k̄)`, from values
/// of `F` alone.
pub fn lift_delta0(series: &IntSeries, n: &[u64]) -> Result<BigInt> {
    if n.len() != series.arity() {
        return Err(invalid!(
            "multi-index {n:?} does not match arity {}",
            series.arity()
        ));
    }
    let bounds: Vec<u64> = n.iter().map(|&k| k + 1).collect();
    let values = series.evaluate_window(&bounds);
    let max_n = n.iter().copied().max().unwrap_or(0);
    let pascal = pascal_rows(max_n + 1, max_n as usize);
    let mut total = BigInt::zero();
    let mut idx = 0;
    for_each_point(&bounds, |k| {
        let mut term = values[idx].clone();
        idx += 1;
        for (&ni, &ki) in n.iter().zip(k) {
            term *= &pascal[ni as usize][ki as usize];
            if (ni - ki) % 2 == 1 {
                term = -term;
            }
        }
        total += term;
    });
    Ok(total)
}

/// `∫_S f = Σ_{x ∈ S} f(x)` over the window `S = ∏_i [0, b_i)`.
pub fn integral<T: Zero + AddAssign>(bounds: &[u64], mut f: impl FnMut(&[u64]) -> T) -> T {
    let mut acc = T::zero();
    for_each_point(bounds, |x| acc += f(x));
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(v: &[u64]) -> AbelianShape {
        AbelianShape::new(v.to_vec()).unwrap()
    }

    fn map(domain: &[u64], codomain: &[u64], f: impl Fn(&[u64]) -> Vec<u64>) -> FiniteMap {
        FiniteMap::from_fn(shape(domain), shape(codomain), f).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn coefficients_of_small_maps() {
        let zero = FiniteMap::zero(shape(&[4, 2]), shape(&[4])).unwrap();
        assert!(series_coefficients(&zero).unwrap().is_empty());

        let id = map(&[2], &[2], |x| vec![x[0]]);
        let c = series_coefficients(&id).unwrap();
        assert_eq!(c.get(&[0]).0, vec![0]);
        assert_eq!(c.get(&[1]).0, vec![1]);

        let chi = map(&[2], &[4], |x| vec![(x[0] % 2 == 0) as u64]);
        let c = series_coefficients(&chi).unwrap();
        assert_eq!(
            (c.get(&[0]).0, c.get(&[1]).0, c.get(&[2]).0),
            (vec![1], vec![3], vec![2])
        );

        let mixed = map(&[2], &[3], |x| vec![x[0]]);
        assert!(matches!(series_coefficients(&mixed), Err(Error::Unsupported(_))));
    }

    #[test]
    fn reconstruct_small_cases() {
        let coeffs = SeriesCoefficients::new(
            shape(&[2]),
            shape(&[2]),
            [(vec![0], GroupElement(vec![0])), (vec![1], GroupElement(vec![1]))],
        )
        .unwrap();
        let f = reconstruct(&coeffs, ExtendedDegree::Finite(1)).unwrap();
        assert_eq!(f, map(&[2], &[2], |x| vec![x[0]]));
        assert!(reconstruct(&coeffs, ExtendedDegree::Finite(0)).is_err());

        let empty = SeriesCoefficients::new(shape(&[4]), shape(&[2]), []).unwrap();
        let z = reconstruct(&empty, ExtendedDegree::MinusInfinity).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn lifts() {
        let zero = FiniteMap::zero(shape(&[4]), shape(&[8])).unwrap();
        assert!(proper_lift(&zero).unwrap().is_empty());

        let id = map(&[2], &[2], |x| vec![x[0]]);
        let lift = proper_lift(&id).unwrap();
        assert_eq!(lift.iter().collect::<Vec<_>>(), vec![(&vec![1], &big(1))]);

        let f = map(&[2], &[4], |x| vec![[1, 3][x[0] as usize]]);
        let lift = proper_lift(&f).unwrap();
        assert_eq!(lift.coefficient(&[0]), big(1));
        assert_eq!(lift.coefficient(&[1]), big(2));
        assert_eq!(lift_delta0(&lift, &[1]).unwrap(), big(2));
        assert_eq!(lift_delta0(&lift, &[5]).unwrap(), big(0));
        assert!(lift_delta0(&lift, &[1, 1]).is_err());

        assert!(proper_lift(&map(&[2], &[2, 2], |x| vec![x[0], 0])).is_err());
        assert!(proper_lift(&map(&[2], &[6], |x| vec![x[0]])).is_err());
    }

    #[test]
    fn evaluation_agrees_with_window() {
        let s = IntSeries::new(
            2,
            [(vec![0, 0], big(-3)), (vec![2, 1], big(5)), (vec![0, 3], big(7))],
        )
        .unwrap();
        let window = s.evaluate_window(&[4, 5]);
        let mut idx = 0;
        for_each_point(&[4, 5], |x| {
            let point: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            assert_eq!(s.evaluate(&point), window[idx]);
            idx += 1;
        });
        assert_eq!(s.degree(), ExtendedDegree::Finite(3));
        // C(-1, n) = (-1)^n
        assert_eq!(s.evaluate(&[big(-1), big(-1)]), big(-3 + -5 + -7));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(IntSeries::with_bound(1, 2, [(vec![3], big(1))]).is_err());
        assert!(IntSeries::with_bound(2, 2, [(vec![1], big(1))]).is_err());
        let s = IntSeries::with_bound(1, 5, [(vec![3], big(1)), (vec![3], big(-1))]).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.bound(), 5);
    }

    #[test]
    fn integrals() {
        let id = IntSeries::new(1, [(vec![1], big(1))]).unwrap();
        let total: BigInt = integral(&[4], |x| id.evaluate(&[BigInt::from(x[0])]));
        assert_eq!(total, big(6));
        let zero: BigInt = integral(&[3, 3], |_| BigInt::zero());
        assert!(zero.is_zero());
        // C(x_1, 2) C(x_2, 1) over [0,4) × [0,2): (0+0+1+3)(0+1)
        let product: BigInt = integral(&[4, 2], |x| {
            arith::binomial(&BigInt::from(x[0]), 2) * arith::binomial(&BigInt::from(x[1]), 1)
        });
        assert_eq!(product, big(4));
    }

    #[test]
    fn tensor_of_series() {
        let a = IntSeries::new(1, [(vec![0], big(2)), (vec![1], big(1))]).unwrap();
        let b = IntSeries::new(2, [(vec![1, 1], big(3))]).unwrap();
        let t = IntSeries::tensor(&[a.clone(), b.clone()]);
        assert_eq!(t.arity(), 3);
        for x in [[0i64, 1, 1], [3, 2, 5], [-2, 4, -1]] {
            let xs: Vec<BigInt> = x.iter().map(|&v| big(v)).collect();
            assert_eq!(t.evaluate(&xs), a.evaluate(&xs[..1]) * b.evaluate(&xs[1..]));
        }
    }
}
