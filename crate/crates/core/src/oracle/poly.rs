use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::bounds::rng_system_bound;
use crate::calculus::{ExtendedDegree, ZeroCount};
use crate::error::{invalid, Error, Result};
use crate::groups::AbelianShape;

/// Default cap on `m^n` for exhaustive evaluation.
pub const DEFAULT_POINT_CAP: u64 = 1_000_000;

/// `coeff · x_1^{e_1} ⋯ x_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: u64,
    pub exponents: Vec<u32>,
}

impl Term {
    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }
}

/// A polynomial over `Z/m` with a declared degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Term>,
    pub degree: u64,
}

impl Polynomial {
    /// Largest `|e|` over terms with a nonzero coefficient mod `m`.
    pub fn actual_degree(&self, m: u64) -> Option<u64> {
        self.terms
            .iter()
            .filter(|t| t.coeff % m != 0)
            .map(Term::degree)
            .max()
    }

    /// Parses expressions such as `x1*x2 + 2*x3^2 - 1` in `n` variables.
    /// The declared degree is the actual degree.
    pub fn parse(src: &str, n: usize, m: u64) -> Result<Self> {
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(invalid!("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let negative = rest.starts_with('-');
            if rest.starts_with('+') || negative {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (body, tail) = rest.split_at(end);
            rest = tail;
            if body.is_empty() {
                return Err(invalid!("dangling sign in {src:?}"));
            }
            let mut coeff: u64 = 1;
            let mut exponents = vec![0u32; n];
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (index, power) = match var.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (var, "1"),
                    };
                    let i: usize = index
                        .parse()
                        .map_err(|_| invalid!("bad variable {factor:?} in {src:?}"))?;
                    let e: u32 = power
                        .parse()
                        .map_err(|_| invalid!("bad exponent {factor:?} in {src:?}"))?;
                    if i == 0 || i > n {
                        return Err(invalid!("variable x{i} outside x1..x{n}"));
                    }
                    exponents[i - 1] += e;
                } else {
                    let c: u64 = factor
                        .parse()
                        .map_err(|_| invalid!("bad factor {factor:?} in {src:?}"))?;
                    coeff = ((coeff as u128 * (c % m) as u128) % m as u128) as u64;
                }
            }
            if negative {
                coeff = (m - coeff % m) % m;
            }
            terms.push(Term { coeff, exponents });
        }
        let mut p = Polynomial { terms, degree: 0 };
        p.degree = p.actual_degree(m).unwrap_or(0);
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = vec![t.coeff.to_string()];
                for (i, &e) in t.exponents.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push(format!("x{}", i + 1)),
                        _ => s.push(format!("x{}^{e}", i + 1)),
                    }
                }
                s.join("*")
            })
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Polynomials `P_1, ..., P_r` in `n` variables over `Z/m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolySystemRepr")]
pub struct PolySystem {
    pub modulus: u64,
    pub vars: usize,
    pub polynomials: Vec<Polynomial>,
}

#[derive(Deserialize)]
struct PolySystemRepr {
    modulus: u64,
    vars: usize,
    polynomials: Vec<Polynomial>,
}

impl TryFrom<PolySystemRepr> for PolySystem {
    type Error = Error;

    fn try_from(r: PolySystemRepr) -> Result<Self> {
        PolySystem::new(r.modulus, r.vars, r.polynomials)
    }
}

impl PolySystem {
    /// Validates shapes and declared degrees and reduces coefficients mod `m`.
    pub fn new(modulus: u64, vars: usize, mut polynomials: Vec<Polynomial>) -> Result<Self> {
        if modulus < 2 {
            return Err(invalid!("modulus must be at least 2, got {modulus}"));
        }
        if vars == 0 {
            return Err(invalid!("need at least one variable"));
        }
        for (j, p) in polynomials.iter_mut().enumerate() {
            for t in &mut p.terms {
                if t.exponents.len() != vars {
                    return Err(invalid!(
                        "polynomial {j} has a term with {} exponents, expected {vars}",
                        t.exponents.len()
                    ));
                }
                t.coeff %= modulus;
            }
            if let Some(actual) = p.actual_degree(modulus) {
                if actual > p.degree {
                    return Err(invalid!(
                        "polynomial {j} has degree {actual} above its declared degree {}",
                        p.degree
                    ));
                }
            }
        }
        Ok(PolySystem {
            modulus,
            vars,
            polynomials,
        })
    }

    /// Parses one expression per polynomial; see [`Polynomial::parse`].
    pub fn parse(modulus: u64, vars: usize, sources: &[&str]) -> Result<Self> {
        if modulus < 2 {
            return Err(invalid!("modulus must be at least 2, got {modulus}"));
        }
        let polys = sources
            .iter()
            .map(|s| Polynomial::parse(s, vars, modulus))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(modulus, vars, polys)
    }

    /// `(Z/m)^n`.
    pub fn domain(&self) -> Result<AbelianShape> {
        AbelianShape::new(vec![self.modulus; self.vars])
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.polynomials.iter().map(|p| p.degree).collect()
    }
}

/// Number of common zeros in `(Z/m)^n`, by evaluating at every point.
pub fn poly_zero_count(system: &PolySystem, cap: u64) -> Result<ZeroCount> {
    let m = system.modulus;
    let n = system.vars;
    let points = (0..n)
        .try_fold(1u64, |acc, _| acc.checked_mul(m).filter(|&t| t <= cap))
        .ok_or_else(|| Error::Resource(format!("{m}^{n} points exceed the cap {cap}")))?;
    let max_e = system
        .polynomials
        .iter()
        .flat_map(|p| p.terms.iter().flat_map(|t| t.exponents.iter().copied()))
        .max()
        .unwrap_or(0) as usize;
    let powers: Vec<Vec<u64>> = (0..m)
        .map(|x| {
            let mut row = vec![1 % m; max_e + 1];
            for e in 1..=max_e {
                row[e] = ((row[e - 1] as u128 * x as u128) % m as u128) as u64;
            }
            row
        })
        .collect();
    let mut x = vec![0u64; n];
    let mut count = 0;
    for _ in 0..points {
        let zero = system.polynomials.iter().all(|p| {
            let mut acc: u128 = 0;
            for t in &p.terms {
                let mut v = t.coeff as u128;
                for (i, &e) in t.exponents.iter().enumerate() {
                    if e > 0 {
                        v = v * powers[x[i] as usize][e as usize] as u128 % m as u128;
                    }
                }
                acc += v;
            }
            acc.is_multiple_of(m as u128)
        });
        count += u64::from(zero);
        for xi in x.iter_mut().rev() {
            *xi += 1;
            if *xi < m {
                break;
            }
            *xi = 0;
        }
    }
    Ok(ZeroCount::new(&system.domain()?, count))
}

/// Zero count of a polynomial system next to the divisibility bound per prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyReport {
    pub count: u64,
    pub ord: BTreeMap<u64, ExtendedDegree>,
    /// Empty when no polynomial has positive declared degree.
    pub bounds: BTreeMap<u64, u64>,
    pub pass: bool,
}

/// [`poly_zero_count`] checked against [`rng_system_bound`]. Polynomials of
/// declared degree 0 are constants and only shrink the zero set, so they are
/// left out of the bound.
pub fn poly_bound_check(system: &PolySystem, cap: u64) -> Result<PolyReport> {
    let zc = poly_zero_count(system, cap)?;
    let degrees: Vec<u64> = system.degrees().into_iter().filter(|&d| d > 0).collect();
    let bounds: BTreeMap<u64, u64> = if degrees.is_empty() {
        BTreeMap::new()
    } else {
        rng_system_bound(system.modulus, system.vars, &degrees)?
            .into_iter()
            .map(|(q, r)| (q, r.bound))
            .collect()
    };
    let pass = bounds
        .iter()
        .all(|(q, &b)| zc.ord[q] >= ExtendedDegree::Finite(b));
    debug_assert!(arith::factorize(system.modulus)
        .iter()
        .all(|(q, _)| zc.ord.contains_key(q)));
    Ok(PolyReport {
        count: zc.count,
        ord: zc.ord,
        bounds,
        pass,
    })
}
