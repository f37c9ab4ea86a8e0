use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::enumerate::{functions_by_degree, partitioned};
use crate::arith;
use crate::bounds::{expand_targets, main_bound, min_n, BoundReport};
use crate::calculus::{functional_degree, reconstruct, ExtendedDegree, FiniteMap, SeriesCoefficients};
use crate::calculus::for_each_point;
use crate::error::{invalid, Error, Result};
use crate::groups::{AbelianShape, GroupElement, PGroupShape};

/// Default number of systems drawn in sampled mode.
pub const DEFAULT_SAMPLES: u64 = 10_000;

const SAMPLE_ATTEMPTS: usize = 256;

/// How the systems of an instance are produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VerifyMode {
    /// Every tuple of qualifying maps.
    Exhaustive,
    /// `samples` systems built from random low-order binomial series.
    Sampled { seed: u64, samples: u64 },
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyMode::Exhaustive => write!(f, "exhaustive"),
            VerifyMode::Sampled { seed, samples } => write!(f, "sampled(seed={seed}, n={samples})"),
        }
    }
}

/// A codomain together with its degree cap `d_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodomainCap {
    pub shape: AbelianShape,
    pub d: u64,
}

/// The system with the smallest `ord_p(#Z)` seen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub maps: Vec<FiniteMap>,
    pub degrees: Vec<ExtendedDegree>,
    pub zero_count: u64,
    pub ord: ExtendedDegree,
}

/// Outcome of checking `ord_p #Z(f_1, ..., f_r) ≥ bound` on an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub instance: String,
    pub p: u64,
    pub domain: AbelianShape,
    pub codomains: Vec<CodomainCap>,
    pub report: BoundReport,
    pub bound: u64,
    /// `min 𝒩` over `[n̂(β)]` at `β = s_0 + 1`.
    pub min_n: u64,
    /// `∞` when nothing was tested.
    pub min_observed: ExtendedDegree,
    pub witness: Option<Witness>,
    /// Number of qualifying maps per codomain (exhaustive mode only).
    pub candidates: Vec<u64>,
    pub systems_tested: u64,
    pub violations: u64,
    pub mode: VerifyMode,
    /// Some codomain admits no map with `0 < fdeg ≤ d_j`.
    pub vacuous: bool,
    pub pass: bool,
}

struct Candidate {
    map: FiniteMap,
    degree: ExtendedDegree,
    mask: Vec<u64>,
}

fn bitmask(f: &FiniteMap) -> Vec<u64> {
    let mut words = vec![0u64; f.len().div_ceil(64)];
    for (i, z) in f.zero_mask().into_iter().enumerate() {
        if z {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

fn candidate(map: FiniteMap, degree: ExtendedDegree) -> Candidate {
    Candidate {
        mask: bitmask(&map),
        map,
        degree,
    }
}

#[derive(Clone, Default)]
struct Tally {
    best: Option<(ExtendedDegree, u64, u64)>,
    tested: u64,
    violations: u64,
}

impl Tally {
    fn record(&mut self, p: u64, bound: u64, key: u64, count: u64) {
        let ord = ExtendedDegree::from_valuation(arith::ord(p, count));
        self.tested += 1;
        if ord < ExtendedDegree::Finite(bound) {
            self.violations += 1;
        }
        if self.best.is_none_or(|(o, _, _)| ord < o) {
            self.best = Some((ord, key, count));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.violations += other.violations;
        if let Some(b) = other.best {
            if self.best.is_none_or(|(o, _, _)| b.0 < o) {
                self.best = Some(b);
            }
        }
        self
    }
}

fn count_common(masks: &[&[u64]]) -> u64 {
    (0..masks[0].len())
        .map(|w| masks.iter().fold(u64::MAX, |acc, m| acc & m[w]).count_ones() as u64)
        .sum()
}

/// Random nonconstant map `A → B` with `fdeg ≤ d`, built from a random
/// series supported on `|n̄| ≤ d` and then measured exactly.
fn sample_map(
    rng: &mut ChaCha8Rng,
    domain: &AbelianShape,
    codomain: &AbelianShape,
    d: u64,
) -> Result<Candidate> {
    let bounds: Vec<u64> = domain.factors().iter().map(|&m| m.min(d + 1)).collect();
    let mut support = Vec::new();
    for_each_point(&bounds, |n| {
        if n.iter().sum::<u64>() <= d {
            support.push(n.to_vec());
        }
    });
    for _ in 0..SAMPLE_ATTEMPTS {
        let density = rng.gen_range(0.2..=1.0);
        let coeffs = support.iter().filter_map(|n| {
            rng.gen_bool(density).then(|| {
                let c = codomain
                    .factors()
                    .iter()
                    .map(|&m| rng.gen_range(0..m))
                    .collect();
                (n.clone(), GroupElement(c))
            })
        });
        let coeffs: Vec<_> = coeffs.collect();
        let series = SeriesCoefficients::new(domain.clone(), codomain.clone(), coeffs)?;
        let f = reconstruct(&series, ExtendedDegree::Infinity)?;
        let degree = functional_degree(&f)?;
        if degree > ExtendedDegree::Finite(0) && degree <= ExtendedDegree::Finite(d) {
            return Ok(candidate(f, degree));
        }
    }
    Err(Error::Resource(format!(
        "no nonconstant map {domain} → {codomain} of degree ≤ {d} found after {SAMPLE_ATTEMPTS} draws"
    )))
}

/// Checks the divisibility `ord_p #Z(f_1, ..., f_r) ≥ bound` for systems of
/// nonconstant maps `f_j: A → B_j` with `fdeg(f_j) ≤ d_j`.
///
/// In exhaustive mode every tuple is tested, provided each `|B_j|^|A|` and
/// the number of tuples stay within `cap`. Sampled mode is reproducible from
/// the seed: sample `i` uses stream `i` of the seeded generator.
pub fn verify_main_theorem(
    a: &PGroupShape,
    codomains: &[(AbelianShape, u64)],
    mode: &VerifyMode,
    cap: u64,
) -> Result<VerifyReport> {
    let p = a.p;
    if codomains.is_empty() {
        return Err(invalid!("need at least one codomain"));
    }
    if codomains.iter().any(|(_, d)| *d == 0) {
        return Err(invalid!("degree caps must be positive"));
    }
    let domain = a.abelian()?;
    let targets = expand_targets(p, codomains)?;
    let report = main_bound(p, &a.exponents, &targets)?;
    let bound = report.bound;
    let min_n = min_n(p, &a.exponents, &targets, report.s0.unwrap_or(0) + 1)?;
    let instance = format!(
        "p={p} A={domain} {}",
        codomains
            .iter()
            .map(|(b, d)| format!("B={b} d≤{d}"))
            .collect::<Vec<_>>()
            .join(" ")
    );

    let mut candidates = Vec::new();
    let tally;
    let mut witness_maps: Vec<Candidate> = Vec::new();
    let mut vacuous = false;
    match mode {
        VerifyMode::Exhaustive => {
            let mut by_shape: BTreeMap<Vec<u64>, BTreeMap<ExtendedDegree, Vec<FiniteMap>>> =
                BTreeMap::new();
            let mut lists: Vec<Vec<Candidate>> = Vec::new();
            for (b, d) in codomains {
                if !by_shape.contains_key(b.factors()) {
                    by_shape.insert(b.factors().to_vec(), functions_by_degree(&domain, b, cap)?);
                }
                let buckets = &by_shape[b.factors()];
                let list: Vec<Candidate> = buckets
                    .range(ExtendedDegree::Finite(1)..=ExtendedDegree::Finite(*d))
                    .flat_map(|(deg, maps)| maps.iter().map(|f| candidate(f.clone(), *deg)))
                    .collect();
                candidates.push(list.len() as u64);
                lists.push(list);
            }
            vacuous = lists.iter().any(|l| l.is_empty());
            let total = lists.iter().try_fold(1u64, |acc, l| {
                acc.checked_mul(l.len() as u64).filter(|&t| t <= cap)
            });
            let total = total.ok_or_else(|| {
                Error::Resource(format!(
                    "more than {cap} systems; use sampled mode or raise the cap"
                ))
            })?;
            let sizes: Vec<u64> = lists.iter().map(|l| l.len() as u64).collect();
            let decode = |mut k: u64| -> Vec<usize> {
                let mut idx = vec![0usize; sizes.len()];
                for j in (0..sizes.len()).rev() {
                    idx[j] = (k % sizes[j]) as usize;
                    k /= sizes[j];
                }
                idx
            };
            let parts = partitioned(total, |range| {
                let mut t = Tally::default();
                for k in range {
                    let idx = decode(k);
                    let masks: Vec<&[u64]> =
                        idx.iter().zip(&lists).map(|(&i, l)| &l[i].mask[..]).collect();
                    t.record(p, bound, k, count_common(&masks));
                }
                Ok(t)
            })?;
            tally = parts.into_iter().fold(Tally::default(), Tally::merge);
            if let Some((_, k, _)) = tally.best {
                for (j, i) in decode(k).into_iter().enumerate() {
                    let c = &lists[j][i];
                    witness_maps.push(candidate(c.map.clone(), c.degree));
                }
            }
        }
        VerifyMode::Sampled { seed, samples } => {
            if *samples == 0 {
                return Err(invalid!("sample count must be positive"));
            }
            let draw = |i: u64| -> Result<Vec<Candidate>> {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(i);
                codomains
                    .iter()
                    .map(|(b, d)| sample_map(&mut rng, &domain, b, *d))
                    .collect()
            };
            let parts = partitioned(*samples, |range| {
                let mut t = Tally::default();
                for i in range {
                    let system = draw(i)?;
                    let masks: Vec<&[u64]> = system.iter().map(|c| &c.mask[..]).collect();
                    t.record(p, bound, i, count_common(&masks));
                }
                Ok(t)
            });
            tally = parts?.into_iter().fold(Tally::default(), Tally::merge);
            if let Some((_, i, _)) = tally.best {
                witness_maps = draw(i)?;
            }
        }
    }

    let witness = tally.best.map(|(ord, _, count)| Witness {
        degrees: witness_maps.iter().map(|c| c.degree).collect(),
        maps: witness_maps.into_iter().map(|c| c.map).collect(),
        zero_count: count,
        ord,
    });
    Ok(VerifyReport {
        instance,
        p,
        domain,
        codomains: codomains
            .iter()
            .map(|(shape, d)| CodomainCap {
                shape: shape.clone(),
                d: *d,
            })
            .collect(),
        bound,
        min_n,
        min_observed: tally.best.map_or(ExtendedDegree::Infinity, |b| b.0),
        witness,
        candidates,
        systems_tested: tally.tested,
        violations: tally.violations,
        mode: mode.clone(),
        vacuous,
        pass: tally.violations == 0,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::zero_count;
    use crate::oracle::DEFAULT_TABLE_CAP;
    use crate::partitions::Partition;

    fn pgroup(p: u64, parts: &[u32]) -> PGroupShape {
        PGroupShape::new(p, Partition::new(parts.to_vec()).unwrap()).unwrap()
    }

    fn shape(v: &[u64]) -> AbelianShape {
        AbelianShape::new(v.to_vec()).unwrap()
    }

    #[test]
    fn z4_z2_into_z2() {
        let r = verify_main_theorem(
            &pgroup(2, &[2, 1]),
            &[(shape(&[2]), 1)],
            &VerifyMode::Exhaustive,
            DEFAULT_TABLE_CAP,
        )
        .unwrap();
        assert_eq!(r.bound, 2);
        assert_eq!(r.min_n, 2);
        assert!(r.pass && !r.vacuous);
        let w = r.witness.unwrap();
        assert_eq!(w.zero_count, 4);
        assert_eq!(r.min_observed, ExtendedDegree::Finite(2));
        let direct = zero_count(&r.domain, &w.maps).unwrap();
        assert_eq!(direct.count, 4);
    }

    #[test]
    fn sampled_is_deterministic() {
        let mode = VerifyMode::Sampled { seed: 7, samples: 40 };
        let a = pgroup(2, &[2, 1]);
        let b = [(shape(&[4]), 2)];
        let r1 = verify_main_theorem(&a, &b, &mode, DEFAULT_TABLE_CAP).unwrap();
        let r2 = verify_main_theorem(&a, &b, &mode, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.systems_tested, 40);
        assert!(r1.pass);
        for f in &r1.witness.unwrap().maps {
            let d = functional_degree(f).unwrap();
            assert!(d > ExtendedDegree::Finite(0) && d <= ExtendedDegree::Finite(2));
        }
    }

    #[test]
    fn rejects_foreign_primes() {
        assert!(verify_main_theorem(
            &pgroup(2, &[1]),
            &[(shape(&[3]), 1)],
            &VerifyMode::Exhaustive,
            DEFAULT_TABLE_CAP
        )
        .is_err());
    }
}
