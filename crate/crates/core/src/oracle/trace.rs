use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith;
use crate::bigjson;
use crate::calculus::{proper_lift, zero_count, ExtendedDegree, FiniteMap, IntSeries};
use crate::error::{invalid, Error, Result};
use crate::groups::AbelianShape;

/// `ord_p c_j(n)` next to the floor `max(⌈(n - (p^{β_j} - 1)) / (p^{β_j - 1}(p - 1))⌉, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    pub n: u64,
    pub ord: ExtendedDegree,
    pub floor: u64,
}

/// The proper lift `χ̃_j` of the indicator of `p^{β_j} Z` with values in `Z/p^β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndicatorLift {
    pub beta_j: u32,
    /// `n̂_j(β) = (p^{β_j} - 1) + (β - 1) p^{β_j - 1} (p - 1)`.
    pub n_hat: u64,
    pub support_degree: ExtendedDegree,
    pub coefficients: Vec<CoefficientCheck>,
    pub violations: u64,
}

/// Both sides of `#Z = k p^β + ∫_{[p^ᾱ)} χ̃(F̃_1, ..., F̃_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub p: u64,
    pub beta: u32,
    /// Every `β` tried, in order; the last one is `beta`.
    pub betas_tried: Vec<u32>,
    pub zero_count: u64,
    pub ord_zero_count: ExtendedDegree,
    #[serde(with = "bigjson::int")]
    pub integral: BigInt,
    pub ord_integral: ExtendedDegree,
    /// `∫ ≡ #Z (mod p^β)`.
    pub congruent: bool,
    pub lifts: Vec<IndicatorLift>,
    pub coefficient_violations: u64,
    /// `ord_p ∫ = ord_p #Z`, or `p^β | ∫` when the zero set is empty.
    pub holds: bool,
}

struct Setup {
    p: u64,
    domain: AbelianShape,
    betas: Vec<u32>,
    /// `F̃_j` on the window, in domain element order.
    lifted: Vec<Vec<BigInt>>,
    zero_count: u64,
}

fn setup(system: &[FiniteMap]) -> Result<Setup> {
    let first = system
        .first()
        .ok_or_else(|| invalid!("the system must contain at least one map"))?;
    let domain = first.domain().clone();
    let p = domain
        .p_group_prime()
        .ok_or_else(|| invalid!("the domain {domain} is not a nontrivial p-group"))?;
    let mut betas = Vec::new();
    let mut lifted = Vec::new();
    for (j, f) in system.iter().enumerate() {
        if f.domain() != &domain {
            return Err(invalid!("map {j} is defined on {}, expected {domain}", f.domain()));
        }
        let b = f.codomain();
        if b.rank() != 1 || b.p_group_prime() != Some(p) {
            return Err(invalid!("map {j} must take values in a cyclic {p}-group, got {b}"));
        }
        let m = b.factors()[0];
        let lift = proper_lift(f)?;
        let values = lift.evaluate_window(domain.factors());
        for (idx, v) in values.iter().enumerate() {
            if ((v % m) + m) % m != BigInt::from(f.value(idx)[0]) {
                return Err(Error::Internal(format!(
                    "proper lift of map {j} disagrees with the map at element {idx}"
                )));
            }
        }
        betas.push(arith::ord(p, m).expect("p-power modulus"));
        lifted.push(values);
    }
    let zero_count = zero_count(&domain, system)?.count;
    Ok(Setup {
        p,
        domain,
        betas,
        lifted,
        zero_count,
    })
}

fn indicator_lift(p: u64, beta_j: u32, beta: u32) -> Result<(IntSeries, IndicatorLift)> {
    let m = arith::checked_pow(p, beta_j).ok_or_else(|| Error::Resource("p^β_j overflows".into()))?;
    let big = arith::checked_pow(p, beta)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| Error::Resource(format!("{p}^{beta} is too large for a trace")))?;
    let chi = FiniteMap::from_fn(AbelianShape::cyclic(m)?, AbelianShape::cyclic(big)?, |y| {
        vec![u64::from(y[0] == 0)]
    })?;
    let lift = proper_lift(&chi)?;
    let step = (p - 1) * p.pow(beta_j - 1);
    let n_hat = (m - 1) + (beta as u64 - 1) * step;
    let mut coefficients = Vec::new();
    let mut violations = 0;
    for n in 0..=n_hat {
        let c = lift.coefficient(&[n]);
        let ord = ExtendedDegree::from_valuation(arith::ord_big(p, &c));
        let floor = if n > m - 1 { (n - (m - 1)).div_ceil(step) } else { 0 };
        if ord < ExtendedDegree::Finite(floor) {
            violations += 1;
        }
        coefficients.push(CoefficientCheck { n, ord, floor });
    }
    let info = IndicatorLift {
        beta_j,
        n_hat,
        support_degree: lift.degree(),
        coefficients,
        violations,
    };
    Ok((lift, info))
}

fn trace_at(s: &Setup, beta: u32) -> Result<ProofTrace> {
    let mut chis = Vec::new();
    let mut lifts = Vec::new();
    for &bj in &s.betas {
        let (chi, info) = indicator_lift(s.p, bj, beta)?;
        chis.push(chi);
        lifts.push(info);
    }
    let n = s.domain.order().expect("enumerable domain") as usize;
    let mut integral = BigInt::zero();
    for idx in 0..n {
        let mut term = BigInt::one();
        for (chi, values) in chis.iter().zip(&s.lifted) {
            term *= chi.evaluate(std::slice::from_ref(&values[idx]));
            if term.is_zero() {
                break;
            }
        }
        integral += term;
    }
    let modulus = BigInt::from(arith::pow_big(s.p, beta));
    let ord_zero_count = ExtendedDegree::from_valuation(arith::ord(s.p, s.zero_count));
    let ord_integral = ExtendedDegree::from_valuation(arith::ord_big(s.p, &integral));
    let congruent = ((&integral - BigInt::from(s.zero_count)) % &modulus).is_zero();
    let holds = if s.zero_count == 0 {
        ord_integral >= ExtendedDegree::Finite(beta as u64)
    } else {
        ord_integral == ord_zero_count
    };
    let coefficient_violations = lifts.iter().map(|l| l.violations).sum();
    Ok(ProofTrace {
        p: s.p,
        beta,
        betas_tried: vec![beta],
        zero_count: s.zero_count,
        ord_zero_count,
        integral,
        ord_integral,
        congruent,
        lifts,
        coefficient_violations,
        holds,
    })
}

/// Runs the counting argument at a fixed `β`, which must exceed
/// `ord_p #Z` when the zero set is nonempty.
pub fn proof_trace(system: &[FiniteMap], beta: u32) -> Result<ProofTrace> {
    if beta == 0 {
        return Err(invalid!("β must be positive"));
    }
    let s = setup(system)?;
    if let Some(ord) = arith::ord(s.p, s.zero_count) {
        if beta <= ord {
            return Err(invalid!(
                "β = {beta} is too small: it must exceed ord_{} #Z = {ord}",
                s.p
            ));
        }
    }
    trace_at(&s, beta)
}

/// Runs the counting argument without knowing `#Z`: starting from `start`,
/// `β` is raised until `ord_p ∫ < β`, at which point `ord_p ∫ = ord_p #Z`.
/// Past `β = α + 1` the zero set must be empty and the loop stops.
pub fn proof_trace_escalated(system: &[FiniteMap], start: u32) -> Result<ProofTrace> {
    let s = setup(system)?;
    let alpha = arith::ord(s.p, s.domain.order().expect("enumerable domain")).expect("p-group");
    let mut beta = start.max(1);
    let mut tried = Vec::new();
    loop {
        let mut t = trace_at(&s, beta)?;
        tried.push(beta);
        let settled = t.ord_integral < ExtendedDegree::Finite(beta as u64);
        if settled || beta > alpha {
            t.betas_tried = tried;
            return Ok(t);
        }
        beta = match t.ord_integral {
            ExtendedDegree::Finite(o) => (o as u32 + 1).min(alpha + 1),
            _ => alpha + 1,
        };
    }
}
