//! Exact integer helpers: valuations, prime powers, integer logarithms and
//! binomial coefficients. Nothing in here touches floating point.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `ord_q(n)` for an integer `q ≥ 2`; `None` stands for `ord_q(0) = ∞`.
pub fn ord(q: u64, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut k = 0;
    while n.is_multiple_of(q) {
        n /= q;
        k += 1;
    }
    Some(k)
}

/// `ord_q` of an arbitrary-size integer; `None` for zero.
pub fn ord_big(q: u64, n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let q = BigInt::from(q);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (quot, rem) = n.div_rem(&q);
        if !rem.is_zero() {
            return Some(k);
        }
        n = quot;
        k += 1;
    }
}

pub fn pow_big(p: u64, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize)
}

/// `p^k` if it fits in a `u64`.
pub fn checked_pow(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// `(p^k - 1) / (p - 1) = 1 + p + ... + p^(k-1)`.
pub fn geometric(p: u64, k: u32) -> BigUint {
    let mut acc = BigUint::zero();
    let mut term = BigUint::one();
    for _ in 0..k {
        acc += &term;
        term *= p;
    }
    acc
}

/// Largest `k` with `p^k ≤ x`, computed by repeated multiplication.
/// Requires `x ≥ 1`.
pub fn floor_log(p: u64, x: &BigUint) -> u32 {
    debug_assert!(p >= 2 && !x.is_zero());
    let mut k = 0;
    let mut pk = BigUint::from(p);
    while &pk <= x {
        pk *= p;
        k += 1;
    }
    k
}

/// `⌈a / b⌉` for `b > 0`.
pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    a.div_ceil(b)
}

/// Binomial coefficient `C(x, n)` as the integer-valued polynomial
/// `x (x-1) ... (x-n+1) / n!`, valid for every integer `x` including
/// negative ones. Builds the value one factor at a time with exact division.
pub fn binomial(x: &BigInt, n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..n {
        acc *= x - BigInt::from(k);
        acc /= BigInt::from(k + 1);
    }
    acc
}

/// Rows of Pascal's triangle reduced modulo `m`: `table[x][n] = C(x, n) mod m`
/// for `0 ≤ x < rows` and `0 ≤ n ≤ max_n`.
pub fn binomial_table_mod(rows: usize, max_n: usize, m: u64) -> Vec<Vec<u64>> {
    let mut table = Vec::with_capacity(rows);
    let mut row = vec![0u64; max_n + 1];
    if m > 1 {
        row[0] = 1;
    }
    for _ in 0..rows {
        table.push(row.clone());
        for n in (1..=max_n).rev() {
            row[n] = (row[n] + row[n - 1]) % m;
        }
    }
    table
}

/// Exact `C(x, n)` for non-negative `x` by Pascal's rule, returned for all
/// `n ≤ max_n`.
pub fn binomial_row(x: u64, max_n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::zero(); max_n + 1];
    row[0] = BigUint::one();
    for _ in 0..x {
        for n in (1..=max_n).rev() {
            let prev = row[n - 1].clone();
            row[n] += prev;
        }
    }
    row
}

/// Modular inverse of `a` modulo `m` (`gcd(a, m) = 1`).
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// The idempotent of `Z/m` supported on the `q`-part, where `q` is a prime
/// power exactly dividing `m`: `e ≡ 1 (mod q)` and `e ≡ 0 (mod m/q)`.
pub fn idempotent(m: u64, q: u64) -> u64 {
    debug_assert!(m.is_multiple_of(q));
    let rest = m / q;
    if rest == 1 {
        return 1 % m;
    }
    if q == 1 {
        return 0;
    }
    // e = rest * (rest^{-1} mod q)
    let inv = inv_mod(rest % q, q).expect("coprime parts");
    ((rest as u128 * inv as u128) % m as u128) as u64
}

pub fn to_u64(x: &BigUint, what: &str) -> crate::Result<u64> {
    x.to_u64()
        .ok_or_else(|| crate::Error::Resource(format!("{what} does not fit in 64 bits")))
}
