//! Integer factorization at desk scale: trial division plus a deterministic
//! Miller-Rabin test for the leftover cofactor.

use crate::error::{Error, Result};

/// Trial division runs up to this bound before giving up on a composite
/// cofactor.
pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 22;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for every `u64` (the first twelve primes are a complete
/// witness set below 3.3e24).
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n` in increasing order.
///
/// Fails with [`Error::TooLarge`] when a composite cofactor survives trial
/// division up to `trial_bound`; the result is never a guess.
pub fn prime_factors(n: u64, trial_bound: u64) -> Result<Vec<u64>> {
    let mut factors = Vec::new();
    let mut rest = n;
    if rest < 2 {
        return Ok(factors);
    }
    let mut d = 2u64;
    while d <= trial_bound && d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            factors.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if is_prime(rest) {
            factors.push(rest);
        } else {
            return Err(Error::TooLarge {
                what: format!("factorization of {n} (composite cofactor {rest})"),
                bound: format!("trial division up to {trial_bound}"),
            });
        }
    }
    Ok(factors)
}

/// `(p, n)` with `q = p^n`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = *prime_factors(q, DEFAULT_TRIAL_BOUND).ok()?.first()?;
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}
