//! Primality and integer factorization.
//!
//! Word-sized inputs use deterministic Miller-Rabin and Pollard-Brent over
//! `u128` products. Larger inputs are stripped of small factors by trial
//! division and then split with Pollard-Brent over `BigUint`, subject to an
//! iteration budget so callers can bail out on hard composites.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Default Pollard-Brent iteration budget per composite cofactor above 2^64.
pub const DEFAULT_BIG_BUDGET: u64 = 2_000_000;

const TRIAL_LIMIT: u64 = 1 << 12;

#[inline]
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

/// Deterministic primality test for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
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

fn pollard_brent_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 2u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let f = pollard_brent_u64(n);
    factor_u64_into(f, out);
    factor_u64_into(n / f, out);
}

/// Prime factorization of a nonzero `u64` as (prime, exponent) pairs in ascending order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n != 0, "factor_u64 of zero");
    let mut out = BTreeMap::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    factor_u64_into(n, &mut out);
    out.into_iter().collect()
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent_big(n: &BigUint, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut spent = 0u64;
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r = 1u64;
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = 64.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                spent += steps;
                g = q.gcd(n);
                k += 64;
                if spent > budget {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn factor_big_into(n: BigUint, out: &mut BTreeMap<u64, u32>, budget: u64) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in factor_u64(small) {
            *out.entry(p).or_insert(0) += e;
        }
        return Ok(());
    }
    if is_probable_prime_big(&n) {
        return Err(Error::PlaceOutOfRange(n.to_string()));
    }
    let f = pollard_brent_big(&n, budget).ok_or_else(|| Error::FactorizationBudget(n.to_string()))?;
    let cofactor = &n / &f;
    factor_big_into(f, out, budget)?;
    factor_big_into(cofactor, out, budget)
}

/// Prime factorization of a nonzero big integer. Fails when a prime factor
/// exceeds `u64` or when Pollard-Brent exceeds `budget` iterations.
pub fn factor_biguint(n: &BigUint, budget: u64) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::domain("factorization of zero"));
    }
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    if rest.to_u64().is_none() {
        let mut p = 2u64;
        while p < TRIAL_LIMIT {
            let bp = BigUint::from(p);
            while (&rest % &bp).is_zero() {
                *out.entry(p).or_insert(0) += 1;
                rest /= &bp;
            }
            p += if p == 2 { 1 } else { 2 };
        }
    }
    factor_big_into(rest, &mut out, budget)?;
    Ok(out.into_iter().collect())
}
