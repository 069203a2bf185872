//! Binary fixed-point reals for the reporting layer.
//!
//! Logarithms of exact kernels are evaluated with guard bits and rounded to
//! nearest at the configured precision. Decimal output is produced by exact
//! integer rounding, so it is identical on every platform.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

const GUARD_BITS: u32 = 32;

/// `mant / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

fn round_shift(x: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (shift - 1);
    if x.is_negative() {
        -((-x + half) >> shift)
    } else {
        (x + half) >> shift
    }
}

fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    // den > 0
    let twice = num * 2 + if num.is_negative() { -den } else { den.clone() };
    
    twice / (den * 2)
}

/// `atanh(num/den) * 2^w`, truncated; requires `|num/den| <= 1/3`.
fn atanh_fixed(num: &BigInt, den: &BigInt, w: u32) -> BigInt {
    let mut power = (num << w) / den;
    let sq_num = num * num;
    let sq_den = den * den;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power = power * &sq_num / &sq_den;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

fn ln2_fixed(w: u32) -> BigInt {
    atanh_fixed(&BigInt::one(), &BigInt::from(3), w) * 2
}

/// `ln(n) * 2^w` for a positive integer.
fn ln_uint_fixed(n: &BigUint, w: u32, ln2: &BigInt) -> BigInt {
    let k = n.bits() - 1;
    let pow = BigUint::one() << k;
    let num = BigInt::from_biguint(Sign::Plus, n - &pow);
    let den = BigInt::from_biguint(Sign::Plus, n + &pow);
    let mantissa = if num.is_zero() {
        BigInt::zero()
    } else {
        atanh_fixed(&num, &den, w) * 2
    };
    ln2 * BigInt::from(k) + mantissa
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Fixed {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// Natural logarithm of a positive rational, rounded to nearest at `bits`.
    pub fn ln(q: &BigRational, bits: u32) -> Self {
        assert!(q.is_positive(), "logarithm of a non-positive rational");
        let w = bits + GUARD_BITS;
        let ln2 = ln2_fixed(w);
        let num = ln_uint_fixed(q.numer().magnitude(), w, &ln2);
        let den = ln_uint_fixed(q.denom().magnitude(), w, &ln2);
        Fixed {
            mant: round_shift(&(num - den), GUARD_BITS),
            bits,
        }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let num: BigInt = q.numer() << bits;
        Fixed {
            mant: div_round(&num, q.denom()),
            bits,
        }
    }

    pub fn abs(&self) -> Fixed {
        Fixed {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, other.bits);
        Fixed {
            mant: &self.mant + &other.mant,
            bits: self.bits,
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Fixed {
        Fixed {
            mant: div_round(&(&self.mant * q.numer()), q.denom()),
            bits: self.bits,
        }
    }

    /// Quotient rounded to nearest; `None` when the divisor is zero.
    pub fn checked_div(&self, other: &Fixed) -> Option<Fixed> {
        if other.mant.is_zero() {
            return None;
        }
        let num: BigInt = &self.mant << other.bits;
        let (num, den) = if other.mant.is_negative() {
            (-num, -other.mant.clone())
        } else {
            (num, other.mant.clone())
        };
        Some(Fixed {
            mant: div_round(&num, &den),
            bits: self.bits,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let excess = self.mant.bits().saturating_sub(60) as u32;
        let shift = excess.min(self.bits);
        let m = round_shift(&self.mant, shift).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(-((self.bits - shift) as i32))
    }

    /// Decimal rendering with `sig` significant digits, round-half-away-from-zero.
    pub fn to_sig_string(&self, sig: u32) -> String {
        if self.mant.is_zero() {
            return "0".to_string();
        }
        let neg = self.mant.is_negative();
        let mag = self.mant.abs();
        let den_base = BigInt::one() << self.bits;
        let mut e = self.to_f64().abs().log10().floor() as i64;
        let lower = BigInt::from(10u32).pow(sig - 1);
        let upper = BigInt::from(10u32).pow(sig);
        let digits = loop {
            let k = sig as i64 - 1 - e;
            let (num, den) = if k >= 0 {
                (&mag * BigInt::from(10u32).pow(k as u32), den_base.clone())
            } else {
                (mag.clone(), &den_base * BigInt::from(10u32).pow((-k) as u32))
            };
            let rounded = div_round(&num, &den);
            match (rounded.cmp(&lower), rounded.cmp(&upper)) {
                (Ordering::Less, _) => e -= 1,
                (_, Ordering::Equal) | (_, Ordering::Greater) => e += 1,
                _ => break rounded,
            }
        };
        let s = digits.to_string();
        let body = place_point(&s, e, sig as i64);
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// Render digit string `s` (length `sig`) as `0.s * 10^(e+1)`.
fn place_point(s: &str, e: i64, sig: i64) -> String {
    if !(-7..=24).contains(&e) {
        let (head, tail) = s.split_at(1);
        return format!("{head}.{tail}e{e}");
    }
    if e < 0 {
        let zeros = "0".repeat((-e - 1) as usize);
        return format!("0.{zeros}{s}");
    }
    let int_len = e + 1;
    if int_len >= sig {
        let zeros = "0".repeat((int_len - sig) as usize);
        format!("{s}{zeros}")
    } else {
        let (a, b) = s.split_at(int_len as usize);
        format!("{a}.{b}")
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        let a: BigInt = &self.mant << other.bits;
        let b: BigInt = &other.mant << self.bits;
        a.cmp(&b)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sig_string(12))
    }
}

/// Integer `k`-th root of a positive rational when it is exact.
pub fn exact_root(q: &BigRational, k: u32) -> Option<BigRational> {
    if !q.is_positive() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.nth_root(k);
        (r.pow(k) == *n).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn logs_match_f64() {
        for (n, d) in [(2, 1), (3, 1), (10, 7), (1, 1000), (123456789, 1), (1, 3)] {
            let got = Fixed::ln(&r(n, d), 128).to_f64();
            let want = (n as f64 / d as f64).ln();
            assert!((got - want).abs() < 1e-14, "{n}/{d}: {got} vs {want}");
        }
        assert!(Fixed::ln(&r(1, 1), 128).is_zero());
    }

    #[test]
    fn ratio_of_logs_is_exact_to_print_precision() {
        let l64 = Fixed::ln(&r(64, 1), 128);
        let l8 = Fixed::ln(&r(8, 1), 128);
        let q = l64.checked_div(&l8).unwrap();
        assert_eq!(q.to_sig_string(12), "2.00000000000");
        assert_eq!(q.to_sig_string(13), "2.000000000000");
    }

    #[test]
    fn sig_formatting() {
        let f = |q: BigRational| Fixed::from_rational(&q, 128).to_sig_string(12);
        assert_eq!(f(r(5, 2)), "2.50000000000");
        assert_eq!(f(r(-1, 3)), "-0.333333333333");
        assert_eq!(f(r(1234567, 1)), "1234567.00000");
        assert_eq!(f(r(1, 1000)), "0.00100000000000");
        assert_eq!(f(r(9_999_999_999_999, 10)), "1000000000000");
        assert_eq!(f(r(0, 1)), "0");
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_root(&r(27, 8), 3), Some(r(3, 2)));
        assert_eq!(exact_root(&r(2, 1), 2), None);
    }
}
