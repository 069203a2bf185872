//! Places of Q, exact normalized absolute values and height kernels.
//!
//! Every norm here is an exact positive rational. Logarithms only appear in
//! the reporting layer (see [`crate::real`]).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{factor_biguint, is_prime_u64, DEFAULT_BIG_BUDGET};

/// A place of Q: the real absolute value or a p-adic one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Archimedean,
    Finite(u64),
}

impl Place {
    /// The p-adic place; `p` must be prime.
    pub fn finite(p: u64) -> Result<Place> {
        if is_prime_u64(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::domain(format!("{p} is not prime")))
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Archimedean)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// A strictly positive exact rational, used for norms and Weil multipliers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactPositive(BigRational);

impl ExactPositive {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_positive() {
            Ok(ExactPositive(value))
        } else {
            Err(Error::domain(format!("{value} is not positive")))
        }
    }

    pub fn one() -> Self {
        ExactPositive(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        ExactPositive(pow_rational(&self.0, e))
    }

    pub fn recip(&self) -> Self {
        ExactPositive(self.0.recip())
    }
}

impl Mul for ExactPositive {
    type Output = ExactPositive;
    fn mul(self, rhs: Self) -> Self {
        ExactPositive(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a ExactPositive> for &'a ExactPositive {
    type Output = ExactPositive;
    fn mul(self, rhs: &ExactPositive) -> ExactPositive {
        ExactPositive(&self.0 * &rhs.0)
    }
}

impl Div for ExactPositive {
    type Output = ExactPositive;
    fn div(self, rhs: Self) -> Self {
        ExactPositive(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a ExactPositive> for &'a ExactPositive {
    type Output = ExactPositive;
    fn div(self, rhs: &ExactPositive) -> ExactPositive {
        ExactPositive(&self.0 / &rhs.0)
    }
}

impl fmt::Display for ExactPositive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exact height kernel `H`, meaning the logarithmic height is `log H`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeightKernel(BigRational);

impl HeightKernel {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_positive() {
            Ok(HeightKernel(value))
        } else {
            Err(Error::domain(format!("height kernel {value} is not positive")))
        }
    }

    pub fn from_integer(value: BigInt) -> Result<Self> {
        Self::new(BigRational::from_integer(value))
    }

    pub fn one() -> Self {
        HeightKernel(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Kernel of a sum of heights.
    pub fn compose(&self, other: &HeightKernel) -> HeightKernel {
        HeightKernel(&self.0 * &other.0)
    }

    pub fn pow(&self, e: u32) -> HeightKernel {
        HeightKernel(pow_rational(&self.0, e))
    }
}

impl fmt::Display for HeightKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn pow_rational(q: &BigRational, e: u32) -> BigRational {
    BigRational::new_raw(q.numer().pow(e), q.denom().pow(e))
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation(p: u64, n: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// `ord_p` of a nonzero rational.
pub fn ord(p: u64, q: &BigRational) -> i64 {
    valuation(p, q.numer()) as i64 - valuation(p, q.denom()) as i64
}

fn nonzero(q: &BigRational) -> Result<()> {
    if q.is_zero() {
        Err(Error::domain("norm of zero is undefined"))
    } else {
        Ok(())
    }
}

/// `||q||_v`: `|q|` at the real place and `p^(-ord_p q)` at p.
pub fn local_norm(v: Place, q: &BigRational) -> Result<ExactPositive> {
    nonzero(q)?;
    Ok(local_norm_unchecked(v, q))
}

pub(crate) fn local_norm_unchecked(v: Place, q: &BigRational) -> ExactPositive {
    match v {
        Place::Archimedean => ExactPositive(q.abs()),
        Place::Finite(p) => {
            let k = ord(p, q);
            let pk = BigInt::from(p).pow(k.unsigned_abs() as u32);
            if k >= 0 {
                ExactPositive(BigRational::new_raw(BigInt::one(), pk))
            } else {
                ExactPositive(BigRational::from_integer(pk))
            }
        }
    }
}

/// Primes dividing a nonzero integer.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let mag: BigUint = n.magnitude().clone();
    Ok(factor_biguint(&mag, DEFAULT_BIG_BUDGET)?.into_iter().map(|(p, _)| p).collect())
}

/// The finite set of places where `||q||_v != 1`.
pub fn support(q: &BigRational) -> Result<BTreeSet<Place>> {
    nonzero(q)?;
    let mut out = BTreeSet::new();
    if !q.abs().is_one() {
        out.insert(Place::Archimedean);
    }
    for p in prime_divisors(q.numer())? {
        out.insert(Place::Finite(p));
    }
    for p in prime_divisors(q.denom())? {
        out.insert(Place::Finite(p));
    }
    Ok(out)
}

/// Product of `||q||_v` over the support of `q`; always 1.
pub fn product_formula_check(q: &BigRational) -> Result<BigRational> {
    let places = support(q)?;
    Ok(places
        .into_iter()
        .fold(BigRational::one(), |acc, v| acc * local_norm_unchecked(v, q).into_inner()))
}

/// Height kernel of a nonzero rational `a/b` in lowest terms: `max(|a|, |b|)`.
pub fn height_kernel_scalar(q: &BigRational) -> Result<HeightKernel> {
    nonzero(q)?;
    let a = q.numer().abs();
    let b = q.denom().abs();
    HeightKernel::from_integer(a.max(b))
}

/// Height kernel of a nonzero rational computed as the product of
/// `max(1, ||q||_v)` over its support.
pub fn height_kernel_scalar_by_places(q: &BigRational) -> Result<HeightKernel> {
    let places = support(q)?;
    let one = BigRational::one();
    let h = places.into_iter().fold(BigRational::one(), |acc, v| {
        let norm = local_norm_unchecked(v, q).into_inner();
        if norm > one {
            acc * norm
        } else {
            acc
        }
    });
    HeightKernel::new(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn finite_requires_prime() {
        assert!(Place::finite(7).is_ok());
        assert!(Place::finite(1).is_err());
        assert!(Place::finite(9).is_err());
    }

    #[test]
    fn local_norm_examples() {
        let q = r(-6, 35);
        assert_eq!(local_norm(Place::Archimedean, &q).unwrap().into_inner(), r(6, 35));
        assert_eq!(local_norm(Place::Finite(2), &q).unwrap().into_inner(), r(1, 2));
        assert_eq!(local_norm(Place::Finite(7), &q).unwrap().into_inner(), r(7, 1));
        assert!(local_norm(Place::Archimedean, &r(0, 1)).is_err());
    }

    #[test]
    fn support_examples() {
        let all: Vec<Place> = support(&r(-6, 35)).unwrap().into_iter().collect();
        assert_eq!(
            all,
            vec![
                Place::Archimedean,
                Place::Finite(2),
                Place::Finite(3),
                Place::Finite(5),
                Place::Finite(7)
            ]
        );
        assert!(support(&r(1, 1)).unwrap().is_empty());
        assert!(support(&r(-1, 1)).unwrap().is_empty());
        let eight: Vec<Place> = support(&r(8, 1)).unwrap().into_iter().collect();
        assert_eq!(eight, vec![Place::Archimedean, Place::Finite(2)]);
        assert!(support(&r(0, 1)).is_err());
    }

    #[test]
    fn product_formula_examples() {
        for q in [r(-6, 35), r(1, 1), r(1024, 243)] {
            assert_eq!(product_formula_check(&q).unwrap(), r(1, 1));
        }
    }

    #[test]
    fn scalar_height_examples() {
        assert_eq!(height_kernel_scalar(&r(3, 7)).unwrap().value(), &r(7, 1));
        assert_eq!(height_kernel_scalar(&r(5, 1)).unwrap().value(), &r(5, 1));
        assert_eq!(height_kernel_scalar(&r(-6, 35)).unwrap().value(), &r(35, 1));
        assert_eq!(height_kernel_scalar_by_places(&r(-6, 35)).unwrap().value(), &r(35, 1));
    }
}
