//! Moving families of forms and point sequences indexed by an integer `alpha`.
//!
//! Coefficients are ratios of integer polynomials in `alpha` (or, for
//! experiments on smallness, explicit per-`alpha` tables). Any polynomial
//! condition on such coefficients holds identically or fails at finitely
//! many `alpha`, which is what makes single-sample certification sound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::projgeom::{normalize_point, HomForm, MultiIndex, ProjectivePoint};

/// Integer polynomial in `alpha`, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly(vec![c.into()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, alpha: i64) -> BigInt {
        let a = BigInt::from(alpha);
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &a + c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    Rational { num: IntPoly, den: IntPoly },
    /// Values for `alpha = alpha_min, alpha_min + 1, ...`.
    Explicit { alpha_min: i64, values: Vec<BigRational> },
}

impl Coefficient {
    pub fn constant(c: BigRational) -> Self {
        Coefficient::Rational {
            num: IntPoly::constant(c.numer().clone()),
            den: IntPoly::constant(c.denom().clone()),
        }
    }

    pub fn eval(&self, alpha: i64) -> Result<BigRational> {
        match self {
            Coefficient::Rational { num, den } => {
                let d = den.eval(alpha);
                if d.is_zero() {
                    return Err(Error::domain(format!("denominator root at alpha={alpha}")));
                }
                Ok(BigRational::new(num.eval(alpha), d))
            }
            Coefficient::Explicit { alpha_min, values } => usize::try_from(alpha - alpha_min)
                .ok()
                .and_then(|i| values.get(i))
                .cloned()
                .ok_or_else(|| Error::domain(format!("no tabulated coefficient at alpha={alpha}"))),
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        match self {
            Coefficient::Rational { num, .. } => num.is_zero(),
            Coefficient::Explicit { values, .. } => values.iter().all(|v| v.is_zero()),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Coefficient::Rational { num, den } => {
                num.0.iter().skip(1).all(|c| c.is_zero()) && den.0.iter().skip(1).all(|c| c.is_zero())
            }
            Coefficient::Explicit { values, .. } => values.windows(2).all(|w| w[0] == w[1]),
        }
    }
}

/// One moving form: degree and coefficient functions per monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovingForm {
    pub degree: u32,
    pub coefficients: Vec<(MultiIndex, Coefficient)>,
}

impl MovingForm {
    pub fn constant(q: &HomForm) -> Self {
        MovingForm {
            degree: q.degree(),
            coefficients: q
                .coeffs()
                .iter()
                .map(|(k, v)| (k.clone(), Coefficient::constant(v.clone())))
                .collect(),
        }
    }
}

/// A family `Q_1(alpha), ..., Q_q(alpha)` in `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovingFamily {
    pub n: usize,
    pub forms: Vec<MovingForm>,
}

impl MovingFamily {
    pub fn constant(forms: &[HomForm]) -> Result<Self> {
        let n = forms.first().ok_or_else(|| Error::domain("empty family"))?.n();
        Ok(MovingFamily {
            n,
            forms: forms.iter().map(MovingForm::constant).collect(),
        })
    }

    pub fn q(&self) -> usize {
        self.forms.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.forms.iter().map(|f| f.degree).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.forms
            .iter()
            .all(|f| f.coefficients.iter().all(|(_, c)| c.is_constant()))
    }

    /// `Q_j(alpha)`, or `None` when every coefficient vanishes at `alpha`.
    pub fn form_at(&self, j: usize, alpha: i64) -> Result<Option<HomForm>> {
        let f = &self.forms[j];
        let mut terms = Vec::with_capacity(f.coefficients.len());
        for (idx, c) in &f.coefficients {
            terms.push((idx.clone(), c.eval(alpha)?));
        }
        if terms.iter().all(|(_, c)| c.is_zero()) {
            return Ok(None);
        }
        HomForm::new(self.n, f.degree, terms).map(Some)
    }

    /// All forms at `alpha`; fails if any form vanishes identically there.
    pub fn forms_at(&self, alpha: i64) -> Result<Vec<HomForm>> {
        (0..self.q())
            .map(|j| {
                self.form_at(j, alpha)?
                    .ok_or_else(|| Error::domain(format!("form {} is zero at alpha={alpha}", j + 1)))
            })
            .collect()
    }
}

/// A sequence of points `x(alpha)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSequence {
    /// Points for `alpha = alpha_min, alpha_min + 1, ...`.
    Explicit { alpha_min: i64, points: Vec<Vec<BigRational>> },
    /// `(b_0^alpha : ... : b_n^alpha)`.
    Exponential { bases: Vec<BigInt> },
    /// Coordinates are integer polynomials in `alpha`.
    Polynomial { coords: Vec<IntPoly> },
}

impl PointSequence {
    pub fn n(&self) -> usize {
        match self {
            PointSequence::Explicit { points, .. } => points.first().map_or(0, |p| p.len().saturating_sub(1)),
            PointSequence::Exponential { bases } => bases.len().saturating_sub(1),
            PointSequence::Polynomial { coords } => coords.len().saturating_sub(1),
        }
    }

    /// Raw coordinates before normalization.
    pub fn raw(&self, alpha: i64) -> Result<Vec<BigRational>> {
        match self {
            PointSequence::Explicit { alpha_min, points } => usize::try_from(alpha - alpha_min)
                .ok()
                .and_then(|i| points.get(i))
                .cloned()
                .ok_or_else(|| Error::domain(format!("no explicit point at alpha={alpha}"))),
            PointSequence::Exponential { bases } => Ok(bases
                .iter()
                .map(|b| {
                    let p = Pow::pow(b, alpha.unsigned_abs());
                    if alpha >= 0 {
                        BigRational::from_integer(p)
                    } else {
                        BigRational::new(BigInt::one(), p)
                    }
                })
                .collect()),
            PointSequence::Polynomial { coords } => Ok(coords
                .iter()
                .map(|c| BigRational::from_integer(c.eval(alpha)))
                .collect()),
        }
    }

    pub fn point(&self, alpha: i64) -> Result<ProjectivePoint> {
        normalize_point(&self.raw(alpha)?)
    }

    pub fn validate_bases(&self) -> Result<()> {
        if let PointSequence::Exponential { bases } = self {
            if bases.iter().any(|b| !b.is_positive()) {
                return Err(Error::domain("exponential bases must be positive"));
            }
        }
        Ok(())
    }
}
