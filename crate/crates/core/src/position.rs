//! Position tests for families of forms and the reduction from subgeneral
//! to general position.
//!
//! A set of forms has no common projective zero over the algebraic closure
//! iff the Macaulay multiplication map `(g_i) -> sum g_i F_i` onto `V_D` is
//! surjective at `D = (n+1)(d-1)+1`. That single exact rank test replaces
//! explicit resultant polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::MovingFamily;
use crate::linalg::{determinant, Echelon};
use crate::projgeom::{binomial, to_common_degree, HomForm, MonomialBasis, MultiIndex};
use crate::search::lattice_search;

/// Rank of `(g_i) -> sum g_i F_i` from `sum V_{D-d_i}` to `V_D`, and `dim V_D`.
pub fn macaulay_map_rank(forms: &[HomForm], degree: u32) -> Result<(usize, usize)> {
    let n = forms.first().ok_or_else(|| Error::domain("no forms"))?.n();
    if forms.iter().any(|f| f.n() != n) {
        return Err(Error::domain("forms live in different dimensions"));
    }
    if let Some(f) = forms.iter().find(|f| f.degree() > degree) {
        return Err(Error::domain(format!(
            "target degree {degree} is below form degree {}",
            f.degree()
        )));
    }
    let target = MonomialBasis::new(n, degree);
    let mut ech = Echelon::new(target.len());
    for f in forms {
        let shifts = MonomialBasis::new(n, degree - f.degree());
        for m in shifts.monomials() {
            ech.insert(f.mul_monomial(m).dense_primitive(&target));
            if ech.rank() == target.len() {
                return Ok((ech.rank(), target.len()));
            }
        }
    }
    Ok((ech.rank(), target.len()))
}

/// Degree at which surjectivity of the Macaulay map decides emptiness.
pub fn macaulay_degree(n: usize, d: u32) -> u32 {
    (n as u32 + 1) * (d - 1) + 1
}

fn coordinate(n: usize, s: usize, e: u32) -> MultiIndex {
    let mut v = vec![0; n + 1];
    v[s] = e;
    MultiIndex(v)
}

/// Whether `forms` have only the trivial common zero in `Qbar^{n+1}`.
///
/// Forms of lower degree are replaced by their products with `x_s^k` for
/// every `s`, which leaves the common zero set unchanged.
pub fn only_trivial_zero(forms: &[HomForm]) -> Result<bool> {
    let n = forms.first().ok_or_else(|| Error::domain("no forms"))?.n();
    if forms.len() < n + 1 {
        return Err(Error::domain(format!(
            "{} forms in P^{n} always share a nontrivial zero",
            forms.len()
        )));
    }
    let d = forms.iter().map(|f| f.degree()).max().expect("nonempty");
    let mut lifted = Vec::with_capacity(forms.len());
    for f in forms {
        if f.degree() == d {
            lifted.push(f.clone());
        } else {
            for s in 0..=n {
                lifted.push(f.mul_monomial(&coordinate(n, s, d - f.degree())));
            }
        }
    }
    let (rank, target) = macaulay_map_rank(&lifted, macaulay_degree(n, d))?;
    Ok(rank == target)
}

/// Determinant of the Sylvester matrix of two binary forms.
pub fn sylvester_resultant(f: &HomForm, g: &HomForm) -> Result<BigRational> {
    if f.n() != 1 || g.n() != 1 {
        return Err(Error::domain("Sylvester resultant needs binary forms"));
    }
    let (a, b) = (f.degree() as usize, g.degree() as usize);
    let coeffs = |h: &HomForm| -> Vec<BigRational> {
        let d = h.degree();
        (0..=d).map(|i| h.coeff(&MultiIndex(vec![d - i, i]))).collect()
    };
    let (cf, cg) = (coeffs(f), coeffs(g));
    let size = a + b;
    let mut m = vec![vec![BigRational::zero(); size]; size];
    for r in 0..b {
        for (k, c) in cf.iter().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..a {
        for (k, c) in cg.iter().enumerate() {
            m[b + r][r + k] = c.clone();
        }
    }
    Ok(determinant(&m))
}

/// Candidate hyperplane sets of size `count` for the dimension certifier:
/// coordinate hyperplanes first, then windows of `sum_j s^j x_j`.
fn hyperplane_candidates(n: usize, count: usize) -> Vec<Vec<HomForm>> {
    let linear = |coeffs: Vec<BigInt>| {
        HomForm::new(
            n,
            1,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(s, c)| (coordinate(n, s, 1), BigRational::from_integer(c))),
        )
        .expect("nonzero hyperplane")
    };
    let mut out = Vec::new();
    for subset in combinations(n + 1, count) {
        out.push(
            subset
                .into_iter()
                .map(|s| {
                    let mut c = vec![BigInt::zero(); n + 1];
                    c[s] = BigInt::one();
                    linear(c)
                })
                .collect(),
        );
    }
    for start in 1..=8i64 {
        out.push(
            (start..start + count as i64)
                .map(|s| linear((0..=n as u32).map(|j| BigInt::from(s).pow(j)).collect()))
                .collect(),
        );
    }
    out
}

/// Ascending `k`-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sound certificate that the common zero set of `forms` in `P^n` has
/// dimension at most `bound` (`bound < 0` means empty): some `bound + 1`
/// hyperplanes cut it down to the empty set. May fail to certify a true bound.
pub fn certify_dimension_at_most(forms: &[HomForm], bound: i64) -> Result<bool> {
    let n = forms.first().ok_or_else(|| Error::domain("no forms"))?.n();
    if bound >= n as i64 {
        return Ok(true);
    }
    if bound < 0 {
        return if forms.len() < n + 1 { Ok(false) } else { only_trivial_zero(forms) };
    }
    let count = bound as usize + 1;
    if forms.len() + count < n + 1 {
        return Ok(false);
    }
    for hyperplanes in hyperplane_candidates(n, count) {
        let mut all = forms.to_vec();
        all.extend(hyperplanes);
        if only_trivial_zero(&all)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionMode {
    General,
    NSubgeneral(usize),
    Fails,
}

/// A subset (1-based form indices) that failed at one sampled `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleFailure {
    pub subset: Vec<usize>,
    pub alpha: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionVerdict {
    pub mode: PositionMode,
    pub certified_weakly: bool,
    /// First subset that failed at every sample, with the first sample tried.
    pub witness: Option<SampleFailure>,
    /// Every (subset, alpha) rank-test failure observed among the samples.
    pub sampled_failures: Vec<SampleFailure>,
    /// True when every subset passed at every sample; never a certificate.
    pub uniform_on_samples: bool,
    pub samples: Vec<i64>,
}

/// Test every `(N+1)`-subset of the family at the sampled `alpha`.
///
/// One passing sample certifies the subset for all but finitely many
/// `alpha`, since each Macaulay minor is a rational function of `alpha`.
pub fn check_position(family: &MovingFamily, n_sub: usize, samples: &[i64]) -> Result<PositionVerdict> {
    let n = family.n;
    let q = family.q();
    if n_sub < n {
        return Err(Error::domain(format!("N = {n_sub} is smaller than n = {n}")));
    }
    if q < n_sub + 1 {
        return Err(Error::domain(format!("q = {q} is smaller than N + 1 = {}", n_sub + 1)));
    }
    if samples.is_empty() {
        return Err(Error::domain("no sample alpha given"));
    }
    let evaluated: Vec<Option<Vec<HomForm>>> = samples
        .iter()
        .map(|&a| -> Result<Option<Vec<HomForm>>> {
            let forms: Vec<Option<HomForm>> =
                (0..q).map(|j| family.form_at(j, a)).collect::<Result<_>>()?;
            let forms: Option<Vec<HomForm>> = forms.into_iter().collect();
            forms.map(|f| to_common_degree(&f)).transpose()
        })
        .collect::<Result<_>>()?;

    let subsets = combinations(q, n_sub + 1);
    let results: Vec<(Vec<usize>, Vec<bool>)> = subsets
        .par_iter()
        .map(|subset| -> Result<(Vec<usize>, Vec<bool>)> {
            let mut passes = Vec::with_capacity(samples.len());
            for forms in &evaluated {
                let ok = match forms {
                    None => false,
                    Some(forms) => {
                        let chosen: Vec<HomForm> = subset.iter().map(|&i| forms[i].clone()).collect();
                        only_trivial_zero(&chosen)?
                    }
                };
                passes.push(ok);
            }
            Ok((subset.clone(), passes))
        })
        .collect::<Result<_>>()?;

    let mut witness = None;
    let mut sampled_failures = Vec::new();
    for (subset, passes) in &results {
        let one_based: Vec<usize> = subset.iter().map(|i| i + 1).collect();
        for (alpha, ok) in samples.iter().zip(passes) {
            if !ok {
                sampled_failures.push(SampleFailure {
                    subset: one_based.clone(),
                    alpha: *alpha,
                });
            }
        }
        if witness.is_none() && !passes.iter().any(|&p| p) {
            witness = Some(SampleFailure {
                subset: one_based,
                alpha: samples[0],
            });
        }
    }
    let certified = witness.is_none();
    let mode = match (certified, n_sub == n) {
        (false, _) => PositionMode::Fails,
        (true, true) => PositionMode::General,
        (true, false) => PositionMode::NSubgeneral(n_sub),
    };
    Ok(PositionVerdict {
        mode,
        certified_weakly: certified,
        witness,
        uniform_on_samples: sampled_failures.is_empty(),
        sampled_failures,
        samples: samples.to_vec(),
    })
}

/// Output of the subgeneral-to-general reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    /// Row `t - 2` holds `c_{t,2}, ..., c_{t,N-n+t}` for `t = 2..=n+1`.
    pub coefficients: Vec<Vec<i64>>,
    /// `P_1 = Q_1, P_2, ..., P_{n+1}`.
    pub forms: Vec<HomForm>,
}

impl ReductionResult {
    /// `P_t` uses only `Q_2..Q_{N-n+t}`.
    pub fn is_triangular(&self, n: usize, n_sub: usize) -> bool {
        self.coefficients.len() == n
            && self
                .coefficients
                .iter()
                .enumerate()
                .all(|(row, c)| c.len() == n_sub - n + row + 1)
    }
}

pub const DEFAULT_REDUCTION_RADIUS: i64 = 4;

/// Replace `Q_1..Q_{N+1}` (common degree, only the trivial common zero) by
/// `P_1 = Q_1` and `P_t = sum_{j=2}^{N-n+t} c_tj Q_j` in general position.
///
/// Each `c` is the first integer vector, by sup-norm radius then ascending
/// lexicographic order, for which `P_1..P_t` has certified intersection
/// dimension at most `n - t`.
pub fn reduce_to_general(
    forms: &[HomForm],
    n: usize,
    n_sub: usize,
    max_radius: i64,
) -> Result<ReductionResult> {
    if n_sub < n {
        return Err(Error::domain(format!("N = {n_sub} is smaller than n = {n}")));
    }
    if forms.len() != n_sub + 1 {
        return Err(Error::domain(format!(
            "reduction needs N + 1 = {} forms, got {}",
            n_sub + 1,
            forms.len()
        )));
    }
    let d = forms[0].degree();
    if forms.iter().any(|f| f.degree() != d || f.n() != n) {
        return Err(Error::domain("reduction needs forms of a common degree in P^n"));
    }
    if !only_trivial_zero(forms)? {
        return Err(Error::NotSubgeneral(format!(
            "the {} forms share a nontrivial common zero",
            forms.len()
        )));
    }
    let mut chosen = vec![forms[0].clone()];
    let mut coefficients = Vec::with_capacity(n);
    for t in 2..=n + 1 {
        let upto = n_sub - n + t; // 1-based index of the last Q_j used
        let pool = &forms[1..upto];
        let bound = n as i64 - t as i64;
        let mut found = None;
        for c in lattice_search(pool.len(), max_radius) {
            let terms: Vec<(BigRational, &HomForm)> = c
                .iter()
                .zip(pool)
                .map(|(&ci, q)| (BigRational::from_integer(ci.into()), q))
                .collect();
            let Some(p) = HomForm::linear_combination(&terms) else {
                continue;
            };
            let mut trial = chosen.clone();
            trial.push(p.clone());
            if certify_dimension_at_most(&trial, bound)? {
                found = Some((c, p));
                break;
            }
        }
        let (c, p) = found.ok_or_else(|| {
            Error::SearchExhausted(format!("no c_{t}j with radius <= {max_radius}"))
        })?;
        coefficients.push(c);
        chosen.push(p);
    }
    if !only_trivial_zero(&chosen)? {
        return Err(Error::Consistency("reduced forms share a common zero".into()));
    }
    Ok(ReductionResult {
        coefficients,
        forms: chosen,
    })
}

/// Check `dim(P_1* ∩ ... ∩ P_t*) <= n - t` for every prefix.
pub fn verify_dimension_chain(forms: &[HomForm], n: usize) -> Result<bool> {
    for t in 1..=forms.len() {
        if !certify_dimension_at_most(&forms[..t], n as i64 - t as i64)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim V_L = binom(L + n, n)`.
pub fn dim_forms(n: usize, degree: u32) -> usize {
    binomial(degree as u64 + n as u64, n as u64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::MovingFamily;

    fn form(n: usize, s: &str) -> HomForm {
        HomForm::parse(n, s).unwrap()
    }

    fn forms(n: usize, list: &[&str]) -> Vec<HomForm> {
        list.iter().map(|s| form(n, s)).collect()
    }

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn macaulay_examples() {
        assert_eq!(macaulay_map_rank(&forms(1, &["x0^2", "x1^2"]), 3).unwrap(), (4, 4));
        assert_eq!(macaulay_map_rank(&forms(1, &["x0*x1", "x0^2"]), 3).unwrap(), (3, 4));
        assert_eq!(macaulay_map_rank(&forms(1, &["x0"]), 1).unwrap(), (1, 2));
        assert!(macaulay_map_rank(&forms(1, &["x0^2"]), 1).is_err());
    }

    #[test]
    fn trivial_zero_examples() {
        assert!(only_trivial_zero(&forms(1, &["x0", "x1", "x0 + x1"])).unwrap());
        assert!(only_trivial_zero(&forms(1, &["x0*x1", "x0^2 - x1^2"])).unwrap());
        assert!(!only_trivial_zero(&forms(1, &["x0*x1", "x0^2"])).unwrap());
        assert!(only_trivial_zero(&forms(2, &["x0", "x1"])).is_err());
    }

    #[test]
    fn mixed_degrees_are_lifted() {
        assert!(only_trivial_zero(&forms(2, &["x0^2", "x1", "x2^3"])).unwrap());
        assert!(!only_trivial_zero(&forms(2, &["x0^2", "x1", "x0*x2^2"])).unwrap());
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester_resultant(&form(1, "x0*x1"), &form(1, "x0^2 - x1^2")).unwrap(), r(-1));
        assert_eq!(sylvester_resultant(&form(1, "x0*x1"), &form(1, "x0^2")).unwrap(), r(0));
        assert_eq!(sylvester_resultant(&form(1, "x0"), &form(1, "x1")).unwrap(), r(1));
    }

    #[test]
    fn position_examples() {
        let fam = MovingFamily::constant(&forms(1, &["x0", "x0", "x1"])).unwrap();
        let v = check_position(&fam, 2, &[1]).unwrap();
        assert_eq!(v.mode, PositionMode::NSubgeneral(2));
        assert!(v.certified_weakly);
        let v = check_position(&fam, 1, &[1]).unwrap();
        assert_eq!(v.mode, PositionMode::Fails);
        assert_eq!(v.witness.unwrap().subset, vec![1, 2]);
        assert!(check_position(&fam, 3, &[1]).is_err());
    }

    #[test]
    fn reduction_examples() {
        let q = forms(1, &["x0", "x0", "x1"]);
        let red = reduce_to_general(&q, 1, 2, 4).unwrap();
        assert_eq!(red.coefficients, vec![vec![-1, -1]]);
        assert_eq!(red.forms[1], form(1, "-x0 - x1"));

        let q = forms(1, &["x0", "x1"]);
        let red = reduce_to_general(&q, 1, 1, 4).unwrap();
        assert_eq!(red.coefficients, vec![vec![-1]]);
        assert_eq!(red.forms, forms(1, &["x0", "-x1"]));

        let q = forms(1, &["x0^2", "x0^2", "x1^2", "x0*x1 + x1^2"]);
        let red = reduce_to_general(&q, 1, 3, 4).unwrap();
        assert!(red.is_triangular(1, 3));
        assert_eq!(red.coefficients[0].len(), 3);
        assert!(only_trivial_zero(&red.forms).unwrap());
    }

    #[test]
    fn reduction_rejects_shared_zero() {
        let q = forms(1, &["x0", "x0", "x0"]);
        assert!(matches!(reduce_to_general(&q, 1, 2, 2), Err(Error::NotSubgeneral(_))));
    }

    #[test]
    fn dimension_certifier() {
        // a single conic in P^2 is a curve
        assert!(certify_dimension_at_most(&forms(2, &["x0^2 - x1*x2"]), 1).unwrap());
        assert!(!certify_dimension_at_most(&forms(2, &["x0^2 - x1*x2"]), 0).unwrap());
        assert!(!certify_dimension_at_most(&forms(2, &["x0^2", "x0*x1"]), 0).unwrap());
        assert!(certify_dimension_at_most(&forms(2, &["x0^2", "x1^2"]), 0).unwrap());
    }
}
