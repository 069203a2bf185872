//! Staircase filtration of `V_L` by products of `P_1..P_n`.
//!
//! For tuples `(i)` with `d ||(i)|| <= L`, ordered lexicographically,
//! `W_(i) = sum_{(j) >= (i)} P^(j) V_{L - d||(j)||}` is a decreasing
//! filtration of `V_L`. The jump dimensions depend only on `||(i)||` and are
//! counted by [`lemma33_count`]; [`build_filtration`] realizes the jumps by
//! exact row reduction and cross-checks them against the count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{left_nullspace, primitive_row, Echelon};
use crate::projgeom::{binomial, HomForm, MonomialBasis, MultiIndex};

/// Number of `(s_1..s_n)` with `0 <= s_i <= d-1` and `sum s_i <= m`.
pub fn lemma33_count(n: usize, d: u32, m: u64) -> u64 {
    let cap = (n as u64) * (d as u64 - 1);
    let top = m.min(cap) as usize;
    // ways[t] = number of tuples with sum exactly t
    let mut ways = vec![0u64; top + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u64; top + 1];
        for (t, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for s in 0..d as usize {
                if t + s > top {
                    break;
                }
                next[t + s] += w;
            }
        }
        ways = next;
    }
    ways.iter().sum()
}

/// All `n`-tuples with entry sum at most `top`, ascending lexicographic order.
pub fn staircase_tuples(n: usize, top: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=budget {
            cur.push(v);
            go(n, budget - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, top, &mut Vec::with_capacity(n), &mut out);
    out
}

fn check_generators(p: &[HomForm]) -> Result<(usize, u32)> {
    let first = p.first().ok_or_else(|| Error::domain("no forms"))?;
    let (n, d) = (first.n(), first.degree());
    if p.len() != n {
        return Err(Error::domain(format!("expected n = {n} forms, got {}", p.len())));
    }
    if p.iter().any(|f| f.n() != n || f.degree() != d) {
        return Err(Error::domain("forms must share dimension and degree"));
    }
    Ok((n, d))
}

/// The ideal slice `(P_1..P_n) ∩ V_degree` as an echelon over the monomial basis.
fn ideal_slice(p: &[HomForm], n: usize, d: u32, degree: u32) -> (MonomialBasis, Echelon) {
    let basis = MonomialBasis::new(n, degree);
    let mut ech = Echelon::new(basis.len());
    if degree >= d {
        let shifts = MonomialBasis::new(n, degree - d);
        for f in p {
            for m in shifts.monomials() {
                ech.insert(f.mul_monomial(m).dense_primitive(&basis));
            }
        }
    }
    (basis, ech)
}

/// `dim V_L - dim((P_1..P_n) ∩ V_L)` by exact rank.
pub fn quotient_dim_rank(p: &[HomForm], l: u32) -> Result<usize> {
    let (n, d) = check_generators(p)?;
    let (basis, ech) = ideal_slice(p, n, d, l);
    Ok(basis.len() - ech.rank())
}

/// Product `P_1^{i_1} ... P_n^{i_n}`, or `None` for the zero tuple.
struct PowerTable {
    powers: Vec<Vec<HomForm>>, // powers[s][e-1] = P_s^e
}

impl PowerTable {
    fn new(p: &[HomForm], top: u32) -> Self {
        let powers = p
            .iter()
            .map(|f| {
                let mut v: Vec<HomForm> = Vec::with_capacity(top as usize);
                for e in 1..=top {
                    let next = match v.last() {
                        None => f.clone(),
                        Some(prev) => prev.mul(f),
                    };
                    v.push(next);
                    let _ = e;
                }
                v
            })
            .collect();
        PowerTable { powers }
    }

    fn product(&self, tuple: &[u32]) -> Option<HomForm> {
        let mut acc: Option<HomForm> = None;
        for (s, &e) in tuple.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let f = &self.powers[s][e as usize - 1];
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => a.mul(f),
            });
        }
        acc
    }
}

/// Basis element `psi = P^(i)_k * h` of `V_L`.
#[derive(Debug, Clone, Serialize)]
pub struct BasisElement {
    /// 0-based index of the staircase tuple.
    pub tuple: usize,
    /// The monomial factor `h`.
    pub monomial: Vec<u32>,
    /// Exact coefficients of `psi` over the graded-lex monomial basis of `V_L`.
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<BigRational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationData {
    pub l: u32,
    pub d: u32,
    pub n: usize,
    pub tuples: Vec<Vec<u32>>,
    /// Jump dimensions `m_k`, one per tuple.
    pub m: Vec<u64>,
    /// Ordered so the last `m_s + ... + m_K` elements span `W_(i)_s`.
    pub basis: Vec<BasisElement>,
}

impl FiltrationData {
    pub fn u(&self) -> usize {
        self.basis.len()
    }

    pub fn k(&self) -> usize {
        self.tuples.len()
    }
}

fn tuple_norm(t: &[u32]) -> u32 {
    t.iter().sum()
}

/// Build the staircase basis from the last tuple downward and cross-check
/// every jump against [`lemma33_count`].
pub fn build_filtration(p: &[HomForm], l: u32) -> Result<FiltrationData> {
    let (n, d) = check_generators(p)?;
    if !l.is_multiple_of(d) {
        return Err(Error::domain(format!("L = {l} is not divisible by d = {d}")));
    }
    let top = l / d;
    let tuples = staircase_tuples(n, top);
    let basis_l = MonomialBasis::new(n, l);
    let table = PowerTable::new(p, top);
    let mut ech = Echelon::new(basis_l.len());
    let mut m = vec![0u64; tuples.len()];
    let mut rev_basis = Vec::with_capacity(basis_l.len());
    for (k, tuple) in tuples.iter().enumerate().rev() {
        let prod = table.product(tuple);
        let rest = MonomialBasis::new(n, l - d * tuple_norm(tuple));
        let mut added = Vec::new();
        for h in rest.monomials() {
            let psi = match &prod {
                Some(f) => f.mul_monomial(h),
                None => HomForm::new(n, l, [(h.clone(), BigRational::one())])?,
            };
            let dense = psi.dense(&basis_l);
            if ech.insert(primitive_row(&dense)) {
                added.push(BasisElement {
                    tuple: k,
                    monomial: h.0.clone(),
                    coeffs: dense,
                });
            }
        }
        m[k] = added.len() as u64;
        rev_basis.push(added);
    }
    let basis: Vec<BasisElement> = rev_basis.into_iter().rev().flatten().collect();

    let u = binomial(l as u64 + n as u64, n as u64);
    if basis.len() as u64 != u {
        return Err(Error::Consistency(format!(
            "filtration spans {} of dim V_L = {u}",
            basis.len()
        )));
    }
    let last = tuples.len() - 1;
    for (k, tuple) in tuples.iter().enumerate() {
        let expected = if k == last {
            1
        } else {
            lemma33_count(n, d, (l - d * tuple_norm(tuple)) as u64)
        };
        if m[k] != expected {
            return Err(Error::Consistency(format!(
                "jump at tuple {tuple:?} has dimension {} but the count predicts {expected}",
                m[k]
            )));
        }
    }
    Ok(FiltrationData {
        l,
        d,
        n,
        tuples,
        m,
        basis,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationStats {
    pub u: u64,
    pub k: u64,
    pub a: u64,
    /// `sum_k m_k i_{sk}` for each coordinate `s`; all equal to `a`.
    pub a_by_coordinate: Vec<u64>,
}

/// `u = dim V_L`, `K` = number of tuples, and `a = sum_k m_k i_{1k}`, all by counting.
pub fn filtration_stats(n: usize, d: u32, l: u32) -> Result<FiltrationStats> {
    if n < 1 || d < 1 {
        return Err(Error::domain("n and d must be at least 1"));
    }
    if !l.is_multiple_of(d) {
        return Err(Error::domain(format!("L = {l} is not divisible by d = {d}")));
    }
    let top = l / d;
    let tuples = staircase_tuples(n, top);
    let last = tuples.len() - 1;
    let m_of: Vec<u64> = (0..=top)
        .map(|norm| lemma33_count(n, d, (l - d * norm) as u64))
        .collect();
    let mut a_by = vec![0u64; n];
    for (k, t) in tuples.iter().enumerate() {
        let m = if k == last { 1 } else { m_of[tuple_norm(t) as usize] };
        for (s, &e) in t.iter().enumerate() {
            a_by[s] += m * e as u64;
        }
    }
    Ok(FiltrationStats {
        u: binomial(l as u64 + n as u64, n as u64),
        k: tuples.len() as u64,
        a: a_by[0],
        a_by_coordinate: a_by,
    })
}

/// Whether the kernel of `gamma -> [P^(i) gamma]` in `W_(i)/W_(i')` equals
/// `(P_1..P_n) ∩ V_{L - d||(i)||}`.
pub fn kernel_claim_check(p: &[HomForm], tuple: &[u32], l: u32) -> Result<bool> {
    let (n, d) = check_generators(p)?;
    if tuple.len() != n {
        return Err(Error::domain("tuple length differs from n"));
    }
    if !l.is_multiple_of(d) {
        return Err(Error::domain(format!("L = {l} is not divisible by d = {d}")));
    }
    let norm = tuple_norm(tuple);
    if d * norm >= l {
        return Err(Error::domain("the tuple must satisfy d * ||i|| < L"));
    }
    let top = l / d;
    let basis_l = MonomialBasis::new(n, l);
    let table = PowerTable::new(p, top);

    // W_(i'): everything strictly after (i)
    let mut tail = Echelon::new(basis_l.len());
    for t in staircase_tuples(n, top).iter().filter(|t| t.as_slice() > tuple) {
        let prod = table.product(t).expect("nonzero tuple after (i)");
        for h in MonomialBasis::new(n, l - d * tuple_norm(t)).monomials() {
            tail.insert(prod.mul_monomial(h).dense_primitive(&basis_l));
        }
    }

    let r = l - d * norm;
    let basis_r = MonomialBasis::new(n, r);
    let prod = table.product(tuple);
    // one common scale for every image keeps the kernel coordinates exact
    let prod_int: Option<HomForm> = match &prod {
        Some(f) => {
            let base = MonomialBasis::new(n, f.degree());
            let ints = f.dense_primitive(&base);
            let coeffs = base
                .monomials()
                .iter()
                .zip(ints)
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k.clone(), BigRational::from_integer(c)));
            Some(HomForm::new(n, f.degree(), coeffs)?)
        }
        None => None,
    };
    let image = |h: &MultiIndex| -> Vec<BigInt> {
        match &prod_int {
            Some(f) => f
                .mul_monomial(h)
                .dense(&basis_l)
                .into_iter()
                .map(|c| c.to_integer())
                .collect(),
            None => {
                let mut v = vec![BigInt::zero(); basis_l.len()];
                v[basis_l.index_of(h).expect("monomial")] = BigInt::one();
                v
            }
        }
    };
    let mut rows: Vec<Vec<BigInt>> = basis_r.monomials().iter().map(image).collect();
    rows.extend(tail.rows().map(|r| r.to_vec()));
    let mut kernel = Echelon::new(basis_r.len());
    for v in left_nullspace(&rows, basis_l.len()) {
        kernel.insert(v[..basis_r.len()].to_vec());
    }

    let (_, ideal) = ideal_slice(p, n, d, r);
    if kernel.rank() != ideal.rank() {
        return Ok(false);
    }
    let inside = kernel.rows().all(|row| ideal.contains(row));
    Ok(inside)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChooseL {
    pub l: u32,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
}

fn ser_rational<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `(L u + eps') / (d a)` for a given `L`.
pub fn l_ratio(n: usize, d: u32, l: u32, eps_prime: &BigRational) -> Result<BigRational> {
    let st = filtration_stats(n, d, l)?;
    let num = BigRational::from_integer(BigInt::from(l as u64 * st.u)) + eps_prime;
    Ok(num / BigRational::from_integer(BigInt::from(d as u64 * st.a)))
}

/// `(n + 1) + eps / (2 (N - n + 1))`.
pub fn l_bound(n: usize, n_sub: usize, eps: &BigRational) -> BigRational {
    BigRational::from_integer(BigInt::from(n + 1))
        + eps / BigRational::from_integer(BigInt::from(2 * (n_sub - n + 1)))
}

pub const MAX_L_STEPS: u32 = 100_000;

/// Smallest multiple `L` of `d` whose ratio is strictly below the bound.
pub fn choose_l(
    n: usize,
    d: u32,
    n_sub: usize,
    eps: &BigRational,
    eps_prime: &BigRational,
) -> Result<ChooseL> {
    if n < 1 || d < 1 || n_sub < n {
        return Err(Error::domain("need N >= n >= 1 and d >= 1"));
    }
    if *eps <= BigRational::zero() || *eps_prime <= BigRational::zero() {
        return Err(Error::domain("epsilon and epsilon' must be positive"));
    }
    let bound = l_bound(n, n_sub, eps);
    for step in 1..=MAX_L_STEPS {
        let l = d * step;
        let ratio = l_ratio(n, d, l, eps_prime)?;
        if ratio < bound {
            return Ok(ChooseL { l, ratio, bound });
        }
    }
    Err(Error::SearchExhausted(format!("no L <= {} d satisfies the bound", MAX_L_STEPS)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, s: &str) -> HomForm {
        HomForm::parse(n, s).unwrap()
    }

    fn brute_count(n: usize, d: u32, m: u64) -> u64 {
        let total = (d as u64).pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let mut sum = 0;
                for _ in 0..n {
                    sum += c % d as u64;
                    c /= d as u64;
                }
                sum <= m
            })
            .count() as u64
    }

    #[test]
    fn count_examples() {
        assert_eq!(lemma33_count(2, 2, 4), 4);
        assert_eq!(lemma33_count(2, 2, 1), 3);
        assert_eq!(lemma33_count(1, 3, 2), 3);
        for n in 1..=3 {
            for d in 1..=4 {
                for m in 0..12 {
                    assert_eq!(lemma33_count(n, d, m), brute_count(n, d, m));
                }
            }
        }
    }

    #[test]
    fn saturation() {
        for n in 1..=3usize {
            for d in 1..=3u32 {
                for m in (n as u64 * (d as u64 - 1))..20 {
                    assert_eq!(lemma33_count(n, d, m), (d as u64).pow(n as u32));
                }
            }
        }
    }

    #[test]
    fn tuples_are_lex_ordered() {
        let t = staircase_tuples(2, 1);
        assert_eq!(t, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(staircase_tuples(3, 4).len() as u64, binomial(7, 3));
    }

    #[test]
    fn quotient_examples() {
        let p = [form(2, "x0^2"), form(2, "x1^2")];
        assert_eq!(quotient_dim_rank(&p, 2).unwrap(), 4);
        assert_eq!(quotient_dim_rank(&p, 4).unwrap(), 4);
        assert_eq!(quotient_dim_rank(&[form(1, "x0")], 3).unwrap(), 1);
        assert_eq!(quotient_dim_rank(&p, 1).unwrap(), 3);
    }

    #[test]
    fn filtration_examples() {
        let f = build_filtration(&[form(1, "x0^2")], 4).unwrap();
        assert_eq!(f.m, vec![2, 2, 1]);
        assert_eq!(f.u(), 5);
        let f = build_filtration(&[form(1, "x0")], 2).unwrap();
        assert_eq!(f.m, vec![1, 1, 1]);
        assert_eq!(f.k(), 3);
        let f = build_filtration(&[form(2, "x0"), form(2, "x1")], 2).unwrap();
        assert_eq!(f.m.iter().sum::<u64>(), 6);
        assert_eq!(f.k(), 6);
        assert!(build_filtration(&[form(1, "x0^2")], 3).is_err());
    }

    #[test]
    fn basis_elements_factor_as_products() {
        let p = [form(2, "x0^2 + x1*x2"), form(2, "x1^2 - x2^2")];
        let f = build_filtration(&p, 4).unwrap();
        let basis_l = MonomialBasis::new(2, 4);
        for b in &f.basis {
            let t = &f.tuples[b.tuple];
            let mut prod: Option<HomForm> = None;
            for (s, &e) in t.iter().enumerate() {
                if e > 0 {
                    let f = p[s].pow(e);
                    prod = Some(match prod {
                        None => f,
                        Some(a) => a.mul(&f),
                    });
                }
            }
            let h = MultiIndex(b.monomial.clone());
            let prod = match prod {
                Some(f) => f.mul_monomial(&h),
                None => HomForm::new(2, 4, [(h, BigRational::one())]).unwrap(),
            };
            assert_eq!(prod.dense(&basis_l), b.coeffs);
        }
        // tail of the basis spans W_(i)_K = P_1^{L/d}
        assert_eq!(f.basis.last().unwrap().tuple, f.k() - 1);
    }

    #[test]
    fn stats_examples() {
        let s = filtration_stats(1, 1, 3).unwrap();
        assert_eq!((s.u, s.k, s.a), (4, 4, 6));
        let s = filtration_stats(2, 1, 3).unwrap();
        assert_eq!((s.u, s.k, s.a), (10, 10, 10));
        assert_eq!(s.a_by_coordinate, vec![10, 10]);
        let s = filtration_stats(1, 2, 4).unwrap();
        assert_eq!((s.u, s.k, s.a), (5, 3, 4));
        assert!(filtration_stats(1, 2, 3).is_err());
    }

    #[test]
    fn kernel_claim_examples() {
        assert!(kernel_claim_check(&[form(1, "x0^2")], &[1], 4).unwrap());
        assert!(kernel_claim_check(&[form(2, "x0"), form(2, "x1")], &[0, 1], 2).unwrap());
        assert!(kernel_claim_check(&[form(1, "x0^2")], &[0], 2).unwrap());
        assert!(kernel_claim_check(&[form(1, "x0^2")], &[2], 4).is_err());
    }

    #[test]
    fn kernel_claim_detects_non_regular_sequence() {
        // x0*x1, x0*x2 share the factor x0, so they are not a regular sequence
        let p = [form(2, "x0*x1"), form(2, "x0*x2")];
        let all_true = staircase_tuples(2, 2)
            .iter()
            .filter(|t| 2 * tuple_norm(t) < 4)
            .all(|t| kernel_claim_check(&p, t, 4).unwrap());
        assert!(!all_true);
    }

    #[test]
    fn choose_l_examples() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let c = choose_l(1, 1, 1, &q(1, 2), &q(1, 1)).unwrap();
        assert_eq!((c.l, c.ratio.clone()), (3, q(13, 6)));
        let c = choose_l(1, 1, 1, &q(2, 1), &q(1, 1)).unwrap();
        assert_eq!((c.l, c.ratio.clone()), (2, q(7, 3)));
        for (n, d, nn) in [(1, 2, 2), (2, 1, 3), (2, 2, 2)] {
            let c = choose_l(n, d, nn, &q(1, 3), &q(1, 1)).unwrap();
            assert!(c.ratio < c.bound);
            if c.l > d {
                assert!(l_ratio(n, d, c.l - d, &q(1, 1)).unwrap() >= c.bound);
            }
        }
    }
}
