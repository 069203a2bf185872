//! Multi-indices, projective points, homogeneous forms, their local norms
//! and heights, Weil multipliers, and common-degree normalization.
//!
//! Monomials of a fixed degree are always ordered graded-lexicographically
//! with `x0` dominant: `x0^d, x0^(d-1) x1, ..., xn^d`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::places::{
    local_norm_unchecked, pow_rational, prime_divisors, ExactPositive, HeightKernel, Place,
};
use crate::search::lattice_search;

/// Exponent vector `(i_0, ..., i_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// `(d, 0, ..., 0)` in `n + 1` variables.
    pub fn leading(n: usize, d: u32) -> Self {
        let mut e = vec![0; n + 1];
        e[0] = d;
        MultiIndex(e)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn push_tuples(prefix: &mut Vec<u32>, remaining_vars: usize, d: u32, out: &mut Vec<MultiIndex>) {
    if remaining_vars == 1 {
        prefix.push(d);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for first in (0..=d).rev() {
        prefix.push(first);
        push_tuples(prefix, remaining_vars - 1, d - first, out);
        prefix.pop();
    }
}

/// All exponent vectors of degree `d` in `n + 1` variables, graded-lex order.
pub fn enumerate_td(n: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    push_tuples(&mut Vec::with_capacity(n + 1), n + 1, d, &mut out);
    out
}

/// `binom(a, b)` as a `u64`.
pub fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
}

/// Monomial basis of `V_d` with a position lookup.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    pub n: usize,
    pub d: u32,
    monomials: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: u32) -> Self {
        let monomials = enumerate_td(n, d);
        let position = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            n,
            d,
            monomials,
            position,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn index_of(&self, m: &MultiIndex) -> Option<usize> {
        self.position.get(m).copied()
    }
}

/// Canonical projective point: coprime integers, first nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Dimension `n` of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn from_integers<I: Into<BigInt>>(raw: impl IntoIterator<Item = I>) -> Result<Self> {
        let raw: Vec<BigRational> = raw
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        normalize_point(&raw)
    }

    /// `||x||_v`; at finite places this is 1 for a canonical representative.
    pub fn norm(&self, v: Place) -> ExactPositive {
        match v {
            Place::Archimedean => {
                ExactPositive::new(height_point(self).value().clone()).expect("nonzero point")
            }
            Place::Finite(_) => ExactPositive::one(),
        }
    }

    /// `||x||_v` computed from coordinates without using canonical form.
    pub fn norm_from_coords(&self, v: Place) -> ExactPositive {
        self.coords
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| local_norm_unchecked(v, &BigRational::from_integer(c.clone())))
            .max()
            .expect("nonzero point")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Clear denominators, remove the common factor and make the first nonzero
/// coordinate positive.
pub fn normalize_point(raw: &[BigRational]) -> Result<ProjectivePoint> {
    if raw.len() < 2 {
        return Err(Error::domain("a projective point needs at least two coordinates"));
    }
    let first = raw
        .iter()
        .find(|c| !c.is_zero())
        .ok_or_else(|| Error::domain("all-zero coordinates"))?;
    let lcm = raw
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = raw
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if first.is_negative() {
        g = -g;
    }
    Ok(ProjectivePoint {
        coords: ints.into_iter().map(|c| c / &g).collect(),
    })
}

/// `H(x) = max |x_i|` for the canonical representative.
pub fn height_point(x: &ProjectivePoint) -> HeightKernel {
    let m = x.coords.iter().map(|c| c.abs()).max().expect("nonempty");
    HeightKernel::from_integer(m).expect("nonzero point")
}

/// Homogeneous form of degree `d` in `n + 1` variables with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomForm {
    n: usize,
    d: u32,
    coeffs: BTreeMap<MultiIndex, BigRational>,
}

impl HomForm {
    pub fn new(
        n: usize,
        d: u32,
        coeffs: impl IntoIterator<Item = (MultiIndex, BigRational)>,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("dimension n must be at least 1"));
        }
        if d < 1 {
            return Err(Error::domain("degree must be at least 1"));
        }
        let mut map = BTreeMap::new();
        for (idx, c) in coeffs {
            if idx.nvars() != n + 1 {
                return Err(Error::domain(format!(
                    "multi-index {:?} has {} entries, expected {}",
                    idx.0,
                    idx.nvars(),
                    n + 1
                )));
            }
            if idx.degree() != d {
                return Err(Error::domain(format!(
                    "multi-index {:?} has degree {}, expected {d}",
                    idx.0,
                    idx.degree()
                )));
            }
            let slot: &mut BigRational = map.entry(idx).or_insert_with(BigRational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::domain("all coefficients are zero"));
        }
        Ok(HomForm { n, d, coeffs: map })
    }

    /// Parse expressions like `x0^2 - 3/2*x1*x2 + x2^2`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut terms: Vec<(MultiIndex, BigRational)> = Vec::new();
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') && !cur.ends_with('*') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut degree = None;
        for piece in pieces.iter().filter(|p| !p.is_empty()) {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, &piece[..]),
            };
            let mut coeff = BigRational::from_integer(sign.into());
            let mut exps = vec![0u32; n + 1];
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, pow) = match var.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad_term(piece))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad_term(piece))?;
                    if idx > n {
                        return Err(Error::domain(format!("variable x{idx} out of range in `{piece}`")));
                    }
                    exps[idx] += pow;
                } else {
                    coeff *= parse_rational(factor).ok_or_else(|| bad_term(piece))?;
                }
            }
            let idx = MultiIndex(exps);
            match degree {
                None => degree = Some(idx.degree()),
                Some(d) if d != idx.degree() => {
                    return Err(Error::domain(format!("`{text}` is not homogeneous")))
                }
                _ => {}
            }
            terms.push((idx, coeff));
        }
        let d = degree.ok_or_else(|| Error::domain("empty form"))?;
        HomForm::new(n, d, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, idx: &MultiIndex) -> BigRational {
        self.coeffs.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Result<HomForm> {
        HomForm::new(self.n, self.d, self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn mul(&self, other: &HomForm) -> HomForm {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                *out.entry(a.add(b)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        HomForm {
            n: self.n,
            d: self.d + other.d,
            coeffs: out,
        }
    }

    pub fn mul_monomial(&self, m: &MultiIndex) -> HomForm {
        HomForm {
            n: self.n,
            d: self.d + m.degree(),
            coeffs: self.coeffs.iter().map(|(k, v)| (k.add(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> HomForm {
        assert!(e >= 1, "power of a form must be at least 1");
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `sum c_j F_j` over forms of a common degree; `None` when it cancels to zero.
    pub fn linear_combination(terms: &[(BigRational, &HomForm)]) -> Option<HomForm> {
        let (_, first) = terms.first()?;
        let mut out: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
        for (c, f) in terms {
            assert_eq!((f.n, f.d), (first.n, first.d), "mixed forms in linear combination");
            for (k, v) in &f.coeffs {
                *out.entry(k.clone()).or_insert_with(BigRational::zero) += c * v;
            }
        }
        out.retain(|_, c| !c.is_zero());
        (!out.is_empty()).then_some(HomForm {
            n: first.n,
            d: first.d,
            coeffs: out,
        })
    }

    /// Coefficient vector over `basis` (which must have this form's degree).
    pub fn dense(&self, basis: &MonomialBasis) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); basis.len()];
        for (k, c) in &self.coeffs {
            v[basis.index_of(k).expect("monomial in basis")] = c.clone();
        }
        v
    }

    /// Integer coefficient vector over `basis`, scaled to be primitive.
    pub fn dense_primitive(&self, basis: &MonomialBasis) -> Vec<BigInt> {
        crate::linalg::primitive_row(&self.dense(basis))
    }

    /// Sum of `a_I x^I` at rational coordinates.
    pub fn evaluate_raw(&self, x: &[BigRational]) -> Result<BigRational> {
        if x.len() != self.n + 1 {
            return Err(Error::domain(format!(
                "point has {} coordinates, form expects {}",
                x.len(),
                self.n + 1
            )));
        }
        let mut acc = BigRational::zero();
        for (idx, c) in &self.coeffs {
            let mut term = c.clone();
            for (xi, &e) in x.iter().zip(&idx.0) {
                if e > 0 {
                    term *= pow_rational(xi, e);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// `Q(M y)` where `images[s]` is the linear form substituted for `x_s`.
    pub fn substitute_linear(&self, images: &[HomForm]) -> Result<HomForm> {
        if images.len() != self.n + 1 || images.iter().any(|f| f.d != 1 || f.n != self.n) {
            return Err(Error::domain("substitution needs n+1 linear forms"));
        }
        let mut out: Option<HomForm> = None;
        for (idx, c) in &self.coeffs {
            let mut term: Option<HomForm> = None;
            for (s, &e) in idx.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = images[s].pow(e);
                term = Some(match term {
                    None => p,
                    Some(t) => t.mul(&p),
                });
            }
            let term = term.expect("degree >= 1").scale_unchecked(c);
            out = Some(match out {
                None => term,
                Some(acc) => acc.add_unchecked(&term),
            });
        }
        let out = out.expect("nonempty form");
        if out.coeffs.is_empty() {
            return Err(Error::domain("substitution produced the zero form (singular map)"));
        }
        Ok(out)
    }

    fn scale_unchecked(&self, c: &BigRational) -> HomForm {
        HomForm {
            n: self.n,
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    fn add_unchecked(&self, other: &HomForm) -> HomForm {
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            *coeffs.entry(k.clone()).or_insert_with(BigRational::zero) += v;
        }
        coeffs.retain(|_, c| !c.is_zero());
        HomForm {
            n: self.n,
            d: self.d,
            coeffs,
        }
    }

    /// `||Q||_v`, the maximum of `||a_I||_v`.
    pub fn sup_norm(&self, v: Place) -> ExactPositive {
        self.coeffs
            .values()
            .map(|c| local_norm_unchecked(v, c))
            .max()
            .expect("nonzero form")
    }

    /// Places where some coefficient has norm different from 1.
    pub fn coefficient_places(&self) -> Result<BTreeSet<Place>> {
        let mut out = BTreeSet::from([Place::Archimedean]);
        for c in self.coeffs.values() {
            for p in prime_divisors(c.numer())?.into_iter().chain(prime_divisors(c.denom())?) {
                out.insert(Place::Finite(p));
            }
        }
        Ok(out)
    }
}

fn bad_term(piece: &str) -> Error {
    Error::domain(format!("cannot parse term `{piece}`"))
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl fmt::Display for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let vars: Vec<String> = idx
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `Q(x)` at a canonical point.
pub fn evaluate(q: &HomForm, x: &ProjectivePoint) -> Result<BigRational> {
    let raw: Vec<BigRational> = x
        .coords
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    q.evaluate_raw(&raw)
}

/// Per-place sup norms on their support together with `H(Q)`.
pub fn norms_and_height(q: &HomForm) -> Result<(BTreeMap<Place, ExactPositive>, HeightKernel)> {
    let mut norms = BTreeMap::new();
    let mut h = BigRational::one();
    for v in q.coefficient_places()? {
        let norm = q.sup_norm(v);
        if !norm.is_one() {
            h *= norm.value();
            norms.insert(v, norm);
        }
    }
    Ok((norms, HeightKernel::new(h)?))
}

/// `H(Q)` via the primitive integer multiple of the coefficient vector.
pub fn height_form(q: &HomForm) -> HeightKernel {
    let lcm = q.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q
        .coeffs
        .values()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let m = ints.iter().map(|c| (c / &g).abs()).max().expect("nonzero");
    HeightKernel::from_integer(m).expect("nonzero form")
}

/// Exact `||x||_v^d * ||Q||_v / ||Q(x)||_v`, whose logarithm is the Weil function.
pub fn weil_multiplier(q: &HomForm, v: Place, x: &ProjectivePoint) -> Result<ExactPositive> {
    let value = evaluate(q, x)?;
    if value.is_zero() {
        return Err(Error::PointOnHypersurface);
    }
    Ok(weil_multiplier_with_value(q, v, x, &value))
}

pub(crate) fn weil_multiplier_with_value(
    q: &HomForm,
    v: Place,
    x: &ProjectivePoint,
    value: &BigRational,
) -> ExactPositive {
    let xn = x.norm(v).pow(q.degree());
    let qn = q.sup_norm(v);
    &(&xn * &qn) / &local_norm_unchecked(v, value)
}

/// Product of Weil multipliers over every place where one can differ from 1.
pub fn first_main_identity(q: &HomForm, x: &ProjectivePoint) -> Result<BigRational> {
    let value = evaluate(q, x)?;
    if value.is_zero() {
        return Err(Error::PointOnHypersurface);
    }
    let mut places = q.coefficient_places()?;
    places.extend(crate::places::support(&value)?);
    Ok(places.into_iter().fold(BigRational::one(), |acc, v| {
        acc * weil_multiplier_with_value(q, v, x, &value).into_inner()
    }))
}

/// Bring every form to degree `lcm(d_i)` with coefficient 1 at `x0^d`:
/// `(Q_i / a_{i,(d_i,0..0)})^(d / d_i)`.
pub fn tilde_normalize(family: &[HomForm]) -> Result<Vec<HomForm>> {
    let d = common_degree(family)?;
    family
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let lead = q.coeff(&MultiIndex::leading(q.n, q.d));
            if lead.is_zero() {
                return Err(Error::CoordinateChangeRequired(i));
            }
            Ok(q.scale(&lead.recip())?.pow(d / q.d))
        })
        .collect()
}

/// `lcm` of the degrees of a nonempty family of forms in a common dimension.
pub fn common_degree(family: &[HomForm]) -> Result<u32> {
    let first = family.first().ok_or_else(|| Error::domain("empty family"))?;
    if family.iter().any(|q| q.n != first.n) {
        return Err(Error::domain("forms live in different dimensions"));
    }
    Ok(family.iter().fold(1u32, |acc, q| acc.lcm(&q.d)))
}

/// Raise every form to a power so all share the degree `lcm(d_i)`; zero sets are unchanged.
pub fn to_common_degree(family: &[HomForm]) -> Result<Vec<HomForm>> {
    let d = common_degree(family)?;
    Ok(family.iter().map(|q| q.pow(d / q.d)).collect())
}

/// Unimodular change `x = M y` where `M` is the identity with first column
/// `(1, k_1, ..., k_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateChange {
    pub shear: Vec<i64>,
}

impl CoordinateChange {
    pub fn identity(n: usize) -> Self {
        CoordinateChange { shear: vec![0; n] }
    }

    pub fn is_identity(&self) -> bool {
        self.shear.iter().all(|&k| k == 0)
    }

    fn images(&self) -> Vec<HomForm> {
        let n = self.shear.len();
        let var = |s: usize| {
            let mut e = vec![0; n + 1];
            e[s] = 1;
            MultiIndex(e)
        };
        let mut out = vec![HomForm::new(n, 1, [(var(0), BigRational::one())]).expect("x0")];
        for (j, &k) in self.shear.iter().enumerate() {
            let terms = [
                (var(j + 1), BigRational::one()),
                (var(0), BigRational::from_integer(k.into())),
            ];
            out.push(HomForm::new(n, 1, terms).expect("linear form"));
        }
        out
    }

    /// The form in the new coordinates, `Q(M y)`.
    pub fn apply_form(&self, q: &HomForm) -> Result<HomForm> {
        q.substitute_linear(&self.images())
    }

    /// New coordinates `y = M^{-1} x` of a point.
    pub fn apply_point(&self, x: &ProjectivePoint) -> Result<ProjectivePoint> {
        let x0 = &x.coords[0];
        let mut raw = vec![BigRational::from_integer(x0.clone())];
        for (j, &k) in self.shear.iter().enumerate() {
            raw.push(BigRational::from_integer(&x.coords[j + 1] - x0 * BigInt::from(k)));
        }
        normalize_point(&raw)
    }
}

/// First coordinate change (identity, then shears by radius and lexicographic
/// order) under which every form has a nonzero `x0^d` coefficient.
pub fn find_coordinate_change(family: &[HomForm], max_radius: i64) -> Result<CoordinateChange> {
    let n = family.first().ok_or_else(|| Error::domain("empty family"))?.n;
    let ok = |shear: &[i64]| -> Result<bool> {
        let mut col = vec![BigRational::one()];
        col.extend(shear.iter().map(|&k| BigRational::from_integer(k.into())));
        for q in family {
            if q.evaluate_raw(&col)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let identity = vec![0; n];
    if ok(&identity)? {
        return Ok(CoordinateChange { shear: identity });
    }
    for shear in lattice_search(n, max_radius) {
        if ok(&shear)? {
            return Ok(CoordinateChange { shear });
        }
    }
    Err(Error::SearchExhausted(format!(
        "no coordinate change with shear radius <= {max_radius}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn form(n: usize, s: &str) -> HomForm {
        HomForm::parse(n, s).unwrap()
    }

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_integers(c.iter().copied()).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_td(2, 2).len(), 6);
        let e: Vec<Vec<u32>> = enumerate_td(1, 3).into_iter().map(|m| m.0).collect();
        assert_eq!(e, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(enumerate_td(3, 1).len(), 4);
        for n in 1..=4 {
            for d in 1..=6u32 {
                assert_eq!(enumerate_td(n, d).len() as u64, binomial(d as u64 + n as u64, n as u64));
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_by_ord() {
        let e = enumerate_td(2, 3);
        assert!(e.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(pt(&[4, 6, 10]).coords(), &[2.into(), 3.into(), 5.into()]);
        assert_eq!(pt(&[0, -3, 0]).coords(), &[0.into(), 1.into(), 0.into()]);
        let p = normalize_point(&[r(1, 2), r(1, 3)]).unwrap();
        assert_eq!(p.coords(), &[3.into(), 2.into()]);
        assert!(normalize_point(&[r(0, 1), r(0, 1)]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&form(2, "x0^2 - x1*x2"), &pt(&[1, 2, 3])).unwrap(), r(-5, 1));
        assert_eq!(evaluate(&form(1, "x0*x1"), &pt(&[2, 3])).unwrap(), r(6, 1));
        assert_eq!(evaluate(&form(1, "x0 + x1"), &pt(&[1, -1])).unwrap(), r(0, 1));
        assert!(evaluate(&form(2, "x0"), &pt(&[1, 1])).is_err());
    }

    #[test]
    fn norms_examples() {
        let q = form(1, "6*x0^2 + 1/2*x1^2");
        let (norms, h) = norms_and_height(&q).unwrap();
        assert_eq!(norms[&Place::Archimedean].value(), &r(6, 1));
        assert_eq!(norms[&Place::Finite(2)].value(), &r(2, 1));
        assert!(!norms.contains_key(&Place::Finite(3)));
        assert_eq!(h.value(), &r(12, 1));
        assert_eq!(height_form(&q).value(), &r(12, 1));
        assert!(norms_and_height(&form(2, "x0^2 - x1*x2")).unwrap().1.is_one());
        assert!(norms_and_height(&form(1, "2/3*x0")).unwrap().1.is_one());
    }

    #[test]
    fn weil_examples() {
        let q = form(1, "x0*x1");
        let x = pt(&[2, 3]);
        assert_eq!(weil_multiplier(&q, Place::Archimedean, &x).unwrap().value(), &r(3, 2));
        assert_eq!(weil_multiplier(&q, Place::Finite(2), &x).unwrap().value(), &r(2, 1));
        assert_eq!(weil_multiplier(&q, Place::Finite(5), &x).unwrap().value(), &r(1, 1));
        assert!(matches!(
            weil_multiplier(&form(1, "x0 + x1"), Place::Archimedean, &pt(&[1, -1])),
            Err(Error::PointOnHypersurface)
        ));
    }

    #[test]
    fn first_main_examples() {
        assert_eq!(first_main_identity(&form(1, "x0*x1"), &pt(&[2, 3])).unwrap(), r(9, 1));
        assert_eq!(first_main_identity(&form(1, "x0"), &pt(&[1, 1])).unwrap(), r(1, 1));
        let q = form(1, "6*x0^2 + 1/2*x1^2");
        assert_eq!(first_main_identity(&q, &pt(&[1, 2])).unwrap(), r(48, 1));
    }

    #[test]
    fn tilde_examples() {
        let fam = [form(1, "2*x0 + x1"), form(1, "3*x0^2 + x1^2")];
        let t = tilde_normalize(&fam).unwrap();
        assert_eq!(t[0], form(1, "x0^2 + x0*x1 + 1/4*x1^2"));
        assert_eq!(t[1], form(1, "x0^2 + 1/3*x1^2"));
        let single = [form(2, "x0^2 - x1*x2")];
        assert_eq!(tilde_normalize(&single).unwrap()[0], single[0]);
        let fam = [form(1, "x0"), form(1, "x1^2 + x0^2")];
        let t = tilde_normalize(&fam).unwrap();
        assert_eq!(t, vec![form(1, "x0^2"), form(1, "x0^2 + x1^2")]);
        assert!(matches!(
            tilde_normalize(&[form(1, "x1")]),
            Err(Error::CoordinateChangeRequired(0))
        ));
    }

    #[test]
    fn coordinate_change_makes_leads_nonzero() {
        let fam = [form(1, "x1"), form(1, "x0*x1 + x1^2"), form(1, "x0 + x1")];
        let change = find_coordinate_change(&fam, 3).unwrap();
        assert!(!change.is_identity());
        let moved: Vec<HomForm> = fam.iter().map(|q| change.apply_form(q).unwrap()).collect();
        assert!(tilde_normalize(&moved).is_ok());
        let x = pt(&[3, 5]);
        let y = change.apply_point(&x).unwrap();
        for (q, q2) in fam.iter().zip(&moved) {
            // Q(x) and Q'(y) agree up to the scaling of the canonical representative.
            let a = evaluate(q, &x).unwrap();
            let b = evaluate(q2, &y).unwrap();
            assert_eq!(a.is_zero(), b.is_zero());
        }
    }

    #[test]
    fn parse_round_trip() {
        let q = form(2, "-3/2*x0^2 + x1*x2 - x2^2");
        assert_eq!(HomForm::parse(2, &q.to_string()).unwrap(), q);
        assert!(HomForm::parse(1, "x0^2 + x1").is_err());
        assert!(HomForm::parse(1, "x0 - x0").is_err());
    }
}
