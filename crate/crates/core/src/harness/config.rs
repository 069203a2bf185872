//! Campaign configuration documents.
//!
//! Validation walks the JSON tree by hand so that every error names the
//! offending field, e.g. `family.forms[1].degree`.

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::family::{Coefficient, IntPoly, MovingFamily, MovingForm, PointSequence};
use crate::places::Place;
use crate::projgeom::{parse_rational, MultiIndex};
use crate::real::DEFAULT_PRECISION;

pub const DEFAULT_SMALLNESS_THRESHOLD: (i64, i64) = (1, 20);
pub const DEFAULT_PROBE_DEGREE: u32 = 1;

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub n: usize,
    /// The subgeneral-position index `N`.
    pub n_sub: usize,
    pub epsilon: BigRational,
    pub epsilon_prime: BigRational,
    pub places: Vec<Place>,
    pub alpha_min: i64,
    pub alpha_max: i64,
    pub precision_bits: u32,
    pub family: MovingFamily,
    pub points: PointSequence,
    pub probe_degree: u32,
    pub smallness_threshold: BigRational,
    /// `alpha` values at which the position of the family is tested.
    pub position_samples: Vec<i64>,
}

impl CampaignConfig {
    pub fn alphas(&self) -> impl Iterator<Item = i64> {
        self.alpha_min..=self.alpha_max
    }

    pub fn range_len(&self) -> usize {
        (self.alpha_max - self.alpha_min + 1) as usize
    }

    /// `(N - n + 1)(n + 1) + eps`, or `n + 1 + eps` for hyperplane families.
    pub fn bound_constant(&self, hyperplane_mode: bool) -> BigRational {
        let base = if hyperplane_mode {
            self.n + 1
        } else {
            (self.n_sub - self.n + 1) * (self.n + 1)
        };
        BigRational::from_integer(BigInt::from(base)) + &self.epsilon
    }
}

pub fn load_config(path: &Path) -> Result<CampaignConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<CampaignConfig> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::config("$", e.to_string()))?;
    let root = doc
        .as_object()
        .ok_or_else(|| Error::config("$", "expected a JSON object"))?;

    let n = get_uint(root, "n", "n")? as usize;
    if n < 1 {
        return Err(Error::config("n", "must be at least 1"));
    }
    let n_sub = get_uint(root, "N", "N")? as usize;
    if n_sub < n {
        return Err(Error::config("N", format!("must be at least n = {n}")));
    }
    let epsilon = get_positive_rational(root, "epsilon")?;
    let epsilon_prime = match root.get("epsilon_prime") {
        None => BigRational::one(),
        Some(_) => get_positive_rational(root, "epsilon_prime")?,
    };
    let places = parse_places(require(root, "places", "places")?)?;
    let (alpha_min, alpha_max) = parse_range(require(root, "alpha_range", "alpha_range")?)?;
    let precision_bits = match root.get("precision_bits") {
        None => DEFAULT_PRECISION,
        Some(_) => {
            let b = get_uint(root, "precision_bits", "precision_bits")?;
            if !(16..=4096).contains(&b) {
                return Err(Error::config("precision_bits", "must lie in [16, 4096]"));
            }
            b as u32
        }
    };
    let probe_degree = match root.get("probe_degree") {
        None => DEFAULT_PROBE_DEGREE,
        Some(_) => get_uint(root, "probe_degree", "probe_degree")? as u32,
    };
    let smallness_threshold = match root.get("smallness_threshold") {
        None => BigRational::new(
            DEFAULT_SMALLNESS_THRESHOLD.0.into(),
            DEFAULT_SMALLNESS_THRESHOLD.1.into(),
        ),
        Some(_) => get_positive_rational(root, "smallness_threshold")?,
    };

    let range = (alpha_min, alpha_max);
    let family = parse_family(require(root, "family", "family")?, n, range)?;
    if family.q() < n_sub + 1 {
        return Err(Error::config(
            "family",
            format!("q = {} is smaller than N + 1 = {}", family.q(), n_sub + 1),
        ));
    }
    let points = parse_points(require(root, "points", "points")?, n, range)?;

    let position_samples = match root.get("position_samples") {
        None => default_samples(alpha_min, alpha_max),
        Some(v) => {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::config("position_samples", "expected an array of integers"))?;
            let mut out = Vec::with_capacity(arr.len());
            for (i, a) in arr.iter().enumerate() {
                let path = format!("position_samples[{i}]");
                let a = a.as_i64().ok_or_else(|| Error::config(&path, "expected an integer"))?;
                if a < alpha_min || a > alpha_max {
                    return Err(Error::config(&path, "sample lies outside alpha_range"));
                }
                out.push(a);
            }
            if out.is_empty() {
                return Err(Error::config("position_samples", "must not be empty"));
            }
            out
        }
    };

    Ok(CampaignConfig {
        n,
        n_sub,
        epsilon,
        epsilon_prime,
        places,
        alpha_min,
        alpha_max,
        precision_bits,
        family,
        points,
        probe_degree,
        smallness_threshold,
        position_samples,
    })
}

/// First, middle and last `alpha` of the range, deduplicated.
pub fn default_samples(lo: i64, hi: i64) -> Vec<i64> {
    let mut s = vec![lo, lo + (hi - lo) / 2, hi];
    s.dedup();
    s
}

fn require<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::config(path, "missing required field"))
}

fn get_uint(obj: &Map<String, Value>, key: &str, path: &str) -> Result<u64> {
    require(obj, key, path)?
        .as_u64()
        .ok_or_else(|| Error::config(path, "expected a non-negative integer"))
}

fn rational_value(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| Error::config(path, format!("cannot parse rational {s:?}")))
        }
        Value::Number(num) => match num.as_i64() {
            Some(i) => Ok(BigRational::from_integer(i.into())),
            None => parse_rational(&num.to_string())
                .ok_or_else(|| Error::config(path, "expected an integer or a rational string")),
        },
        _ => Err(Error::config(path, "expected an integer or a rational string")),
    }
}

fn integer_value(v: &Value, path: &str) -> Result<BigInt> {
    let q = rational_value(v, path)?;
    if !q.is_integer() {
        return Err(Error::config(path, "expected an integer"));
    }
    Ok(q.to_integer())
}

fn get_positive_rational(obj: &Map<String, Value>, key: &str) -> Result<BigRational> {
    let q = rational_value(require(obj, key, key)?, key)?;
    if q <= BigRational::zero() {
        return Err(Error::config(key, "must be positive"));
    }
    Ok(q)
}

fn parse_places(v: &Value) -> Result<Vec<Place>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::config("places", "expected an array"))?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(arr.len());
    for (i, p) in arr.iter().enumerate() {
        let path = format!("places[{i}]");
        let place = match p {
            Value::String(s) if s == "inf" => Place::Archimedean,
            Value::String(s) => s
                .parse::<u64>()
                .ok()
                .and_then(|p| Place::finite(p).ok())
                .ok_or_else(|| Error::config(&path, format!("{s:?} is neither \"inf\" nor a prime")))?,
            Value::Number(num) => num
                .as_u64()
                .and_then(|p| Place::finite(p).ok())
                .ok_or_else(|| Error::config(&path, format!("{num} is not a prime")))?,
            _ => return Err(Error::config(&path, "expected \"inf\" or a prime")),
        };
        if !seen.insert(place) {
            return Err(Error::config(&path, format!("duplicate place {place}")));
        }
        out.push(place);
    }
    if out.is_empty() {
        return Err(Error::config("places", "must not be empty"));
    }
    Ok(out)
}

fn parse_range(v: &Value) -> Result<(i64, i64)> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::config("alpha_range", "expected [alpha_min, alpha_max]"))?;
    let lo = arr[0]
        .as_i64()
        .ok_or_else(|| Error::config("alpha_range[0]", "expected an integer"))?;
    let hi = arr[1]
        .as_i64()
        .ok_or_else(|| Error::config("alpha_range[1]", "expected an integer"))?;
    if lo > hi {
        return Err(Error::config("alpha_range", "alpha_min exceeds alpha_max"));
    }
    if hi - lo >= 1_000_000 {
        return Err(Error::config("alpha_range", "range is too long"));
    }
    Ok((lo, hi))
}

fn parse_poly(v: &Value, path: &str) -> Result<IntPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::config(path, "expected an ascending-power integer list"))?;
    if arr.is_empty() {
        return Err(Error::config(path, "must not be empty"));
    }
    arr.iter()
        .enumerate()
        .map(|(i, c)| integer_value(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()
        .map(IntPoly)
}

fn parse_family(v: &Value, n: usize, range: (i64, i64)) -> Result<MovingFamily> {
    // accept either a bare list of forms or {"forms": [...]}
    let forms = match v {
        Value::Array(a) => a,
        Value::Object(o) => require(o, "forms", "family.forms")?
            .as_array()
            .ok_or_else(|| Error::config("family.forms", "expected an array"))?,
        _ => return Err(Error::config("family", "expected an array of forms")),
    };
    if forms.is_empty() {
        return Err(Error::config("family.forms", "empty family"));
    }
    let mut out = Vec::with_capacity(forms.len());
    for (j, f) in forms.iter().enumerate() {
        out.push(parse_form(f, n, range, &format!("family.forms[{j}]"))?);
    }
    Ok(MovingFamily { n, forms: out })
}

fn parse_form(v: &Value, n: usize, range: (i64, i64), path: &str) -> Result<MovingForm> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::config(path, "expected an object"))?;
    let degree_path = format!("{path}.degree");
    let degree = get_uint(obj, "degree", &degree_path)? as u32;
    if degree < 1 {
        return Err(Error::config(&degree_path, "must be at least 1"));
    }
    let coeff_path = format!("{path}.coefficients");
    let entries = require(obj, "coefficients", &coeff_path)?
        .as_array()
        .ok_or_else(|| Error::config(&coeff_path, "expected an array"))?;
    let mut seen = BTreeSet::new();
    let mut coefficients = Vec::with_capacity(entries.len());
    for (k, e) in entries.iter().enumerate() {
        let epath = format!("{coeff_path}[{k}]");
        let eobj = e
            .as_object()
            .ok_or_else(|| Error::config(&epath, "expected an object"))?;
        let xpath = format!("{epath}.exponents");
        let exps = require(eobj, "exponents", &xpath)?
            .as_array()
            .ok_or_else(|| Error::config(&xpath, "expected an array"))?;
        if exps.len() != n + 1 {
            return Err(Error::config(&xpath, format!("expected {} exponents", n + 1)));
        }
        let exps: Vec<u32> = exps
            .iter()
            .map(|x| x.as_u64().map(|x| x as u32))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::config(&xpath, "exponents must be non-negative integers"))?;
        let index = MultiIndex(exps);
        if index.degree() != degree {
            return Err(Error::config(&xpath, format!("exponents do not sum to degree {degree}")));
        }
        if !seen.insert(index.clone()) {
            return Err(Error::config(&xpath, "duplicate monomial"));
        }
        let coefficient = if let Some(values) = eobj.get("values") {
            let vpath = format!("{epath}.values");
            let arr = values
                .as_array()
                .ok_or_else(|| Error::config(&vpath, "expected an array"))?;
            let len = (range.1 - range.0 + 1) as usize;
            if arr.len() != len {
                return Err(Error::config(&vpath, format!("expected {len} values, one per alpha")));
            }
            let values = arr
                .iter()
                .enumerate()
                .map(|(i, x)| rational_value(x, &format!("{vpath}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Coefficient::Explicit {
                alpha_min: range.0,
                values,
            }
        } else {
            let num = parse_poly(require(eobj, "num", &format!("{epath}.num"))?, &format!("{epath}.num"))?;
            let dpath = format!("{epath}.den");
            let den = match eobj.get("den") {
                None => IntPoly::constant(1),
                Some(d) => parse_poly(d, &dpath)?,
            };
            if den.is_zero() {
                return Err(Error::config(&dpath, "denominator is identically zero"));
            }
            if let Some(a) = (range.0..=range.1).find(|&a| den.eval(a).is_zero()) {
                return Err(Error::config(&dpath, format!("denominator root at α={a}")));
            }
            Coefficient::Rational { num, den }
        };
        coefficients.push((index, coefficient));
    }
    if coefficients.iter().all(|(_, c)| c.is_identically_zero()) {
        return Err(Error::config(&coeff_path, "form is identically zero"));
    }
    Ok(MovingForm {
        degree,
        coefficients,
    })
}

fn parse_points(v: &Value, n: usize, range: (i64, i64)) -> Result<PointSequence> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::config("points", "expected an object"))?;
    let kind = require(obj, "kind", "points.kind")?
        .as_str()
        .ok_or_else(|| Error::config("points.kind", "expected a string"))?;
    let seq = match kind {
        "exponential" => {
            let arr = require(obj, "bases", "points.bases")?
                .as_array()
                .ok_or_else(|| Error::config("points.bases", "expected an array"))?;
            if arr.len() != n + 1 {
                return Err(Error::config("points.bases", format!("expected {} bases", n + 1)));
            }
            let bases = arr
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let path = format!("points.bases[{i}]");
                    let b = integer_value(b, &path)?;
                    if b <= BigInt::zero() {
                        return Err(Error::config(&path, "bases must be positive"));
                    }
                    Ok(b)
                })
                .collect::<Result<Vec<_>>>()?;
            PointSequence::Exponential { bases }
        }
        "explicit" => {
            let arr = require(obj, "points", "points.points")?
                .as_array()
                .ok_or_else(|| Error::config("points.points", "expected an array"))?;
            let len = (range.1 - range.0 + 1) as usize;
            if arr.len() != len {
                return Err(Error::config("points.points", format!("expected {len} points, one per alpha")));
            }
            let mut points = Vec::with_capacity(len);
            for (i, p) in arr.iter().enumerate() {
                let path = format!("points.points[{i}]");
                let coords = p
                    .as_array()
                    .filter(|c| c.len() == n + 1)
                    .ok_or_else(|| Error::config(&path, format!("expected {} coordinates", n + 1)))?;
                let coords = coords
                    .iter()
                    .enumerate()
                    .map(|(k, c)| rational_value(c, &format!("{path}[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                points.push(coords);
            }
            PointSequence::Explicit {
                alpha_min: range.0,
                points,
            }
        }
        "polynomial" => {
            let arr = require(obj, "coords", "points.coords")?
                .as_array()
                .ok_or_else(|| Error::config("points.coords", "expected an array"))?;
            if arr.len() != n + 1 {
                return Err(Error::config("points.coords", format!("expected {} coordinates", n + 1)));
            }
            let coords = arr
                .iter()
                .enumerate()
                .map(|(i, c)| parse_poly(c, &format!("points.coords[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            PointSequence::Polynomial { coords }
        }
        other => {
            return Err(Error::config(
                "points.kind",
                format!("unknown kind {other:?}; expected exponential, explicit or polynomial"),
            ))
        }
    };
    for a in range.0..=range.1 {
        let raw = seq.raw(a).map_err(|e| Error::config("points", e.to_string()))?;
        if raw.iter().all(|c| c.is_zero()) {
            return Err(Error::config("points", format!("all coordinates vanish at α={a}")));
        }
    }
    Ok(seq)
}
