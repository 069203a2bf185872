//! Diagnostics for the non-degeneracy and smallness hypotheses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::campaign::REPORT_DIGITS;
use super::config::CampaignConfig;
use crate::error::{Error, Result};
use crate::family::PointSequence;
use crate::linalg::{nullspace, primitive_row};
use crate::projgeom::{binomial, height_form, height_point, HomForm, MonomialBasis};
use crate::real::Fixed;

pub const PROBE_LIMITATION: &str =
    "only degeneracy with constant coefficients is detected; forms with coefficients moving in alpha are not searched";

#[derive(Debug, Clone, Serialize)]
pub struct ProbeVerdict {
    pub degree: u32,
    pub samples: Vec<i64>,
    pub rank: usize,
    pub columns: usize,
    pub degenerate: bool,
    /// A form vanishing at every sampled point, when one exists.
    pub witness: Option<String>,
    pub limitation: String,
}

/// Rank of the matrix with rows `(x(alpha)^I)_{I in T_e}` over the samples.
pub fn nondegeneracy_probe(points: &PointSequence, e: u32, alphas: &[i64]) -> Result<ProbeVerdict> {
    let n = points.n();
    if n < 1 {
        return Err(Error::domain("point sequence has no coordinates"));
    }
    let columns = binomial(e as u64 + n as u64, n as u64) as usize;
    if alphas.len() < columns + 2 {
        return Err(Error::domain(format!(
            "need at least {} samples for degree {e}, got {}",
            columns + 2,
            alphas.len()
        )));
    }
    let basis = MonomialBasis::new(n, e);
    let rows: Vec<Vec<BigInt>> = alphas
        .iter()
        .map(|&a| -> Result<Vec<BigInt>> {
            let raw = points.raw(a)?;
            let row: Vec<BigRational> = basis
                .monomials()
                .iter()
                .map(|m| {
                    raw.iter()
                        .zip(&m.0)
                        .fold(BigRational::from_integer(1.into()), |acc, (x, &k)| {
                            acc * crate::places::pow_rational(x, k)
                        })
                })
                .collect();
            Ok(primitive_row(&row))
        })
        .collect::<Result<_>>()?;
    let kernel = nullspace(&rows, columns);
    let witness = match kernel.first() {
        None => None,
        Some(v) => {
            let terms = basis
                .monomials()
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone())));
            Some(HomForm::new(n, e, terms)?.to_string())
        }
    };
    Ok(ProbeVerdict {
        degree: e,
        samples: alphas.to_vec(),
        rank: columns - kernel.len(),
        columns,
        degenerate: !kernel.is_empty(),
        witness,
        limitation: PROBE_LIMITATION.to_string(),
    })
}

/// Evenly spread sample of `count` values in the campaign range (all of it if shorter).
pub fn spread_samples(lo: i64, hi: i64, count: usize) -> Vec<i64> {
    let len = (hi - lo + 1) as usize;
    if len <= count {
        return (lo..=hi).collect();
    }
    let mut out: Vec<i64> = (0..count)
        .map(|i| lo + ((i as i64) * (hi - lo)) / (count as i64 - 1))
        .collect();
    out.dedup();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallnessRow {
    pub alpha: i64,
    /// `h(Q_j(alpha)) / h(x(alpha))` per form; `None` when excluded.
    pub ratios: Vec<Option<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormTrend {
    pub form: usize,
    /// Max over the last quartile of the non-increasing upper envelope.
    pub last_quartile_max: Option<String>,
    pub consistent_with_smallness: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallnessReport {
    pub threshold: String,
    pub rows: Vec<SmallnessRow>,
    pub trends: Vec<FormTrend>,
    pub consistent_with_smallness: bool,
    pub excluded_alphas: Vec<i64>,
}

/// `h(Q_j(alpha)) / h(x(alpha))` across the range with a suffix-max envelope.
pub fn smallness_report(config: &CampaignConfig) -> Result<SmallnessReport> {
    let bits = config.precision_bits;
    let q = config.family.q();
    let mut rows = Vec::new();
    let mut values: Vec<Vec<Option<Fixed>>> = Vec::new();
    let mut excluded = Vec::new();
    for a in config.alphas() {
        let h = height_point(&config.points.point(a)?);
        if h.is_one() {
            excluded.push(a);
            values.push(vec![None; q]);
            rows.push(SmallnessRow {
                alpha: a,
                ratios: vec![None; q],
            });
            continue;
        }
        let log_h = Fixed::ln(h.value(), bits);
        let mut per = Vec::with_capacity(q);
        for j in 0..q {
            per.push(match config.family.form_at(j, a)? {
                None => None,
                Some(f) => Fixed::ln(height_form(&f).value(), bits).checked_div(&log_h),
            });
        }
        rows.push(SmallnessRow {
            alpha: a,
            ratios: per.iter().map(|x| x.as_ref().map(|x| x.to_sig_string(REPORT_DIGITS))).collect(),
        });
        values.push(per);
    }
    let threshold = Fixed::from_rational(&config.smallness_threshold, bits);
    let len = values.len();
    let start = len - len.div_ceil(4);
    let mut trends = Vec::with_capacity(q);
    #[allow(clippy::needless_range_loop)]
    for j in 0..q {
        // suffix max: the smallest non-increasing function above the data
        let mut envelope: Vec<Option<Fixed>> = vec![None; len];
        let mut running: Option<Fixed> = None;
        for i in (0..len).rev() {
            if let Some(v) = &values[i][j] {
                running = Some(match running {
                    Some(r) if r >= *v => r,
                    _ => v.clone(),
                });
            }
            envelope[i] = running.clone();
        }
        let top = envelope[start..].iter().flatten().max().cloned();
        let ok = top.as_ref().is_some_and(|t| *t < threshold);
        trends.push(FormTrend {
            form: j + 1,
            last_quartile_max: top.map(|t| t.to_sig_string(REPORT_DIGITS)),
            consistent_with_smallness: ok,
        });
    }
    Ok(SmallnessReport {
        threshold: config.smallness_threshold.to_string(),
        consistent_with_smallness: trends.iter().all(|t| t.consistent_with_smallness),
        rows,
        trends,
        excluded_alphas: excluded,
    })
}
