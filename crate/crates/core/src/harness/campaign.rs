//! Per-`alpha` evaluation of the main inequality and campaign orchestration.
//!
//! For every `alpha` the harness computes the exact Weil multipliers
//! `M_{j,v} = ||x||_v^{d_j} ||Q_j||_v / ||Q_j(x)||_v` on `S`, so that
//! `lhs = sum_v sum_j (1/d_j) log M_{j,v} = log(K) / D` with
//! `K = prod M_{j,v}^{D/d_j}` and `D = lcm(d_j)`. Violations are decided on
//! `K` and `H(x)` exactly; logarithms only feed the reported decimals.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::config::CampaignConfig;
use crate::error::{Error, Result};
use crate::family::MovingFamily;
use crate::places::{local_norm_unchecked, pow_rational, ExactPositive, HeightKernel, Place};
use crate::position::{check_position, PositionVerdict};
use crate::projgeom::{evaluate, height_form, height_point, HomForm, MultiIndex, ProjectivePoint};
use crate::real::{exact_root, Fixed};

pub const REPORT_DIGITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exclusion {
    None,
    /// Some `Q_j(alpha)` has all coefficients zero.
    ZeroForm,
    /// `Q_j(alpha)(x(alpha)) = 0`.
    OnHypersurface,
    /// `h(x(alpha)) = 0`, so the ratio is undefined.
    ZeroHeight,
}

impl Exclusion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Exclusion::None => "none",
            Exclusion::ZeroForm => "zero_form",
            Exclusion::OnHypersurface => "on_hypersurface",
            Exclusion::ZeroHeight => "zero_height",
        }
    }
}

/// Everything computed for one `alpha`.
#[derive(Debug, Clone)]
pub struct InstanceRecord {
    pub alpha: i64,
    pub point: ProjectivePoint,
    pub excluded: Exclusion,
    /// `multipliers[v][j]`, in the order of the configured places.
    pub multipliers: Vec<Vec<ExactPositive>>,
    pub h_x: HeightKernel,
    pub h_forms: Vec<HeightKernel>,
    /// `K` with `lhs = log(K) / kernel_root`.
    pub lhs_kernel: Option<BigRational>,
    pub kernel_root: u32,
    pub log_h_x: Fixed,
    pub lhs: Option<Fixed>,
    pub rhs: Fixed,
    pub ratio: Option<Fixed>,
    pub smallness: Option<Fixed>,
    /// Whether `lhs <= rhs` fails, decided exactly.
    pub violation: bool,
    /// Per place: form indices (1-based) sorted by `||Q_j(x)||_v`, ties by index.
    pub sort_permutations: Vec<Vec<usize>>,
    /// Per place: `max_j ||Q_j(x)||_v / ||x||_v^{d_j}`.
    pub value_ratio: Vec<Option<BigRational>>,
    /// `max_j |(1/D) log M(tilde Q_j) - (1/d_j) log M(Q_j)|` at the archimedean place.
    pub tilde_discrepancy: Option<Fixed>,
}

fn kernel_root(degrees: &[u32]) -> u32 {
    degrees.iter().fold(1u32, |acc, d| acc.lcm(d))
}

/// `log(x) / D` where the logarithm is rounded to nearest.
fn log_over(q: &BigRational, d: u32, bits: u32) -> Fixed {
    Fixed::ln(q, bits).mul_rational(&BigRational::new(BigInt::one(), BigInt::from(d)))
}

/// Whether `log(K)/D > c log(H)`, i.e. `K^q > H^(p D)` for `c = p/q`.
fn exceeds(kernel: &BigRational, root: u32, c: &BigRational, h: &HeightKernel) -> bool {
    let (p, q) = (c.numer(), c.denom());
    let q: u32 = q.try_into().expect("bound denominator fits in u32");
    let p: u32 = p.try_into().expect("bound numerator fits in u32");
    pow_rational(kernel, q) > pow_rational(h.value(), p * root)
}

/// Archimedean gap between the tilde-normalized form and the original form.
fn tilde_gap(forms: &[HomForm], bits: u32) -> Option<Fixed> {
    let d = kernel_root(&forms.iter().map(|f| f.degree()).collect::<Vec<_>>());
    let mut worst: Option<Fixed> = None;
    for q in forms {
        let lead = q.coeff(&MultiIndex::leading(q.n(), q.degree()));
        if lead.is_zero() {
            return None;
        }
        let scaled = q.scale(&lead.recip()).ok()?;
        let tilde = scaled.pow(d / q.degree());
        // M(tilde) / M(Q)^(D/d_j) does not depend on x, only on the sup norms
        let num = pow_rational(tilde.sup_norm(Place::Archimedean).value(), q.degree());
        let den = pow_rational(scaled.sup_norm(Place::Archimedean).value(), d);
        let gap = log_over(&(num / den), d * q.degree(), bits).abs();
        worst = Some(match worst {
            Some(w) if w >= gap => w,
            _ => gap,
        });
    }
    worst
}

pub fn evaluate_instance(config: &CampaignConfig, alpha: i64, hyperplane_mode: bool) -> Result<InstanceRecord> {
    let bits = config.precision_bits;
    let family = &config.family;
    let degrees = family.degrees();
    let root = kernel_root(&degrees);
    let point = config.points.point(alpha)?;
    let h_x = height_point(&point);
    let log_h_x = Fixed::ln(h_x.value(), bits);
    let c = config.bound_constant(hyperplane_mode);
    let rhs = log_h_x.mul_rational(&c);

    let mut record = InstanceRecord {
        alpha,
        point: point.clone(),
        excluded: Exclusion::None,
        multipliers: Vec::new(),
        h_x: h_x.clone(),
        h_forms: Vec::new(),
        lhs_kernel: None,
        kernel_root: root,
        log_h_x: log_h_x.clone(),
        lhs: None,
        rhs,
        ratio: None,
        smallness: None,
        violation: false,
        sort_permutations: Vec::new(),
        value_ratio: Vec::new(),
        tilde_discrepancy: None,
    };

    let mut forms = Vec::with_capacity(family.q());
    for j in 0..family.q() {
        match family.form_at(j, alpha)? {
            Some(f) => forms.push(f),
            None => {
                record.excluded = Exclusion::ZeroForm;
                return Ok(record);
            }
        }
    }
    record.h_forms = forms.iter().map(height_form).collect();

    let values: Vec<BigRational> = forms.iter().map(|f| evaluate(f, &point)).collect::<Result<_>>()?;
    if values.iter().any(|v| v.is_zero()) {
        record.excluded = Exclusion::OnHypersurface;
        return Ok(record);
    }

    let mut kernel = BigRational::one();
    for &v in &config.places {
        let x_norm = point.norm(v);
        let local: Vec<ExactPositive> = values.iter().map(|val| local_norm_unchecked(v, val)).collect();
        let mut row = Vec::with_capacity(forms.len());
        let mut largest = BigRational::zero();
        for (j, f) in forms.iter().enumerate() {
            let xd = x_norm.pow(f.degree());
            let m = &(&xd * &f.sup_norm(v)) / &local[j];
            kernel *= pow_rational(m.value(), root / f.degree());
            let ratio = local[j].value() / xd.value();
            if ratio > largest {
                largest = ratio;
            }
            row.push(m);
        }
        let mut perm: Vec<usize> = (0..forms.len()).collect();
        perm.sort_by(|&a, &b| local[a].cmp(&local[b]).then(a.cmp(&b)));
        record.sort_permutations.push(perm.into_iter().map(|j| j + 1).collect());
        record.value_ratio.push(Some(largest));
        record.multipliers.push(row);
    }

    let lhs = log_over(&kernel, root, bits);
    if config.places.contains(&Place::Archimedean) {
        record.tilde_discrepancy = tilde_gap(&forms, bits);
    }
    record.lhs = Some(lhs.clone());
    record.lhs_kernel = Some(kernel.clone());
    if h_x.is_one() {
        record.excluded = Exclusion::ZeroHeight;
        return Ok(record);
    }
    record.ratio = lhs.checked_div(&log_h_x);
    record.violation = exceeds(&kernel, root, &c, &h_x);
    let max_form = record
        .h_forms
        .iter()
        .max()
        .expect("nonempty family")
        .clone();
    record.smallness = Fixed::ln(max_form.value(), bits).checked_div(&log_h_x);
    Ok(record)
}

/// Check that the record's kernel is the product of multipliers raised to `D/d_j`
/// and, when every multiplier is a perfect `d_j`-th power, that it equals the
/// product of the exact roots raised to `D`.
pub fn check_kernel_roots(record: &InstanceRecord, degrees: &[u32]) -> Option<bool> {
    let kernel = record.lhs_kernel.as_ref()?;
    let root = record.kernel_root;
    let mut product = BigRational::one();
    let mut rooted = Some(BigRational::one());
    for row in &record.multipliers {
        for (m, &d) in row.iter().zip(degrees) {
            product *= pow_rational(m.value(), root / d);
            rooted = match (rooted, exact_root(m.value(), d)) {
                (Some(acc), Some(r)) => Some(acc * r),
                _ => None,
            };
        }
    }
    let by_roots = rooted.is_none_or(|r| pow_rational(&r, root) == *kernel);
    Some(product == *kernel && by_roots)
}

#[derive(Debug, Clone, Serialize)]
pub struct CsvRow {
    pub alpha: i64,
    pub h_x: String,
    pub lhs: String,
    pub rhs: String,
    pub ratio: String,
    pub smallness: String,
    pub excluded: String,
    pub lhs_kernel_num: String,
    pub lhs_kernel_den: String,
}

fn fmt_opt(f: &Option<Fixed>) -> String {
    f.as_ref().map(|x| x.to_sig_string(REPORT_DIGITS)).unwrap_or_default()
}

impl InstanceRecord {
    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            alpha: self.alpha,
            h_x: self.log_h_x.to_sig_string(REPORT_DIGITS),
            lhs: fmt_opt(&self.lhs),
            rhs: self.rhs.to_sig_string(REPORT_DIGITS),
            ratio: fmt_opt(&self.ratio),
            smallness: fmt_opt(&self.smallness),
            excluded: self.excluded.as_str().to_string(),
            lhs_kernel_num: self.lhs_kernel.as_ref().map(|k| k.numer().to_string()).unwrap_or_default(),
            lhs_kernel_den: self.lhs_kernel.as_ref().map(|k| k.denom().to_string()).unwrap_or_default(),
        }
    }

    pub fn to_json(&self, places: &[Place]) -> serde_json::Value {
        let row = self.csv_row();
        let per_place = |f: &dyn Fn(usize) -> serde_json::Value| -> serde_json::Value {
            let mut map = serde_json::Map::new();
            for (i, v) in places.iter().enumerate() {
                if i < self.multipliers.len() {
                    map.insert(v.to_string(), f(i));
                }
            }
            serde_json::Value::Object(map)
        };
        serde_json::json!({
            "alpha": self.alpha,
            "point": self.point.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "excluded": row.excluded,
            "h_x": row.h_x,
            "height_x": self.h_x.value().to_string(),
            "lhs": row.lhs,
            "rhs": row.rhs,
            "ratio": row.ratio,
            "smallness": row.smallness,
            "violation": self.violation,
            "lhs_kernel": {
                "num": row.lhs_kernel_num,
                "den": row.lhs_kernel_den,
                "root": self.kernel_root,
            },
            "height_forms": self.h_forms.iter().map(|h| h.value().to_string()).collect::<Vec<_>>(),
            "multipliers": per_place(&|i| self.multipliers[i].iter().map(|m| m.to_string()).collect()),
            "sort_permutations": per_place(&|i| serde_json::json!(self.sort_permutations[i])),
            "value_ratio": per_place(&|i| serde_json::json!(self.value_ratio[i].as_ref().map(|q| q.to_string()))),
            "tilde_discrepancy": self.tilde_discrepancy.as_ref().map(|t| t.to_sig_string(REPORT_DIGITS)),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaceRange {
    pub place: String,
    pub min: String,
    pub max: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignSummary {
    pub instances: usize,
    pub evaluated: usize,
    pub excluded: usize,
    pub excluded_alphas: Vec<(i64, String)>,
    pub violations: usize,
    pub violating_alphas: Vec<i64>,
    pub bound_constant: String,
    pub hyperplane_mode: bool,
    pub max_ratio: Option<String>,
    pub max_ratio_alpha: Option<i64>,
    pub min_ratio: Option<String>,
    /// Max smallness over the last quartile of the range.
    pub smallness_trend: Option<String>,
    pub position: Option<PositionVerdict>,
    pub position_error: Option<String>,
    /// Observed range of `max_j ||Q_j(x)||_v / ||x||_v^{d_j}` per place.
    pub value_ratio: Vec<PlaceRange>,
    pub max_tilde_discrepancy: Option<String>,
    pub rounding: String,
    pub precision_bits: u32,
    pub notes: Vec<String>,
}

pub struct Campaign {
    pub records: Vec<InstanceRecord>,
    pub summary: CampaignSummary,
}

/// `check_position` at the configured sample `alpha` values.
pub fn position_at_samples(family: &MovingFamily, n_sub: usize, samples: &[i64]) -> Result<PositionVerdict> {
    check_position(family, n_sub, samples)
}

pub fn run_campaign(config: &CampaignConfig, hyperplane_mode: bool) -> Result<Campaign> {
    if hyperplane_mode && config.family.degrees().iter().any(|&d| d != 1) {
        return Err(Error::config("family", "hyperplane mode requires every form to have degree 1"));
    }
    let alphas: Vec<i64> = config.alphas().collect();
    let records: Vec<InstanceRecord> = alphas
        .par_iter()
        .map(|&a| evaluate_instance(config, a, hyperplane_mode))
        .collect::<Result<_>>()?;
    let (position, position_error) = match position_at_samples(&config.family, config.n_sub, &config.position_samples) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let summary = summarize(config, &records, hyperplane_mode, position, position_error);
    Ok(Campaign { records, summary })
}

fn summarize(
    config: &CampaignConfig,
    records: &[InstanceRecord],
    hyperplane_mode: bool,
    position: Option<PositionVerdict>,
    position_error: Option<String>,
) -> CampaignSummary {
    let included: Vec<&InstanceRecord> = records.iter().filter(|r| r.excluded == Exclusion::None).collect();
    let max = included
        .iter()
        .filter_map(|r| r.ratio.as_ref().map(|x| (x, r.alpha)))
        .fold(None, |best: Option<(&Fixed, i64)>, (x, a)| match best {
            Some((b, _)) if b >= x => best,
            _ => Some((x, a)),
        });
    let min = included.iter().filter_map(|r| r.ratio.as_ref()).min();
    let quartile_start = records.len() - records.len().div_ceil(4);
    let smallness_trend = records[quartile_start..]
        .iter()
        .filter(|r| r.excluded == Exclusion::None)
        .filter_map(|r| r.smallness.as_ref())
        .max()
        .map(|x| x.to_sig_string(REPORT_DIGITS));

    let mut value_ratio = Vec::new();
    for (i, v) in config.places.iter().enumerate() {
        let vals: Vec<&BigRational> = included.iter().filter_map(|r| r.value_ratio.get(i)?.as_ref()).collect();
        if let (Some(lo), Some(hi)) = (vals.iter().min(), vals.iter().max()) {
            let show = |q: &BigRational| Fixed::from_rational(q, config.precision_bits).to_sig_string(REPORT_DIGITS);
            value_ratio.push(PlaceRange {
                place: v.to_string(),
                min: show(lo),
                max: show(hi),
            });
        }
    }
    let max_tilde = included
        .iter()
        .filter_map(|r| r.tilde_discrepancy.as_ref())
        .max()
        .map(|x| x.to_sig_string(REPORT_DIGITS));

    let mut notes = vec![
        "the inequality is checked on the finite alpha range only; no infinite subset is inferred".to_string(),
    ];
    if !config.family.is_constant() {
        notes.push(
            "the range of max_j |Q_j(x)|_v / |x|_v^d_j is reported for information; it is only expected to stay bounded for constant coefficients"
                .to_string(),
        );
    }
    if config.places.contains(&Place::Archimedean) && max_tilde.is_none() && !included.is_empty() {
        notes.push("archimedean tilde discrepancy not computed: some form has a zero x0^d coefficient".to_string());
    }
    let excluded: Vec<(i64, String)> = records
        .iter()
        .filter(|r| r.excluded != Exclusion::None)
        .map(|r| (r.alpha, r.excluded.as_str().to_string()))
        .collect();
    let violating: Vec<i64> = included.iter().filter(|r| r.violation).map(|r| r.alpha).collect();
    let c = config.bound_constant(hyperplane_mode);

    CampaignSummary {
        instances: records.len(),
        evaluated: included.len(),
        excluded: excluded.len(),
        excluded_alphas: excluded,
        violations: violating.len(),
        violating_alphas: violating,
        bound_constant: c.to_string(),
        hyperplane_mode,
        max_ratio: max.map(|(x, _)| x.to_sig_string(REPORT_DIGITS)),
        max_ratio_alpha: max.map(|(_, a)| a),
        min_ratio: min.map(|x| x.to_sig_string(REPORT_DIGITS)),
        smallness_trend,
        position,
        position_error,
        value_ratio,
        max_tilde_discrepancy: max_tilde,
        rounding: "round-to-nearest".to_string(),
        precision_bits: config.precision_bits,
        notes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub fn write_csv<W: Write>(records: &[InstanceRecord], sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    for r in records {
        w.serialize(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(campaign: &Campaign, places: &[Place], mut sink: W) -> Result<()> {
    let doc = serde_json::json!({
        "instances": campaign.records.iter().map(|r| r.to_json(places)).collect::<Vec<_>>(),
        "summary": campaign.summary,
    });
    serde_json::to_writer_pretty(&mut sink, &doc)?;
    writeln!(sink)?;
    Ok(())
}

pub fn write_campaign<W: Write>(campaign: &Campaign, places: &[Place], format: OutputFormat, sink: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(&campaign.records, sink),
        OutputFormat::Json => write_json(campaign, places, sink),
    }
}

/// Human-readable summary lines.
pub fn summary_lines(s: &CampaignSummary) -> Vec<String> {
    let mut out = vec![
        format!("instances: {} (evaluated {}, excluded {})", s.instances, s.evaluated, s.excluded),
        format!("bound constant: {}{}", s.bound_constant, if s.hyperplane_mode { " (hyperplane mode)" } else { "" }),
        format!("violations: {}", s.violations),
    ];
    if let (Some(r), Some(a)) = (&s.max_ratio, s.max_ratio_alpha) {
        out.push(format!("max ratio: {r} at alpha={a}"));
    }
    if let Some(r) = &s.min_ratio {
        out.push(format!("min ratio: {r}"));
    }
    if let Some(t) = &s.smallness_trend {
        out.push(format!("smallness (last quartile max): {t}"));
    }
    match (&s.position, &s.position_error) {
        (Some(p), _) => out.push(format!(
            "position at alpha {:?}: {:?}, {} sampled failure(s)",
            p.samples,
            p.mode,
            p.sampled_failures.len()
        )),
        (None, Some(e)) => out.push(format!("position check failed: {e}")),
        _ => {}
    }
    for l in &s.value_ratio {
        out.push(format!("max_j |Q_j(x)|_v / |x|_v^d_j at {}: min {} max {}", l.place, l.min, l.max));
    }
    if let Some(t) = &s.max_tilde_discrepancy {
        out.push(format!("archimedean tilde discrepancy (max): {t}"));
    }
    out.push(format!("logs rounded to nearest at {} bits", s.precision_bits));
    out.extend(s.notes.iter().map(|n| format!("note: {n}")));
    out
}

/// Multipliers keyed by place for a single record, mainly for tests.
pub fn multipliers_by_place(record: &InstanceRecord, places: &[Place]) -> BTreeMap<Place, Vec<BigRational>> {
    places
        .iter()
        .zip(&record.multipliers)
        .map(|(v, row)| (*v, row.iter().map(|m| m.value().clone()).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::parse_config;

    pub(crate) fn model_config(range: (i64, i64)) -> CampaignConfig {
        let doc = serde_json::json!({
            "n": 1, "N": 1, "epsilon": "1/2", "places": ["inf", 2],
            "alpha_range": [range.0, range.1],
            "family": [
                {"degree": 1, "coefficients": [{"exponents": [1, 0], "num": [1]}]},
                {"degree": 1, "coefficients": [{"exponents": [0, 1], "num": [1]}]}
            ],
            "points": {"kind": "exponential", "bases": [1, 2]}
        });
        parse_config(&doc.to_string()).unwrap()
    }

    #[test]
    fn model_instance_alpha_3() {
        let c = model_config((0, 20));
        let r = evaluate_instance(&c, 3, false).unwrap();
        assert_eq!(r.excluded, Exclusion::None);
        let m = multipliers_by_place(&r, &c.places);
        let q = |x: i64| BigRational::from_integer(x.into());
        assert_eq!(m[&Place::Archimedean], vec![q(8), q(1)]);
        assert_eq!(m[&Place::Finite(2)], vec![q(1), q(8)]);
        assert_eq!(r.lhs_kernel, Some(q(64)));
        assert_eq!(r.ratio.as_ref().unwrap().to_sig_string(12), "2.00000000000");
        assert!(!r.violation);
        assert_eq!(check_kernel_roots(&r, &[1, 1]), Some(true));
        let rhs_over_h = r.rhs.checked_div(&r.log_h_x).unwrap();
        assert_eq!(rhs_over_h.to_sig_string(12), "2.50000000000");
        assert_eq!(r.smallness.as_ref().unwrap().to_sig_string(12), "0");
    }

    #[test]
    fn zero_height_is_excluded() {
        let c = model_config((0, 20));
        let r = evaluate_instance(&c, 0, false).unwrap();
        assert_eq!(r.excluded, Exclusion::ZeroHeight);
        assert!(r.lhs.as_ref().unwrap().is_zero());
        assert!(r.ratio.is_none());
    }

    #[test]
    fn vanishing_form_is_excluded() {
        let doc = serde_json::json!({
            "n": 1, "N": 1, "epsilon": "1/2", "places": ["inf"],
            "alpha_range": [1, 1],
            "family": [
                {"degree": 1, "coefficients": [{"exponents": [1, 0], "num": [1]}, {"exponents": [0, 1], "num": [1]}]},
                {"degree": 1, "coefficients": [{"exponents": [0, 1], "num": [1]}]}
            ],
            "points": {"kind": "explicit", "points": [[1, -1]]}
        });
        let c = parse_config(&doc.to_string()).unwrap();
        let r = evaluate_instance(&c, 1, false).unwrap();
        assert_eq!(r.excluded, Exclusion::OnHypersurface);
        assert_eq!(r.csv_row().lhs, "");
    }

    #[test]
    fn model_campaign_summary() {
        let c = model_config((1, 20));
        let run = run_campaign(&c, false).unwrap();
        assert_eq!(run.records.len(), 20);
        assert_eq!(run.summary.violations, 0);
        assert_eq!(run.summary.max_ratio.as_deref(), Some("2.00000000000"));
        assert_eq!(run.summary.smallness_trend.as_deref(), Some("0"));
        let hyper = run_campaign(&c, true).unwrap();
        assert_eq!(hyper.summary.violations, 0);
        assert_eq!(hyper.summary.bound_constant, "5/2");
        let mut buf = Vec::new();
        write_csv(&run.records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("alpha,h_x,lhs,rhs,ratio,smallness,excluded,lhs_kernel_num,lhs_kernel_den\n"));
        assert_eq!(text.lines().count(), 21);
    }

    #[test]
    fn sort_permutations_order_local_values() {
        let c = model_config((1, 5));
        let r = evaluate_instance(&c, 4, false).unwrap();
        // at inf |x0| = 1 < |x1| = 16; at 2 |x1|_2 = 1/16 < |x0|_2 = 1
        assert_eq!(r.sort_permutations, vec![vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn exceeds_is_exact() {
        let h = HeightKernel::from_integer(4.into()).unwrap();
        let c = BigRational::new(5.into(), 2.into());
        // log(32)/1 vs 2.5 log 4 = log 32
        assert!(!exceeds(&BigRational::from_integer(32.into()), 1, &c, &h));
        assert!(exceeds(&BigRational::from_integer(33.into()), 1, &c, &h));
    }
}
