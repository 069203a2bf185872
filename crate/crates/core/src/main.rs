use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use schmidt_core::error::{Error, Result};
use schmidt_core::filtration::{build_filtration, choose_l, filtration_stats};
use schmidt_core::harness::campaign::{summary_lines, write_campaign};
use schmidt_core::harness::probe::spread_samples;
use schmidt_core::harness::{load_config, nondegeneracy_probe, run_campaign, smallness_report, CampaignConfig, OutputFormat};
use schmidt_core::position::{check_position, only_trivial_zero, reduce_to_general, PositionMode, DEFAULT_REDUCTION_RADIUS};
use schmidt_core::projgeom::{
    first_main_identity, height_form, height_point, parse_rational, to_common_degree, HomForm,
};

#[derive(Parser)]
#[command(name = "schmidt", version, about = "Exact checks for subspace inequalities with moving hypersurfaces")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Campaign configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Use the bound n + 1 + eps for families of hyperplanes.
    #[arg(long, global = true)]
    hyperplane_mode: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the inequality at every alpha of the configured range.
    Verify,
    /// Test weak N-subgeneral position at sampled alpha.
    CheckPosition {
        /// Comma-separated alpha values; defaults to the configured samples.
        #[arg(long, value_delimiter = ',')]
        samples: Vec<i64>,
    },
    /// Reduce N + 1 forms to n + 1 forms in general position.
    Reduce {
        #[arg(long)]
        alpha: Option<i64>,
        /// 1-based indices of the N + 1 forms; defaults to the first N + 1.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_REDUCTION_RADIUS)]
        max_radius: i64,
    },
    /// Build the staircase filtration of V_L, or only its counts.
    Filtration {
        #[arg(short = 'n', long)]
        n: usize,
        /// Semicolon-separated forms in x0..xn, e.g. "x0^2; x1^2".
        #[arg(long)]
        forms: Option<String>,
        /// Degree of the forms when only counts are wanted.
        #[arg(short = 'd', long)]
        d: Option<u32>,
        #[arg(short = 'l', long)]
        l: u32,
    },
    /// Smallest L satisfying the filtration bound.
    ChooseL {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'd', long)]
        d: u32,
        #[arg(long = "N")]
        n_sub: usize,
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value = "1")]
        epsilon_prime: String,
    },
    /// Self-test of the product identity for Weil multipliers on the campaign data.
    FmtCheck,
    /// Probe the point sequence for constant-coefficient degeneracy and report smallness.
    Probe {
        #[arg(long)]
        degree: Option<u32>,
        /// Number of sampled alpha; defaults to two more than the minimum.
        #[arg(long)]
        samples: Option<usize>,
    },
}

enum Outcome {
    Ok,
    PositionFailure,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::PositionFailure) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotSubgeneral(_) | Error::SearchExhausted(_) => 2,
        Error::Consistency(_) => 3,
        _ => 1,
    }
}

fn config(common: &Common) -> Result<CampaignConfig> {
    let path = common
        .config
        .as_deref()
        .ok_or_else(|| Error::config("--config", "this subcommand needs a configuration file"))?;
    load_config(path)
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit_json(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn emit_lines(out: &Option<PathBuf>, lines: &[String]) -> Result<()> {
    let mut w = sink(out)?;
    for l in lines {
        writeln!(w, "{l}")?;
    }
    w.flush()?;
    Ok(())
}

fn rational_arg(name: &str, s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| Error::config(name, format!("cannot parse rational {s:?}")))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    let json_out = matches!(common.format, Format::Json);
    match &cli.command {
        Command::Verify => {
            let cfg = config(common)?;
            let campaign = run_campaign(&cfg, common.hyperplane_mode)?;
            let format = if json_out { OutputFormat::Json } else { OutputFormat::Csv };
            let mut w = sink(&common.out)?;
            write_campaign(&campaign, &cfg.places, format, &mut w)?;
            w.flush()?;
            let mut err = io::stderr();
            for line in summary_lines(&campaign.summary) {
                writeln!(err, "{line}")?;
            }
            let failed = campaign
                .summary
                .position
                .as_ref()
                .is_some_and(|p| p.mode == PositionMode::Fails);
            Ok(if failed { Outcome::PositionFailure } else { Outcome::Ok })
        }
        Command::CheckPosition { samples } => {
            let cfg = config(common)?;
            let samples = if samples.is_empty() { cfg.position_samples.clone() } else { samples.clone() };
            let verdict = check_position(&cfg.family, cfg.n_sub, &samples)?;
            if json_out {
                emit_json(&common.out, &serde_json::to_value(&verdict)?)?;
            } else {
                let mut lines = vec![
                    format!("mode: {:?}", verdict.mode),
                    format!("samples: {:?}", verdict.samples),
                    format!("certified weakly {}-subgeneral: {}", cfg.n_sub, verdict.certified_weakly),
                ];
                if let Some(w) = &verdict.witness {
                    lines.push(format!("witness subset {:?} at alpha={}", w.subset, w.alpha));
                }
                for f in &verdict.sampled_failures {
                    lines.push(format!("sampled failure: subset {:?} at alpha={}", f.subset, f.alpha));
                }
                emit_lines(&common.out, &lines)?;
            }
            Ok(if verdict.certified_weakly { Outcome::Ok } else { Outcome::PositionFailure })
        }
        Command::Reduce { alpha, subset, max_radius } => {
            let cfg = config(common)?;
            let alpha = alpha.unwrap_or(cfg.alpha_min);
            let subset: Vec<usize> = if subset.is_empty() {
                (0..=cfg.n_sub).collect()
            } else {
                if subset.len() != cfg.n_sub + 1 || subset.iter().any(|&i| i == 0 || i > cfg.family.q()) {
                    return Err(Error::config("--subset", format!("expected {} indices in 1..={}", cfg.n_sub + 1, cfg.family.q())));
                }
                subset.iter().map(|i| i - 1).collect()
            };
            let at = |a: i64| -> Result<Vec<HomForm>> {
                let all = cfg.family.forms_at(a)?;
                to_common_degree(&subset.iter().map(|&i| all[i].clone()).collect::<Vec<_>>())
            };
            let result = reduce_to_general(&at(alpha)?, cfg.n, cfg.n_sub, *max_radius)?;
            // apply the same coefficients at the other samples
            let mut failures = Vec::new();
            for &a in &cfg.position_samples {
                let forms = match at(a) {
                    Ok(f) => f,
                    Err(_) => {
                        failures.push(a);
                        continue;
                    }
                };
                let mut reduced = vec![forms[0].clone()];
                for c in &result.coefficients {
                    let terms: Vec<(BigRational, &HomForm)> = c
                        .iter()
                        .zip(&forms[1..])
                        .map(|(&ci, q)| (BigRational::from_integer(ci.into()), q))
                        .collect();
                    match HomForm::linear_combination(&terms) {
                        Some(p) => reduced.push(p),
                        None => break,
                    }
                }
                if reduced.len() != cfg.n + 1 || !only_trivial_zero(&reduced)? {
                    failures.push(a);
                }
            }
            if json_out {
                emit_json(
                    &common.out,
                    &json!({
                        "alpha": alpha,
                        "coefficients": result.coefficients,
                        "forms": result.forms.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        "triangular": result.is_triangular(cfg.n, cfg.n_sub),
                        "failing_samples": failures,
                    }),
                )?;
            } else {
                let mut lines = vec![format!("alpha: {alpha}")];
                for (t, c) in result.coefficients.iter().enumerate() {
                    lines.push(format!("c_{}: {:?}", t + 2, c));
                }
                for (t, f) in result.forms.iter().enumerate() {
                    lines.push(format!("P_{} = {f}", t + 1));
                }
                lines.push(format!("sampled alpha where the reduced forms fail: {failures:?}"));
                emit_lines(&common.out, &lines)?;
            }
            Ok(Outcome::Ok)
        }
        Command::Filtration { n, forms, d, l } => {
            let value = match forms {
                Some(text) => {
                    let parsed: Vec<HomForm> = text
                        .split(';')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| HomForm::parse(*n, s.trim()))
                        .collect::<Result<_>>()?;
                    let f = build_filtration(&parsed, *l)?;
                    let stats = filtration_stats(*n, f.d, *l)?;
                    json!({
                        "u": f.u(),
                        "K": f.k(),
                        "a": stats.a,
                        "a_by_coordinate": stats.a_by_coordinate,
                        "tuples": f.tuples,
                        "m": f.m,
                        "basis": f.basis,
                    })
                }
                None => {
                    let d = d.ok_or_else(|| Error::config("--d", "give --forms or --d"))?;
                    let stats = filtration_stats(*n, d, *l)?;
                    serde_json::to_value(stats)?
                }
            };
            if json_out {
                emit_json(&common.out, &value)?;
            } else {
                let keys = ["u", "K", "k", "a", "a_by_coordinate", "m"];
                let lines: Vec<String> = keys
                    .iter()
                    .filter_map(|k| value.get(*k).map(|v| format!("{k}: {v}")))
                    .collect();
                emit_lines(&common.out, &lines)?;
            }
            Ok(Outcome::Ok)
        }
        Command::ChooseL { n, d, n_sub, epsilon, epsilon_prime } => {
            let eps = rational_arg("--epsilon", epsilon)?;
            let eps_prime = rational_arg("--epsilon-prime", epsilon_prime)?;
            let c = choose_l(*n, *d, *n_sub, &eps, &eps_prime)?;
            if json_out {
                emit_json(&common.out, &serde_json::to_value(&c)?)?;
            } else {
                emit_lines(
                    &common.out,
                    &[format!("L: {}", c.l), format!("ratio: {}", c.ratio), format!("bound: {}", c.bound)],
                )?;
            }
            Ok(Outcome::Ok)
        }
        Command::FmtCheck => {
            let cfg = config(common)?;
            let report = fmt_check(&cfg)?;
            if json_out {
                emit_json(&common.out, &report)?;
            } else {
                emit_lines(
                    &common.out,
                    &[
                        format!("checked: {}", report["checked"]),
                        format!("skipped (point on hypersurface): {}", report["on_hypersurface"]),
                        format!("skipped (factorization budget or prime beyond 2^64): {}", report["budget"]),
                        format!("mismatches: {}", report["mismatches"]),
                    ],
                )?;
            }
            Ok(Outcome::Ok)
        }
        Command::Probe { degree, samples } => {
            let cfg = config(common)?;
            let e = degree.unwrap_or(cfg.probe_degree);
            let n_cols = schmidt_core::projgeom::binomial(e as u64 + cfg.n as u64, cfg.n as u64) as usize;
            let count = samples.unwrap_or(n_cols + 4);
            let alphas = spread_samples(cfg.alpha_min, cfg.alpha_max, count);
            let probe = nondegeneracy_probe(&cfg.points, e, &alphas)?;
            let small = smallness_report(&cfg)?;
            if json_out {
                emit_json(&common.out, &json!({ "probe": probe, "smallness": small }))?;
            } else {
                let mut lines = vec![
                    format!("degree {e}: rank {} of {} on {} samples", probe.rank, probe.columns, probe.samples.len()),
                    if probe.degenerate {
                        format!("degenerate: candidate form {}", probe.witness.clone().unwrap_or_default())
                    } else {
                        format!("no constant-coefficient degeneracy up to degree {e}")
                    },
                    format!("limitation: {}", probe.limitation),
                ];
                for t in &small.trends {
                    lines.push(format!(
                        "form {}: last-quartile envelope {} -> {}",
                        t.form,
                        t.last_quartile_max.clone().unwrap_or_else(|| "n/a".into()),
                        if t.consistent_with_smallness { "consistent with smallness" } else { "not small" }
                    ));
                }
                emit_lines(&common.out, &lines)?;
            }
            Ok(Outcome::Ok)
        }
    }
}

/// `prod_v M_v = H(x)^d H(Q)` for every form and alpha of the campaign.
fn fmt_check(cfg: &CampaignConfig) -> Result<serde_json::Value> {
    let (mut checked, mut on_surface, mut budget, mut mismatches) = (0usize, 0usize, 0usize, Vec::new());
    for a in cfg.alphas() {
        let x = cfg.points.point(a)?;
        let hx = height_point(&x);
        for j in 0..cfg.family.q() {
            let Some(q) = cfg.family.form_at(j, a)? else { continue };
            match first_main_identity(&q, &x) {
                Ok(product) => {
                    checked += 1;
                    let expected = hx.pow(q.degree()).compose(&height_form(&q));
                    if product != *expected.value() {
                        mismatches.push(json!({"alpha": a, "form": j + 1}));
                    }
                }
                Err(Error::PointOnHypersurface) => on_surface += 1,
                Err(Error::FactorizationBudget(_) | Error::PlaceOutOfRange(_)) => budget += 1,
                Err(e) => return Err(e),
            }
        }
    }
    if !mismatches.is_empty() {
        return Err(Error::Consistency(format!("first main identity fails at {mismatches:?}")));
    }
    Ok(json!({
        "checked": checked,
        "on_hypersurface": on_surface,
        "budget": budget,
        "mismatches": 0,
    }))
}
