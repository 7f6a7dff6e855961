//! `harmonic`: evaluation, exponents, classification, tables, experiments and SVG
//! rendering for the harmonic function `u` on the side of the Sierpinski triangle.

mod input;
mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gasket_core::exact::rational::{fmt_rational, format_significant, Rational};
use gasket_core::harmonic::{grid_cap_from_env, u_at, LinearForm, UValue};
use gasket_core::holder::{
    alpha_rational, check_golden, classify_uacb_verbose, generate_table, lyapunov_random_estimate,
    maxrun_experiment, table, HolderReport,
};
use gasket_core::tangent::{direction_at_rational_exact, unit_vector, Side};
use gasket_core::Error;
use serde_json::json;

use crate::input::parse_point;
use crate::render::{curve_svg, triangle_svg, RenderConfig};

#[derive(Parser)]
#[command(name = "harmonic", version, about = "Local analysis of harmonic functions on the Sierpinski triangle")]
struct Cli {
    /// Significant digits for floating-point output.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Curve,
    Triangle,
}

#[derive(Subcommand)]
enum Command {
    /// u(s): exact at dyadics, certified approximation elsewhere.
    Eval {
        s: String,
        /// Expansion digits used away from dyadics.
        #[arg(short, long, default_value_t = 40)]
        n: usize,
    },
    /// Hölder exponent of u at a rational point.
    Exponent { s: String },
    /// Derivative class of Φ∘u, with Φ a preset (phi, psi, chi, xi) or "a,b,c".
    Classify { s: String, form: String },
    /// Exponents for every period class up to a length.
    Table {
        max_len: usize,
        #[arg(long)]
        dedupe_complement: bool,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
        /// Compare the length ≤ 7 rows with the published table; implies --dedupe-complement.
        #[arg(long)]
        check: bool,
    },
    /// Exact tangent direction of u at a rational point.
    Direction {
        s: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Writes an SVG of the curve u or of the harmonic image of S_n.
    Render {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value_t = 8)]
        level: u32,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 720)]
        height: u32,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Numerical experiments on the exponent (maxrun, lyapunov)
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand)]
enum Experiment {
    /// Exponents of all classes whose cyclic runs have length ≤ 2.
    Maxrun {
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Exponent estimates on uniformly random bit words.
    Lyapunov {
        #[arg(long, default_value_t = 4096)]
        bits: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let digits = cli.precision;
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::Eval { s, n } => eval(&parse_point(s)?, *n, digits, json_out),
        Command::Exponent { s } => {
            let r = alpha_rational(&parse_point(s)?)?;
            Ok(if json_out { pretty(&serde_json::to_value(&r).unwrap()) } else { report_text(&r, digits) })
        }
        Command::Classify { s, form } => {
            let form = LinearForm::parse(form)?;
            let (class, verdict) = classify_uacb_verbose(&form, &parse_point(s)?)?;
            Ok(if json_out {
                pretty(&json!({ "class": class, "kernel": verdict }))
            } else {
                format!("class: {class}\nkernel: {verdict:?}\n")
            })
        }
        Command::Table { max_len, dedupe_complement, csv, json, check } => {
            run_table(*max_len, *dedupe_complement || *check, *csv, *json || json_out, *check, digits)
        }
        Command::Direction { s, side } => direction(&parse_point(s)?, *side, digits, json_out),
        Command::Render { target, level, width, height, out } => {
            let cfg = RenderConfig { level: *level, width: *width, height: *height };
            let cap = grid_cap_from_env();
            cfg.validate(cap)?;
            let svg = match target {
                Target::Curve => curve_svg(&cfg)?,
                Target::Triangle => triangle_svg(&cfg, cap)?,
            };
            std::fs::write(out, svg)
                .map_err(|e| Failure { code: 4, message: format!("cannot write {}: {e}", out.display()) })?;
            Ok(String::new())
        }
        Command::Experiment(Experiment::Maxrun { max_len }) => maxrun(*max_len, digits, json_out),
        Command::Experiment(Experiment::Lyapunov { bits, trials, seed }) => {
            let summary = lyapunov_random_estimate(*bits, *trials, *seed);
            Ok(if json_out {
                pretty(&serde_json::to_value(&summary).unwrap())
            } else {
                let f = |x: f64| format_significant(x, digits);
                format!(
                    "bits: {}\ntrials: {}\nseed: {}\nmean: {}\nmedian: {}\nfraction_above_one: {}\nlow_confidence: {}\n",
                    summary.nbits,
                    summary.trials,
                    summary.seed,
                    f(summary.mean),
                    f(summary.median),
                    f(summary.fraction_above_one),
                    summary.low_confidence
                )
            })
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

fn eval(s: &Rational, n: usize, digits: usize, json_out: bool) -> Outcome {
    let value = u_at(s, n)?;
    Ok(match (value, json_out) {
        (UValue::Exact(v), false) => format!("{v}\n"),
        (UValue::Exact(v), true) => pretty(&json!({ "s": fmt_rational(s), "exact": v })),
        (UValue::Approx(p), false) => {
            let vals: Vec<String> = p.value.iter().map(|&x| format_significant(x, digits)).collect();
            format!("{}\nerror_bound: {}\n", vals.join(" "), format_significant(p.error_bound, digits))
        }
        (UValue::Approx(p), true) => {
            pretty(&json!({ "s": fmt_rational(s), "digits": n, "value": p.value, "error_bound": p.error_bound }))
        }
    })
}

fn report_text(r: &HolderReport, digits: usize) -> String {
    let mut out = String::new();
    writeln!(out, "s: {}", fmt_rational(&r.s)).unwrap();
    writeln!(out, "expansion: {}", r.expansion).unwrap();
    writeln!(out, "period: {}", r.period_string()).unwrap();
    writeln!(out, "n: {}", r.n).unwrap();
    writeln!(out, "scaled_trace: {}", r.scaled_trace).unwrap();
    writeln!(out, "lambda: {}", r.lambda).unwrap();
    writeln!(out, "alpha: {}", format_significant(r.alpha, digits)).unwrap();
    writeln!(out, "alpha_enclosure: [{:.15}, {:.15}]", r.enclosure.lo, r.enclosure.hi).unwrap();
    writeln!(out, "derivative_class: {}", r.derivative_class).unwrap();
    out
}

fn run_table(max_len: usize, dedupe: bool, csv: bool, json_out: bool, check: bool, digits: usize) -> Outcome {
    let rows = generate_table(max_len, dedupe)?;
    if check {
        let short: Vec<HolderReport> = rows.iter().filter(|r| r.n <= 7).cloned().collect();
        let problems = check_golden(&short);
        if !problems.is_empty() {
            return Err(Failure { code: 1, message: format!("table check failed:\n{}", problems.join("\n")) });
        }
        return Ok(format!("check passed: {} rows match\n", short.len()));
    }
    if csv {
        let mut buf = Vec::new();
        table::write_csv(&rows, &mut buf, digits)?;
        return Ok(String::from_utf8(buf).unwrap());
    }
    if json_out {
        return Ok(pretty(&table::to_json(&rows)));
    }
    let mut out = String::new();
    writeln!(out, "{:<12} {:<20} {:>3} {:>14} {:>10}  class", "s", "period", "n", "5^n tr", "alpha").unwrap();
    for r in &rows {
        writeln!(
            out,
            "{:<12} {:<20} {:>3} {:>14} {:>10}  {}",
            fmt_rational(&r.s),
            r.period_string(),
            r.n,
            r.scaled_trace,
            format_significant(r.alpha, digits),
            r.derivative_class
        )
        .unwrap();
    }
    Ok(out)
}

fn direction(s: &Rational, side: SideArg, digits: usize, json_out: bool) -> Outcome {
    let side = match side {
        SideArg::Right => Side::Right,
        SideArg::Left => Side::Left,
    };
    let d = direction_at_rational_exact(s, side)?;
    let chart = d.chart.to_f64();
    let unit = unit_vector(chart);
    let fmt_bits = gasket_core::exact::format_bits;
    Ok(if json_out {
        pretty(&json!({
            "s": fmt_rational(s),
            "side": side,
            "chart": d.chart.to_string(),
            "chart_value": chart,
            "unit_vector": unit,
            "preperiod": fmt_bits(&d.preperiod),
            "period": fmt_bits(&d.period),
        }))
    } else {
        let u: Vec<String> = unit.iter().map(|&x| format_significant(x, digits)).collect();
        format!(
            "chart: {}\nchart_value: {}\nunit_vector: {}\nexpansion: 0.{}({})\n",
            d.chart,
            format_significant(chart, digits),
            u.join(" "),
            fmt_bits(&d.preperiod),
            fmt_bits(&d.period)
        )
    })
}

fn maxrun(max_len: usize, digits: usize, json_out: bool) -> Outcome {
    let rows = maxrun_experiment(max_len)?;
    let all = rows.iter().all(|r| r.above_one);
    if json_out {
        return Ok(pretty(&json!({ "max_len": max_len, "rows": rows, "all_above_one": all })));
    }
    let mut out = String::new();
    for r in &rows {
        writeln!(out, "{:<20} {:>10}  {}", r.period, format_significant(r.alpha, digits), if r.above_one { "alpha>1" } else { "alpha<=1" })
            .unwrap();
    }
    writeln!(out, "classes: {}\nall_above_one: {all}", rows.len()).unwrap();
    Ok(out)
}
