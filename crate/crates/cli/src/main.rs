use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wehrhart::analysis::{
    check_monotonicity, check_nonneg_coeffs, classify_weight, h2_tensor, is_psd, nonneg_on_ray, Check,
    MonotoneFailure, MonotoneMode, WeightClass,
};
use wehrhart::oracle::compare_series;
use wehrhart::{
    cone_generators, enumerate_points, eulerian_poly, half_open_decomposition, hstar_poly, triangulate, HStarResult,
    Polytope, Rat, Weight, WeightPoly,
};
use wehrhart_cli::json::{
    coeff_strings, hstar_text, hstar_value, matrix_text, matrix_value, parse_rational, polytope_value,
};
use wehrhart_cli::{parse_polytope, parse_weight};

#[derive(Parser)]
#[command(name = "wehrhart", version, about = "Exact weighted Ehrhart series of rational polytopes")]
struct Cli {
    /// Seed for randomized modes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
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

#[derive(Subcommand)]
enum Command {
    /// Weighted h*-polynomial and its denominator.
    Hstar {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        weight: String,
    },
    /// Weighted Ehrhart function for n = 0..=N from the rational function.
    Series {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        dilations: usize,
    },
    /// Half-open triangulation, optionally with parallelepiped points.
    Decompose {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        dump_points: bool,
    },
    /// Generalized Eulerian polynomial A_D^LAMBDA.
    Eulerian {
        d: usize,
        /// Rational in [0, 1], e.g. 1/3.
        lambda: String,
    },
    /// Nonnegativity and monotonicity checks; exit code 1 on failure.
    Check {
        kind: CheckKind,
        #[arg(long)]
        polytope: PathBuf,
        /// Outer polytope for `monotone`.
        #[arg(long)]
        inside: Option<PathBuf>,
        #[arg(long)]
        weight: String,
        /// Common period to lift to; defaults to the denominator.
        #[arg(long)]
        g: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Coeffwise)]
        mode: Mode,
    },
    /// Rank-two moment tensor h-coefficients of a lattice polytope.
    Tensor {
        kind: TensorKind,
        #[arg(long)]
        polytope: PathBuf,
        /// Check every coefficient for positive semidefiniteness.
        #[arg(long)]
        psd: bool,
    },
    /// Compares the series against brute-force lattice point sums.
    Verify {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        dilations: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Nonneg,
    Ray,
    Monotone,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Coeffwise,
    Ray,
}

#[derive(Clone, Copy, ValueEnum)]
enum TensorKind {
    H2,
}

enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Polytope> {
    let doc = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_polytope(&doc).with_context(|| format!("parsing {}", path.display()))
}

fn load_weight(s: &str, d: usize) -> Result<WeightPoly> {
    Ok(parse_weight(s, d).context("parsing weight")?.to_weight_poly(d))
}

/// The single-degree form of a weight, needed by the certified checks.
fn homogeneous(w: WeightPoly) -> Result<Weight> {
    Weight::new(w.ambient_dim, w.terms).context("this check needs a homogeneous weight")
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
    }
}

fn verdict_line(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(cli: &Cli) -> Result<Verdict> {
    let format = cli.format;
    match &cli.command {
        Command::Hstar { polytope, weight } => {
            let p = load(polytope)?;
            let r = hstar_poly(&p, &load_weight(weight, p.ambient_dim())?)?;
            emit(format, hstar_text(&r), hstar_value(&r));
        }
        Command::Series {
            polytope,
            weight,
            dilations,
        } => {
            let p = load(polytope)?;
            let r = hstar_poly(&p, &load_weight(weight, p.ambient_dim())?)?;
            let values = r.expand(*dilations);
            let text = values.iter().enumerate().map(|(n, v)| format!("{n}: {v}")).collect::<Vec<_>>().join("\n");
            let strings: Vec<String> = values.iter().map(Rat::to_string).collect();
            emit(format, text, json!({ "series": strings }));
        }
        Command::Decompose { polytope, dump_points } => decompose(format, &load(polytope)?, *dump_points)?,
        Command::Eulerian { d, lambda } => {
            let lambda = parse_rational(lambda)?;
            let a = eulerian_poly(*d, &lambda)?;
            emit(format, a.to_string(), json!({ "coefficients": coeff_strings(&a) }));
        }
        Command::Check {
            kind,
            polytope,
            inside,
            weight,
            g,
            mode,
        } => {
            let p = load(polytope)?;
            let w = load_weight(weight, p.ambient_dim())?;
            return match kind {
                CheckKind::Nonneg | CheckKind::Ray => check_numerator(cli, &p, w, *g, matches!(kind, CheckKind::Ray)),
                CheckKind::Monotone => {
                    let Some(inside) = inside else {
                        bail!("check monotone needs --inside");
                    };
                    check_monotone(format, &p, &load(inside)?, homogeneous(w)?, *g, *mode)
                }
            };
        }
        Command::Tensor {
            kind: TensorKind::H2,
            polytope,
            psd,
        } => return tensor(format, &load(polytope)?, *psd),
        Command::Verify {
            polytope,
            weight,
            dilations,
        } => {
            let p = load(polytope)?;
            let w = load_weight(weight, p.ambient_dim())?;
            let r = hstar_poly(&p, &w)?;
            let report = compare_series(&p, &w, &r, *dilations)?;
            let mismatch = report.first_mismatch();
            let text = match mismatch {
                None => format!("PASS: series agrees with lattice point sums for n = 0..={dilations}"),
                Some(n) => format!(
                    "FAIL: at n = {n} the series gives {} but the lattice point sum is {}",
                    report.series[n], report.oracle[n]
                ),
            };
            let strings = |v: &[Rat]| v.iter().map(Rat::to_string).collect::<Vec<_>>();
            let value = json!({
                "pass": mismatch.is_none(),
                "first_mismatch": mismatch,
                "series": strings(&report.series),
                "oracle": strings(&report.oracle),
            });
            emit(format, text, value);
            return Ok(if mismatch.is_none() { Verdict::Pass } else { Verdict::Fail });
        }
    }
    Ok(Verdict::Pass)
}

fn decompose(format: Format, p: &Polytope, dump_points: bool) -> Result<()> {
    let q = p.denominator();
    let cells = half_open_decomposition(p, &triangulate(p)?)?;
    let mut lines = vec![format!("{} cells, denominator {q}", cells.len())];
    let mut values = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let verts: Vec<String> = cell
            .vertices()
            .iter()
            .map(|v| format!("({})", v.iter().map(Rat::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        let strict: Vec<usize> = cell.strict().iter().copied().collect();
        lines.push(format!("cell {i}: {} strict {strict:?}", verts.join(" ")));
        let mut value = json!({
            "vertices": polytope_value(&cell.closure())["vertices"],
            "strict": strict,
        });
        if dump_points {
            let points = enumerate_points(&cone_generators(cell, q)?)?;
            let mut dumped = Vec::new();
            for pt in &points {
                let coords: Vec<String> = pt.point.iter().map(BigInt::to_string).collect();
                lines.push(format!("  [{}] height {}", coords.join(", "), pt.height));
                dumped.push(json!({
                    "point": coords,
                    "height": pt.height,
                    "lambdas": pt.lambdas.iter().map(Rat::to_string).collect::<Vec<_>>(),
                }));
            }
            value["points"] = json!(dumped);
        }
        values.push(value);
    }
    emit(format, lines.join("\n"), json!({ "denominator": q, "cells": values }));
    Ok(())
}

fn lifted(r: HStarResult, g: Option<usize>) -> Result<HStarResult> {
    match g {
        Some(g) => Ok(r.rebase(g, r.exponent)?),
        None => Ok(r),
    }
}

fn class_name(c: WeightClass) -> &'static str {
    match c {
        WeightClass::Rp => "R_P",
        WeightClass::Sp => "S_P",
        WeightClass::Uncertified => "uncertified",
    }
}

fn check_numerator(cli: &Cli, p: &Polytope, w: WeightPoly, g: Option<usize>, ray: bool) -> Result<Verdict> {
    let class = Weight::new(w.ambient_dim, w.terms.clone()).ok().map(|h| classify_weight(p, &h));
    let r = lifted(hstar_poly(p, &w)?, g)?;
    let mut text = vec![hstar_text(&r)];
    if let Some(c) = class {
        text.push(format!("weight class: {}", class_name(c)));
    }
    let mut value = hstar_value(&r);
    value["weight_class"] = json!(class.map(class_name));
    let pass = if ray {
        let verdict = nonneg_on_ray(&r.numerator);
        if let Check::Fail(wit) = &verdict {
            text.push(format!("h*({}) = {} < 0", wit.t, wit.value));
            if let Some((a, b)) = &wit.root_interval {
                text.push(format!("sign change in ({a}, {b})"));
            }
            value["witness"] = json!({ "t": wit.t.to_string(), "value": wit.value.to_string() });
        }
        // Seeded sampling must agree with an exact PASS.
        if verdict.is_pass() {
            if let Some(t) = sample_negative(&r, cli.seed) {
                bail!("internal inconsistency: sampled h*({t}) < 0 after an exact PASS");
            }
        }
        verdict.is_pass()
    } else {
        let verdict = check_nonneg_coeffs(&r.numerator);
        if let Check::Fail(k) = verdict {
            text.push(format!("coefficient of t^{k} is {}", r.numerator.coeff(k)));
            value["witness"] = json!({ "exponent": k, "coefficient": r.numerator.coeff(k).to_string() });
        }
        verdict.is_pass()
    };
    text.push(verdict_line(pass).into());
    value["pass"] = json!(pass);
    emit(cli.format, text.join("\n"), value);
    Ok(if pass { Verdict::Pass } else { Verdict::Fail })
}

fn sample_negative(r: &HStarResult, seed: u64) -> Option<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..64)
        .map(|_| Rat::new(BigInt::from(rng.gen_range(0..10_000)), BigInt::from(rng.gen_range(1..=100))))
        .find(|t| r.numerator.eval(t).is_negative())
}

fn check_monotone(format: Format, p: &Polytope, q: &Polytope, w: Weight, g: Option<usize>, mode: Mode) -> Result<Verdict> {
    let g = g.unwrap_or_else(|| num_integer::lcm(p.denominator(), q.denominator()));
    let mode = match mode {
        Mode::Coeffwise => MonotoneMode::Coeffwise,
        Mode::Ray => MonotoneMode::Ray,
    };
    let report = check_monotonicity(p, q, &w, g, mode)?;
    let diff = report.difference();
    let mut text = vec![
        format!("L(t) = {}", report.lhs),
        format!("R(t) = {}", report.rhs),
        format!("R - L = {diff}"),
    ];
    let mut value = json!({
        "lhs": coeff_strings(&report.lhs),
        "rhs": coeff_strings(&report.rhs),
        "g": g,
    });
    match &report.verdict {
        Check::Pass => {}
        Check::Fail(MonotoneFailure::Coefficient(k)) => {
            text.push(format!("coefficient of t^{k} in R - L is {}", diff.coeff(*k)));
            value["witness"] = json!({ "exponent": k, "coefficient": diff.coeff(*k).to_string() });
        }
        Check::Fail(MonotoneFailure::Ray(wit)) => {
            text.push(format!("(R - L)({}) = {} < 0", wit.t, wit.value));
            value["witness"] = json!({ "t": wit.t.to_string(), "value": wit.value.to_string() });
        }
    }
    let pass = report.verdict.is_pass();
    text.push(verdict_line(pass).into());
    value["pass"] = json!(pass);
    emit(format, text.join("\n"), value);
    Ok(if pass { Verdict::Pass } else { Verdict::Fail })
}

fn tensor(format: Format, p: &Polytope, psd: bool) -> Result<Verdict> {
    let t = h2_tensor(p)?;
    let mut text = Vec::new();
    let mut coeffs = Vec::new();
    let mut pass = true;
    for (i, h) in t.coeffs.iter().enumerate() {
        text.push(format!("h_{i} =\n{}", matrix_text(h)));
        let mut value = json!({ "matrix": matrix_value(h) });
        if psd {
            match is_psd(h) {
                Check::Pass => text.push(format!("h_{i}: PSD")),
                Check::Fail(wit) => {
                    pass = false;
                    let v: Vec<String> = wit.vector.iter().map(Rat::to_string).collect();
                    text.push(format!("h_{i}: not PSD, v = [{}] gives vᵀhv = {}", v.join(", "), wit.value));
                    value["witness"] = json!({ "vector": v, "value": wit.value.to_string() });
                }
            }
        }
        coeffs.push(value);
    }
    if psd {
        text.push(verdict_line(pass).into());
    }
    emit(format, text.join("\n"), json!({ "coeffs": coeffs, "pass": pass }));
    Ok(if pass { Verdict::Pass } else { Verdict::Fail })
}
