//! Command-line front end. Every command writes one JSON report (or CSV for
//! point sets) and returns an exit code: 0 when every check passed, 2 for
//! unreadable input, 3 for failed certificates, 4 for insufficient precision,
//! 1 for I/O trouble.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, ErrorClass, Result};
use crate::exact_algebra::ball::parse_rational;
use crate::exact_algebra::{Q, DEFAULT_PRECISION_BITS};
use crate::pointset::{
    build_window, coordinates_from_csv, generate, points_from_coordinates, stats, to_csv, to_svg,
    verify_selfsimilarity, WindowSpec,
};
use crate::scheme_builder::{
    audit, build_scheme_for, load_scheme, well_distributing, NumericParams, Route, Scheme, SchemeJson, DEFAULT_GAMMA,
    DEFAULT_T,
};
use crate::spectrum::{
    check_properties_p, class_multiplicities, naive_k, parse_rational_matrix, part_scheme_dimension, part_set_dimension,
    spectrum_from_matrix, SpectrumSpec,
};

#[derive(Parser, Debug)]
#[command(name = "selfsim", version, about = "Cut-and-project schemes with a prescribed self-similarity")]
pub struct Cli {
    /// working precision of certified numerics, in bits
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: u64,
    /// lattice points r with ‖r‖∞ ≤ this are enumerated
    #[arg(long, global = true, default_value_t = 50)]
    pub enum_radius: i64,
    /// window half-width / disk radius (decimal or p/q)
    #[arg(long, global = true, default_value = "1")]
    pub window_scale: String,
    #[arg(long, global = true, default_value = "auto")]
    pub route: String,
    /// also write an SVG scatter plot to this file
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// output file (stdout if absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Factor the spectrum, check properties 𝔓 and report dimensions
    Analyze { input: PathBuf },
    /// Build a scheme for a spectrum JSON
    Build { input: PathBuf },
    /// Generate the cut-and-project set of a scheme file as CSV
    Generate { scheme: PathBuf },
    /// Audit a scheme file and optionally a point set produced from it
    Verify { scheme: PathBuf, points: Option<PathBuf> },
    /// Well distributing matrix for row sums l₁ … l_u
    Kmatrix {
        #[arg(required = true)]
        l: Vec<usize>,
        /// number of columns (the minimal K if absent)
        #[arg(long)]
        k: Option<usize>,
    },
}

/// Settings recorded in every artifact.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub precision_bits: u64,
    pub enum_radius: i64,
    pub window_scale: String,
    pub route: String,
    pub t_values: Vec<String>,
    pub gamma: String,
    pub seed: u64,
}

impl RunConfig {
    fn from_cli(c: &Cli) -> RunConfig {
        RunConfig {
            precision_bits: c.precision_bits,
            enum_radius: c.enum_radius,
            window_scale: c.window_scale.clone(),
            route: c.route.clone(),
            t_values: DEFAULT_T.iter().map(|s| s.to_string()).collect(),
            gamma: DEFAULT_GAMMA.to_string(),
            seed: c.seed,
        }
    }

    fn params(&self) -> NumericParams {
        NumericParams { bits: self.precision_bits, ..NumericParams::default() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 1,
        _ => match e.class() {
            ErrorClass::Input => 2,
            ErrorClass::Certificate => 3,
            ErrorClass::Precision => 4,
        },
    }
}

/// Outcome of a command: the artifact text and whether its checks passed.
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(Error::from)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn parse_scale(s: &str) -> Result<Q> {
    parse_rational(s).ok_or_else(|| Error::Parse(format!("--window-scale {s:?} is not a decimal or p/q")))
}

fn load_input_spectrum(text: &str, bits: u64) -> Result<(SpectrumSpec, Value)> {
    let v: Value = serde_json::from_str(text)?;
    let is_matrix = v.as_array().is_some_and(|rows| rows.first().is_some_and(|r| r.is_array()));
    if is_matrix {
        let m = parse_rational_matrix(text)?;
        if m.iter().any(|r| r.len() != m.len()) {
            return Err(Error::Parse("matrix must be square".into()));
        }
        let spec = spectrum_from_matrix(&m, bits)?;
        Ok((spec, json!("matrix")))
    } else {
        Ok((SpectrumSpec::from_json(text, bits)?, json!("spectrum")))
    }
}

pub fn analyze(text: &str, cfg: &RunConfig) -> Result<Outcome> {
    let (spec, kind) = load_input_spectrum(text, cfg.precision_bits)?;
    let verdict = check_properties_p(&spec)?;
    let mut factors = vec![];
    let (mut min_s, mut naive_s, mut set_s) = (0, 0, 0);
    for p in &spec.parts {
        let dim = part_scheme_dimension(p);
        let naive = if p.degree() == 1 || p.is_nonreal_quadratic() {
            dim.s
        } else {
            let (_, l) = class_multiplicities(p);
            p.degree() * naive_k(&l)?
        };
        min_s += dim.s;
        naive_s += naive;
        set_s += part_set_dimension(p);
        factors.push(json!({
            "min_poly": p.f.to_i64(),
            "polynomial": p.f.to_string(),
            "roots": p.roots.iter().zip(&p.mults).map(|(r, m)| json!({"root": r.label(), "multiplicity": m})).collect::<Vec<_>>(),
            "d": p.degree(),
            "M": p.max_mult(),
            "m": p.min_mult(),
            "cyclotomic": crate::exact_algebra::is_cyclotomic(&p.f),
            "regime": dim.regime,
            "scheme_dimension": dim.s,
            "naive_dimension": naive,
        }));
    }
    let reasons: Vec<String> = verdict.failures.iter().map(|f| f.to_string()).collect();
    let report = json!({
        "input": kind,
        "spectrum": spec.to_json_entries(),
        "n": spec.n(),
        "minimal_polynomial_factors": spec.parts.iter().map(|p| p.f.to_string()).collect::<Vec<_>>(),
        "diagonalizable": true,
        "properties_p": {"satisfied": verdict.satisfied, "failures": verdict.failures, "reasons": reasons},
        "factors": factors,
        "min_scheme_dimension": min_s,
        "naive_scheme_dimension": naive_s,
        "min_set_dimension": if verdict.satisfied { json!(set_s) } else { Value::Null },
        "config": cfg,
    });
    Ok(Outcome { code: if verdict.satisfied { 0 } else { 3 }, report })
}

pub fn build(text: &str, cfg: &RunConfig) -> Result<(Scheme, Outcome)> {
    let spec = SpectrumSpec::from_json(text, cfg.precision_bits)?;
    let route: Route = cfg.route.parse()?;
    let sc = build_scheme_for(&spec, route, &cfg.params())?;
    let rep = audit(&sc);
    let mut js = SchemeJson::from_scheme(&sc);
    js.audit = Some(serde_json::to_value(&rep)?);
    js.config = Some(serde_json::to_value(cfg)?);
    let report = serde_json::to_value(&js)?;
    Ok((sc, Outcome { code: if rep.passed { 0 } else { 3 }, report }))
}

/// Fraction of random window points that B maps back into the closed window.
pub fn window_invariance(sc: &Scheme, w: &WindowSpec, samples: usize, seed: u64) -> (usize, usize) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (b, _) = sc.b_numeric().to_f64_with_error();
    let mut ok = 0;
    for _ in 0..samples {
        let u: Vec<f64> = (0..w.dim).map(|_| rng.gen()).collect();
        let y = w.sample(&u);
        let by: Vec<f64> = (0..w.dim).map(|i| (0..w.dim).map(|j| b[i][j] * y[j]).sum()).collect();
        if w.contains(&by, 1e-12) {
            ok += 1;
        }
    }
    (ok, samples)
}

fn meta_path(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".meta.json");
    PathBuf::from(p)
}

pub fn generate_cmd(scheme_text: &str, cfg: &RunConfig) -> Result<(String, Outcome, Option<String>)> {
    let sc = load_scheme(scheme_text)?;
    let scale = parse_scale(&cfg.window_scale)?;
    let w = build_window(&sc, &scale)?;
    let ps = generate(&sc, &w, cfg.enum_radius)?;
    let csv = to_csv(&ps, &sc);
    let st = stats(&ps);
    let ss = verify_selfsimilarity(&ps, &sc)?;
    let (inv_ok, inv_n) = window_invariance(&sc, &w, 10_000, cfg.seed);
    let svg = if ps.n <= 2 { Some(to_svg(&ps)?) } else { None };
    let passed = ss.violations == 0 && inv_ok == inv_n;
    let report = json!({
        "points": ps.points.len(),
        "flagged_boundary_points": ps.flagged,
        "enum_radius": ps.enum_radius,
        "window": w,
        "indets": ps.indets.iter().map(|(k, v)| json!({"name": k, "value": v})).collect::<Vec<_>>(),
        "stats": st,
        "self_similarity": ss,
        "window_invariance": {"samples": inv_n, "inside": inv_ok},
        "config": cfg,
    });
    Ok((csv, Outcome { code: if passed { 0 } else { 3 }, report }, svg))
}

pub fn verify_cmd(scheme_text: &str, csv: Option<(&str, Option<&str>)>) -> Result<Outcome> {
    let sc = load_scheme(scheme_text)?;
    let rep = audit(&sc);
    let mut passed = rep.passed;
    let mut report = json!({ "scheme": sc.provenance, "n": sc.n, "s": sc.s, "audit": rep });
    if let Some((text, meta)) = csv {
        let rs = coordinates_from_csv(text, sc.s)?;
        let (window, radius) = match meta {
            Some(m) => {
                let v: Value = serde_json::from_str(m)?;
                let w: WindowSpec = serde_json::from_value(v["window"].clone())?;
                (w, v["enum_radius"].as_i64().ok_or_else(|| Error::Parse("metadata lacks enum_radius".into()))?)
            }
            None => {
                let r = rs.iter().flatten().map(|v| v.abs()).max().unwrap_or(0);
                (build_window(&sc, &Q::from_integer(1.into()))?, r)
            }
        };
        let ps = points_from_coordinates(&sc, &window, rs, radius);
        let ss = verify_selfsimilarity(&ps, &sc)?;
        passed &= ss.violations == 0;
        report["self_similarity"] = serde_json::to_value(&ss)?;
    }
    report["passed"] = json!(passed);
    Ok(Outcome { code: if passed { 0 } else { 3 }, report })
}

pub fn kmatrix(l: &[usize], k: Option<usize>) -> Result<Outcome> {
    let kmin = naive_k(l)?;
    let k = k.unwrap_or(kmin);
    let m = well_distributing(l, k)?;
    let report = json!({
        "l": l,
        "K": k,
        "minimal_K": kmin,
        "matrix": m.grid,
        "valid": m.is_valid(),
    });
    Ok(Outcome { code: if m.is_valid() { 0 } else { 3 }, report })
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let cfg = RunConfig::from_cli(cli);
    let out = cli.out.as_deref();
    let outcome = match &cli.command {
        Command::Analyze { input } => analyze(&read(input)?, &cfg)?,
        Command::Build { input } => build(&read(input)?, &cfg)?.1,
        Command::Kmatrix { l, k } => kmatrix(l, *k)?,
        Command::Verify { scheme, points } => {
            let csv = points.as_ref().map(|p| read(p)).transpose()?;
            let meta = points.as_ref().and_then(|p| fs::read_to_string(meta_path(p)).ok());
            verify_cmd(&read(scheme)?, csv.as_deref().map(|c| (c, meta.as_deref())))?
        }
        Command::Generate { scheme } => {
            let (csv, outcome, svg) = generate_cmd(&read(scheme)?, &cfg)?;
            if let (Some(path), Some(svg)) = (&cli.svg, svg) {
                fs::write(path, svg)?;
            }
            match out {
                Some(p) => {
                    fs::write(p, &csv)?;
                    fs::write(meta_path(p), pretty(&outcome.report))?;
                    print!("{}", pretty(&outcome.report));
                }
                None => {
                    print!("{csv}");
                    eprint!("{}", pretty(&outcome.report));
                }
            }
            return Ok(outcome.code);
        }
    };
    emit(out, &pretty(&outcome.report))?;
    Ok(outcome.code)
}

/// Entry point for the binary; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
