//! The `hasse-forge` command line.
//!
//! Five subcommands over JSON variety descriptions:
//!
//! - `count`: point counts `N_1..N_max_m`.
//! - `zeta`: the factors `P_i(t)` of the rational zeta function plus a
//!   functional equation report.
//! - `spectrum`: the Frobenius eigenvalue table with Weil bound residuals.
//! - `regdet`: regularized determinants and anomalous dimensions of both
//!   parity classes at chosen sample points.
//! - `verify`: the end-to-end identity `zeta(X, s) = det_oo(odd) / det_oo(even)`.
//!
//! Every command reads `--spec FILE` and optionally writes a machine-readable
//! CSV next to the human table (`--csv PATH`). CSV output is byte
//! deterministic: fixed column order, `{:.15e}` floats, `.` decimal
//! separator, `\n` line endings.
//!
//! Exit codes: 0 on success, 1 when a verified assertion fails (identity
//! violation, functional equation defect, Weil bound violation), 2 on
//! input errors (unreadable or malformed spec, bad flag values).

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::regdet::{
    self, format_complex, RegDetError, SampleStatus, TheoremAReport,
};
use crate::spectrum::{build_tp_model, spectrum_from_zeta, FrobeniusSpectrum};
use crate::tolerances::Tolerances;
use crate::varieties::io::parse_variety_file;
use crate::varieties::zeta::{zeta_from_counts, ZetaRational};
use crate::varieties::{functional_equation_check, gather_counts, VarietySpec};

/// Zeta functions of varieties over finite fields: point counts, rational
/// zeta factors, Frobenius spectra, and regularized determinants.
#[derive(Debug, Parser)]
#[command(name = "hasse-forge", version, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by all subcommands. Each command uses the subset it
/// documents and ignores the rest, so scripted invocations can carry one
/// flag set across commands.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON variety description.
    #[arg(long, value_name = "FILE")]
    pub spec: PathBuf,

    /// Comma-separated complex sample points: `2`, `1.5+0.7i`, `-0.3i`.
    /// Required by `regdet` and `verify`.
    #[arg(long, value_name = "LIST")]
    pub s: Option<String>,

    /// Counts to compute (`count`) or to feed the reconstruction (`zeta`);
    /// surplus counts beyond the reconstruction minimum are consistency
    /// checked.
    #[arg(long = "max-m", value_name = "N")]
    pub max_m: Option<usize>,

    /// Scale factor for the `regdet` scaling law report.
    #[arg(long, value_name = "X")]
    pub delta: Option<f64>,

    /// Override the comparison tolerance (relative error).
    #[arg(long, value_name = "X")]
    pub tol: Option<f64>,

    /// Write the machine-readable CSV here as well.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,

    /// Seed for randomized sweeps. Accepted for forward compatibility;
    /// every current command is deterministic and ignores it.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Point counts N_1..N_max_m over the extension tower.
    Count(CommonArgs),
    /// Rational zeta factors P_i(t) with a functional equation report.
    Zeta(CommonArgs),
    /// Frobenius eigenvalues by cohomological degree with Weil residuals.
    Spectrum(CommonArgs),
    /// Regularized determinants of s - Theta on both parity classes.
    Regdet(CommonArgs),
    /// Verify zeta(X, s) = det_oo(odd) / det_oo(even) at sample points.
    Verify(CommonArgs),
}

/// Failures are split by exit code: assertion failures are verified
/// mathematical statements that did not hold (exit 1), input failures are
/// everything the user can fix (exit 2).
#[derive(Debug)]
pub enum CliError {
    Assertion(String),
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Assertion(m) => write!(f, "assertion failed: {m}"),
            CliError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Assertion(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

fn input(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Identity violations keep exit code 1; everything else that the engine
/// reports (branch boundary, poles, malformed data) traces back to the
/// user's spec or sample choice.
fn regdet_err(e: RegDetError) -> CliError {
    match e {
        RegDetError::IdentityViolated { .. } => CliError::Assertion(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

/// Parses one complex number: `2`, `-0.5`, `1.5+0.7i`, `2-1.3i`, `0.7i`,
/// `i`, `-i`. Exponent forms like `2.5e-3+1e-2i` work; the imaginary unit
/// is a trailing `i` or `I`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let t = text.trim();
    let bad = || CliError::Input(format!("cannot parse `{t}` as a complex number"));
    if t.is_empty() {
        return Err(CliError::Input("empty sample entry".into()));
    }
    let Some(body) = t.strip_suffix(['i', 'I']) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    // The split between real and imaginary parts is the last sign that is
    // neither leading nor an exponent sign.
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let unit = |s: &str| match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        other => other.parse::<f64>().map_err(|_| bad()),
    };
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, unit(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, unit(body)?)),
    }
}

/// Parses the `--s` list; the list must be nonempty.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    let samples = text.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    if samples.is_empty() {
        return Err(CliError::Input("sample list is empty".into()));
    }
    Ok(samples)
}

fn require_samples(args: &CommonArgs, cmd: &str) -> Result<Vec<Complex64>, CliError> {
    match &args.s {
        Some(list) => parse_complex_list(list),
        None => Err(CliError::Input(format!(
            "`{cmd}` needs sample points: pass --s LIST, e.g. --s 2,3,1.5+0.7i"
        ))),
    }
}

fn tolerances(args: &CommonArgs) -> Result<Tolerances, CliError> {
    match args.tol {
        None => Ok(Tolerances::default()),
        Some(t) if t > 0.0 && t.is_finite() => Ok(Tolerances::with_identity(t)),
        Some(t) => Err(CliError::Input(format!("--tol must be positive and finite, got {t}"))),
    }
}

fn load_spec(args: &CommonArgs) -> Result<VarietySpec, CliError> {
    parse_variety_file(&args.spec)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.spec.display())))
}

/// Reconstructs the zeta function from exhaustive counts, gathering exactly
/// the minimum needed unless the user requests surplus verification rounds.
fn zeta_of(spec: &VarietySpec, max_m: Option<usize>) -> Result<(ZetaRational, usize), CliError> {
    let betti = spec.betti();
    let need = betti.iter().sum::<usize>().div_ceil(2);
    let rounds = need.max(max_m.unwrap_or(0));
    let counts = gather_counts(spec, rounds).map_err(input)?;
    let z = zeta_from_counts(&counts, &betti).map_err(input)?;
    Ok((z, rounds))
}

fn write_csv(path: &PathBuf, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Two-column fixed precision rendering of a complex value for tables.
fn table_c(z: Complex64) -> String {
    format!("{:>24.15e} {:>24.15e}", z.re, z.im)
}

/// `1 - 3 t + 5 t^2` from ascending integer coefficients.
fn poly_display(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.magnitude().to_string();
        let neg = c.sign() == num_bigint::Sign::Minus;
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit_coeff = mag == "1" && j > 0;
        if !unit_coeff {
            out.push_str(&mag);
        }
        match j {
            0 => {}
            1 => out.push_str(if unit_coeff { "t" } else { " t" }),
            _ => {
                out.push_str(if unit_coeff { "t^" } else { " t^" });
                out.push_str(&j.to_string());
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Zeta(a) => cmd_zeta(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Regdet(a) => cmd_regdet(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn entry() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_count(args: &CommonArgs) -> Result<(), CliError> {
    let spec = load_spec(args)?;
    let max_m = args.max_m.unwrap_or(3);
    if max_m < 1 {
        return Err(CliError::Input("--max-m must be at least 1".into()));
    }
    let counts = gather_counts(&spec, max_m).map_err(input)?;
    println!("point counts over F_q, q = {}", counts.q);
    println!("{:>4}  N_m", "m");
    let mut csv = String::from("m,N_m\n");
    for (i, n) in counts.counts.iter().enumerate() {
        println!("{:>4}  {}", i + 1, n);
        csv.push_str(&format!("{},{}\n", i + 1, n));
    }
    if let Some(path) = &args.csv {
        write_csv(path, &csv)?;
    }
    Ok(())
}

fn cmd_zeta(args: &CommonArgs) -> Result<(), CliError> {
    let spec = load_spec(args)?;
    let (z, rounds) = zeta_of(&spec, args.max_m)?;
    let tol = tolerances(args)?;
    println!("zeta factors over F_{}, dimension {}, from {} counts", z.q, z.d, rounds);
    let mut csv = String::from("i,j,coeff\n");
    for (i, p) in z.polys.iter().enumerate() {
        println!("P_{i}(t) = {}", poly_display(p));
        for (j, c) in p.iter().enumerate() {
            csv.push_str(&format!("{i},{j},{c}\n"));
        }
    }
    let report = functional_equation_check(&z, tol.invariant);
    println!("functional equation lambda -> q^d / lambda:");
    for pairing in &report.pairings {
        println!(
            "  H^{} <-> H^{}: multiset deviation {:.3e}",
            pairing.degree, pairing.partner, pairing.max_deviation
        );
    }
    if let Some(path) = &args.csv {
        write_csv(path, &csv)?;
    }
    if !report.ok() {
        return Err(CliError::Assertion(format!(
            "functional equation violated: {}",
            report.violations.join("; ")
        )));
    }
    println!("functional equation: ok");
    Ok(())
}

/// Relative deviation of `|lambda|` from the Weil modulus `q^{i/2}`.
fn weil_relerr(q: u128, degree: usize, lambda: Complex64) -> f64 {
    let expected = (q as f64).powf(degree as f64 / 2.0);
    (lambda.norm() - expected).abs() / expected
}

fn spectrum_rows(s: &FrobeniusSpectrum) -> (String, String, f64) {
    let mut table = String::new();
    let mut csv = String::from("i,re,im,mult,jordan,weil_relerr\n");
    let mut worst = 0.0f64;
    for (i, entries) in s.by_degree.iter().enumerate() {
        for e in entries {
            let jordan =
                e.jordan.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(";");
            let rel = weil_relerr(s.q, i, e.lambda);
            worst = worst.max(rel);
            table.push_str(&format!(
                "{:>3} {} {:>5} {:>8} {:>12.3e}\n",
                i,
                table_c(e.lambda),
                e.multiplicity,
                jordan,
                rel
            ));
            csv.push_str(&format!(
                "{},{:.15e},{:.15e},{},{},{:.15e}\n",
                i, e.lambda.re, e.lambda.im, e.multiplicity, jordan, rel
            ));
        }
    }
    (table, csv, worst)
}

fn cmd_spectrum(args: &CommonArgs) -> Result<(), CliError> {
    let spec = load_spec(args)?;
    let (z, _) = zeta_of(&spec, args.max_m)?;
    let tol = tolerances(args)?;
    let spectrum = spectrum_from_zeta(&z).map_err(input)?;
    let (table, csv, worst) = spectrum_rows(&spectrum);
    println!("Frobenius eigenvalues over F_{}:", spectrum.q);
    println!(
        "{:>3} {:>24} {:>24} {:>5} {:>8} {:>12}",
        "i", "re", "im", "mult", "jordan", "weil"
    );
    print!("{table}");
    if let Some(path) = &args.csv {
        write_csv(path, &csv)?;
    }
    if worst > tol.weil {
        return Err(CliError::Assertion(format!(
            "Weil bound violated: relative residual {worst:.3e} exceeds {:.1e}",
            tol.weil
        )));
    }
    println!("weil bounds: ok (worst relative residual {worst:.3e})");
    Ok(())
}

fn cmd_regdet(args: &CommonArgs) -> Result<(), CliError> {
    let spec = load_spec(args)?;
    let samples = require_samples(args, "regdet")?;
    let tol = tolerances(args)?;
    let delta = args.delta.unwrap_or(1.0);
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(CliError::Input(format!("--delta must be positive and finite, got {delta}")));
    }
    let (z, _) = zeta_of(&spec, args.max_m)?;
    let spectrum = spectrum_from_zeta(&z).map_err(input)?;
    let model = build_tp_model(&spectrum);
    let parity_name = ["even", "odd"];
    let mut csv = String::from(
        "s,parity,det_re,det_im,finite_re,finite_im,dim_re,dim_im,vanishing,scaling_ratio_re,scaling_ratio_im\n",
    );
    let mut scaling_failures = Vec::new();
    println!("regularized determinants of s - Theta over F_{} (delta = {delta}):", model.q);
    for &s in &samples {
        println!("s = {}", format_complex(s));
        let mut dets = [Complex64::new(f64::NAN, 0.0); 2];
        let mut vanish = [false; 2];
        for parity in 0..2 {
            let det = regdet::regdet_parity_class(&model, parity, s, &tol).map_err(regdet_err)?;
            let dim = regdet::dim_infty(&model, parity, s, &tol);
            let scaling =
                regdet::scaling_check(&model, parity, s, delta, &tol).map_err(regdet_err)?;
            dets[parity] = det.regularized;
            vanish[parity] = det.vanishing;
            println!(
                "  {:<4} det_oo = {}  dim_oo = {}  vanishing = {}",
                parity_name[parity],
                table_c(det.regularized),
                table_c(dim),
                det.vanishing
            );
            println!(
                "  {:<4} finite = {}  scaling ratio = {}",
                "",
                table_c(det.finite),
                table_c(scaling.ratio)
            );
            if !scaling.ok {
                scaling_failures.push(format!(
                    "s = {}, parity {}: ratio {} off unity",
                    format_complex(s),
                    parity_name[parity],
                    format_complex(scaling.ratio)
                ));
            }
            csv.push_str(&format!(
                "{},{},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{},{:.15e},{:.15e}\n",
                format_complex(s),
                parity_name[parity],
                det.regularized.re,
                det.regularized.im,
                det.finite.re,
                det.finite.im,
                dim.re,
                dim.im,
                det.vanishing,
                scaling.ratio.re,
                scaling.ratio.im
            ));
        }
        if !vanish[0] && !vanish[1] {
            println!("  zeta(s) = odd/even = {}", table_c(dets[1] / dets[0]));
        }
    }
    if let Some(path) = &args.csv {
        write_csv(path, &csv)?;
    }
    if !scaling_failures.is_empty() {
        return Err(CliError::Assertion(scaling_failures.join("; ")));
    }
    Ok(())
}

fn cmd_verify(args: &CommonArgs) -> Result<(), CliError> {
    let spec = load_spec(args)?;
    let samples = require_samples(args, "verify")?;
    let tol = tolerances(args)?;
    let report = regdet::verify_theorem_a(&spec, &samples, &tol).map_err(regdet_err)?;
    print_verify_report(&report);
    if let Some(path) = &args.csv {
        write_csv(path, &report.csv())?;
    }
    if report.ok() {
        Ok(())
    } else {
        let worst = report
            .rows
            .iter()
            .filter(|r| r.status == SampleStatus::Violated)
            .map(|r| r.relerr)
            .fold(0.0f64, f64::max);
        Err(CliError::Assertion(format!(
            "zeta(s) != det_oo(odd)/det_oo(even): worst relative error {worst:.3e} \
             exceeds {:.1e}",
            report.tol
        )))
    }
}

fn print_verify_report(report: &TheoremAReport) {
    println!("zeta(s) versus det_oo(s - Theta | odd) / det_oo(s - Theta | even), q = {}:", report.q);
    println!(
        "{:>16} {:>24} {:>24} {:>12} {:>22}",
        "s", "lhs re", "lhs im", "relerr", "status"
    );
    for r in &report.rows {
        println!(
            "{:>16} {} {:>12.3e} {:>22}",
            format_complex(r.s),
            table_c(r.lhs),
            r.relerr,
            r.status.as_str()
        );
    }
    let verdict = if report.ok() { "PASS" } else { "FAIL" };
    println!(
        "{verdict}: {} samples, max relerr {:.3e} (tolerance {:.1e}), \
         finite cross-check max relerr {:.3e}",
        report.rows.len(),
        report.max_relerr,
        report.tol,
        report.max_finite_relerr
    );
}
