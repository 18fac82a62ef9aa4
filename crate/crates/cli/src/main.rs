use clap::{Parser, Subcommand, ValueEnum};
use polarineq_core::harness::{self, ReportFormat, SuiteConfig};
use polarineq_core::inequalities::Mutation;
use polarineq_core::{
    circle_extremum, find_roots, sharpness_probe, Complex64, Error, ExtremumKind, Family, InequalityId, PolarSpec,
    Polynomial,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(name = "polarineq", version, about = "Numerical checks of polar-derivative inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run randomized premise-satisfying trials and check each inequality.
    Check {
        /// Comma-separated ids, or ALL.
        #[arg(long, default_value = "ALL")]
        ineq: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_delimiter = ',', default_value = "1.0,1.05,1.5,3.0")]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 512)]
        angles: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall time (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Minimal relative slack of one inequality on an equality family.
    Sharpness {
        #[arg(long)]
        ineq: String,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Polar points, comma-separated complex numbers such as 3 or 1.5-2i.
        #[arg(long, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Vec<Complex64>,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
        beta: Complex64,
        /// Leading coefficient for the power and erdos_lax families.
        #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex64,
        /// Constant term for the erdos_lax family.
        #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
        b: Complex64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Search near the premise boundaries for a violation.
    Fuzz {
        #[arg(long, default_value = "ALL")]
        ineq: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, hide = true)]
        mutate_te2: bool,
    },
    /// Roots of a polynomial given as {"coeffs": [[re, im], ...]}.
    Roots {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Certified max or min of |P| on a circle.
    Extrema {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, value_enum, default_value_t = KindArg::Max)]
        kind: KindArg,
        /// Absolute tolerance; defaults to 1e-9 * sum |a_j| max(1, r)^j.
        #[arg(long)]
        eps: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Power,
    #[value(alias = "erdos_lax")]
    ErdosLax,
    Turan,
    Half,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Max,
    Min,
}

/// Parses `3`, `-2.5`, `1.5i`, `-i`, `1-2i`, `0.5+0.25i`.
fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("not a complex number: {text:?}");
    let imag = |s: &str| -> Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse().map_err(|_| bad()),
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return t.parse().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re: f64 = body[..i].parse().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn read_poly(path: &Path) -> Result<Polynomial, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Polynomial::from_json(&text)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    print!("{}", harness::to_json(value)?);
    Ok(())
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Check { ineq, trials, seed, tol, radii, angles, format, out, timing } => {
            let config = SuiteConfig {
                ids: InequalityId::parse_list(&ineq)?,
                trials,
                seed,
                tol_rel: tol,
                radii,
                angles_per_radius: angles,
                timing,
            };
            let report = harness::run_suite(&config)?;
            let format = match format {
                Format::Json => ReportFormat::Json,
                Format::Csv => ReportFormat::Csv,
            };
            match out {
                Some(path) => {
                    harness::emit_report(&report, format, &path)?;
                    for r in &report.results {
                        let slack = r.min_rel_slack.map_or("n/a".to_string(), |s| format!("{s:.3e}"));
                        eprintln!("{:<6} {}/{} pass, min relative slack {slack}", r.id, r.passes, r.trials);
                    }
                }
                None => match format {
                    ReportFormat::Json => print!("{}", harness::to_json(&report)?),
                    ReportFormat::Csv => print!("{}", harness::to_csv(&report)?),
                },
            }
            Ok(if report.pass { 0 } else { EXIT_VIOLATION })
        }
        Command::Sharpness { ineq, family, n, alpha, k, beta, a, b, tol } => {
            let id: InequalityId = ineq.parse()?;
            let family = match family {
                FamilyArg::Power => Family::Power { a },
                FamilyArg::ErdosLax => Family::ErdosLax { a, b },
                FamilyArg::Turan => Family::Turan,
                FamilyArg::Half => Family::Half,
            };
            let spec = PolarSpec::new(n, k, alpha, beta);
            let slack = sharpness_probe(id, &family, &spec)?;
            print_json(&serde_json::json!({
                "id": id,
                "family": family.name(),
                "n": n,
                "min_rel_slack": slack,
            }))?;
            Ok(if slack >= -tol { 0 } else { EXIT_VIOLATION })
        }
        Command::Fuzz { ineq, budget, seed, mutate_te2 } => {
            let ids = InequalityId::parse_list(&ineq)?;
            let mutation = if mutate_te2 { Mutation::FlipTe2RhsSign } else { Mutation::None };
            match harness::fuzz_search(&ids, budget, seed, mutation)? {
                Some(hit) => {
                    print_json(&hit)?;
                    Ok(EXIT_VIOLATION)
                }
                None => {
                    println!("no counterexample in {budget} trials per id");
                    Ok(0)
                }
            }
        }
        Command::Roots { poly } => {
            print_json(&find_roots(&read_poly(&poly)?)?)?;
            Ok(0)
        }
        Command::Extrema { poly, radius, kind, eps } => {
            let p = read_poly(&poly)?;
            let kind = match kind {
                KindArg::Max => ExtremumKind::Max,
                KindArg::Min => ExtremumKind::Min,
            };
            let eps = eps.unwrap_or_else(|| polarineq_core::extrema::default_eps(&p, radius));
            print_json(&circle_extremum(&p, radius, kind, eps)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
