mod config;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dsop_core::asymptotics::derivative_ratio_trajectory;
use dsop_core::ordering::is_sequentially_ordered;
use dsop_core::poly::format_float;
use dsop_core::roots::{all_roots_float, sort_roots};
use dsop_core::sobolev::{construct, sobolev_poly};
use dsop_core::sturm::sign_change_count;
use dsop_core::verify::{theorem1_check, zero_report};
use dsop_core::{parse_rational, Error, RatioReport};

use crate::config::{load_str, Config, Mode};

/// Discrete Sobolev orthogonal polynomials: construction, zero checks and
/// asymptotic trajectories.
#[derive(Parser)]
#[command(name = "dsop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the coefficients of S_n, ascending, as a JSON list of strings.
    Construct {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Test whether the inner product is sequentially ordered.
    CheckOrder {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the zeros of S_n and the sign-change report.
    Zeros {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        n: usize,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Check the sign-change bound n - d* for n = 1..=n-max.
    Theorem1 {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        n_max: usize,
    },
    /// Ratio S_n^(nu)(x) / L_n^(nu)(x) against its limit, written as CSV.
    Asymptotics {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Comma-separated list of degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 0)]
        nu: usize,
    },
    /// Render the abs_error column of an asymptotics CSV as a log-log SVG.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn load(path: &Path) -> Result<Config, Failure> {
    let shown = path.display().to_string();
    let source = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{shown}: {e}")))?;
    load_str(&source).map_err(|e| Failure::Input(e.render(&shown)))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Math(format!("{}: {e}", path.display())))
}

fn cmd_construct(config: &Path, n: usize, out: &Path) -> Outcome {
    let cfg = load(config)?;
    let coeffs = match cfg.mode() {
        Mode::Exact => construct(n, &cfg.spec)?.to_strings(),
        Mode::Float => sobolev_poly::<f64>(n, &cfg.spec)?.coeffs().iter().map(|c| format_float(*c)).collect(),
    };
    let json = serde_json::to_string(&coeffs).expect("string lists serialize");
    write(out, &format!("{json}\n"))?;
    println!("degree {}", coeffs.len().saturating_sub(1));
    println!("d* {}", cfg.spec.d_star());
    Ok(true)
}

fn cmd_check_order(config: &Path) -> Outcome {
    let cfg = load(config)?;
    let report = is_sequentially_ordered(&cfg.spec);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match &report.violation {
        None => {
            println!("sequentially ordered");
            Ok(true)
        }
        Some(v) => {
            println!("not sequentially ordered");
            println!("{v}");
            Ok(false)
        }
    }
}

fn print_roots(roots: &[num_complex::Complex64]) {
    println!("{:>4}  {:>24}  {:>24}", "k", "re", "im");
    for (k, z) in roots.iter().enumerate() {
        println!("{:>4}  {:>24}  {:>24}", k + 1, format_float(z.re), format_float(z.im));
    }
}

fn cmd_zeros(config: &Path, n: usize, json: bool) -> Outcome {
    let cfg = load(config)?;
    if cfg.mode() == Mode::Float {
        let p = sobolev_poly::<f64>(n, &cfg.spec)?;
        let mut roots = if n == 0 { Vec::new() } else { all_roots_float(&p)? };
        sort_roots(&mut roots);
        if json {
            println!("{}", serde_json::to_string_pretty(&roots).expect("roots serialize"));
        } else {
            print_roots(&roots);
        }
        return Ok(true);
    }
    let report = zero_report(n, &cfg.spec)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
        return Ok(true);
    }
    print_roots(&report.roots);
    println!();
    for m in &report.per_mass_nearest {
        println!("nearest root to c={}: distance {}", m.c, format_float(m.distance));
    }
    println!("d* {}", report.d_star);
    println!("sign changes in hull {}", report.sign_changes_in_hull);
    println!("bound n - d* {}", report.bound);
    println!("sequentially ordered {}", report.hypothesis_holds);
    println!("roots on the positive half line {}", report.positive_real);
    if let Some(d) = report.min_separation {
        println!("min separation {}", format_float(d));
    }
    Ok(true)
}

fn cmd_theorem1(config: &Path, n_max: usize) -> Outcome {
    let cfg = load(config)?;
    if cfg.mode() == Mode::Float {
        return Err(Failure::Math("sign-change counting requires exact mode".into()));
    }
    let order = is_sequentially_ordered(&cfg.spec);
    if let Some(v) = &order.violation {
        println!("hypothesis fails: {v}");
    }
    let hull = cfg.spec.measure().hull();
    let mut all_pass = order.is_ordered();
    for n in 1..=n_max {
        let (changes, bound, verdict) = if order.is_ordered() {
            let r = theorem1_check(n, &cfg.spec)?;
            all_pass &= r.pass;
            (r.sign_changes_in_hull, r.bound, if r.pass { "PASS" } else { "FAIL" })
        } else {
            let s = construct(n, &cfg.spec)?;
            let bound = n as i64 - cfg.spec.d_star() as i64;
            (sign_change_count(&s, &hull)?, bound, "N/A")
        };
        println!("n={n} changes={changes} bound={bound} {verdict}");
    }
    Ok(all_pass)
}

fn cmd_asymptotics(config: &Path, x: &str, ns: &[usize], csv: &Path, nu: usize) -> Outcome {
    let cfg = load(config)?;
    let x = parse_rational(x).map_err(|e| Failure::Input(format!("--x: {e}")))?;
    let report: RatioReport = derivative_ratio_trajectory(&cfg.spec, nu, &x, ns)?;
    write(csv, &report.to_csv())?;
    let limit = report.rows.first().map(|r| r.limit).unwrap_or_default();
    println!("limit {} {}", format_float(limit.re), format_float(limit.im));
    match report.fitted_exponent {
        Some(p) => println!("fitted exponent {}", format_float(p)),
        None => println!("fitted exponent n/a"),
    }
    let decreasing = report.errors_strictly_decreasing();
    println!("errors strictly decreasing {decreasing}");
    Ok(decreasing)
}

fn read_error_series(path: &Path) -> Result<Vec<(f64, f64)>, Failure> {
    let shown = path.display().to_string();
    let mut reader = csv::Reader::from_path(path).map_err(|e| Failure::Input(format!("{shown}: {e}")))?;
    let headers = reader.headers().map_err(|e| Failure::Input(format!("{shown}: {e}")))?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Failure::Input(format!("{shown}: missing column {name}")))
    };
    let (n_col, e_col) = (column("n")?, column("abs_error")?);
    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::Input(format!("{shown}: {e}")))?;
        let field = |c: usize| -> Result<f64, Failure> {
            record
                .get(c)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| Failure::Input(format!("{shown}:{}: malformed number", i + 2)))
        };
        points.push((field(n_col)?, field(e_col)?));
    }
    Ok(points)
}

fn cmd_plot(csv: &Path, out: &Path) -> Outcome {
    let points = read_error_series(csv)?;
    let series = svg::Series {
        title: "absolute error against n".into(),
        x_label: "n".into(),
        y_label: "abs_error".into(),
        points,
    };
    let doc = svg::render(&series).map_err(Failure::Input)?;
    write(out, &doc)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Construct { config, n, out } => cmd_construct(config, *n, out),
        Command::CheckOrder { config } => cmd_check_order(config),
        Command::Zeros { config, n, json } => cmd_zeros(config, *n, *json),
        Command::Theorem1 { config, n_max } => cmd_theorem1(config, *n_max),
        Command::Asymptotics { config, x, ns, csv, nu } => cmd_asymptotics(config, x, ns, csv, *nu),
        Command::Plot { csv, svg } => cmd_plot(csv, svg),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
