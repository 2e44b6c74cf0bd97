//! `ddinv`: validate diagonally dominant positive matrices, evaluate the
//! explicit error bound for their diagonal approximate inverses, measure
//! the real approximation error against an exact-inverse oracle, sweep
//! families of instances to CSV, and compare preconditioned solvers.
//!
//! Exit codes: 0 success, 1 error, 2 matrix fails the validity conditions,
//! 3 measured error exceeds an applicable bound (a bug sentinel, never
//! expected in practice).

mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ddinv::{
    asymptotic_constant, error_bound, error_report, fmt_sig17, jacobi_solve, parse_matrix,
    parse_vector, pcg_solve, random_ddp, worst_case_matrix, DdpMatrix, Error,
};

const EXIT_ERROR: u8 = 1;
const EXIT_INVALID_MATRIX: u8 = 2;
const EXIT_BOUND_VIOLATED: u8 = 3;

/// A CLI failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn error(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_ERROR,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_invalid_matrix() {
                EXIT_INVALID_MATRIX
            } else {
                EXIT_ERROR
            },
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "ddinv", version, about = "Diagonal approximate inverses of diagonally dominant positive matrices", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// The sharp-decay family: uniform off-diagonal, heavy leading diagonal,
    /// tight last row.
    Worstcase,
    /// Seeded random symmetric instance.
    Random,
}

/// Matrix source shared by the commands: either a file in the text format
/// or a generated family, so harnesses never need files on disk.
#[derive(Args, Debug)]
struct MatrixSource {
    /// Path to a matrix file (omit when using --family).
    path: Option<PathBuf>,

    /// Generate the matrix instead of reading a file.
    #[arg(long, value_enum)]
    family: Option<Family>,

    /// Order of the generated matrix.
    #[arg(long)]
    n: Option<usize>,

    /// Lower off-diagonal parameter of the generated family.
    #[arg(long = "m", value_name = "MIN")]
    m: Option<f64>,

    /// Upper parameter of the generated family.
    #[arg(long = "M", value_name = "CAP")]
    cap: Option<f64>,

    /// Slack ceiling for the random family.
    #[arg(long, default_value_t = 0.0)]
    slack: f64,

    /// Seed for the random family.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl MatrixSource {
    fn load(&self, require_symmetric: bool) -> Result<DdpMatrix, Failure> {
        match (&self.path, self.family) {
            (Some(_), Some(_)) => Err(Failure::error(
                "give either a matrix file or --family, not both",
            )),
            (None, None) => Err(Failure::error("no matrix given: pass a file or --family")),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::error(format!("{}: {e}", path.display())))?;
                let dense = parse_matrix(&text)?;
                Ok(DdpMatrix::new(dense, require_symmetric)?)
            }
            (None, Some(family)) => {
                let n = self
                    .n
                    .ok_or_else(|| Failure::error("--family needs --n"))?;
                let m = self
                    .m
                    .ok_or_else(|| Failure::error("--family needs --m"))?;
                let cap = self
                    .cap
                    .ok_or_else(|| Failure::error("--family needs --M"))?;
                match family {
                    Family::Worstcase => Ok(worst_case_matrix(n, m, cap)?),
                    Family::Random => Ok(random_ddp(n, m, cap, self.slack, self.seed)?),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolveMethod {
    Jacobi,
    Cg,
    Pcg,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a matrix and report its dominance parameters.
    Validate {
        #[command(flatten)]
        source: MatrixSource,

        /// Require exact symmetry (pass false to accept asymmetric input).
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        require_symmetric: bool,
    },

    /// Evaluate the error bound for given parameters.
    Bound {
        /// Matrix order (>= 3).
        #[arg(long)]
        n: usize,
        /// Smallest off-diagonal entry.
        #[arg(long = "m", value_name = "MIN")]
        m: f64,
        /// Upper bound on off-diagonal entries and row slacks.
        #[arg(long = "M", value_name = "CAP")]
        cap: f64,
    },

    /// Measure the true approximation error against the bound.
    Error {
        #[command(flatten)]
        source: MatrixSource,
    },

    /// Sweep instance families over a list of orders, emitting CSV.
    Sweep {
        /// Family to sweep.
        #[arg(long, value_enum)]
        family: Family,

        /// Comma-separated list of orders, each >= 3.
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,

        /// Lower off-diagonal parameter of the family.
        #[arg(long = "m", value_name = "MIN")]
        m: f64,

        /// Upper parameter of the family.
        #[arg(long = "M", value_name = "CAP")]
        cap: f64,

        /// Slack ceiling for the random family.
        #[arg(long, default_value_t = 0.0)]
        slack: f64,

        /// Seed for the random family.
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Solve T x = b with the diagonal approximation as preconditioner.
    Solve {
        #[command(flatten)]
        source: MatrixSource,

        /// Path to a right-hand-side vector file.
        #[arg(long)]
        rhs: Option<PathBuf>,

        /// Use b = T * ones as the right-hand side.
        #[arg(long)]
        rhs_ones: bool,

        #[arg(long, value_enum, default_value = "pcg")]
        method: SolveMethod,

        #[arg(long, default_value_t = 1e-10)]
        tol: f64,

        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,

        /// Run cg and pcg and report both iteration counts.
        #[arg(long)]
        compare: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate {
            source,
            require_symmetric,
        } => cmd_validate(&source, require_symmetric),
        Command::Bound { n, m, cap } => cmd_bound(n, m, cap),
        Command::Error { source } => cmd_error(&source),
        Command::Sweep {
            family,
            n_list,
            m,
            cap,
            slack,
            seed,
            out,
        } => cmd_sweep(family, &n_list, m, cap, slack, seed, out.as_deref()),
        Command::Solve {
            source,
            rhs,
            rhs_ones,
            method,
            tol,
            max_iter,
            compare,
        } => cmd_solve(&source, rhs.as_deref(), rhs_ones, method, tol, max_iter, compare),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_validate(source: &MatrixSource, require_symmetric: bool) -> Result<u8, Failure> {
    let t = source.load(require_symmetric)?;
    let params = t.dominance_params();
    let slack_min = params.slack.iter().cloned().fold(f64::INFINITY, f64::min);
    let slack_max = params.slack.iter().cloned().fold(0.0f64, f64::max);
    println!("valid=true");
    println!("n={}", t.n());
    println!("symmetric={}", t.is_symmetric());
    if t.is_symmetric() {
        println!("positive_definite={}", t.is_positive_definite()?);
    } else {
        println!("positive_definite=unchecked");
    }
    println!("m={}", params.off_min);
    println!("M={}", params.cap);
    println!("delta_min={slack_min}");
    println!("delta_max={slack_max}");
    let outcome = error_bound(t.n(), params.off_min, params.cap)?;
    println!("c_value={}", outcome.c_value);
    println!("bound_applicable={}", outcome.applicable());
    Ok(0)
}

fn cmd_bound(n: usize, m: f64, cap: f64) -> Result<u8, Failure> {
    if n < 3 {
        return Err(Failure::error(format!(
            "invalid n: the bound needs n >= 3, got {n}"
        )));
    }
    let outcome = error_bound(n, m, cap)?;
    println!("n={n} m={m} M={cap}");
    println!("c_value={}", outcome.c_value);
    match outcome.bound {
        Some(b) => println!("bound={b}"),
        None => println!("bound=n/a"),
    }
    println!("limit={}", asymptotic_constant(m, cap)?);
    println!("applicable={}", outcome.applicable());
    Ok(0)
}

fn cmd_error(source: &MatrixSource) -> Result<u8, Failure> {
    let t = source.load(true)?;
    let report = error_report(&t)?;
    let params = t.dominance_params();
    let nf = t.n() as f64;
    let scaled = report.max_norm * (nf - 1.0) * (nf - 1.0) * params.off_min;
    println!("n={} m={} M={}", t.n(), params.off_min, params.cap);
    println!("error={}", report.max_norm);
    println!("c_value={}", report.bound.c_value);
    match report.bound.bound {
        Some(b) => println!("bound={b}"),
        None => println!("bound=n/a"),
    }
    match report.ratio {
        Some(r) => println!("ratio={r}"),
        None => println!("ratio=n/a"),
    }
    println!("scaled_error={scaled}");
    println!(
        "inverse_offdiag_nonpositive={}",
        report.inverse_offdiag_nonpositive
    );
    if let Some(r) = report.ratio {
        if r > 1.0 + ddinv::tol::BOUND_RELATIVE_SLACK {
            eprintln!("error: measured error exceeds the applicable bound (ratio {r})");
            return Ok(EXIT_BOUND_VIOLATED);
        }
    }
    Ok(0)
}

fn cmd_sweep(
    family: Family,
    n_list: &[usize],
    m: f64,
    cap: f64,
    slack: f64,
    seed: u64,
    out: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    if n_list.is_empty() {
        return Err(Failure::error("empty --n-list"));
    }
    if let Some(&bad) = n_list.iter().find(|&&n| n < 3) {
        return Err(Failure::error(format!(
            "invalid --n-list entry {bad}: the error bound needs n >= 3"
        )));
    }
    let spec = match family {
        Family::Worstcase => sweep::FamilySpec::WorstCase { off: m, scale: cap },
        Family::Random => sweep::FamilySpec::Random {
            off_lo: m,
            off_hi: cap,
            slack_hi: slack,
            seed,
        },
    };
    let csv = sweep::run(&spec, n_list).map_err(Failure::from)?;
    match out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| Failure::error(format!("{}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn cmd_solve(
    source: &MatrixSource,
    rhs: Option<&std::path::Path>,
    rhs_ones: bool,
    method: SolveMethod,
    tol: f64,
    max_iter: usize,
    compare: bool,
) -> Result<u8, Failure> {
    let t = source.load(true)?;
    let b = match (rhs, rhs_ones) {
        (Some(_), true) => {
            return Err(Failure::error("give either --rhs or --rhs-ones, not both"))
        }
        (None, false) => return Err(Failure::error("no right-hand side: pass --rhs or --rhs-ones")),
        (None, true) => t
            .inner()
            .mul_vec(&vec![1.0; t.n()])
            .expect("dimensions agree"),
        (Some(path), false) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::error(format!("{}: {e}", path.display())))?;
            parse_vector(&text)?
        }
    };

    if compare {
        let plain = pcg_solve(&t, &b, false, tol, max_iter)?;
        let precond = pcg_solve(&t, &b, true, tol, max_iter)?;
        for report in [&plain, &precond] {
            println!(
                "method={} iterations={} converged={} final_residual={}",
                report.method,
                report.iterations,
                report.converged,
                report.residual_history.last().unwrap()
            );
        }
        return Ok(0);
    }

    let report = match method {
        SolveMethod::Jacobi => jacobi_solve(&t, &b, tol, max_iter)?,
        SolveMethod::Cg => pcg_solve(&t, &b, false, tol, max_iter)?,
        SolveMethod::Pcg => pcg_solve(&t, &b, true, tol, max_iter)?,
    };
    println!("method={}", report.method);
    println!("n={}", t.n());
    println!("iterations={}", report.iterations);
    println!("converged={}", report.converged);
    println!(
        "final_residual={}",
        report.residual_history.last().unwrap()
    );
    println!(
        "solution_head={}",
        report
            .solution
            .iter()
            .take(4)
            .map(|x| fmt_sig17(*x))
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(0)
}
