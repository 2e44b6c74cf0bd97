//! Sweeps over instance families, one CSV row per order.
//!
//! Rows are computed independently (optionally in parallel, capped by the
//! `DDINV_THREADS` environment variable) and emitted in input order, so the
//! output is deterministic for fixed flags and seed. Floats are written
//! with 17 significant digits; inapplicable bound and ratio fields, and the
//! seed field for deterministic families, are left empty.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use ddinv::{error_report, fmt_sig17, random_ddp, worst_case_matrix, DdpMatrix, Error};

pub const CSV_HEADER: &str = "family,n,m,M,c_value,bound,error,scaled_error,ratio,seed";

#[derive(Debug, Clone)]
pub enum FamilySpec {
    WorstCase {
        off: f64,
        scale: f64,
    },
    Random {
        off_lo: f64,
        off_hi: f64,
        slack_hi: f64,
        seed: u64,
    },
}

impl FamilySpec {
    fn name(&self) -> &'static str {
        match self {
            FamilySpec::WorstCase { .. } => "worstcase",
            FamilySpec::Random { .. } => "random",
        }
    }

    fn build(&self, n: usize) -> Result<DdpMatrix, Error> {
        match *self {
            FamilySpec::WorstCase { off, scale } => worst_case_matrix(n, off, scale),
            FamilySpec::Random {
                off_lo,
                off_hi,
                slack_hi,
                seed,
            } => random_ddp(n, off_lo, off_hi, slack_hi, seed),
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            FamilySpec::WorstCase { .. } => None,
            FamilySpec::Random { seed, .. } => Some(*seed),
        }
    }
}

/// One CSV row: realized dominance parameters, the bound when applicable,
/// and the measured error with its `(n-1)^2 * m` scaling.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub family: &'static str,
    pub n: usize,
    pub m: f64,
    pub cap: f64,
    pub c_value: f64,
    pub bound: Option<f64>,
    pub error: f64,
    pub scaled_error: f64,
    pub ratio: Option<f64>,
    pub seed: Option<u64>,
}

impl SweepRow {
    fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(fmt_sig17).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.n,
            fmt_sig17(self.m),
            fmt_sig17(self.cap),
            fmt_sig17(self.c_value),
            opt(self.bound),
            fmt_sig17(self.error),
            fmt_sig17(self.scaled_error),
            opt(self.ratio),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
        )
    }
}

fn compute_row(spec: &FamilySpec, n: usize) -> Result<SweepRow, Error> {
    let t = spec.build(n)?;
    let report = error_report(&t)?;
    let params = t.dominance_params();
    let nf = n as f64;
    Ok(SweepRow {
        family: spec.name(),
        n,
        m: params.off_min,
        cap: params.cap,
        c_value: report.bound.c_value,
        bound: report.bound.bound,
        error: report.max_norm,
        scaled_error: report.max_norm * (nf - 1.0) * (nf - 1.0) * params.off_min,
        ratio: report.ratio,
        seed: spec.seed(),
    })
}

fn thread_budget(cells: usize) -> usize {
    let hardware = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1);
    let capped = match std::env::var("DDINV_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => t.min(hardware),
            _ => hardware,
        },
        Err(_) => hardware,
    };
    capped.min(cells).max(1)
}

/// Computes every row, then renders the CSV. Nothing is emitted if any
/// cell fails, so a failed sweep never leaves partial output.
pub fn run(spec: &FamilySpec, n_list: &[usize]) -> Result<String, Error> {
    let threads = thread_budget(n_list.len());
    let slots: Vec<Mutex<Option<Result<SweepRow, Error>>>> =
        n_list.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n_list.len() {
                    break;
                }
                let row = compute_row(spec, n_list[i]);
                *slots[i].lock().unwrap() = Some(row);
            });
        }
    });

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for slot in slots {
        let row = slot
            .into_inner()
            .unwrap()
            .expect("every cell visited by a worker")?;
        csv.push_str(&row.to_csv());
        csv.push('\n');
    }
    Ok(csv)
}
