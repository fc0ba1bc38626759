//! Bulk prime scans: a shared-counter worker pool feeds a single ordered
//! collector, so output is byte-identical for any worker count and any
//! cache state.

use crate::arith::is_odd_prime;
use crate::cache::{cache_put, load_cache};
use crate::error::VanlabError;
use crate::report::{invariant_report, InvariantReport};
use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub lo: u64,
    pub hi: u64,
    pub jobs: usize,
    pub cache_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub max_aux: usize,
    pub precision_cap: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub scanned: usize,
    pub irregular: usize,
    pub violations: usize,
}

pub const CSV_HEADER: &str = "p,i,r0,dimV,e_list,checks_pass,vandiver_status";

/// Irregular pairs as `k:e` entries joined by `;` — empty for regular p.
pub fn e_list(r: &InvariantReport) -> String {
    r.irregular_pairs
        .iter()
        .map(|pair| format!("{}:{}", pair.k, pair.e))
        .collect::<Vec<_>>()
        .join(";")
}

/// Aggregate verdict: `-` when there is nothing to test, `witnessed` when
/// every pair found a witness, `inconclusive` otherwise.
pub fn vandiver_status(r: &InvariantReport) -> &'static str {
    use crate::vandiver::VandiverStatus::Witnessed;
    if r.vandiver.is_empty() {
        "-"
    } else if r.vandiver.iter().all(|v| v.status == Witnessed) {
        "witnessed"
    } else {
        "inconclusive"
    }
}

pub fn csv_row(r: &InvariantReport) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.p,
        r.index_of_irregularity,
        r.r_numbers.r0,
        r.dim_v,
        e_list(r),
        r.checks_pass(),
        vandiver_status(r)
    )
}

pub const TABLE_HEADER: &str =
    "     p   i  r0  dimV  e_list            checks  vandiver";

pub fn table_row(r: &InvariantReport) -> String {
    format!(
        "{:>6} {:>3} {:>3} {:>5}  {:<16} {:<7} {}",
        r.p,
        r.index_of_irregularity,
        r.r_numbers.r0,
        r.dim_v,
        e_list(r),
        if r.checks_pass() { "ok" } else { "FAIL" },
        vandiver_status(r)
    )
}

fn render_row(format: OutputFormat, r: &InvariantReport) -> String {
    match format {
        OutputFormat::Csv => csv_row(r),
        OutputFormat::Table => table_row(r),
        OutputFormat::Json => serde_json::to_string(r).expect("reports serialize"),
    }
}

/// Run the scan, writing rows to `out` in ascending p and a summary line to
/// `errw`. Rows for uncached primes are computed by `cfg.jobs` workers but
/// emitted strictly in order.
pub fn scan<W: Write, E: Write>(
    cfg: &ScanConfig,
    out: &mut W,
    errw: &mut E,
) -> io::Result<ScanSummary> {
    let primes: Vec<u64> = (cfg.lo..=cfg.hi).filter(|&p| is_odd_prime(p)).collect();
    let cached = match &cfg.cache_path {
        Some(path) => load_cache(path),
        None => BTreeMap::new(),
    };
    let missing: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|p| !cached.contains_key(p))
        .collect();

    match cfg.format {
        OutputFormat::Csv => writeln!(out, "{CSV_HEADER}")?,
        OutputFormat::Table => writeln!(out, "{TABLE_HEADER}")?,
        OutputFormat::Json => {}
    }

    let (tx, rx) = mpsc::channel::<(u64, Result<InvariantReport, VanlabError>)>();
    let counter = AtomicUsize::new(0);
    let jobs = cfg.jobs.max(1).min(missing.len().max(1));
    let mut summary = ScanSummary::default();

    std::thread::scope(|scope| -> io::Result<()> {
        for _ in 0..jobs {
            let tx = tx.clone();
            let counter = &counter;
            let missing = &missing;
            scope.spawn(move || loop {
                let i = counter.fetch_add(1, Ordering::Relaxed);
                let Some(&p) = missing.get(i) else { break };
                let res = invariant_report(p, cfg.max_aux, cfg.precision_cap);
                if tx.send((p, res)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending: BTreeMap<u64, Result<InvariantReport, VanlabError>> = BTreeMap::new();
        for &p in &primes {
            let result = if let Some(report) = cached.get(&p) {
                Ok(report.clone())
            } else {
                loop {
                    if let Some(res) = pending.remove(&p) {
                        break res;
                    }
                    let (rp, res) = rx.recv().expect("workers outlive pending primes");
                    pending.insert(rp, res);
                }
            };
            match result {
                Ok(report) => {
                    if !cached.contains_key(&p) {
                        if let Some(path) = &cfg.cache_path {
                            if let Err(e) = cache_put(path, &report) {
                                writeln!(errw, "warning: cache write failed for p={p}: {e}")?;
                            }
                        }
                    }
                    writeln!(out, "{}", render_row(cfg.format, &report))?;
                    summary.scanned += 1;
                    if report.index_of_irregularity > 0 {
                        summary.irregular += 1;
                    }
                    if !report.checks_pass() {
                        summary.violations += 1;
                    }
                }
                Err(e) => {
                    writeln!(errw, "warning: skipping p={p}: {e}")?;
                }
            }
        }
        Ok(())
    })?;

    writeln!(
        errw,
        "scanned {} primes, {} irregular, {} identity violations",
        summary.scanned, summary.irregular, summary.violations
    )?;
    Ok(summary)
}
