//! vanlab: cyclotomic invariants of odd primes — irregular pairs, r₀/dim V,
//! class-group structure reports, auxiliary-prime corroboration, micro
//! brute-force verification, and bulk scans with a persistent cache.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use vanlab::bernoulli::{eigenspace_exponent, irregular_indices};
use vanlab::micro;
use vanlab::report::{invariant_report, InvariantReport};
use vanlab::residue::dim_v;
use vanlab::scan::{self, OutputFormat, ScanConfig};
use vanlab::vandiver::{check_vandiver, VandiverStatus};
use vanlab::VanlabError;

#[derive(Parser)]
#[command(name = "vanlab", version, about = "Cyclotomic invariants of odd primes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: OutputFormat,
    /// Worker threads for scans (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Scan cache file (default: $VANLAB_CACHE if set).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Auxiliary primes tried per irregular pair.
    #[arg(long, global = true, default_value_t = 10)]
    max_aux: usize,
    /// Ceiling m for eigenspace-exponent precision (mod p^m).
    #[arg(long, global = true, default_value_t = 16)]
    precision_cap: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full invariant report for one odd prime.
    Analyze { p: u64 },
    /// Scan an inclusive prime range, e.g. 3..1000.
    Scan { range: String },
    /// Auxiliary-prime corroboration for each irregular pair of p.
    Vandiver { p: u64 },
    /// Exact brute-force verification (p must be 3, 5, or 7).
    Micro { p: u64 },
    /// Irregular pairs of p with eigenspace exponents.
    Pairs { p: u64 },
}

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, VanlabError> {
    match &cli.cmd {
        Cmd::Analyze { p } => cmd_analyze(cli, *p),
        Cmd::Scan { range } => cmd_scan(cli, range),
        Cmd::Vandiver { p } => cmd_vandiver(cli, *p),
        Cmd::Micro { p } => cmd_micro(cli, *p),
        Cmd::Pairs { p } => cmd_pairs(cli, *p),
    }
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    cli.cache
        .clone()
        .or_else(|| std::env::var_os("VANLAB_CACHE").map(PathBuf::from))
}

fn cmd_analyze(cli: &Cli, p: u64) -> Result<u8, VanlabError> {
    let report = invariant_report(p, cli.max_aux, cli.precision_cap)?;
    match cli.format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
        OutputFormat::Csv => {
            println!("{}", scan::CSV_HEADER);
            println!("{}", scan::csv_row(&report));
        }
        OutputFormat::Table => print_report_table(&report),
    }
    Ok(if report.checks_pass() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn print_report_table(r: &InvariantReport) {
    println!("p                      {}", r.p);
    println!("index of irregularity  {}", r.index_of_irregularity);
    let pairs = r
        .irregular_pairs
        .iter()
        .map(|ip| format!("(k={}, e={})", ip.k, ip.e))
        .collect::<Vec<_>>()
        .join(" ");
    println!(
        "irregular pairs        {}",
        if pairs.is_empty() { "none" } else { &pairs }
    );
    let rn = &r.r_numbers;
    println!(
        "r-numbers              R={} r={} R+={} R-={} r+={} r-={} r0={}",
        rn.cap_r, rn.low_r, rn.cap_r_plus, rn.cap_r_minus, rn.r_plus, rn.r_minus, rn.r0
    );
    println!("dim V                  {}", r.dim_v);
    let s1 = r
        .s1_factors
        .iter()
        .map(|e| format!("p^{e}"))
        .collect::<Vec<_>>()
        .join(" x ");
    println!(
        "S1 factors             {}",
        if s1.is_empty() { "trivial" } else { &s1 }
    );
    let bp = r
        .b_p
        .cyclic_factors
        .iter()
        .map(|e| format!("Z/p^{e}"))
        .fold(format!("F^{}", r.b_p.elementary_rank), |acc, f| {
            format!("{acc} + {f}")
        });
    println!("B_p                    {bp}");
    println!("S_p image dim          {}", r.s_p_image_dim);
    println!("level-2 class data     {}", r.cl_level2);
    println!("assumes                {}", r.assumptions.join(", "));
    for c in &r.checks {
        match &c.detail {
            None => println!("check {:<22} {}", c.name, if c.pass { "ok" } else { "VIOLATION" }),
            Some(d) => println!("check {:<22} VIOLATION ({d})", c.name),
        }
    }
    for v in &r.vandiver {
        println!("vandiver               {}", vandiver_line(v));
    }
}

fn vandiver_line(v: &vanlab::vandiver::VandiverVerdict) -> String {
    match v.status {
        VandiverStatus::Witnessed => format!(
            "k={}: Witnessed q={}",
            v.k,
            v.q.expect("witnessed verdicts carry q")
        ),
        VandiverStatus::Inconclusive => format!(
            "k={}: Inconclusive after {} auxiliary primes",
            v.k,
            v.tried.len()
        ),
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("invalid range {s:?}: expected lo..hi"))?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("invalid lower bound {lo:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("invalid upper bound {hi:?}"))?;
    if lo < 3 {
        return Err("scan range must start at 3 or above".to_string());
    }
    if hi < lo {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn cmd_scan(cli: &Cli, range: &str) -> Result<u8, VanlabError> {
    let (lo, hi) = match parse_range(range) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return Ok(EXIT_USAGE);
        }
    };
    let jobs = cli.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    });
    let cfg = ScanConfig {
        lo,
        hi,
        jobs,
        cache_path: cache_path(cli),
        format: cli.format,
        max_aux: cli.max_aux,
        precision_cap: cli.precision_cap,
    };
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut err = std::io::stderr();
    let summary = match scan::scan(&cfg, &mut out, &mut err) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(EXIT_USAGE);
        }
    };
    out.flush().ok();
    Ok(if summary.violations == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn cmd_vandiver(cli: &Cli, p: u64) -> Result<u8, VanlabError> {
    vanlab::arith::ensure_odd_prime(p)?;
    let verdicts = check_vandiver(p, cli.max_aux)?;
    match cli.format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&verdicts).expect("verdicts serialize")
        ),
        _ => {
            if verdicts.is_empty() {
                println!("p={p}: regular, nothing to test");
            }
            for v in &verdicts {
                println!("{}", vandiver_line(v));
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_micro(cli: &Cli, p: u64) -> Result<u8, VanlabError> {
    micro::ensure_micro_prime(p)?;
    let image = micro::unit_image_subgroup(p)?;
    let v = micro::micro_v(p)?;
    let u_order = (p - 1) * p.pow(p as u32 - 2);
    let e2 = micro::e2_absorption_test(p)?;
    let j2 = micro::j2_additivity_test(p, 1000)?;
    let dim_ok = v.elementary_rank == dim_v(p);
    let all_ok = e2 && j2 && dim_ok;
    match cli.format {
        OutputFormat::Json => {
            let val = serde_json::json!({
                "p": p,
                "u_order": u_order,
                "e1_order": image.order(),
                "v_rank": v.elementary_rank,
                "v_rank_matches_dim_V": dim_ok,
                "e2_absorption": e2,
                "j2_additivity": j2,
            });
            println!("{}", serde_json::to_string_pretty(&val).unwrap());
        }
        _ => {
            println!(
                "|U|={} |E1|={} V=F_{}^{} e2_absorption={} j2_additivity={} {}",
                u_order,
                image.order(),
                p,
                v.elementary_rank,
                if e2 { "ok" } else { "FAIL" },
                if j2 { "ok" } else { "FAIL" },
                if all_ok { "OK" } else { "FAIL" }
            );
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_pairs(cli: &Cli, p: u64) -> Result<u8, VanlabError> {
    vanlab::arith::ensure_odd_prime(p)?;
    let ks = irregular_indices(p);
    let pairs: Vec<(u64, u32)> = ks
        .iter()
        .map(|&k| eigenspace_exponent(p, k, cli.precision_cap).map(|e| (k, e)))
        .collect::<Result<_, _>>()?;
    match cli.format {
        OutputFormat::Json => {
            let val: Vec<_> = pairs
                .iter()
                .map(|&(k, e)| serde_json::json!({"k": k, "e": e}))
                .collect();
            println!("{}", serde_json::to_string(&val).unwrap());
        }
        OutputFormat::Csv => {
            println!("k,e");
            for (k, e) in &pairs {
                println!("{k},{e}");
            }
        }
        OutputFormat::Table => {
            if pairs.is_empty() {
                println!("p={p}: regular, no irregular pairs");
            }
            for (k, e) in &pairs {
                println!("k={k} e={e}");
            }
        }
    }
    Ok(EXIT_OK)
}
