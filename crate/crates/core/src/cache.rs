//! Line-delimited JSON scan cache, keyed by prime and tool version.
//! Append-only and corruption-tolerant: unparsable lines are skipped with a
//! warning, stale-version records are ignored, later records win.

use crate::report::InvariantReport;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheRecord {
    pub p: u64,
    pub version: String,
    pub report: InvariantReport,
}

/// All reusable records from `path`. A missing file is an empty cache.
pub fn load_cache(path: &Path) -> BTreeMap<u64, InvariantReport> {
    let mut map = BTreeMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(_) => return map,
    };
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("warning: cache read error at line {}: {e}", lineno + 1);
                break;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CacheRecord>(&line) {
            Ok(rec) if rec.version == TOOL_VERSION => {
                map.insert(rec.p, rec.report);
            }
            Ok(_) => {} // stale version: recompute
            Err(e) => {
                eprintln!("warning: skipping corrupt cache line {}: {e}", lineno + 1);
            }
        }
    }
    map
}

/// Single record lookup; hit only on a version match.
pub fn cache_get(path: &Path, p: u64) -> Option<InvariantReport> {
    load_cache(path).remove(&p)
}

/// Append one record. Callers serialize writes (single-writer contract).
pub fn cache_put(path: &Path, report: &InvariantReport) -> std::io::Result<()> {
    let rec = CacheRecord {
        p: report.p,
        version: TOOL_VERSION.to_string(),
        report: report.clone(),
    };
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    let mut line = serde_json::to_string(&rec).expect("reports serialize");
    line.push('\n');
    f.write_all(line.as_bytes())
}
