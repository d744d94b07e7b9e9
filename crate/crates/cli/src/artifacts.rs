//! Artifact files: atomic writes and the versioned JSON envelope.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use reaper_core::checks::anchor;
use reaper_core::report::CheckReport;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckArtifact {
    pub schema_version: u32,
    pub kind: String,
    pub anchor: String,
    #[serde(flatten)]
    pub report: CheckReport,
}

impl CheckArtifact {
    pub fn new(report: CheckReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "check-report".into(),
            anchor: anchor(&report.name).unwrap_or("unregistered").to_string(),
            report,
        }
    }
}

/// Writes `bytes` to a sibling temp file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let name = path.file_name().context("output path has no file name")?.to_string_lossy();
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

/// Writes to `out` atomically, or to stdout when `out` is `None`.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

/// One `<name>.json` per report, written in the given order.
pub fn write_check_artifacts(dir: &Path, reports: &[CheckReport]) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::with_capacity(reports.len());
    for r in reports {
        let path = dir.join(format!("{}.json", r.name));
        write_atomic(&path, &to_json_bytes(&CheckArtifact::new(r.clone()))?)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Reads every `*.json` in `dir`, sorted by file name.
pub fn read_check_artifacts(dir: &Path) -> Result<Vec<CheckArtifact>> {
    let entries = fs::read_dir(dir).with_context(|| format!("reading artifact directory {}", dir.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        bail!("no check artifacts in {}", dir.display());
    }
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let a: CheckArtifact = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            if a.kind != "check-report" || a.schema_version != SCHEMA_VERSION {
                bail!("{}: not a version {SCHEMA_VERSION} check report", p.display());
            }
            Ok(a)
        })
        .collect()
}

/// Plain-text table of check results.
pub fn render_table(rows: &[CheckArtifact]) -> String {
    let name_w = rows.iter().map(|a| a.report.name.len()).max().unwrap_or(4).max(5);
    let mut s = format!(
        "{:<name_w$}  {:<6}  {:>12}  {:>10}  {}\n",
        "check", "status", "max_residual", "tolerance", "anchor"
    );
    for a in rows {
        let r = &a.report;
        s.push_str(&format!(
            "{:<name_w$}  {:<6}  {:>12.3e}  {:>10.1e}  {}\n",
            r.name,
            if r.pass { "PASS" } else { "FAIL" },
            r.max_residual,
            r.tolerance,
            a.anchor
        ));
    }
    let passed = rows.iter().filter(|a| a.report.pass).count();
    s.push_str(&format!("{passed}/{} checks passed\n", rows.len()));
    s
}
