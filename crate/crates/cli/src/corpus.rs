use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::job::{JobSpec, Overrides};
use crate::run::{error_kind, run_resolved, write_atomic};

pub const EXPECTED_SUFFIX: &str = ".expected.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { diffs: Vec<String> },
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusSummary {
    pub entries: Vec<CorpusEntry>,
}

impl CorpusSummary {
    pub fn passed(&self) -> usize {
        self.entries.iter().filter(|e| e.outcome == Outcome::Pass).count()
    }

    /// Jobs that ran, skipped ones excluded.
    pub fn total(&self) -> usize {
        self.entries.iter().filter(|e| !matches!(e.outcome, Outcome::Skipped { .. })).count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.len() - self.total()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.total()
    }

    pub fn table(&self) -> String {
        let width = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(0).max(4);
        let mut out = String::new();
        for e in &self.entries {
            let status = match &e.outcome {
                Outcome::Pass => "PASS".to_string(),
                Outcome::Fail { diffs } => format!("FAIL ({} differences)", diffs.len()),
                Outcome::Skipped { reason } => format!("SKIP ({reason})"),
            };
            let _ = writeln!(out, "{:<width$}  {status}", e.name);
            if let Outcome::Fail { diffs } = &e.outcome {
                for d in diffs {
                    let _ = writeln!(out, "{:<width$}    {d}", "");
                }
            }
        }
        let _ = writeln!(out, "summary: {}/{} passed, {} skipped", self.passed(), self.total(), self.skipped());
        out
    }
}

/// Lists the job files of a corpus directory, sorted by name.
pub fn job_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |e| CliError::Io { path: dir.display().to_string(), source: e };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        if path.is_file() && name.ends_with(".json") && !name.ends_with(EXPECTED_SUFFIX) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn expected_path(job: &Path) -> PathBuf {
    let stem = job.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    job.with_file_name(format!("{stem}{EXPECTED_SUFFIX}"))
}

/// Compares every field present in `expected` with `actual`. Objects may
/// have extra keys in `actual`; arrays must match in length.
pub fn diff(path: &str, expected: &Value, actual: &Value, out: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match a.get(k) {
                    Some(av) => diff(&p, ev, av, out),
                    None => out.push(format!("{p}: missing, expected {ev}")),
                }
            }
        }
        (Value::Array(e), Value::Array(a)) if e.len() == a.len() => {
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                diff(&format!("{path}[{i}]"), ev, av, out);
            }
        }
        (Value::Array(e), Value::Array(a)) => out.push(format!("{path}: expected {} elements, got {}", e.len(), a.len())),
        _ if expected == actual => {}
        _ => out.push(format!("{path}: expected {expected}, got {actual}")),
    }
}

fn run_one(job_path: &Path, o: &Overrides, out_dir: Option<&Path>) -> CorpusEntry {
    let name = job_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let sidecar = expected_path(job_path);
    if !sidecar.is_file() {
        eprintln!("warning: {name}: no {} sidecar, skipping", sidecar.display());
        return CorpusEntry { name, outcome: Outcome::Skipped { reason: "no expected report".into() }, exit_code: 0 };
    }
    let fail = |name: String, msg: String, code: i32| CorpusEntry { name, outcome: Outcome::Fail { diffs: vec![msg] }, exit_code: code };
    let expected: Value = match std::fs::read_to_string(&sidecar).map_err(|e| e.to_string()).and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string())) {
        Ok(v) => v,
        Err(e) => return fail(name, format!("unreadable sidecar: {e}"), crate::error::exit::INVALID),
    };
    let report = JobSpec::load(job_path).and_then(|j| {
        let mode = j.mode;
        run_resolved(&j.resolve(o)?, mode)
    });
    let report = match report {
        Ok(r) => r,
        Err(e) => return fail(name, format!("{}: {e}", error_kind(&e)), e.exit_code()),
    };
    let json = report.to_json();
    if let Some(dir) = out_dir {
        if let Err(e) = write_atomic(&dir.join(format!("{name}.report.json")), &json) {
            return fail(name, e.to_string(), e.exit_code());
        }
    }
    let actual: Value = serde_json::from_str(&json).expect("report JSON round-trips");
    let mut diffs = Vec::new();
    diff("", &expected, &actual, &mut diffs);
    let code = report.exit_code();
    if code != 0 {
        diffs.push(format!("exit code {code}"));
    }
    let outcome = if diffs.is_empty() { Outcome::Pass } else { Outcome::Fail { diffs } };
    CorpusEntry { name, outcome, exit_code: code }
}

/// Runs every job of `dir` on a pool of `workers` threads (all cores when
/// `None`) and diffs each report against its `*.expected.json` sidecar.
pub fn run_corpus(dir: &Path, o: &Overrides, workers: Option<usize>, out_dir: Option<&Path>) -> Result<CorpusSummary, CliError> {
    let files = job_files(dir)?;
    if let Some(d) = out_dir {
        std::fs::create_dir_all(d).map_err(|e| CliError::Io { path: d.display().to_string(), source: e })?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Invalid(format!("cannot start worker pool: {e}")))?;
    let entries = pool.install(|| files.par_iter().map(|f| run_one(f, o, out_dir)).collect());
    Ok(CorpusSummary { entries })
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;

    #[test]
    fn subset_diff() {
        let actual = json!({"a": 1, "b": {"c": [1, 2], "d": "x"}, "e": null});
        let mut out = Vec::new();
        diff("", &json!({"b": {"c": [1, 2]}}), &actual, &mut out);
        assert!(out.is_empty());
        diff("", &json!({"b": {"c": [1, 3], "z": 0}, "a": [1]}), &actual, &mut out);
        assert_eq!(out, vec!["a: expected [1], got 1", "b.c[1]: expected 3, got 2", "b.z: missing, expected 0"]);
        out.clear();
        diff("", &json!({"b": {"c": [1]}}), &actual, &mut out);
        assert_eq!(out, vec!["b.c: expected 1 elements, got 2"]);
    }

    #[test]
    fn sidecar_names() {
        assert_eq!(expected_path(Path::new("/c/single_colon.json")), Path::new("/c/single_colon.expected.json"));
    }

    #[test]
    fn counting() {
        let entry = |outcome| CorpusEntry { name: "j".into(), outcome, exit_code: 0 };
        let s = CorpusSummary {
            entries: vec![entry(Outcome::Pass), entry(Outcome::Skipped { reason: "r".into() }), entry(Outcome::Fail { diffs: vec!["d".into()] })],
        };
        assert_eq!((s.passed(), s.total(), s.skipped()), (1, 2, 1));
        assert!(!s.all_passed());
        assert!(s.table().contains("summary: 1/2 passed, 1 skipped"));
        assert!(CorpusSummary::default().all_passed());
    }
}
