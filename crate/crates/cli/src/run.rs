use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use rees_core::groebner::{with_limits, Limits};
use rees_core::rees::{
    analyze, analyze_presentation, constructed_instance, verify_assertions, AnalysisOptions, AnalysisReport, Assertion,
};
use rees_core::{parse_poly, BigRational, Error, Field, FieldSpec, PolyMatrix, RingSpec, Zp};
use serde::Serialize;

use crate::error::{exit, CliError};
use crate::job::{JobSpec, Mode, Overrides, ResolvedJob, SCHEMA};

pub const TOOL: &str = "rees";

/// The machine-readable result of one job.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub name: Option<String>,
    pub mode: Mode,
    pub field: String,
    pub order: String,
    pub seed: Option<u64>,
    /// Draws needed for a constructed instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<usize>,
    pub analysis: AnalysisReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assertions: Option<Vec<Assertion>>,
}

impl Report {
    /// Exit code implied by the report alone.
    pub fn exit_code(&self) -> i32 {
        if !self.analysis.is_complete() {
            return exit::LIMIT;
        }
        let failed = match (&self.mode, &self.assertions) {
            (Mode::Verify, Some(a)) => a.iter().any(|a| !a.passed),
            _ => self.analysis.verdicts.candidate_equals_oracle == Some(false),
        };
        if failed {
            exit::MISMATCH
        } else {
            exit::OK
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn failed_assertions(&self) -> Vec<&str> {
        self.assertions.iter().flatten().filter(|a| !a.passed).map(|a| a.name.as_str()).collect()
    }
}

fn parse_matrix<F: Field>(ring: &Arc<RingSpec>, rows: &[Vec<String>]) -> Result<PolyMatrix<F>, CliError> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(CliError::Parse("matrix is empty".into()));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        if row.len() != rows[0].len() {
            return Err(CliError::Parse(format!("matrix row {} has {} entries, expected {}", r + 1, row.len(), rows[0].len())));
        }
        let cells = row
            .iter()
            .enumerate()
            .map(|(c, s)| parse_poly(ring, s).map_err(|e| CliError::Parse(format!("matrix entry ({}, {}) {s:?}: {e}", r + 1, c + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push(cells);
    }
    Ok(PolyMatrix::from_rows(ring, parsed)?)
}

fn analyze_in<F: Field>(job: &ResolvedJob, opts: &AnalysisOptions) -> Result<(AnalysisReport, Option<usize>), CliError> {
    let spec = &job.spec;
    if let Some(inst) = &spec.instance {
        let dims = (spec.ring.x_count, inst.s, inst.n, spec.rank_e);
        let c = constructed_instance::<F>(job.field, inst.kind, dims, spec.flags.seed.unwrap_or(0))?;
        return Ok((analyze_presentation(&c.presentation, opts)?, Some(c.attempts)));
    }
    let rows = spec.matrix.as_deref().unwrap_or_default();
    let ring = RingSpec::new(spec.ring.x_count, rows.len(), job.field)?;
    let phi = parse_matrix::<F>(&ring, rows)?;
    Ok((analyze(phi, spec.rank_e, opts)?, None))
}

/// Runs one resolved job in the given mode under its time budget.
pub fn run_resolved(job: &ResolvedJob, mode: Mode) -> Result<Report, CliError> {
    let spec = &job.spec;
    let opts = AnalysisOptions {
        allow_nonlinear: spec.flags.allow_nonlinear,
        s_hint: spec.s_hint,
        shape_hint: spec.shape_hint,
        depth: spec.flags.depth,
        locus_primes: spec.locus_primes.clone(),
        skip_chain: false,
        timings: job.timings,
    };
    let limits = Limits::with_timeout(job.timeout);
    let (analysis, attempts) = with_limits(limits, || match job.field {
        FieldSpec::Rational => analyze_in::<BigRational>(job, &opts),
        FieldSpec::Prime(_) => analyze_in::<Zp>(job, &opts),
    })?;
    let assertions = if mode == Mode::Verify && analysis.is_complete() {
        Some(verify_assertions(&analysis)?)
    } else {
        None
    };
    Ok(Report {
        schema: SCHEMA,
        tool: TOOL,
        version: env!("CARGO_PKG_VERSION"),
        name: spec.name.clone(),
        mode,
        field: job.field.to_string(),
        order: job.order.clone(),
        seed: spec.flags.seed,
        attempts,
        analysis,
        assertions,
    })
}

/// Full pipeline, reporting verdicts without asserting them.
pub fn run_analyze(job: JobSpec, o: &Overrides) -> Result<Report, CliError> {
    run_resolved(&job.resolve(o)?, Mode::Analyze)
}

/// Full pipeline plus the per-assertion breakdown of the defining-ideal
/// theorems. Inputs not in column or row form are rejected.
pub fn run_verify(job: JobSpec, o: &Overrides) -> Result<Report, CliError> {
    run_resolved(&job.resolve(o)?, Mode::Verify)
}

/// Writes via a temporary sibling and a rename, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e| CliError::Io { path: path.display().to_string(), source: e };
    let file_name = path.file_name().ok_or_else(|| CliError::Invalid(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id()));
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

/// Stable short name of a core error, for tables and messages.
pub fn error_kind(e: &CliError) -> &'static str {
    match e {
        CliError::Io { .. } => "io",
        CliError::Json { .. } | CliError::Parse(_) => "parse",
        CliError::Invalid(_) => "invalid",
        CliError::Core(Error::ResourceLimit { .. }) => "resource_limit",
        CliError::Core(Error::ShapeNotNormalForm { .. }) => "shape_not_normal_form",
        CliError::Core(Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::UnsupportedOperator { .. } | Error::DenominatorVanishes { .. }) => "parse",
        CliError::Core(_) => "validation",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(text: &str) -> JobSpec {
        JobSpec::from_json(text).unwrap()
    }

    #[test]
    fn regular_sequence_is_linear_type() {
        let r = run_analyze(job(r#"{"ring": {"x_count": 2}, "matrix": [["x1"], ["x2"]], "rank_e": 1}"#), &Overrides::default()).unwrap();
        assert_eq!(r.exit_code(), exit::OK);
        assert_eq!(r.analysis.gs_profile.as_ref().unwrap().s_max, rees_core::rees::SMax::Infinity);
        assert!(r.to_json().contains("\"schema\": 1"));
    }

    #[test]
    fn cell_errors_name_the_entry() {
        let j = job(r#"{"ring": {"x_count": 2}, "matrix": [["x1"], ["x2 + y"]], "rank_e": 1}"#);
        let err = run_analyze(j, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("(2, 1)"), "{err}");
        assert_eq!(err.exit_code(), exit::INVALID);
        let j = job(r#"{"ring": {"x_count": 2}, "matrix": [], "rank_e": 1}"#);
        assert_eq!(error_kind(&run_analyze(j, &Overrides::default()).unwrap_err()), "parse");
    }

    #[test]
    fn verify_rejects_unstructured_input() {
        let j = job(r#"{"ring": {"x_count": 3}, "matrix": [["x1","x3"],["x3","x2"],["x2","x1"]], "rank_e": 1, "s_hint": 1}"#);
        let err = run_verify(j, &Overrides::default()).unwrap_err();
        assert_eq!(error_kind(&err), "shape_not_normal_form");
        assert_eq!(err.exit_code(), exit::INVALID);
    }

    #[test]
    fn tiny_timeout_gives_a_partial_report() {
        let j = job(r#"{"ring": {"x_count": 4, "field": "zp:32003"}, "instance": {"kind": "column", "s": 2, "n": 5}, "rank_e": 1, "flags": {"seed": 1}}"#);
        let o = Overrides { timeout: Some(1e-9), ..Default::default() };
        match run_analyze(j, &o) {
            Ok(r) => assert_eq!(r.exit_code(), exit::LIMIT),
            Err(e) => assert_eq!(e.exit_code(), exit::LIMIT),
        }
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = std::env::temp_dir().join(format!("rees-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("r.json");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b");
        assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
