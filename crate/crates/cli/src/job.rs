use std::path::Path;
use std::time::Duration;

use rees_core::rees::ShapeKind;
use rees_core::FieldSpec;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

/// Default per-job time budget over the rationals.
pub const RATIONAL_TIMEOUT: Duration = Duration::from_secs(600);
/// Default per-job time budget over a prime field.
pub const PRIME_TIMEOUT: Duration = Duration::from_secs(120);

/// What a job asks for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Analyze,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingChoice {
    pub x_count: usize,
    /// `q` or `zp:<prime>`.
    #[serde(default = "default_field")]
    pub field: String,
}

fn default_field() -> String {
    "q".into()
}

/// A randomly constructed presentation in place of an explicit matrix.
/// Uses `x_count` as `d`, `rank_e` as `e` and the job seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub kind: ShapeKind,
    pub s: usize,
    pub n: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Flags {
    pub allow_nonlinear: bool,
    pub depth: Option<usize>,
    pub order: Option<String>,
    /// Seconds.
    pub timeout: Option<f64>,
    pub seed: Option<u64>,
}

/// One analysis job as read from a JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default = "schema_one")]
    pub schema: u32,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub mode: Mode,
    pub ring: RingChoice,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub instance: Option<InstanceSpec>,
    pub rank_e: usize,
    #[serde(default)]
    pub s_hint: Option<usize>,
    #[serde(default)]
    pub shape_hint: Option<ShapeKind>,
    #[serde(default)]
    pub locus_primes: Vec<Vec<String>>,
    #[serde(default)]
    pub flags: Flags,
}

fn schema_one() -> u32 {
    SCHEMA
}

/// Command-line settings that take precedence over the job file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub field: Option<FieldSpec>,
    pub order: Option<String>,
    pub depth: Option<usize>,
    pub seed: Option<u64>,
    pub timeout: Option<f64>,
    pub allow_nonlinear: bool,
    pub timings: bool,
}

/// A job with overrides applied and every setting checked.
#[derive(Clone, Debug)]
pub struct ResolvedJob {
    pub spec: JobSpec,
    pub field: FieldSpec,
    pub order: String,
    pub timeout: Duration,
    pub timings: bool,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let job: JobSpec = serde_json::from_str(text).map_err(|e| CliError::Json {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        if job.schema != SCHEMA {
            return Err(CliError::Invalid(format!("unsupported job schema {}", job.schema)));
        }
        Ok(job)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
        Self::from_json(&text)
    }

    pub fn resolve(mut self, o: &Overrides) -> Result<ResolvedJob, CliError> {
        let field = match o.field {
            Some(f) => f,
            None => self.ring.field.parse().map_err(CliError::Core)?,
        };
        self.ring.field = field.to_string();
        if o.depth.is_some() {
            self.flags.depth = o.depth;
        }
        if o.seed.is_some() {
            self.flags.seed = o.seed;
        }
        if o.timeout.is_some() {
            self.flags.timeout = o.timeout;
        }
        self.flags.allow_nonlinear |= o.allow_nonlinear;
        let order = o.order.clone().or_else(|| self.flags.order.clone()).unwrap_or_else(|| "grevlex".into());
        if order != "grevlex" {
            return Err(CliError::Invalid(format!("unsupported monomial order {order:?}; only grevlex is available")));
        }
        self.flags.order = Some(order.clone());
        let timeout = match self.flags.timeout {
            Some(t) if t.is_finite() && t > 0.0 => Duration::from_secs_f64(t),
            Some(t) => return Err(CliError::Invalid(format!("timeout must be a positive number of seconds, got {t}"))),
            None if field.is_rational() => RATIONAL_TIMEOUT,
            None => PRIME_TIMEOUT,
        };
        match (&self.matrix, &self.instance) {
            (Some(_), Some(_)) => return Err(CliError::Invalid("give either matrix or instance, not both".into())),
            (None, None) => return Err(CliError::Parse("job has no matrix".into())),
            _ => {}
        }
        Ok(ResolvedJob { spec: self, field, order, timeout, timings: o.timings })
    }
}
