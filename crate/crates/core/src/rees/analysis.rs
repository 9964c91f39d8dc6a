use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::chain::{approximation_chain, default_depth, ChainChecks};
use super::checks::{fiber_type_check, residual_intersection_check};
use super::gs::{gs_profile, GsProfile, SMax};
use super::jd::{candidate_defining_ideal, candidate_formula, extract_submatrices, jacobian_dual, minors_or_zero, symmetric_ideal, Submatrices};
use super::oracle::{certify_minimal_primes, fiber_analysis, first_vars_ideal, saturate_symmetric, unique_minimal_prime_check, PrimeCertificate};
use super::shape::{classify_shape, normalize, ShapeClassification, ShapeKind};
use super::{validate_presentation, Presentation, ValidationOptions};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::idealops::{fitting_ideal, height, ideal_equal, Ideal, PolyMatrix};
use crate::polyring::{Bidegree, Poly};

/// Knobs of the analysis pipeline.
#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    pub allow_nonlinear: bool,
    /// Use this `s` instead of the computed `s_max`.
    pub s_hint: Option<usize>,
    /// Treat the presentation as this shape when column and row form
    /// coincide (`s = d - 1`); ignored otherwise.
    pub shape_hint: Option<ShapeKind>,
    /// Chain depth; `min(3, n - e)` when unset.
    pub depth: Option<usize>,
    /// Candidate minimal primes of `Fitt_(s+e-1)`, each as generator strings.
    pub locus_primes: Vec<Vec<String>>,
    pub skip_chain: bool,
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationSummary {
    pub field: String,
    pub d: usize,
    pub n: usize,
    pub rank_e: usize,
    pub linear: bool,
    pub matrix: Vec<Vec<String>>,
    pub warnings: Vec<String>,
}

/// Which of the standing hypotheses on the module were found to hold.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub linear: bool,
    /// `n ≥ d + e`.
    pub generator_bound: bool,
    /// `G_s` holds and `G_(s+1)` fails.
    pub gs_exact: bool,
    pub residual_rank_one: bool,
    pub normal_form: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.linear && self.generator_bound && self.gs_exact && self.residual_rank_one && self.normal_form
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FittingLocus {
    /// `i` in `Fitt_i = I_(n-i)(φ)`.
    pub index: usize,
    pub height: Option<usize>,
    /// `(x1..xs)` is its only minimal prime.
    pub unique_minimal_prime: bool,
    pub certified_primes: Vec<Vec<String>>,
    pub certificate: Option<PrimeCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmatricesReport {
    pub kind: ShapeKind,
    pub b_prime: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_matrix: Option<Vec<Vec<String>>>,
    pub b_doubleprime: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    pub residual_generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub x_degree: u32,
    pub t_degree: u32,
    pub count: usize,
}

pub fn census_list(census: &BTreeMap<Bidegree, usize>) -> Vec<CensusEntry> {
    census.iter().map(|(b, &count)| CensusEntry { x_degree: b.x, t_degree: b.t, count }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub formula: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SaturatingKind {
    /// `(x1..xs)`.
    FirstVariables,
    /// Product of certified minimal primes of the Fitting ideal.
    CertifiedPrimes,
    /// The Fitting ideal itself.
    FittingIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub saturating_kind: SaturatingKind,
    pub saturating_ideal: Vec<String>,
    pub exponent: u32,
    pub generators: Vec<String>,
    pub height: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub generators: Vec<String>,
    pub analytic_spread: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub candidate_equals_oracle: Option<bool>,
    /// `ht J = n - e`.
    pub height_as_predicted: Option<bool>,
    /// `s + e` (column) or `d + e - 1` (row).
    pub analytic_spread_as_predicted: Option<bool>,
    pub residual_intersection: Option<bool>,
    pub fiber_type: Option<bool>,
    /// Fiber type exactly in the column case or when `s = d - 1`.
    pub fiber_type_as_predicted: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStepReport {
    pub i: usize,
    pub height: usize,
    pub exponent: u32,
    pub s_max: SMax,
    pub generators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub depth: usize,
    pub steps: Vec<ChainStepReport>,
    pub checks: ChainChecks,
    /// Column case: `J_1 = L_1 + I_s(B')`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j1_matches: Option<bool>,
}

/// Everything computed for one presentation, as plain strings and numbers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub presentation: PresentationSummary,
    pub gs_profile: Option<GsProfile>,
    pub s: Option<usize>,
    pub residual_rank: Option<usize>,
    pub shape: Option<ShapeClassification>,
    /// The reordered matrix when the shape needed row or column swaps; all
    /// later ideals use its T-labels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized_matrix: Option<Vec<Vec<String>>>,
    pub hypotheses: Hypotheses,
    pub jacobian_dual: Option<Vec<Vec<String>>>,
    pub fitting_locus: Option<FittingLocus>,
    pub submatrices: Option<SubmatricesReport>,
    pub candidate: Option<CandidateReport>,
    pub oracle: Option<OracleReport>,
    pub fiber: Option<FiberReport>,
    pub census: Vec<CensusEntry>,
    pub verdicts: Verdicts,
    pub chain: Option<ChainReport>,
    pub notes: Vec<String>,
    /// Set when a resource limit stopped the pipeline early.
    pub interrupted: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl AnalysisReport {
    fn new<F: Field>(p: &Presentation<F>) -> Self {
        AnalysisReport {
            presentation: PresentationSummary {
                field: p.ring().field().to_string(),
                d: p.d(),
                n: p.n(),
                rank_e: p.rank_e(),
                linear: p.is_linear(),
                matrix: p.phi().entries_as_strings(),
                warnings: p.warnings().to_vec(),
            },
            gs_profile: None,
            s: None,
            residual_rank: None,
            shape: None,
            normalized_matrix: None,
            hypotheses: Hypotheses::default(),
            jacobian_dual: None,
            fitting_locus: None,
            submatrices: None,
            candidate: None,
            oracle: None,
            fiber: None,
            census: Vec::new(),
            verdicts: Verdicts::default(),
            chain: None,
            notes: Vec::new(),
            interrupted: None,
            timings_ms: None,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.interrupted.is_none()
    }
}

struct Clock {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, f64>,
}

impl Clock {
    fn lap(&mut self, stage: &str) {
        if self.on {
            let now = Instant::now();
            *self.laps.entry(stage.to_string()).or_insert(0.0) += (now - self.last).as_secs_f64() * 1e3;
            self.last = now;
        }
    }
}

fn ideal_strings<F: Field>(ideal: &Ideal<F>) -> Vec<String> {
    ideal.sorted_strings()
}

fn sub_report<F: Field>(sub: &Submatrices<F>) -> SubmatricesReport {
    SubmatricesReport {
        kind: sub.kind,
        b_prime: sub.b_prime.entries_as_strings(),
        psi: sub.psi.as_ref().map(PolyMatrix::entries_as_strings),
        c_matrix: sub.c_matrix.as_ref().map(PolyMatrix::entries_as_strings),
        b_doubleprime: sub.b_doubleprime.entries_as_strings(),
        gamma: sub.gamma.as_ref().map(Poly::to_string),
        residual_generators: sub.residual_generators.iter().map(Poly::to_string).collect(),
    }
}

/// Validates `phi` and runs the whole pipeline.
///
/// Validation failures are returned as errors. A resource limit hit later
/// yields the partial report with `interrupted` set.
pub fn analyze<F: Field>(phi: PolyMatrix<F>, rank_e: usize, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let p = validate_presentation(phi, rank_e, ValidationOptions { allow_nonlinear: opts.allow_nonlinear })?;
    analyze_presentation(&p, opts)
}

pub fn analyze_presentation<F: Field>(p: &Presentation<F>, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::new(p);
    let mut clock = Clock { on: opts.timings, last: Instant::now(), laps: BTreeMap::new() };
    match run_stages(p, opts, &mut report, &mut clock) {
        Ok(()) => {}
        Err(err @ Error::ResourceLimit { .. }) => report.interrupted = Some(err.to_string()),
        Err(err) => return Err(err),
    }
    if opts.timings {
        report.timings_ms = Some(clock.laps);
    }
    Ok(report)
}

fn run_stages<F: Field>(
    p: &Presentation<F>,
    opts: &AnalysisOptions,
    report: &mut AnalysisReport,
    clock: &mut Clock,
) -> Result<()> {
    let (n, d, e) = (p.n(), p.d(), p.rank_e());
    report.hypotheses.linear = p.is_linear();
    report.hypotheses.generator_bound = n >= d + e;

    let gs = gs_profile(p)?;
    let s_max = gs.s_max;
    report.gs_profile = Some(gs);
    clock.lap("gs_profile");

    if p.is_linear() {
        report.jacobian_dual = Some(jacobian_dual(p)?.entries_as_strings());
    }
    let Some(s) = opts.s_hint.or(s_max.finite()) else {
        report.notes.push("G_s holds for every s; no s to analyze".into());
        return Ok(());
    };
    if s == 0 || s >= d {
        report.notes.push(format!("s = {s} is outside 1..d-1; shape analysis skipped"));
        return Ok(());
    }
    report.s = Some(s);
    report.hypotheses.gs_exact = s_max == SMax::Finite(s);

    let mut shape = classify_shape(p, s)?;
    if let Some(kind) = opts.shape_hint {
        if shape.is_normal_form() && kind != shape.kind {
            if s + 1 == d && matches!(kind, ShapeKind::Column | ShapeKind::Row) {
                shape.kind = kind;
                shape.witness = Some(match kind {
                    ShapeKind::Row => shape.row_permutation[n - 1],
                    _ => shape.column_permutation[p.phi().cols() - 1],
                });
            } else {
                report.notes.push(format!("shape hint {kind:?} ignored; the presentation is in {:?} form", shape.kind));
            }
        }
    }
    report.residual_rank = Some(shape.residual_rank);
    report.hypotheses.residual_rank_one = shape.residual_rank == 1;
    report.hypotheses.normal_form = shape.is_normal_form();
    clock.lap("shape");

    let work = if shape.is_normal_form() && !shape.is_identity() {
        let q = normalize(p, &shape);
        report.normalized_matrix = Some(q.phi().entries_as_strings());
        report.notes.push("rows and columns reordered into normal form; T-labels follow the reordered rows".into());
        q
    } else {
        p.clone()
    };
    report.shape = Some(shape.clone());

    // Fitting locus and the saturating ideal
    let index = s + e - 1;
    let fitt = fitting_ideal(p.phi(), index)?;
    let fitt_height = height(&fitt)?;
    let unique = fitt_height.is_some() && unique_minimal_prime_check(&fitt, s)?;
    let mut locus = FittingLocus {
        index,
        height: fitt_height,
        unique_minimal_prime: unique,
        certified_primes: Vec::new(),
        certificate: None,
    };
    let (by, kind) = if unique {
        (first_vars_ideal(&work, s), SaturatingKind::FirstVariables)
    } else if !opts.locus_primes.is_empty() {
        let primes = opts
            .locus_primes
            .iter()
            .map(|gens| {
                let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
                Ideal::parse(p.ring(), &refs)
            })
            .collect::<Result<Vec<_>>>()?;
        let cert = certify_minimal_primes(&fitt, &primes)?;
        locus.certified_primes = primes.iter().map(ideal_strings).collect();
        let holds = cert.holds();
        locus.certificate = Some(cert);
        if holds {
            let mut prod = primes[0].clone();
            for pr in &primes[1..] {
                prod = prod.product(pr)?;
            }
            (prod, SaturatingKind::CertifiedPrimes)
        } else {
            report.notes.push("given locus primes failed certification; saturating by the Fitting ideal".into());
            (fitt.clone(), SaturatingKind::FittingIdeal)
        }
    } else {
        (fitt.clone(), SaturatingKind::FittingIdeal)
    };
    report.fitting_locus = Some(locus);
    clock.lap("fitting_locus");

    // the constructions of the defining-ideal theorems
    let mut sub = None;
    let mut candidate = None;
    if shape.is_normal_form() && p.is_linear() {
        let mut shape_n = shape.clone();
        shape_n.row_permutation = (0..n).collect();
        shape_n.column_permutation = (0..work.phi().cols()).collect();
        let sm = extract_submatrices(&work, &shape_n)?;
        report.submatrices = Some(sub_report(&sm));
        let cand = candidate_defining_ideal(&work, &sm)?;
        report.candidate = Some(CandidateReport { formula: candidate_formula(sm.kind).into(), generators: ideal_strings(&cand) });
        sub = Some(sm);
        candidate = Some(cand);
        clock.lap("candidate");
    } else if shape.is_normal_form() {
        report.notes.push("nonlinear entries: the Jacobian dual is not unique, candidate skipped".into());
    }

    let (j, exponent) = saturate_symmetric(&work, &by)?;
    let j_height = height(&j)?;
    report.oracle = Some(OracleReport {
        saturating_kind: kind,
        saturating_ideal: ideal_strings(&by),
        exponent,
        generators: ideal_strings(&j),
        height: j_height,
    });
    report.verdicts.height_as_predicted = Some(j_height == Some(n - e));
    clock.lap("oracle");

    if j.is_bihomogeneous() {
        let fa = fiber_analysis(&j, &work)?;
        report.census = census_list(&fa.census);
        report.fiber = Some(FiberReport { generators: ideal_strings(&fa.fiber), analytic_spread: fa.analytic_spread });
        if let Some(sm) = &sub {
            let predicted = match sm.kind {
                ShapeKind::Column => s + e,
                _ => d + e - 1,
            };
            report.verdicts.analytic_spread_as_predicted = Some(fa.analytic_spread == predicted);
        }
        clock.lap("fiber");
    }

    if let (Some(sm), Some(cand)) = (&sub, &candidate) {
        report.verdicts.candidate_equals_oracle = Some(ideal_equal(cand, &j)?);
        report.verdicts.residual_intersection = Some(residual_intersection_check(&work, sm, &j)?.holds());
        let ft = fiber_type_check(&work, sm)?;
        report.verdicts.fiber_type = Some(ft);
        report.verdicts.fiber_type_as_predicted = Some(ft == (sm.kind == ShapeKind::Column || s + 1 == d));
        clock.lap("verdicts");
    }

    if let (Some(sm), false) = (&sub, opts.skip_chain) {
        let depth = opts.depth.unwrap_or_else(|| default_depth(&work));
        let chain = approximation_chain(&work, s, depth)?;
        let j1_matches = match (sm.kind, chain.steps.get(1)) {
            (ShapeKind::Column, Some(step)) => {
                let expected = symmetric_ideal(&work.truncated(work.phi().cols() - 1)).sum(&minors_or_zero(&sm.b_prime, s)?)?;
                Some(ideal_equal(&step.j, &expected)?)
            }
            _ => None,
        };
        report.chain = Some(ChainReport {
            depth,
            steps: chain
                .steps
                .iter()
                .map(|st| ChainStepReport {
                    i: st.i,
                    height: st.height_j,
                    exponent: st.exponent,
                    s_max: st.s_max,
                    generators: st.j.generators().len(),
                })
                .collect(),
            checks: chain.checks,
            j1_matches,
        });
        clock.lap("chain");
    }
    Ok(())
}

/// One checked claim of the verification mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
}

/// The claims of the defining-ideal theorems, read off a complete report.
///
/// Fails with `ShapeNotNormalForm` when the presentation is neither in
/// column nor in row form.
pub fn verify_assertions(report: &AnalysisReport) -> Result<Vec<Assertion>> {
    let s = report.s.unwrap_or(0);
    let shape = report.shape.as_ref().filter(|sh| sh.is_normal_form());
    if shape.is_none() {
        let kind = report.shape.as_ref().map_or("unclassified".to_string(), |sh| format!("{:?}", sh.kind));
        return Err(Error::ShapeNotNormalForm { s, kind });
    }
    let v = &report.verdicts;
    let mut out = vec![Assertion { name: "hypotheses".into(), passed: report.hypotheses.all() }];
    let mut push = |name: &str, val: Option<bool>| out.push(Assertion { name: name.into(), passed: val == Some(true) });
    push("candidate_equals_oracle", v.candidate_equals_oracle);
    push("height_as_predicted", v.height_as_predicted);
    push("analytic_spread_as_predicted", v.analytic_spread_as_predicted);
    push("residual_intersection", v.residual_intersection);
    push("fiber_type_as_predicted", v.fiber_type_as_predicted);
    if let Some(chain) = &report.chain {
        push("chain", Some(chain.checks.all() && chain.j1_matches != Some(false)));
    }
    Ok(out)
}
