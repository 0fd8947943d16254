//! The competency-question engine: organisational smells, risk and
//! treatment queries, and privacy requirement violation checks.

mod checks;
mod context;
mod ids;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, ExecMode};
use crate::model::{ElementId, Level, ModelGraph, SensitivityLevel};
use crate::report::Report;

pub use checks::*;
pub use context::Context;
pub use ids::{CheckGroup, CheckId, CheckSelection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("unknown check `{0}`")]
    UnknownCheckId(String),
    #[error("{0} needs a level filter")]
    FilterRequired(CheckId),
    #[error("{0} does not take a level filter")]
    FilterNotApplicable(CheckId),
    #[error("{0} is not a {1} query")]
    WrongQuery(CheckId, &'static str),
}

/// Violation vocabulary of the requirement checks, plus `QueryRow` for
/// plain query results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FindingKind {
    DesignSmell,
    Disclosure,
    Identifiability,
    Linkability,
    Observability,
    Unnotified,
    Untransparent,
    Unaccountable,
    QueryRow,
}

impl FindingKind {
    pub fn is_violation(self) -> bool {
        self != FindingKind::QueryRow
    }
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One answer row or one violation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Finding {
    pub check: CheckId,
    pub kind: FindingKind,
    pub elements: Vec<ElementId>,
    pub message: String,
}

impl Finding {
    pub fn new(check: CheckId, elements: Vec<ElementId>, message: impl Into<String>) -> Self {
        debug_assert!(!elements.is_empty());
        Self {
            check,
            kind: check.kind(),
            elements,
            message: message.into(),
        }
    }

    pub fn is_violation(&self) -> bool {
        self.kind.is_violation()
    }
}

impl PartialOrd for Finding {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// By check, then element ids, then message.
impl Ord for Finding {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.check
            .cmp(&other.check)
            .then_with(|| self.elements.cmp(&other.elements))
            .then_with(|| self.message.cmp(&other.message))
            .then_with(|| self.kind.cmp(&other.kind))
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elements: Vec<&str> = self.elements.iter().map(ElementId::as_str).collect();
        write!(f, "{} {}: {} [{}]", self.check, self.kind, self.message, elements.join(", "))
    }
}

/// Sorts and removes duplicates.
pub fn normalize_findings(findings: &mut Vec<Finding>) {
    findings.sort();
    findings.dedup();
}

/// Level filters for the parameterised queries. An absent filter makes
/// `run_all` report every level.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Filters {
    /// CQ3.
    pub sensitivity: Option<SensitivityLevel>,
    /// CQ8.
    pub severity: Option<Level>,
    /// CQ13.
    pub probability: Option<Level>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub checks: CheckSelection,
    pub filters: Filters,
    /// Grants over composite information also cover its parts.
    pub parts_inherit: bool,
    pub exec: ExecMode,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            checks: CheckSelection::all(),
            filters: Filters::default(),
            parts_inherit: false,
            exec: ExecMode::default(),
        }
    }
}

impl AnalysisConfig {
    /// Configuration enabling the checks named in `spec` (see
    /// [`CheckSelection::parse`]).
    pub fn with_checks(spec: &str) -> Result<Self, AnalysisError> {
        Ok(Self {
            checks: CheckSelection::parse(spec)?,
            ..Self::default()
        })
    }
}

/// Runs one check in the given context.
pub fn run_check(ctx: &Context, id: CheckId, filters: &Filters) -> Vec<Finding> {
    let g = ctx.graph();
    let mut out = match id {
        CheckId::CQ1 => cq1_trustless_permission_delegation(g),
        CheckId::CQ2 => cq2_redundant_monitoring(g),
        CheckId::CQ3 => cq3_rows(g, filters.sensitivity),
        CheckId::CQ4 => cq4_vulnerable_information(g),
        CheckId::CQ5 => cq5_exploiting_threats(g),
        CheckId::CQ6 => cq6_unmitigated_vulnerabilities(g),
        CheckId::CQ7 => cq7_threatened_information(g),
        CheckId::CQ8 => cq8_rows(g, filters.severity),
        CheckId::CQ9 => cq9_intentional_threats(g),
        CheckId::CQ10 => cq10_threat_actors(g),
        CheckId::CQ11 => cq11_attack_methods(g),
        CheckId::CQ12 => cq12_incidental_threats(g),
        CheckId::CQ13 => cq13_rows(g, filters.probability),
        CheckId::CQ14 => cq14_realized_privacy_goals(g),
        CheckId::CQ15 => cq15_applied_mechanisms(g),
        CheckId::CQ16 => cq16_in(ctx),
        CheckId::CQ17 => cq17_confidential_provision(g),
        CheckId::CQ18 => cq18_need_to_know(g),
        CheckId::CQ19 => cq19_purpose_of_use(g),
        CheckId::CQ20 => cq20_anonymity(g),
        CheckId::CQ21 => cq21_unlinkability(g),
        CheckId::CQ22 => cq22_in(ctx),
        CheckId::CQ23 => cq23_in(ctx),
        CheckId::CQ24 => cq24_authentication(g),
        CheckId::CQ25 => cq25_in(ctx),
        CheckId::CQ26 => cq26_non_repudiation(g),
    };
    normalize_findings(&mut out);
    out
}

/// Runs every enabled check over a well-formed graph. Checks are
/// independent and may run concurrently; the merged result is sorted, so
/// the report does not depend on the schedule.
pub fn run_all(graph: &ModelGraph, config: &AnalysisConfig) -> Report {
    let ctx = Context::new(graph, config.parts_inherit);
    let ids: Vec<CheckId> = config.checks.iter().collect();
    let mut findings = exec::flat_map(config.exec, &ids, |id| run_check(&ctx, *id, &config.filters));
    normalize_findings(&mut findings);
    Report::new(graph.name().map(str::to_string), Vec::new(), findings)
}

/// The risk analysis queries CQ4–CQ13. `filter` is the severity level for
/// CQ8 and the probability level for CQ13, and must be absent otherwise.
pub fn risk_query(
    graph: &ModelGraph,
    id: CheckId,
    filter: Option<Level>,
) -> Result<Vec<Finding>, AnalysisError> {
    if !(4..=13).contains(&id.number()) {
        return Err(AnalysisError::WrongQuery(id, "risk"));
    }
    let parameterised = matches!(id, CheckId::CQ8 | CheckId::CQ13);
    match (parameterised, filter) {
        (true, None) => return Err(AnalysisError::FilterRequired(id)),
        (false, Some(_)) => return Err(AnalysisError::FilterNotApplicable(id)),
        _ => {}
    }
    let filters = Filters {
        severity: filter,
        probability: filter,
        sensitivity: None,
    };
    Ok(run_check(&Context::new(graph, false), id, &filters))
}

/// The treatment queries CQ14 and CQ15.
pub fn treatment_query(graph: &ModelGraph, id: CheckId) -> Result<Vec<Finding>, AnalysisError> {
    match id {
        CheckId::CQ14 | CheckId::CQ15 => Ok(run_check(&Context::new(graph, false), id, &Filters::default())),
        _ => Err(AnalysisError::WrongQuery(id, "treatment")),
    }
}

/// Ids of the elements in each finding, for compact comparisons.
pub fn rows(findings: &[Finding]) -> BTreeSet<Vec<String>> {
    findings
        .iter()
        .map(|f| f.elements.iter().map(|e| e.to_string()).collect())
        .collect()
}
