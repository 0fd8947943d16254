//! Source positions and diagnostics shared by the parser, the model builder
//! and the wellformedness rules.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A region of source text. Lines and columns are 1-based; columns and
/// lengths count characters, not bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file: String,
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, line: u32, column: u32, length: u32) -> Self {
        Self {
            file: file.into(),
            line,
            column,
            length: length.max(1),
        }
    }

    fn key(&self) -> (&str, u32, u32, u32) {
        (&self.file, self.line, self.column, self.length)
    }
}

impl PartialOrd for SourceSpan {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SourceSpan {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// Stable diagnostic codes. The string form is part of the CLI contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagCode {
    // lexer
    UnterminatedString,
    IllegalCharacter,
    // parser
    UnexpectedToken,
    UnknownKeyword,
    MissingClause,
    // model finalization
    InvalidIdentifier,
    DuplicateId,
    UnresolvedReference,
    MissingAttribute,
    InvalidAttribute,
    MultipleOwners,
    // wellformedness
    #[serde(rename = "WF-SIG")]
    WfSig,
    #[serde(rename = "WF-CYCLE")]
    WfCycle,
    #[serde(rename = "WF-CARD")]
    WfCard,
    #[serde(rename = "WF-ISOLATED")]
    WfIsolated,
    #[serde(rename = "WF-SELF")]
    WfSelf,
    #[serde(rename = "WF-SENS-CONFLICT")]
    WfSensConflict,
    // front end
    IoError,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::UnterminatedString => "UnterminatedString",
            DiagCode::IllegalCharacter => "IllegalCharacter",
            DiagCode::UnexpectedToken => "UnexpectedToken",
            DiagCode::UnknownKeyword => "UnknownKeyword",
            DiagCode::MissingClause => "MissingClause",
            DiagCode::InvalidIdentifier => "InvalidIdentifier",
            DiagCode::DuplicateId => "DuplicateId",
            DiagCode::UnresolvedReference => "UnresolvedReference",
            DiagCode::MissingAttribute => "MissingAttribute",
            DiagCode::InvalidAttribute => "InvalidAttribute",
            DiagCode::MultipleOwners => "MultipleOwners",
            DiagCode::WfSig => "WF-SIG",
            DiagCode::WfCycle => "WF-CYCLE",
            DiagCode::WfCard => "WF-CARD",
            DiagCode::WfIsolated => "WF-ISOLATED",
            DiagCode::WfSelf => "WF-SELF",
            DiagCode::WfSensConflict => "WF-SENS-CONFLICT",
            DiagCode::IoError => "IoError",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parse, model or wellformedness problem.
///
/// `span` is absent for models assembled through the builder API without
/// source positions. `related` carries secondary locations, e.g. the first
/// declaration of a duplicated identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagnostic {
    pub span: Option<SourceSpan>,
    pub severity: Severity,
    pub code: DiagCode,
    pub message: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub related: Vec<SourceSpan>,
}

impl Diagnostic {
    pub fn error(code: DiagCode, span: Option<SourceSpan>, message: impl Into<String>) -> Self {
        Self::new(Severity::Error, code, span, message)
    }

    pub fn warning(code: DiagCode, span: Option<SourceSpan>, message: impl Into<String>) -> Self {
        Self::new(Severity::Warning, code, span, message)
    }

    fn new(
        severity: Severity,
        code: DiagCode,
        span: Option<SourceSpan>,
        message: impl Into<String>,
    ) -> Self {
        let message = message.into();
        debug_assert!(!message.is_empty());
        Self {
            span,
            severity,
            code,
            message,
            related: Vec::new(),
        }
    }

    pub fn with_related(mut self, span: SourceSpan) -> Self {
        self.related.push(span);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl PartialOrd for Diagnostic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Spanned diagnostics first, ordered by (file, line, column); unspanned
/// ones after, ordered by code and message.
impl Ord for Diagnostic {
    fn cmp(&self, other: &Self) -> Ordering {
        let span_order = match (&self.span, &other.span) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        };
        span_order
            .then(self.code.cmp(&other.code))
            .then(self.severity.cmp(&other.severity))
            .then_with(|| self.message.cmp(&other.message))
            .then_with(|| self.related.cmp(&other.related))
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.severity, self.code)?;
        if let Some(span) = &self.span {
            write!(f, " {span}")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// Sorts and removes exact duplicates.
pub fn normalize(diags: &mut Vec<Diagnostic>) {
    diags.sort();
    diags.dedup();
}
