//! Syntax tree of the model language. Equality ignores source positions so
//! that trees parsed from differently formatted text compare equal.

use crate::diagnostic::SourceSpan;
use crate::model::{
    Capability, Level, NeedToUse, ProvisionType, PurposeOfUse, RequirementKind, SensitivityLevel,
    Subject, ThreatKind, TrustLevel, UseType,
};

#[derive(Debug, Clone, Eq)]
pub struct Ident {
    pub name: String,
    pub span: SourceSpan,
}

impl Ident {
    pub fn new(name: impl Into<String>, span: SourceSpan) -> Self {
        Self { name: name.into(), span }
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ast {
    pub name: Option<String>,
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, Eq)]
pub struct Statement {
    pub kind: StmtKind,
    /// Span of the leading keyword.
    pub span: SourceSpan,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decomposition {
    And,
    Or,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfoClass {
    Personal { owner: Ident, sensitivity: SensitivityLevel },
    Public,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpactClause {
    pub severity: Level,
    pub over: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Role {
        id: Ident,
        label: Option<String>,
        is_a: Option<Ident>,
    },
    Agent {
        id: Ident,
        label: Option<String>,
        plays: Vec<Ident>,
    },
    Goal {
        id: Ident,
        label: Option<String>,
        aimed_by: Option<Ident>,
        decomposition: Option<(Decomposition, Vec<Ident>)>,
    },
    Info {
        id: Ident,
        label: Option<String>,
        class: InfoClass,
        part_of: Option<Ident>,
    },
    Use {
        goal: Ident,
        type_of_use: UseType,
        info: Ident,
        need: Option<NeedToUse>,
        purpose: Option<PurposeOfUse>,
    },
    Permission {
        id: Ident,
        permission_type: UseType,
        over: Ident,
        held_by: Ident,
    },
    Provision {
        id: Ident,
        of: Ident,
        from: Ident,
        to: Ident,
        provision_type: ProvisionType,
    },
    Delegate {
        kind: Subject,
        id: Ident,
        from: Ident,
        to: Ident,
        of: Ident,
    },
    Adopt {
        actor: Ident,
        delegation: Ident,
    },
    Trust {
        id: Ident,
        from: Ident,
        to: Ident,
        kind: Subject,
        on: Ident,
        level: TrustLevel,
    },
    Monitor {
        id: Ident,
        by: Ident,
        of: Ident,
        kind: Subject,
        on: Ident,
    },
    Vulnerability {
        id: Ident,
        label: Option<String>,
        on: Vec<Ident>,
    },
    Threat {
        kind: ThreatKind,
        id: Ident,
        label: Option<String>,
        threatens: Vec<Ident>,
        exploits: Vec<Ident>,
        actors: Vec<Ident>,
        methods: Vec<Ident>,
        probability: Option<Level>,
        impacts: Vec<ImpactClause>,
    },
    AttackMethod {
        id: Ident,
        label: Option<String>,
    },
    PrivacyGoal {
        id: Ident,
        label: Option<String>,
        mitigates: Vec<Ident>,
        realized_by: Vec<Ident>,
    },
    Policy {
        id: Ident,
        label: Option<String>,
    },
    Mechanism {
        id: Ident,
        label: Option<String>,
        capability: Capability,
        applied_to: Vec<Ident>,
    },
    Requirement {
        kind: RequirementKind,
        id: Ident,
        concerning: Ident,
        interpreted_by: Vec<Ident>,
    },
    Describes {
        info: Ident,
        goal: Ident,
    },
    Situation {
        id: Ident,
        info: Ident,
        level: SensitivityLevel,
    },
}
