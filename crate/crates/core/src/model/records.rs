//! Element declarations, plain edges and reified relationship records.

use serde::{Deserialize, Serialize};

use super::id::ElementId;
use super::kinds::*;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub id: ElementId,
    pub kind: ElementKind,
    pub label: Option<String>,
    /// Declared sensitivity; only meaningful for personal information.
    pub sensitivity: Option<SensitivityLevel>,
}

impl Element {
    pub fn new(kind: ElementKind, id: impl Into<ElementId>) -> Self {
        Self {
            id: id.into(),
            kind,
            label: None,
            sensitivity: None,
        }
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn sensitivity(mut self, level: SensitivityLevel) -> Self {
        self.sensitivity = Some(level);
        self
    }

    /// Label if present, otherwise the identifier.
    pub fn display_name(&self) -> &str {
        self.label.as_deref().unwrap_or(self.id.as_str())
    }
}

/// Simple binary relations stored as plain edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Aims,
    Plays,
    IsA,
    PartOf,
    Own,
    Describes,
    Determines,
    IsSubjectTo,
    Mitigates,
    RealizedBy,
    AndDecomposed,
    OrDecomposed,
    Adopts,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 13] = [
        EdgeKind::Aims,
        EdgeKind::Plays,
        EdgeKind::IsA,
        EdgeKind::PartOf,
        EdgeKind::Own,
        EdgeKind::Describes,
        EdgeKind::Determines,
        EdgeKind::IsSubjectTo,
        EdgeKind::Mitigates,
        EdgeKind::RealizedBy,
        EdgeKind::AndDecomposed,
        EdgeKind::OrDecomposed,
        EdgeKind::Adopts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::Aims => "aims",
            EdgeKind::Plays => "plays",
            EdgeKind::IsA => "is_a",
            EdgeKind::PartOf => "partOf",
            EdgeKind::Own => "own",
            EdgeKind::Describes => "describes",
            EdgeKind::Determines => "determines",
            EdgeKind::IsSubjectTo => "isSubjectTo",
            EdgeKind::Mitigates => "mitigates",
            EdgeKind::RealizedBy => "realizedBy",
            EdgeKind::AndDecomposed => "andDecomposed",
            EdgeKind::OrDecomposed => "orDecomposed",
            EdgeKind::Adopts => "adopts",
        }
    }
}

/// `source --relation--> target`. `partOf` points from the part to the
/// whole; `own` from the owner to the information; `determines` from a
/// situation to the personal information whose level it fixes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub relation: EdgeKind,
    pub source: ElementId,
    pub target: ElementId,
    /// Only for `determines`.
    pub level: Option<SensitivityLevel>,
}

impl Edge {
    pub fn new(relation: EdgeKind, source: impl Into<ElementId>, target: impl Into<ElementId>) -> Self {
        Self {
            relation,
            source: source.into(),
            target: target.into(),
            level: None,
        }
    }

    pub fn determines(
        situation: impl Into<ElementId>,
        info: impl Into<ElementId>,
        level: SensitivityLevel,
    ) -> Self {
        Self {
            level: Some(level),
            ..Self::new(EdgeKind::Determines, situation, info)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UseRecord {
    pub goal: ElementId,
    pub info: ElementId,
    pub type_of_use: UseType,
    pub need_to_use: NeedToUse,
    pub purpose_of_use: PurposeOfUse,
}

impl UseRecord {
    /// A required, compatible use.
    pub fn new(goal: impl Into<ElementId>, type_of_use: UseType, info: impl Into<ElementId>) -> Self {
        Self {
            goal: goal.into(),
            info: info.into(),
            type_of_use,
            need_to_use: NeedToUse::Require,
            purpose_of_use: PurposeOfUse::Compatible,
        }
    }

    pub fn need(mut self, need: NeedToUse) -> Self {
        self.need_to_use = need;
        self
    }

    pub fn purpose(mut self, purpose: PurposeOfUse) -> Self {
        self.purpose_of_use = purpose;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermissionRecord {
    pub id: ElementId,
    pub holder: ElementId,
    pub permission_type: PermissionType,
    pub over: ElementId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProvisionRecord {
    pub id: ElementId,
    pub of: ElementId,
    pub from: ElementId,
    pub to: ElementId,
    pub provision_type: ProvisionType,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DelegationRecord {
    pub id: ElementId,
    pub delegator: ElementId,
    pub delegatee: ElementId,
    pub kind: Subject,
    /// A goal for goal delegations, a permission record for permission
    /// delegations.
    pub delegatum: ElementId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrustRecord {
    pub id: ElementId,
    pub trustor: ElementId,
    pub trustee: ElementId,
    pub kind: Subject,
    pub trustum: ElementId,
    pub level: TrustLevel,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonitorRecord {
    pub id: ElementId,
    pub monitor: ElementId,
    pub monitoree: ElementId,
    pub kind: Subject,
    pub subject: ElementId,
}

/// A threat together with its element declaration.
///
/// `actors` and `methods` are lists so that over-specified models can be
/// represented and reported; a well-formed intentional threat has exactly
/// one of each and an incidental threat none.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreatRecord {
    pub id: ElementId,
    pub label: Option<String>,
    pub kind: ThreatKind,
    pub threatens: Vec<ElementId>,
    pub exploits: Vec<ElementId>,
    pub actors: Vec<ElementId>,
    pub methods: Vec<ElementId>,
    pub probability: Option<Level>,
}

impl ThreatRecord {
    pub fn intentional(
        id: impl Into<ElementId>,
        actor: impl Into<ElementId>,
        method: impl Into<ElementId>,
    ) -> Self {
        Self {
            id: id.into(),
            label: None,
            kind: ThreatKind::Intentional,
            threatens: Vec::new(),
            exploits: Vec::new(),
            actors: vec![actor.into()],
            methods: vec![method.into()],
            probability: None,
        }
    }

    pub fn incidental(id: impl Into<ElementId>, probability: Level) -> Self {
        Self {
            id: id.into(),
            label: None,
            kind: ThreatKind::Incidental,
            threatens: Vec::new(),
            exploits: Vec::new(),
            actors: Vec::new(),
            methods: Vec::new(),
            probability: Some(probability),
        }
    }

    pub fn threatens(mut self, info: impl Into<ElementId>) -> Self {
        self.threatens.push(info.into());
        self
    }

    pub fn exploits(mut self, vulnerability: impl Into<ElementId>) -> Self {
        self.exploits.push(vulnerability.into());
        self
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ImpactRecord {
    pub threat: ElementId,
    pub over: ElementId,
    pub severity: Level,
}

/// A privacy requirement together with its element declaration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RequirementRecord {
    pub id: ElementId,
    pub label: Option<String>,
    pub kind: RequirementKind,
    pub concerning: ElementId,
    pub interpreted_by: Vec<ElementId>,
}

/// A privacy mechanism together with its element declaration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MechanismRecord {
    pub id: ElementId,
    pub label: Option<String>,
    pub capability: Capability,
    pub applied_to: Vec<ElementId>,
}

/// Anything the builder accepts besides plain elements and edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Record {
    Use(UseRecord),
    Permission(PermissionRecord),
    Provision(ProvisionRecord),
    Delegation(DelegationRecord),
    Trust(TrustRecord),
    Monitor(MonitorRecord),
    Threat(ThreatRecord),
    Impact(ImpactRecord),
    Requirement(RequirementRecord),
    Mechanism(MechanismRecord),
}

macro_rules! record_from {
    ($($variant:ident($ty:ty)),* $(,)?) => {
        $(impl From<$ty> for Record {
            fn from(r: $ty) -> Self {
                Record::$variant(r)
            }
        })*
    };
}

record_from!(
    Use(UseRecord),
    Permission(PermissionRecord),
    Provision(ProvisionRecord),
    Delegation(DelegationRecord),
    Trust(TrustRecord),
    Monitor(MonitorRecord),
    Threat(ThreatRecord),
    Impact(ImpactRecord),
    Requirement(RequirementRecord),
    Mechanism(MechanismRecord),
);

impl Record {
    /// The identifier this record declares, with its type, if any.
    pub fn declares(&self) -> Option<(&ElementId, NodeType)> {
        match self {
            Record::Use(_) | Record::Impact(_) => None,
            Record::Permission(r) => Some((&r.id, NodeType::Permission)),
            Record::Provision(r) => Some((&r.id, NodeType::Provision)),
            Record::Delegation(r) => Some((&r.id, NodeType::Delegation(r.kind))),
            Record::Trust(r) => Some((&r.id, NodeType::Trust(r.kind))),
            Record::Monitor(r) => Some((&r.id, NodeType::Monitor(r.kind))),
            Record::Threat(r) => Some((&r.id, NodeType::Element(r.kind.element_kind()))),
            Record::Requirement(r) => {
                Some((&r.id, NodeType::Element(ElementKind::PrivacyRequirement)))
            }
            Record::Mechanism(r) => Some((&r.id, NodeType::Element(ElementKind::PrivacyMechanism))),
        }
    }

    /// Every identifier this record refers to, excluding its own id.
    pub fn references(&self) -> Vec<&ElementId> {
        match self {
            Record::Use(r) => vec![&r.goal, &r.info],
            Record::Permission(r) => vec![&r.holder, &r.over],
            Record::Provision(r) => vec![&r.of, &r.from, &r.to],
            Record::Delegation(r) => vec![&r.delegator, &r.delegatee, &r.delegatum],
            Record::Trust(r) => vec![&r.trustor, &r.trustee, &r.trustum],
            Record::Monitor(r) => vec![&r.monitor, &r.monitoree, &r.subject],
            Record::Threat(r) => r
                .threatens
                .iter()
                .chain(&r.exploits)
                .chain(&r.actors)
                .chain(&r.methods)
                .collect(),
            Record::Impact(r) => vec![&r.threat, &r.over],
            Record::Requirement(r) => std::iter::once(&r.concerning).chain(&r.interpreted_by).collect(),
            Record::Mechanism(r) => r.applied_to.iter().collect(),
        }
    }
}
