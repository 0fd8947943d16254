use std::fmt;

use serde::{Deserialize, Serialize};

/// The concept an element instantiates. Every element has exactly one kind,
/// so personal and public information (and intentional and incidental
/// threats) are disjoint by construction, and the two information kinds
/// (resp. threat kinds) cover their parent concept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementKind {
    Role,
    Agent,
    Goal,
    PersonalInformation,
    PublicInformation,
    Situation,
    Vulnerability,
    IntentionalThreat,
    IncidentalThreat,
    AttackMethod,
    PrivacyGoal,
    PrivacyPolicy,
    PrivacyMechanism,
    PrivacyRequirement,
}

impl ElementKind {
    pub const ALL: [ElementKind; 14] = [
        ElementKind::Role,
        ElementKind::Agent,
        ElementKind::Goal,
        ElementKind::PersonalInformation,
        ElementKind::PublicInformation,
        ElementKind::Situation,
        ElementKind::Vulnerability,
        ElementKind::IntentionalThreat,
        ElementKind::IncidentalThreat,
        ElementKind::AttackMethod,
        ElementKind::PrivacyGoal,
        ElementKind::PrivacyPolicy,
        ElementKind::PrivacyMechanism,
        ElementKind::PrivacyRequirement,
    ];

    pub fn is_actor(self) -> bool {
        matches!(self, ElementKind::Role | ElementKind::Agent)
    }

    pub fn is_information(self) -> bool {
        matches!(
            self,
            ElementKind::PersonalInformation | ElementKind::PublicInformation
        )
    }

    pub fn is_threat(self) -> bool {
        matches!(
            self,
            ElementKind::IntentionalThreat | ElementKind::IncidentalThreat
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Role => "role",
            ElementKind::Agent => "agent",
            ElementKind::Goal => "goal",
            ElementKind::PersonalInformation => "personal information",
            ElementKind::PublicInformation => "public information",
            ElementKind::Situation => "situation",
            ElementKind::Vulnerability => "vulnerability",
            ElementKind::IntentionalThreat => "intentional threat",
            ElementKind::IncidentalThreat => "incidental threat",
            ElementKind::AttackMethod => "attack method",
            ElementKind::PrivacyGoal => "privacy goal",
            ElementKind::PrivacyPolicy => "privacy policy",
            ElementKind::PrivacyMechanism => "privacy mechanism",
            ElementKind::PrivacyRequirement => "privacy requirement",
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Type of anything that owns an identifier: an element, or a reified
/// relationship record carrying its own id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeType {
    Element(ElementKind),
    Permission,
    Provision,
    Delegation(Subject),
    Trust(Subject),
    Monitor(Subject),
}

impl NodeType {
    pub fn all() -> Vec<NodeType> {
        let mut all: Vec<NodeType> = ElementKind::ALL.iter().map(|k| NodeType::Element(*k)).collect();
        all.push(NodeType::Permission);
        all.push(NodeType::Provision);
        for s in [Subject::Goal, Subject::Permission] {
            all.push(NodeType::Delegation(s));
            all.push(NodeType::Trust(s));
            all.push(NodeType::Monitor(s));
        }
        all
    }

    pub fn element_kind(self) -> Option<ElementKind> {
        match self {
            NodeType::Element(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeType::Element(k) => write!(f, "{k}"),
            NodeType::Permission => f.write_str("permission"),
            NodeType::Provision => f.write_str("provision"),
            NodeType::Delegation(s) => write!(f, "{s} delegation"),
            NodeType::Trust(s) => write!(f, "{s} trust"),
            NodeType::Monitor(s) => write!(f, "{s} monitor"),
        }
    }
}

/// Domain or range of a relation: a concrete type or one of the abstract
/// concepts that group them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeClass {
    Is(NodeType),
    Actor,
    Information,
    Threat,
    PrivacyConstraint,
    Delegation,
    Trust,
    Monitor,
}

impl TypeClass {
    pub const fn kind(kind: ElementKind) -> TypeClass {
        TypeClass::Is(NodeType::Element(kind))
    }

    pub fn contains(self, ty: NodeType) -> bool {
        use ElementKind as K;
        match (self, ty) {
            (TypeClass::Is(t), ty) => t == ty,
            (TypeClass::Actor, NodeType::Element(k)) => k.is_actor(),
            (TypeClass::Information, NodeType::Element(k)) => k.is_information(),
            (TypeClass::Threat, NodeType::Element(k)) => k.is_threat(),
            (TypeClass::PrivacyConstraint, NodeType::Element(k)) => {
                matches!(k, K::PrivacyPolicy | K::PrivacyMechanism)
            }
            (TypeClass::Delegation, NodeType::Delegation(_)) => true,
            (TypeClass::Trust, NodeType::Trust(_)) => true,
            (TypeClass::Monitor, NodeType::Monitor(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeClass::Is(t) => write!(f, "{t}"),
            TypeClass::Actor => f.write_str("actor"),
            TypeClass::Information => f.write_str("information"),
            TypeClass::Threat => f.write_str("threat"),
            TypeClass::PrivacyConstraint => f.write_str("privacy constraint"),
            TypeClass::Delegation => f.write_str("delegation"),
            TypeClass::Trust => f.write_str("trust"),
            TypeClass::Monitor => f.write_str("monitor"),
        }
    }
}

/// What a delegation, trust or monitor relationship is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subject {
    Goal,
    Permission,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subject::Goal => "goal",
            Subject::Permission => "permission",
        })
    }
}

/// Ordered `Restricted < Confidential < Sensitive < Secret`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SensitivityLevel {
    Restricted,
    Confidential,
    Sensitive,
    Secret,
}

impl SensitivityLevel {
    pub const ALL: [SensitivityLevel; 4] = [
        SensitivityLevel::Restricted,
        SensitivityLevel::Confidential,
        SensitivityLevel::Sensitive,
        SensitivityLevel::Secret,
    ];

    /// One-letter code used by the model language: R, C, S, T.
    pub fn code(self) -> char {
        match self {
            SensitivityLevel::Restricted => 'R',
            SensitivityLevel::Confidential => 'C',
            SensitivityLevel::Sensitive => 'S',
            SensitivityLevel::Secret => 'T',
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| code.len() == 1 && code.starts_with(l.code()))
    }
}

impl fmt::Display for SensitivityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Low / Medium / High, used for impact severity and incidental threat
/// probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    Low,
    Medium,
    High,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Low, Level::Medium, Level::High];

    pub fn code(self) -> char {
        match self {
            Level::Low => 'L',
            Level::Medium => 'M',
            Level::High => 'H',
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| code.len() == 1 && code.starts_with(l.code()))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Type of use of information by a goal. The same vocabulary types
/// permissions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UseType {
    Produce,
    Read,
    Modify,
    Collect,
}

pub type PermissionType = UseType;

impl UseType {
    pub const ALL: [UseType; 4] = [UseType::Produce, UseType::Read, UseType::Modify, UseType::Collect];

    pub fn keyword(self) -> &'static str {
        match self {
            UseType::Produce => "produce",
            UseType::Read => "read",
            UseType::Modify => "modify",
            UseType::Collect => "collect",
        }
    }
}

impl fmt::Display for UseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NeedToUse {
    Require,
    Optional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PurposeOfUse {
    Compatible,
    Incompatible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProvisionType {
    Confidential,
    NonConfidential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TrustLevel {
    Trust,
    Distrust,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThreatKind {
    Intentional,
    Incidental,
}

impl ThreatKind {
    pub fn element_kind(self) -> ElementKind {
        match self {
            ThreatKind::Intentional => ElementKind::IntentionalThreat,
            ThreatKind::Incidental => ElementKind::IncidentalThreat,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RequirementKind {
    Confidentiality,
    Anonymity,
    Unlinkability,
    Unobservability,
    Notice,
    Transparency,
    Accountability,
}

impl RequirementKind {
    pub const ALL: [RequirementKind; 7] = [
        RequirementKind::Confidentiality,
        RequirementKind::Anonymity,
        RequirementKind::Unlinkability,
        RequirementKind::Unobservability,
        RequirementKind::Notice,
        RequirementKind::Transparency,
        RequirementKind::Accountability,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            RequirementKind::Confidentiality => "confidentiality",
            RequirementKind::Anonymity => "anonymity",
            RequirementKind::Unlinkability => "unlinkability",
            RequirementKind::Unobservability => "unobservability",
            RequirementKind::Notice => "notice",
            RequirementKind::Transparency => "transparency",
            RequirementKind::Accountability => "accountability",
        }
    }
}

/// What a privacy mechanism achieves when applied to information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Capability {
    Anonymize,
    Unlink,
    Other,
}

impl Capability {
    pub fn keyword(self) -> &'static str {
        match self {
            Capability::Anonymize => "anonymize",
            Capability::Unlink => "unlink",
            Capability::Other => "other",
        }
    }
}
