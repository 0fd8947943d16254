//! Relation signature table: the domain and range of every object property,
//! covering plain edges as well as the fields of reified records.

use std::fmt;

use super::id::ElementId;
use super::kinds::{ElementKind as K, NodeType, Subject, TypeClass};
use super::records::EdgeKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Edge(EdgeKind),
    /// goal --uses--> information (a use record)
    Uses,
    /// actor --hasPermission--> permission
    HasPermission,
    /// permission --over--> personal information
    Over,
    ProvisionOf,
    ProvideBy,
    ProvideTo,
    Delegator,
    Delegatee,
    GoalDelegatum,
    PermissionDelegatum,
    Trustor,
    Trustee,
    GoalTrustum,
    PermissionTrustum,
    MonitorBy,
    Monitoree,
    OfGoal,
    OfPermission,
    Threaten,
    Exploits,
    Intends,
    Includes,
    ImpactOver,
    AppliedTo,
    Concerning,
    InterpretedBy,
}

impl Relation {
    pub fn all() -> Vec<Relation> {
        let mut all: Vec<Relation> = EdgeKind::ALL.iter().map(|e| Relation::Edge(*e)).collect();
        all.extend([
            Relation::Uses,
            Relation::HasPermission,
            Relation::Over,
            Relation::ProvisionOf,
            Relation::ProvideBy,
            Relation::ProvideTo,
            Relation::Delegator,
            Relation::Delegatee,
            Relation::GoalDelegatum,
            Relation::PermissionDelegatum,
            Relation::Trustor,
            Relation::Trustee,
            Relation::GoalTrustum,
            Relation::PermissionTrustum,
            Relation::MonitorBy,
            Relation::Monitoree,
            Relation::OfGoal,
            Relation::OfPermission,
            Relation::Threaten,
            Relation::Exploits,
            Relation::Intends,
            Relation::Includes,
            Relation::ImpactOver,
            Relation::AppliedTo,
            Relation::Concerning,
            Relation::InterpretedBy,
        ]);
        all
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::Edge(e) => e.name(),
            Relation::Uses => "uses",
            Relation::HasPermission => "hasPermission",
            Relation::Over => "over",
            Relation::ProvisionOf => "provisionOf",
            Relation::ProvideBy => "provideBy",
            Relation::ProvideTo => "provideTo",
            Relation::Delegator => "delegator",
            Relation::Delegatee => "delegatee",
            Relation::GoalDelegatum => "goalDelegatum",
            Relation::PermissionDelegatum => "permDelegatum",
            Relation::Trustor => "trustor",
            Relation::Trustee => "trustee",
            Relation::GoalTrustum => "goalTrustum",
            Relation::PermissionTrustum => "permTrustum",
            Relation::MonitorBy => "monitor",
            Relation::Monitoree => "monitoree",
            Relation::OfGoal => "ofGoal",
            Relation::OfPermission => "ofPermission",
            Relation::Threaten => "threaten",
            Relation::Exploits => "exploits",
            Relation::Intends => "intends",
            Relation::Includes => "includes",
            Relation::ImpactOver => "impactOver",
            Relation::AppliedTo => "appliedTo",
            Relation::Concerning => "concerning",
            Relation::InterpretedBy => "interpretedBy",
        }
    }

    /// `(domain, range)`.
    pub fn signature(self) -> (TypeClass, TypeClass) {
        use TypeClass as C;
        let k = TypeClass::kind;
        match self {
            Relation::Edge(e) => match e {
                EdgeKind::Aims => (C::Actor, k(K::Goal)),
                EdgeKind::Plays => (k(K::Agent), k(K::Role)),
                EdgeKind::IsA => (k(K::Role), k(K::Role)),
                EdgeKind::PartOf => (C::Information, C::Information),
                EdgeKind::Own => (C::Actor, k(K::PersonalInformation)),
                EdgeKind::Describes => (k(K::PersonalInformation), k(K::Goal)),
                EdgeKind::Determines => (k(K::Situation), k(K::PersonalInformation)),
                EdgeKind::IsSubjectTo => (k(K::PersonalInformation), k(K::Vulnerability)),
                EdgeKind::Mitigates => (k(K::PrivacyGoal), k(K::Vulnerability)),
                EdgeKind::RealizedBy => (k(K::PrivacyGoal), C::PrivacyConstraint),
                EdgeKind::AndDecomposed | EdgeKind::OrDecomposed => (k(K::Goal), k(K::Goal)),
                EdgeKind::Adopts => (C::Actor, C::Delegation),
            },
            Relation::Uses => (k(K::Goal), C::Information),
            Relation::HasPermission => (C::Actor, C::Is(NodeType::Permission)),
            Relation::Over => (C::Is(NodeType::Permission), k(K::PersonalInformation)),
            Relation::ProvisionOf => (C::Is(NodeType::Provision), C::Information),
            Relation::ProvideBy => (C::Actor, C::Is(NodeType::Provision)),
            Relation::ProvideTo => (C::Is(NodeType::Provision), C::Actor),
            Relation::Delegator => (C::Actor, C::Delegation),
            Relation::Delegatee => (C::Delegation, C::Actor),
            Relation::GoalDelegatum => (C::Is(NodeType::Delegation(Subject::Goal)), k(K::Goal)),
            Relation::PermissionDelegatum => (
                C::Is(NodeType::Delegation(Subject::Permission)),
                C::Is(NodeType::Permission),
            ),
            Relation::Trustor => (C::Actor, C::Trust),
            Relation::Trustee => (C::Trust, C::Actor),
            Relation::GoalTrustum => (C::Is(NodeType::Trust(Subject::Goal)), k(K::Goal)),
            Relation::PermissionTrustum => (
                C::Is(NodeType::Trust(Subject::Permission)),
                C::Is(NodeType::Permission),
            ),
            Relation::MonitorBy => (C::Actor, C::Monitor),
            Relation::Monitoree => (C::Monitor, C::Actor),
            Relation::OfGoal => (C::Is(NodeType::Monitor(Subject::Goal)), k(K::Goal)),
            Relation::OfPermission => (
                C::Is(NodeType::Monitor(Subject::Permission)),
                C::Is(NodeType::Permission),
            ),
            Relation::Threaten => (C::Threat, k(K::PersonalInformation)),
            Relation::Exploits => (C::Threat, k(K::Vulnerability)),
            Relation::Intends => (C::Actor, k(K::IntentionalThreat)),
            Relation::Includes => (k(K::IntentionalThreat), k(K::AttackMethod)),
            Relation::ImpactOver => (C::Threat, k(K::PersonalInformation)),
            Relation::AppliedTo => (k(K::PrivacyMechanism), k(K::PersonalInformation)),
            Relation::Concerning => (k(K::PrivacyRequirement), k(K::PersonalInformation)),
            Relation::InterpretedBy => (k(K::PrivacyRequirement), k(K::PrivacyGoal)),
        }
    }

    /// True when both endpoint types fit the signature.
    pub fn accepts(self, source: NodeType, target: NodeType) -> bool {
        let (domain, range) = self.signature();
        domain.contains(source) && range.contains(target)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One relation instance as seen by the signature checker.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub relation: Relation,
    pub source: ElementId,
    pub target: ElementId,
}
