//! The relation signature table written out by hand, and a model with one
//! node of every type for staging single relation instances.

use copri_core::model::*;
use copri_core::wellformed::check_signatures;
use copri_core::DiagCode;

use super::{build, Item};

/// The allowed endpoint types of every relation, written out
/// independently of the schema module.
pub fn expected_signature(rel: Relation) -> (Vec<NodeType>, Vec<NodeType>) {
    use ElementKind as K;
    use NodeType as N;
    let e = |kinds: &[K]| kinds.iter().map(|k| N::Element(*k)).collect::<Vec<_>>();
    let actor = e(&[K::Role, K::Agent]);
    let info = e(&[K::PersonalInformation, K::PublicInformation]);
    let personal = e(&[K::PersonalInformation]);
    let threat = e(&[K::IntentionalThreat, K::IncidentalThreat]);
    let both = |f: fn(Subject) -> N| vec![f(Subject::Goal), f(Subject::Permission)];
    let goal = e(&[K::Goal]);
    match rel {
        Relation::Edge(k) => match k {
            EdgeKind::Aims => (actor, goal),
            EdgeKind::Plays => (e(&[K::Agent]), e(&[K::Role])),
            EdgeKind::IsA => (e(&[K::Role]), e(&[K::Role])),
            EdgeKind::PartOf => (info.clone(), info),
            EdgeKind::Own => (actor, personal),
            EdgeKind::Describes => (personal, goal),
            EdgeKind::Determines => (e(&[K::Situation]), personal),
            EdgeKind::IsSubjectTo => (personal, e(&[K::Vulnerability])),
            EdgeKind::Mitigates => (e(&[K::PrivacyGoal]), e(&[K::Vulnerability])),
            EdgeKind::RealizedBy => (e(&[K::PrivacyGoal]), e(&[K::PrivacyPolicy, K::PrivacyMechanism])),
            EdgeKind::AndDecomposed | EdgeKind::OrDecomposed => (goal.clone(), goal),
            EdgeKind::Adopts => (actor, both(N::Delegation)),
        },
        Relation::Uses => (goal, info),
        Relation::HasPermission => (actor, vec![N::Permission]),
        Relation::Over => (vec![N::Permission], personal),
        Relation::ProvisionOf => (vec![N::Provision], info),
        Relation::ProvideBy => (actor, vec![N::Provision]),
        Relation::ProvideTo => (vec![N::Provision], actor),
        Relation::Delegator => (actor, both(N::Delegation)),
        Relation::Delegatee => (both(N::Delegation), actor),
        Relation::GoalDelegatum => (vec![N::Delegation(Subject::Goal)], goal),
        Relation::PermissionDelegatum => (vec![N::Delegation(Subject::Permission)], vec![N::Permission]),
        Relation::Trustor => (actor, both(N::Trust)),
        Relation::Trustee => (both(N::Trust), actor),
        Relation::GoalTrustum => (vec![N::Trust(Subject::Goal)], goal),
        Relation::PermissionTrustum => (vec![N::Trust(Subject::Permission)], vec![N::Permission]),
        Relation::MonitorBy => (actor, both(N::Monitor)),
        Relation::Monitoree => (both(N::Monitor), actor),
        Relation::OfGoal => (vec![N::Monitor(Subject::Goal)], goal),
        Relation::OfPermission => (vec![N::Monitor(Subject::Permission)], vec![N::Permission]),
        Relation::Threaten => (threat.clone(), personal),
        Relation::Exploits => (threat.clone(), e(&[K::Vulnerability])),
        Relation::Intends => (actor, e(&[K::IntentionalThreat])),
        Relation::Includes => (e(&[K::IntentionalThreat]), e(&[K::AttackMethod])),
        Relation::ImpactOver => (threat, personal),
        Relation::AppliedTo => (e(&[K::PrivacyMechanism]), personal),
        Relation::Concerning => (e(&[K::PrivacyRequirement]), personal),
        Relation::InterpretedBy => (e(&[K::PrivacyRequirement]), e(&[K::PrivacyGoal])),
    }
}

pub fn universe_id(ty: NodeType) -> ElementId {
    let name = format!("U_{ty}").replace(' ', "_");
    ElementId::new(name)
}

/// A model with one node of every type and no signature errors. The
/// information is left unowned so `own` can be staged onto it.
pub fn universe() -> Vec<Item> {
    use ElementKind as K;
    let u = |k: K| universe_id(NodeType::Element(k));
    let mut items = Vec::new();
    for k in ElementKind::ALL {
        match k {
            K::IntentionalThreat | K::IncidentalThreat | K::PrivacyMechanism | K::PrivacyRequirement => {}
            K::PersonalInformation => items.push(Item::Element(
                Element::new(k, u(k)).sensitivity(SensitivityLevel::Restricted),
            )),
            _ => items.push(Item::Element(Element::new(k, u(k)))),
        }
    }
    items.push(Item::Record(Record::Threat(
        ThreatRecord::intentional(u(K::IntentionalThreat), u(K::Agent), u(K::AttackMethod))
            .threatens(u(K::PersonalInformation)),
    )));
    items.push(Item::Record(Record::Threat(
        ThreatRecord::incidental(u(K::IncidentalThreat), Level::Low).threatens(u(K::PersonalInformation)),
    )));
    items.push(Item::Record(Record::Mechanism(MechanismRecord {
        id: u(K::PrivacyMechanism),
        label: None,
        capability: Capability::Other,
        applied_to: vec![],
    })));
    items.push(Item::Record(Record::Requirement(RequirementRecord {
        id: u(K::PrivacyRequirement),
        label: None,
        kind: RequirementKind::Confidentiality,
        concerning: u(K::PersonalInformation),
        interpreted_by: vec![],
    })));
    let perm = universe_id(NodeType::Permission);
    items.push(Item::Record(Record::Permission(PermissionRecord {
        id: perm.clone(),
        holder: u(K::Agent),
        permission_type: UseType::Read,
        over: u(K::PersonalInformation),
    })));
    items.push(Item::Record(Record::Provision(ProvisionRecord {
        id: universe_id(NodeType::Provision),
        of: u(K::PersonalInformation),
        from: u(K::Agent),
        to: u(K::Role),
        provision_type: ProvisionType::Confidential,
    })));
    for s in [Subject::Goal, Subject::Permission] {
        let subject = if s == Subject::Goal { u(K::Goal) } else { perm.clone() };
        items.push(Item::Record(Record::Delegation(DelegationRecord {
            id: universe_id(NodeType::Delegation(s)),
            delegator: u(K::Agent),
            delegatee: u(K::Role),
            kind: s,
            delegatum: subject.clone(),
        })));
        items.push(Item::Record(Record::Trust(TrustRecord {
            id: universe_id(NodeType::Trust(s)),
            trustor: u(K::Agent),
            trustee: u(K::Role),
            kind: s,
            trustum: subject.clone(),
            level: TrustLevel::Trust,
        })));
        items.push(Item::Record(Record::Monitor(MonitorRecord {
            id: universe_id(NodeType::Monitor(s)),
            monitor: u(K::Agent),
            monitoree: u(K::Role),
            kind: s,
            subject,
        })));
    }
    items
}

/// Stages one instance of `rel` from `src` to `tgt`. Endpoints that are
/// the declared record itself are fresh and always of the right type, so
/// only the other endpoint is taken from the arguments; the returned flags
/// say which endpoints were free.
pub fn stage(rel: Relation, src: &ElementId, tgt: &ElementId) -> (Item, bool, bool) {
    use ElementKind as K;
    let u = |k: K| universe_id(NodeType::Element(k));
    let fresh = ElementId::new("X");
    let personal = u(K::PersonalInformation);
    let (s, t) = (src.clone(), tgt.clone());
    let threat = |actor: ElementId, method: ElementId, threatens: ElementId| {
        Record::Threat(ThreatRecord::intentional(fresh.clone(), actor, method).threatens(threatens))
    };
    let delegation = |kind, delegator, delegatee, delegatum| {
        Record::Delegation(DelegationRecord { id: fresh.clone(), delegator, delegatee, kind, delegatum })
    };
    let trust = |kind, trustor, trustee, trustum| {
        Record::Trust(TrustRecord { id: fresh.clone(), trustor, trustee, kind, trustum, level: TrustLevel::Trust })
    };
    let monitor = |kind, monitor, monitoree, subject| {
        Record::Monitor(MonitorRecord { id: fresh.clone(), monitor, monitoree, kind, subject })
    };
    let (agent, role, goal) = (u(K::Agent), u(K::Role), u(K::Goal));
    let (record, free_src, free_tgt) = match rel {
        Relation::Edge(EdgeKind::Determines) => {
            return (Item::Edge(Edge::determines(s, t, SensitivityLevel::Restricted)), true, true)
        }
        Relation::Edge(k) => return (Item::Edge(Edge::new(k, s, t)), true, true),
        Relation::Uses => (Record::Use(UseRecord::new(s, UseType::Read, t)), true, true),
        Relation::HasPermission => (
            Record::Permission(PermissionRecord { id: fresh.clone(), holder: s, permission_type: UseType::Read, over: personal }),
            true,
            false,
        ),
        Relation::Over => (
            Record::Permission(PermissionRecord { id: fresh.clone(), holder: agent, permission_type: UseType::Read, over: t }),
            false,
            true,
        ),
        Relation::ProvisionOf | Relation::ProvideBy | Relation::ProvideTo => {
            let (of, from, to) = match rel {
                Relation::ProvisionOf => (t, agent, role),
                Relation::ProvideBy => (personal, s, role),
                _ => (personal, agent, t),
            };
            let p = ProvisionRecord { id: fresh.clone(), of, from, to, provision_type: ProvisionType::Confidential };
            (Record::Provision(p), rel == Relation::ProvideBy, rel != Relation::ProvideBy)
        }
        Relation::Delegator => (delegation(Subject::Goal, s, role, goal), true, false),
        Relation::Delegatee => (delegation(Subject::Goal, agent, t, goal), false, true),
        Relation::GoalDelegatum => (delegation(Subject::Goal, agent, role, t), false, true),
        Relation::PermissionDelegatum => (delegation(Subject::Permission, agent, role, t), false, true),
        Relation::Trustor => (trust(Subject::Goal, s, role, goal), true, false),
        Relation::Trustee => (trust(Subject::Goal, agent, t, goal), false, true),
        Relation::GoalTrustum => (trust(Subject::Goal, agent, role, t), false, true),
        Relation::PermissionTrustum => (trust(Subject::Permission, agent, role, t), false, true),
        Relation::MonitorBy => (monitor(Subject::Goal, s, role, goal), true, false),
        Relation::Monitoree => (monitor(Subject::Goal, agent, t, goal), false, true),
        Relation::OfGoal => (monitor(Subject::Goal, agent, role, t), false, true),
        Relation::OfPermission => (monitor(Subject::Permission, agent, role, t), false, true),
        Relation::Threaten => (threat(agent, u(K::AttackMethod), t), false, true),
        Relation::Exploits => {
            let Record::Threat(mut th) = threat(agent, u(K::AttackMethod), personal) else { unreachable!() };
            th.exploits = vec![t];
            (Record::Threat(th), false, true)
        }
        Relation::Intends => (threat(s, u(K::AttackMethod), personal), true, false),
        Relation::Includes => (threat(agent, t, personal), false, true),
        Relation::ImpactOver => (Record::Impact(ImpactRecord { threat: s, over: t, severity: Level::Low }), true, true),
        Relation::AppliedTo => (
            Record::Mechanism(MechanismRecord { id: fresh.clone(), label: None, capability: Capability::Other, applied_to: vec![t] }),
            false,
            true,
        ),
        Relation::Concerning | Relation::InterpretedBy => {
            let (concerning, interpreted_by) = if rel == Relation::Concerning { (t, vec![]) } else { (personal, vec![t]) };
            let r = RequirementRecord { id: fresh.clone(), label: None, kind: RequirementKind::Notice, concerning, interpreted_by };
            (Record::Requirement(r), false, true)
        }
    };
    (Item::Record(record), free_src, free_tgt)
}

/// True when the signature checker flags the relation in the staged
/// model.
pub fn rejected(items: &[Item], rel: Relation) -> bool {
    check_signatures(&build(items))
        .iter()
        .any(|d| d.code == DiagCode::WfSig && d.message.starts_with(&format!("`{rel}`")))
}

/// Checks `accepts` against the hand-written table for every relation and
/// every pair of node types; returns how many pairs were rejected.
pub fn table_cross_product() -> usize {
    let types = NodeType::all();
    let mut rejected = 0;
    for rel in Relation::all() {
        let (domain, range) = expected_signature(rel);
        for s in &types {
            for t in &types {
                let ok = domain.contains(s) && range.contains(t);
                assert_eq!(rel.accepts(*s, *t), ok, "{rel}: {s} -> {t}");
                rejected += usize::from(!ok);
            }
        }
    }
    rejected
}

/// Stages every relation with every node type at each endpoint a model
/// can vary, and checks the signature checker flags exactly the wrong
/// ones. Returns the (wrong, right) counts.
pub fn staged_cross_product() -> (usize, usize) {
    let base = universe();
    let types = NodeType::all();
    let (mut wrong, mut right) = (0, 0);
    for rel in Relation::all() {
        let (domain, range) = expected_signature(rel);
        let (src_ok, tgt_ok) = (universe_id(domain[0]), universe_id(range[0]));
        for ty in &types {
            let candidate = universe_id(*ty);
            for (varied_src, allowed) in [(true, domain.contains(ty)), (false, range.contains(ty))] {
                let (src, tgt) = if varied_src { (&candidate, &tgt_ok) } else { (&src_ok, &candidate) };
                let (item, free_src, free_tgt) = stage(rel, src, tgt);
                if (varied_src && !free_src) || (!varied_src && !free_tgt) {
                    continue;
                }
                let mut items = base.clone();
                items.push(item);
                let end = if varied_src { "source" } else { "target" };
                assert_eq!(rejected(&items, rel), !allowed, "{rel} with {ty} {end}");
                if allowed {
                    right += 1
                } else {
                    wrong += 1
                }
            }
        }
    }
    (wrong, right)
}
