//! Random well-formed models and naive reference implementations of the
//! checks, shared by the property suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use copri_core::analysis::CheckId;
use copri_core::model::*;

pub mod cycles;
pub mod signatures;

pub const MAX_ELEMENTS: usize = 20;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Everything staged into a builder, in staging order.
#[derive(Debug, Clone)]
pub enum Item {
    Element(Element),
    Edge(Edge),
    Record(Record),
}

pub fn build(items: &[Item]) -> ModelGraph {
    let mut b = ModelBuilder::new();
    for item in items {
        match item {
            Item::Element(e) => b.add_element(e.clone()),
            Item::Edge(e) => b.add_edge(e.clone()),
            Item::Record(r) => b.add_record(r.clone()),
        };
    }
    b.finalize().expect("generated models resolve")
}

const CAPABILITIES: [Capability; 3] = [Capability::Anonymize, Capability::Unlink, Capability::Other];

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty")
}

fn subset<T: Clone>(rng: &mut ChaCha8Rng, items: &[T], p: f64) -> Vec<T> {
    items.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

/// A random well-formed model of at most [`MAX_ELEMENTS`] elements whose
/// ids all start with `prefix`. Hierarchies only point from later to
/// earlier elements, so they are acyclic; personal information has one
/// owner and a sensitivity; intentional threats have one actor and one
/// method.
pub fn random_items(seed: u64, prefix: &str) -> Vec<Item> {
    use ElementKind as K;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = rng.gen_range(1..=MAX_ELEMENTS);
    let weighted = [
        (K::Role, 3),
        (K::Agent, 4),
        (K::Goal, 4),
        (K::PersonalInformation, 4),
        (K::PublicInformation, 1),
        (K::Situation, 1),
        (K::Vulnerability, 2),
        (K::IntentionalThreat, 2),
        (K::IncidentalThreat, 2),
        (K::AttackMethod, 1),
        (K::PrivacyGoal, 2),
        (K::PrivacyPolicy, 1),
        (K::PrivacyMechanism, 2),
        (K::PrivacyRequirement, 2),
    ];
    let mut kinds: Vec<K> = (0..budget)
        .map(|_| weighted.choose_weighted(&mut rng, |w| w.1).unwrap().0)
        .collect();
    let has = |kinds: &[K], f: &dyn Fn(K) -> bool| kinds.iter().any(|k| f(*k));
    if !has(&kinds, &|k| k.is_actor()) {
        for k in kinds.iter_mut().filter(|k| **k == K::PersonalInformation) {
            *k = K::PublicInformation;
        }
    }
    if !has(&kinds, &|k| k.is_actor()) || !has(&kinds, &|k| k == K::AttackMethod) {
        for k in kinds.iter_mut().filter(|k| **k == K::IntentionalThreat) {
            *k = K::IncidentalThreat;
        }
    }
    if !has(&kinds, &|k| k == K::PersonalInformation) {
        for k in kinds.iter_mut() {
            match k {
                K::PrivacyRequirement => *k = K::PrivacyPolicy,
                K::IntentionalThreat | K::IncidentalThreat => *k = K::Vulnerability,
                _ => {}
            }
        }
    }

    let mut of: std::collections::HashMap<K, Vec<ElementId>> = Default::default();
    for (i, k) in kinds.iter().enumerate() {
        let tag = match k {
            K::Role => "R",
            K::Agent => "A",
            K::Goal => "G",
            K::PersonalInformation => "P",
            K::PublicInformation => "Q",
            K::Situation => "S",
            K::Vulnerability => "V",
            K::IntentionalThreat => "TI",
            K::IncidentalThreat => "TC",
            K::AttackMethod => "M",
            K::PrivacyGoal => "PG",
            K::PrivacyPolicy => "POL",
            K::PrivacyMechanism => "MC",
            K::PrivacyRequirement => "RQ",
        };
        of.entry(*k).or_default().push(ElementId::new(format!("{prefix}{tag}{i}")));
    }
    let get = |k: K| of.get(&k).cloned().unwrap_or_default();
    let roles = get(K::Role);
    let agents = get(K::Agent);
    let actors: Vec<ElementId> = roles.iter().chain(&agents).cloned().collect();
    let goals = get(K::Goal);
    let personal = get(K::PersonalInformation);
    let info: Vec<ElementId> = personal.iter().chain(&get(K::PublicInformation)).cloned().collect();
    let vulns = get(K::Vulnerability);
    let methods = get(K::AttackMethod);
    let pgs = get(K::PrivacyGoal);
    let policies = get(K::PrivacyPolicy);

    let mut items = Vec::new();
    let el = |items: &mut Vec<Item>, e: Element| items.push(Item::Element(e));
    for k in [K::Role, K::Agent, K::Goal, K::PublicInformation, K::Situation, K::Vulnerability, K::AttackMethod, K::PrivacyGoal, K::PrivacyPolicy] {
        for id in get(k) {
            el(&mut items, Element::new(k, id));
        }
    }
    for id in &personal {
        let level = *pick(&mut rng, &SensitivityLevel::ALL);
        el(&mut items, Element::new(K::PersonalInformation, id.clone()).sensitivity(level));
        let owner = pick(&mut rng, &actors).clone();
        items.push(Item::Edge(Edge::new(EdgeKind::Own, owner, id.clone())));
    }

    let edge = |items: &mut Vec<Item>, r, s: &ElementId, t: &ElementId| {
        items.push(Item::Edge(Edge::new(r, s.clone(), t.clone())))
    };
    for a in &agents {
        for r in subset(&mut rng, &roles, 0.4) {
            edge(&mut items, EdgeKind::Plays, a, &r);
        }
    }
    for (i, r) in roles.iter().enumerate() {
        for parent in subset(&mut rng, &roles[..i], 0.3) {
            edge(&mut items, EdgeKind::IsA, r, &parent);
        }
    }
    for (i, part) in info.iter().enumerate() {
        for whole in subset(&mut rng, &info[..i], 0.2) {
            edge(&mut items, EdgeKind::PartOf, part, &whole);
        }
    }
    for a in &actors {
        for g in subset(&mut rng, &goals, 0.3) {
            edge(&mut items, EdgeKind::Aims, a, &g);
        }
    }
    for i in 1..goals.len() {
        if rng.gen_bool(0.4) {
            let parent = rng.gen_range(0..i);
            let rel = if rng.gen() { EdgeKind::AndDecomposed } else { EdgeKind::OrDecomposed };
            edge(&mut items, rel, &goals[parent], &goals[i]);
        }
    }
    for p in &personal {
        for g in subset(&mut rng, &goals, 0.4) {
            edge(&mut items, EdgeKind::Describes, p, &g);
        }
        for v in subset(&mut rng, &vulns, 0.4) {
            edge(&mut items, EdgeKind::IsSubjectTo, p, &v);
        }
    }
    for s in get(K::Situation) {
        for p in subset(&mut rng, &personal, 0.5) {
            let level = *pick(&mut rng, &SensitivityLevel::ALL);
            items.push(Item::Edge(Edge::determines(s.clone(), p, level)));
        }
    }

    let mechanisms = get(K::PrivacyMechanism);
    for pg in &pgs {
        for v in subset(&mut rng, &vulns, 0.4) {
            edge(&mut items, EdgeKind::Mitigates, pg, &v);
        }
        let constraints: Vec<ElementId> = policies.iter().chain(&mechanisms).cloned().collect();
        for c in subset(&mut rng, &constraints, 0.4) {
            edge(&mut items, EdgeKind::RealizedBy, pg, &c);
        }
    }
    let rec = |items: &mut Vec<Item>, r: Record| items.push(Item::Record(r));
    for id in &mechanisms {
        rec(&mut items, Record::Mechanism(MechanismRecord {
            id: id.clone(),
            label: None,
            capability: *pick(&mut rng, &CAPABILITIES),
            applied_to: subset(&mut rng, &personal, 0.4),
        }));
    }
    let mut observed = Vec::new();
    for id in get(K::PrivacyRequirement) {
        let r = RequirementRecord {
            id,
            label: None,
            kind: *pick(&mut rng, &RequirementKind::ALL),
            concerning: pick(&mut rng, &personal).clone(),
            interpreted_by: subset(&mut rng, &pgs, 0.3),
        };
        if r.kind == RequirementKind::Unobservability {
            observed.push(r.concerning.clone());
        }
        rec(&mut items, Record::Requirement(r));
    }

    let mut threats = Vec::new();
    for id in get(K::IntentionalThreat) {
        let actor = pick(&mut rng, &actors).clone();
        let method = pick(&mut rng, &methods).clone();
        threats.push(ThreatRecord::intentional(id, actor, method));
    }
    for id in get(K::IncidentalThreat) {
        threats.push(ThreatRecord::incidental(id, *pick(&mut rng, &Level::ALL)));
    }
    for mut t in threats {
        t.threatens = subset(&mut rng, &personal, 0.5);
        if t.threatens.is_empty() {
            t.threatens.push(pick(&mut rng, &personal).clone());
        }
        t.exploits = subset(&mut rng, &vulns, 0.5);
        for over in subset(&mut rng, &personal, 0.4) {
            let severity = *pick(&mut rng, &Level::ALL);
            rec(&mut items, Record::Impact(ImpactRecord { threat: t.id.clone(), over, severity }));
        }
        rec(&mut items, Record::Threat(t));
    }

    if !goals.is_empty() && !info.is_empty() {
        for _ in 0..rng.gen_range(0..=6) {
            let mut u = UseRecord::new(
                pick(&mut rng, &goals).clone(),
                *pick(&mut rng, &UseType::ALL),
                pick(&mut rng, &info).clone(),
            );
            if rng.gen_bool(0.2) {
                u = u.need(NeedToUse::Optional);
            }
            if rng.gen_bool(0.2) {
                u = u.purpose(PurposeOfUse::Incompatible);
            }
            rec(&mut items, Record::Use(u));
        }
        // Observation of information under an unobservability requirement
        // is otherwise too rare to exercise.
        for info in &observed {
            if rng.gen_bool(0.7) {
                let goal = pick(&mut rng, &goals).clone();
                rec(&mut items, Record::Use(UseRecord::new(goal, UseType::Collect, info.clone())));
            }
        }
    }
    let mut permissions = Vec::new();
    if !actors.is_empty() && !personal.is_empty() {
        for i in 0..rng.gen_range(0..=5) {
            let p = PermissionRecord {
                id: ElementId::new(format!("{prefix}PM{i}")),
                holder: pick(&mut rng, &actors).clone(),
                permission_type: *pick(&mut rng, &UseType::ALL),
                over: pick(&mut rng, &personal).clone(),
            };
            permissions.push(p.id.clone());
            rec(&mut items, Record::Permission(p));
        }
    }
    if actors.is_empty() {
        return items;
    }
    if !info.is_empty() {
        for i in 0..rng.gen_range(0..=3) {
            rec(&mut items, Record::Provision(ProvisionRecord {
                id: ElementId::new(format!("{prefix}PV{i}")),
                of: pick(&mut rng, &info).clone(),
                from: pick(&mut rng, &actors).clone(),
                to: pick(&mut rng, &actors).clone(),
                provision_type: if rng.gen() { ProvisionType::Confidential } else { ProvisionType::NonConfidential },
            }));
        }
    }
    let mut subjects = Vec::new();
    if !goals.is_empty() {
        subjects.push(Subject::Goal);
    }
    if !permissions.is_empty() {
        subjects.push(Subject::Permission);
    }
    if subjects.is_empty() {
        return items;
    }
    let delegatum = |rng: &mut ChaCha8Rng, s: Subject| match s {
        Subject::Goal => pick(rng, &goals).clone(),
        Subject::Permission => pick(rng, &permissions).clone(),
    };
    let (mut trusts, mut monitors) = (0, 0);
    for i in 0..rng.gen_range(0..=3) {
        let kind = *pick(&mut rng, &subjects);
        let d = DelegationRecord {
            id: ElementId::new(format!("{prefix}D{i}")),
            delegator: pick(&mut rng, &actors).clone(),
            delegatee: pick(&mut rng, &actors).clone(),
            kind,
            delegatum: delegatum(&mut rng, kind),
        };
        if rng.gen_bool(0.6) {
            edge(&mut items, EdgeKind::Adopts, &d.delegatee, &d.id);
        }
        // Matching (or nearly matching) trust and monitoring, so both
        // outcomes of the organisational checks are exercised.
        if rng.gen_bool(0.5) {
            let trustee = if rng.gen_bool(0.8) { d.delegatee.clone() } else { pick(&mut rng, &actors).clone() };
            rec(&mut items, Record::Trust(TrustRecord {
                id: ElementId::new(format!("{prefix}TR{trusts}")),
                trustor: d.delegator.clone(),
                trustee,
                kind,
                trustum: d.delegatum.clone(),
                level: if rng.gen_bool(0.8) { TrustLevel::Trust } else { TrustLevel::Distrust },
            }));
            trusts += 1;
        }
        if rng.gen_bool(0.4) {
            rec(&mut items, Record::Monitor(MonitorRecord {
                id: ElementId::new(format!("{prefix}MO{monitors}")),
                monitor: d.delegator.clone(),
                monitoree: d.delegatee.clone(),
                kind,
                subject: d.delegatum.clone(),
            }));
            monitors += 1;
        }
        rec(&mut items, Record::Delegation(d));
    }
    items
}

pub fn random_model(seed: u64) -> ModelGraph {
    build(&random_items(seed, ""))
}

// ------------------------------------------------------------------ oracles

type Rows = BTreeSet<Vec<String>>;

fn row(ids: &[&ElementId]) -> Vec<String> {
    ids.iter().map(|i| i.to_string()).collect()
}

fn kind_is(g: &ModelGraph, id: &ElementId, k: ElementKind) -> bool {
    g.elements().any(|e| &e.id == id && e.kind == k)
}

fn edges(g: &ModelGraph, r: EdgeKind) -> Vec<(ElementId, ElementId)> {
    g.edges().iter().filter(|e| e.relation == r).map(|e| (e.source.clone(), e.target.clone())).collect()
}

/// Least fixpoint of `set ∪ {t | (s, t) ∈ rel, s ∈ set}`.
fn fixpoint(mut set: BTreeSet<ElementId>, rel: &[(ElementId, ElementId)]) -> BTreeSet<ElementId> {
    loop {
        let before = set.len();
        for (s, t) in rel {
            if set.contains(s) {
                set.insert(t.clone());
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

fn inverse(rel: &[(ElementId, ElementId)]) -> Vec<(ElementId, ElementId)> {
    rel.iter().map(|(a, b)| (b.clone(), a.clone())).collect()
}

/// Roles an actor inherits from, by repeated relaxation.
pub fn naive_roles(g: &ModelGraph, actor: &ElementId) -> BTreeSet<ElementId> {
    let start: BTreeSet<ElementId> = if kind_is(g, actor, ElementKind::Role) {
        [actor.clone()].into()
    } else {
        edges(g, EdgeKind::Plays).into_iter().filter(|(a, _)| a == actor).map(|(_, r)| r).collect()
    };
    fixpoint(start, &edges(g, EdgeKind::IsA))
}

pub fn naive_parts(g: &ModelGraph, info: &ElementId) -> BTreeSet<ElementId> {
    fixpoint([info.clone()].into(), &inverse(&edges(g, EdgeKind::PartOf)))
}

fn naive_pursuers(g: &ModelGraph, goal: &ElementId) -> BTreeSet<ElementId> {
    let mut decomp = edges(g, EdgeKind::AndDecomposed);
    decomp.extend(edges(g, EdgeKind::OrDecomposed));
    let ancestors = fixpoint([goal.clone()].into(), &inverse(&decomp));
    edges(g, EdgeKind::Aims).into_iter().filter(|(_, gl)| ancestors.contains(gl)).map(|(a, _)| a).collect()
}

fn naive_may(g: &ModelGraph, actor: &ElementId, t: UseType, info: &ElementId, parts_inherit: bool) -> bool {
    if edges(g, EdgeKind::Own).contains(&(actor.clone(), info.clone())) {
        return true;
    }
    let mut holders = naive_roles(g, actor);
    holders.insert(actor.clone());
    g.permissions().iter().any(|p| {
        holders.contains(&p.holder)
            && p.permission_type == t
            && (&p.over == info || (parts_inherit && naive_parts(g, &p.over).contains(info)))
    })
}

fn naive_unpermitted(g: &ModelGraph, only: Option<UseType>, parts_inherit: bool) -> Rows {
    let mut out = Rows::new();
    for u in g.uses() {
        if only.is_some_and(|t| t != u.type_of_use) || !kind_is(g, &u.info, ElementKind::PersonalInformation) {
            continue;
        }
        for a in naive_pursuers(g, &u.goal) {
            if !naive_may(g, &a, u.type_of_use, &u.info, parts_inherit) {
                out.insert(row(&[&a, &u.goal, &u.info]));
            }
        }
    }
    out
}

fn is_threat_actor(g: &ModelGraph, a: &ElementId) -> bool {
    g.threats().iter().any(|t| t.kind == ThreatKind::Intentional && t.actors.contains(a))
}

/// Reference rows for a check, written straight from its definition.
/// `level` is the filter for CQ3, CQ8 and CQ13 (ignored elsewhere).
pub fn oracle(g: &ModelGraph, id: CheckId, level: Option<usize>, parts_inherit: bool) -> Rows {
    use ElementKind as K;
    let mut out = Rows::new();
    let lvl = level.map(|i| Level::ALL[i % 3]);
    let personal = |i: &ElementId| kind_is(g, i, K::PersonalInformation);
    match id {
        CheckId::CQ1 | CheckId::CQ2 => {
            for d in g.delegations() {
                if d.kind != Subject::Permission {
                    continue;
                }
                let trusted = g.trusts().iter().any(|t| {
                    t.kind == Subject::Permission
                        && t.level == TrustLevel::Trust
                        && (&t.trustor, &t.trustee, &t.trustum) == (&d.delegator, &d.delegatee, &d.delegatum)
                });
                let monitored = g.monitors().iter().any(|m| {
                    m.kind == Subject::Permission
                        && (&m.monitor, &m.monitoree, &m.subject) == (&d.delegator, &d.delegatee, &d.delegatum)
                });
                let hit = if id == CheckId::CQ1 { !trusted && !monitored } else { trusted && monitored };
                if hit {
                    out.insert(row(&[&d.id]));
                }
            }
        }
        CheckId::CQ3 => {
            let want = level.map(|i| SensitivityLevel::ALL[i % 4]);
            for e in g.elements() {
                if e.kind == K::PersonalInformation {
                    if let Some(s) = e.sensitivity {
                        if want.is_none_or(|w| w == s) {
                            out.insert(row(&[&e.id]));
                        }
                    }
                }
            }
        }
        CheckId::CQ4 => {
            for (i, v) in edges(g, EdgeKind::IsSubjectTo) {
                out.insert(row(&[&v, &i]));
            }
        }
        CheckId::CQ5 => {
            for t in g.threats() {
                for v in &t.exploits {
                    out.insert(row(&[v, &t.id]));
                }
            }
        }
        CheckId::CQ6 => {
            let mitigates = edges(g, EdgeKind::Mitigates);
            for v in g.elements().filter(|e| e.kind == K::Vulnerability) {
                if !mitigates.iter().any(|(pg, x)| x == &v.id && kind_is(g, pg, K::PrivacyGoal)) {
                    out.insert(row(&[&v.id]));
                }
            }
        }
        CheckId::CQ7 | CheckId::CQ9 | CheckId::CQ12 => {
            for t in g.threats() {
                let wanted = match id {
                    CheckId::CQ9 => t.kind == ThreatKind::Intentional,
                    CheckId::CQ12 => t.kind == ThreatKind::Incidental,
                    _ => true,
                };
                if wanted {
                    for i in &t.threatens {
                        out.insert(row(&[&t.id, i]));
                    }
                }
            }
        }
        CheckId::CQ8 => {
            for imp in g.impacts() {
                if lvl.is_none_or(|l| l == imp.severity) {
                    out.insert(row(&[&imp.threat]));
                }
            }
        }
        CheckId::CQ10 => {
            for t in g.threats().iter().filter(|t| t.kind == ThreatKind::Intentional) {
                for a in &t.actors {
                    out.insert(row(&[a, &t.id]));
                }
            }
        }
        CheckId::CQ11 => {
            for t in g.threats() {
                for m in &t.methods {
                    out.insert(row(&[m, &t.id]));
                }
            }
        }
        CheckId::CQ13 => {
            for t in g.threats().iter().filter(|t| t.kind == ThreatKind::Incidental) {
                if let Some(p) = t.probability {
                    if lvl.is_none_or(|l| l == p) {
                        out.insert(row(&[&t.id]));
                    }
                }
            }
        }
        CheckId::CQ14 => {
            let realized = edges(g, EdgeKind::RealizedBy);
            for pg in g.elements().filter(|e| e.kind == K::PrivacyGoal) {
                if realized.iter().any(|(s, _)| s == &pg.id) {
                    out.insert(row(&[&pg.id]));
                }
            }
        }
        CheckId::CQ15 => {
            for m in g.mechanisms() {
                for i in &m.applied_to {
                    out.insert(row(&[&m.id, i]));
                }
            }
        }
        CheckId::CQ16 => out = naive_unpermitted(g, Some(UseType::Read), parts_inherit),
        CheckId::CQ23 => out = naive_unpermitted(g, Some(UseType::Collect), parts_inherit),
        CheckId::CQ25 => out = naive_unpermitted(g, None, parts_inherit),
        CheckId::CQ17 => {
            for p in g.provisions() {
                if p.provision_type == ProvisionType::NonConfidential && personal(&p.of) {
                    out.insert(row(&[&p.id, &p.of]));
                }
            }
        }
        CheckId::CQ18 | CheckId::CQ19 => {
            for u in g.uses() {
                let flagged = if id == CheckId::CQ18 {
                    u.need_to_use == NeedToUse::Optional
                } else {
                    u.purpose_of_use == PurposeOfUse::Incompatible
                };
                if flagged && personal(&u.info) {
                    out.insert(row(&[&u.goal, &u.info]));
                }
            }
        }
        CheckId::CQ20 | CheckId::CQ21 => {
            let (kind, cap) = if id == CheckId::CQ20 {
                (RequirementKind::Anonymity, Capability::Anonymize)
            } else {
                (RequirementKind::Unlinkability, Capability::Unlink)
            };
            for r in g.requirements().iter().filter(|r| r.kind == kind) {
                let met = g.mechanisms().iter().any(|m| m.capability == cap && m.applied_to.contains(&r.concerning));
                if !met {
                    out.insert(row(&[&r.id, &r.concerning]));
                }
            }
        }
        CheckId::CQ22 => {
            let owns = edges(g, EdgeKind::Own);
            let describes = edges(g, EdgeKind::Describes);
            for r in g.requirements().iter().filter(|r| r.kind == RequirementKind::Unobservability) {
                let info = &r.concerning;
                for (owner, _) in owns.iter().filter(|(_, i)| i == info) {
                    let activity = describes
                        .iter()
                        .any(|(i, goal)| i == info && naive_pursuers(g, goal).contains(owner));
                    let observed = g.uses().iter().any(|u| {
                        u.type_of_use == UseType::Collect
                            && &u.info == info
                            && naive_pursuers(g, &u.goal).iter().any(|a| a != owner)
                    });
                    if activity && observed {
                        out.insert(row(&[&r.id, info]));
                    }
                }
            }
        }
        CheckId::CQ24 => {
            for a in g.elements().filter(|e| e.kind == K::Agent) {
                let roles = naive_roles(g, &a.id);
                let role_is_threat = roles.iter().any(|r| is_threat_actor(g, r));
                let own = is_threat_actor(g, &a.id);
                if role_is_threat || (own && !roles.is_empty()) || (roles.is_empty() && !own) {
                    out.insert(row(&[&a.id]));
                }
            }
        }
        CheckId::CQ26 => {
            let adopts = edges(g, EdgeKind::Adopts);
            for d in g.delegations() {
                if !adopts.contains(&(d.delegatee.clone(), d.id.clone())) {
                    out.insert(row(&[&d.id, &d.delegatee]));
                }
            }
        }
    }
    out
}
