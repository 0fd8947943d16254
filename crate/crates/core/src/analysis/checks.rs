//! The individual competency questions. Each is a pure function of the
//! graph; results are normalised by the caller.

use std::collections::BTreeSet;

use super::{CheckId, Context, Finding};
use crate::model::*;

fn ids<const N: usize>(list: [&ElementId; N]) -> Vec<ElementId> {
    list.into_iter().cloned().collect()
}

fn is_personal(g: &ModelGraph, id: &str) -> bool {
    g.is_personal(id)
}

// ---------------------------------------------------------------- organisational

/// (trusted, monitored) for a permission delegation.
fn compensation(g: &ModelGraph, d: &DelegationRecord) -> (bool, bool) {
    let trusted = g.trusts().iter().any(|t| {
        t.kind == Subject::Permission
            && t.level == TrustLevel::Trust
            && t.trustor == d.delegator
            && t.trustee == d.delegatee
            && t.trustum == d.delegatum
    });
    let monitored = g.monitors().iter().any(|m| {
        m.kind == Subject::Permission
            && m.monitor == d.delegator
            && m.monitoree == d.delegatee
            && m.subject == d.delegatum
    });
    (trusted, monitored)
}

fn permission_delegations(g: &ModelGraph) -> impl Iterator<Item = &DelegationRecord> {
    g.delegations().iter().filter(|d| d.kind == Subject::Permission)
}

pub fn cq1_trustless_permission_delegation(g: &ModelGraph) -> Vec<Finding> {
    permission_delegations(g)
        .filter(|d| compensation(g, d) == (false, false))
        .map(|d| {
            Finding::new(
                CheckId::CQ1,
                ids([&d.id]),
                "permission delegated without trust or monitoring",
            )
        })
        .collect()
}

pub fn cq2_redundant_monitoring(g: &ModelGraph) -> Vec<Finding> {
    permission_delegations(g)
        .filter(|d| compensation(g, d) == (true, true))
        .map(|d| {
            Finding::new(
                CheckId::CQ2,
                ids([&d.id]),
                format!(
                    "monitoring of `{}` by `{}` is not required: the delegation is trusted",
                    d.delegatee, d.delegator
                ),
            )
        })
        .collect()
}

pub fn cq3_by_sensitivity(g: &ModelGraph, level: SensitivityLevel) -> Vec<Finding> {
    cq3_rows(g, Some(level))
}

/// CQ3 restricted to `level`, or over every level when absent.
pub fn cq3_rows(g: &ModelGraph, level: Option<SensitivityLevel>) -> Vec<Finding> {
    g.ids_of_kind(ElementKind::PersonalInformation)
        .iter()
        .filter_map(|id| {
            let declared = g.element(id)?.sensitivity?;
            (level.is_none() || level == Some(declared))
                .then(|| Finding::new(CheckId::CQ3, ids([id]), format!("`{id}` is {declared}")))
        })
        .collect()
}

// ---------------------------------------------------------------------- risk

pub fn cq4_vulnerable_information(g: &ModelGraph) -> Vec<Finding> {
    g.edges_of(EdgeKind::IsSubjectTo)
        .map(|e| {
            Finding::new(
                CheckId::CQ4,
                ids([&e.target, &e.source]),
                format!("`{}` is subject to vulnerability `{}`", e.source, e.target),
            )
        })
        .collect()
}

pub fn cq5_exploiting_threats(g: &ModelGraph) -> Vec<Finding> {
    g.threats()
        .iter()
        .flat_map(|t| {
            t.exploits.iter().map(move |v| {
                Finding::new(CheckId::CQ5, ids([v, &t.id]), format!("threat `{}` exploits `{v}`", t.id))
            })
        })
        .collect()
}

pub fn cq6_unmitigated_vulnerabilities(g: &ModelGraph) -> Vec<Finding> {
    g.ids_of_kind(ElementKind::Vulnerability)
        .iter()
        .filter(|v| {
            !g.sources(EdgeKind::Mitigates, v)
                .iter()
                .any(|pg| g.kind(pg) == Some(ElementKind::PrivacyGoal))
        })
        .map(|v| Finding::new(CheckId::CQ6, ids([v]), format!("no privacy goal mitigates `{v}`")))
        .collect()
}

fn threatened(g: &ModelGraph, id: CheckId, kind: Option<ThreatKind>) -> Vec<Finding> {
    g.threats()
        .iter()
        .filter(|t| kind.is_none_or(|k| t.kind == k))
        .flat_map(|t| {
            t.threatens.iter().map(move |i| {
                Finding::new(id, ids([&t.id, i]), format!("threat `{}` threatens `{i}`", t.id))
            })
        })
        .collect()
}

pub fn cq7_threatened_information(g: &ModelGraph) -> Vec<Finding> {
    threatened(g, CheckId::CQ7, None)
}

pub fn cq8_by_severity(g: &ModelGraph, level: Level) -> Vec<Finding> {
    cq8_rows(g, Some(level))
}

/// One row per threat and impact severity, restricted to `level` when set.
pub fn cq8_rows(g: &ModelGraph, level: Option<Level>) -> Vec<Finding> {
    let pairs: BTreeSet<(&ElementId, Level)> = g
        .impacts()
        .iter()
        .filter(|i| level.is_none_or(|l| i.severity == l))
        .map(|i| (&i.threat, i.severity))
        .collect();
    pairs
        .into_iter()
        .map(|(t, s)| Finding::new(CheckId::CQ8, ids([t]), format!("threat `{t}` has {s} severity impact")))
        .collect()
}

pub fn cq9_intentional_threats(g: &ModelGraph) -> Vec<Finding> {
    threatened(g, CheckId::CQ9, Some(ThreatKind::Intentional))
}

pub fn cq10_threat_actors(g: &ModelGraph) -> Vec<Finding> {
    g.intends()
        .map(|(a, t)| Finding::new(CheckId::CQ10, ids([a, t]), format!("`{a}` intends threat `{t}`")))
        .collect()
}

pub fn cq11_attack_methods(g: &ModelGraph) -> Vec<Finding> {
    g.threats()
        .iter()
        .flat_map(|t| {
            t.methods.iter().map(move |m| {
                Finding::new(CheckId::CQ11, ids([m, &t.id]), format!("threat `{}` includes attack method `{m}`", t.id))
            })
        })
        .collect()
}

pub fn cq12_incidental_threats(g: &ModelGraph) -> Vec<Finding> {
    threatened(g, CheckId::CQ12, Some(ThreatKind::Incidental))
}

pub fn cq13_by_probability(g: &ModelGraph, level: Level) -> Vec<Finding> {
    cq13_rows(g, Some(level))
}

pub fn cq13_rows(g: &ModelGraph, level: Option<Level>) -> Vec<Finding> {
    g.threats()
        .iter()
        .filter(|t| t.kind == ThreatKind::Incidental)
        .filter_map(|t| {
            let p = t.probability?;
            level.is_none_or(|l| l == p).then(|| {
                Finding::new(CheckId::CQ13, ids([&t.id]), format!("incidental threat `{}` has {p} probability", t.id))
            })
        })
        .collect()
}

// ----------------------------------------------------------------- treatment

pub fn cq14_realized_privacy_goals(g: &ModelGraph) -> Vec<Finding> {
    g.ids_of_kind(ElementKind::PrivacyGoal)
        .iter()
        .filter_map(|pg| {
            let by = g.targets(EdgeKind::RealizedBy, pg);
            (!by.is_empty()).then(|| {
                let mut names: Vec<&str> = by.iter().map(ElementId::as_str).collect();
                names.sort_unstable();
                Finding::new(CheckId::CQ14, ids([pg]), format!("`{pg}` is realized by {}", names.join(", ")))
            })
        })
        .collect()
}

pub fn cq15_applied_mechanisms(g: &ModelGraph) -> Vec<Finding> {
    g.mechanisms()
        .iter()
        .flat_map(|m| {
            m.applied_to.iter().map(move |i| {
                Finding::new(
                    CheckId::CQ15,
                    ids([&m.id, i]),
                    format!("{} mechanism `{}` is applied to `{i}`", m.capability.keyword(), m.id),
                )
            })
        })
        .collect()
}

// ------------------------------------------------------------------- privacy

/// Uses of personal information (restricted to `only` when given) whose
/// pursuing actor neither owns the information nor holds a matching
/// permission.
fn unpermitted_uses(ctx: &Context, id: CheckId, only: Option<UseType>) -> Vec<Finding> {
    let g = ctx.graph();
    let mut out = Vec::new();
    for u in g.uses() {
        if only.is_some_and(|t| t != u.type_of_use) || !is_personal(g, &u.info) {
            continue;
        }
        for actor in ctx.pursuers(&u.goal) {
            if ctx.is_owner(actor, &u.info) || ctx.may_use(actor, u.type_of_use, &u.info) {
                continue;
            }
            out.push(Finding::new(
                id,
                ids([actor, &u.goal, &u.info]),
                format!(
                    "`{actor}` uses `{}` ({}) for goal `{}` without {} permission",
                    u.info, u.type_of_use, u.goal, u.type_of_use
                ),
            ));
        }
    }
    out
}

pub fn cq16_nondisclosure_read(g: &ModelGraph) -> Vec<Finding> {
    cq16_in(&Context::new(g, false))
}

pub fn cq16_in(ctx: &Context) -> Vec<Finding> {
    unpermitted_uses(ctx, CheckId::CQ16, Some(UseType::Read))
}

pub fn cq17_confidential_provision(g: &ModelGraph) -> Vec<Finding> {
    g.provisions()
        .iter()
        .filter(|p| p.provision_type == ProvisionType::NonConfidential && is_personal(g, &p.of))
        .map(|p| {
            Finding::new(
                CheckId::CQ17,
                ids([&p.id, &p.of]),
                format!("`{}` is provided from `{}` to `{}` non-confidentially", p.of, p.from, p.to),
            )
        })
        .collect()
}

fn flagged_uses(g: &ModelGraph, id: CheckId, pred: impl Fn(&UseRecord) -> bool, what: &str) -> Vec<Finding> {
    g.uses()
        .iter()
        .filter(|u| pred(u) && is_personal(g, &u.info))
        .map(|u| {
            Finding::new(
                id,
                ids([&u.goal, &u.info]),
                format!("goal `{}` uses `{}` ({}) {what}", u.goal, u.info, u.type_of_use),
            )
        })
        .collect()
}

pub fn cq18_need_to_know(g: &ModelGraph) -> Vec<Finding> {
    flagged_uses(g, CheckId::CQ18, |u| u.need_to_use == NeedToUse::Optional, "without needing it")
}

pub fn cq19_purpose_of_use(g: &ModelGraph) -> Vec<Finding> {
    flagged_uses(
        g,
        CheckId::CQ19,
        |u| u.purpose_of_use == PurposeOfUse::Incompatible,
        "for an incompatible purpose",
    )
}

fn unmet_requirement(g: &ModelGraph, id: CheckId, kind: RequirementKind, capability: Capability) -> Vec<Finding> {
    g.requirements()
        .iter()
        .filter(|r| r.kind == kind)
        .filter(|r| {
            !g.mechanisms()
                .iter()
                .any(|m| m.capability == capability && m.applied_to.contains(&r.concerning))
        })
        .map(|r| {
            Finding::new(
                id,
                ids([&r.id, &r.concerning]),
                format!(
                    "{} requirement `{}` on `{}` has no {} mechanism applied",
                    kind.keyword(),
                    r.id,
                    r.concerning,
                    capability.keyword()
                ),
            )
        })
        .collect()
}

pub fn cq20_anonymity(g: &ModelGraph) -> Vec<Finding> {
    unmet_requirement(g, CheckId::CQ20, RequirementKind::Anonymity, Capability::Anonymize)
}

pub fn cq21_unlinkability(g: &ModelGraph) -> Vec<Finding> {
    unmet_requirement(g, CheckId::CQ21, RequirementKind::Unlinkability, Capability::Unlink)
}

pub fn cq22_unobservability(g: &ModelGraph) -> Vec<Finding> {
    cq22_in(&Context::new(g, false))
}

/// The information describes an activity its owner pursues, and someone
/// else collects it.
pub fn cq22_in(ctx: &Context) -> Vec<Finding> {
    let g = ctx.graph();
    let mut out = Vec::new();
    for r in g.requirements().iter().filter(|r| r.kind == RequirementKind::Unobservability) {
        let info = &r.concerning;
        for owner in g.owners(info) {
            let owners_activity = g
                .targets(EdgeKind::Describes, info)
                .iter()
                .any(|goal| ctx.pursuers(goal).contains(owner));
            if !owners_activity {
                continue;
            }
            let observers: BTreeSet<&ElementId> = g
                .uses()
                .iter()
                .filter(|u| u.type_of_use == UseType::Collect && &u.info == info)
                .flat_map(|u| ctx.pursuers(&u.goal))
                .filter(|a| *a != owner)
                .collect();
            if observers.is_empty() {
                continue;
            }
            let names: Vec<&str> = observers.iter().map(|a| a.as_str()).collect();
            out.push(Finding::new(
                CheckId::CQ22,
                ids([&r.id, info]),
                format!("activities of `{owner}` described by `{info}` are observed by {}", names.join(", ")),
            ));
        }
    }
    out
}

pub fn cq23_notice(g: &ModelGraph) -> Vec<Finding> {
    cq23_in(&Context::new(g, false))
}

pub fn cq23_in(ctx: &Context) -> Vec<Finding> {
    unpermitted_uses(ctx, CheckId::CQ23, Some(UseType::Collect))
}

/// Agents that cannot be authenticated (no role, and not merely an
/// external threat source) or whose credentials cover a threat actor: they
/// play a role that intends a threat, or intend one themselves while
/// holding a role.
pub fn cq24_authentication(g: &ModelGraph) -> Vec<Finding> {
    let intends: BTreeSet<(&ElementId, &ElementId)> = g.intends().collect();
    let intended_by = |a: &ElementId| -> Vec<&ElementId> {
        intends.iter().filter(|(x, _)| *x == a).map(|(_, t)| *t).collect()
    };
    let mut out = Vec::new();
    for agent in g.ids_of_kind(ElementKind::Agent) {
        let roles = g.role_closure(agent).expect("agent ids come from the graph");
        let own = intended_by(agent);
        let threat_roles: Vec<&ElementId> = roles.iter().filter(|r| !intended_by(r).is_empty()).collect();
        let message = if let Some(role) = threat_roles.first() {
            format!("`{agent}` plays threat-actor role `{role}`")
        } else if !own.is_empty() && !roles.is_empty() {
            format!("`{agent}` plays a role while intending threat `{}`", own[0])
        } else if roles.is_empty() && own.is_empty() {
            format!("`{agent}` plays no role and cannot be authenticated")
        } else {
            continue;
        };
        out.push(Finding::new(CheckId::CQ24, ids([agent]), message));
    }
    out
}

pub fn cq25_authorization(g: &ModelGraph) -> Vec<Finding> {
    cq25_in(&Context::new(g, false))
}

pub fn cq25_in(ctx: &Context) -> Vec<Finding> {
    unpermitted_uses(ctx, CheckId::CQ25, None)
}

pub fn cq26_non_repudiation(g: &ModelGraph) -> Vec<Finding> {
    g.delegations()
        .iter()
        .filter(|d| !g.has_edge(EdgeKind::Adopts, &d.delegatee, &d.id))
        .map(|d| {
            Finding::new(
                CheckId::CQ26,
                ids([&d.id, &d.delegatee]),
                format!("`{}` has not adopted delegation `{}` from `{}`", d.delegatee, d.id, d.delegator),
            )
        })
        .collect()
}
