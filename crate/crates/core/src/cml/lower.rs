//! Turns a syntax tree into builder calls and finalizes the model.

use super::ast::*;
use crate::diagnostic::Diagnostic;
use crate::model::*;

/// Lowers every statement in order, then finalizes. Errors carry the span
/// of the declaring statement, or of the offending reference.
pub fn lower(ast: &Ast) -> Result<ModelGraph, Vec<Diagnostic>> {
    let mut b = ModelBuilder::new();
    if let Some(name) = &ast.name {
        b.name(name.clone());
    }
    for stmt in &ast.statements {
        b.set_origin(Some(origin(stmt)));
        lower_statement(&mut b, &stmt.kind);
    }
    b.finalize()
}

fn origin(stmt: &Statement) -> Origin {
    let mut origin = Origin::new(stmt.span.clone());
    origin.refs = references(&stmt.kind)
        .into_iter()
        .map(|i| (ElementId::new(&i.name), i.span.clone()))
        .collect();
    origin
}

/// Identifiers a statement refers to, excluding the one it declares.
fn references(kind: &StmtKind) -> Vec<&Ident> {
    match kind {
        StmtKind::Role { is_a, .. } => is_a.iter().collect(),
        StmtKind::Agent { plays, .. } => plays.iter().collect(),
        StmtKind::Goal { aimed_by, decomposition, .. } => aimed_by
            .iter()
            .chain(decomposition.iter().flat_map(|(_, subs)| subs))
            .collect(),
        StmtKind::Info { class, part_of, .. } => {
            let owner = match class {
                InfoClass::Personal { owner, .. } => Some(owner),
                InfoClass::Public => None,
            };
            owner.into_iter().chain(part_of).collect()
        }
        StmtKind::Use { goal, info, .. } => vec![goal, info],
        StmtKind::Permission { over, held_by, .. } => vec![over, held_by],
        StmtKind::Provision { of, from, to, .. } => vec![of, from, to],
        StmtKind::Delegate { from, to, of, .. } => vec![from, to, of],
        StmtKind::Adopt { actor, delegation } => vec![actor, delegation],
        StmtKind::Trust { from, to, on, .. } => vec![from, to, on],
        StmtKind::Monitor { by, of, on, .. } => vec![by, of, on],
        StmtKind::Vulnerability { on, .. } => on.iter().collect(),
        StmtKind::Threat { threatens, exploits, actors, methods, impacts, .. } => threatens
            .iter()
            .chain(exploits)
            .chain(actors)
            .chain(methods)
            .chain(impacts.iter().map(|i| &i.over))
            .collect(),
        StmtKind::AttackMethod { .. } | StmtKind::Policy { .. } => Vec::new(),
        StmtKind::PrivacyGoal { mitigates, realized_by, .. } => {
            mitigates.iter().chain(realized_by).collect()
        }
        StmtKind::Mechanism { applied_to, .. } => applied_to.iter().collect(),
        StmtKind::Requirement { concerning, interpreted_by, .. } => {
            std::iter::once(concerning).chain(interpreted_by).collect()
        }
        StmtKind::Describes { info, goal } => vec![info, goal],
        StmtKind::Situation { info, .. } => vec![info],
    }
}

fn id(i: &Ident) -> ElementId {
    ElementId::new(&i.name)
}

fn ids(list: &[Ident]) -> Vec<ElementId> {
    list.iter().map(id).collect()
}

fn element(kind: ElementKind, i: &Ident, label: &Option<String>) -> Element {
    let mut e = Element::new(kind, id(i));
    e.label = label.clone();
    e
}

fn lower_statement(b: &mut ModelBuilder, kind: &StmtKind) {
    match kind {
        StmtKind::Role { id: r, label, is_a } => {
            b.add_element(element(ElementKind::Role, r, label));
            if let Some(parent) = is_a {
                b.add_edge(Edge::new(EdgeKind::IsA, id(r), id(parent)));
            }
        }
        StmtKind::Agent { id: a, label, plays } => {
            b.add_element(element(ElementKind::Agent, a, label));
            for role in plays {
                b.add_edge(Edge::new(EdgeKind::Plays, id(a), id(role)));
            }
        }
        StmtKind::Goal { id: g, label, aimed_by, decomposition } => {
            b.add_element(element(ElementKind::Goal, g, label));
            if let Some(actor) = aimed_by {
                b.add_edge(Edge::new(EdgeKind::Aims, id(actor), id(g)));
            }
            if let Some((op, subs)) = decomposition {
                let rel = match op {
                    Decomposition::And => EdgeKind::AndDecomposed,
                    Decomposition::Or => EdgeKind::OrDecomposed,
                };
                for sub in subs {
                    b.add_edge(Edge::new(rel, id(g), id(sub)));
                }
            }
        }
        StmtKind::Info { id: i, label, class, part_of } => {
            match class {
                InfoClass::Personal { owner, sensitivity } => {
                    b.add_element(
                        element(ElementKind::PersonalInformation, i, label).sensitivity(*sensitivity),
                    );
                    b.add_edge(Edge::new(EdgeKind::Own, id(owner), id(i)));
                }
                InfoClass::Public => {
                    b.add_element(element(ElementKind::PublicInformation, i, label));
                }
            }
            if let Some(whole) = part_of {
                b.add_edge(Edge::new(EdgeKind::PartOf, id(i), id(whole)));
            }
        }
        StmtKind::Use { goal, type_of_use, info, need, purpose } => {
            b.add_record(
                UseRecord::new(id(goal), *type_of_use, id(info))
                    .need(need.unwrap_or(NeedToUse::Require))
                    .purpose(purpose.unwrap_or(PurposeOfUse::Compatible)),
            );
        }
        StmtKind::Permission { id: p, permission_type, over, held_by } => {
            b.add_record(PermissionRecord {
                id: id(p),
                holder: id(held_by),
                permission_type: *permission_type,
                over: id(over),
            });
        }
        StmtKind::Provision { id: p, of, from, to, provision_type } => {
            b.add_record(ProvisionRecord {
                id: id(p),
                of: id(of),
                from: id(from),
                to: id(to),
                provision_type: *provision_type,
            });
        }
        StmtKind::Delegate { kind, id: d, from, to, of } => {
            b.add_record(DelegationRecord {
                id: id(d),
                delegator: id(from),
                delegatee: id(to),
                kind: *kind,
                delegatum: id(of),
            });
        }
        StmtKind::Adopt { actor, delegation } => {
            b.add_edge(Edge::new(EdgeKind::Adopts, id(actor), id(delegation)));
        }
        StmtKind::Trust { id: t, from, to, kind, on, level } => {
            b.add_record(TrustRecord {
                id: id(t),
                trustor: id(from),
                trustee: id(to),
                kind: *kind,
                trustum: id(on),
                level: *level,
            });
        }
        StmtKind::Monitor { id: m, by, of, kind, on } => {
            b.add_record(MonitorRecord {
                id: id(m),
                monitor: id(by),
                monitoree: id(of),
                kind: *kind,
                subject: id(on),
            });
        }
        StmtKind::Vulnerability { id: v, label, on } => {
            b.add_element(element(ElementKind::Vulnerability, v, label));
            for info in on {
                b.add_edge(Edge::new(EdgeKind::IsSubjectTo, id(info), id(v)));
            }
        }
        StmtKind::Threat { kind, id: t, label, threatens, exploits, actors, methods, probability, impacts } => {
            b.add_record(ThreatRecord {
                id: id(t),
                label: label.clone(),
                kind: *kind,
                threatens: ids(threatens),
                exploits: ids(exploits),
                actors: ids(actors),
                methods: ids(methods),
                probability: *probability,
            });
            for impact in impacts {
                b.add_record(ImpactRecord {
                    threat: id(t),
                    over: id(&impact.over),
                    severity: impact.severity,
                });
            }
        }
        StmtKind::AttackMethod { id: m, label } => {
            b.add_element(element(ElementKind::AttackMethod, m, label));
        }
        StmtKind::PrivacyGoal { id: g, label, mitigates, realized_by } => {
            b.add_element(element(ElementKind::PrivacyGoal, g, label));
            for v in mitigates {
                b.add_edge(Edge::new(EdgeKind::Mitigates, id(g), id(v)));
            }
            for c in realized_by {
                b.add_edge(Edge::new(EdgeKind::RealizedBy, id(g), id(c)));
            }
        }
        StmtKind::Policy { id: p, label } => {
            b.add_element(element(ElementKind::PrivacyPolicy, p, label));
        }
        StmtKind::Mechanism { id: m, label, capability, applied_to } => {
            b.add_record(MechanismRecord {
                id: id(m),
                label: label.clone(),
                capability: *capability,
                applied_to: ids(applied_to),
            });
        }
        StmtKind::Requirement { kind, id: r, concerning, interpreted_by } => {
            b.add_record(RequirementRecord {
                id: id(r),
                label: None,
                kind: *kind,
                concerning: id(concerning),
                interpreted_by: ids(interpreted_by),
            });
        }
        StmtKind::Describes { info, goal } => {
            b.add_edge(Edge::new(EdgeKind::Describes, id(info), id(goal)));
        }
        StmtKind::Situation { id: s, info, level } => {
            b.add_element(Element::new(ElementKind::Situation, id(s)));
            b.add_edge(Edge::determines(id(s), id(info), *level));
        }
    }
}
