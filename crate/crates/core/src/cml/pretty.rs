//! Canonical text form of a syntax tree, one declaration per line.

use std::fmt::Write;

use super::ast::*;
use crate::model::{NeedToUse, ProvisionType, PurposeOfUse, Subject, ThreatKind, TrustLevel};

pub fn pretty(ast: &Ast) -> String {
    let mut out = String::new();
    if let Some(name) = &ast.name {
        let _ = writeln!(out, "model {}", quote(name));
    }
    for stmt in &ast.statements {
        out.push_str(&statement(&stmt.kind));
        out.push('\n');
    }
    out
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}

fn list(ids: &[Ident]) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn subject(s: Subject) -> &'static str {
    match s {
        Subject::Goal => "goal",
        Subject::Permission => "permission",
    }
}

/// Appends ` "label"` when present.
fn labelled(mut head: String, label: &Option<String>) -> String {
    if let Some(l) = label {
        head.push(' ');
        head.push_str(&quote(l));
    }
    head
}

fn statement(kind: &StmtKind) -> String {
    match kind {
        StmtKind::Role { id, label, is_a } => {
            let mut s = labelled(format!("role {}", id.name), label);
            if let Some(p) = is_a {
                let _ = write!(s, " is_a {}", p.name);
            }
            s
        }
        StmtKind::Agent { id, label, plays } => {
            let mut s = labelled(format!("agent {}", id.name), label);
            if !plays.is_empty() {
                let _ = write!(s, " plays {}", list(plays));
            }
            s
        }
        StmtKind::Goal { id, label, aimed_by, decomposition } => {
            let mut s = labelled(format!("goal {}", id.name), label);
            if let Some(a) = aimed_by {
                let _ = write!(s, " aimedBy {}", a.name);
            }
            if let Some((op, subs)) = decomposition {
                let op = match op {
                    Decomposition::And => "and",
                    Decomposition::Or => "or",
                };
                let _ = write!(s, " {{ {op} [{}] }}", list(subs));
            }
            s
        }
        StmtKind::Info { id, label, class, part_of } => {
            let mut s = labelled(format!("info {}", id.name), label);
            match class {
                InfoClass::Personal { owner, sensitivity } => {
                    let _ = write!(s, " personal {{ owner {} sensitivity {} }}", owner.name, sensitivity.code());
                }
                InfoClass::Public => s.push_str(" public"),
            }
            if let Some(w) = part_of {
                let _ = write!(s, " partOf {}", w.name);
            }
            s
        }
        StmtKind::Use { goal, type_of_use, info, need, purpose } => {
            let mut s = format!("use {} {} {}", goal.name, type_of_use.keyword(), info.name);
            if need.is_some() || purpose.is_some() {
                s.push_str(" {");
                if let Some(n) = need {
                    s.push_str(match n {
                        NeedToUse::Require => " need required",
                        NeedToUse::Optional => " need optional",
                    });
                }
                if let Some(p) = purpose {
                    s.push_str(match p {
                        PurposeOfUse::Compatible => " purpose compatible",
                        PurposeOfUse::Incompatible => " purpose incompatible",
                    });
                }
                s.push_str(" }");
            }
            s
        }
        StmtKind::Permission { id, permission_type, over, held_by } => format!(
            "permission {} {} over {} heldBy {}",
            id.name,
            permission_type.keyword(),
            over.name,
            held_by.name
        ),
        StmtKind::Provision { id, of, from, to, provision_type } => format!(
            "provision {} of {} from {} to {} {}",
            id.name,
            of.name,
            from.name,
            to.name,
            match provision_type {
                ProvisionType::Confidential => "confidential",
                ProvisionType::NonConfidential => "nonconfidential",
            }
        ),
        StmtKind::Delegate { kind, id, from, to, of } => format!(
            "delegate {} {} from {} to {} of {}",
            subject(*kind),
            id.name,
            from.name,
            to.name,
            of.name
        ),
        StmtKind::Adopt { actor, delegation } => format!("adopt {} {}", actor.name, delegation.name),
        StmtKind::Trust { id, from, to, kind, on, level } => format!(
            "trust {} from {} to {} on {} {} level {}",
            id.name,
            from.name,
            to.name,
            subject(*kind),
            on.name,
            match level {
                TrustLevel::Trust => "trust",
                TrustLevel::Distrust => "distrust",
            }
        ),
        StmtKind::Monitor { id, by, of, kind, on } => format!(
            "monitor {} by {} of {} on {} {}",
            id.name,
            by.name,
            of.name,
            subject(*kind),
            on.name
        ),
        StmtKind::Vulnerability { id, label, on } => {
            format!("{} on {}", labelled(format!("vulnerability {}", id.name), label), list(on))
        }
        StmtKind::Threat { kind, id, label, threatens, exploits, actors, methods, probability, impacts } => {
            let kind = match kind {
                ThreatKind::Intentional => "intentional",
                ThreatKind::Incidental => "incidental",
            };
            let mut s = labelled(format!("threat {kind} {}", id.name), label);
            s.push_str(" {");
            if !threatens.is_empty() {
                let _ = write!(s, " threatens {}", list(threatens));
            }
            if !exploits.is_empty() {
                let _ = write!(s, " exploits {}", list(exploits));
            }
            for a in actors {
                let _ = write!(s, " actor {}", a.name);
            }
            for m in methods {
                let _ = write!(s, " method {}", m.name);
            }
            if let Some(p) = probability {
                let _ = write!(s, " probability {}", p.code());
            }
            for i in impacts {
                let _ = write!(s, " impact severity {} over {}", i.severity.code(), i.over.name);
            }
            s.push_str(" }");
            s
        }
        StmtKind::AttackMethod { id, label } => labelled(format!("attackmethod {}", id.name), label),
        StmtKind::PrivacyGoal { id, label, mitigates, realized_by } => {
            let mut s = labelled(format!("privacygoal {}", id.name), label);
            if !mitigates.is_empty() {
                let _ = write!(s, " mitigates {}", list(mitigates));
            }
            if !realized_by.is_empty() {
                let _ = write!(s, " realizedBy {}", list(realized_by));
            }
            s
        }
        StmtKind::Policy { id, label } => labelled(format!("policy {}", id.name), label),
        StmtKind::Mechanism { id, label, capability, applied_to } => {
            let mut s = labelled(format!("mechanism {}", id.name), label);
            let _ = write!(s, " capability {}", capability.keyword());
            if !applied_to.is_empty() {
                let _ = write!(s, " appliedTo {}", list(applied_to));
            }
            s
        }
        StmtKind::Requirement { kind, id, concerning, interpreted_by } => {
            let mut s = format!("requirement {} {} concerning {}", kind.keyword(), id.name, concerning.name);
            if !interpreted_by.is_empty() {
                let _ = write!(s, " interpretedBy {}", list(interpreted_by));
            }
            s
        }
        StmtKind::Describes { info, goal } => format!("describes {} {}", info.name, goal.name),
        StmtKind::Situation { id, info, level } => {
            format!("situation {} determines {} {}", id.name, info.name, level.code())
        }
    }
}
