//! Structural rules over a finalized graph: relation signatures, acyclic
//! hierarchies, cardinalities and a few authoring lints.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::diagnostic::{normalize, DiagCode, Diagnostic};
use crate::exec::{self, ExecMode};
use crate::model::{EdgeKind, ElementId, ElementKind, ModelGraph, ThreatKind};

/// Every triple must fit the domain and range of its relation.
pub fn check_signatures(graph: &ModelGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (t, span) in graph.triples() {
        let (Some(src), Some(tgt)) = (graph.node_type(&t.source), graph.node_type(&t.target)) else {
            continue;
        };
        if t.relation.accepts(src, tgt) {
            continue;
        }
        let (domain, range) = t.relation.signature();
        out.push(Diagnostic::error(
            DiagCode::WfSig,
            span.cloned(),
            format!(
                "`{}` relates {domain} to {range}, found {src} `{}` to {tgt} `{}`",
                t.relation, t.source, t.target
            ),
        ));
    }
    out
}

/// The relations that form hierarchies and must stay acyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hierarchy {
    IsA,
    PartOf,
    /// And- and or-decomposition taken together.
    Decomposition,
}

impl Hierarchy {
    pub const ALL: [Hierarchy; 3] = [Hierarchy::IsA, Hierarchy::PartOf, Hierarchy::Decomposition];

    fn relations(self) -> &'static [EdgeKind] {
        match self {
            Hierarchy::IsA => &[EdgeKind::IsA],
            Hierarchy::PartOf => &[EdgeKind::PartOf],
            Hierarchy::Decomposition => &[EdgeKind::AndDecomposed, EdgeKind::OrDecomposed],
        }
    }
}

impl fmt::Display for Hierarchy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hierarchy::IsA => "is_a",
            Hierarchy::PartOf => "partOf",
            Hierarchy::Decomposition => "goal decomposition",
        })
    }
}

/// A strongly connected set of elements in one hierarchy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    pub hierarchy: Hierarchy,
    /// For a simple cycle, the members in edge order starting at the
    /// smallest id; otherwise sorted.
    pub members: Vec<ElementId>,
}

/// Every non-trivial strongly connected component (and every self-loop)
/// of each hierarchy, in a deterministic order.
pub fn hierarchy_cycles(graph: &ModelGraph) -> Vec<Cycle> {
    let mut out = Vec::new();
    for h in Hierarchy::ALL {
        let mut adj: BTreeMap<&ElementId, BTreeSet<&ElementId>> = BTreeMap::new();
        for rel in h.relations() {
            for e in graph.edges_of(*rel) {
                adj.entry(&e.source).or_default().insert(&e.target);
                adj.entry(&e.target).or_default();
            }
        }
        for comp in strongly_connected(&adj) {
            let cyclic = comp.len() > 1 || adj[comp[0]].contains(comp[0]);
            if cyclic {
                out.push(Cycle { hierarchy: h, members: cycle_order(&adj, comp) });
            }
        }
    }
    out.sort();
    out
}

/// Tarjan's algorithm, iterative so long chains cannot overflow the stack.
fn strongly_connected<'a>(
    adj: &BTreeMap<&'a ElementId, BTreeSet<&'a ElementId>>,
) -> Vec<Vec<&'a ElementId>> {
    let nodes: Vec<&ElementId> = adj.keys().copied().collect();
    let index_of: BTreeMap<&ElementId, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let succ: Vec<Vec<usize>> = nodes.iter().map(|n| adj[n].iter().map(|m| index_of[m]).collect()).collect();

    let n = nodes.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = work.last_mut() {
            if let Some(&w) = succ[v].get(*next) {
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(nodes[w]);
                    if w == v {
                        break;
                    }
                }
                comp.sort();
                comps.push(comp);
            }
        }
    }
    comps
}

fn cycle_order<'a>(
    adj: &BTreeMap<&'a ElementId, BTreeSet<&'a ElementId>>,
    comp: Vec<&'a ElementId>,
) -> Vec<ElementId> {
    let members: HashSet<&ElementId> = comp.iter().copied().collect();
    let inner = |n: &ElementId| -> Vec<&'a ElementId> {
        adj[n].iter().copied().filter(|m| members.contains(m)).collect()
    };
    let simple = comp.len() > 1 && comp.iter().all(|n| inner(n).len() == 1);
    if !simple {
        return comp.into_iter().cloned().collect();
    }
    // `comp` is sorted, so the walk starts at the smallest id.
    let mut order = vec![comp[0].clone()];
    let mut cur = inner(comp[0])[0];
    while cur != comp[0] {
        order.push(cur.clone());
        cur = inner(cur)[0];
    }
    order
}

pub fn check_cycles(graph: &ModelGraph) -> Vec<Diagnostic> {
    hierarchy_cycles(graph)
        .into_iter()
        .map(|c| {
            let mut path: Vec<&str> = c.members.iter().map(ElementId::as_str).collect();
            path.push(c.members[0].as_str());
            Diagnostic::error(
                DiagCode::WfCycle,
                graph.span_of(&c.members[0]).cloned(),
                format!("cycle in {}: {}", c.hierarchy, path.join(" -> ")),
            )
        })
        .collect()
}

/// Exactly one owner and one sensitivity per personal information; at most
/// one actor and one method per intentional threat.
pub fn check_cardinalities(graph: &ModelGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for id in graph.ids_of_kind(ElementKind::PersonalInformation) {
        let span = graph.span_of(id).cloned();
        let owners = graph.owners(id).len();
        if owners != 1 {
            out.push(Diagnostic::error(
                DiagCode::WfCard,
                span.clone(),
                format!("personal information `{id}` must have exactly one owner, found {owners}"),
            ));
        }
        if graph.element(id).is_some_and(|e| e.sensitivity.is_none()) {
            out.push(Diagnostic::error(
                DiagCode::WfCard,
                span,
                format!("personal information `{id}` has no sensitivity level"),
            ));
        }
    }
    for t in graph.threats().iter().filter(|t| t.kind == ThreatKind::Intentional) {
        for (what, n) in [("actor", t.actors.len()), ("attack method", t.methods.len())] {
            if n != 1 {
                out.push(Diagnostic::error(
                    DiagCode::WfCard,
                    graph.span_of(&t.id).cloned(),
                    format!("intentional threat `{}` must have exactly one {what}, found {n}", t.id),
                ));
            }
        }
    }
    out
}

/// Elements that take part in no relation at all.
pub fn check_isolated(graph: &ModelGraph) -> Vec<Diagnostic> {
    let mut connected: HashSet<ElementId> = HashSet::new();
    for (t, _) in graph.triples() {
        connected.insert(t.source);
        connected.insert(t.target);
    }
    graph
        .elements()
        .filter(|e| !connected.contains(&e.id))
        .map(|e| {
            Diagnostic::warning(
                DiagCode::WfIsolated,
                graph.span_of(&e.id).cloned(),
                format!("{} `{}` is not connected to anything", e.kind, e.id),
            )
        })
        .collect()
}

/// Self-directed relationships and situations contradicting a declared
/// sensitivity.
pub fn check_misc(graph: &ModelGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut selfish = |id: &ElementId, what: &str, actor: &ElementId| {
        out.push(Diagnostic::warning(
            DiagCode::WfSelf,
            graph.span_of(id).cloned(),
            format!("{what} `{id}` relates `{actor}` to itself"),
        ));
    };
    for d in graph.delegations().iter().filter(|d| d.delegator == d.delegatee) {
        selfish(&d.id, "delegation", &d.delegator);
    }
    for t in graph.trusts().iter().filter(|t| t.trustor == t.trustee) {
        selfish(&t.id, "trust", &t.trustor);
    }
    for m in graph.monitors().iter().filter(|m| m.monitor == m.monitoree) {
        selfish(&m.id, "monitoring", &m.monitor);
    }
    for p in graph.provisions().iter().filter(|p| p.from == p.to) {
        selfish(&p.id, "provision", &p.from);
    }
    for (i, e) in graph.edges().iter().enumerate() {
        if e.relation != EdgeKind::Determines {
            continue;
        }
        let declared = graph.element(&e.target).and_then(|el| el.sensitivity);
        if let (Some(declared), Some(determined)) = (declared, e.level) {
            if declared != determined {
                out.push(Diagnostic::warning(
                    DiagCode::WfSensConflict,
                    graph.span_of_edge(i).cloned(),
                    format!(
                        "situation `{}` sets `{}` to {determined}, but it is declared {declared}",
                        e.source, e.target
                    ),
                ));
            }
        }
    }
    out
}

type Check = fn(&ModelGraph) -> Vec<Diagnostic>;

const CHECKS: [Check; 5] = [check_signatures, check_cycles, check_cardinalities, check_isolated, check_misc];

/// Runs every rule and returns the merged, sorted diagnostics.
pub fn check_all(graph: &ModelGraph, mode: ExecMode) -> Vec<Diagnostic> {
    let mut diags = exec::flat_map(mode, &CHECKS, |check| check(graph));
    normalize(&mut diags);
    diags
}
