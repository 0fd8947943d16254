//! The finalized, immutable model graph and its closure queries.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use super::id::ElementId;
use super::kinds::*;
use super::records::*;
use super::schema::{Relation, Triple};
use crate::diagnostic::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("unknown element `{0}`")]
    UnknownElement(ElementId),
    #[error("`{0}` is not an actor")]
    NotAnActor(ElementId),
    #[error("`{0}` is not information")]
    NotInformation(ElementId),
}

type Adjacency = HashMap<ElementId, Vec<ElementId>>;

/// Immutable, indexed store of a finalized model.
///
/// Every reference resolves to a declared id. Relation signatures and
/// cardinalities are *not* guaranteed here; those are reported by the
/// wellformedness rules so that a single run lists all of them.
#[derive(Debug, Clone, Default)]
pub struct ModelGraph {
    pub(super) name: Option<String>,
    pub(super) elements: BTreeMap<ElementId, Element>,
    pub(super) types: HashMap<ElementId, NodeType>,
    pub(super) edges: Vec<Edge>,
    pub(super) uses: Vec<UseRecord>,
    pub(super) permissions: Vec<PermissionRecord>,
    pub(super) provisions: Vec<ProvisionRecord>,
    pub(super) delegations: Vec<DelegationRecord>,
    pub(super) trusts: Vec<TrustRecord>,
    pub(super) monitors: Vec<MonitorRecord>,
    pub(super) threats: Vec<ThreatRecord>,
    pub(super) impacts: Vec<ImpactRecord>,
    pub(super) requirements: Vec<RequirementRecord>,
    pub(super) mechanisms: Vec<MechanismRecord>,

    pub(super) id_spans: HashMap<ElementId, SourceSpan>,
    pub(super) edge_spans: Vec<Option<SourceSpan>>,
    pub(super) use_spans: Vec<Option<SourceSpan>>,
    pub(super) impact_spans: Vec<Option<SourceSpan>>,

    pub(super) forward: HashMap<EdgeKind, Adjacency>,
    pub(super) backward: HashMap<EdgeKind, Adjacency>,
    pub(super) by_kind: BTreeMap<ElementKind, Vec<ElementId>>,
    pub(super) permission_at: HashMap<ElementId, usize>,
    pub(super) threat_at: HashMap<ElementId, usize>,
    pub(super) held_by: Adjacency,
    pub(super) mechanism_at: HashMap<ElementId, usize>,
}

impl ModelGraph {
    pub(super) fn build_indexes(&mut self) {
        for edge in &self.edges {
            self.forward
                .entry(edge.relation)
                .or_default()
                .entry(edge.source.clone())
                .or_default()
                .push(edge.target.clone());
            self.backward
                .entry(edge.relation)
                .or_default()
                .entry(edge.target.clone())
                .or_default()
                .push(edge.source.clone());
        }
        for el in self.elements.values() {
            self.by_kind.entry(el.kind).or_default().push(el.id.clone());
        }
        for (i, p) in self.permissions.iter().enumerate() {
            self.permission_at.insert(p.id.clone(), i);
            self.held_by.entry(p.holder.clone()).or_default().push(p.id.clone());
        }
        for (i, t) in self.threats.iter().enumerate() {
            self.threat_at.insert(t.id.clone(), i);
        }
        for (i, m) in self.mechanisms.iter().enumerate() {
            self.mechanism_at.insert(m.id.clone(), i);
        }
    }

    /// Name given by the `model` header, if any.
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty() && self.edges.is_empty() && self.uses.is_empty()
    }

    /// Elements in identifier order.
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.elements.values()
    }

    pub fn element(&self, id: &str) -> Option<&Element> {
        self.elements.get(id)
    }

    pub fn node_type(&self, id: &str) -> Option<NodeType> {
        self.types.get(id).copied()
    }

    pub fn kind(&self, id: &str) -> Option<ElementKind> {
        self.elements.get(id).map(|e| e.kind)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.types.contains_key(id)
    }

    /// Element ids of one kind, sorted.
    pub fn ids_of_kind(&self, kind: ElementKind) -> &[ElementId] {
        self.by_kind.get(&kind).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_personal(&self, id: &str) -> bool {
        self.kind(id) == Some(ElementKind::PersonalInformation)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_of(&self, relation: EdgeKind) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.relation == relation)
    }

    /// Targets of `source --relation-->`.
    pub fn targets(&self, relation: EdgeKind, source: &str) -> &[ElementId] {
        self.forward
            .get(&relation)
            .and_then(|m| m.get(source))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Sources of `--relation--> target`.
    pub fn sources(&self, relation: EdgeKind, target: &str) -> &[ElementId] {
        self.backward
            .get(&relation)
            .and_then(|m| m.get(target))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn has_edge(&self, relation: EdgeKind, source: &str, target: &str) -> bool {
        self.targets(relation, source).iter().any(|t| t.as_str() == target)
    }

    pub fn uses(&self) -> &[UseRecord] {
        &self.uses
    }

    pub fn permissions(&self) -> &[PermissionRecord] {
        &self.permissions
    }

    pub fn permission(&self, id: &str) -> Option<&PermissionRecord> {
        self.permission_at.get(id).map(|&i| &self.permissions[i])
    }

    /// Permission records held directly by `actor`.
    pub fn permissions_held_by(&self, actor: &str) -> impl Iterator<Item = &PermissionRecord> {
        self.held_by
            .get(actor)
            .into_iter()
            .flatten()
            .filter_map(|id| self.permission(id))
    }

    pub fn provisions(&self) -> &[ProvisionRecord] {
        &self.provisions
    }

    pub fn delegations(&self) -> &[DelegationRecord] {
        &self.delegations
    }

    pub fn trusts(&self) -> &[TrustRecord] {
        &self.trusts
    }

    pub fn monitors(&self) -> &[MonitorRecord] {
        &self.monitors
    }

    pub fn threats(&self) -> &[ThreatRecord] {
        &self.threats
    }

    pub fn threat(&self, id: &str) -> Option<&ThreatRecord> {
        self.threat_at.get(id).map(|&i| &self.threats[i])
    }

    pub fn impacts(&self) -> &[ImpactRecord] {
        &self.impacts
    }

    pub fn requirements(&self) -> &[RequirementRecord] {
        &self.requirements
    }

    pub fn mechanisms(&self) -> &[MechanismRecord] {
        &self.mechanisms
    }

    pub fn mechanism(&self, id: &str) -> Option<&MechanismRecord> {
        self.mechanism_at.get(id).map(|&i| &self.mechanisms[i])
    }

    /// `(actor, threat)` for every intentional threat naming the actor.
    pub fn intends(&self) -> impl Iterator<Item = (&ElementId, &ElementId)> {
        self.threats
            .iter()
            .filter(|t| t.kind == ThreatKind::Intentional)
            .flat_map(|t| t.actors.iter().map(move |a| (a, &t.id)))
    }

    pub fn span_of(&self, id: &str) -> Option<&SourceSpan> {
        self.id_spans.get(id)
    }

    pub fn span_of_edge(&self, index: usize) -> Option<&SourceSpan> {
        self.edge_spans.get(index).and_then(Option::as_ref)
    }

    pub fn span_of_use(&self, index: usize) -> Option<&SourceSpan> {
        self.use_spans.get(index).and_then(Option::as_ref)
    }

    pub fn span_of_impact(&self, index: usize) -> Option<&SourceSpan> {
        self.impact_spans.get(index).and_then(Option::as_ref)
    }

    /// Every relation instance in the model, edges and record fields alike,
    /// with the span of the declaration it came from.
    pub fn triples(&self) -> Vec<(Triple, Option<&SourceSpan>)> {
        let mut out: Vec<(Triple, Option<&SourceSpan>)> = Vec::new();
        macro_rules! push {
            ($relation:expr, $source:expr, $target:expr, $span:expr) => {
                out.push((
                    Triple {
                        relation: $relation,
                        source: ElementId::clone($source),
                        target: ElementId::clone($target),
                    },
                    $span,
                ))
            };
        }
        for (i, e) in self.edges.iter().enumerate() {
            push!(Relation::Edge(e.relation), &e.source, &e.target, self.span_of_edge(i));
        }
        for (i, u) in self.uses.iter().enumerate() {
            push!(Relation::Uses, &u.goal, &u.info, self.span_of_use(i));
        }
        for p in &self.permissions {
            let span = self.span_of(&p.id);
            push!(Relation::HasPermission, &p.holder, &p.id, span);
            push!(Relation::Over, &p.id, &p.over, span);
        }
        for p in &self.provisions {
            let span = self.span_of(&p.id);
            push!(Relation::ProvisionOf, &p.id, &p.of, span);
            push!(Relation::ProvideBy, &p.from, &p.id, span);
            push!(Relation::ProvideTo, &p.id, &p.to, span);
        }
        for d in &self.delegations {
            let span = self.span_of(&d.id);
            push!(Relation::Delegator, &d.delegator, &d.id, span);
            push!(Relation::Delegatee, &d.id, &d.delegatee, span);
            let rel = match d.kind {
                Subject::Goal => Relation::GoalDelegatum,
                Subject::Permission => Relation::PermissionDelegatum,
            };
            push!(rel, &d.id, &d.delegatum, span);
        }
        for t in &self.trusts {
            let span = self.span_of(&t.id);
            push!(Relation::Trustor, &t.trustor, &t.id, span);
            push!(Relation::Trustee, &t.id, &t.trustee, span);
            let rel = match t.kind {
                Subject::Goal => Relation::GoalTrustum,
                Subject::Permission => Relation::PermissionTrustum,
            };
            push!(rel, &t.id, &t.trustum, span);
        }
        for m in &self.monitors {
            let span = self.span_of(&m.id);
            push!(Relation::MonitorBy, &m.monitor, &m.id, span);
            push!(Relation::Monitoree, &m.id, &m.monitoree, span);
            let rel = match m.kind {
                Subject::Goal => Relation::OfGoal,
                Subject::Permission => Relation::OfPermission,
            };
            push!(rel, &m.id, &m.subject, span);
        }
        for t in &self.threats {
            let span = self.span_of(&t.id);
            for i in &t.threatens {
                push!(Relation::Threaten, &t.id, i, span);
            }
            for v in &t.exploits {
                push!(Relation::Exploits, &t.id, v, span);
            }
            for a in &t.actors {
                push!(Relation::Intends, a, &t.id, span);
            }
            for m in &t.methods {
                push!(Relation::Includes, &t.id, m, span);
            }
        }
        for (i, imp) in self.impacts.iter().enumerate() {
            push!(Relation::ImpactOver, &imp.threat, &imp.over, self.span_of_impact(i));
        }
        for m in &self.mechanisms {
            let span = self.span_of(&m.id);
            for i in &m.applied_to {
                push!(Relation::AppliedTo, &m.id, i, span);
            }
        }
        for r in &self.requirements {
            let span = self.span_of(&r.id);
            push!(Relation::Concerning, &r.id, &r.concerning, span);
            for g in &r.interpreted_by {
                push!(Relation::InterpretedBy, &r.id, g, span);
            }
        }
        out
    }

    fn require(&self, id: &str) -> Result<NodeType, QueryError> {
        self.node_type(id)
            .ok_or_else(|| QueryError::UnknownElement(ElementId::new(id)))
    }

    /// Roles an actor inherits properties from: for an agent, the roles it
    /// plays and all their `is_a` ancestors; for a role, its ancestors and
    /// itself.
    pub fn role_closure(&self, actor: &str) -> Result<BTreeSet<ElementId>, QueryError> {
        let start: Vec<ElementId> = match self.require(actor)? {
            NodeType::Element(ElementKind::Agent) => self.targets(EdgeKind::Plays, actor).to_vec(),
            NodeType::Element(ElementKind::Role) => vec![ElementId::new(actor)],
            _ => return Err(QueryError::NotAnActor(ElementId::new(actor))),
        };
        Ok(self.reach(EdgeKind::IsA, start, true))
    }

    /// Reflexive-transitive closure of parts: `info` and everything that is
    /// (transitively) `partOf` it.
    pub fn transitive_parts(&self, info: &str) -> Result<BTreeSet<ElementId>, QueryError> {
        match self.require(info)? {
            NodeType::Element(k) if k.is_information() => {}
            _ => return Err(QueryError::NotInformation(ElementId::new(info))),
        }
        Ok(self.reach(EdgeKind::PartOf, vec![ElementId::new(info)], false))
    }

    /// BFS from `start` (included) following `relation` forwards or
    /// backwards. Terminates on cyclic input.
    fn reach(&self, relation: EdgeKind, start: Vec<ElementId>, forward: bool) -> BTreeSet<ElementId> {
        let mut seen: BTreeSet<ElementId> = start.iter().cloned().collect();
        let mut queue: VecDeque<ElementId> = start.into();
        while let Some(n) = queue.pop_front() {
            let next = if forward {
                self.targets(relation, &n)
            } else {
                self.sources(relation, &n)
            };
            for m in next {
                if seen.insert(m.clone()) {
                    queue.push_back(m.clone());
                }
            }
        }
        seen
    }

    /// Owners of a piece of information (well-formed personal information
    /// has exactly one).
    pub fn owners(&self, info: &str) -> &[ElementId] {
        self.sources(EdgeKind::Own, info)
    }

    /// The owning actor of personal information; `None` for public
    /// information or unowned personal information.
    pub fn owner_of(&self, info: &str) -> Result<Option<ElementId>, QueryError> {
        match self.require(info)? {
            NodeType::Element(ElementKind::PersonalInformation) => {
                Ok(self.owners(info).first().cloned())
            }
            NodeType::Element(ElementKind::PublicInformation) => Ok(None),
            _ => Err(QueryError::NotInformation(ElementId::new(info))),
        }
    }

    /// `(type, information)` pairs an actor may use: permissions it holds,
    /// permissions held by any role in its closure, and every type over the
    /// information it owns.
    pub fn effective_permissions(
        &self,
        actor: &str,
    ) -> Result<BTreeSet<(PermissionType, ElementId)>, QueryError> {
        self.effective_permissions_with(actor, false)
    }

    /// As [`ModelGraph::effective_permissions`]; with `parts_inherit` every
    /// permission over a composite also covers its transitive parts.
    pub fn effective_permissions_with(
        &self,
        actor: &str,
        parts_inherit: bool,
    ) -> Result<BTreeSet<(PermissionType, ElementId)>, QueryError> {
        let closure = self.role_closure(actor)?;
        let mut out = BTreeSet::new();
        let holders = std::iter::once(actor).chain(closure.iter().map(ElementId::as_str));
        for holder in holders {
            for p in self.permissions_held_by(holder) {
                out.insert((p.permission_type, p.over.clone()));
            }
        }
        if parts_inherit {
            let grants: Vec<_> = out.iter().cloned().collect();
            for (t, info) in grants {
                for part in self.reach(EdgeKind::PartOf, vec![info], false) {
                    out.insert((t, part));
                }
            }
        }
        // Ownership is per piece of information: each part has its own
        // owner, so owned grants are added after part inheritance.
        for info in self.targets(EdgeKind::Own, actor) {
            for t in UseType::ALL {
                out.insert((t, info.clone()));
            }
        }
        Ok(out)
    }
}
