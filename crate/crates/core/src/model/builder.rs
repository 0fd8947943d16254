use std::collections::{HashMap, HashSet};

use super::graph::ModelGraph;
use super::id::ElementId;
use super::kinds::*;
use super::records::*;
use crate::diagnostic::{normalize, DiagCode, Diagnostic, SourceSpan};

/// Where a staged item was declared: the statement span plus the spans of
/// the identifiers it references, so resolution errors can point at the
/// offending reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub span: SourceSpan,
    pub refs: Vec<(ElementId, SourceSpan)>,
}

impl Origin {
    pub fn new(span: SourceSpan) -> Self {
        Self { span, refs: Vec::new() }
    }

    fn span_of(&self, id: &ElementId) -> &SourceSpan {
        self.refs
            .iter()
            .find(|(r, _)| r == id)
            .map(|(_, s)| s)
            .unwrap_or(&self.span)
    }
}

/// Stages elements, edges and records, then validates them all at once in
/// [`ModelBuilder::finalize`].
#[derive(Debug, Default)]
pub struct ModelBuilder {
    name: Option<String>,
    origin: Option<Origin>,
    elements: Vec<(Element, Option<Origin>)>,
    edges: Vec<(Edge, Option<Origin>)>,
    records: Vec<(Record, Option<Origin>)>,
}

impl ModelBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn name(&mut self, name: impl Into<String>) -> &mut Self {
        self.name = Some(name.into());
        self
    }

    /// Origin attached to everything staged until the next call.
    pub fn set_origin(&mut self, origin: Option<Origin>) -> &mut Self {
        self.origin = origin;
        self
    }

    pub fn add_element(&mut self, element: Element) -> &mut Self {
        self.elements.push((element, self.origin.clone()));
        self
    }

    pub fn add_edge(&mut self, edge: Edge) -> &mut Self {
        self.edges.push((edge, self.origin.clone()));
        self
    }

    pub fn add_record(&mut self, record: impl Into<Record>) -> &mut Self {
        self.records.push((record.into(), self.origin.clone()));
        self
    }

    /// Validates the staged model. On failure every diagnostic found is
    /// returned, sorted; the graph and the diagnostics are never both
    /// produced.
    pub fn finalize(self) -> Result<ModelGraph, Vec<Diagnostic>> {
        let mut diags = Vec::new();
        let mut graph = ModelGraph {
            name: self.name,
            ..ModelGraph::default()
        };
        let mut first_decl: HashMap<ElementId, Option<SourceSpan>> = HashMap::new();

        let mut declare = |id: &ElementId,
                           ty: NodeType,
                           origin: &Option<Origin>,
                           graph: &mut ModelGraph,
                           diags: &mut Vec<Diagnostic>|
         -> bool {
            let span = origin.as_ref().map(|o| o.span_of(id).clone());
            if !id.is_valid() {
                diags.push(Diagnostic::error(
                    DiagCode::InvalidIdentifier,
                    span,
                    format!("`{id}` is not a valid identifier"),
                ));
                return false;
            }
            if let Some(prev) = first_decl.get(id) {
                let mut d = Diagnostic::error(
                    DiagCode::DuplicateId,
                    span,
                    format!("`{id}` is already declared"),
                );
                if let Some(prev) = prev {
                    d = d.with_related(prev.clone());
                }
                diags.push(d);
                return false;
            }
            first_decl.insert(id.clone(), span.clone());
            graph.types.insert(id.clone(), ty);
            if let Some(span) = span {
                graph.id_spans.insert(id.clone(), span);
            }
            true
        };

        // Declarations.
        let mut kept_elements = Vec::new();
        for (el, origin) in self.elements {
            if declare(&el.id, NodeType::Element(el.kind), &origin, &mut graph, &mut diags) {
                kept_elements.push((el, origin));
            }
        }
        let mut kept_records = Vec::new();
        for (rec, origin) in self.records {
            let keep = match rec.declares() {
                Some((id, ty)) => {
                    let id = id.clone();
                    declare(&id, ty, &origin, &mut graph, &mut diags)
                }
                None => true,
            };
            if keep {
                kept_records.push((rec, origin));
            }
        }

        // Resolution.
        let unresolved = |id: &ElementId, origin: &Option<Origin>, graph: &ModelGraph| {
            (!graph.types.contains_key(id)).then(|| {
                Diagnostic::error(
                    DiagCode::UnresolvedReference,
                    origin.as_ref().map(|o| o.span_of(id).clone()),
                    format!("`{id}` is not declared"),
                )
            })
        };
        for (edge, origin) in &self.edges {
            diags.extend(unresolved(&edge.source, origin, &graph));
            diags.extend(unresolved(&edge.target, origin, &graph));
        }
        for (rec, origin) in &kept_records {
            for r in rec.references() {
                diags.extend(unresolved(r, origin, &graph));
            }
        }

        // Element attributes and elements whose details live in records.
        let detailed: HashSet<&ElementId> =
            kept_records.iter().filter_map(|(r, _)| r.declares().map(|(id, _)| id)).collect();
        for (el, origin) in &kept_elements {
            let span = origin.as_ref().map(|o| o.span.clone());
            if el.sensitivity.is_some() && el.kind != ElementKind::PersonalInformation {
                diags.push(Diagnostic::error(
                    DiagCode::InvalidAttribute,
                    span.clone(),
                    format!("{} `{}` cannot carry a sensitivity level", el.kind, el.id),
                ));
            }
            if matches!(
                el.kind,
                ElementKind::IntentionalThreat
                    | ElementKind::IncidentalThreat
                    | ElementKind::PrivacyMechanism
                    | ElementKind::PrivacyRequirement
            ) && !detailed.contains(&el.id)
            {
                diags.push(Diagnostic::error(
                    DiagCode::MissingAttribute,
                    span,
                    format!("{} `{}` must be declared with its details", el.kind, el.id),
                ));
            }
        }

        for (rec, origin) in &kept_records {
            if let Record::Threat(t) = rec {
                check_threat(t, origin.as_ref().map(|o| o.span.clone()), &mut diags);
            }
        }

        // Edges: deduplicate, then owner cardinality upper bound.
        let mut seen_edges = HashSet::new();
        for (edge, origin) in self.edges {
            if seen_edges.insert(edge.clone()) {
                graph.edges.push(edge);
                graph.edge_spans.push(origin.map(|o| o.span));
            }
        }
        let mut owners: HashMap<&ElementId, Vec<(&ElementId, Option<&SourceSpan>)>> = HashMap::new();
        for (i, e) in graph.edges.iter().enumerate() {
            if e.relation == EdgeKind::Own {
                owners.entry(&e.target).or_default().push((&e.source, graph.edge_spans[i].as_ref()));
            }
        }
        let mut multi: Vec<_> = owners.into_iter().filter(|(_, o)| o.len() > 1).collect();
        multi.sort_by(|a, b| a.0.cmp(b.0));
        for (info, list) in multi {
            let names: Vec<_> = list.iter().map(|(a, _)| a.as_str()).collect();
            let mut d = Diagnostic::error(
                DiagCode::MultipleOwners,
                list[1].1.cloned(),
                format!("`{info}` has more than one owner: {}", names.join(", ")),
            );
            if let Some(first) = list[0].1 {
                d = d.with_related(first.clone());
            }
            diags.push(d);
        }

        if !diags.is_empty() {
            normalize(&mut diags);
            return Err(diags);
        }

        let mut elements = Vec::new();
        for (el, _) in kept_elements {
            elements.push(el);
        }
        for (rec, origin) in kept_records {
            let span = origin.map(|o| o.span);
            match rec {
                Record::Use(u) => {
                    graph.uses.push(u);
                    graph.use_spans.push(span);
                }
                Record::Impact(i) => {
                    graph.impacts.push(i);
                    graph.impact_spans.push(span);
                }
                Record::Permission(p) => graph.permissions.push(p),
                Record::Provision(p) => graph.provisions.push(p),
                Record::Delegation(d) => graph.delegations.push(d),
                Record::Trust(t) => graph.trusts.push(t),
                Record::Monitor(m) => graph.monitors.push(m),
                Record::Threat(t) => {
                    let mut el = Element::new(t.kind.element_kind(), t.id.clone());
                    el.label = t.label.clone();
                    elements.push(el);
                    graph.threats.push(t);
                }
                Record::Requirement(r) => {
                    let mut el = Element::new(ElementKind::PrivacyRequirement, r.id.clone());
                    el.label = r.label.clone();
                    elements.push(el);
                    graph.requirements.push(r);
                }
                Record::Mechanism(m) => {
                    let mut el = Element::new(ElementKind::PrivacyMechanism, m.id.clone());
                    el.label = m.label.clone();
                    elements.push(el);
                    graph.mechanisms.push(m);
                }
            }
        }
        for el in elements {
            graph.elements.insert(el.id.clone(), el);
        }
        graph.build_indexes();
        Ok(graph)
    }
}

fn check_threat(t: &ThreatRecord, span: Option<SourceSpan>, diags: &mut Vec<Diagnostic>) {
    let mut missing = |what: &str| {
        diags.push(Diagnostic::error(
            DiagCode::MissingAttribute,
            span.clone(),
            format!("threat `{}` has no {what}", t.id),
        ))
    };
    if t.threatens.is_empty() {
        missing("threatened personal information");
    }
    match t.kind {
        ThreatKind::Intentional => {
            if t.actors.is_empty() {
                missing("threat actor");
            }
            if t.methods.is_empty() {
                missing("attack method");
            }
        }
        ThreatKind::Incidental => {
            if t.probability.is_none() {
                missing("probability");
            }
        }
    }
    let mut invalid = |what: &str| {
        diags.push(Diagnostic::error(
            DiagCode::InvalidAttribute,
            span.clone(),
            format!("threat `{}`: {what}", t.id),
        ))
    };
    match t.kind {
        ThreatKind::Intentional if t.probability.is_some() => {
            invalid("intentional threats carry no probability")
        }
        ThreatKind::Incidental if !t.actors.is_empty() || !t.methods.is_empty() => {
            invalid("incidental threats have no threat actor or attack method")
        }
        _ => {}
    }
}
