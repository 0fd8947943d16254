use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::model::{EdgeKind, ElementId, ElementKind, ModelGraph, PermissionType};

/// Derived facts shared by several checks, computed once per run.
pub struct Context<'g> {
    graph: &'g ModelGraph,
    pursuers: HashMap<ElementId, BTreeSet<ElementId>>,
    permissions: HashMap<ElementId, BTreeSet<(PermissionType, ElementId)>>,
}

static EMPTY_ACTORS: BTreeSet<ElementId> = BTreeSet::new();

impl<'g> Context<'g> {
    pub fn new(graph: &'g ModelGraph, parts_inherit: bool) -> Self {
        let pursuers = graph
            .ids_of_kind(ElementKind::Goal)
            .iter()
            .map(|g| (g.clone(), pursuers_of(graph, g)))
            .collect();
        let permissions = [ElementKind::Agent, ElementKind::Role]
            .iter()
            .flat_map(|k| graph.ids_of_kind(*k))
            .map(|a| {
                let perms = graph
                    .effective_permissions_with(a, parts_inherit)
                    .expect("actor ids come from the graph");
                (a.clone(), perms)
            })
            .collect();
        Self { graph, pursuers, permissions }
    }

    pub fn graph(&self) -> &'g ModelGraph {
        self.graph
    }

    /// Actors pursuing a goal: those aiming at it or at any goal it was
    /// decomposed from.
    pub fn pursuers(&self, goal: &str) -> &BTreeSet<ElementId> {
        self.pursuers.get(goal).unwrap_or(&EMPTY_ACTORS)
    }

    pub fn may_use(&self, actor: &str, use_type: PermissionType, info: &ElementId) -> bool {
        self.permissions
            .get(actor)
            .is_some_and(|p| p.contains(&(use_type, info.clone())))
    }

    pub fn is_owner(&self, actor: &str, info: &str) -> bool {
        self.graph.owners(info).iter().any(|o| o.as_str() == actor)
    }
}

fn pursuers_of(graph: &ModelGraph, goal: &ElementId) -> BTreeSet<ElementId> {
    let mut seen = BTreeSet::from([goal.clone()]);
    let mut queue = VecDeque::from([goal.clone()]);
    let mut actors = BTreeSet::new();
    while let Some(g) = queue.pop_front() {
        actors.extend(graph.sources(EdgeKind::Aims, &g).iter().cloned());
        for rel in [EdgeKind::AndDecomposed, EdgeKind::OrDecomposed] {
            for parent in graph.sources(rel, &g) {
                if seen.insert(parent.clone()) {
                    queue.push_back(parent.clone());
                }
            }
        }
    }
    actors
}
