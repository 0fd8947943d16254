//! Exhaustive cycle detection against brute-force reachability.

use std::collections::BTreeSet;

use copri_core::model::*;
use copri_core::wellformed::{check_cycles, hierarchy_cycles, Hierarchy};

/// Every node that reaches itself, grouped by mutual reachability.
pub fn brute_force_cycles(n: usize, edges: &[(usize, usize)]) -> BTreeSet<BTreeSet<usize>> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n)
        .filter(|&i| reach[i][i])
        .map(|i| (0..n).filter(|&j| reach[i][j] && reach[j][i]).collect())
        .collect()
}

/// Runs cycle detection on every subset of the `n × n` possible edges of
/// one hierarchy with at most `max_edges` edges; returns how many sets
/// were checked.
pub fn exhaustive(hierarchy: Hierarchy, n: usize, max_edges: u32) -> usize {
    let kind = match hierarchy {
        Hierarchy::IsA => ElementKind::Role,
        Hierarchy::PartOf => ElementKind::PublicInformation,
        Hierarchy::Decomposition => ElementKind::Goal,
    };
    let names: Vec<String> = (0..n).map(|i| format!("N{i}")).collect();
    let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let mut checked = 0;
    for mask in 0u32..(1 << all.len()) {
        if mask.count_ones() > max_edges {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..all.len()).filter(|i| mask & (1 << i) != 0).map(|i| all[i]).collect();
        let mut b = ModelBuilder::new();
        for name in &names {
            b.add_element(Element::new(kind, name.as_str()));
        }
        for (i, &(s, t)) in edges.iter().enumerate() {
            let rel = match hierarchy {
                Hierarchy::IsA => EdgeKind::IsA,
                Hierarchy::PartOf => EdgeKind::PartOf,
                // Mixed and/or edges form one hierarchy.
                Hierarchy::Decomposition if i % 2 == 0 => EdgeKind::AndDecomposed,
                Hierarchy::Decomposition => EdgeKind::OrDecomposed,
            };
            b.add_edge(Edge::new(rel, names[s].as_str(), names[t].as_str()));
        }
        let g = b.finalize().unwrap();
        let found: BTreeSet<BTreeSet<usize>> = hierarchy_cycles(&g)
            .into_iter()
            .inspect(|c| assert_eq!(c.hierarchy, hierarchy))
            .map(|c| c.members.iter().map(|m| m[1..].parse::<usize>().unwrap()).collect())
            .collect();
        let expected = brute_force_cycles(n, &edges);
        assert_eq!(found, expected, "{hierarchy} edges {edges:?}");
        assert_eq!(check_cycles(&g).len(), expected.len(), "one diagnostic per cycle: {edges:?}");
        checked += 1;
    }
    checked
}
