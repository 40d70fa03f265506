use std::collections::HashSet;

use super::NetworkGraph;
use crate::validation::{ValidationReport, ViolationCode};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Check tree consistency on every pair of routes instead of only the
    /// pairs that share a source or a receiver.
    pub strict_tree_consistency: bool,
}

pub fn validate(graph: &NetworkGraph) -> ValidationReport {
    validate_with(graph, ValidationOptions::default())
}

pub fn validate_with(graph: &NetworkGraph, opts: ValidationOptions) -> ValidationReport {
    let mut report = ValidationReport::new();
    let name = |i: usize| graph.id(i).to_string();

    let mut seen = HashSet::new();
    for e in graph.edges() {
        if e.from == e.to {
            report.push(
                ViolationCode::SelfLoop,
                format!("self-loop at {}", name(e.from)),
                vec![name(e.from)],
            );
        }
        if !seen.insert((e.from, e.to)) {
            report.push(
                ViolationCode::MultiEdge,
                format!("more than one edge {} -> {}", name(e.from), name(e.to)),
                vec![name(e.from), name(e.to)],
            );
        }
        if !(e.weight > 0.0 && e.weight.is_finite()) {
            report.push(
                ViolationCode::NonpositiveWeight,
                format!("edge {} -> {} has weight {}", name(e.from), name(e.to), e.weight),
                vec![name(e.from), name(e.to)],
            );
        }
    }

    let boundary = graph.boundary();
    for &b in &boundary {
        for &c in &boundary {
            if b != c && graph.route(b, c).is_none() {
                report.push(
                    ViolationCode::MissingRoute,
                    format!("no route {} -> {}", name(b), name(c)),
                    vec![name(b), name(c)],
                );
            }
        }
    }

    for r in graph.routes() {
        let ends = vec![name(r.src), name(r.dst)];
        let endpoints_ok = r.src != r.dst
            && graph.is_boundary(r.src)
            && graph.is_boundary(r.dst)
            && r.path.first() == Some(&r.src)
            && r.path.last() == Some(&r.dst);
        if !endpoints_ok {
            report.push(
                ViolationCode::RouteEndpointMismatch,
                format!(
                    "route {} -> {} must run between two distinct boundary vertices",
                    ends[0], ends[1]
                ),
                ends.clone(),
            );
        }
        let mut on_path = HashSet::new();
        if !r.path.iter().all(|v| on_path.insert(*v)) {
            report.push(
                ViolationCode::NonSimpleRoute,
                format!("route {} -> {} repeats a vertex", ends[0], ends[1]),
                ends.clone(),
            );
        }
        for hop in r.path.windows(2) {
            if graph.weight(hop[0], hop[1]).is_none() {
                report.push(
                    ViolationCode::RouteNotOnEdges,
                    format!(
                        "route {} -> {} uses missing edge {} -> {}",
                        ends[0],
                        ends[1],
                        name(hop[0]),
                        name(hop[1])
                    ),
                    vec![ends[0].clone(), ends[1].clone(), name(hop[0]), name(hop[1])],
                );
            }
        }
        if r.path.len() > 2 {
            for &v in &r.path[1..r.path.len() - 1] {
                if graph.is_boundary(v) {
                    report.push(
                        ViolationCode::InteriorBoundaryVertex,
                        format!(
                            "route {} -> {} passes through boundary vertex {}",
                            ends[0],
                            ends[1],
                            name(v)
                        ),
                        vec![ends[0].clone(), ends[1].clone(), name(v)],
                    );
                }
            }
        }
    }

    let routes = graph.routes();
    for (i, r1) in routes.iter().enumerate() {
        for r2 in &routes[i + 1..] {
            let shares_end = r1.src == r2.src || r1.dst == r2.dst;
            if !(shares_end || opts.strict_tree_consistency) {
                continue;
            }
            if !tree_consistent(&r1.path, &r2.path) {
                report.push(
                    ViolationCode::TreeConsistencyViolation,
                    format!(
                        "routes {} -> {} and {} -> {} meet again after diverging",
                        name(r1.src),
                        name(r1.dst),
                        name(r2.src),
                        name(r2.dst)
                    ),
                    vec![name(r1.src), name(r1.dst), name(r2.src), name(r2.dst)],
                );
            }
        }
    }

    report
}

/// Two routes are consistent when every pair of shared vertices that occurs
/// in the same order on both routes is joined by the same subpath on both.
pub(crate) fn tree_consistent(p1: &[usize], p2: &[usize]) -> bool {
    let shared: Vec<(usize, usize)> = p1
        .iter()
        .enumerate()
        .filter_map(|(i, v)| p2.iter().position(|w| w == v).map(|j| (i, j)))
        .collect();
    for (k, &(i1, j1)) in shared.iter().enumerate() {
        for &(i2, j2) in &shared[k + 1..] {
            if j2 > j1 && p1[i1..=i2] != p2[j1..=j2] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn consistency_of_sequences() {
        assert!(tree_consistent(&[0, 1, 2, 3], &[0, 1, 4, 5]));
        assert!(!tree_consistent(&[0, 1, 2, 3], &[0, 4, 2, 5]));
        // opposite traversal direction is not constrained
        assert!(tree_consistent(&[0, 1, 2, 3], &[3, 4, 0]));
        assert!(!tree_consistent(&[0, 1, 2, 3], &[0, 2, 1, 4]));
    }

    #[test]
    fn minimal_single_route_graph_is_valid() {
        let mut g = NetworkGraph::new();
        g.add_vertex("b", true).unwrap();
        g.add_vertex("x", false).unwrap();
        g.add_vertex("c", true).unwrap();
        g.add_edge("b", "x", 1.0).unwrap();
        g.add_edge("x", "c", 1.0).unwrap();
        g.add_edge("c", "b", 1.0).unwrap();
        g.add_route("b", "c", &["b", "x", "c"]).unwrap();
        g.add_route("c", "b", &["c", "b"]).unwrap();
        let r = validate(&g);
        assert!(r.valid, "{r:?}");
    }

    #[test]
    fn diverge_and_remeet_is_reported() {
        let r = validate(&fixtures::diverge_remeet());
        assert!(!r.valid);
        let tc: Vec<_> = r
            .violations
            .iter()
            .filter(|v| v.code == ViolationCode::TreeConsistencyViolation)
            .collect();
        assert!(tc
            .iter()
            .any(|v| v.items == ["b", "b1", "b", "b2"]));
    }

    #[test]
    fn every_structural_code_fires() {
        let mut g = NetworkGraph::new();
        for (id, b) in [("a", true), ("b", true), ("c", true), ("x", false)] {
            g.add_vertex(id, b).unwrap();
        }
        g.add_edge("a", "a", 1.0).unwrap();
        g.add_edge("a", "x", 1.0).unwrap();
        g.add_edge("a", "x", 2.0).unwrap();
        g.add_edge("x", "b", 0.0).unwrap();
        g.add_edge("b", "c", 1.0).unwrap();
        g.add_route("a", "b", &["a", "x", "b"]).unwrap();
        g.add_route("a", "c", &["a", "x", "b", "c"]).unwrap();
        g.add_route("b", "a", &["b", "x", "b", "a"]).unwrap();
        g.add_route("c", "a", &["c", "b"]).unwrap();
        let r = validate(&g);
        for code in [
            ViolationCode::SelfLoop,
            ViolationCode::MultiEdge,
            ViolationCode::NonpositiveWeight,
            ViolationCode::MissingRoute,
            ViolationCode::RouteEndpointMismatch,
            ViolationCode::NonSimpleRoute,
            ViolationCode::RouteNotOnEdges,
            ViolationCode::InteriorBoundaryVertex,
        ] {
            assert!(r.has(code), "missing {code}: {r:#?}");
        }
    }

    #[test]
    fn named_fixtures_are_valid() {
        for (name, g) in fixtures::all_valid() {
            let r = validate(&g);
            assert!(r.valid, "{name}: {r:#?}");
        }
    }
}
