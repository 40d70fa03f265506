use serde::Serialize;

use super::{NetworkGraph, VertexId};
use crate::error::{Error, Result};

/// Junction vertex of two routes together with its distance along them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Junction {
    pub vertex: VertexId,
    pub distance: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SourceReceiverSets {
    pub sources: Vec<VertexId>,
    pub receivers: Vec<VertexId>,
}

/// Sum of edge weights along the route from `b` to `b2`.
pub fn path_length(graph: &NetworkGraph, b: &str, b2: &str) -> Result<f64> {
    path_length_ix(graph, graph.require(b)?, graph.require(b2)?)
}

pub(crate) fn path_length_ix(graph: &NetworkGraph, b: usize, b2: usize) -> Result<f64> {
    let path = route_or_err(graph, b, b2)?;
    prefix_length(graph, b, b2, path, path.len() - 1)
}

fn route_or_err(graph: &NetworkGraph, b: usize, b2: usize) -> Result<&[usize]> {
    match graph.route(b, b2) {
        Some(p) if !p.is_empty() => Ok(p),
        _ => Err(Error::UnknownRoute(
            graph.id(b).to_string(),
            graph.id(b2).to_string(),
        )),
    }
}

/// Length of `path[..=upto]`.
fn prefix_length(
    graph: &NetworkGraph,
    src: usize,
    dst: usize,
    path: &[usize],
    upto: usize,
) -> Result<f64> {
    path[..=upto].windows(2).try_fold(0.0, |acc, hop| {
        graph
            .weight(hop[0], hop[1])
            .map(|w| acc + w)
            .ok_or_else(|| Error::MissingEdge {
                src: graph.id(src).to_string(),
                dst: graph.id(dst).to_string(),
                from: graph.id(hop[0]).to_string(),
                to: graph.id(hop[1]).to_string(),
            })
    })
}

/// Length of `path[from..]`, summed from the far end so that equal suffixes
/// give bit-identical values.
fn suffix_length(
    graph: &NetworkGraph,
    src: usize,
    dst: usize,
    path: &[usize],
    from: usize,
) -> Result<f64> {
    path[from..].windows(2).rev().try_fold(0.0, |acc, hop| {
        graph
            .weight(hop[0], hop[1])
            .map(|w| acc + w)
            .ok_or_else(|| Error::MissingEdge {
                src: graph.id(src).to_string(),
                dst: graph.id(dst).to_string(),
                from: graph.id(hop[0]).to_string(),
                to: graph.id(hop[1]).to_string(),
            })
    })
}

fn distinct_boundary(graph: &NetworkGraph, vs: [usize; 3]) -> Result<()> {
    for &v in &vs {
        if !graph.is_boundary(v) {
            return Err(Error::NotBoundary(graph.id(v).to_string()));
        }
    }
    if vs[0] == vs[1] || vs[0] == vs[2] || vs[1] == vs[2] {
        return Err(Error::InvalidArgument(
            "junction queries need three distinct boundary vertices".into(),
        ));
    }
    Ok(())
}

/// The `(b ≺ b1,b2)`-junction: last vertex of the common prefix of the
/// routes from `b` to `b1` and from `b` to `b2`, with its distance from `b`.
pub fn source_junction(graph: &NetworkGraph, b: &str, b1: &str, b2: &str) -> Result<Junction> {
    let (b, b1, b2) = (graph.require(b)?, graph.require(b1)?, graph.require(b2)?);
    let (v, d) = source_junction_ix(graph, b, b1, b2)?;
    Ok(Junction {
        vertex: graph.id(v).clone(),
        distance: d,
    })
}

pub(crate) fn source_junction_ix(
    graph: &NetworkGraph,
    b: usize,
    b1: usize,
    b2: usize,
) -> Result<(usize, f64)> {
    distinct_boundary(graph, [b, b1, b2])?;
    let p1 = route_or_err(graph, b, b1)?;
    let p2 = route_or_err(graph, b, b2)?;
    let common = p1.iter().zip(p2).take_while(|(x, y)| x == y).count();
    if common == 0 {
        return Err(Error::TreeConsistency(
            format!("{}->{}", graph.id(b), graph.id(b1)),
            format!("{}->{}", graph.id(b), graph.id(b2)),
        ));
    }
    if p1[common..].iter().any(|v| p2[common..].contains(v)) {
        return Err(Error::TreeConsistency(
            format!("{}->{}", graph.id(b), graph.id(b1)),
            format!("{}->{}", graph.id(b), graph.id(b2)),
        ));
    }
    let d = prefix_length(graph, b, b1, p1, common - 1)?;
    Ok((p1[common - 1], d))
}

/// The `(b1,b2 ≻ b)`-junction: first vertex of the common suffix of the
/// routes from `b1` to `b` and from `b2` to `b`, with its distance to `b`.
pub fn receiver_junction(
    graph: &NetworkGraph,
    b1: &str,
    b2: &str,
    b: &str,
) -> Result<Junction> {
    let (b1, b2, b) = (graph.require(b1)?, graph.require(b2)?, graph.require(b)?);
    let (v, d) = receiver_junction_ix(graph, b1, b2, b)?;
    Ok(Junction {
        vertex: graph.id(v).clone(),
        distance: d,
    })
}

pub(crate) fn receiver_junction_ix(
    graph: &NetworkGraph,
    b1: usize,
    b2: usize,
    b: usize,
) -> Result<(usize, f64)> {
    distinct_boundary(graph, [b, b1, b2])?;
    let p1 = route_or_err(graph, b1, b)?;
    let p2 = route_or_err(graph, b2, b)?;
    let common = p1
        .iter()
        .rev()
        .zip(p2.iter().rev())
        .take_while(|(x, y)| x == y)
        .count();
    let violation = || {
        Error::TreeConsistency(
            format!("{}->{}", graph.id(b1), graph.id(b)),
            format!("{}->{}", graph.id(b2), graph.id(b)),
        )
    };
    if common == 0 {
        return Err(violation());
    }
    let rest1 = &p1[..p1.len() - common];
    let rest2 = &p2[..p2.len() - common];
    if rest1.iter().any(|v| rest2.contains(v)) {
        return Err(violation());
    }
    let start = p1.len() - common;
    let d = suffix_length(graph, b1, b, p1, start)?;
    Ok((p1[start], d))
}

/// Sources and receivers of all routes passing through internal vertex `x`.
pub fn source_receiver_sets(graph: &NetworkGraph, x: &str) -> Result<SourceReceiverSets> {
    let xi = graph.require(x)?;
    if graph.is_boundary(xi) {
        return Err(Error::NotInternal(x.to_owned()));
    }
    let mut src = vec![false; graph.vertex_count()];
    let mut rcv = vec![false; graph.vertex_count()];
    for (s, d) in routes_through(graph, xi) {
        src[s] = true;
        rcv[d] = true;
    }
    let collect = |mask: &[bool]| {
        (0..mask.len())
            .filter(|&i| mask[i])
            .map(|i| graph.id(i).clone())
            .collect()
    };
    Ok(SourceReceiverSets {
        sources: collect(&src),
        receivers: collect(&rcv),
    })
}

/// `(src, dst)` of every route containing `x`, in route order.
pub(crate) fn routes_through(graph: &NetworkGraph, x: usize) -> Vec<(usize, usize)> {
    graph
        .routes()
        .iter()
        .filter(|r| r.path.contains(&x))
        .map(|r| (r.src, r.dst))
        .collect()
}

/// Every edge has its reverse and every route is the reversal of the
/// opposite route.
pub fn is_symmetric_routing(graph: &NetworkGraph) -> bool {
    let edges_paired = graph
        .edges()
        .iter()
        .all(|e| graph.weight(e.to, e.from).is_some());
    edges_paired
        && graph.routes().iter().all(|r| match graph.route(r.dst, r.src) {
            Some(back) => back.iter().eq(r.path.iter().rev()),
            None => false,
        })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrawOutReport {
    /// Boundary vertex -> the new internal vertex that took over its edges.
    pub mapping: Vec<(VertexId, VertexId)>,
    pub leaf_weight: f64,
}

/// Moves every boundary vertex that sits in the interior of some route out
/// into a leaf hanging off a fresh internal vertex.
///
/// The fresh vertex inherits all edges of the boundary vertex; the leaf is
/// joined to it in both directions with `leaf_weight`. Routes starting or
/// ending at a drawn-out vertex get one extra hop, so their lengths grow by
/// `leaf_weight` per drawn-out endpoint.
pub fn draw_out_boundary(
    graph: &NetworkGraph,
    leaf_weight: f64,
) -> Result<(NetworkGraph, DrawOutReport)> {
    if !(leaf_weight > 0.0 && leaf_weight.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "leaf weight must be positive, got {leaf_weight}"
        )));
    }
    let n = graph.vertex_count();
    let mut interior = vec![false; n];
    for r in graph.routes() {
        if r.path.len() > 2 {
            for &v in &r.path[1..r.path.len() - 1] {
                if graph.is_boundary(v) {
                    interior[v] = true;
                }
            }
        }
    }
    let mut report = DrawOutReport {
        mapping: Vec::new(),
        leaf_weight,
    };
    if !interior.iter().any(|&f| f) {
        return Ok((graph.clone(), report));
    }

    let mut out = NetworkGraph::new();
    for v in graph.vertices() {
        out.add_vertex(v.id.clone(), v.boundary)?;
    }
    // proxy[v] = vertex that carries v's edges in the new graph
    let mut proxy: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if interior[v] {
            let mut name = format!("{}~", graph.id(v));
            while out.index_of(&name).is_some() || graph.index_of(&name).is_some() {
                name.push('~');
            }
            let p = out.add_vertex(name.as_str(), false)?;
            proxy[v] = p;
            report.mapping.push((graph.id(v).clone(), VertexId::new(name)));
        }
    }
    for e in graph.edges() {
        out.push_edge(proxy[e.from], proxy[e.to], e.weight);
    }
    for v in 0..n {
        if interior[v] {
            out.push_edge(v, proxy[v], leaf_weight);
            out.push_edge(proxy[v], v, leaf_weight);
        }
    }
    for r in graph.routes() {
        let mut path: Vec<usize> = r.path.iter().map(|&v| proxy[v]).collect();
        if let (Some(&first), Some(&last)) = (r.path.first(), r.path.last()) {
            if interior[first] {
                path.insert(0, first);
            }
            if interior[last] {
                path.push(last);
            }
        }
        out.push_route(r.src, r.dst, path)?;
    }
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::validate;
    use crate::validation::ViolationCode;

    #[test]
    fn triangle_path_length_is_three() {
        let g = fixtures::triangle();
        assert_eq!(path_length(&g, "b1", "b2").unwrap(), 3.0);
    }

    #[test]
    fn single_edge_route_length_is_its_weight() {
        let mut g = NetworkGraph::new();
        g.add_vertex("b", true).unwrap();
        g.add_vertex("c", true).unwrap();
        g.add_edge("b", "c", 0.75).unwrap();
        g.add_edge("c", "b", 2.0).unwrap();
        g.add_route("b", "c", &["b", "c"]).unwrap();
        g.add_route("c", "b", &["c", "b"]).unwrap();
        assert_eq!(path_length(&g, "b", "c").unwrap(), 0.75);
        assert!(matches!(
            path_length(&g, "b", "b"),
            Err(Error::UnknownRoute(..))
        ));
    }

    #[test]
    fn triangle_junctions() {
        let g = fixtures::triangle();
        let j = source_junction(&g, "b1", "b2", "b3").unwrap();
        assert_eq!(j.vertex.as_str(), "x1");
        assert_eq!(j.distance, g.weight_by_id("b1", "x1").unwrap());
        let j = receiver_junction(&g, "b2", "b3", "b1").unwrap();
        assert_eq!(j.vertex.as_str(), "x1");
        assert_eq!(j.distance, g.weight_by_id("x1", "b1").unwrap());
    }

    #[test]
    fn immediate_divergence_gives_root_junction() {
        let g = fixtures::separable_hub();
        // b1 -> b3 leaves via x, b1 -> b5 via the hub
        let j = source_junction(&g, "b1", "b3", "b5").unwrap();
        assert_eq!((j.vertex.as_str(), j.distance), ("b1", 0.0));
        let j = receiver_junction(&g, "b1", "b2", "b3").unwrap();
        assert_eq!((j.vertex.as_str(), j.distance), ("b3", 0.0));
    }

    #[test]
    fn junction_needs_distinct_boundary_vertices() {
        let g = fixtures::triangle();
        assert!(source_junction(&g, "b1", "b2", "b2").is_err());
        assert!(matches!(
            source_junction(&g, "b1", "x2", "b3"),
            Err(Error::NotBoundary(_))
        ));
    }

    #[test]
    fn junction_reports_remeeting_routes() {
        let g = fixtures::diverge_remeet();
        assert!(matches!(
            source_junction(&g, "b", "b1", "b2"),
            Err(Error::TreeConsistency(..))
        ));
    }

    #[test]
    fn separable_vertex_sets() {
        let g = fixtures::separable_hub();
        let s = source_receiver_sets(&g, "x").unwrap();
        let ids = |v: &[VertexId]| v.iter().map(|x| x.as_str().to_owned()).collect::<Vec<_>>();
        assert_eq!(ids(&s.sources), ["b1", "b2"]);
        assert_eq!(ids(&s.receivers), ["b3", "b4", "b5", "b6"]);
        assert!(matches!(
            source_receiver_sets(&g, "b1"),
            Err(Error::NotInternal(_))
        ));
    }

    #[test]
    fn vertex_on_no_route_has_empty_sets() {
        let mut g = fixtures::triangle();
        g.add_vertex("lonely", false).unwrap();
        assert_eq!(
            source_receiver_sets(&g, "lonely").unwrap(),
            SourceReceiverSets::default()
        );
    }

    #[test]
    fn symmetric_routing_detection() {
        assert!(is_symmetric_routing(&fixtures::triangle()));
        let mut g = NetworkGraph::new();
        for (id, b) in [("b", true), ("c", true), ("x", false), ("y", false)] {
            g.add_vertex(id, b).unwrap();
        }
        for (u, v) in [("b", "x"), ("x", "c"), ("c", "y"), ("y", "b")] {
            g.add_edge(u, v, 1.0).unwrap();
            g.add_edge(v, u, 1.0).unwrap();
        }
        g.add_route("b", "c", &["b", "x", "c"]).unwrap();
        g.add_route("c", "b", &["c", "y", "b"]).unwrap();
        assert!(!is_symmetric_routing(&g));
    }

    #[test]
    fn draw_out_square() {
        let g = fixtures::square_through_boundary();
        assert!(validate(&g).has(ViolationCode::InteriorBoundaryVertex));
        let (out, report) = draw_out_boundary(&g, 1.0).unwrap();
        let r = validate(&out);
        assert!(r.valid, "{r:#?}");
        assert_eq!(report.mapping.len(), 2);
        assert!(report
            .mapping
            .iter()
            .any(|(b, p)| b.as_str() == "b2" && p.as_str() == "b2~"));
        // b1 -> b3 now crosses the proxy of b2
        assert_eq!(
            out.route_ids("b1", "b3").unwrap(),
            ["b1", "b1~", "b2~", "b3"]
        );
        assert_eq!(
            path_length(&out, "b1", "b3").unwrap(),
            path_length(&g, "b1", "b3").unwrap() + 1.0
        );
    }

    #[test]
    fn draw_out_is_identity_on_normal_form() {
        let g = fixtures::triangle();
        let (out, report) = draw_out_boundary(&g, 1.0).unwrap();
        assert_eq!(out, g);
        assert!(report.mapping.is_empty());
    }
}
