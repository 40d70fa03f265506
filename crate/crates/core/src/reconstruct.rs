//! Reconstruction of a network graph from its path correlation data.
//!
//! Every ordered pair of boundary vertices keeps a reconstructed path: a list
//! of `(vertex, distance from the source)` entries, initially just the two
//! endpoints. Each ordered triple `(b1, b2, b3)` places the junction of the
//! routes from `b1` (and towards `b1`) on the matching paths; a placement is
//! propagated to every other path that provably passes through the same
//! vertex. The graph is finally read off consecutive entries.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{NetworkGraph, VertexId};
use crate::pcd::{validate_pcd, PathCorrelationData};

/// A fresh internal vertex created during reconstruction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Label {
    pub id: VertexId,
    /// The ordered boundary triple whose top-level step created the label.
    pub origin: [VertexId; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathEntry {
    pub vertex: VertexId,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructedPath {
    pub src: VertexId,
    pub dst: VertexId,
    pub entries: Vec<PathEntry>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ReconstructionStats {
    pub labels_created: usize,
    /// Labels a non-lazy implementation would have created and never used.
    pub labels_discarded: usize,
    pub insertions: usize,
    pub toplevel_calls: usize,
}

#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub graph: NetworkGraph,
    pub paths: Vec<ReconstructedPath>,
    pub labels: Vec<Label>,
    pub stats: ReconstructionStats,
}

impl ReconstructionResult {
    pub fn path(&self, src: &str, dst: &str) -> Option<&ReconstructedPath> {
        self.paths
            .iter()
            .find(|p| p.src.as_str() == src && p.dst.as_str() == dst)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructOptions {
    pub epsilon: f64,
    /// Order in which ordered boundary triples (as boundary indices) are
    /// processed. Defaults to lexicographic order.
    pub triple_order: Option<Vec<(usize, usize, usize)>>,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self {
            epsilon: crate::DEFAULT_EPSILON,
            triple_order: None,
        }
    }
}

/// General reconstruction. With `symmetric_routing` the label placed on the
/// route from `b1` to `b2` is reused for the reverse route.
pub fn reconstruct(pcd: &PathCorrelationData, symmetric_routing: bool) -> Result<ReconstructionResult> {
    reconstruct_with(pcd, symmetric_routing, &ReconstructOptions::default())
}

pub fn reconstruct_with(
    pcd: &PathCorrelationData,
    symmetric_routing: bool,
    opts: &ReconstructOptions,
) -> Result<ReconstructionResult> {
    let triples = prepare(pcd, opts)?;
    let mut st = State::new(pcd, opts.epsilon);
    for &(b1, b2, b3) in &triples {
        let mut label = Slot::new([b1, b2, b3]);
        st.stats.toplevel_calls += 1;
        st.update_path(b1, b2, &mut label, pcd.src(b1, b2, b3));
        if !symmetric_routing {
            label = Slot::new([b1, b2, b3]);
        }
        st.stats.toplevel_calls += 1;
        st.update_path(b2, b1, &mut label, pcd.len(b2, b1) - pcd.rcv(b2, b3, b1));
    }
    let per_triple = if symmetric_routing { 1 } else { 2 };
    st.finish(triples.len() * per_triple)
}

/// Reconstruction specialized to symmetric routing: every placement is made
/// on a route and on its reverse at once.
pub fn reconstruct_symmetric(pcd: &PathCorrelationData) -> Result<ReconstructionResult> {
    reconstruct_symmetric_with(pcd, &ReconstructOptions::default())
}

pub fn reconstruct_symmetric_with(
    pcd: &PathCorrelationData,
    opts: &ReconstructOptions,
) -> Result<ReconstructionResult> {
    let triples = prepare(pcd, opts)?;
    let mut st = State::new(pcd, opts.epsilon);
    for &(b1, b2, b3) in &triples {
        let mut label = Slot::new([b1, b2, b3]);
        st.stats.toplevel_calls += 1;
        st.update_path_mirrored(b1, b2, &mut label, pcd.src(b1, b2, b3), pcd.rcv(b2, b3, b1))?;
    }
    st.finish(triples.len())
}

fn prepare(pcd: &PathCorrelationData, opts: &ReconstructOptions) -> Result<Vec<(usize, usize, usize)>> {
    let report = validate_pcd(pcd, opts.epsilon);
    if !report.valid {
        return Err(Error::InvalidPcd(report));
    }
    match &opts.triple_order {
        None => Ok(pcd.ordered_triples()),
        Some(order) => {
            let n = pcd.n();
            let expected = n * n.saturating_sub(1) * n.saturating_sub(2);
            let distinct: HashSet<_> = order.iter().collect();
            let ok = order.len() == expected
                && distinct.len() == expected
                && order
                    .iter()
                    .all(|&(a, b, c)| a < n && b < n && c < n && a != b && a != c && b != c);
            if !ok {
                return Err(Error::InvalidArgument(
                    "triple order must list every ordered triple of distinct boundary vertices once".into(),
                ));
            }
            Ok(order.clone())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Boundary(usize),
    Label(usize),
}

/// Label of one top-level step, materialized on first insertion.
struct Slot {
    origin: [usize; 3],
    label: Option<usize>,
}

impl Slot {
    fn new(origin: [usize; 3]) -> Self {
        Self { origin, label: None }
    }
}

struct State<'a> {
    pcd: &'a PathCorrelationData,
    eps: f64,
    n: usize,
    /// `paths[u * n + v]`, sorted by distance.
    paths: Vec<Vec<(Node, f64)>>,
    origins: Vec<[usize; 3]>,
    stats: ReconstructionStats,
}

impl<'a> State<'a> {
    fn new(pcd: &'a PathCorrelationData, eps: f64) -> Self {
        let n = pcd.n();
        let mut paths = vec![Vec::new(); n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    paths[u * n + v] = vec![(Node::Boundary(u), 0.0), (Node::Boundary(v), pcd.len(u, v))];
                }
            }
        }
        Self {
            pcd,
            eps,
            n,
            paths,
            origins: Vec::new(),
            stats: ReconstructionStats::default(),
        }
    }

    /// Entry of `R(u, v)` within ε of distance `d`, or the insertion point.
    fn lookup(&self, u: usize, v: usize, d: f64) -> std::result::Result<Node, usize> {
        let path = &self.paths[u * self.n + v];
        let at = path.partition_point(|&(_, x)| x < d - self.eps);
        match path.get(at) {
            Some(&(node, x)) if x <= d + self.eps => Ok(node),
            _ => Err(at),
        }
    }

    fn label(&mut self, slot: &mut Slot) -> Node {
        let id = *slot.label.get_or_insert_with(|| {
            self.origins.push(slot.origin);
            self.origins.len() - 1
        });
        Node::Label(id)
    }

    fn insert(&mut self, u: usize, v: usize, at: usize, node: Node, d: f64) {
        self.paths[u * self.n + v].insert(at, (node, d));
        self.stats.insertions += 1;
    }

    fn update_path(&mut self, u: usize, v: usize, slot: &mut Slot, delta: f64) {
        let pcd = self.pcd;
        let mut work = vec![(u, v, delta)];
        while let Some((u, v, delta)) = work.pop() {
            let Err(at) = self.lookup(u, v, delta) else { continue };
            let node = self.label(slot);
            self.insert(u, v, at, node, delta);
            let to_end = pcd.len(u, v) - delta;
            for z in 0..self.n {
                if z == u || z == v {
                    continue;
                }
                if pcd.src(u, v, z) >= delta - self.eps {
                    work.push((u, z, delta));
                }
                if pcd.rcv(u, z, v) >= to_end - self.eps {
                    work.push((z, v, pcd.len(z, v) - to_end));
                }
            }
        }
    }

    /// `delta` is the distance from `u` along `R(u, v)`, `back` the distance
    /// to `u` along `R(v, u)`.
    fn update_path_mirrored(&mut self, u: usize, v: usize, slot: &mut Slot, delta: f64, back: f64) -> Result<()> {
        let pcd = self.pcd;
        let mut work = vec![(u, v, delta, back)];
        while let Some((u, v, delta, back)) = work.pop() {
            let Err(at) = self.lookup(u, v, delta) else { continue };
            let node = self.label(slot);
            self.insert(u, v, at, node, delta);
            let gamma = pcd.len(v, u) - back;
            match self.lookup(v, u, gamma) {
                Err(at) => self.insert(v, u, at, node, gamma),
                Ok(existing) if existing == node => {}
                Ok(_) => {
                    return Err(Error::InconsistentPcd(format!(
                        "route {} -> {} already has a vertex at {gamma} that is absent from the reverse route",
                        pcd.boundary()[v],
                        pcd.boundary()[u]
                    )))
                }
            }
            for z in 0..self.n {
                if z == u || z == v {
                    continue;
                }
                if pcd.src(u, v, z) >= delta - self.eps {
                    work.push((u, z, delta, back));
                }
                if pcd.src(v, u, z) >= gamma - self.eps {
                    work.push((v, z, gamma, pcd.len(u, v) - delta));
                }
            }
        }
        Ok(())
    }

    fn finish(self, would_create: usize) -> Result<ReconstructionResult> {
        let boundary = self.pcd.boundary();
        let taken: HashSet<&str> = boundary.iter().map(VertexId::as_str).collect();
        let mut names = Vec::with_capacity(self.origins.len());
        for k in 1..=self.origins.len() {
            let mut name = format!("a{k}");
            while taken.contains(name.as_str()) {
                name.push('\'');
            }
            names.push(VertexId::new(name));
        }
        let labels = self
            .origins
            .iter()
            .zip(&names)
            .map(|(o, id)| Label {
                id: id.clone(),
                origin: o.map(|b| boundary[b].clone()),
            })
            .collect();
        let name = |node: Node| match node {
            Node::Boundary(b) => boundary[b].clone(),
            Node::Label(l) => names[l].clone(),
        };
        let mut paths = Vec::with_capacity(self.n * self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v {
                    paths.push(ReconstructedPath {
                        src: boundary[u].clone(),
                        dst: boundary[v].clone(),
                        entries: self.paths[u * self.n + v]
                            .iter()
                            .map(|&(node, distance)| PathEntry { vertex: name(node), distance })
                            .collect(),
                    });
                }
            }
        }
        let graph = read_off(boundary, &names, &paths, self.eps)?;
        let mut stats = self.stats;
        stats.labels_created = self.origins.len();
        stats.labels_discarded = would_create - stats.labels_created;
        Ok(ReconstructionResult {
            graph,
            paths,
            labels,
            stats,
        })
    }
}

/// Builds the graph whose edges join consecutive entries of the given paths.
/// Boundary vertices are the path endpoints, all other entries are internal;
/// both are ordered by first appearance.
pub fn read_off_graph(paths: &[ReconstructedPath], eps: f64) -> Result<NetworkGraph> {
    let mut boundary: Vec<VertexId> = Vec::new();
    for p in paths {
        for b in [&p.src, &p.dst] {
            if !boundary.contains(b) {
                boundary.push(b.clone());
            }
        }
    }
    let mut internal: Vec<VertexId> = Vec::new();
    for p in paths {
        for e in &p.entries {
            if !boundary.contains(&e.vertex) && !internal.contains(&e.vertex) {
                internal.push(e.vertex.clone());
            }
        }
    }
    read_off(&boundary, &internal, paths, eps)
}

fn read_off(
    boundary: &[VertexId],
    internal: &[VertexId],
    paths: &[ReconstructedPath],
    eps: f64,
) -> Result<NetworkGraph> {
    let mut g = NetworkGraph::new();
    for b in boundary {
        g.add_vertex(b.clone(), true)?;
    }
    for x in internal {
        g.add_vertex(x.clone(), false)?;
    }
    let mut edges: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut routes = Vec::with_capacity(paths.len());
    for p in paths {
        let malformed = |why: String| {
            Error::InconsistentPcd(format!("reconstructed path {} -> {} {why}", p.src, p.dst))
        };
        let ends_ok = p.entries.len() >= 2
            && p.entries[0].vertex == p.src
            && p.entries[0].distance == 0.0
            && p.entries[p.entries.len() - 1].vertex == p.dst;
        if !ends_ok {
            return Err(malformed("does not run between its endpoints".into()));
        }
        let mut seen = HashSet::new();
        let mut path = Vec::with_capacity(p.entries.len());
        for e in &p.entries {
            if !seen.insert(&e.vertex) {
                return Err(malformed(format!("visits {} twice", e.vertex)));
            }
            path.push(g.require(e.vertex.as_str())?);
        }
        for (k, hop) in p.entries.windows(2).enumerate() {
            let w = hop[1].distance - hop[0].distance;
            if w.is_nan() || w <= 0.0 {
                return Err(malformed(format!(
                    "has non-increasing distances at {} and {}",
                    hop[0].vertex, hop[1].vertex
                )));
            }
            let key = (path[k], path[k + 1]);
            match edges.get(&key) {
                Some(&first) if (first - w).abs() > eps => {
                    return Err(Error::WeightConflict {
                        from: hop[0].vertex.to_string(),
                        to: hop[1].vertex.to_string(),
                        first,
                        second: w,
                    })
                }
                Some(_) => {}
                None => {
                    edges.insert(key, w);
                }
            }
        }
        routes.push((path[0], path[path.len() - 1], path));
    }
    for ((u, v), w) in edges {
        g.push_edge(u, v, w);
    }
    for (s, d, path) in routes {
        g.push_route(s, d, path)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::validate;
    use crate::pcd::measure;
    use crate::verify::boundary_anchored_isomorphic;
    use crate::DEFAULT_EPSILON as EPS;

    #[test]
    fn triangle_without_symmetry_needs_six_vertices() {
        let r = reconstruct(&measure(&fixtures::triangle()).unwrap(), false).unwrap();
        assert_eq!(r.graph.internal_count(), 6);
        assert_eq!(r.graph.edge_count(), 12);
        assert!(validate(&r.graph).valid);
    }

    #[test]
    fn triangle_with_symmetry_is_recovered() {
        let g = fixtures::triangle();
        let r = reconstruct(&measure(&g).unwrap(), true).unwrap();
        assert_eq!(r.graph.internal_count(), 3);
        assert!(boundary_anchored_isomorphic(&g, &r.graph, EPS).is_some());
    }

    #[test]
    fn two_sites_give_direct_edges() {
        let r = reconstruct(&measure(&fixtures::relay_through_trivial()).unwrap(), false).unwrap();
        assert!(boundary_anchored_isomorphic(&fixtures::relay_direct(), &r.graph, EPS).is_some());
        assert_eq!(r.stats, ReconstructionStats::default());
    }

    #[test]
    fn separable_router_is_split() {
        let g = fixtures::separable_hub();
        let r = reconstruct(&measure(&g).unwrap(), false).unwrap();
        // both copies of x are relays and fold away, leaving y, z and h
        assert_eq!(r.graph.internal_count(), 3);
        let (c, _) = crate::compliance::clean(&g, false).unwrap();
        assert!(boundary_anchored_isomorphic(&c, &r.graph, EPS).is_some());
    }

    #[test]
    fn stats_count_lazy_labels() {
        let r = reconstruct(&measure(&fixtures::triangle()).unwrap(), false).unwrap();
        assert_eq!(r.stats.toplevel_calls, 12);
        assert_eq!(r.stats.labels_created, 6);
        assert_eq!(r.stats.labels_discarded, 6);
        // every label sits on exactly two of the six paths
        assert_eq!(r.stats.insertions, 12);
        let s = reconstruct_symmetric(&measure(&fixtures::triangle()).unwrap()).unwrap();
        assert_eq!(s.stats.toplevel_calls, 6);
        assert_eq!(s.stats.labels_created, 3);
    }

    #[test]
    fn placements_follow_the_true_distances() {
        let g = fixtures::star();
        let r = reconstruct(&measure(&g).unwrap(), false).unwrap();
        let p = r.path("u", "v").unwrap();
        let d: Vec<f64> = p.entries.iter().map(|e| e.distance).collect();
        assert_eq!(d, [0.0, 1.0, 3.5]);
    }

    #[test]
    fn specialized_matches_general() {
        for g in [fixtures::triangle(), fixtures::triangle_weighted(|u, v| if u < v { 1.0 } else { 2.0 })] {
            let p = measure(&g).unwrap();
            let a = reconstruct(&p, true).unwrap();
            let b = reconstruct_symmetric(&p).unwrap();
            assert!(boundary_anchored_isomorphic(&a.graph, &b.graph, EPS).is_some());
            assert_eq!(2 * b.stats.toplevel_calls, a.stats.toplevel_calls);
        }
    }

    #[test]
    fn read_off_single_path() {
        let paths = vec![
            ReconstructedPath {
                src: "u".into(),
                dst: "w".into(),
                entries: vec![
                    PathEntry { vertex: "u".into(), distance: 0.0 },
                    PathEntry { vertex: "w".into(), distance: 2.5 },
                ],
            },
            ReconstructedPath {
                src: "w".into(),
                dst: "u".into(),
                entries: vec![
                    PathEntry { vertex: "w".into(), distance: 0.0 },
                    PathEntry { vertex: "u".into(), distance: 1.0 },
                ],
            },
        ];
        let g = read_off_graph(&paths, EPS).unwrap();
        assert_eq!(g.weight_by_id("u", "w"), Some(2.5));
        assert_eq!(g.route_ids("w", "u").unwrap(), ["w", "u"]);
    }

    #[test]
    fn read_off_detects_weight_conflicts() {
        let entry = |v: &str, d: f64| PathEntry { vertex: v.into(), distance: d };
        let paths = vec![
            ReconstructedPath {
                src: "u".into(),
                dst: "v".into(),
                entries: vec![entry("u", 0.0), entry("x", 1.0), entry("v", 2.0)],
            },
            ReconstructedPath {
                src: "u".into(),
                dst: "w".into(),
                entries: vec![entry("u", 0.0), entry("x", 1.5), entry("w", 2.0)],
            },
        ];
        assert!(matches!(read_off_graph(&paths, EPS), Err(Error::WeightConflict { .. })));
    }

    #[test]
    fn invalid_pcd_is_rejected() {
        let mut p = measure(&fixtures::triangle()).unwrap();
        p.set_src(0, 1, 2, 7.0);
        assert!(matches!(reconstruct(&p, false), Err(Error::InvalidPcd(_))));
    }

    #[test]
    fn triple_order_must_be_a_permutation() {
        let p = measure(&fixtures::triangle()).unwrap();
        let opts = ReconstructOptions {
            triple_order: Some(vec![(0, 1, 2)]),
            ..Default::default()
        };
        assert!(matches!(reconstruct_with(&p, false, &opts), Err(Error::InvalidArgument(_))));
    }
}
