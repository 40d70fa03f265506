//! Compliance predicates and the cleaning pipeline.
//!
//! A graph is compliant when it has no unused edges, no trivial internal
//! vertices and no separable internal vertices. [`clean`] turns any valid
//! graph into a compliant one with the same path correlation data by
//! removing unused edges, splitting separable vertices and merging trivial
//! ones, in that order.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, NetworkGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparabilityPartition {
    pub vertex: VertexId,
    pub symmetric: bool,
    pub source_classes: Vec<Vec<VertexId>>,
    pub receiver_classes: Vec<Vec<VertexId>>,
    /// `(source class, receiver class)` pairs; routes through the vertex
    /// only join paired classes.
    pub pairing: Vec<(usize, usize)>,
}

impl SeparabilityPartition {
    pub fn class_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn is_separable(&self) -> bool {
        self.class_count() >= 2
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CleaningReport {
    pub removed_edges: Vec<(VertexId, VertexId)>,
    pub removed_vertices: Vec<VertexId>,
    pub split_vertices: Vec<(VertexId, Vec<VertexId>)>,
    pub merged_vertices: Vec<VertexId>,
    pub phases: Vec<String>,
}

impl CleaningReport {
    pub fn is_empty(&self) -> bool {
        self.removed_edges.is_empty()
            && self.removed_vertices.is_empty()
            && self.split_vertices.is_empty()
            && self.merged_vertices.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ComplianceReport {
    pub unused_edges: Vec<(VertexId, VertexId)>,
    pub trivial_vertices: Vec<VertexId>,
    pub separable_vertices: Vec<VertexId>,
}

impl ComplianceReport {
    pub fn is_compliant(&self) -> bool {
        self.unused_edges.is_empty() && self.trivial_vertices.is_empty() && self.separable_vertices.is_empty()
    }
}

/// Edges that no route traverses, in edge order.
pub fn unused_edges(graph: &NetworkGraph) -> Vec<(VertexId, VertexId)> {
    let used = used_pairs(graph);
    graph
        .edges()
        .iter()
        .filter(|e| !used.contains(&(e.from, e.to)))
        .map(|e| (graph.id(e.from).clone(), graph.id(e.to).clone()))
        .collect()
}

fn used_pairs(graph: &NetworkGraph) -> BTreeSet<(usize, usize)> {
    graph
        .routes()
        .iter()
        .flat_map(|r| r.path.windows(2).map(|h| (h[0], h[1])))
        .collect()
}

fn check_mode(graph: &NetworkGraph, symmetric: bool) -> Result<()> {
    if symmetric && !graph::is_symmetric_routing(graph) {
        return Err(Error::ModeMismatch);
    }
    Ok(())
}

/// Internal vertices with one incoming and one outgoing edge, or in
/// symmetric mode with at most two neighbours.
pub fn trivial_vertices(graph: &NetworkGraph, symmetric: bool) -> Result<Vec<VertexId>> {
    check_mode(graph, symmetric)?;
    let n = graph.vertex_count();
    let mut ins = vec![0usize; n];
    let mut outs = vec![0usize; n];
    let mut nbrs = vec![BTreeSet::new(); n];
    for e in graph.edges() {
        outs[e.from] += 1;
        ins[e.to] += 1;
        nbrs[e.from].insert(e.to);
        nbrs[e.to].insert(e.from);
    }
    Ok(graph
        .internal()
        .into_iter()
        .filter(|&x| {
            if symmetric {
                nbrs[x].len() <= 2
            } else {
                ins[x] == 1 && outs[x] == 1
            }
        })
        .map(|x| graph.id(x).clone())
        .collect())
}

/// Classes as `(sources, receivers)` index lists, ordered by their smallest
/// source.
fn classes(n: usize, through: &[(usize, usize)], symmetric: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    // sources are 0..n, receivers n..2n; in symmetric mode both sides share
    // the same nodes
    let mut uf = UnionFind::new(2 * n);
    let side = |d: usize| if symmetric { d } else { n + d };
    for &(s, d) in through {
        uf.union(s, side(d));
    }
    let mut by_root: BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    for &(s, d) in through {
        let c = by_root.entry(uf.find(s)).or_default();
        c.0.insert(s);
        c.1.insert(d);
        if symmetric {
            c.0.insert(d);
            c.1.insert(s);
        }
    }
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = by_root
        .into_values()
        .map(|(s, r)| (s.into_iter().collect(), r.into_iter().collect()))
        .collect();
    out.sort_by_key(|c| c.0[0]);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Finest partition of the routes through `x` into groups that share no
/// source and no receiver (in symmetric mode: no endpoint at all).
pub fn separability_classes(graph: &NetworkGraph, x: &str, symmetric: bool) -> Result<SeparabilityPartition> {
    check_mode(graph, symmetric)?;
    let xi = graph.require(x)?;
    if graph.is_boundary(xi) {
        return Err(Error::NotInternal(x.to_owned()));
    }
    let through = graph::routes_through(graph, xi);
    if through.is_empty() {
        return Err(Error::NotOnAnyRoute(x.to_owned()));
    }
    let cs = classes(graph.vertex_count(), &through, symmetric);
    let ids = |v: &[usize]| v.iter().map(|&i| graph.id(i).clone()).collect::<Vec<_>>();
    Ok(SeparabilityPartition {
        vertex: graph.id(xi).clone(),
        symmetric,
        source_classes: cs.iter().map(|c| ids(&c.0)).collect(),
        receiver_classes: cs.iter().map(|c| ids(&c.1)).collect(),
        pairing: (0..cs.len()).map(|i| (i, i)).collect(),
    })
}

pub fn compliance_report(graph: &NetworkGraph, symmetric: bool) -> Result<ComplianceReport> {
    let trivial_vertices = trivial_vertices(graph, symmetric)?;
    let mut separable_vertices = Vec::new();
    for x in graph.internal() {
        let through = graph::routes_through(graph, x);
        if classes(graph.vertex_count(), &through, symmetric).len() >= 2 {
            separable_vertices.push(graph.id(x).clone());
        }
    }
    Ok(ComplianceReport {
        unused_edges: unused_edges(graph),
        trivial_vertices,
        separable_vertices,
    })
}

pub fn is_compliant(graph: &NetworkGraph, symmetric: bool) -> Result<bool> {
    Ok(compliance_report(graph, symmetric)?.is_compliant())
}

/// Replaces the vertex of `partition` by one copy per paired class.
pub fn split_vertex(graph: &NetworkGraph, partition: &SeparabilityPartition) -> Result<NetworkGraph> {
    let x = graph.require(partition.vertex.as_str())?;
    let bad = |why: &str| Error::InvalidPartition(partition.vertex.to_string(), why.to_owned());
    if graph.is_boundary(x) {
        return Err(Error::NotInternal(partition.vertex.to_string()));
    }
    if !partition.is_separable() {
        return Err(bad("a split needs at least two classes"));
    }
    let class_of = |classes: &[Vec<VertexId>], b: usize| -> Result<usize> {
        let found: Vec<usize> = (0..classes.len())
            .filter(|&c| classes[c].iter().any(|v| v == graph.id(b)))
            .collect();
        match found[..] {
            [c] => Ok(c),
            [] => Err(bad(&format!("{} is in no class", graph.id(b)))),
            _ => Err(bad(&format!("{} is in several classes", graph.id(b)))),
        }
    };
    let mut assignment = Vec::new();
    for (ri, r) in graph.routes().iter().enumerate() {
        if r.path.contains(&x) {
            let pair = (
                class_of(&partition.source_classes, r.src)?,
                class_of(&partition.receiver_classes, r.dst)?,
            );
            let copy = partition
                .pairing
                .iter()
                .position(|&p| p == pair)
                .ok_or_else(|| bad(&format!("route {} -> {} joins unpaired classes", graph.id(r.src), graph.id(r.dst))))?;
            assignment.push((ri, copy));
        }
    }
    let mut work = Work::new(graph);
    work.split(x, partition.class_count(), &assignment);
    Ok(work.into_graph())
}

/// Removes a trivial vertex, joining its incident edges.
pub fn merge_trivial_vertex(graph: &NetworkGraph, x: &str, symmetric: bool) -> Result<NetworkGraph> {
    check_mode(graph, symmetric)?;
    let xi = graph.require(x)?;
    if graph.is_boundary(xi) {
        return Err(Error::NotInternal(x.to_owned()));
    }
    let mut work = Work::new(graph);
    work.merge(xi, symmetric, crate::DEFAULT_EPSILON)?;
    Ok(work.into_graph())
}

/// Removes unused edges, splits every separable vertex into its classes and
/// merges trivial vertices until none remain.
pub fn clean(graph: &NetworkGraph, symmetric: bool) -> Result<(NetworkGraph, CleaningReport)> {
    let validation = graph::validate(graph);
    if !validation.valid {
        return Err(Error::InvalidGraph(validation));
    }
    check_mode(graph, symmetric)?;
    let mut report = CleaningReport {
        phases: vec!["unused".into(), "split".into(), "merge".into()],
        ..Default::default()
    };
    let mut work = Work::new(graph);

    let used = used_pairs(graph);
    for e in graph.edges() {
        if !used.contains(&(e.from, e.to)) {
            work.edges.remove(&(e.from, e.to));
            report.removed_edges.push((graph.id(e.from).clone(), graph.id(e.to).clone()));
        }
    }
    for x in graph.internal() {
        if graph::routes_through(graph, x).is_empty() {
            work.alive[x] = false;
            report.removed_vertices.push(graph.id(x).clone());
        }
    }

    for x in graph.internal() {
        let through = graph::routes_through(graph, x);
        let cs = classes(graph.vertex_count(), &through, symmetric);
        if cs.len() < 2 {
            continue;
        }
        let mut class_of = vec![usize::MAX; graph.vertex_count()];
        for (c, (sources, _)) in cs.iter().enumerate() {
            for &s in sources {
                class_of[s] = c;
            }
        }
        let assignment: Vec<(usize, usize)> = graph
            .routes()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.path.contains(&x))
            .map(|(ri, r)| (ri, class_of[r.src]))
            .collect();
        let copies = work.split(x, cs.len(), &assignment);
        report
            .split_vertices
            .push((graph.id(x).clone(), copies.iter().map(|&c| work.ids[c].clone()).collect()));
    }

    loop {
        let mut candidates: Vec<usize> = (0..work.ids.len())
            .filter(|&v| work.alive[v] && !work.boundary[v] && work.is_trivial(v, symmetric))
            .collect();
        candidates.sort_by(|&a, &b| work.ids[a].cmp(&work.ids[b]));
        let Some(&x) = candidates.first() else { break };
        work.merge(x, symmetric, crate::DEFAULT_EPSILON)?;
        report.merged_vertices.push(work.ids[x].clone());
    }

    if report.is_empty() {
        return Ok((graph.clone(), report));
    }
    Ok((work.into_graph(), report))
}

/// Mutable copy of a graph used while rewriting it.
struct Work {
    ids: Vec<VertexId>,
    boundary: Vec<bool>,
    alive: Vec<bool>,
    /// Output order: position of the original vertex, then copy number.
    rank: Vec<(usize, usize)>,
    edges: BTreeMap<(usize, usize), f64>,
    routes: Vec<(usize, usize, Vec<usize>)>,
}

impl Work {
    fn new(g: &NetworkGraph) -> Self {
        let n = g.vertex_count();
        Self {
            ids: g.vertices().iter().map(|v| v.id.clone()).collect(),
            boundary: g.vertices().iter().map(|v| v.boundary).collect(),
            alive: vec![true; n],
            rank: (0..n).map(|i| (i, 0)).collect(),
            edges: g.edges().iter().map(|e| ((e.from, e.to), e.weight)).collect(),
            routes: g.routes().iter().map(|r| (r.src, r.dst, r.path.clone())).collect(),
        }
    }

    fn into_graph(self) -> NetworkGraph {
        let mut order: Vec<usize> = (0..self.ids.len()).filter(|&v| self.alive[v]).collect();
        order.sort_by_key(|&v| self.rank[v]);
        let mut new_ix = vec![usize::MAX; self.ids.len()];
        let mut g = NetworkGraph::new();
        for &v in &order {
            new_ix[v] = g
                .add_vertex(self.ids[v].clone(), self.boundary[v])
                .expect("ids stay unique");
        }
        let mut edges: Vec<(usize, usize, f64)> = self
            .edges
            .iter()
            .map(|(&(u, v), &w)| (new_ix[u], new_ix[v], w))
            .collect();
        edges.sort_by_key(|&(u, v, _)| (u, v));
        for (u, v, w) in edges {
            g.push_edge(u, v, w);
        }
        for (s, d, path) in self.routes {
            g.push_route(new_ix[s], new_ix[d], path.into_iter().map(|v| new_ix[v]).collect())
                .expect("routes stay unique");
        }
        g
    }

    fn copy_name(&self, x: usize, k: usize) -> VertexId {
        let mut name = format!("{}#{k}", self.ids[x]);
        while self.ids.iter().any(|id| id.as_str() == name) {
            name.push('\'');
        }
        VertexId::new(name)
    }

    /// Splits `x` into `count` copies; `assignment` maps route index to copy.
    fn split(&mut self, x: usize, count: usize, assignment: &[(usize, usize)]) -> Vec<usize> {
        let copies: Vec<usize> = (1..=count)
            .map(|k| {
                let id = self.copy_name(x, k);
                self.ids.push(id);
                self.boundary.push(false);
                self.alive.push(true);
                self.rank.push((self.rank[x].0, k));
                self.ids.len() - 1
            })
            .collect();
        let mut rerouted = BTreeSet::new();
        for &(ri, c) in assignment {
            let copy = copies[c];
            let path = &mut self.routes[ri].2;
            let pos = path.iter().position(|&v| v == x).expect("route passes through x");
            path[pos] = copy;
            let (prev, next) = (path[pos - 1], path[pos + 1]);
            let w_in = self.edges[&(prev, x)];
            let w_out = self.edges[&(x, next)];
            self.edges.insert((prev, copy), w_in);
            self.edges.insert((copy, next), w_out);
            rerouted.insert((prev, x));
            rerouted.insert((x, next));
        }
        // edges of x that no rerouted route used stay with the first copy
        let incident: Vec<((usize, usize), f64)> = self
            .edges
            .iter()
            .filter(|(&(u, v), _)| u == x || v == x)
            .map(|(&k, &w)| (k, w))
            .collect();
        for ((u, v), w) in incident {
            self.edges.remove(&(u, v));
            if !rerouted.contains(&(u, v)) {
                let moved = if u == x { (copies[0], v) } else { (u, copies[0]) };
                self.edges.entry(moved).or_insert(w);
            }
        }
        self.alive[x] = false;
        copies
    }

    fn is_trivial(&self, x: usize, symmetric: bool) -> bool {
        if symmetric {
            let nbrs: BTreeSet<usize> = self
                .edges
                .keys()
                .filter_map(|&(u, v)| if u == x { Some(v) } else if v == x { Some(u) } else { None })
                .collect();
            nbrs.len() <= 2
        } else {
            let ins = self.edges.keys().filter(|&&(_, v)| v == x).count();
            let outs = self.edges.keys().filter(|&&(u, _)| u == x).count();
            ins == 1 && outs == 1
        }
    }

    fn join(&mut self, x: usize, a: usize, b: usize, w: f64, eps: f64) -> Result<()> {
        let conflict = || Error::MergeConflict {
            vertex: self.ids[x].to_string(),
            from: self.ids[a].to_string(),
            to: self.ids[b].to_string(),
        };
        if a == b {
            return Err(conflict());
        }
        match self.edges.get(&(a, b)) {
            Some(&old) if (old - w).abs() > eps => Err(conflict()),
            Some(_) => Ok(()),
            None => {
                self.edges.insert((a, b), w);
                Ok(())
            }
        }
    }

    fn merge(&mut self, x: usize, symmetric: bool, eps: f64) -> Result<()> {
        if !self.is_trivial(x, symmetric) {
            return Err(Error::NotTrivial(self.ids[x].to_string()));
        }
        let ins: Vec<(usize, f64)> = self
            .edges
            .iter()
            .filter(|(&(_, v), _)| v == x)
            .map(|(&(u, _), &w)| (u, w))
            .collect();
        let outs: Vec<(usize, f64)> = self
            .edges
            .iter()
            .filter(|(&(u, _), _)| u == x)
            .map(|(&(_, v), &w)| (v, w))
            .collect();
        for &(a, w1) in &ins {
            for &(b, w2) in &outs {
                // in symmetric mode a -> x -> a is never part of a route
                if symmetric && a == b {
                    continue;
                }
                self.join(x, a, b, w1 + w2, eps)?;
            }
        }
        self.edges.retain(|&(u, v), _| u != x && v != x);
        for (_, _, path) in &mut self.routes {
            path.retain(|&v| v != x);
        }
        self.alive[x] = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pcd::measure;
    use crate::verify::{boundary_anchored_isomorphic, pcd_equal};
    use crate::DEFAULT_EPSILON as EPS;

    fn names(v: &[VertexId]) -> Vec<&str> {
        v.iter().map(VertexId::as_str).collect()
    }

    #[test]
    fn unused_edge_is_found() {
        let g = fixtures::star_with_unused_edge();
        assert_eq!(unused_edges(&g), vec![("u".into(), "w".into())]);
        assert!(unused_edges(&fixtures::star()).is_empty());
    }

    #[test]
    fn relay_is_trivial() {
        let g = fixtures::relay_through_trivial();
        assert_eq!(names(&trivial_vertices(&g, false).unwrap()), ["x"]);
        // two in, one out
        let mut g = fixtures::star();
        g.add_vertex("y", false).unwrap();
        g.add_edge("u", "y", 1.0).unwrap();
        g.add_edge("v", "y", 1.0).unwrap();
        g.add_edge("y", "w", 1.0).unwrap();
        assert!(trivial_vertices(&g, false).unwrap().is_empty());
    }

    #[test]
    fn symmetric_trivial_counts_neighbours() {
        let mut g = fixtures::triangle();
        // subdivide x1 - x2 by a relay, both directions
        let mut h = NetworkGraph::new();
        for v in g.vertices() {
            h.add_vertex(v.id.clone(), v.boundary).unwrap();
        }
        h.add_vertex("m", false).unwrap();
        for e in g.edges() {
            let (u, v) = (g.id(e.from).as_str(), g.id(e.to).as_str());
            if (u, v) == ("x1", "x2") || (u, v) == ("x2", "x1") {
                h.add_edge(u, "m", 0.5).unwrap();
                h.add_edge("m", v, 0.5).unwrap();
            } else {
                h.add_edge(u, v, e.weight).unwrap();
            }
        }
        for r in g.routes() {
            let mut path: Vec<&str> = Vec::new();
            for w in r.path.windows(2) {
                path.push(g.id(w[0]).as_str());
                let pair = (g.id(w[0]).as_str(), g.id(w[1]).as_str());
                if pair == ("x1", "x2") || pair == ("x2", "x1") {
                    path.push("m");
                }
            }
            path.push(g.id(r.dst).as_str());
            h.add_route(g.id(r.src).as_str(), g.id(r.dst).as_str(), &path).unwrap();
        }
        assert_eq!(names(&trivial_vertices(&h, true).unwrap()), ["m"]);
        assert!(trivial_vertices(&h, false).unwrap().is_empty());
        let merged = merge_trivial_vertex(&h, "m", true).unwrap();
        assert!(boundary_anchored_isomorphic(&g, &merged, EPS).is_some());
        g.add_edge("b1", "b2", 1.0).unwrap();
        assert!(matches!(trivial_vertices(&g, true), Err(Error::ModeMismatch)));
    }

    #[test]
    fn triangle_routers_are_separable_without_symmetry() {
        let g = fixtures::triangle();
        let p = separability_classes(&g, "x1", false).unwrap();
        assert_eq!(p.source_classes.iter().map(|c| names(c)).collect::<Vec<_>>(), [vec!["b1"], vec!["b2", "b3"]]);
        assert_eq!(
            p.receiver_classes.iter().map(|c| names(c)).collect::<Vec<_>>(),
            [vec!["b2", "b3"], vec!["b1"]]
        );
        assert!(!separability_classes(&g, "x1", true).unwrap().is_separable());
        let (c, _) = clean(&g, false).unwrap();
        assert_eq!(c.internal_count(), 6);
    }

    #[test]
    fn separable_hub_classes() {
        let g = fixtures::separable_hub();
        let p = separability_classes(&g, "x", false).unwrap();
        assert_eq!(p.source_classes.iter().map(|c| names(c)).collect::<Vec<_>>(), [vec!["b1"], vec!["b2"]]);
        assert_eq!(
            p.receiver_classes.iter().map(|c| names(c)).collect::<Vec<_>>(),
            [vec!["b3", "b4"], vec!["b5", "b6"]]
        );
        assert_eq!(p.pairing, [(0, 0), (1, 1)]);
        let h = separability_classes(&g, "h", false).unwrap();
        assert!(!h.is_separable());
    }

    #[test]
    fn split_keeps_pcd() {
        let g = fixtures::separable_hub();
        let p = separability_classes(&g, "x", false).unwrap();
        let s = split_vertex(&g, &p).unwrap();
        assert!(graph::validate(&s).valid);
        assert_eq!(s.route_ids("b1", "b3").unwrap(), ["b1", "x#1", "y", "b3"]);
        assert_eq!(s.route_ids("b2", "b6").unwrap(), ["b2", "x#2", "z", "b6"]);
        assert!(pcd_equal(&measure(&g).unwrap(), &measure(&s).unwrap(), EPS).unwrap());
    }

    #[test]
    fn split_rejects_bad_partitions() {
        let g = fixtures::separable_hub();
        let mut p = separability_classes(&g, "x", false).unwrap();
        p.pairing = vec![(0, 1), (1, 0)];
        assert!(matches!(split_vertex(&g, &p), Err(Error::InvalidPartition(..))));
        let h = separability_classes(&g, "h", false).unwrap();
        assert!(matches!(split_vertex(&g, &h), Err(Error::InvalidPartition(..))));
    }

    #[test]
    fn merge_sums_weights() {
        let merged = merge_trivial_vertex(&fixtures::relay_through_trivial(), "x", false).unwrap();
        assert!(boundary_anchored_isomorphic(&fixtures::relay_direct(), &merged, EPS).is_some());
        assert!(matches!(
            merge_trivial_vertex(&fixtures::star(), "c", false),
            Err(Error::NotTrivial(_))
        ));
    }

    #[test]
    fn merge_conflict_on_differing_parallel_edge() {
        let mut g = fixtures::relay_through_trivial();
        g.add_edge("u", "w", 1.0).unwrap();
        assert!(matches!(
            merge_trivial_vertex(&g, "x", false),
            Err(Error::MergeConflict { .. })
        ));
    }

    #[test]
    fn clean_example_sequence() {
        let g = fixtures::cleaning_example();
        let (c, report) = clean(&g, false).unwrap();
        assert_eq!(report.removed_edges, vec![("b2".into(), "b3".into())]);
        assert_eq!(report.split_vertices.len(), 1);
        assert_eq!(report.split_vertices[0].0.as_str(), "x");
        assert_eq!(names(&report.merged_vertices), ["x#2", "y"]);
        assert!(boundary_anchored_isomorphic(&fixtures::cleaning_example_compliant(), &c, EPS).is_some());
        assert!(is_compliant(&c, false).unwrap());
        assert!(pcd_equal(&measure(&g).unwrap(), &measure(&c).unwrap(), EPS).unwrap());
    }

    #[test]
    fn clean_is_identity_on_compliant_graphs() {
        for g in [fixtures::star(), fixtures::relay_direct(), fixtures::cleaning_example_compliant()] {
            let (c, report) = clean(&g, false).unwrap();
            assert!(report.is_empty());
            assert_eq!(c, g);
        }
    }

    #[test]
    fn clean_removes_relays_and_unused_edges() {
        let (c, _) = clean(&fixtures::star_with_unused_edge(), false).unwrap();
        assert!(boundary_anchored_isomorphic(&fixtures::star(), &c, EPS).is_some());
        let (c, report) = clean(&fixtures::relay_through_trivial(), false).unwrap();
        assert_eq!(names(&report.merged_vertices), ["x"]);
        assert!(boundary_anchored_isomorphic(&fixtures::relay_direct(), &c, EPS).is_some());
    }

    #[test]
    fn report_lists_all_three_conditions() {
        let r = compliance_report(&fixtures::cleaning_example(), false).unwrap();
        assert_eq!(r.unused_edges.len(), 1);
        assert_eq!(names(&r.trivial_vertices), ["y"]);
        assert_eq!(names(&r.separable_vertices), ["x"]);
        assert!(!r.is_compliant());
    }
}
