//! Network graphs: directed weighted edges, a boundary vertex set, and one
//! fixed route per ordered pair of boundary vertices.

mod ops;
mod validate;

use std::borrow::Borrow;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ops::{
    draw_out_boundary, is_symmetric_routing, path_length, receiver_junction, source_junction,
    source_receiver_sets, DrawOutReport, Junction, SourceReceiverSets,
};
pub(crate) use ops::{
    path_length_ix, receiver_junction_ix, routes_through, source_junction_ix,
};
pub use validate::{validate, validate_with, ValidationOptions};

/// Identifier of a vertex, unique within one graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    pub src: usize,
    pub dst: usize,
    pub path: Vec<usize>,
}

/// A routed network graph.
///
/// Vertices, edges and routes keep their insertion order, which is also the
/// order used when the graph is serialized. Structural problems that the
/// validator is expected to report (self-loops, parallel edges, broken
/// routes, ...) are representable; only dangling vertex references and
/// duplicate vertex/route declarations are rejected at construction.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct NetworkGraph {
    vertices: Vec<Vertex>,
    index: HashMap<VertexId, usize>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<(usize, usize), usize>,
    routes: Vec<Route>,
    route_lookup: HashMap<(usize, usize), usize>,
}

impl PartialEq for NetworkGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.routes == other.routes
    }
}

impl NetworkGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>, boundary: bool) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id.0));
        }
        let ix = self.vertices.len();
        self.index.insert(id.clone(), ix);
        self.vertices.push(Vertex { id, boundary });
        Ok(ix)
    }

    pub fn add_edge(&mut self, from: &str, to: &str, weight: f64) -> Result<()> {
        let (from, to) = (self.require(from)?, self.require(to)?);
        self.push_edge(from, to, weight);
        Ok(())
    }

    pub fn add_route(&mut self, src: &str, dst: &str, path: &[&str]) -> Result<()> {
        let (src, dst) = (self.require(src)?, self.require(dst)?);
        let path = path
            .iter()
            .map(|v| self.require(v))
            .collect::<Result<Vec<_>>>()?;
        self.push_route(src, dst, path)
    }

    pub(crate) fn push_edge(&mut self, from: usize, to: usize, weight: f64) {
        self.edge_lookup
            .entry((from, to))
            .or_insert(self.edges.len());
        self.edges.push(Edge { from, to, weight });
    }

    pub(crate) fn push_route(&mut self, src: usize, dst: usize, path: Vec<usize>) -> Result<()> {
        if self.route_lookup.contains_key(&(src, dst)) {
            return Err(Error::DuplicateRoute(
                self.vertices[src].id.0.clone(),
                self.vertices[dst].id.0.clone(),
            ));
        }
        self.route_lookup.insert((src, dst), self.routes.len());
        self.routes.push(Route { src, dst, path });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn id(&self, ix: usize) -> &VertexId {
        &self.vertices[ix].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub fn is_boundary(&self, ix: usize) -> bool {
        self.vertices[ix].boundary
    }

    /// Boundary vertex indices in declaration order.
    pub fn boundary(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.vertices[i].boundary)
            .collect()
    }

    pub fn boundary_ids(&self) -> Vec<VertexId> {
        self.boundary().into_iter().map(|i| self.id(i).clone()).collect()
    }

    pub fn internal(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| !self.vertices[i].boundary)
            .collect()
    }

    pub fn internal_count(&self) -> usize {
        self.vertices.iter().filter(|v| !v.boundary).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<f64> {
        self.edge_lookup.get(&(from, to)).map(|&e| self.edges[e].weight)
    }

    pub fn weight_by_id(&self, from: &str, to: &str) -> Option<f64> {
        self.weight(self.index_of(from)?, self.index_of(to)?)
    }

    pub fn route_count(&self) -> usize {
        self.routes.len()
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    pub fn route(&self, src: usize, dst: usize) -> Option<&[usize]> {
        self.route_lookup
            .get(&(src, dst))
            .map(|&r| self.routes[r].path.as_slice())
    }

    /// Route between two vertices given by id, as a list of ids.
    pub fn route_ids(&self, src: &str, dst: &str) -> Option<Vec<&str>> {
        let path = self.route(self.index_of(src)?, self.index_of(dst)?)?;
        Some(path.iter().map(|&v| self.id(v).as_str()).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::try_from(serde_json::from_str::<GraphDoc>(s)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    boundary: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    from: String,
    to: String,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RouteDoc {
    src: String,
    dst: String,
    path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
    routes: Vec<RouteDoc>,
}

impl TryFrom<GraphDoc> for NetworkGraph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        let mut g = NetworkGraph::new();
        for v in doc.vertices {
            g.add_vertex(v.id, v.boundary)?;
        }
        for e in doc.edges {
            g.add_edge(&e.from, &e.to, e.weight)?;
        }
        for r in doc.routes {
            let path: Vec<&str> = r.path.iter().map(String::as_str).collect();
            g.add_route(&r.src, &r.dst, &path)?;
        }
        Ok(g)
    }
}

impl From<NetworkGraph> for GraphDoc {
    fn from(g: NetworkGraph) -> Self {
        let name = |i: usize| g.vertices[i].id.0.clone();
        GraphDoc {
            vertices: g
                .vertices
                .iter()
                .map(|v| VertexDoc {
                    id: v.id.0.clone(),
                    boundary: v.boundary,
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    from: name(e.from),
                    to: name(e.to),
                    weight: e.weight,
                })
                .collect(),
            routes: g
                .routes
                .iter()
                .map(|r| RouteDoc {
                    src: name(r.src),
                    dst: name(r.dst),
                    path: r.path.iter().map(|&v| name(v)).collect(),
                })
                .collect(),
        }
    }
}
