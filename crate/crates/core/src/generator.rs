//! Seeded random network graphs with shortest-path routing, and helpers that
//! inject non-compliant features into existing graphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::compliance::{clean, is_compliant};
use crate::error::{Error, Result};
use crate::graph::{self, NetworkGraph};

const ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorParams {
    pub seed: u64,
    pub boundary_count: usize,
    pub internal_count: usize,
    /// Probability of each optional internal edge.
    pub edge_density: f64,
    pub weight_range: (f64, f64),
    #[serde(default)]
    pub symmetric_routing: bool,
    #[serde(default)]
    pub symmetric_weights: bool,
    #[serde(default)]
    pub ensure_compliant: bool,
    /// Perturb weights by a relative 1e-12 so that shortest paths are unique.
    #[serde(default = "yes")]
    pub jitter: bool,
    /// Draw whole-number weights.
    #[serde(default)]
    pub integer_weights: bool,
}

fn yes() -> bool {
    true
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            seed: 0,
            boundary_count: 4,
            internal_count: 6,
            edge_density: 0.3,
            weight_range: (1.0, 10.0),
            symmetric_routing: false,
            symmetric_weights: false,
            ensure_compliant: false,
            jitter: true,
            integer_weights: false,
        }
    }
}

impl GeneratorParams {
    fn check(&self) -> Result<()> {
        let (lo, hi) = self.weight_range;
        let problem = if self.boundary_count < 2 {
            Some("boundary_count must be at least 2".to_owned())
        } else if !(self.edge_density > 0.0 && self.edge_density <= 1.0) {
            Some(format!("edge_density must lie in (0, 1], got {}", self.edge_density))
        } else if !(lo > 0.0 && lo.is_finite() && hi.is_finite() && hi >= lo) {
            Some(format!("weight_range must satisfy 0 < min <= max, got ({lo}, {hi})"))
        } else if self.integer_weights && hi.floor() < lo.ceil() {
            Some(format!("weight_range ({lo}, {hi}) contains no whole number"))
        } else {
            None
        };
        match problem {
            Some(p) => Err(Error::UnsatisfiableParams(p)),
            None => Ok(()),
        }
    }
}

/// Builds a random valid graph. Boundary vertices `b1..bn` hang off the
/// internal vertices `v1..vm` as leaves; routes are shortest paths.
pub fn random_network(params: &GeneratorParams) -> Result<NetworkGraph> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut last = None;
    for _ in 0..ATTEMPTS {
        let mut g = attempt(params, &mut rng)?;
        // small graphs can come out symmetric by chance, before or after
        // cleaning; they must then be compliant in the symmetric sense
        let mut symmetric = params.symmetric_routing || graph::is_symmetric_routing(&g);
        if params.ensure_compliant {
            g = clean(&g, symmetric)?.0;
            if !symmetric && graph::is_symmetric_routing(&g) {
                symmetric = true;
                g = clean(&g, symmetric)?.0;
            }
        }
        let report = graph::validate(&g);
        if !report.valid {
            last = Some(format!("{} violation(s) in last attempt", report.violations.len()));
            continue;
        }
        if params.ensure_compliant && !is_compliant(&g, symmetric)? {
            last = Some("cleaned graph is not compliant".into());
            continue;
        }
        return Ok(g);
    }
    Err(Error::UnsatisfiableParams(format!(
        "no valid graph after {ATTEMPTS} attempts: {}",
        last.unwrap_or_default()
    )))
}

fn attempt(p: &GeneratorParams, rng: &mut ChaCha8Rng) -> Result<NetworkGraph> {
    let (nb, m) = (p.boundary_count, p.internal_count);
    let mut g = NetworkGraph::new();
    for i in 1..=nb {
        g.add_vertex(format!("b{i}"), true)?;
    }
    for i in 1..=m {
        g.add_vertex(format!("v{i}"), false)?;
    }
    let n = nb + m;
    let internal: Vec<usize> = (nb..n).collect();

    // edge pairs before weights, so weights can be mirrored afterwards
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let both = |pairs: &mut BTreeSet<(usize, usize)>, a: usize, b: usize| {
        pairs.insert((a, b));
        pairs.insert((b, a));
    };
    if m == 0 {
        for a in 0..nb {
            for b in 0..nb {
                if a != b {
                    pairs.insert((a, b));
                }
            }
        }
    } else {
        let mut order = internal.clone();
        order.shuffle(rng);
        if p.symmetric_routing {
            for k in 1..order.len() {
                let parent = order[rng.gen_range(0..k)];
                both(&mut pairs, order[k], parent);
            }
            for (i, &a) in internal.iter().enumerate() {
                for &b in &internal[i + 1..] {
                    if rng.gen_bool(p.edge_density) {
                        both(&mut pairs, a, b);
                    }
                }
            }
        } else {
            if order.len() >= 2 {
                for k in 0..order.len() {
                    pairs.insert((order[k], order[(k + 1) % order.len()]));
                }
            }
            for &a in &internal {
                for &b in &internal {
                    if a != b && rng.gen_bool(p.edge_density) {
                        pairs.insert((a, b));
                    }
                }
            }
        }
        for b in 0..nb {
            let x = internal[rng.gen_range(0..m)];
            both(&mut pairs, b, x);
        }
    }

    let mut weight = vec![f64::NAN; n * n];
    for &(a, b) in &pairs {
        if p.symmetric_weights && b < a && pairs.contains(&(b, a)) {
            continue;
        }
        let mut w = if p.integer_weights {
            rng.gen_range(p.weight_range.0.ceil() as i64..=p.weight_range.1.floor() as i64) as f64
        } else if p.weight_range.0 == p.weight_range.1 {
            p.weight_range.0
        } else {
            rng.gen_range(p.weight_range.0..p.weight_range.1)
        };
        if p.jitter {
            w *= 1.0 + rng.gen::<f64>() * 1e-12;
        }
        weight[a * n + b] = w;
        if p.symmetric_weights && pairs.contains(&(b, a)) {
            weight[b * n + a] = w;
        }
    }
    for &(a, b) in &pairs {
        g.push_edge(a, b, weight[a * n + b]);
    }

    let cost = |a: usize, b: usize| {
        if p.symmetric_routing {
            weight[a * n + b] + weight[b * n + a]
        } else {
            weight[a * n + b]
        }
    };
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &pairs {
        adj[a].push(b);
    }
    for s in 0..nb {
        let pred = dijkstra(n, s, nb, &adj, &cost);
        for t in 0..nb {
            if t == s || (p.symmetric_routing && t < s) {
                continue;
            }
            let mut path = vec![t];
            while let Some(&last) = path.last() {
                if last == s {
                    break;
                }
                match pred[last] {
                    Some(prev) => path.push(prev),
                    None => {
                        return Err(Error::UnsatisfiableParams(format!(
                            "b{} cannot reach b{}",
                            s + 1,
                            t + 1
                        )))
                    }
                }
            }
            path.reverse();
            if p.symmetric_routing {
                let back: Vec<usize> = path.iter().rev().copied().collect();
                g.push_route(t, s, back)?;
            }
            g.push_route(s, t, path)?;
        }
    }
    Ok(g)
}

/// Shortest-path predecessors from `s`, never passing through another
/// boundary vertex (indices below `nb`). Ties go to the smaller predecessor.
fn dijkstra(n: usize, s: usize, nb: usize, adj: &[Vec<usize>], cost: &impl Fn(usize, usize) -> f64) -> Vec<Option<usize>> {
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    loop {
        let u = (0..n)
            .filter(|&v| !done[v] && dist[v].is_finite())
            .min_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
        let Some(u) = u else { break };
        done[u] = true;
        if u != s && u < nb {
            continue;
        }
        for &v in &adj[u] {
            let d = dist[u] + cost(u, v);
            let better = d < dist[v] || (d == dist[v] && pred[v].is_some_and(|p| u < p));
            if !done[v] && better {
                dist[v] = d;
                pred[v] = Some(u);
            }
        }
    }
    pred
}

fn fresh_id(g: &NetworkGraph, stem: &str) -> String {
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|id| g.index_of(id).is_none())
        .expect("unbounded ids")
}

/// Copies `g`, applying `keep`/`map` to edges and routes.
fn rebuild(
    g: &NetworkGraph,
    extra_vertices: &[(String, bool)],
    edges: &[(usize, usize, f64)],
    routes: Vec<(usize, usize, Vec<usize>)>,
) -> Result<NetworkGraph> {
    let mut h = NetworkGraph::new();
    for v in g.vertices() {
        h.add_vertex(v.id.clone(), v.boundary)?;
    }
    for (id, b) in extra_vertices {
        h.add_vertex(id.as_str(), *b)?;
    }
    for &(u, v, w) in edges {
        h.push_edge(u, v, w);
    }
    for (s, d, path) in routes {
        h.push_route(s, d, path)?;
    }
    Ok(h)
}

fn route_list(g: &NetworkGraph) -> Vec<(usize, usize, Vec<usize>)> {
    g.routes().iter().map(|r| (r.src, r.dst, r.path.clone())).collect()
}

/// Adds an edge that no route uses (both directions when routing is
/// symmetric). `None` if the graph is complete.
pub fn inject_unused_edge(g: &NetworkGraph, seed: u64) -> Option<NetworkGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symmetric = graph::is_symmetric_routing(g);
    let n = g.vertex_count();
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && g.weight(a, b).is_none() && !(symmetric && g.weight(b, a).is_some()))
        .collect();
    candidates.shuffle(&mut rng);
    let &(a, b) = candidates.first()?;
    let mut edges: Vec<(usize, usize, f64)> = g.edges().iter().map(|e| (e.from, e.to, e.weight)).collect();
    let w = rng.gen_range(1.0..10.0);
    edges.push((a, b, w));
    if symmetric {
        edges.push((b, a, rng.gen_range(1.0..10.0)));
    }
    rebuild(g, &[], &edges, route_list(g)).ok()
}

/// Replaces one used edge by a chain of `k` relay vertices with the same
/// total weight; under symmetric routing the reverse edge shares the chain.
pub fn subdivide_edge(g: &NetworkGraph, seed: u64, k: usize) -> Option<NetworkGraph> {
    if k == 0 {
        return Some(g.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symmetric = graph::is_symmetric_routing(g);
    let used: BTreeSet<(usize, usize)> = g
        .routes()
        .iter()
        .flat_map(|r| r.path.windows(2).map(|h| (h[0], h[1])))
        .collect();
    let used: Vec<(usize, usize)> = used.into_iter().collect();
    let &(a, b) = used.choose(&mut rng)?;

    let n = g.vertex_count();
    let mut names = Vec::new();
    let mut probe = g.clone();
    for _ in 0..k {
        let id = fresh_id(&probe, "s");
        probe.add_vertex(id.as_str(), false).ok()?;
        names.push((id, false));
    }
    let chain: Vec<usize> = (n..n + k).collect();
    let mut edges = Vec::new();
    let hop = |from: usize, to: usize, w: f64, edges: &mut Vec<(usize, usize, f64)>| {
        let mut seq = vec![from];
        if from == a {
            seq.extend(&chain);
        } else {
            seq.extend(chain.iter().rev());
        }
        seq.push(to);
        let piece = w / (k + 1) as f64;
        for h in seq.windows(2) {
            edges.push((h[0], h[1], piece));
        }
        seq
    };
    let mut forward = None;
    let mut backward = None;
    for e in g.edges() {
        if (e.from, e.to) == (a, b) {
            forward = Some(hop(a, b, e.weight, &mut edges));
        } else if symmetric && (e.from, e.to) == (b, a) {
            backward = Some(hop(b, a, e.weight, &mut edges));
        } else {
            edges.push((e.from, e.to, e.weight));
        }
    }
    let forward = forward?;
    let mut routes = route_list(g);
    for (_, _, path) in &mut routes {
        let mut out = Vec::with_capacity(path.len() + k);
        for (i, &v) in path.iter().enumerate() {
            out.push(v);
            if let Some(&next) = path.get(i + 1) {
                if (v, next) == (a, b) {
                    out.extend(&forward[1..forward.len() - 1]);
                } else if let Some(back) = backward.as_ref().filter(|_| (v, next) == (b, a)) {
                    out.extend(&back[1..back.len() - 1]);
                }
            }
        }
        *path = out;
    }
    rebuild(g, &names, &edges, routes).ok()
}

/// Identifies two internal vertices whose route families share no source and
/// no receiver (no endpoint at all under symmetric routing), making the
/// merged vertex separable. The second vertex is folded into the first.
pub fn inject_separable(g: &NetworkGraph, seed: u64) -> Option<NetworkGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symmetric = graph::is_symmetric_routing(g);
    let internal = g.internal();
    let n = g.vertex_count();
    let mut ins = vec![BTreeSet::new(); n];
    let mut outs = vec![BTreeSet::new(); n];
    for e in g.edges() {
        outs[e.from].insert(e.to);
        ins[e.to].insert(e.from);
    }
    let through: Vec<Vec<(usize, usize)>> = (0..n).map(|v| graph::routes_through(g, v)).collect();
    let ends = |v: usize| -> (BTreeSet<usize>, BTreeSet<usize>) {
        let s = through[v].iter().map(|r| r.0).collect();
        let d = through[v].iter().map(|r| r.1).collect();
        (s, d)
    };
    let mut pairs: Vec<(usize, usize)> = internal
        .iter()
        .flat_map(|&x| internal.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| x < y)
        .collect();
    pairs.shuffle(&mut rng);
    let (x, y) = pairs.into_iter().find(|&(x, y)| {
        if through[x].is_empty() || through[y].is_empty() {
            return false;
        }
        if outs[x].contains(&y) || outs[y].contains(&x) {
            return false;
        }
        if !ins[x].is_disjoint(&ins[y]) || !outs[x].is_disjoint(&outs[y]) {
            return false;
        }
        let shared_route = g.routes().iter().any(|r| r.path.contains(&x) && r.path.contains(&y));
        if shared_route {
            return false;
        }
        let (sx, rx) = ends(x);
        let (sy, ry) = ends(y);
        if symmetric {
            let ex: BTreeSet<usize> = sx.union(&rx).copied().collect();
            let ey: BTreeSet<usize> = sy.union(&ry).copied().collect();
            ex.is_disjoint(&ey)
        } else {
            sx.is_disjoint(&sy) && rx.is_disjoint(&ry)
        }
    })?;

    // drop y by renumbering everything above it
    let map = |v: usize| {
        let v = if v == y { x } else { v };
        if v > y {
            v - 1
        } else {
            v
        }
    };
    let mut h = NetworkGraph::new();
    for (i, v) in g.vertices().iter().enumerate() {
        if i != y {
            h.add_vertex(v.id.clone(), v.boundary).ok()?;
        }
    }
    for e in g.edges() {
        h.push_edge(map(e.from), map(e.to), e.weight);
    }
    for r in g.routes() {
        h.push_route(map(r.src), map(r.dst), r.path.iter().map(|&v| map(v)).collect())
            .ok()?;
    }
    Some(h)
}
