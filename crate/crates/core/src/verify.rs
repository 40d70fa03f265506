//! Equivalence checks: PCD comparison, isomorphism of graphs anchored at
//! their boundary vertices, and the end-to-end reconstruction check.

use serde::Serialize;

use crate::compliance::{clean, is_compliant};
use crate::error::{Error, Result};
use crate::graph::{self, NetworkGraph, VertexId};
use crate::pcd::{measure, validate_pcd, PathCorrelationData};
use crate::reconstruct::{reconstruct, reconstruct_symmetric};

/// Largest absolute difference between corresponding entries, matching
/// boundary vertices by id. A value missing on one side counts as infinite.
pub fn pcd_max_difference(p1: &PathCorrelationData, p2: &PathCorrelationData) -> Result<f64> {
    let n = p1.n();
    let mut same = p1.boundary().to_vec();
    let mut other = p2.boundary().to_vec();
    same.sort();
    other.sort();
    if same != other {
        return Err(Error::BoundaryMismatch);
    }
    let map: Vec<usize> = p1
        .boundary()
        .iter()
        .map(|b| p2.index_of(b.as_str()).expect("same boundary"))
        .collect();
    let diff = |a: f64, b: f64| {
        if a.is_nan() && b.is_nan() {
            0.0
        } else if a.is_nan() || b.is_nan() {
            f64::INFINITY
        } else {
            (a - b).abs()
        }
    };
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            worst = worst.max(diff(p1.len(i, j), p2.len(map[i], map[j])));
            for r in 0..n {
                if r != i && r != j {
                    worst = worst.max(diff(p1.src(r, i, j), p2.src(map[r], map[i], map[j])));
                    worst = worst.max(diff(p1.rcv(i, j, r), p2.rcv(map[i], map[j], map[r])));
                }
            }
        }
    }
    Ok(worst)
}

/// All entries agree within `eps`.
pub fn pcd_equal(p1: &PathCorrelationData, p2: &PathCorrelationData, eps: f64) -> Result<bool> {
    Ok(pcd_max_difference(p1, p2)? <= eps)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsomorphismWitness {
    /// Internal vertex of the first graph -> internal vertex of the second.
    pub mapping: Vec<(VertexId, VertexId)>,
    pub max_weight_discrepancy: f64,
}

/// Looks for a bijection that fixes boundary vertices by id, maps routes to
/// routes position by position and preserves edge weights within `eps`.
pub fn boundary_anchored_isomorphic(g1: &NetworkGraph, g2: &NetworkGraph, eps: f64) -> Option<IsomorphismWitness> {
    if g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || g1.route_count() != g2.route_count()
    {
        return None;
    }
    let n = g1.vertex_count();
    let mut fwd = vec![None; n];
    let mut back = vec![None; n];
    let mut bind = |a: usize, b: usize, fwd: &mut Vec<Option<usize>>| -> bool {
        if g1.is_boundary(a) != g2.is_boundary(b) {
            return false;
        }
        match (fwd[a], back[b]) {
            (None, None) => {
                fwd[a] = Some(b);
                back[b] = Some(a);
                true
            }
            (Some(x), Some(y)) => x == b && y == a,
            _ => false,
        }
    };
    for v in g1.boundary() {
        match g2.index_of(g1.id(v).as_str()) {
            Some(w) if bind(v, w, &mut fwd) => {}
            _ => return None,
        }
    }
    for r in g1.routes() {
        let (s, d) = (fwd[r.src]?, fwd[r.dst]?);
        let p2 = g2.route(s, d)?;
        if p2.len() != r.path.len() {
            return None;
        }
        for (&a, &b) in r.path.iter().zip(p2) {
            if !bind(a, b, &mut fwd) {
                return None;
            }
        }
    }
    // vertices on no route are matched by search
    let free1: Vec<usize> = (0..n).filter(|&v| fwd[v].is_none()).collect();
    let free2: Vec<usize> = (0..n).filter(|&v| back[v].is_none()).collect();
    if free1.len() != free2.len() {
        return None;
    }
    let mut used = vec![false; free2.len()];
    if !assign(g1, g2, eps, &free1, &free2, 0, &mut fwd, &mut used) {
        return None;
    }
    let fwd: Vec<usize> = fwd.into_iter().map(|m| m.expect("complete mapping")).collect();
    let worst = edge_discrepancy(g1, g2, &fwd)?;
    if worst > eps {
        return None;
    }
    Some(IsomorphismWitness {
        mapping: g1
            .internal()
            .into_iter()
            .map(|v| (g1.id(v).clone(), g2.id(fwd[v]).clone()))
            .collect(),
        max_weight_discrepancy: worst,
    })
}

/// Largest weight difference over mapped edges, or `None` if an edge has no
/// image.
fn edge_discrepancy(g1: &NetworkGraph, g2: &NetworkGraph, fwd: &[usize]) -> Option<f64> {
    let mut worst = 0.0f64;
    for e in g1.edges() {
        let w = g2.weight(fwd[e.from], fwd[e.to])?;
        worst = worst.max((w - e.weight).abs());
    }
    Some(worst)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    g1: &NetworkGraph,
    g2: &NetworkGraph,
    eps: f64,
    free1: &[usize],
    free2: &[usize],
    k: usize,
    fwd: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if k == free1.len() {
        return true;
    }
    let a = free1[k];
    for (slot, &b) in free2.iter().enumerate() {
        if used[slot] || g1.is_boundary(a) != g2.is_boundary(b) {
            continue;
        }
        fwd[a] = Some(b);
        // edges between a and already mapped vertices must have images
        let consistent = g1.edges().iter().all(|e| {
            if e.from != a && e.to != a {
                return true;
            }
            match (fwd[e.from], fwd[e.to]) {
                (Some(u), Some(v)) => g2.weight(u, v).is_some_and(|w| (w - e.weight).abs() <= eps),
                _ => true,
            }
        });
        if consistent {
            used[slot] = true;
            if assign(g1, g2, eps, free1, free2, k + 1, fwd, used) {
                return true;
            }
            used[slot] = false;
        }
        fwd[a] = None;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub symmetric_routing: bool,
    pub boundary_count: usize,
    pub internal_count: usize,
    pub clean_internal_count: Option<usize>,
    pub reconstructed_internal_count: Option<usize>,
    pub assertions: Vec<Assertion>,
    pub witness: Option<IsomorphismWitness>,
    pub pass: bool,
}

impl TheoremReport {
    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        });
        self.pass = self.assertions.iter().all(|a| a.passed);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Measures `g`, reconstructs it and checks that the result matches the
/// cleaned form of `g`, and that cleaning kept the measurements.
pub fn check_theorem(g: &NetworkGraph, eps: f64) -> TheoremReport {
    let symmetric = graph::is_symmetric_routing(g);
    let mut report = TheoremReport {
        symmetric_routing: symmetric,
        boundary_count: g.boundary().len(),
        internal_count: g.internal_count(),
        clean_internal_count: None,
        reconstructed_internal_count: None,
        assertions: Vec::new(),
        witness: None,
        pass: true,
    };
    let validation = graph::validate(g);
    report.push(
        "input_valid",
        validation.valid,
        format!("{} violation(s)", validation.violations.len()),
    );
    if !validation.valid {
        return report;
    }
    let pcd = match measure(g) {
        Ok(p) => p,
        Err(e) => {
            report.push("measure", false, e.to_string());
            return report;
        }
    };
    let pcd_report = validate_pcd(&pcd, eps);
    report.push(
        "pcd_valid",
        pcd_report.valid,
        format!("{} violation(s)", pcd_report.violations.len()),
    );

    let cleaned = match clean(g, symmetric) {
        Ok((c, _)) => c,
        Err(e) => {
            report.push("clean", false, e.to_string());
            return report;
        }
    };
    report.clean_internal_count = Some(cleaned.internal_count());
    match measure(&cleaned).and_then(|p| pcd_max_difference(&pcd, &p)) {
        Ok(d) => report.push("clean_preserves_pcd", d <= eps, format!("max difference {d:e}")),
        Err(e) => report.push("clean_preserves_pcd", false, e.to_string()),
    }
    match is_compliant(&cleaned, symmetric) {
        Ok(ok) => report.push("clean_is_compliant", ok, ""),
        Err(e) => report.push("clean_is_compliant", false, e.to_string()),
    }

    let rebuilt = match reconstruct(&pcd, symmetric) {
        Ok(r) => r,
        Err(e) => {
            report.push("reconstruct", false, e.to_string());
            return report;
        }
    };
    report.reconstructed_internal_count = Some(rebuilt.graph.internal_count());
    report.witness = boundary_anchored_isomorphic(&cleaned, &rebuilt.graph, eps);
    let detail = match &report.witness {
        Some(w) => format!("max weight discrepancy {:e}", w.max_weight_discrepancy),
        None => format!(
            "no witness ({} vs {} internal vertices)",
            cleaned.internal_count(),
            rebuilt.graph.internal_count()
        ),
    };
    let found = report.witness.is_some();
    report.push("reconstruction_matches_clean", found, detail);

    if symmetric {
        let outcome = reconstruct_symmetric(&pcd).map(|s| {
            boundary_anchored_isomorphic(&rebuilt.graph, &s.graph, eps).is_some()
                && 2 * s.stats.toplevel_calls == rebuilt.stats.toplevel_calls
        });
        match outcome {
            Ok(ok) => report.push("specialized_matches_general", ok, ""),
            Err(e) => report.push("specialized_matches_general", false, e.to_string()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::DEFAULT_EPSILON as EPS;

    fn relabel(g: &NetworkGraph, rename: impl Fn(&str) -> String) -> NetworkGraph {
        let mut h = NetworkGraph::new();
        // reversed vertex order on top of the renaming
        for v in g.vertices().iter().rev() {
            let id = if v.boundary { v.id.to_string() } else { rename(v.id.as_str()) };
            h.add_vertex(id.as_str(), v.boundary).unwrap();
        }
        let name = |i: usize| {
            let v = &g.vertices()[i];
            if v.boundary { v.id.to_string() } else { rename(v.id.as_str()) }
        };
        for e in g.edges().iter().rev() {
            h.add_edge(&name(e.from), &name(e.to), e.weight).unwrap();
        }
        for r in g.routes() {
            let path: Vec<String> = r.path.iter().map(|&v| name(v)).collect();
            let path: Vec<&str> = path.iter().map(String::as_str).collect();
            h.add_route(&name(r.src), &name(r.dst), &path).unwrap();
        }
        h
    }

    #[test]
    fn relabelled_graph_is_isomorphic() {
        let g = fixtures::separable_hub();
        let h = relabel(&g, |s| format!("n_{s}"));
        let w = boundary_anchored_isomorphic(&g, &h, EPS).unwrap();
        assert!(w.mapping.iter().any(|(a, b)| a.as_str() == "x" && b.as_str() == "n_x"));
        assert_eq!(w.max_weight_discrepancy, 0.0);
        assert!(boundary_anchored_isomorphic(&h, &g, EPS).is_some());
    }

    #[test]
    fn off_route_vertices_are_matched_by_search() {
        let mut g = fixtures::triangle();
        g.add_vertex("p", false).unwrap();
        g.add_vertex("q", false).unwrap();
        g.add_edge("p", "x1", 1.0).unwrap();
        g.add_edge("q", "x2", 2.0).unwrap();
        let h = relabel(&g, |s| format!("{s}'"));
        assert!(boundary_anchored_isomorphic(&g, &h, EPS).is_some());
    }

    #[test]
    fn weights_must_agree() {
        let g = fixtures::triangle();
        let h = fixtures::triangle_weighted(|u, v| if (u, v) == ("x1", "x2") { 1.0 + 1e-6 } else { 1.0 });
        assert!(boundary_anchored_isomorphic(&g, &h, EPS).is_none());
        assert!(boundary_anchored_isomorphic(&g, &h, 1e-3).is_some());
    }

    #[test]
    fn triangle_and_its_asymmetric_reconstruction_differ() {
        let g = fixtures::triangle();
        let r = reconstruct(&measure(&g).unwrap(), false).unwrap();
        assert!(boundary_anchored_isomorphic(&g, &r.graph, EPS).is_none());
    }

    #[test]
    fn pcd_comparison() {
        let p = measure(&fixtures::star()).unwrap();
        assert!(pcd_equal(&p, &p, EPS).unwrap());
        let mut q = p.clone();
        let v = q.src(0, 1, 2);
        q.set_src(0, 1, 2, v + 10.0 * EPS);
        assert!(!pcd_equal(&p, &q, EPS).unwrap());
        let with_unused = measure(&fixtures::star_with_unused_edge()).unwrap();
        assert!(pcd_equal(&p, &with_unused, EPS).unwrap());
        let other = measure(&fixtures::triangle()).unwrap();
        assert!(matches!(pcd_equal(&p, &other, EPS), Err(Error::BoundaryMismatch)));
    }

    #[test]
    fn round_trip_checks_pass_on_fixtures() {
        for (name, g) in fixtures::all_valid() {
            let r = check_theorem(&g, EPS);
            assert!(r.pass, "{name}: {}", r.to_json());
        }
    }

    #[test]
    fn round_trip_report_flags_invalid_input() {
        let r = check_theorem(&fixtures::diverge_remeet(), EPS);
        assert!(!r.pass);
        assert_eq!(r.assertions[0].name, "input_valid");
    }
}
