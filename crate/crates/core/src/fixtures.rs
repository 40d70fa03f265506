//! Small hand-built networks used by the examples, the CLI tests and the
//! acceptance suite.

use crate::graph::NetworkGraph;

fn build(
    boundary: &[&str],
    internal: &[&str],
    edges: &[(&str, &str, f64)],
    routes: &[&[&str]],
) -> NetworkGraph {
    let mut g = NetworkGraph::new();
    for b in boundary {
        g.add_vertex(*b, true).expect("fixture vertex");
    }
    for x in internal {
        g.add_vertex(*x, false).expect("fixture vertex");
    }
    for &(u, v, w) in edges {
        g.add_edge(u, v, w).expect("fixture edge");
    }
    for path in routes {
        let (src, dst) = (path[0], path[path.len() - 1]);
        g.add_route(src, dst, path).expect("fixture route");
    }
    g
}

/// Three sites `b1..b3`, each behind its own router `x1..x3`; the routers form
/// a triangle and the route from `bi` to `bj` is `[bi, xi, xj, bj]`. All
/// edges run both ways with weight 1.
pub fn triangle() -> NetworkGraph {
    triangle_weighted(|_, _| 1.0)
}

/// Same topology as [`triangle`] with weights given by `weight(from, to)`.
pub fn triangle_weighted(weight: impl Fn(&str, &str) -> f64) -> NetworkGraph {
    let pairs = [
        ("b1", "x1"),
        ("b2", "x2"),
        ("b3", "x3"),
        ("x1", "x2"),
        ("x2", "x3"),
        ("x1", "x3"),
    ];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        edges.push((u, v, weight(u, v)));
        edges.push((v, u, weight(v, u)));
    }
    let mut routes: Vec<Vec<&str>> = Vec::new();
    for (i, bi) in ["b1", "b2", "b3"].into_iter().enumerate() {
        for (j, bj) in ["b1", "b2", "b3"].into_iter().enumerate() {
            if i != j {
                let xs = ["x1", "x2", "x3"];
                routes.push(vec![bi, xs[i], xs[j], bj]);
            }
        }
    }
    let routes: Vec<&[&str]> = routes.iter().map(Vec::as_slice).collect();
    build(&["b1", "b2", "b3"], &["x1", "x2", "x3"], &edges, &routes)
}

/// Routes from `b` to `b1` and to `b2` split at `x` and meet again at `z`.
/// Not tree consistent.
pub fn diverge_remeet() -> NetworkGraph {
    build(
        &["b", "b1", "b2"],
        &["x", "y", "w", "z"],
        &[
            ("b", "x", 1.0),
            ("x", "y", 1.0),
            ("x", "w", 1.0),
            ("y", "z", 1.0),
            ("w", "z", 1.0),
            ("z", "b1", 1.0),
            ("z", "b2", 1.0),
            ("b1", "b", 1.0),
            ("b2", "b", 1.0),
            ("b1", "b2", 1.0),
            ("b2", "b1", 1.0),
        ],
        &[
            &["b", "x", "y", "z", "b1"],
            &["b", "x", "w", "z", "b2"],
            &["b1", "b"],
            &["b2", "b"],
            &["b1", "b2"],
            &["b2", "b1"],
        ],
    )
}

/// A four-cycle of boundary vertices (unit weights both ways) whose routes
/// between opposite corners pass through another boundary vertex.
pub fn square_through_boundary() -> NetworkGraph {
    let cycle = [("b1", "b2"), ("b2", "b3"), ("b3", "b4"), ("b4", "b1")];
    let mut edges = Vec::new();
    for (u, v) in cycle {
        edges.push((u, v, 1.0));
        edges.push((v, u, 1.0));
    }
    build(
        &["b1", "b2", "b3", "b4"],
        &[],
        &edges,
        &[
            &["b1", "b2"],
            &["b2", "b1"],
            &["b2", "b3"],
            &["b3", "b2"],
            &["b3", "b4"],
            &["b4", "b3"],
            &["b4", "b1"],
            &["b1", "b4"],
            &["b1", "b2", "b3"],
            &["b3", "b2", "b1"],
            &["b2", "b1", "b4"],
            &["b4", "b1", "b2"],
        ],
    )
}

fn star_edges() -> Vec<(&'static str, &'static str, f64)> {
    vec![
        ("u", "c", 1.0),
        ("c", "u", 1.5),
        ("v", "c", 2.0),
        ("c", "v", 2.5),
        ("w", "c", 3.0),
        ("c", "w", 3.5),
    ]
}

fn star_routes() -> Vec<&'static [&'static str]> {
    vec![
        &["u", "c", "v"],
        &["u", "c", "w"],
        &["v", "c", "u"],
        &["v", "c", "w"],
        &["w", "c", "u"],
        &["w", "c", "v"],
    ]
}

/// Three sites around a hub `c`.
pub fn star() -> NetworkGraph {
    build(&["u", "v", "w"], &["c"], &star_edges(), &star_routes())
}

/// [`star`] plus a direct edge `u -> w` that no route uses.
pub fn star_with_unused_edge() -> NetworkGraph {
    let mut edges = star_edges();
    edges.push(("u", "w", 0.5));
    build(&["u", "v", "w"], &["c"], &edges, &star_routes())
}

/// Two sites; traffic from `u` to `w` crosses a relay `x` with one way in
/// and one way out.
pub fn relay_through_trivial() -> NetworkGraph {
    build(
        &["u", "w"],
        &["x"],
        &[("u", "x", 2.0), ("x", "w", 3.0), ("w", "u", 4.0)],
        &[&["u", "x", "w"], &["w", "u"]],
    )
}

/// [`relay_through_trivial`] with the relay merged into one edge of weight 5.
pub fn relay_direct() -> NetworkGraph {
    build(
        &["u", "w"],
        &[],
        &[("u", "w", 5.0), ("w", "u", 4.0)],
        &[&["u", "w"], &["w", "u"]],
    )
}

/// Six sites; `b1` reaches `b3, b4` and `b2` reaches `b5, b6` through a shared
/// router `x` (fanning out at `y` and `z`), while every other route goes
/// through a hub `h`. The two families of routes through `x` never share an
/// endpoint, so `x` is separable.
pub fn separable_hub() -> NetworkGraph {
    let sites = ["b1", "b2", "b3", "b4", "b5", "b6"];
    let mut edges = vec![
        ("b1", "x", 1.0),
        ("b2", "x", 2.0),
        ("x", "y", 1.5),
        ("x", "z", 2.5),
        ("y", "b3", 1.0),
        ("y", "b4", 2.0),
        ("z", "b5", 1.0),
        ("z", "b6", 2.0),
    ];
    let hub_in = [1.0, 1.25, 1.5, 1.75, 2.0, 2.25];
    let hub_out = [0.5, 0.75, 1.0, 1.25, 1.5, 1.75];
    for (i, b) in sites.iter().enumerate() {
        edges.push((b, "h", hub_in[i]));
        edges.push(("h", b, hub_out[i]));
    }
    let via_x: [&[&str]; 4] = [
        &["b1", "x", "y", "b3"],
        &["b1", "x", "y", "b4"],
        &["b2", "x", "z", "b5"],
        &["b2", "x", "z", "b6"],
    ];
    let mut routes: Vec<Vec<&str>> = via_x.iter().map(|r| r.to_vec()).collect();
    for s in sites {
        for t in sites {
            if s != t && !routes.iter().any(|r| r[0] == s && r[r.len() - 1] == t) {
                routes.push(vec![s, "h", t]);
            }
        }
    }
    let routes: Vec<&[&str]> = routes.iter().map(Vec::as_slice).collect();
    build(&sites, &["x", "y", "z", "h"], &edges, &routes)
}

/// Three sites with one unused edge `b2 -> b3`, a separable router `x`, and a
/// relay `y` with a single way in and out.
pub fn cleaning_example() -> NetworkGraph {
    build(
        &["b1", "b2", "b3"],
        &["x", "y", "w"],
        &[
            ("b1", "x", 1.0),
            ("b3", "y", 1.0),
            ("y", "x", 1.0),
            ("x", "b2", 1.0),
            ("b2", "x", 1.0),
            ("x", "w", 1.0),
            ("w", "b1", 1.0),
            ("w", "b3", 1.0),
            ("b1", "w", 1.0),
            ("b3", "w", 1.0),
            ("b2", "b3", 1.0),
        ],
        &[
            &["b1", "x", "b2"],
            &["b1", "w", "b3"],
            &["b2", "x", "w", "b1"],
            &["b2", "x", "w", "b3"],
            &["b3", "y", "x", "b2"],
            &["b3", "w", "b1"],
        ],
    )
}

/// The compliant form of [`cleaning_example`]: the unused edge is gone, `x`
/// keeps only the traffic towards `b2`, and the relays are folded into
/// single edges.
pub fn cleaning_example_compliant() -> NetworkGraph {
    build(
        &["b1", "b2", "b3"],
        &["x", "w"],
        &[
            ("b1", "x", 1.0),
            ("b3", "x", 2.0),
            ("x", "b2", 1.0),
            ("b2", "w", 2.0),
            ("w", "b1", 1.0),
            ("w", "b3", 1.0),
            ("b1", "w", 1.0),
            ("b3", "w", 1.0),
        ],
        &[
            &["b1", "x", "b2"],
            &["b1", "w", "b3"],
            &["b2", "w", "b1"],
            &["b2", "w", "b3"],
            &["b3", "x", "b2"],
            &["b3", "w", "b1"],
        ],
    )
}

/// Six-site network with asymmetric routing in which every router except
/// `u` can be recovered from path correlation data; `u` carries two families
/// of routes that never share an endpoint.
pub fn six_site_network() -> NetworkGraph {
    NetworkGraph::from_json(include_str!("../fixtures/six_site_network.json"))
        .expect("bundled fixture parses")
}

/// Every fixture that is expected to pass validation.
pub fn all_valid() -> Vec<(&'static str, NetworkGraph)> {
    vec![
        ("triangle", triangle()),
        ("star", star()),
        ("star_with_unused_edge", star_with_unused_edge()),
        ("relay_through_trivial", relay_through_trivial()),
        ("relay_direct", relay_direct()),
        ("separable_hub", separable_hub()),
        ("cleaning_example", cleaning_example()),
        ("cleaning_example_compliant", cleaning_example_compliant()),
        ("six_site_network", six_site_network()),
    ]
}
