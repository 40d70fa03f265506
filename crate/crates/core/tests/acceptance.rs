//! Acceptance checks, one test per criterion, all at tolerance 1e-9.

use std::collections::BTreeSet;

use netrecon::compliance::{clean, compliance_report, separability_classes, SeparabilityPartition};
use netrecon::fixtures;
use netrecon::generator::{inject_separable, inject_unused_edge, random_network, subdivide_edge, GeneratorParams};
use netrecon::graph::{is_symmetric_routing, source_receiver_sets, validate};
use netrecon::pcd::{build_receiver_tree, build_source_tree, measure};
use netrecon::reconstruct::{reconstruct, reconstruct_symmetric, ReconstructionResult};
use netrecon::verify::{boundary_anchored_isomorphic, pcd_equal};
use netrecon::{NetworkGraph, VertexId};

const EPS: f64 = 1e-9;

fn report(n: u32, what: &str, pass: bool) {
    println!("criterion {n} ({what}): {}", if pass { "PASS" } else { "FAIL" });
}

/// Compliant instances with 3..=8 boundary and 0..=20 internal vertices.
fn compliant_instances() -> Vec<NetworkGraph> {
    (0..1000u64)
        .map(|seed| {
            let p = GeneratorParams {
                seed,
                boundary_count: 3 + (seed % 6) as usize,
                internal_count: ((seed * 7) % 21) as usize,
                edge_density: [0.1, 0.25, 0.5, 0.9][(seed % 4) as usize],
                weight_range: (0.5, 20.0),
                symmetric_routing: seed % 3 == 0,
                symmetric_weights: seed % 6 == 0,
                ensure_compliant: true,
                ..Default::default()
            };
            random_network(&p).expect("generator succeeds")
        })
        .collect()
}

/// Non-compliant instances: raw generator output plus compliant graphs with
/// an injected unused edge, relay chain or separable vertex.
fn non_compliant_instances() -> Vec<NetworkGraph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 1000 {
        let base = GeneratorParams {
            seed,
            boundary_count: 3 + (seed % 6) as usize,
            internal_count: 2 + ((seed * 5) % 19) as usize,
            edge_density: [0.1, 0.3, 0.6][(seed % 3) as usize],
            weight_range: (0.5, 20.0),
            symmetric_routing: seed.is_multiple_of(4),
            symmetric_weights: seed.is_multiple_of(8),
            ..Default::default()
        };
        let candidate = match seed % 4 {
            0 => random_network(&base).ok(),
            k => {
                let compliant = random_network(&GeneratorParams {
                    ensure_compliant: true,
                    ..base
                })
                .ok();
                compliant.and_then(|g| match k {
                    1 => inject_unused_edge(&g, seed),
                    2 => subdivide_edge(&g, seed, 1 + (seed % 3) as usize),
                    _ => inject_separable(&g, seed),
                })
            }
        };
        seed += 1;
        if let Some(g) = candidate {
            let mode = is_symmetric_routing(&g);
            if !compliance_report(&g, mode).unwrap().is_compliant() {
                out.push(g);
            }
        }
    }
    out
}

fn insertion_bound_holds(r: &ReconstructionResult) -> bool {
    let nb = r.graph.boundary().len();
    r.stats.insertions <= r.graph.internal_count() * nb * nb
}

#[test]
fn criterion_1_compliant_graphs_are_reconstructed() {
    let mut failures = Vec::new();
    for (i, g) in compliant_instances().iter().enumerate() {
        assert!(validate(g).valid);
        let s = is_symmetric_routing(g);
        let r = reconstruct(&measure(g).unwrap(), s).unwrap();
        if boundary_anchored_isomorphic(g, &r.graph, EPS).is_none() {
            failures.push(i);
        }
    }
    report(1, "compliant round trip over 1000 instances", failures.is_empty());
    assert!(failures.is_empty(), "instances without a witness: {failures:?}");
}

#[test]
fn criterion_2_non_compliant_graphs_reconstruct_to_their_clean_form() {
    let mut failures = Vec::new();
    for (i, g) in non_compliant_instances().iter().enumerate() {
        let s = is_symmetric_routing(g);
        let p = measure(g).unwrap();
        let (c, _) = clean(g, s).unwrap();
        let r = reconstruct(&p, s).unwrap();
        let iso = boundary_anchored_isomorphic(&c, &r.graph, EPS).is_some();
        let same = pcd_equal(&p, &measure(&c).unwrap(), EPS).unwrap();
        if !(iso && same) {
            failures.push((i, iso, same));
        }
    }
    report(2, "non-compliant instances reconstruct to their cleaned form", failures.is_empty());
    assert!(failures.is_empty(), "failures: {failures:?}");
}

#[test]
fn criterion_3_triangle() {
    let g = fixtures::triangle();
    let p = measure(&g).unwrap();
    let general = reconstruct(&p, false).unwrap();
    let symmetric = reconstruct(&p, true).unwrap();
    let pass = general.graph.internal_count() == 6
        && symmetric.graph.internal_count() == 3
        && boundary_anchored_isomorphic(&g, &symmetric.graph, EPS).is_some();
    report(3, "triangle: 6 vertices without symmetry, original with it", pass);
    assert!(pass);
}

#[test]
fn criterion_4_insertion_bound() {
    let mut runs = 0;
    let mut failures = 0;
    for g in compliant_instances().iter().chain(non_compliant_instances().iter()) {
        let r = reconstruct(&measure(g).unwrap(), is_symmetric_routing(g)).unwrap();
        runs += 1;
        if !insertion_bound_holds(&r) {
            failures += 1;
        }
    }
    report(4, "insertions within |internal| * |boundary|^2", failures == 0);
    assert_eq!(failures, 0, "{failures} of {runs} runs exceed the bound");
}

#[test]
fn criterion_5_specialized_symmetric_reconstruction() {
    let mut failures = Vec::new();
    for seed in 0..200u64 {
        let g = random_network(&GeneratorParams {
            seed: 10_000 + seed,
            boundary_count: 3 + (seed % 6) as usize,
            internal_count: (seed % 16) as usize,
            edge_density: [0.15, 0.4, 0.8][(seed % 3) as usize],
            weight_range: (0.5, 20.0),
            symmetric_routing: true,
            symmetric_weights: seed % 2 == 0,
            ensure_compliant: seed % 3 != 0,
            ..Default::default()
        })
        .unwrap();
        let p = measure(&g).unwrap();
        let general = reconstruct(&p, true).unwrap();
        let special = reconstruct_symmetric(&p).unwrap();
        let iso = boundary_anchored_isomorphic(&general.graph, &special.graph, EPS).is_some();
        let half = 2 * special.stats.toplevel_calls == general.stats.toplevel_calls;
        if !(iso && half) {
            failures.push((seed, iso, half));
        }
    }
    report(5, "specialized algorithm matches general with half the calls", failures.is_empty());
    assert!(failures.is_empty(), "failures: {failures:?}");
}

/// Every way of splitting the routes through `x` in two that respects the
/// separability definition, as `(source side, receiver side)` masks over
/// the index lists `s` and `r` (symmetric mode uses `s` for both).
fn brute_force_bipartitions(
    g: &NetworkGraph,
    x: &str,
    s: &[VertexId],
    r: &[VertexId],
    symmetric: bool,
) -> Vec<(Vec<bool>, Vec<bool>)> {
    let xi = g.index_of(x).unwrap();
    let through = |a: &VertexId, b: &VertexId| {
        a != b
            && g.route(g.index_of(a.as_str()).unwrap(), g.index_of(b.as_str()).unwrap())
                .is_some_and(|p| p.contains(&xi))
    };
    let mut out = Vec::new();
    let masks = |n: usize| (1..(1u32 << n) - 1).map(move |m| (0..n).map(|i| m & (1 << i) != 0).collect::<Vec<_>>());
    if symmetric {
        for side in masks(s.len()) {
            let ok = (0..s.len()).all(|i| (0..s.len()).all(|j| side[i] == side[j] || !through(&s[i], &s[j])));
            if ok {
                out.push((side.clone(), side));
            }
        }
    } else {
        for ss in masks(s.len()) {
            for rs in masks(r.len()) {
                let ok = (0..s.len()).all(|i| (0..r.len()).all(|j| ss[i] == rs[j] || !through(&s[i], &r[j])));
                if ok {
                    out.push((ss.clone(), rs));
                }
            }
        }
    }
    out
}

fn union_of_classes(p: &SeparabilityPartition, s: &[VertexId], r: &[VertexId], split: &(Vec<bool>, Vec<bool>)) -> bool {
    let side_of = |list: &[VertexId], mask: &[bool], v: &VertexId| mask[list.iter().position(|w| w == v).unwrap()];
    p.pairing.iter().all(|&(sc, rc)| {
        let sides: BTreeSet<bool> = p.source_classes[sc]
            .iter()
            .map(|v| side_of(s, &split.0, v))
            .chain(p.receiver_classes[rc].iter().map(|v| side_of(r, &split.1, v)))
            .collect();
        sides.len() == 1
    })
}

#[test]
fn criterion_6_separability_classes_match_brute_force() {
    let mut checked = [0usize; 2];
    let mut failures = Vec::new();
    let mut seed = 0u64;
    while checked.iter().any(|&c| c < 500) && seed < 5000 {
        let symmetric = seed % 2 == 1;
        let params = GeneratorParams {
            seed,
            boundary_count: 3 + (seed % 4) as usize,
            internal_count: 3 + (seed % 10) as usize,
            edge_density: [0.15, 0.4][(seed % 2) as usize],
            symmetric_routing: symmetric,
            ensure_compliant: seed.is_multiple_of(3),
            ..Default::default()
        };
        let mut g = random_network(&params).unwrap();
        if seed.is_multiple_of(3) {
            if let Some(h) = inject_separable(&g, seed) {
                g = h;
            }
        }
        seed += 1;
        let mode = is_symmetric_routing(&g) && symmetric;
        for xi in g.internal() {
            let x = g.id(xi).as_str().to_owned();
            let sets = source_receiver_sets(&g, &x).unwrap();
            if sets.sources.is_empty() || sets.sources.len() + sets.receivers.len() > 12 {
                continue;
            }
            let p = separability_classes(&g, &x, mode).unwrap();
            let (s, r) = if mode {
                let all: BTreeSet<VertexId> = sets.sources.iter().chain(&sets.receivers).cloned().collect();
                let all: Vec<VertexId> = all.into_iter().collect();
                (all.clone(), all)
            } else {
                (sets.sources.clone(), sets.receivers.clone())
            };
            let splits = brute_force_bipartitions(&g, &x, &s, &r, mode);
            let agree = p.is_separable() == !splits.is_empty()
                && p.source_classes.len() == p.receiver_classes.len()
                && splits.iter().all(|sp| union_of_classes(&p, &s, &r, sp));
            if !agree {
                failures.push((seed - 1, x));
            }
            checked[mode as usize] += 1;
        }
    }
    let pass = failures.is_empty() && checked.iter().all(|&c| c >= 500);
    report(6, "separability classes agree with exhaustive bipartitions", pass);
    assert!(pass, "checked {checked:?}, failures {failures:?}");
}

#[test]
fn criterion_7_symmetric_weights_give_equal_source_and_receiver_data() {
    let mut failures = Vec::new();
    for seed in 0..200u64 {
        let g = random_network(&GeneratorParams {
            seed: 20_000 + seed,
            boundary_count: 3 + (seed % 6) as usize,
            internal_count: (seed % 15) as usize,
            edge_density: 0.3,
            symmetric_routing: true,
            symmetric_weights: true,
            ensure_compliant: seed % 2 == 0,
            ..Default::default()
        })
        .unwrap();
        let p = measure(&g).unwrap();
        let n = p.n();
        for b in 0..n {
            for b1 in 0..n {
                for b2 in 0..n {
                    if b != b1 && b != b2 && b1 != b2 && (p.rcv(b1, b2, b) - p.src(b, b1, b2)).abs() > EPS {
                        failures.push((seed, b, b1, b2));
                    }
                }
            }
        }
    }
    report(7, "symmetric routing and weights: receiver data equals source data", failures.is_empty());
    assert!(failures.is_empty(), "failures: {failures:?}");
}

#[test]
fn criterion_8_six_site_network_splits_only_u() {
    let g = fixtures::six_site_network();
    let p = measure(&g).unwrap();
    let r = reconstruct(&p, false).unwrap();
    let (c, rep) = clean(&g, false).unwrap();
    let witness = boundary_anchored_isomorphic(&c, &r.graph, EPS);
    let u_split = rep.split_vertices.len() == 1
        && rep.split_vertices[0].0.as_str() == "u"
        && rep.split_vertices[0].1.len() == 2
        && rep.merged_vertices.is_empty();
    let others_kept = witness.as_ref().is_some_and(|w| {
        g.internal()
            .into_iter()
            .map(|x| g.id(x).as_str())
            .filter(|&x| x != "u")
            .all(|x| w.mapping.iter().any(|(a, _)| a.as_str() == x))
    });
    let counts = r.graph.internal_count() == g.internal_count() + 1;
    let pass = u_split && others_kept && counts;
    report(8, "six-site network: u splits in two, every other router recovered", pass);
    assert!(pass, "split {u_split}, others {others_kept}, counts {counts}");
}

#[test]
fn criterion_9_tree_junction_depths_reproduce_the_data() {
    let mut failures = Vec::new();
    for (i, g) in compliant_instances().iter().enumerate() {
        let p = measure(g).unwrap();
        let ids: Vec<&str> = p.boundary().iter().map(VertexId::as_str).collect();
        for &root in &ids {
            let s = build_source_tree(&p, root).unwrap();
            let t = build_receiver_tree(&p, root).unwrap();
            for &a in &ids {
                for &b in &ids {
                    if a == b || a == root || b == root {
                        continue;
                    }
                    let ds = s.junction_depth(a, b).unwrap();
                    let dr = t.junction_depth(a, b).unwrap();
                    if (ds - p.source_pcd(root, a, b).unwrap()).abs() > EPS
                        || (dr - p.receiver_pcd(a, b, root).unwrap()).abs() > EPS
                    {
                        failures.push((i, root.to_owned(), a.to_owned(), b.to_owned()));
                    }
                }
                if a != root
                    && (s.leaf_depth(a) != Some(p.path_length(root, a).unwrap())
                        || t.leaf_depth(a) != Some(p.path_length(a, root).unwrap()))
                {
                    failures.push((i, root.to_owned(), a.to_owned(), "leaf".into()));
                }
            }
        }
    }
    report(9, "logical tree junction depths reproduce source and receiver data", failures.is_empty());
    assert!(failures.is_empty(), "failures: {:?}", &failures[..failures.len().min(10)]);
}
