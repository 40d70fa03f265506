//! Generate a compliant random network, measure it, rebuild it from the
//! measurements alone and check the result.
//!
//! Usage: cargo run --example round_trip -- [seed]

use netrecon::generator::{random_network, GeneratorParams};
use netrecon::graph::is_symmetric_routing;
use netrecon::pcd::measure;
use netrecon::reconstruct::reconstruct;
use netrecon::verify::{boundary_anchored_isomorphic, check_theorem};
use netrecon::DEFAULT_EPSILON;

fn main() -> netrecon::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let g = random_network(&GeneratorParams {
        seed,
        boundary_count: 5,
        internal_count: 10,
        ensure_compliant: true,
        ..Default::default()
    })?;
    let symmetric = is_symmetric_routing(&g);
    let out = reconstruct(&measure(&g)?, symmetric)?;
    println!(
        "seed {seed}: {} boundary, {} routers, {} edges, symmetric routing {symmetric}",
        g.boundary().len(),
        g.internal_count(),
        g.edge_count()
    );
    println!(
        "reconstructed {} routers with {} insertions",
        out.graph.internal_count(),
        out.stats.insertions
    );
    if let Some(w) = boundary_anchored_isomorphic(&g, &out.graph, DEFAULT_EPSILON) {
        for (a, b) in &w.mapping {
            println!("  {a} -> {b}");
        }
    }
    println!("{}", check_theorem(&g, DEFAULT_EPSILON).to_json());
    Ok(())
}
