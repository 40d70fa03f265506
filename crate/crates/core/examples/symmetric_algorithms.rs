//! Under symmetric routing the specialized algorithm places each label on a
//! route and its reverse at once, halving the top-level calls.

use netrecon::generator::{random_network, GeneratorParams};
use netrecon::pcd::measure;
use netrecon::reconstruct::{reconstruct, reconstruct_symmetric};
use netrecon::verify::boundary_anchored_isomorphic;
use netrecon::DEFAULT_EPSILON;

fn main() -> netrecon::Result<()> {
    for seed in 0..5 {
        let g = random_network(&GeneratorParams {
            seed,
            boundary_count: 6,
            internal_count: 12,
            symmetric_routing: true,
            ensure_compliant: true,
            ..Default::default()
        })?;
        let data = measure(&g)?;
        let general = reconstruct(&data, true)?;
        let special = reconstruct_symmetric(&data)?;
        let same = boundary_anchored_isomorphic(&general.graph, &special.graph, DEFAULT_EPSILON).is_some();
        println!(
            "seed {seed}: calls {} vs {}, labels {} vs {}, same graph: {same}",
            general.stats.toplevel_calls,
            special.stats.toplevel_calls,
            general.stats.labels_created,
            special.stats.labels_created
        );
    }
    Ok(())
}
