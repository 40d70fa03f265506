//! Three boundary sites joined through a ring of routers. Without symmetric
//! routing the data only pins down six routers; with it the ring comes back.

use netrecon::pcd::measure;
use netrecon::reconstruct::reconstruct;
use netrecon::verify::boundary_anchored_isomorphic;
use netrecon::{fixtures, DEFAULT_EPSILON};

fn main() -> netrecon::Result<()> {
    let g = fixtures::triangle();
    let data = measure(&g)?;
    println!("{}", data.to_json());

    for symmetric in [false, true] {
        let out = reconstruct(&data, symmetric)?;
        let same = boundary_anchored_isomorphic(&g, &out.graph, DEFAULT_EPSILON).is_some();
        println!(
            "symmetric={symmetric}: {} routers, {} edges, matches input: {same}",
            out.graph.internal_count(),
            out.graph.edge_count()
        );
    }
    Ok(())
}
