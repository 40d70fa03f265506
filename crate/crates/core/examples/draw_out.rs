//! Boundary sites that forward traffic for others are moved onto leaves so
//! that every route starts and ends at the edge of the network.

use netrecon::dot::graph_to_dot;
use netrecon::fixtures;
use netrecon::graph::{draw_out_boundary, validate};

fn main() -> netrecon::Result<()> {
    let g = fixtures::square_through_boundary();
    println!("before: {}", serde_json::to_string(&validate(&g)).expect("report serializes"));
    let (h, report) = draw_out_boundary(&g, 1.0)?;
    for (b, proxy) in &report.mapping {
        println!("{b} now hangs off {proxy}");
    }
    println!("after: {}", serde_json::to_string(&validate(&h)).expect("report serializes"));
    print!("{}", graph_to_dot(&h));
    Ok(())
}
