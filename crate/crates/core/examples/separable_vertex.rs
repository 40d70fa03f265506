//! A router carrying two unrelated traffic families cannot be told apart
//! from two routers. Show its classes, split it and reconstruct.

use netrecon::compliance::{separability_classes, split_vertex};
use netrecon::pcd::measure;
use netrecon::reconstruct::reconstruct;
use netrecon::verify::pcd_equal;
use netrecon::{fixtures, VertexId, DEFAULT_EPSILON};

fn ids(v: &[VertexId]) -> String {
    v.iter().map(VertexId::as_str).collect::<Vec<_>>().join(",")
}

fn main() -> netrecon::Result<()> {
    let g = fixtures::six_site_network();
    let part = separability_classes(&g, "u", false)?;
    for &(sc, rc) in &part.pairing {
        println!("{} -> u -> {}", ids(&part.source_classes[sc]), ids(&part.receiver_classes[rc]));
    }

    let split = split_vertex(&g, &part)?;
    println!(
        "split: {} -> {} routers, same data: {}",
        g.internal_count(),
        split.internal_count(),
        pcd_equal(&measure(&g)?, &measure(&split)?, DEFAULT_EPSILON)?
    );
    let out = reconstruct(&measure(&g)?, false)?;
    println!("reconstruction has {} routers", out.graph.internal_count());
    Ok(())
}
