//! Strip a graph down to the canonical form that its measurements describe:
//! unused edges go, relay routers are merged and shared routers are split.

use netrecon::compliance::{clean, compliance_report};
use netrecon::pcd::measure;
use netrecon::verify::pcd_equal;
use netrecon::{fixtures, VertexId, DEFAULT_EPSILON};

fn ids(v: &[VertexId]) -> String {
    v.iter().map(VertexId::as_str).collect::<Vec<_>>().join(" ")
}

fn main() -> netrecon::Result<()> {
    let g = fixtures::cleaning_example();
    let before = compliance_report(&g, false)?;
    let edges: Vec<String> = before.unused_edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    println!("unused edges: {}", edges.join(" "));
    println!("trivial vertices: {}", ids(&before.trivial_vertices));
    println!("separable vertices: {}", ids(&before.separable_vertices));

    let (c, report) = clean(&g, false)?;
    println!("{}", report.to_json());
    println!(
        "{} -> {} routers, compliant: {}, same data: {}",
        g.internal_count(),
        c.internal_count(),
        compliance_report(&c, false)?.is_compliant(),
        pcd_equal(&measure(&g)?, &measure(&c)?, DEFAULT_EPSILON)?
    );
    Ok(())
}
