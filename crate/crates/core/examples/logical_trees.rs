//! Logical source and receiver trees rooted at each boundary site, printed
//! as DOT. Junction depths in the trees are the shared path lengths.

use netrecon::dot::tree_to_dot;
use netrecon::fixtures;
use netrecon::pcd::{build_receiver_tree, build_source_tree, measure};

fn main() -> netrecon::Result<()> {
    let data = measure(&fixtures::six_site_network())?;
    for root in data.boundary().to_vec() {
        let s = build_source_tree(&data, root.as_str())?;
        let r = build_receiver_tree(&data, root.as_str())?;
        println!(
            "// {root}: source tree {} junctions, receiver tree {} junctions",
            s.internal_count(),
            r.internal_count()
        );
        print!("{}{}", tree_to_dot(&s), tree_to_dot(&r));
    }
    Ok(())
}
