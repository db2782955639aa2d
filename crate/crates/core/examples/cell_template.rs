//! Exact search for a 20-tetrahedron subdivision of one cell of the mesh.

use std::time::Instant;

use fibonav::template::{derive_cell_template, global_bookkeeping};

fn main() -> fibonav::Result<()> {
    let t = Instant::now();
    let tpl = derive_cell_template()?;
    println!(
        "found in {:.1?}, fan anchors {:?}",
        t.elapsed(),
        tpl.anchors
    );
    for tet in &tpl.tets {
        println!("  {tet:?}");
    }
    println!("{:#?}", tpl.validate());
    let (faces, edges) = global_bookkeeping(720, 1200, 600);
    println!("implied level-1 faces {faces}, edges {edges}");
    Ok(())
}
