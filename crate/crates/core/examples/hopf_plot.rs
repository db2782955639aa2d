//! Writes Hopf-map scatter plots of Y~ and the Q0 mesh.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use fibonav::atlas::Atlas;
use fibonav::hyperdome::{build_q, SeedSearch};
use fibonav::io::write_hopf_svg;

fn main() -> fibonav::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let a = Atlas::shared();
    let yt: Vec<_> = a.ytilde.entries().iter().map(|e| e.achieved).collect();
    let q0 = build_q(a, &SeedSearch::new(a)?, 0)?.positions();
    for (name, pts) in [("ytilde", yt), ("q0", q0)] {
        let path = dir.join(format!("hopf_{name}.svg"));
        write_hopf_svg(BufWriter::new(File::create(&path)?), &pts, 3.0)?;
        println!("{} points -> {}", pts.len(), path.display());
    }
    Ok(())
}
