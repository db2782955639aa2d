//! Mesh levels on S3: counts, braid labels and covering radii.
//!
//! Run with `--release`; pass `2` to also build P2 (about 15 s).

use std::time::Instant;

use fibonav::atlas::Atlas;
use fibonav::hyperdome::{
    build_mesh, combinatorics, covering_radius, dome2d, MeshKind, SeedSearch,
};

fn main() -> fibonav::Result<()> {
    for l in 0..4 {
        let c = combinatorics(l);
        println!(
            "level {l}: V {} E {} F {} C {}  Q {}",
            c.v,
            c.e,
            c.f,
            c.c,
            c.q_count()
        );
    }
    let d = dome2d();
    println!("2D dome: {} points {:?}", d.points.len(), d.orbit_sizes);

    let deep = std::env::args().nth(1).as_deref() == Some("2");
    let a = Atlas::shared();
    let search = SeedSearch::new(a)?;
    let mut levels = vec![
        (MeshKind::P, 0),
        (MeshKind::Q, 0),
        (MeshKind::P, 1),
        (MeshKind::Q, 1),
    ];
    if deep {
        levels.push((MeshKind::P, 2));
    }
    for (kind, level) in levels {
        let t = Instant::now();
        let m = build_mesh(a, &search, kind, level)?;
        let cover = covering_radius(&m.positions(), 20_000, 11);
        println!(
            "{}: {} points, {} seeds (worst seed err {:.2e}), max braid err {:.2e}, covering radius {:.4} ({:.1?})",
            m.name(),
            m.len(),
            m.seeds.len(),
            m.max_seed_err(),
            m.max_err(),
            cover,
            t.elapsed()
        );
    }
    Ok(())
}
