//! The order-14400 symmetry group of the {3,3,5} polytope and reduction of
//! arbitrary points into its fundamental orthoscheme.

use std::time::Instant;

use fibonav::quat::uniform_unit;
use fibonav::symmetry::{distinct_actions, G_ORDER};
use fibonav::{SymmetryGroup, UnitQuaternion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let g = SymmetryGroup::standard();
    let p = g.polytope();
    println!(
        "V {} E {} F {} C {}, Euler {}",
        120,
        p.edges.len(),
        p.faces.len(),
        p.cells.len(),
        p.euler_characteristic()
    );
    let o = g.orthoscheme();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let generic = uniform_unit(&mut rng);
    println!(
        "ops {G_ORDER}, distinct actions {}",
        distinct_actions(&g, generic)
    );
    for (name, q) in [
        ("vertex", o.vertices()[0]),
        ("cell centre", o.vertices()[3]),
        ("generic", generic),
    ] {
        println!("orbit of {name}: {}", g.orbit(q).len());
    }

    let pts: Vec<UnitQuaternion> = (0..2000).map(|_| uniform_unit(&mut rng)).collect();
    let t = Instant::now();
    let fast: Vec<_> = pts.iter().map(|&q| g.reduce(q)).collect();
    let tf = t.elapsed();
    let t = Instant::now();
    let slow: Vec<_> = pts.iter().map(|&q| g.reduce_exhaustive(q)).collect();
    let ts = t.elapsed();
    let worst = fast
        .iter()
        .zip(&slow)
        .map(|(a, b)| a.1.distance(b.1))
        .fold(0.0, f64::max);
    println!("2000 reductions: fast {tf:.1?}, exhaustive {ts:.1?}, max disagreement {worst:.1e}");
}
