//! The 120 braid stand-ins for the binary icosahedral group in the frame
//! fitted to the pseudo-generators.

use fibonav::anyon::DRESSING_WIDTH;
use fibonav::atlas::Atlas;
use fibonav::quat::distinct_hopf_points;

fn main() {
    let a = Atlas::shared();
    let yt = &a.ytilde;
    println!("frame rotation {}", a.frame);
    println!(
        "120 entries: max err {:.4e}, mean err {:.4e}, pseudo-length <= {}, braid length <= {}",
        yt.max_err(),
        yt.mean_err(),
        yt.max_pseudo_len(),
        yt.max_word_len()
    );
    for e in yt.entries().iter().take(5) {
        println!(
            "  {}  <- {:<14} err {:.3e}",
            e.target,
            e.pseudo_text(),
            e.err
        );
    }
    let sizes: Vec<usize> = (0..120).map(|i| yt.dressing(i).len()).collect();
    println!(
        "alternative words per element (up to {DRESSING_WIDTH}): min {}, max {}",
        sizes.iter().min().unwrap(),
        sizes.iter().max().unwrap()
    );
    let hopf: Vec<_> = yt
        .entries()
        .iter()
        .map(|e| fibonav::hopf_map(e.target))
        .collect();
    let (distinct, inf) = distinct_hopf_points(&hopf, 1e-6);
    println!("Hopf image: {distinct} base points, {inf} elements at infinity");
}
