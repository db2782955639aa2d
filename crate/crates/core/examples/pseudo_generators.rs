//! Exhaustive search for braid words of exact order 6 and 10 whose product
//! comes closest to satisfying the icosahedral presentation.

use std::time::Instant;

use fibonav::anyon::{search_pseudo_generators, PseudoPair};

fn main() -> fibonav::Result<()> {
    let t = Instant::now();
    let found = search_pseudo_generators(10)?;
    println!(
        "length <= 10: {} candidates for s~, {} for t~, {} optimal pairs, residual {:.5e} ({:.1?})",
        found.s_candidates,
        found.t_candidates,
        found.optimal.len(),
        found.residual,
        t.elapsed()
    );
    let reference = PseudoPair::reference();
    println!("s~ = {}", reference.s.word);
    println!("t~ = {}", reference.t.word);
    println!(
        "reference pair optimal: {}",
        found.contains(&reference.s.word, &reference.t.word)
    );
    println!(
        "s~^3 defect {:.2e}, t~^5 defect {:.2e}, (s~t~)^2 residual {:.5e}",
        reference.s.defect,
        reference.t.defect,
        reference.residual()
    );
    Ok(())
}
