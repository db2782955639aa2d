//! Growth of the reduced braid dictionary with core length.

use std::time::Instant;

use fibonav::atlas::Atlas;
use fibonav::navigator::Dictionary;

fn main() -> fibonav::Result<()> {
    let a = Atlas::shared();
    for l in 4..=12 {
        let t = Instant::now();
        let d = Dictionary::build(&a.group, l)?;
        let cover = if l <= 8 {
            format!("{:.4}", d.covering_radius(&a.group, 20_000, 5))
        } else {
            "-".into()
        };
        println!(
            "L {l:>2}: {:>8} words, {:>6} kept, covering radius of O {cover} ({:.1?})",
            d.enumerated,
            d.len(),
            t.elapsed()
        );
    }
    Ok(())
}
