//! Compiling i sigma_x against a length-14 dictionary, first with the table
//! words only and then with the wider set of stand-in words.

use std::time::Instant;

use fibonav::atlas::Atlas;
use fibonav::cli::TargetSpec;
use fibonav::navigator::{Dictionary, Navigator, DEFAULT_DRESSING_WIDTH};

fn main() -> fibonav::Result<()> {
    let a = Atlas::shared();
    let t = Instant::now();
    let dict = Dictionary::build(&a.group, 14)?;
    println!(
        "dictionary: {} cores from {} words ({:.1?})",
        dict.len(),
        dict.enumerated,
        t.elapsed()
    );
    let mut nav = Navigator::new(a, Some(dict), Vec::new())?;
    let ix: TargetSpec = "ix".parse()?;
    for width in [1, 4, DEFAULT_DRESSING_WIDTH] {
        nav.set_dressing_width(width);
        let t = Instant::now();
        let r = nav.compile(ix.0, 2e-3)?;
        println!(
            "width {width:>2}: err {:.4e}, core {}, total {}, {} ({:.1?})",
            r.err,
            r.core_len,
            r.total_len,
            r.source,
            t.elapsed()
        );
    }
    Ok(())
}
