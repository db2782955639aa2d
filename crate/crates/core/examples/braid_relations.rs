//! The two Fibonacci braid generators and the relations they satisfy.

use fibonav::braid::sigma;
use fibonav::quat::max_entry_diff;
use fibonav::{BraidWord, Su2Matrix, UnitQuaternion};

fn main() {
    let (s1, s2) = (sigma(1, true), sigma(2, true));
    println!("sigma1 = {:?}", s1.entries());
    println!("sigma2 = {:?}", s2.entries());

    let s1s2 = Su2Matrix::from_entries(s1.matmul(&s2)).unwrap();
    let s2s1 = Su2Matrix::from_entries(s2.matmul(&s1)).unwrap();
    let braid = max_entry_diff(&s1s2.matmul(&s1), &s2s1.matmul(&s2));
    println!("|s1 s2 s1 - s2 s1 s2| = {braid:.3e}");

    let ten: BraidWord = "1 1 1 1 1 1 1 1 1 1".parse().unwrap();
    let d = ten.evaluate_quat().distance(-UnitQuaternion::IDENTITY);
    println!("distance(s1^10, -1) = {d:.3e}");

    // Appending a letter multiplies on the left.
    let w: BraidWord = "2 2 -1".parse().unwrap();
    let (normal, sign) = w.power(4).normalize();
    println!("(2 2 -1)^4 normalizes to [{normal}] with sign {sign}");
}
