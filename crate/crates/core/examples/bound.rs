//! Stable support and antigravity bound for the 13-bead sequence.
//!
//! cargo run --example bound

use klr::abacus::{antigravity_bound, antigravity_survivors, is_r_stable, stable_support};
use klr::quiver::{Seq, WeightSpec};

fn main() {
    let i = Seq::from_labels(&[0, 1, -3, -4, -1, 2, 5, 2, 1, 0, -2, 2, -1]);
    let weight = WeightSpec::new([(-3, 1), (-1, 2), (0, 1), (2, 1), (5, 4)]);

    let survivors = antigravity_survivors(&i, 13).unwrap();
    let removed: Vec<usize> = (1..=i.len()).filter(|k| !survivors.contains(k)).collect();
    println!("i = {i}");
    println!("removed by antigravity: {removed:?}");
    println!("13-stable: {}", is_r_stable(&i, 13).unwrap());
    println!("support: {:?}", stable_support(&i, 13).unwrap().bounds().unwrap());
    println!("Λ = {}", weight.to_json());
    println!("b_13 = {}", antigravity_bound(&i, 13, &weight).unwrap());

    for r in 1..=i.len() {
        let (lo, hi) = stable_support(&i, r).unwrap().bounds().unwrap();
        println!("  r={r:>2}  support [{lo},{hi}]  b={}", antigravity_bound(&i, r, &weight).unwrap());
    }
}
