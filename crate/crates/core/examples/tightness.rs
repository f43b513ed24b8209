//! Where the antigravity bound is not attained.
//!
//! cargo run --release --example tightness

use klr::cyclotomic::QuotientContext;
use klr::quiver::{RootSpec, WeightSpec};

fn main() {
    let weight = WeightSpec::new([(0, 1), (1, 1)]);
    for nu in [
        RootSpec::new([(0, 1), (1, 1)]),
        RootSpec::new([(0, 2), (1, 1)]),
        RootSpec::new([(0, 1), (1, 2)]),
        RootSpec::new([(0, 2), (1, 2)]),
    ] {
        let ctx = QuotientContext::new(nu.clone(), weight.clone()).unwrap();
        let gaps = ctx.tightness_report().unwrap();
        println!("ν={} Λ={}: {} gaps", nu.to_json(), weight.to_json(), gaps.len());
        for g in gaps {
            let block = ctx.block_dimension(&g.seq, &g.seq);
            println!("  {} r={} bound={} actual={} (dim 1_i R 1_i = {block})", g.seq, g.r, g.bound, g.actual);
        }
    }
}
