//! Nilpotency degrees of dots next to their antigravity bounds.
//!
//! cargo run --example nilpotency

use klr::abacus::antigravity_bound;
use klr::cyclotomic::QuotientContext;
use klr::klr::dot_power;
use klr::quiver::{RootSpec, Seq, WeightSpec};

fn main() {
    let weight = WeightSpec::new([(0, 2), (1, 1)]);
    let ctx = QuotientContext::new(RootSpec::new([(0, 2), (1, 1)]), weight.clone()).unwrap();
    println!("Λ = {}, level {}", weight.to_json(), ctx.level());
    for i in ctx.sequences() {
        if ctx.idempotent_vanishes(&i) {
            println!("{i}: 1_i = 0");
            continue;
        }
        for r in 1..=i.len() {
            let n = ctx.nilpotency_degree(&i, r).unwrap();
            let b = antigravity_bound(&i, r, &weight).unwrap();
            println!("{i} r={r}: nilpotency {n}, bound {b}");
        }
    }

    let i = Seq::from_labels(&[0, 1, 0]);
    let x = dot_power(3, 1, &i).unwrap();
    println!("x_3 1_(0,1,0) zero in quotient: {}", ctx.is_zero_in_quotient(&x).unwrap());
}
