//! Check x_r^{b_r} = 0 for every (i, r) of one cyclotomic quotient.
//!
//! cargo run --release --example verify

use klr::cyclotomic::{QuotientContext, Scope};
use klr::quiver::{RootSpec, WeightSpec};

fn main() {
    let nu = RootSpec::new([(0, 2), (1, 1), (2, 1)]);
    let weight = WeightSpec::new([(0, 2), (1, 1)]);
    let ctx = QuotientContext::new(nu, weight).unwrap();
    let report = ctx.verify_theorem(&Scope::All).unwrap();

    for c in &report.checks {
        println!(
            "{:<10} r={} bound={} nilpotency={:?} {}",
            c.seq.to_string(),
            c.r,
            c.bound,
            c.nilpotency,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    println!("{} checks, all pass: {}", report.checks.len(), report.all_pass());

    let anchors = ctx.check_anchor_prop().unwrap();
    println!("anchor propagation: {} checked, {} violations", anchors.checked, anchors.violations.len());
}
