//! Graded dimensions of a few cyclotomic quotients.
//!
//! cargo run --release --example dims

use klr::cyclotomic::QuotientContext;
use klr::quiver::{RootSpec, WeightSpec};

fn main() {
    let cases = [
        (RootSpec::new([(0, 1)]), WeightSpec::new([(0, 3)])),
        (RootSpec::new([(0, 1), (1, 1)]), WeightSpec::new([(0, 1), (1, 1)])),
        (RootSpec::new([(0, 2), (1, 1)]), WeightSpec::new([(0, 2)])),
        (RootSpec::new([(0, 2), (1, 2)]), WeightSpec::new([(0, 1), (1, 1)])),
    ];
    for (nu, weight) in cases {
        let ctx = QuotientContext::new(nu.clone(), weight.clone()).unwrap();
        let dims: Vec<String> = ctx.graded_dimensions().iter().map(|(d, n)| format!("{n}q^{d}")).collect();
        println!("ν={} Λ={}: {} = {}", nu.to_json(), weight.to_json(), ctx.total_dimension(), dims.join(" + "));
    }
}
