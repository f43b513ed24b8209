//! Weight-graph components agree with the fibres of `conf`.
//!
//! cargo run --example components

use std::collections::BTreeMap;

use klr::abacus::conf;
use klr::quiver::{enumerate_sequences, weight_graph_components, CartanDatum, RootSpec};

fn main() {
    let nu = RootSpec::new([(0, 2), (1, 1), (3, 1)]);
    let comps = weight_graph_components(&CartanDatum::AInfinity, &nu).unwrap();
    println!("ν = {}: {} sequences, {} components", nu.to_json(), nu.sequence_count(), comps.len());
    for c in &comps {
        let row: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        println!("  {}", row.join(" "));
    }

    let mut fibres: BTreeMap<_, usize> = BTreeMap::new();
    for i in enumerate_sequences(&nu).unwrap() {
        *fibres.entry(conf(&i).shape()).or_default() += 1;
    }
    println!("distinct configurations: {}", fibres.len());
}
