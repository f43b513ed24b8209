//! Antigravity moves under two move orders, then an ASCII drawing of the trace.
//!
//! cargo run --example trace

use klr::abacus::render::{render_trace, RenderFormat};
use klr::abacus::{simulate_antigravity, SmallestFirst, TopDown};
use klr::quiver::Seq;

fn main() {
    let i = Seq::from_labels(&[0, 1, -3, -4, -1, 2, 5, 2, 1, 0, -2, 2, -1]);

    let a = simulate_antigravity(&i, 13, &mut SmallestFirst).unwrap();
    let b = simulate_antigravity(&i, 13, &mut TopDown).unwrap();
    for (name, t) in [("smallest", &a), ("top-down", &b)] {
        let moves: Vec<String> = t.moves.iter().map(|m| m.to_string()).collect();
        println!("{name:>9}: {}", moves.join("  "));
    }
    assert_eq!(a.final_support(), b.final_support());
    println!("json: {}", b.to_json());
    println!();
    print!("{}", render_trace(&b, RenderFormat::Ascii));
}
