//! The identity on (0,0,1) factors through (0,1,0).
//!
//! cargo run --example factorization

use klr::klr::{crossing, dot, idempotent, minimal_transition, multiply, product};
use klr::quiver::Seq;

fn main() {
    let i = Seq::from_labels(&[0, 0, 1]);
    let j = Seq::from_labels(&[0, 1, 0]);
    let through = multiply(&minimal_transition(&j, &i).unwrap(), &minimal_transition(&i, &j).unwrap()).unwrap();
    let d = crossing(1, &i).unwrap();
    let dtd = product(&[d.clone(), through.clone(), d]).unwrap();
    let right = multiply(&dot(2, &i).unwrap(), &dtd).unwrap();
    let left = multiply(&dtd, &dot(1, &i).unwrap()).unwrap();
    println!("T       = {through}");
    println!("x2·δTδ  = {right}");
    println!("δTδ·x1  = {left}");
    let sum = right.sub(&left);
    println!("x2·δTδ - δTδ·x1 = {sum}");
    assert_eq!(sum, idempotent(&i));
}
