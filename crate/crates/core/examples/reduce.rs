//! Parse expressions, reduce them to normal form and multiply.
//!
//! cargo run --example reduce

use klr::expr::{parse_expression, print_expression};
use klr::klr::multiply;

fn main() {
    for text in [
        "e(0,0)",
        "d(1)*d(1)*e(0,0)",
        "d(1)*d(1)*e(0,1)",
        "x(2)*d(1)*e(0,0)",
        "d(1)*x(1)*e(0,0)",
        "d(1) d(2) d(1) e(0,1,0) - d(2) d(1) d(2) e(0,1,0)",
        "(x(1) + 1/2)^3 * e(4)",
    ] {
        let e = parse_expression(text).unwrap();
        println!("{text:<50} = {}", print_expression(&e));
    }

    let upper = parse_expression("d(1)*e(1,0)").unwrap();
    let lower = parse_expression("d(1)*e(0,1)").unwrap();
    let prod = multiply(&upper, &lower).unwrap();
    println!("\n(d(1)e(1,0)) (d(1)e(0,1)) = {prod}");
    println!("degree {:?}", prod.degree());
    println!("json {}", prod.to_json());
}
