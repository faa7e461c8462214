//! Surveys the stock graphs: validation, Assumption (H), bubble-tower
//! detection, and the existence verdict at mass 1.
//!
//! Run with `cargo run --release --example survey`.

use nlsgraph::graph::builders;
use nlsgraph::minimize::{classify_existence, SolveOptions};

fn main() {
    let mu = 1.0;
    let graphs = [
        ("line", builders::line()),
        ("halfline", builders::halfline()),
        ("star3", builders::star(3)),
        ("star4", builders::star(4)),
        ("pendant(1)", builders::line_with_pendant(1.0)),
        ("gl(1)", builders::gl(1.0)),
        ("gl(4)", builders::gl(4.0)),
        ("tower2", builders::bubble_tower(&[2.0, 1.0])),
        ("showcase", builders::showcase()),
    ];
    println!("{:<12} {:>6} {:>7} {:>7} {:>20} {:>13}", "graph", "(H)", "trails", "tower", "verdict", "gap");
    for (name, g) in graphs {
        let h = g.check_assumption_h().0;
        let trails = g.check_assumption_h_trails();
        let tower = g.is_bubble_tower(1e-9);
        let verdict = classify_existence(&g, mu, &SolveOptions::for_mass(mu)).unwrap();
        println!(
            "{name:<12} {h:>6} {trails:>7} {tower:>7} {:>20} {:>13.3e}",
            verdict.status.as_str(),
            verdict.gap
        );
    }
}
