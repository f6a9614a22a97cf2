//! Links of admissible one- and two-row weight matrices, odd-gon words and
//! the orbit type strata of the cross-polytope action.
//!
//! ```bash
//! cargo run --example link_topology
//! ```

use torusq::action::WeightMatrix;
use torusq::link::{classify, cross_polytope_strata, oddgon_reduce};

fn main() {
    let cases = [
        vec![vec![1, -1]],
        vec![vec![1, 1, -1]],
        vec![vec![2, 3, -1, -5]],
        vec![vec![1, 0, -1], vec![0, 1, -1]],
        vec![vec![1, 1, -1, -1], vec![0, 1, 1, -2]],
        vec![vec![1, 0, -1, -1, 1], vec![0, 1, 1, -1, -2]],
        vec![vec![3, 1, -2, -1, 0, 2, 1], vec![1, 2, 1, -1, -2, -3, 0]],
    ];
    for rows in cases {
        let a = WeightMatrix::new(rows).unwrap();
        match classify(&a) {
            Ok(t) => {
                let word = if a.ell() == 2 { format!(" word {:?}", oddgon_reduce(&a).unwrap().multiplicities) } else { String::new() };
                println!("{:?}{word}\n    {}", a.rows(), t);
            }
            Err(e) => println!("{:?}\n    {e}", a.rows()),
        }
    }

    for ell in [2, 3] {
        let p = cross_polytope_strata(ell).unwrap();
        println!("\nstrata of the cross-polytope action, ell = {ell}:");
        for s in &p.strata {
            println!("  face {:?}: {}", s.face, s.label);
        }
        if let Some(note) = &p.annotation {
            println!("  quotient: {note}");
        }
    }
}
