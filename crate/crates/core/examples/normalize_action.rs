//! Weight matrices, the effective quotient action and invariant monomials.
//!
//! ```bash
//! cargo run --example normalize_action
//! ```

use torusq::action::{list_invariant_monomials, monomial_weight, normalize, replicate, MomentMap, WeightMatrix};

fn main() {
    let a = WeightMatrix::new(vec![vec![2, 4, -6], vec![1, 2, -3]]).unwrap();
    let out = normalize(&a).unwrap();
    println!("A = {:?}", a.rows());
    println!("rank {}, effective already: {}", out.rank, out.was_effective);
    println!("effective matrix {:?}", out.effective);
    println!("basis change {:?}", out.basis_change);

    let e = out.effective_matrix().unwrap();
    let mm = MomentMap::homogeneous(e.clone());
    for (i, j) in mm.components().iter().enumerate() {
        println!("J{} = {}", i + 1, j);
    }

    println!("\ninvariant monomials up to degree 3:");
    for m in list_invariant_monomials(&e, 3) {
        println!("  {m}");
    }
    println!("weight of z1*zb3: {:?}", monomial_weight(&e, &[1, 0, 0], &[0, 0, 1]).unwrap());

    let a2 = WeightMatrix::cross_polytope(2);
    println!("\ncross-polytope A2 = {:?}", a2.rows());
    println!("A2 replicated twice: {:?}", replicate(&a2, 2).unwrap().rows());
}
