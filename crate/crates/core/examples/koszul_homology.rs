//! Gröbner bases with cofactors, the degree-zero splitting and graded Koszul
//! homology of the moment map.
//!
//! ```bash
//! cargo run --example koszul_homology
//! ```

use torusq::action::{MomentMap, WeightMatrix};
use torusq::poly::{build_splitting, graded_koszul_homology, parse_poly, regular_sequence_fixture_check};

fn main() {
    let a = WeightMatrix::new(vec![vec![1, 1, -1]]).unwrap();
    let mm = MomentMap::homogeneous(a.clone());
    let s = build_splitting(&mm);
    let gb = s.groebner_basis();
    println!("Groebner basis of (J1), cofactors hold: {}", gb.cofactors_hold());
    for f in ["z1*zb1", "z1*zb1*z3*zb3", "z1*z3 + zb2*zb3"] {
        let p = parse_poly(f, 3).unwrap();
        let (nf, w) = s.split(&p);
        println!("{f}\n    res = {nf}\n    h0  = {}\n    identity holds: {}", w.render(), s.identity_holds(&p));
    }

    for rows in [vec![vec![1, -1]], vec![vec![1, -1], vec![2, -2]], WeightMatrix::cross_polytope(2).rows().to_vec()] {
        let t = graded_koszul_homology(&MomentMap::homogeneous(WeightMatrix::new(rows.clone()).unwrap()), 4).unwrap();
        println!("\nA = {rows:?}: acyclic to degree 4: {}", t.is_acyclic());
        for e in t.entries.iter().filter(|e| e.dim > 0) {
            println!("  H_{}^({}) = {}  e.g. {}", e.i, e.d, e.dim, e.witness.as_deref().unwrap_or("-"));
        }
    }

    let tri = WeightMatrix::new(vec![vec![1, 2, -1], vec![0, 3, -2]]).unwrap();
    println!("\nregular sequence identity for {:?}: {}", tri.rows(), regular_sequence_fixture_check(&tri).unwrap());
}
