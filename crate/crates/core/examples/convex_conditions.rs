//! Sign change, image subspace and relative interior tests with their
//! certificates, followed by admissibility.
//!
//! ```bash
//! cargo run --example convex_conditions
//! ```

use torusq::action::WeightMatrix;
use torusq::convex::{check_admissible, check_conditions, check_mu_relint};
use torusq::exact::q;

fn main() {
    let cases = [
        ("(1,-1)", vec![vec![1, -1]]),
        ("(1,1)", vec![vec![1, 1]]),
        ("(1,1,-2)", vec![vec![1, 1, -2]]),
        ("A2", WeightMatrix::cross_polytope(2).rows().to_vec()),
        ("pentagon", vec![vec![1, 0, -1, -1, 1], vec![0, 1, 1, -1, -2]]),
    ];
    for (name, rows) in cases {
        let a = WeightMatrix::new(rows).unwrap();
        let r = check_conditions(&a);
        let adm = check_admissible(&a).unwrap();
        println!(
            "{name:<9} sign change {:<5} image subspace {:<5} 0 in relint {:<5} (t* = {})  admissible {:<5} violating {:?}",
            r.sign_change.holds,
            r.image_is_subspace.holds,
            r.zero_in_relint.holds,
            r.zero_in_relint.optimum.as_ref().map_or("-".into(), |t| t.to_string()),
            adm.admissible,
            adm.violating_subset,
        );
        assert!(r.agree && r.verify());
    }

    let a = WeightMatrix::new(vec![vec![1, 1]]).unwrap();
    for mu in [q(1), q(0)] {
        let r = check_mu_relint(&a, std::slice::from_ref(&mu)).unwrap();
        println!("A = (1,1), mu = {mu}: mu in relint of the image: {}", r.holds);
    }

    let r = check_conditions(&WeightMatrix::new(vec![vec![1, 1]]).unwrap());
    println!("\nviolating v for (1,1): {:?}", r.sign_change.witness.unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("{}", serde_json::to_string_pretty(&r.image_is_subspace.certificates[0].certificate).unwrap());
}
