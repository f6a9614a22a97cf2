//! Exact LPs with checkable certificates, and integer Hermite normal form.
//!
//! ```bash
//! cargo run --example exact_lp
//! ```

use torusq::exact::{check_certificate, det, hnf, q, solve_lp, LpInstance, Relation};

fn main() {
    // max t  subject to  λ1 + λ2 − 2λ3 = 0,  Σλ = 1,  λ_j ≥ t
    let lp = LpInstance::new(4)
        .constraint(vec![q(1), q(1), q(-2), q(0)], Relation::Eq, q(0))
        .constraint(vec![q(1), q(1), q(1), q(0)], Relation::Eq, q(1))
        .constraint(vec![q(1), q(0), q(0), q(-1)], Relation::Ge, q(0))
        .constraint(vec![q(0), q(1), q(0), q(-1)], Relation::Ge, q(0))
        .constraint(vec![q(0), q(0), q(1), q(-1)], Relation::Ge, q(0))
        .maximize(vec![q(0), q(0), q(0), q(1)]);
    let sol = solve_lp(&lp).unwrap();
    println!("status {:?}, optimum t* = {}", sol.status, sol.value.clone().unwrap());
    println!("certificate checks: {}", check_certificate(&lp, &sol.certificate));
    println!("{}", serde_json::to_string(&sol.certificate).unwrap());

    // x1 + x2 >= 1 with x1, x2 <= 0 has no solution
    let infeasible = LpInstance::new(2)
        .constraint(vec![q(1), q(1)], Relation::Ge, q(1))
        .constraint(vec![q(1), q(0)], Relation::Le, q(0))
        .constraint(vec![q(0), q(1)], Relation::Le, q(0));
    let sol = solve_lp(&infeasible).unwrap();
    println!("\nstatus {:?}: {}", sol.status, serde_json::to_string(&sol.certificate).unwrap());
    println!("certificate checks: {}", check_certificate(&infeasible, &sol.certificate));

    let h = hnf(&[vec![2, 4, 6], vec![1, 3, 5]], 3);
    println!("\nHNF of [[2,4,6],[1,3,5]]: {:?}, rank {}", h.h, h.rank);
    println!("U = {:?}, det U = {}", h.u, det(&h.u));
}
