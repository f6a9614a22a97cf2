//! The Wick product, the deformed restriction and the reduced star product
//! on invariant normal forms, truncated at ν^4.
//!
//! ```bash
//! cargo run --example reduced_star_product
//! ```

use torusq::action::{MomentMap, WeightMatrix};
use torusq::bfv::{poisson, wick, NuSeries, ReducedStar};
use torusq::poly::parse_poly;

fn main() {
    let n = 2;
    let p = |s: &str| parse_poly(s, n).unwrap();
    let s = |src: &str| NuSeries::from_poly(p(src), 3);
    println!("z1 * zb1           = {}", wick(&s("z1"), &s("zb1")).render());
    println!("zb1 * z1           = {}", wick(&s("zb1"), &s("z1")).render());
    println!("(z1 z2) * (zb1 zb2) = {}", wick(&s("z1*z2"), &s("zb1*zb2")).render());
    println!("{{z1, zb1}}          = {}", poisson(&p("z1"), &p("zb1")));

    let mm = MomentMap::homogeneous(WeightMatrix::new(vec![vec![1, -1]]).unwrap());
    let rs = ReducedStar::new(&mm, 3);
    let gens: Vec<NuSeries> = ["z1*z2", "zb1*zb2", "z1*zb1"].iter().map(|g| rs.invariant_normal_form(&p(g)).unwrap()).collect();
    println!("\nreduced products for A = (1,-1), mod nu^4:");
    for f in &gens {
        for g in &gens {
            println!("  ({}) *0 ({}) = {}", f.coeff(0), g.coeff(0), rs.star(f, g).unwrap().render());
        }
    }

    let (w, wb, x) = (&gens[0], &gens[1], &gens[2]);
    let lhs = rs.star(&rs.star(w, wb).unwrap(), x).unwrap();
    let rhs = rs.star(w, &rs.star(wb, x).unwrap()).unwrap();
    println!("\nassociator (w *0 wb) *0 x - w *0 (wb *0 x) = {}", lhs.sub(&rhs).render());

    match rs.invariant_normal_form(&p("z1^2")) {
        Err(e) => println!("z1^2 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
