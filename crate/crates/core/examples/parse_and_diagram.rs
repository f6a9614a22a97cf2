//! Polynomial input, job specs, JSON reports and SVG pictures of conv(A).
//!
//! ```bash
//! cargo run --example parse_and_diagram -- /tmp/pentagon.svg
//! ```

use torusq::action::WeightMatrix;
use torusq::poly::parse_poly;
use torusq::report::{emit_svg, run, Command, JobSpec};

fn main() {
    let f = parse_poly("3/2*(z1 + zb1)^2 - z2*zb2", 2).unwrap();
    println!("parsed: {f}");
    match parse_poly("z1 + z3", 2) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }

    let job = JobSpec::from_json(r#"{"weights": [[1, 1, -1]], "maxdeg": 3}"#).unwrap();
    let report = run(Command::Classify, &job, None).unwrap();
    println!("{}", report.to_json());

    let a = WeightMatrix::new(vec![vec![1, 0, -1, -1, 1], vec![0, 1, 1, -1, -2]]).unwrap();
    let svg = emit_svg(&a).unwrap();
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, &svg).unwrap();
            println!("wrote {path} ({} bytes)", svg.len());
        }
        None => print!("{svg}"),
    }
}
