//! Exact rational and integer linear algebra, Hermite normal form, and a
//! certificate-producing simplex solver.

mod hnf;
mod lp;
mod matrix;
mod rational;

pub use hnf::{det, hnf, Hnf};
pub use lp::{check_certificate, solve_lp, Certificate, LpInstance, LpSolution, LpStatus, Relation};
pub use matrix::{bareiss_rank, QMatrix};
pub use rational::{parse_q, q, qser, Q};
