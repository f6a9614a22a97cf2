//! Sparse polynomials in `z_1..z_n, zb_1..zb_n` over the rationals, Gröbner
//! bases with cofactor tracking, Koszul complexes and the degree-zero
//! splitting of the augmented Koszul complex.

mod groebner;
mod koszul;
mod monomial;
mod parse;
mod polynomial;
mod splitting;

pub use groebner::{groebner, TrackedGroebnerBasis};
pub use koszul::{
    graded_koszul_homology, graded_koszul_homology_with, koszul_differential, regular_sequence_fixture_check, Chain,
    ChainCoeff, HomologyEntry, HomologyTable, KoszulChain, RankMethod,
};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use polynomial::Poly;
pub(crate) use koszul::compositions as compositions_of;
pub use splitting::{build_splitting, Splitting};
