use super::{groebner, koszul_differential, KoszulChain, Poly, TrackedGroebnerBasis};
use crate::action::MomentMap;

/// Degree-zero splitting of the augmented Koszul complex in the polynomial
/// model: `res` is reduction to normal form, `prol` includes normal forms
/// back into the polynomial ring, `h0` returns the division witness.
///
/// `f = prol(res f) + ∂₁(h0 f)` and `h0(prol g) = 0` hold exactly.
#[derive(Debug, Clone)]
pub struct Splitting {
    moment_map: MomentMap,
    components: Vec<Poly>,
    gb: TrackedGroebnerBasis,
}

pub fn build_splitting(mm: &MomentMap) -> Splitting {
    let components = mm.components();
    let gb = groebner(&components);
    Splitting { moment_map: mm.clone(), components, gb }
}

impl Splitting {
    pub fn moment_map(&self) -> &MomentMap {
        &self.moment_map
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn groebner_basis(&self) -> &TrackedGroebnerBasis {
        &self.gb
    }

    pub fn n(&self) -> usize {
        self.gb.n()
    }

    pub fn res(&self, f: &Poly) -> Poly {
        self.gb.reduce(f)
    }

    pub fn prol(&self, nf: &Poly) -> Poly {
        nf.clone()
    }

    pub fn h0(&self, f: &Poly) -> KoszulChain {
        self.gb.normal_form(f).1
    }

    /// `(res f, h0 f)` from a single division.
    pub fn split(&self, f: &Poly) -> (Poly, KoszulChain) {
        self.gb.normal_form(f)
    }

    pub fn is_normal_form(&self, f: &Poly) -> bool {
        self.gb.divide(f).is_trivial()
    }

    /// `f == prol(res f) + ∂₁(h0 f)`.
    pub fn identity_holds(&self, f: &Poly) -> bool {
        let (nf, w) = self.split(f);
        let d = koszul_differential(&w, &self.components).expect("degree-1 chain");
        &(&self.prol(&nf) + &d.scalar(self.n())) == f
    }
}
