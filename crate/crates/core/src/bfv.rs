//! Truncated deformation quantization of the reduced space: the Wick star
//! product on `C^n`, the deformed Koszul differential, the deformed
//! restriction map and the reduced star product on invariant normal forms.
//!
//! All series are computed exactly modulo `ν^{N+1}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::action::MomentMap;
use crate::error::{Error, Result};
use crate::exact::Q;
use crate::poly::{build_splitting, Chain, ChainCoeff, KoszulChain, Monomial, Poly, Splitting};

/// `Σ_{k=0}^{N} ν^k p_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct NuSeries {
    coeffs: Vec<Poly>,
}

impl NuSeries {
    pub fn zero(n: usize, order: usize) -> Self {
        NuSeries { coeffs: vec![Poly::zero(n); order + 1] }
    }

    pub fn from_poly(p: Poly, order: usize) -> Self {
        let mut s = NuSeries::zero(p.n(), order);
        s.coeffs[0] = p;
        s
    }

    /// Coefficients beyond `order` are dropped.
    pub fn from_coeffs(n: usize, coeffs: Vec<Poly>, order: usize) -> Result<Self> {
        let mut s = NuSeries::zero(n, order);
        for (k, p) in coeffs.into_iter().enumerate() {
            if p.n() != n {
                return Err(Error::DimensionMismatch(format!("coefficient in {} variables, expected {n}", p.n())));
            }
            if k <= order {
                s.coeffs[k] = p;
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.coeffs[0].n()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Lowest `k` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    pub fn truncate(&self, order: usize) -> NuSeries {
        let mut s = NuSeries::zero(self.n(), order);
        for (k, p) in self.coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[k] = p.clone();
        }
        s
    }

    pub fn map(&self, mut f: impl FnMut(&Poly) -> Poly) -> NuSeries {
        NuSeries { coeffs: self.coeffs.iter().map(&mut f).collect() }
    }

    fn zip(&self, other: &NuSeries, f: impl Fn(&Poly, &Poly) -> Poly) -> NuSeries {
        let order = self.order().min(other.order());
        NuSeries { coeffs: (0..=order).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect() }
    }

    pub fn add(&self, other: &NuSeries) -> NuSeries {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &NuSeries) -> NuSeries {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> NuSeries {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &Q) -> NuSeries {
        self.map(|p| p.scale(c))
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| match k {
                0 => p.render(),
                1 => format!("nu*({})", p.render()),
                _ => format!("nu^{k}*({})", p.render()),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for NuSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod nu^{}", self.render(), self.order() + 1)
    }
}

impl ChainCoeff for NuSeries {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn neg_coeff(&self) -> Self {
        self.neg()
    }
}

/// Chains of the Koszul complex with ν-series coefficients.
pub type DeformedChain = Chain<NuSeries>;

fn for_each_box(bounds: &[u32], budget: u32, f: &mut impl FnMut(&[u32], u32)) {
    fn go(bounds: &[u32], budget: u32, cur: &mut Vec<u32>, used: u32, f: &mut impl FnMut(&[u32], u32)) {
        if cur.len() == bounds.len() {
            f(cur, used);
            return;
        }
        let b = bounds[cur.len()].min(budget - used);
        for a in 0..=b {
            cur.push(a);
            go(bounds, budget, cur, used + a, f);
            cur.pop();
        }
    }
    go(bounds, budget, &mut Vec::with_capacity(bounds.len()), 0, f);
}

fn binomial(n: u32, k: u32) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// `Σ_{|α|<=max} ν^{|α|}/α! ∂_z^α f ∂_zb^α g`, indexed by `|α|`.
fn wick_polys(f: &Poly, g: &Poly, max: usize) -> Vec<Poly> {
    let n = f.n();
    let mut out = vec![Poly::zero(n); max + 1];
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            let bounds: Vec<u32> = m1.alpha().iter().zip(m2.beta()).map(|(a, b)| *a.min(b)).collect();
            let base = m1.mul(m2);
            let c = c1 * c2;
            for_each_box(&bounds, max as u32, &mut |alpha, k| {
                let mut w = BigInt::one();
                let mut e = base.exponents().to_vec();
                for (j, &aj) in alpha.iter().enumerate() {
                    if aj > 0 {
                        w *= factorial(aj) * binomial(m1.alpha()[j], aj) * binomial(m2.beta()[j], aj);
                        e[j] -= aj;
                        e[n + j] -= aj;
                    }
                }
                out[k as usize].add_term(Monomial::from_exponents(e), &c * Q::from_integer(w));
            });
        }
    }
    out
}

/// Wick star product modulo `ν^{N+1}` with `N` the smaller of the two orders.
pub fn wick(f: &NuSeries, g: &NuSeries) -> NuSeries {
    let order = f.order().min(g.order());
    let mut out = NuSeries::zero(f.n(), order);
    for (i, fi) in f.coeffs.iter().enumerate().take(order + 1) {
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in g.coeffs.iter().enumerate().take(order + 1 - i) {
            if gj.is_zero() {
                continue;
            }
            for (k, p) in wick_polys(fi, gj, order - i - j).into_iter().enumerate() {
                if !p.is_zero() {
                    out.coeffs[i + j + k].add_assign_scaled(&p, &Q::one());
                }
            }
        }
    }
    out
}

/// `{f, g} = Σ_j (∂_{z_j} f ∂_{zb_j} g − ∂_{zb_j} f ∂_{z_j} g)`, the bracket for
/// which `J ⋆ f − f ⋆ J = ν {J, f}` holds for quadratic `J`.
pub fn poisson(f: &Poly, g: &Poly) -> Poly {
    let n = f.n();
    let mut out = Poly::zero(n);
    for j in 0..n {
        out = &(&out + &(&f.deriv(j) * &g.deriv(n + j))) - &(&f.deriv(n + j) * &g.deriv(j));
    }
    out
}

/// `Σ_i R_{J_i} ι(e^i)`: contraction followed by right Wick multiplication.
pub fn qkos(c: &DeformedChain, j: &[Poly]) -> Result<DeformedChain> {
    if j.len() != c.ell() {
        return Err(Error::DimensionMismatch(format!("{} generators for a chain over ell = {}", j.len(), c.ell())));
    }
    c.contract_with(|i, s| wick(s, &NuSeries::from_poly(j[i].clone(), s.order())))
}

/// Sign of the resolvent series summed by [`qres_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolvent {
    /// `res Σ_m (−T)^m`, `T = (qkos₁ − ∂₁) h₀`. Inverts `id + T`, so that
    /// `f = prol(qres f) + qkos₁(h₀ g)` for `g = Σ_m (−T)^m f`.
    Alternating,
    /// `res Σ_m T^m`.
    Geometric,
}

/// Reduced star product data: splitting, moment map and truncation order.
#[derive(Debug, Clone)]
pub struct ReducedStar {
    split: Splitting,
    order: usize,
    resolvent: Resolvent,
}

impl ReducedStar {
    pub fn new(mm: &MomentMap, order: usize) -> Self {
        ReducedStar { split: build_splitting(mm), order, resolvent: Resolvent::Alternating }
    }

    pub fn with_resolvent(mut self, r: Resolvent) -> Self {
        self.resolvent = r;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n(&self) -> usize {
        self.split.n()
    }

    pub fn splitting(&self) -> &Splitting {
        &self.split
    }

    pub fn series(&self, p: Poly) -> NuSeries {
        NuSeries::from_poly(p, self.order)
    }

    /// Normal form of every coefficient.
    pub fn res(&self, f: &NuSeries) -> NuSeries {
        f.map(|p| self.split.res(p))
    }

    pub fn h0(&self, f: &NuSeries) -> DeformedChain {
        let ell = self.split.components().len();
        let mut out = DeformedChain::new(ell, 1);
        for (k, p) in f.coeffs().iter().enumerate() {
            let w: KoszulChain = self.split.h0(p);
            for (s, c) in w.terms() {
                let mut coeffs = vec![Poly::zero(self.n()); k + 1];
                coeffs[k] = c.clone();
                out.add_term(s.clone(), NuSeries::from_coeffs(self.n(), coeffs, f.order()).expect("same n"));
            }
        }
        out
    }

    /// `(qkos₁ − ∂₁)(h₀ f)`, which raises the ν-order by one.
    pub fn correction(&self, f: &NuSeries) -> NuSeries {
        let j = self.split.components();
        let mut out = NuSeries::zero(self.n(), f.order());
        for (s, c) in self.h0(f).terms() {
            let ji = &j[s[0]];
            let deformed = wick(c, &NuSeries::from_poly(ji.clone(), c.order()));
            out = out.add(&deformed).sub(&c.map(|p| p * ji));
        }
        out
    }

    pub fn qres(&self, f: &NuSeries) -> NuSeries {
        let mut term = f.clone();
        let mut acc = f.clone();
        for _ in 0..self.order {
            term = self.correction(&term);
            if self.resolvent == Resolvent::Alternating {
                term = term.neg();
            }
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        self.res(&acc)
    }

    fn check_input(&self, f: &NuSeries) -> Result<()> {
        let a = self.split.moment_map().weights().rows();
        for p in f.coeffs() {
            if p.n() != self.n() {
                return Err(Error::DimensionMismatch(format!("series in {} variables, expected {}", p.n(), self.n())));
            }
            if let Some((m, w)) = p.non_invariant_term(a) {
                return Err(Error::NonInvariant { monomial: m.to_string(), weight: w });
            }
            if !self.split.is_normal_form(p) {
                return Err(Error::InvalidInput(format!("{} is not a normal form", p.render())));
            }
        }
        Ok(())
    }

    /// `f *₀ g = qres(prol f ⋆ prol g)` for invariant normal forms.
    pub fn star(&self, f: &NuSeries, g: &NuSeries) -> Result<NuSeries> {
        self.check_input(f)?;
        self.check_input(g)?;
        Ok(self.star_unchecked(f, g))
    }

    pub(crate) fn star_unchecked(&self, f: &NuSeries, g: &NuSeries) -> NuSeries {
        let f = f.truncate(self.order.min(f.order()));
        self.qres(&wick(&f, g))
    }

    /// Reduces a polynomial and checks invariance; convenience for building inputs.
    pub fn invariant_normal_form(&self, p: &Poly) -> Result<NuSeries> {
        let s = self.series(self.split.res(p));
        self.check_input(&s)?;
        Ok(s)
    }
}

/// `qres` for a one-off splitting.
pub fn qres(f: &NuSeries, split: &Splitting) -> NuSeries {
    ReducedStar { split: split.clone(), order: f.order(), resolvent: Resolvent::Alternating }.qres(f)
}

pub fn star0(f: &NuSeries, g: &NuSeries, split: &Splitting) -> Result<NuSeries> {
    let order = f.order().min(g.order());
    ReducedStar { split: split.clone(), order, resolvent: Resolvent::Alternating }.star(f, g)
}
