//! Buchberger's algorithm for degrevlex, tracking how every basis element is
//! expressed through the original generators.

use num_traits::One;

use super::{Chain, KoszulChain, Monomial, Poly};
use crate::exact::Q;

/// Reduced Gröbner basis of `(J_1, …, J_ℓ)` with cofactors:
/// `basis[k] = Σ_i cofactors[k][i] · generators[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedGroebnerBasis {
    n: usize,
    pub generators: Vec<Poly>,
    pub basis: Vec<Poly>,
    pub cofactors: Vec<Vec<Poly>>,
}

/// Result of multivariate division by the basis.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
}

fn zero_cofactors(n: usize, ell: usize) -> Vec<Poly> {
    vec![Poly::zero(n); ell]
}

/// `f -= t · g`, for a term `t = c·m`.
fn sub_term_multiple(f: &mut Poly, g: &Poly, m: &Monomial, c: &Q) {
    for (gm, gc) in g.terms() {
        f.add_term(gm.mul(m), -(gc * c));
    }
}

fn divide_by(f: &Poly, basis: &[Poly]) -> Division {
    let n = f.n();
    let mut quotients = vec![Poly::zero(n); basis.len()];
    let mut remainder = Poly::zero(n);
    let mut p = f.clone();
    while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().position(|g| g.leading().is_some_and(|(gm, _)| gm.divides(&lm)));
        match divisor {
            Some(k) => {
                let (gm, gc) = basis[k].leading().expect("nonzero divisor");
                let m = gm.quotient_of(&lm);
                let c = &lc / gc;
                sub_term_multiple(&mut p, &basis[k], &m, &c);
                quotients[k].add_term(m, c);
            }
            None => {
                p.add_term(lm.clone(), -lc.clone());
                remainder.add_term(lm, lc);
            }
        }
    }
    Division { quotients, remainder }
}

/// Computes the reduced, tracked Gröbner basis of `generators`.
///
/// Zero generators are allowed; they keep their index in the cofactor
/// vectors but contribute nothing.
pub fn groebner(generators: &[Poly]) -> TrackedGroebnerBasis {
    assert!(!generators.is_empty(), "groebner needs at least one generator");
    let n = generators[0].n();
    let ell = generators.len();

    let mut basis: Vec<Poly> = Vec::new();
    let mut cofs: Vec<Vec<Poly>> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut c = zero_cofactors(n, ell);
        c[i] = Poly::one(n);
        basis.push(g.clone());
        cofs.push(c);
    }

    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, ci) = basis[i].leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let (mj, cj) = basis[j].leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        if mi.coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let (ui, uj) = (mi.quotient_of(&l), mj.quotient_of(&l));
        let (ai, aj) = (ci.recip(), cj.recip());
        let s = &basis[i].mul_term(&ui, &ai) - &basis[j].mul_term(&uj, &aj);
        let mut s_cof: Vec<Poly> =
            cofs[i].iter().zip(&cofs[j]).map(|(x, y)| &x.mul_term(&ui, &ai) - &y.mul_term(&uj, &aj)).collect();
        let div = divide_by(&s, &basis);
        if div.remainder.is_zero() {
            continue;
        }
        for (q, c) in div.quotients.iter().zip(&cofs) {
            if q.is_zero() {
                continue;
            }
            for (sc, ck) in s_cof.iter_mut().zip(c) {
                *sc = &*sc - &(q * ck);
            }
        }
        let k = basis.len();
        basis.push(div.remainder);
        cofs.push(s_cof);
        pairs.extend((0..k).map(|i| (i, k)));
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..basis.len() {
        let lm = basis[k].leading().unwrap().0;
        let redundant = (0..basis.len()).any(|o| {
            if o == k {
                return false;
            }
            let om = basis[o].leading().unwrap().0;
            om.divides(lm) && (om != lm || o < k)
        });
        if !redundant {
            keep.push(k);
        }
    }
    let mut basis: Vec<Poly> = keep.iter().map(|&k| basis[k].clone()).collect();
    let mut cofs: Vec<Vec<Poly>> = keep.iter().map(|&k| cofs[k].clone()).collect();

    // interreduce tails and make monic
    for k in 0..basis.len() {
        let others: Vec<Poly> =
            basis.iter().enumerate().map(|(o, g)| if o == k { Poly::zero(n) } else { g.clone() }).collect();
        let div = divide_by(&basis[k], &others);
        let mut c = cofs[k].clone();
        for (o, q) in div.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (ci, co) in c.iter_mut().zip(&cofs[o]) {
                *ci = &*ci - &(q * co);
            }
        }
        let lc = div.remainder.leading().expect("leading term survives").1.recip();
        basis[k] = div.remainder.scale(&lc);
        cofs[k] = c.iter().map(|p| p.scale(&lc)).collect();
    }

    // deterministic order: ascending leading monomial
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| basis[a].leading().unwrap().0.cmp(basis[b].leading().unwrap().0));
    TrackedGroebnerBasis {
        n,
        generators: generators.to_vec(),
        basis: idx.iter().map(|&k| basis[k].clone()).collect(),
        cofactors: idx.iter().map(|&k| cofs[k].clone()).collect(),
    }
}

impl TrackedGroebnerBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.generators.len()
    }

    pub fn divide(&self, f: &Poly) -> Division {
        divide_by(f, &self.basis)
    }

    /// Normal form and the generator-level division witness
    /// `Σ_i e_i ⊗ F_i` with `f = Σ_i F_i J_i + nf`.
    pub fn normal_form(&self, f: &Poly) -> (Poly, KoszulChain) {
        let div = self.divide(f);
        let mut witness = Chain::new(self.ell(), 1);
        for i in 0..self.ell() {
            let mut fi = Poly::zero(self.n);
            for (q, c) in div.quotients.iter().zip(&self.cofactors) {
                if !q.is_zero() && !c[i].is_zero() {
                    fi = &fi + &(q * &c[i]);
                }
            }
            witness.add_term(vec![i], fi);
        }
        (div.remainder, witness)
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        self.divide(f).remainder
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    /// Every cofactor identity `g = Σ c_i J_i` holds exactly.
    pub fn cofactors_hold(&self) -> bool {
        self.basis.iter().zip(&self.cofactors).all(|(g, c)| {
            let mut sum = Poly::zero(self.n);
            for (ci, ji) in c.iter().zip(&self.generators) {
                sum = &sum + &(ci * ji);
            }
            &sum == g
        })
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn s_polynomials_reduce(&self) -> bool {
        let b = &self.basis;
        (0..b.len()).all(|j| {
            (0..j).all(|i| {
                let (mi, ci) = b[i].leading().unwrap();
                let (mj, cj) = b[j].leading().unwrap();
                let l = mi.lcm(mj);
                let s = &b[i].mul_term(&mi.quotient_of(&l), &ci.recip()) - &b[j].mul_term(&mj.quotient_of(&l), &cj.recip());
                self.contains(&s)
            })
        })
    }

    pub fn is_reduced(&self) -> bool {
        self.basis.iter().enumerate().all(|(k, g)| {
            g.leading().is_some_and(|(_, c)| c.is_one())
                && g.terms().all(|(m, _)| {
                    self.basis.iter().enumerate().all(|(o, h)| o == k || !h.leading().unwrap().0.divides(m))
                })
        })
    }
}

impl Division {
    pub fn is_trivial(&self) -> bool {
        self.quotients.iter().all(|q| q.is_zero())
    }
}
