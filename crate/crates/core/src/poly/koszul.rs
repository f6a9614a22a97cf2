//! Koszul chains `Λ^k(g) ⊗ R`, the Koszul differential, and graded Koszul
//! homology of the homogeneous quadratic moment map.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{groebner, Monomial, Poly};
use crate::action::{MomentMap, WeightMatrix};
use crate::error::{Error, Result};
use crate::exact::{bareiss_rank, QMatrix, Q};

/// Coefficients a chain can carry.
pub trait ChainCoeff: Clone + PartialEq {
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, other: &Self) -> Self;
    fn neg_coeff(&self) -> Self;
}

impl ChainCoeff for Poly {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_coeff(&self) -> Self {
        -self
    }
}

/// Element of `Λ^degree(g) ⊗ T`, keyed by sorted index subsets of `0..ell`.
///
/// `e_S` for `S = [s_0 < s_1 < …]` stands for `e_{s_0} ∧ e_{s_1} ∧ …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain<T> {
    ell: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, T>,
}

pub type KoszulChain = Chain<Poly>;

impl<T: ChainCoeff> Chain<T> {
    pub fn new(ell: usize, degree: usize) -> Self {
        assert!(degree <= ell, "chain degree {degree} exceeds ell = {ell}");
        Chain { ell, degree, terms: BTreeMap::new() }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `coeff` to the coefficient of `e_subset`; `subset` must be sorted and of size `degree`.
    pub fn add_term(&mut self, subset: Vec<usize>, coeff: T) {
        assert_eq!(subset.len(), self.degree);
        assert!(subset.windows(2).all(|w| w[0] < w[1]) && subset.iter().all(|&i| i < self.ell));
        if coeff.is_zero_coeff() {
            return;
        }
        let merged = match self.terms.remove(&subset) {
            Some(old) => old.add_coeff(&coeff),
            None => coeff,
        };
        if !merged.is_zero_coeff() {
            self.terms.insert(subset, merged);
        }
    }

    pub fn get(&self, subset: &[usize]) -> Option<&T> {
        self.terms.get(subset)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &T)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.neg_coeff());
        }
        out
    }

    /// Contraction `Σ_i ι(e^i)` followed by `act(i, coeff)`:
    /// `e_S ⊗ c ↦ Σ_p (-1)^p e_{S∖s_p} ⊗ act(s_p, c)`.
    pub fn contract_with(&self, mut act: impl FnMut(usize, &T) -> T) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::InvalidInput("contraction of a degree-0 chain".into()));
        }
        let mut out = Chain::new(self.ell, self.degree - 1);
        for (s, c) in &self.terms {
            for (p, &i) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(p);
                let v = act(i, c);
                out.add_term(rest, if p % 2 == 0 { v } else { v.neg_coeff() });
            }
        }
        Ok(out)
    }
}

impl KoszulChain {
    /// The degree-0 part as a polynomial (zero for the empty chain).
    pub fn scalar(&self, n: usize) -> Poly {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| Poly::zero(n))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(s, c)| {
                let e = if s.is_empty() {
                    "1".to_string()
                } else {
                    s.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
                };
                format!("{e} (x) ({})", c.render())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `∂ = Σ_i J_i ι(e^i)`.
pub fn koszul_differential(c: &KoszulChain, j: &[Poly]) -> Result<KoszulChain> {
    if j.len() != c.ell() {
        return Err(Error::DimensionMismatch(format!("{} generators for a chain over ell = {}", j.len(), c.ell())));
    }
    c.contract_with(|i, f| f * &j[i])
}

/// How ranks are computed in [`graded_koszul_homology_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    /// Rational row reduction on blocks split by `alpha - beta`.
    BlockedRational,
    /// Fraction-free integer elimination on the unsplit degree pieces.
    FullBareiss,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    /// Homological degree.
    pub i: usize,
    /// Total polynomial degree of the graded piece.
    pub d: u32,
    pub dim: usize,
    /// A cycle representing a nonzero class, rendered, when `dim > 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub ell: usize,
    pub maxdeg: u32,
    pub entries: Vec<HomologyEntry>,
}

impl HomologyTable {
    pub fn dim(&self, i: usize, d: u32) -> usize {
        self.entries.iter().find(|e| e.i == i && e.d == d).map_or(0, |e| e.dim)
    }

    pub fn is_acyclic(&self) -> bool {
        self.entries.iter().all(|e| e.dim == 0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|e| e.i == i).map(|e| e.dim).sum()
    }
}

fn subsets(ell: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, ell: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..ell {
            cur.push(i);
            rec(i + 1, ell, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, ell, k, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors of length `len` with entry sum `total`, in lexicographic order.
pub(crate) fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == len {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=total).rev() {
            cur.push(e);
            rec(len, total - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(len, total, &mut Vec::new(), &mut out);
    out
}

/// All `δ ∈ Z^n` with `|δ|_1 <= d` and `|δ|_1 ≡ d (mod 2)`.
fn deltas(n: usize, d: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for l1 in (0..=d).rev().step_by(2) {
        for abs in compositions(n, l1) {
            let nz: Vec<usize> = (0..n).filter(|&j| abs[j] > 0).collect();
            for signs in 0u32..(1 << nz.len()) {
                let mut v: Vec<i64> = abs.iter().map(|&x| x as i64).collect();
                for (b, &j) in nz.iter().enumerate() {
                    if signs >> b & 1 == 1 {
                        v[j] = -v[j];
                    }
                }
                out.push(v);
            }
        }
    }
    out
}

/// Monomials of total degree `e` with `alpha - beta = delta`.
fn block_monomials(delta: &[i64], e: u32) -> Vec<Monomial> {
    let l1: u32 = delta.iter().map(|x| x.unsigned_abs() as u32).sum();
    if e < l1 || (e - l1) % 2 == 1 {
        return vec![];
    }
    let n = delta.len();
    compositions(n, (e - l1) / 2)
        .into_iter()
        .map(|g| {
            let alpha: Vec<u32> = (0..n).map(|j| g[j] + delta[j].max(0) as u32).collect();
            let beta: Vec<u32> = (0..n).map(|j| g[j] + (-delta[j]).max(0) as u32).collect();
            Monomial::from_parts(&alpha, &beta)
        })
        .collect()
}

fn all_monomials(n: usize, e: u32) -> Vec<Monomial> {
    compositions(2 * n, e).into_iter().map(Monomial::from_exponents).collect()
}

/// Basis of `K_i` restricted to a set of coefficient monomials of degree `d - 2i`.
struct GradedBasis {
    elems: Vec<(Vec<usize>, Monomial)>,
    index: BTreeMap<(Vec<usize>, Monomial), usize>,
}

impl GradedBasis {
    fn new(ell: usize, i: usize, monos: &[Monomial]) -> Self {
        let mut elems = Vec::new();
        for s in subsets(ell, i) {
            for m in monos {
                elems.push((s.clone(), m.clone()));
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        GradedBasis { elems, index }
    }
}

/// Matrix of `∂_i : K_i → K_{i-1}` between two graded bases (rows = target).
fn differential_matrix(j: &[Poly], src: &GradedBasis, dst: &GradedBasis) -> QMatrix {
    let mut m = QMatrix::zeros(dst.elems.len(), src.elems.len());
    for (col, (s, mono)) in src.elems.iter().enumerate() {
        for (p, &gi) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(p);
            let sign = if p % 2 == 0 { Q::one() } else { -Q::one() };
            for (jm, jc) in j[gi].terms() {
                let key = (rest.clone(), jm.mul(mono));
                let row = *dst.index.get(&key).expect("image lies in the graded piece");
                m[(row, col)] += &sign * jc;
            }
        }
    }
    m
}

fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| {
                    assert!(x.is_integer(), "Koszul matrices of integer weights are integral");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

fn rank_of(m: &QMatrix, method: RankMethod) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    match method {
        RankMethod::BlockedRational => m.rank(),
        RankMethod::FullBareiss => bareiss_rank(&integer_rows(m)),
    }
}

/// A cycle of `dz` not in the image of `dz_up`, as a chain.
fn homology_witness(ell: usize, i: usize, n: usize, d_i: &QMatrix, d_up: &QMatrix, basis: &GradedBasis) -> Option<KoszulChain> {
    let base_rank = if d_up.cols() == 0 { 0 } else { d_up.rank() };
    for v in d_i.kernel() {
        let mut aug = QMatrix::zeros(basis.elems.len(), d_up.cols() + 1);
        for r in 0..basis.elems.len() {
            for c in 0..d_up.cols() {
                aug[(r, c)] = d_up[(r, c)].clone();
            }
            aug[(r, d_up.cols())] = v[r].clone();
        }
        if aug.rank() > base_rank {
            let mut chain = Chain::new(ell, i);
            for (k, (s, m)) in basis.elems.iter().enumerate() {
                if !v[k].is_zero() {
                    chain.add_term(s.clone(), Poly::term(m.clone(), v[k].clone()));
                }
            }
            debug_assert!(chain.terms().all(|(_, c)| c.n() == n));
            return Some(chain);
        }
    }
    None
}

/// Graded Koszul homology `H_i^{(d)}`, `1 <= i <= ℓ`, `0 <= d <= maxdeg`,
/// of the homogeneous moment map.
pub fn graded_koszul_homology(mm: &MomentMap, maxdeg: u32) -> Result<HomologyTable> {
    graded_koszul_homology_with(mm, maxdeg, RankMethod::BlockedRational)
}

/// As [`graded_koszul_homology`] with an explicit rank routine. Witnesses are
/// only produced by [`RankMethod::BlockedRational`].
pub fn graded_koszul_homology_with(mm: &MomentMap, maxdeg: u32, method: RankMethod) -> Result<HomologyTable> {
    if !mm.is_homogeneous() {
        return Err(Error::Unsupported("graded Koszul homology needs an unshifted moment map (mu = 0)".into()));
    }
    let a = mm.weights();
    let (ell, n) = (a.ell(), a.n());
    let j = mm.components();
    let mut entries = Vec::new();
    for d in 0..=maxdeg {
        // blocks: all of the degree piece at once, or one per alpha - beta
        let blocks: Vec<Box<dyn Fn(u32) -> Vec<Monomial>>> = match method {
            RankMethod::BlockedRational => deltas(n, d)
                .into_iter()
                .map(|delta| Box::new(move |e: u32| block_monomials(&delta, e)) as Box<dyn Fn(u32) -> Vec<Monomial>>)
                .collect(),
            RankMethod::FullBareiss => vec![Box::new(move |e: u32| all_monomials(n, e))],
        };
        let mut dims = vec![0usize; ell + 2];
        let mut witnesses: Vec<Option<String>> = vec![None; ell + 2];
        for block in &blocks {
            let bases: Vec<GradedBasis> = (0..=ell)
                .map(|i| {
                    let monos = if 2 * i as u32 <= d { block(d - 2 * i as u32) } else { vec![] };
                    GradedBasis::new(ell, i, &monos)
                })
                .collect();
            if bases.iter().all(|b| b.elems.is_empty()) {
                continue;
            }
            // diffs[i] : K_i -> K_{i-1}, i = 1..=ell
            let diffs: Vec<QMatrix> = (0..=ell)
                .map(|i| if i == 0 { QMatrix::zeros(0, 0) } else { differential_matrix(&j, &bases[i], &bases[i - 1]) })
                .collect();
            let ranks: Vec<usize> = (0..=ell + 1)
                .map(|i| if i == 0 || i > ell { 0 } else { rank_of(&diffs[i], method) })
                .collect();
            for i in 1..=ell {
                let h = bases[i].elems.len() - ranks[i] - ranks[i + 1];
                dims[i] += h;
                if h > 0 && witnesses[i].is_none() && method == RankMethod::BlockedRational {
                    let up = if i < ell { diffs[i + 1].clone() } else { QMatrix::zeros(bases[i].elems.len(), 0) };
                    witnesses[i] = homology_witness(ell, i, n, &diffs[i], &up, &bases[i]).map(|c| c.render());
                }
            }
        }
        for i in 1..=ell {
            entries.push(HomologyEntry { i, d, dim: dims[i], witness: witnesses[i].take() });
        }
    }
    Ok(HomologyTable { ell, maxdeg, entries })
}

/// Checks that `(J_1..J_ℓ, z_{ℓ+1} zb_{ℓ+1}, …, z_n zb_n) = (z_1 zb_1, …, z_n zb_n)`
/// by reducing each generating set modulo a Gröbner basis of the other.
///
/// `a` must be upper triangular in its first ℓ columns with nonzero diagonal.
pub fn regular_sequence_fixture_check(a: &WeightMatrix) -> Result<bool> {
    let (ell, n) = (a.ell(), a.n());
    if ell > n {
        return Err(Error::InvalidInput(format!("triangular form needs ell <= n, got {ell} x {n}")));
    }
    for i in 0..ell {
        if a.row(i)[i] == 0 {
            return Err(Error::InvalidInput(format!("diagonal entry ({}, {}) is zero", i + 1, i + 1)));
        }
        if let Some(j) = (0..i).find(|&j| a.row(i)[j] != 0) {
            return Err(Error::InvalidInput(format!("entry ({}, {}) below the diagonal is nonzero", i + 1, j + 1)));
        }
    }
    let mm = MomentMap::new(a.clone(), vec![Q::zero(); ell])?;
    let t = |k: usize| &Poly::z(n, k) * &Poly::zb(n, k);
    let mut left = mm.components();
    left.extend((ell + 1..=n).map(t));
    let right: Vec<Poly> = (1..=n).map(t).collect();
    let gb_left = groebner(&left);
    let gb_right = groebner(&right);
    Ok(right.iter().all(|f| gb_left.contains(f)) && left.iter().all(|f| gb_right.contains(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn mm(rows: Vec<Vec<i64>>) -> MomentMap {
        let a = WeightMatrix::new(rows).unwrap();
        let ell = a.ell();
        MomentMap::new(a, vec![Q::zero(); ell]).unwrap()
    }

    #[test]
    fn differential_examples() {
        let m = mm(vec![vec![1, -1], vec![0, 1]]);
        let j = m.components();
        let n = 2;
        let mut e1 = Chain::new(2, 1);
        e1.add_term(vec![0], Poly::one(n));
        assert_eq!(koszul_differential(&e1, &j).unwrap().scalar(n), j[0]);

        let mut e12 = Chain::new(2, 2);
        e12.add_term(vec![0, 1], Poly::one(n));
        let d = koszul_differential(&e12, &j).unwrap();
        assert_eq!(d.get(&[1]), Some(&j[0]));
        assert_eq!(d.get(&[0]), Some(&-&j[1]));
        let f = parse_poly("z1 + 2*zb2^2", n).unwrap();
        let mut c = Chain::new(2, 2);
        c.add_term(vec![0, 1], f);
        let dd = koszul_differential(&koszul_differential(&c, &j).unwrap(), &j).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn degree_zero_is_rejected() {
        let m = mm(vec![vec![1, -1]]);
        let c: KoszulChain = Chain::new(1, 0);
        assert!(koszul_differential(&c, &m.components()).is_err());
    }

    #[test]
    fn block_monomials_cover_degree_piece() {
        for n in 1..=3 {
            for d in 0..=4u32 {
                let total: usize = deltas(n, d).iter().map(|dl| block_monomials(dl, d).len()).sum();
                assert_eq!(total, all_monomials(n, d).len());
            }
        }
    }

    #[test]
    fn circle_action_is_acyclic() {
        let t = graded_koszul_homology(&mm(vec![vec![1, -1]]), 6).unwrap();
        assert!(t.is_acyclic());
    }

    #[test]
    fn rank_deficient_has_constant_syzygy() {
        let t = graded_koszul_homology(&mm(vec![vec![1, -1], vec![2, -2]]), 4).unwrap();
        assert!(t.dim(1, 2) > 0);
        assert_eq!(t.dim(1, 2), 1);
        // (2 e1 - e2) ⊗ 1 up to scaling
        let w = t.entries.iter().find(|e| e.i == 1 && e.d == 2).unwrap().witness.clone().unwrap();
        assert!(w == "e1 (x) (1) + e2 (x) (-1/2)" || w == "e1 (x) (-2) + e2 (x) (1)", "{w}");
    }

    #[test]
    fn cross_polytope_is_acyclic_and_methods_agree() {
        let m = mm(vec![vec![1, -1, 0, 0], vec![0, 0, 1, -1]]);
        let blocked = graded_koszul_homology(&m, 6).unwrap();
        assert!(blocked.is_acyclic());
        let full = graded_koszul_homology_with(&m, 4, RankMethod::FullBareiss).unwrap();
        assert!(full.is_acyclic());
    }

    #[test]
    fn shifted_map_is_rejected() {
        let a = WeightMatrix::new(vec![vec![1, -1]]).unwrap();
        let m = MomentMap::new(a, vec![Q::one()]).unwrap();
        assert!(matches!(graded_koszul_homology(&m, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn regular_sequence_fixtures() {
        for rows in [vec![vec![1, -1]], vec![vec![1, 0], vec![0, 1]], vec![vec![1, 2, -1], vec![0, 3, -2]]] {
            assert!(regular_sequence_fixture_check(&WeightMatrix::new(rows).unwrap()).unwrap());
        }
        assert!(regular_sequence_fixture_check(&WeightMatrix::new(vec![vec![0, 1]]).unwrap()).is_err());
        assert!(regular_sequence_fixture_check(&WeightMatrix::new(vec![vec![1, 0], vec![1, 1]]).unwrap()).is_err());
    }
}
