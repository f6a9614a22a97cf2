use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Monomial;
use crate::exact::Q;

/// Sparse polynomial in `z_1..z_n, zb_1..zb_n` with rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let n = m.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { n, terms }
    }

    /// The coordinate `z_j` (1-based).
    pub fn z(n: usize, j: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps_mut()[j - 1] = 1;
        Self::term(m, Q::one())
    }

    /// The conjugate coordinate `zb_j` (1-based).
    pub fn zb(n: usize, j: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps_mut()[n + j - 1] = 1;
        Self::term(m, Q::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.n(), self.n);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        // multiplying by a monomial preserves the order, so no re-sorting collisions
        Poly { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    /// Partial derivative by variable index `k` in `0..2n` (`z_j` is `j-1`, `zb_j` is `n+j-1`).
    pub fn deriv(&self, k: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponents()[k];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exps_mut()[k] -= 1;
            out.add_term(d, c * Q::from_integer(BigInt::from(e)));
        }
        out
    }

    /// The distinct torus weights of the terms.
    pub fn weights(&self, a: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let mut ws: Vec<Vec<i64>> = self.terms.keys().map(|m| m.weight(a)).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    /// First monomial with nonzero weight, if any.
    pub fn non_invariant_term(&self, a: &[Vec<i64>]) -> Option<(Monomial, Vec<i64>)> {
        self.terms.keys().find_map(|m| {
            let w = m.weight(a);
            w.iter().any(|&x| x != 0).then(|| (m.clone(), w))
        })
    }

    pub fn is_invariant(&self, a: &[Vec<i64>]) -> bool {
        self.non_invariant_term(a).is_none()
    }

    /// Canonical text form, leading term first; [`super::parse_poly`] reads it back.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{abs}*{m}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
