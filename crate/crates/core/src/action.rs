//! Weight matrices of linear torus actions, their normalization to effective
//! actions, and the quadratic moment map.
//!
//! `z_j` transforms with `exp(-2πi Σ_i a_ij ξ^i)`, so the monomial
//! `z^α zb^β` has weight `A·(β − α)` and each `z_j zb_j` is invariant.

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{hnf, QMatrix, Q};
use crate::poly::{Monomial, Poly};

/// Integer ℓ × n weight matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct WeightMatrix {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for WeightMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        WeightMatrix::new(rows)
    }
}

impl From<WeightMatrix> for Vec<Vec<i64>> {
    fn from(w: WeightMatrix) -> Self {
        w.rows
    }
}

impl WeightMatrix {
    /// Requires ℓ >= 1, n >= 1 and rectangular rows.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidInput("weight matrix needs at least one row".into()));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidInput("weight matrix needs at least one column".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("row {} has {} entries, expected {n}", i + 1, rows[i].len())));
        }
        Ok(WeightMatrix { n, rows })
    }

    /// The ℓ = 0 matrix; only produced by [`normalize`] for rank-zero inputs.
    fn empty(n: usize) -> Self {
        WeightMatrix { n, rows: vec![] }
    }

    /// Columns `±e_i`, ordered `e_1, -e_1, e_2, -e_2, …`.
    pub fn cross_polytope(ell: usize) -> Self {
        let rows = (0..ell)
            .map(|i| {
                let mut r = vec![0; 2 * ell];
                r[2 * i] = 1;
                r[2 * i + 1] = -1;
                r
            })
            .collect();
        WeightMatrix::new(rows).expect("ell >= 1")
    }

    pub fn ell(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|&x| x == 0)
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_int_rows(&self.rows, self.n).expect("rectangular")
    }

    pub fn rank(&self) -> usize {
        self.to_qmatrix().rank()
    }

    /// Submatrix on the given columns.
    pub fn select_columns(&self, cols: &[usize]) -> WeightMatrix {
        WeightMatrix { n: cols.len(), rows: self.rows.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    /// Full row rank weight matrix of the effective quotient action (0 rows for `A = 0`).
    pub effective: WeightMatrixRows,
    /// Unimodular ℓ × ℓ change of basis `U` with `U · A` in Hermite normal form.
    pub basis_change: Vec<Vec<i64>>,
    pub hermite_form: Vec<Vec<i64>>,
    pub rank: usize,
    pub was_effective: bool,
}

/// Plain rows, so that the 0 × n result of a zero matrix is representable.
pub type WeightMatrixRows = Vec<Vec<i64>>;

impl Normalization {
    /// The effective matrix, unless the input had rank 0.
    pub fn effective_matrix(&self) -> Option<WeightMatrix> {
        WeightMatrix::new(self.effective.clone()).ok()
    }
}

fn to_i64_rows(m: &[Vec<num_bigint::BigInt>]) -> Result<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::InvalidInput(format!("entry {x} does not fit in 64 bits"))))
                .collect()
        })
        .collect()
}

/// Divides out the subtorus acting trivially.
///
/// An already effective matrix is returned unchanged with the identity as
/// basis change; otherwise the nonzero rows of the Hermite normal form are
/// returned.
pub fn normalize(a: &WeightMatrix) -> Result<Normalization> {
    let h = hnf(a.rows(), a.n());
    let hermite_form = to_i64_rows(&h.h)?;
    let ell = a.ell();
    if h.rank == ell {
        let id = (0..ell).map(|i| (0..ell).map(|j| i64::from(i == j)).collect()).collect();
        return Ok(Normalization {
            effective: a.rows().to_vec(),
            basis_change: id,
            hermite_form,
            rank: ell,
            was_effective: true,
        });
    }
    let effective = if h.rank == 0 { WeightMatrix::empty(a.n()).rows } else { hermite_form[..h.rank].to_vec() };
    Ok(Normalization { effective, basis_change: to_i64_rows(&h.u)?, hermite_form, rank: h.rank, was_effective: false })
}

/// Column-wise concatenation of `m` copies of `A`.
pub fn replicate(a: &WeightMatrix, m: usize) -> Result<WeightMatrix> {
    if m == 0 {
        return Err(Error::InvalidInput("replication count must be at least 1".into()));
    }
    WeightMatrix::new(a.rows().iter().map(|r| r.repeat(m)).collect())
}

/// Torus weight `A·(β − α)` of `z^α zb^β`.
pub fn monomial_weight(a: &WeightMatrix, alpha: &[u32], beta: &[u32]) -> Result<Vec<i64>> {
    if alpha.len() != a.n() || beta.len() != a.n() {
        return Err(Error::DimensionMismatch(format!(
            "exponent vectors of length {} and {} for n = {}",
            alpha.len(),
            beta.len(),
            a.n()
        )));
    }
    Ok(Monomial::from_parts(alpha, beta).weight(a.rows()))
}

/// All invariant monomials of total degree at most `maxdeg`, ascending in the monomial order.
pub fn list_invariant_monomials(a: &WeightMatrix, maxdeg: u32) -> Vec<Monomial> {
    let n = a.n();
    let mut out = Vec::new();
    for d in 0..=maxdeg {
        for e in crate::poly::compositions_of(2 * n, d) {
            let m = Monomial::from_exponents(e);
            if m.weight(a.rows()).iter().all(|&w| w == 0) {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// Quadratic moment map `J_i = Σ_j a_ij z_j zb_j − μ_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentMap {
    weights: WeightMatrix,
    #[serde(with = "crate::exact::qser::vec")]
    shift: Vec<Q>,
}

impl MomentMap {
    pub fn new(weights: WeightMatrix, shift: Vec<Q>) -> Result<Self> {
        if shift.len() != weights.ell() {
            return Err(Error::DimensionMismatch(format!(
                "mu has length {} but the torus has dimension {}",
                shift.len(),
                weights.ell()
            )));
        }
        Ok(MomentMap { weights, shift })
    }

    pub fn homogeneous(weights: WeightMatrix) -> Self {
        let ell = weights.ell();
        MomentMap { weights, shift: vec![Q::zero(); ell] }
    }

    pub fn weights(&self) -> &WeightMatrix {
        &self.weights
    }

    pub fn shift(&self) -> &[Q] {
        &self.shift
    }

    pub fn is_homogeneous(&self) -> bool {
        self.shift.iter().all(|x| x.is_zero())
    }

    pub fn component(&self, i: usize) -> Poly {
        let n = self.weights.n();
        let mut p = Poly::constant(n, -self.shift[i].clone());
        for (j, &a) in self.weights.row(i).iter().enumerate() {
            let mut alpha = vec![0; n];
            alpha[j] = 1;
            p.add_term(Monomial::from_parts(&alpha, &alpha), Q::from_integer(a.into()));
        }
        p
    }

    pub fn components(&self) -> Vec<Poly> {
        (0..self.weights.ell()).map(|i| self.component(i)).collect()
    }
}

/// `J_i` for the unshifted map of `a`.
pub fn moment_map(a: &WeightMatrix, mu: &[Q]) -> Result<MomentMap> {
    MomentMap::new(a.clone(), mu.to_vec())
}
