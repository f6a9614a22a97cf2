//! Exact two-phase simplex with Bland's rule.
//!
//! Every answer carries a [`Certificate`] that [`check_certificate`] verifies
//! by plain rational arithmetic, without reference to the solver.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{qser, QMatrix, Q};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

/// `A x (rel) b`, `x_j >= lower_j` where a bound is given, optionally maximizing `c·x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpInstance {
    pub nvars: usize,
    #[serde(with = "qser::mat")]
    pub a: Vec<Vec<Q>>,
    pub relations: Vec<Relation>,
    #[serde(with = "qser::vec")]
    pub b: Vec<Q>,
    /// Maximized when present.
    #[serde(with = "qser::opt_vec", default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<Vec<Q>>,
    /// `None` marks a free variable.
    #[serde(with = "qser::opt_vec_opt")]
    pub lower: Vec<Option<Q>>,
}

impl LpInstance {
    /// Pure feasibility problem over free variables.
    pub fn new(nvars: usize) -> Self {
        LpInstance { nvars, a: vec![], relations: vec![], b: vec![], objective: None, lower: vec![None; nvars] }
    }

    pub fn constraint(mut self, row: Vec<Q>, rel: Relation, rhs: Q) -> Self {
        self.a.push(row);
        self.relations.push(rel);
        self.b.push(rhs);
        self
    }

    pub fn lower_bound(mut self, j: usize, l: Q) -> Self {
        self.lower[j] = Some(l);
        self
    }

    pub fn all_lower_bounds(mut self, l: Q) -> Self {
        self.lower = vec![Some(l); self.nvars];
        self
    }

    pub fn maximize(mut self, c: Vec<Q>) -> Self {
        self.objective = Some(c);
        self
    }

    pub fn matrix(&self) -> QMatrix {
        QMatrix::from_rows(self.a.clone(), self.nvars).expect("validated instance")
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.a.len();
        if self.relations.len() != m || self.b.len() != m {
            return Err(Error::MalformedInstance(format!(
                "{} rows, {} relations, {} right-hand sides",
                m,
                self.relations.len(),
                self.b.len()
            )));
        }
        if let Some(i) = self.a.iter().position(|r| r.len() != self.nvars) {
            return Err(Error::MalformedInstance(format!(
                "row {i} has {} entries for {} variables",
                self.a[i].len(),
                self.nvars
            )));
        }
        if self.lower.len() != self.nvars {
            return Err(Error::MalformedInstance(format!("{} bounds for {} variables", self.lower.len(), self.nvars)));
        }
        if let Some(c) = &self.objective {
            if c.len() != self.nvars {
                return Err(Error::MalformedInstance(format!("objective of length {} for {} variables", c.len(), self.nvars)));
            }
        }
        Ok(())
    }

    /// Exact feasibility test of a point.
    pub fn is_feasible(&self, x: &[Q]) -> bool {
        if x.len() != self.nvars {
            return false;
        }
        let bounds_ok = self.lower.iter().zip(x).all(|(l, v)| l.as_ref().is_none_or(|l| v >= l));
        bounds_ok
            && self.a.iter().zip(&self.relations).zip(&self.b).all(|((row, rel), rhs)| {
                let lhs = dot(row, x);
                match rel {
                    Relation::Eq => &lhs == rhs,
                    Relation::Ge => &lhs >= rhs,
                    Relation::Le => &lhs <= rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[Q]) -> Option<Q> {
        self.objective.as_ref().map(|c| dot(c, x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Feasible,
    Infeasible,
    Unbounded,
}

/// Machine-checkable witness for an LP answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// A point satisfying every constraint.
    FeasiblePoint {
        #[serde(with = "qser::vec")]
        x: Vec<Q>,
    },
    /// A feasible point plus dual multipliers whose bound equals its objective value.
    Optimal {
        #[serde(with = "qser::vec")]
        x: Vec<Q>,
        #[serde(with = "qser::vec")]
        dual: Vec<Q>,
    },
    /// Farkas multipliers `y`: `y_i >= 0` on `>=` rows, `y_i <= 0` on `<=` rows,
    /// `r = yᵀA` vanishes on free variables and is `<= 0` on bounded ones, and
    /// `Σ r_j l_j < yᵀb`.
    InfeasibilityMultipliers {
        #[serde(with = "qser::vec")]
        y: Vec<Q>,
    },
    /// A feasible point and a recession direction that strictly improves the objective.
    Unbounded {
        #[serde(with = "qser::vec")]
        x: Vec<Q>,
        #[serde(with = "qser::vec")]
        ray: Vec<Q>,
    },
}

impl Certificate {
    pub fn status(&self) -> LpStatus {
        match self {
            Certificate::FeasiblePoint { .. } | Certificate::Optimal { .. } => LpStatus::Feasible,
            Certificate::InfeasibilityMultipliers { .. } => LpStatus::Infeasible,
            Certificate::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn point(&self) -> Option<&[Q]> {
        match self {
            Certificate::FeasiblePoint { x } | Certificate::Optimal { x, .. } | Certificate::Unbounded { x, .. } => Some(x),
            Certificate::InfeasibilityMultipliers { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub certificate: Certificate,
    /// Optimal objective value, when an objective is present and attained.
    pub value: Option<Q>,
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// `yᵀA` as a length-`nvars` vector.
fn row_combination(lp: &LpInstance, y: &[Q]) -> Vec<Q> {
    let mut r = vec![Q::zero(); lp.nvars];
    for (row, yi) in lp.a.iter().zip(y) {
        if yi.is_zero() {
            continue;
        }
        for (rj, aij) in r.iter_mut().zip(row) {
            if !aij.is_zero() {
                *rj += yi * aij;
            }
        }
    }
    r
}

/// Validates a certificate against an instance using arithmetic alone.
pub fn check_certificate(lp: &LpInstance, cert: &Certificate) -> bool {
    if lp.validate().is_err() {
        return false;
    }
    let m = lp.a.len();
    match cert {
        Certificate::FeasiblePoint { x } => lp.is_feasible(x),
        Certificate::Optimal { x, dual } => {
            let Some(c) = &lp.objective else { return false };
            if !lp.is_feasible(x) || dual.len() != m {
                return false;
            }
            let signs_ok = lp.relations.iter().zip(dual).all(|(rel, y)| match rel {
                Relation::Eq => true,
                Relation::Ge => !y.is_positive(),
                Relation::Le => !y.is_negative(),
            });
            if !signs_ok {
                return false;
            }
            let r = row_combination(lp, dual);
            let mut bound = dot(dual, &lp.b);
            for ((cj, rj), l) in c.iter().zip(&r).zip(&lp.lower) {
                match l {
                    None if cj != rj => return false,
                    None => {}
                    Some(_) if cj > rj => return false,
                    Some(l) => bound += (cj - rj) * l,
                }
            }
            bound == dot(c, x)
        }
        Certificate::InfeasibilityMultipliers { y } => {
            if y.len() != m {
                return false;
            }
            let signs_ok = lp.relations.iter().zip(y).all(|(rel, y)| match rel {
                Relation::Eq => true,
                Relation::Ge => !y.is_negative(),
                Relation::Le => !y.is_positive(),
            });
            if !signs_ok {
                return false;
            }
            let r = row_combination(lp, y);
            let mut upper = Q::zero();
            for (rj, l) in r.iter().zip(&lp.lower) {
                match l {
                    None if !rj.is_zero() => return false,
                    None => {}
                    Some(_) if rj.is_positive() => return false,
                    Some(l) => upper += rj * l,
                }
            }
            upper < dot(y, &lp.b)
        }
        Certificate::Unbounded { x, ray } => {
            let Some(c) = &lp.objective else { return false };
            if !lp.is_feasible(x) || ray.len() != lp.nvars {
                return false;
            }
            let rows_ok = lp.a.iter().zip(&lp.relations).all(|(row, rel)| {
                let v = dot(row, ray);
                match rel {
                    Relation::Eq => v.is_zero(),
                    Relation::Ge => !v.is_negative(),
                    Relation::Le => !v.is_positive(),
                }
            });
            let bounds_ok = lp.lower.iter().zip(ray).all(|(l, d)| l.is_none() || !d.is_negative());
            rows_ok && bounds_ok && dot(c, ray).is_positive()
        }
    }
}

/// How an original variable maps onto standard-form columns.
#[derive(Clone, Copy)]
enum VarMap {
    Shifted(usize),
    Split(usize, usize),
}

struct Tableau {
    m: usize,
    /// structural + slack columns; artificials follow at `ns..ns + m`
    ns: usize,
    t: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

enum Outcome {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.m {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for (v, p) in self.t[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// `c_Bᵀ B⁻¹`, read off the artificial columns.
    fn duals(&self, cost: &[Q]) -> Vec<Q> {
        (0..self.m)
            .map(|i| {
                (0..self.m)
                    .filter(|&k| !cost[self.basis[k]].is_zero())
                    .map(|k| &cost[self.basis[k]] * &self.t[k][self.ns + i])
                    .sum()
            })
            .collect()
    }

    /// Minimizes `cost` with Bland's rule; only columns `< ns` may enter.
    fn run(&mut self, cost: &[Q]) -> Outcome {
        loop {
            let entering = (0..self.ns).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for k in 0..self.m {
                    let cb = &cost[self.basis[k]];
                    if !cb.is_zero() && !self.t[k][j].is_zero() {
                        d -= cb * &self.t[k][j];
                    }
                }
                d.is_negative()
            });
            let Some(j) = entering else { return Outcome::Optimal };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.m {
                if !self.t[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.t[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((i, _)) => self.pivot(i, j),
                None => return Outcome::Unbounded(j),
            }
        }
    }

    fn values(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.ns + self.m];
        for (k, &b) in self.basis.iter().enumerate() {
            v[b] = self.rhs[k].clone();
        }
        v
    }
}

/// Solves `lp` exactly.
///
/// Feasibility problems yield a feasible point or Farkas multipliers; with an
/// objective the answer is an optimal point with a dual bound, or a ray.
pub fn solve_lp(lp: &LpInstance) -> Result<LpSolution> {
    lp.validate()?;
    let m = lp.a.len();

    let mut vmap = Vec::with_capacity(lp.nvars);
    let mut ncols = 0;
    for l in &lp.lower {
        match l {
            Some(_) => {
                vmap.push(VarMap::Shifted(ncols));
                ncols += 1;
            }
            None => {
                vmap.push(VarMap::Split(ncols, ncols + 1));
                ncols += 2;
            }
        }
    }
    let nstruct = ncols;
    let mut slack_of = vec![None; m];
    for (i, rel) in lp.relations.iter().enumerate() {
        if *rel != Relation::Eq {
            slack_of[i] = Some(ncols);
            ncols += 1;
        }
    }
    let ns = ncols;

    let mut t = vec![vec![Q::zero(); ns + m]; m];
    let mut rhs = vec![Q::zero(); m];
    let mut sigma = vec![Q::one(); m];
    for i in 0..m {
        let mut b = lp.b[i].clone();
        for (j, aij) in lp.a[i].iter().enumerate() {
            if aij.is_zero() {
                continue;
            }
            match vmap[j] {
                VarMap::Shifted(c) => {
                    t[i][c] = aij.clone();
                    b -= aij * lp.lower[j].as_ref().expect("shifted variable has a bound");
                }
                VarMap::Split(p, n) => {
                    t[i][p] = aij.clone();
                    t[i][n] = -aij.clone();
                }
            }
        }
        if let Some(s) = slack_of[i] {
            t[i][s] = if lp.relations[i] == Relation::Ge { -Q::one() } else { Q::one() };
        }
        if b.is_negative() {
            sigma[i] = -Q::one();
            for v in t[i].iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        t[i][ns + i] = Q::one();
        rhs[i] = b;
    }
    let mut tab = Tableau { m, ns, t, rhs, basis: (ns..ns + m).collect() };

    let to_original = |v: &[Q]| -> Vec<Q> {
        vmap.iter()
            .enumerate()
            .map(|(j, vm)| match *vm {
                VarMap::Shifted(c) => lp.lower[j].as_ref().expect("bounded") + &v[c],
                VarMap::Split(p, n) => &v[p] - &v[n],
            })
            .collect()
    };

    // phase I
    let mut cost1 = vec![Q::zero(); ns + m];
    for c in cost1.iter_mut().skip(ns) {
        *c = Q::one();
    }
    tab.run(&cost1);
    let infeas: Q = (0..m).filter(|&k| tab.basis[k] >= ns).map(|k| tab.rhs[k].clone()).sum();
    if infeas.is_positive() {
        let pi = tab.duals(&cost1);
        let y: Vec<Q> = pi.iter().zip(&sigma).map(|(p, s)| p * s).collect();
        let certificate = Certificate::InfeasibilityMultipliers { y };
        debug_assert!(check_certificate(lp, &certificate));
        return Ok(LpSolution { status: LpStatus::Infeasible, certificate, value: None });
    }
    for k in 0..m {
        if tab.basis[k] >= ns {
            if let Some(j) = (0..ns).find(|&j| !tab.t[k][j].is_zero()) {
                tab.pivot(k, j);
            }
        }
    }

    let Some(c) = &lp.objective else {
        let certificate = Certificate::FeasiblePoint { x: to_original(&tab.values()) };
        debug_assert!(check_certificate(lp, &certificate));
        return Ok(LpSolution { status: LpStatus::Feasible, certificate, value: None });
    };

    // phase II: minimize -c
    let mut cost2 = vec![Q::zero(); ns + m];
    for (j, vm) in vmap.iter().enumerate() {
        match *vm {
            VarMap::Shifted(col) => cost2[col] = -c[j].clone(),
            VarMap::Split(p, n) => {
                cost2[p] = -c[j].clone();
                cost2[n] = c[j].clone();
            }
        }
    }
    debug_assert!(nstruct <= ns);
    match tab.run(&cost2) {
        Outcome::Optimal => {
            let x = to_original(&tab.values());
            let pi = tab.duals(&cost2);
            let dual: Vec<Q> = pi.iter().zip(&sigma).map(|(p, s)| -(p * s)).collect();
            let value = lp.objective_value(&x);
            let certificate = Certificate::Optimal { x, dual };
            debug_assert!(check_certificate(lp, &certificate));
            Ok(LpSolution { status: LpStatus::Feasible, certificate, value })
        }
        Outcome::Unbounded(j) => {
            let x = to_original(&tab.values());
            let mut d = vec![Q::zero(); ns + m];
            d[j] = Q::one();
            for k in 0..m {
                d[tab.basis[k]] = -tab.t[k][j].clone();
            }
            let ray: Vec<Q> = vmap
                .iter()
                .map(|vm| match *vm {
                    VarMap::Shifted(col) => d[col].clone(),
                    VarMap::Split(p, n) => &d[p] - &d[n],
                })
                .collect();
            let certificate = Certificate::Unbounded { x, ray };
            debug_assert!(check_certificate(lp, &certificate));
            Ok(LpSolution { status: LpStatus::Unbounded, certificate, value: None })
        }
    }
}
