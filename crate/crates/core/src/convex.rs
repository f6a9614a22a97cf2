//! Exact decision procedures for the convex conditions on a weight matrix:
//! sign change of the moment map, the image being a subspace, `0` in the
//! relative interior of the column hull, the shifted version for `μ`, and
//! admissibility. Every answer ships the LPs it was decided by together with
//! their certificates.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::action::WeightMatrix;
use crate::error::{Error, Result};
use crate::exact::{check_certificate, qser, solve_lp, Certificate, LpInstance, LpStatus, Relation, Q};

/// Default cap on the number of column subsets examined by [`check_admissible`].
pub const DEFAULT_SUBSET_BUDGET: u128 = 1_000_000;

/// An LP together with the certificate of its answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedLp {
    pub lp: LpInstance,
    pub certificate: Certificate,
}

impl CertifiedLp {
    fn solve(lp: LpInstance) -> CertifiedLp {
        let sol = solve_lp(&lp).expect("internally built LP is well formed");
        CertifiedLp { lp, certificate: sol.certificate }
    }

    pub fn status(&self) -> LpStatus {
        self.certificate.status()
    }

    pub fn verify(&self) -> bool {
        check_certificate(&self.lp, &self.certificate)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionResult {
    pub holds: bool,
    /// Violating `v`, strictly positive `λ`, or similar, depending on the condition.
    #[serde(with = "qser::opt_vec", default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Q>>,
    /// Optimal `t` for the relative interior LPs.
    #[serde(with = "opt_q", default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<Q>,
    pub certificates: Vec<CertifiedLp>,
}

mod opt_q {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::exact::parse_q(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl ConditionResult {
    /// Re-checks every certificate and that their statuses are consistent with `holds`.
    pub fn verify(&self) -> bool {
        self.certificates.iter().all(CertifiedLp::verify)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionReport {
    pub sign_change: ConditionResult,
    pub image_is_subspace: ConditionResult,
    pub zero_in_relint: ConditionResult,
    pub agree: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ConditionReport {
    pub fn verify(&self) -> bool {
        self.sign_change.verify() && self.image_is_subspace.verify() && self.zero_in_relint.verify()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// 1-based column indices of the lexicographically least subset `S`,
    /// `|S| <= ℓ`, with `0 ∈ conv(columns S)`.
    pub violating_subset: Option<Vec<usize>>,
    pub relint_holds: bool,
    pub relint: ConditionResult,
    pub subsets_checked: u64,
    /// Feasible convex combination certifying the violating subset.
    pub violation_certificate: Option<CertifiedLp>,
}

fn qi(x: i64) -> Q {
    Q::from_integer(x.into())
}

fn qcol(a: &WeightMatrix, j: usize) -> Vec<Q> {
    a.column(j).into_iter().map(qi).collect()
}

fn sign_change_lp(a: &WeightMatrix) -> LpInstance {
    let ell = a.ell();
    let mut lp = LpInstance::new(ell);
    let mut total = vec![Q::zero(); ell];
    for j in 0..a.n() {
        let col = qcol(a, j);
        for (t, c) in total.iter_mut().zip(&col) {
            *t += c;
        }
        lp = lp.constraint(col, Relation::Ge, Q::zero());
    }
    lp.constraint(total, Relation::Ge, Q::one())
}

/// Sign change holds iff no `v` has `vᵀA ≥ 0` with `vᵀA ≠ 0`.
///
/// The zero matrix is reported as vacuously true.
pub fn check_sign_change(a: &WeightMatrix) -> ConditionResult {
    let c = CertifiedLp::solve(sign_change_lp(a));
    let witness = c.certificate.point().map(<[Q]>::to_vec);
    ConditionResult { holds: c.status() == LpStatus::Infeasible, witness, optimum: None, certificates: vec![c] }
}

/// The cone `A(R₊ⁿ)` is a subspace iff it contains `−a_j` for every column.
pub fn check_image_subspace(a: &WeightMatrix) -> ConditionResult {
    let n = a.n();
    let mut certificates = Vec::with_capacity(n);
    for j in 0..n {
        let mut lp = LpInstance::new(n).all_lower_bounds(Q::zero());
        let target = qcol(a, j);
        for (i, row) in a.rows().iter().enumerate() {
            lp = lp.constraint(row.iter().map(|&x| qi(x)).collect(), Relation::Eq, -target[i].clone());
        }
        let c = CertifiedLp::solve(lp);
        let infeasible = c.status() == LpStatus::Infeasible;
        certificates.push(c);
        if infeasible {
            return ConditionResult { holds: false, witness: None, optimum: None, certificates };
        }
    }
    ConditionResult { holds: true, witness: None, optimum: None, certificates }
}

/// `max t : Aλ = target, λ_j ≥ t, [Σλ = 1], lower ≤ t ≤ 1`, variables `(λ, t)`.
fn relint_lp(a: &WeightMatrix, target: &[Q], convex: bool, t_lower: Option<Q>) -> LpInstance {
    let n = a.n();
    let unit = |k: usize| {
        let mut r = vec![Q::zero(); n + 1];
        r[k] = Q::one();
        r
    };
    let mut lp = LpInstance::new(n + 1);
    for (row, b) in a.rows().iter().zip(target) {
        let mut r: Vec<Q> = row.iter().map(|&x| qi(x)).collect();
        r.push(Q::zero());
        lp = lp.constraint(r, Relation::Eq, b.clone());
    }
    if convex {
        let mut r = vec![Q::one(); n];
        r.push(Q::zero());
        lp = lp.constraint(r, Relation::Eq, Q::one());
    }
    for j in 0..n {
        let mut r = unit(j);
        r[n] = -Q::one();
        lp = lp.constraint(r, Relation::Ge, Q::zero());
    }
    lp = lp.constraint(unit(n), Relation::Le, Q::one());
    if let Some(l) = t_lower {
        lp = lp.lower_bound(n, l);
    }
    lp.maximize(unit(n))
}

fn relint_result(n: usize, c: CertifiedLp) -> ConditionResult {
    match &c.certificate {
        Certificate::Optimal { x, .. } => {
            let t = x[n].clone();
            ConditionResult {
                holds: t.is_positive(),
                witness: Some(x[..n].to_vec()),
                optimum: Some(t),
                certificates: vec![c],
            }
        }
        _ => ConditionResult { holds: false, witness: None, optimum: None, certificates: vec![c] },
    }
}

/// `0` lies in the relative interior of `conv(columns)` iff some strictly
/// positive convex combination of all columns vanishes.
pub fn check_zero_relint(a: &WeightMatrix) -> ConditionResult {
    let zero = vec![Q::zero(); a.ell()];
    relint_result(a.n(), CertifiedLp::solve(relint_lp(a, &zero, true, None)))
}

/// `μ` lies in the relative interior of the cone `A(R₊ⁿ)`.
pub fn check_mu_relint(a: &WeightMatrix, mu: &[Q]) -> Result<ConditionResult> {
    if mu.len() != a.ell() {
        return Err(Error::DimensionMismatch(format!("mu has length {} but A has {} rows", mu.len(), a.ell())));
    }
    Ok(relint_result(a.n(), CertifiedLp::solve(relint_lp(a, mu, false, Some(Q::zero())))))
}

pub fn check_conditions(a: &WeightMatrix) -> ConditionReport {
    let sign_change = check_sign_change(a);
    let image_is_subspace = check_image_subspace(a);
    let zero_in_relint = check_zero_relint(a);
    let agree = sign_change.holds == image_is_subspace.holds && image_is_subspace.holds == zero_in_relint.holds;
    let mut warnings = Vec::new();
    if a.is_zero() {
        warnings.push("zero weight matrix: the conditions hold vacuously".to_string());
    }
    ConditionReport { sign_change, image_is_subspace, zero_in_relint, agree, warnings }
}

/// `Σ_{k=1..ℓ} C(n, k)`, saturating.
pub fn subset_count(n: usize, ell: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for k in 1..=ell.min(n) {
        c = c.saturating_mul((n - k + 1) as u128) / k as u128;
        total = total.saturating_add(c);
    }
    total
}

fn zero_in_hull_lp(a: &WeightMatrix, s: &[usize]) -> LpInstance {
    let mut lp = LpInstance::new(s.len()).all_lower_bounds(Q::zero());
    for row in a.rows() {
        lp = lp.constraint(s.iter().map(|&j| qi(row[j])).collect(), Relation::Eq, Q::zero());
    }
    lp.constraint(vec![Q::one(); s.len()], Relation::Eq, Q::one())
}

/// Visits subsets of `0..n` of size `1..=max` in lexicographic order until `f` returns true.
fn find_subset(n: usize, max: usize, f: &mut impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    fn go(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        for j in start..n {
            cur.push(j);
            if f(cur) || (cur.len() < max && go(j + 1, n, max, cur, f)) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    go(0, n, max, &mut cur, f).then_some(cur)
}

pub fn check_admissible(a: &WeightMatrix) -> Result<AdmissibilityReport> {
    check_admissible_with_budget(a, DEFAULT_SUBSET_BUDGET)
}

/// Admissibility: `0` in the relative interior and `0 ∉ conv(S)` for every
/// column subset with `|S| <= ℓ`. Refuses when the subset count exceeds `budget`.
pub fn check_admissible_with_budget(a: &WeightMatrix, budget: u128) -> Result<AdmissibilityReport> {
    let needed = subset_count(a.n(), a.ell());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let relint = check_zero_relint(a);
    let mut checked = 0u64;
    let mut violation = None;
    let found = find_subset(a.n(), a.ell(), &mut |s| {
        checked += 1;
        let c = CertifiedLp::solve(zero_in_hull_lp(a, s));
        if c.status() == LpStatus::Feasible {
            violation = Some(c);
            true
        } else {
            false
        }
    });
    Ok(AdmissibilityReport {
        admissible: relint.holds && found.is_none(),
        violating_subset: found.map(|s| s.into_iter().map(|j| j + 1).collect()),
        relint_holds: relint.holds,
        relint,
        subsets_checked: checked,
        violation_certificate: violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn wm(rows: Vec<Vec<i64>>) -> WeightMatrix {
        WeightMatrix::new(rows).unwrap()
    }

    fn pentagon() -> WeightMatrix {
        wm(vec![vec![1, 0, -1, -1, 1], vec![0, 1, 1, -1, -2]])
    }

    #[test]
    fn sign_change_examples() {
        let r = check_sign_change(&wm(vec![vec![1, -1]]));
        assert!(r.holds && r.verify());
        let r = check_sign_change(&wm(vec![vec![1, 1]]));
        assert!(!r.holds && r.verify());
        let v = r.witness.unwrap();
        assert!(v[0].is_positive());
        assert!(check_sign_change(&WeightMatrix::cross_polytope(2)).holds);
    }

    #[test]
    fn image_subspace_examples() {
        let r = check_image_subspace(&wm(vec![vec![1, -1]]));
        assert!(r.holds && r.verify());
        assert_eq!(r.certificates.len(), 2);
        let r = check_image_subspace(&wm(vec![vec![1, 1]]));
        assert!(!r.holds && r.verify());
        assert_eq!(r.certificates[0].status(), LpStatus::Infeasible);
        assert!(check_image_subspace(&wm(vec![vec![1, 1, -2]])).holds);
    }

    #[test]
    fn zero_relint_examples() {
        let r = check_zero_relint(&wm(vec![vec![1, -1]]));
        assert!(r.holds && r.verify());
        assert_eq!(r.witness.unwrap(), vec![q(1) / q(2), q(1) / q(2)]);
        assert_eq!(r.optimum.unwrap(), q(1) / q(2));
        assert!(!check_zero_relint(&wm(vec![vec![1, 1]])).holds);
        let r = check_zero_relint(&WeightMatrix::cross_polytope(2));
        assert!(r.holds);
        assert_eq!(r.witness.unwrap(), vec![q(1) / q(4); 4]);
    }

    #[test]
    fn max_min_value_is_one_third() {
        let r = check_zero_relint(&wm(vec![vec![1, 1, -2]]));
        assert_eq!(r.optimum.unwrap(), q(1) / q(3));
        // oracle: λ = (s, s, 1 − 2s) with 2s = 2(1 − 2s) gives s = 1/3; min is 1/3.
        assert_eq!(r.witness.unwrap(), vec![q(1) / q(3); 3]);
    }

    #[test]
    fn mu_relint_examples() {
        let a = wm(vec![vec![1, 1]]);
        assert!(check_mu_relint(&a, &[q(1)]).unwrap().holds);
        assert!(!check_mu_relint(&a, &[q(0)]).unwrap().holds);
        assert!(!check_mu_relint(&a, &[q(-1)]).unwrap().holds);
        assert!(check_mu_relint(&wm(vec![vec![1, -1]]), &[q(0)]).unwrap().holds);
        assert!(matches!(check_mu_relint(&a, &[q(0), q(1)]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn admissibility_examples() {
        let r = check_admissible(&wm(vec![vec![1, -1]])).unwrap();
        assert!(r.admissible);
        let r = check_admissible(&WeightMatrix::cross_polytope(2)).unwrap();
        assert!(!r.admissible && r.relint_holds);
        assert_eq!(r.violating_subset, Some(vec![1, 2]));
        assert!(r.violation_certificate.unwrap().verify());
        assert!(check_admissible(&pentagon()).unwrap().admissible);
        let r = check_admissible(&wm(vec![vec![1, 0, -1]])).unwrap();
        assert_eq!(r.violating_subset, Some(vec![2]));
    }

    #[test]
    fn admissibility_budget_guard() {
        let a = wm(vec![vec![1, -1, 2, -2]]);
        assert_eq!(subset_count(4, 1), 4);
        assert_eq!(subset_count(5, 2), 15);
        assert_eq!(
            check_admissible_with_budget(&a, 3),
            Err(Error::BudgetExceeded { needed: 4, budget: 3 })
        );
        assert!(check_admissible_with_budget(&a, 4).is_ok());
    }

    #[test]
    fn zero_matrix_is_vacuous() {
        let r = check_conditions(&wm(vec![vec![0, 0], vec![0, 0]]));
        assert!(r.agree && r.sign_change.holds);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn pentagon_admissible_by_brute_force() {
        let a = pentagon();
        let cols = a.columns();
        for i in 0..5 {
            assert_ne!(cols[i], vec![0, 0]);
            for j in i + 1..5 {
                // 0 ∈ conv{u, w} iff u and w are antiparallel
                let (u, w) = (&cols[i], &cols[j]);
                let antiparallel = u[0] * w[1] == u[1] * w[0] && u[0] * w[0] + u[1] * w[1] < 0;
                assert!(!antiparallel);
            }
        }
    }

    fn cross(u: &[i64], w: &[i64]) -> i64 {
        u[0] * w[1] - u[1] * w[0]
    }

    /// Case analysis on at most three planar points.
    fn zero_in_planar_hull(p: &[Vec<i64>]) -> bool {
        let is_zero = |u: &Vec<i64>| u[0] == 0 && u[1] == 0;
        let on_segment = |u: &Vec<i64>, w: &Vec<i64>| cross(u, w) == 0 && u[0] * w[0] + u[1] * w[1] <= 0;
        match p.len() {
            1 => is_zero(&p[0]),
            2 => on_segment(&p[0], &p[1]),
            3 => {
                if (0..3).any(|i| (i + 1..3).any(|j| on_segment(&p[i], &p[j]))) {
                    return true;
                }
                let s: Vec<i64> = (0..3).map(|i| cross(&p[i], &p[(i + 1) % 3]).signum()).collect();
                s.iter().all(|&x| x > 0) || s.iter().all(|&x| x < 0)
            }
            _ => unreachable!(),
        }
    }

    fn stiemke(a: &WeightMatrix) -> bool {
        let mut lp = LpInstance::new(a.n()).all_lower_bounds(q(1));
        for row in a.rows() {
            lp = lp.constraint(row.iter().map(|&x| q(x)).collect(), Relation::Eq, q(0));
        }
        let sol = solve_lp(&lp).unwrap();
        assert!(check_certificate(&lp, &sol.certificate));
        sol.status == LpStatus::Feasible
    }

    fn arb_matrix() -> impl Strategy<Value = WeightMatrix> {
        (1usize..=3, 1usize..=6).prop_flat_map(|(l, n)| {
            prop::collection::vec(prop::collection::vec(-4i64..=4, n), l).prop_map(|r| WeightMatrix::new(r).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn three_conditions_agree(a in arb_matrix()) {
            let r = check_conditions(&a);
            prop_assert!(r.agree);
            prop_assert!(r.verify());
            prop_assert_eq!(stiemke(&a), r.sign_change.holds);
            prop_assert_eq!(check_mu_relint(&a, &vec![q(0); a.ell()]).unwrap().holds, r.zero_in_relint.holds);
        }

        #[test]
        fn admissible_implies_conditions(a in arb_matrix()) {
            let adm = check_admissible(&a).unwrap();
            if adm.admissible {
                prop_assert!(check_conditions(&a).sign_change.holds);
            }
            if let Some(s) = &adm.violating_subset {
                prop_assert!(s.len() <= a.ell());
                prop_assert!(adm.violation_certificate.as_ref().unwrap().verify());
            }
        }
    }

    #[test]
    fn planar_oracle_agrees_with_lp() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let k = rng.gen_range(1..=3);
            let pts: Vec<Vec<i64>> = (0..k).map(|_| vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)]).collect();
            let a = WeightMatrix::new(vec![pts.iter().map(|p| p[0]).collect(), pts.iter().map(|p| p[1]).collect()]).unwrap();
            let idx: Vec<usize> = (0..k).collect();
            let lp = zero_in_hull_lp(&a, &idx);
            let sol = solve_lp(&lp).unwrap();
            assert!(check_certificate(&lp, &sol.certificate));
            assert_eq!(sol.status == LpStatus::Feasible, zero_in_planar_hull(&pts), "{pts:?}");
        }
    }
}
