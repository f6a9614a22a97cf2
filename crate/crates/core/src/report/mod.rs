//! Job specifications, JSON reports and SVG diagrams behind the `torusq`
//! command line tool.

mod cli;
mod svg;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{list_invariant_monomials, normalize, MomentMap, Normalization, WeightMatrix};
use crate::bfv::{NuSeries, ReducedStar};
use crate::convex::{
    check_admissible_with_budget, check_conditions, check_mu_relint, AdmissibilityReport, ConditionReport,
    ConditionResult, DEFAULT_SUBSET_BUDGET,
};
use crate::error::{Error, Result};
use crate::exact::{qser, Q};
use crate::link::{classify, oddgon_reduce, LinkKind, LinkType, OddGon};
use crate::poly::{graded_koszul_homology, parse_poly, HomologyTable, Poly};

pub use cli::{run_cli, CliOutcome};
pub use svg::emit_svg;

pub const DEFAULT_ORDER: usize = 3;
pub const DEFAULT_MAXDEG: u32 = 6;
const MAX_ORDER: usize = 10;
const MAX_MAXDEG: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Normalize,
    Check,
    Admissible,
    Classify,
    Koszul,
    Quantize,
    Diagram,
}

/// Input document; command line flags override its fields.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub weights: Vec<Vec<i64>>,
    #[serde(with = "qser::opt_vec", default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maxdeg: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerate: Option<u32>,
}

impl JobSpec {
    pub fn new(weights: Vec<Vec<i64>>) -> Self {
        JobSpec { weights, ..Default::default() }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::InvalidInput(format!("job spec: {e}")))
    }

    pub fn weight_matrix(&self) -> Result<WeightMatrix> {
        WeightMatrix::new(self.weights.clone())
    }

    pub fn order(&self) -> usize {
        self.order.unwrap_or(DEFAULT_ORDER)
    }

    pub fn maxdeg(&self) -> u32 {
        self.maxdeg.unwrap_or(DEFAULT_MAXDEG)
    }

    pub fn budget(&self) -> u128 {
        self.budget.map_or(DEFAULT_SUBSET_BUDGET, u128::from)
    }

    pub fn validate(&self) -> Result<WeightMatrix> {
        let a = self.weight_matrix()?;
        if let Some(mu) = &self.mu {
            if mu.len() != a.ell() {
                return Err(Error::DimensionMismatch(format!("mu has length {} but weights have {} rows", mu.len(), a.ell())));
            }
        }
        if self.order() > MAX_ORDER {
            return Err(Error::InvalidInput(format!("order {} exceeds the limit {MAX_ORDER}", self.order())));
        }
        if self.maxdeg() > MAX_MAXDEG {
            return Err(Error::InvalidInput(format!("maxdeg {} exceeds the limit {MAX_MAXDEG}", self.maxdeg())));
        }
        Ok(a)
    }

    fn moment_map(&self, a: &WeightMatrix) -> Result<MomentMap> {
        match &self.mu {
            Some(mu) => MomentMap::new(a.clone(), mu.clone()),
            None => Ok(MomentMap::homogeneous(a.clone())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub effective: bool,
    pub rank: usize,
    pub normalization: Normalization,
    pub conditions: ConditionReport,
    pub admissibility: AdmissibilityReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_in_relint: Option<ConditionResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyResult {
    pub link: LinkType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oddgon: Option<OddGon>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    /// Coefficients of `ν^0..ν^order`.
    pub product: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AssociativityCheck {
    pub seed: u64,
    pub triples: usize,
    pub associative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuantizeResult {
    pub order: usize,
    /// Normal forms of the supplied invariants, in input order.
    pub invariants: Vec<String>,
    pub table: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associativity: Option<AssociativityCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramResult {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
    pub bytes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "lowercase")]
pub enum Outcome {
    Normalize(Normalization),
    Check(Box<CheckResult>),
    Admissible(Box<AdmissibilityReport>),
    Classify(ClassifyResult),
    Koszul(HomologyTable),
    Quantize(QuantizeResult),
    Diagram(DiagramResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub input: JobSpec,
    pub output: Outcome,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(src: &str) -> Result<Report> {
        serde_json::from_str(src).map_err(|e| Error::InvalidInput(format!("report: {e}")))
    }
}

/// Runs one command; `out` is where `diagram` writes its SVG.
pub fn run(command: Command, job: &JobSpec, out: Option<&std::path::Path>) -> Result<Report> {
    let a = job.validate()?;
    let output = match command {
        Command::Normalize => Outcome::Normalize(normalize(&a)?),
        Command::Check => Outcome::Check(Box::new(run_check(&a, job)?)),
        Command::Admissible => Outcome::Admissible(Box::new(check_admissible_with_budget(&a, job.budget())?)),
        Command::Classify => Outcome::Classify(run_classify(&a)?),
        Command::Koszul => Outcome::Koszul(graded_koszul_homology(&job.moment_map(&a)?, job.maxdeg())?),
        Command::Quantize => Outcome::Quantize(run_quantize(&a, job)?),
        Command::Diagram => Outcome::Diagram(run_diagram(&a, out)?),
    };
    Ok(Report { tool: "torusq".into(), version: env!("CARGO_PKG_VERSION").into(), input: job.clone(), output })
}

fn run_check(a: &WeightMatrix, job: &JobSpec) -> Result<CheckResult> {
    let normalization = normalize(a)?;
    let mu_in_relint = job.mu.as_ref().map(|mu| check_mu_relint(a, mu)).transpose()?;
    Ok(CheckResult {
        effective: normalization.was_effective,
        rank: normalization.rank,
        normalization,
        conditions: check_conditions(a),
        admissibility: check_admissible_with_budget(a, job.budget())?,
        mu_in_relint,
    })
}

fn run_classify(a: &WeightMatrix) -> Result<ClassifyResult> {
    let link = classify(a)?;
    if link.kind == LinkKind::Unsupported {
        return Err(Error::Unsupported(link.description));
    }
    let oddgon = if a.ell() == 2 { Some(oddgon_reduce(a)?) } else { None };
    Ok(ClassifyResult { link, oddgon })
}

fn run_quantize(a: &WeightMatrix, job: &JobSpec) -> Result<QuantizeResult> {
    let mut sources: Vec<Poly> = Vec::new();
    for src in job.invariants.iter().flatten() {
        sources.push(parse_poly(src, a.n())?);
    }
    if let Some(d) = job.enumerate {
        for m in list_invariant_monomials(a, d).into_iter().filter(|m| !m.is_one()) {
            sources.push(Poly::term(m, Q::from_integer(1.into())));
        }
    }
    if sources.is_empty() {
        return Err(Error::InvalidInput("quantize needs invariants or --enumerate".into()));
    }
    let rs = ReducedStar::new(&job.moment_map(a)?, job.order());
    let inv: Vec<NuSeries> = sources.iter().map(|p| rs.invariant_normal_form(p)).collect::<Result<_>>()?;
    let mut table = Vec::new();
    for f in &inv {
        for g in &inv {
            let p = rs.star(f, g)?;
            table.push(ProductEntry {
                left: f.coeff(0).render(),
                right: g.coeff(0).render(),
                product: p.coeffs().iter().map(Poly::render).collect(),
            });
        }
    }
    let associativity = job.seed.map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples = 20;
        let associative = (0..triples).all(|_| {
            let mut pick = || &inv[rng.gen_range(0..inv.len())];
            let (f, g, h) = (pick(), pick(), pick());
            let l = rs.star(&rs.star(f, g).expect("checked"), h).expect("checked");
            let r = rs.star(f, &rs.star(g, h).expect("checked")).expect("checked");
            l == r
        });
        AssociativityCheck { seed, triples, associative }
    });
    Ok(QuantizeResult {
        order: job.order(),
        invariants: inv.iter().map(|s| s.coeff(0).render()).collect(),
        table,
        associativity,
    })
}

fn run_diagram(a: &WeightMatrix, out: Option<&std::path::Path>) -> Result<DiagramResult> {
    let svg = emit_svg(a)?;
    let bytes = svg.len();
    match out {
        Some(path) => {
            std::fs::write(path, &svg).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
            Ok(DiagramResult { path: Some(path.display().to_string()), svg: None, bytes })
        }
        None => Ok(DiagramResult { path: None, svg: Some(svg), bytes }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{check_certificate, q};

    fn job(w: Vec<Vec<i64>>) -> JobSpec {
        JobSpec::new(w)
    }

    #[test]
    fn jobspec_schema() {
        let j = JobSpec::from_json(r#"{"weights": [[1,-1]], "mu": ["1/2"], "order": 2, "invariants": ["z1*z2"]}"#).unwrap();
        assert_eq!(j.mu, Some(vec![q(1) / q(2)]));
        assert_eq!(j.order(), 2);
        assert_eq!(j.maxdeg(), DEFAULT_MAXDEG);
        assert!(JobSpec::from_json(r#"{"weights": [[1,-1]], "colour": 1}"#).is_err());
        assert!(JobSpec::from_json(r#"{"weights": [[1,-1]], "mu": [0.5]}"#).is_err());
        assert!(JobSpec::from_json(r#"{"mu": ["1"]}"#).is_err());
        let j = JobSpec { mu: Some(vec![q(1), q(2)]), ..job(vec![vec![1, -1]]) };
        assert!(matches!(j.validate(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn check_cross_polytope() {
        let r = run(Command::Check, &job(WeightMatrix::cross_polytope(2).rows().to_vec()), None).unwrap();
        let Outcome::Check(c) = &r.output else { panic!() };
        assert!(c.conditions.sign_change.holds && c.conditions.image_is_subspace.holds && c.conditions.zero_in_relint.holds);
        assert!(!c.admissibility.admissible);
        assert_eq!(c.admissibility.violating_subset, Some(vec![1, 2]));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let Outcome::Check(c) = back.output else { panic!() };
        for cert in c.conditions.sign_change.certificates.iter().chain(&c.conditions.zero_in_relint.certificates) {
            assert!(check_certificate(&cert.lp, &cert.certificate));
        }
    }

    #[test]
    fn classify_and_refusals() {
        let r = run(Command::Classify, &job(vec![vec![1, 1, -1]]), None).unwrap();
        let Outcome::Classify(c) = r.output else { panic!() };
        assert_eq!(c.link.description, "S^3 x S^1");
        let e = run(Command::Classify, &job(vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 1]]), None).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = run(Command::Diagram, &job(vec![vec![1], vec![1], vec![1]]), None).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn quantize_table() {
        let j = JobSpec {
            invariants: Some(vec!["z1*z2".into(), "zb1*zb2".into()]),
            order: Some(2),
            seed: Some(1),
            ..job(vec![vec![1, -1]])
        };
        let r = run(Command::Quantize, &j, None).unwrap();
        let Outcome::Quantize(t) = &r.output else { panic!() };
        let e = t.table.iter().find(|e| e.left == "z1*z2" && e.right == "zb1*zb2").unwrap();
        assert_eq!(e.product.len(), 3);
        assert_eq!(e.product[1], "3*z2*zb2");
        assert!(t.associativity.as_ref().unwrap().associative);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let bad = JobSpec { invariants: Some(vec!["z1".into()]), ..job(vec![vec![1, -1]]) };
        assert!(matches!(run(Command::Quantize, &bad, None), Err(Error::NonInvariant { .. })));
        let none = job(vec![vec![1, -1]]);
        assert_eq!(run(Command::Quantize, &none, None).unwrap_err().exit_code(), 2);
        let en = JobSpec { enumerate: Some(2), ..job(vec![vec![1, -1]]) };
        let Outcome::Quantize(t) = run(Command::Quantize, &en, None).unwrap().output else { panic!() };
        assert_eq!(t.invariants.len(), 4);
    }

    #[test]
    fn koszul_and_normalize() {
        let r = run(Command::Koszul, &JobSpec { maxdeg: Some(4), ..job(vec![vec![1, -1]]) }, None).unwrap();
        let Outcome::Koszul(t) = &r.output else { panic!() };
        assert!(t.is_acyclic());
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let shifted = JobSpec { mu: Some(vec![q(1)]), ..job(vec![vec![1, -1]]) };
        assert_eq!(run(Command::Koszul, &shifted, None).unwrap_err().exit_code(), 3);
        let r = run(Command::Normalize, &job(vec![vec![2, 4], vec![1, 2]]), None).unwrap();
        let Outcome::Normalize(n) = r.output else { panic!() };
        assert_eq!(n.effective, vec![vec![1, 2]]);
    }
}
