//! Diffeomorphism types of links `X_A = Z ∩ S^{2n-1}` for admissible weight
//! matrices with one or two rows, the odd-gon reduction of planar
//! configurations, and the orbit type strata of the cross-polytope action.

use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::action::WeightMatrix;
use crate::convex::check_admissible;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkKind {
    ProductOfTwoSpheres,
    ProductOfThreeSpheres,
    ConnectedSum,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkType {
    pub kind: LinkKind,
    /// Sphere dimensions of each connected summand.
    pub summands: Vec<Vec<u32>>,
    pub description: String,
}

impl LinkType {
    fn products(kind: LinkKind, summands: Vec<Vec<u32>>) -> LinkType {
        let description = summands
            .iter()
            .map(|s| s.iter().map(|d| format!("S^{d}")).collect::<Vec<_>>().join(" x "))
            .collect::<Vec<_>>()
            .join(" # ");
        LinkType { kind, summands, description }
    }

    pub fn unsupported(reason: impl Into<String>) -> LinkType {
        LinkType { kind: LinkKind::Unsupported, summands: vec![], description: reason.into() }
    }
}

impl std::fmt::Display for LinkType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.description)
    }
}

/// Cyclic multiplicity word of an odd polygon centered at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddGon {
    pub k: usize,
    pub multiplicities: Vec<u64>,
}

impl OddGon {
    pub fn n(&self) -> u64 {
        self.multiplicities.iter().sum()
    }
}

fn require_admissible(a: &WeightMatrix) -> Result<()> {
    let rep = check_admissible(a)?;
    if rep.admissible {
        return Ok(());
    }
    let why = match rep.violating_subset {
        Some(s) => format!("0 lies in the convex hull of columns {s:?}"),
        None => "0 is not in the relative interior of the column hull".to_string(),
    };
    Err(Error::NotAdmissible(why))
}

/// `S^{2n₊−1} x S^{2n₋−1}` for an admissible single row.
pub fn classify_l1(a: &WeightMatrix) -> Result<LinkType> {
    if a.ell() != 1 {
        return Err(Error::DimensionMismatch(format!("expected one row, got {}", a.ell())));
    }
    require_admissible(a)?;
    let pos = a.row(0).iter().filter(|&&x| x > 0).count() as u32;
    let neg = a.row(0).iter().filter(|&&x| x < 0).count() as u32;
    Ok(LinkType::products(LinkKind::ProductOfTwoSpheres, vec![vec![2 * pos - 1, 2 * neg - 1]]))
}

pub(crate) type Dir = [i64; 2];

pub(crate) fn primitive(v: Dir) -> Dir {
    let g = v[0].gcd(&v[1]);
    [v[0] / g, v[1] / g]
}

fn upper(v: &Dir) -> bool {
    v[1] > 0 || (v[1] == 0 && v[0] > 0)
}

pub(crate) fn cross(u: &Dir, w: &Dir) -> i64 {
    u[0] * w[1] - u[1] * w[0]
}

/// Counterclockwise angle order starting at the positive x axis.
pub(crate) fn angle_cmp(u: &Dir, w: &Dir) -> Ordering {
    upper(w).cmp(&upper(u)).then_with(|| 0.cmp(&cross(u, w)))
}

/// Primitive directions of the columns with multiplicities, in angle order.
pub(crate) fn direction_classes(a: &WeightMatrix) -> Vec<(Dir, u64)> {
    let mut classes: Vec<(Dir, u64)> = Vec::new();
    for c in a.columns() {
        let d = primitive([c[0], c[1]]);
        match classes.iter_mut().find(|(e, _)| *e == d) {
            Some((_, m)) => *m += 1,
            None => classes.push((d, 1)),
        }
    }
    classes.sort_by(|x, y| angle_cmp(&x.0, &y.0));
    classes
}

/// Reduces an admissible planar configuration to its odd-gon.
///
/// Two neighbouring directions merge exactly when no antipode of the
/// configuration separates them, so the fixed point collapses each maximal
/// antipode-free run of directions into one vertex.
pub fn oddgon_reduce(a: &WeightMatrix) -> Result<OddGon> {
    if a.ell() != 2 {
        return Err(Error::DimensionMismatch(format!("expected two rows, got {}", a.ell())));
    }
    require_admissible(a)?;
    let classes = direction_classes(a);
    // (direction, Some(multiplicity)) for columns, (antipode, None) for their negatives
    let mut seq: Vec<(Dir, Option<u64>)> = classes.iter().map(|&(d, m)| (d, Some(m))).collect();
    seq.extend(classes.iter().map(|&(d, _)| ([-d[0], -d[1]], None)));
    seq.sort_by(|x, y| angle_cmp(&x.0, &y.0));

    let least = classes.iter().map(|c| c.0).min().expect("nonempty");
    let start = seq.iter().position(|e| e.0 == least).unwrap();
    // rotate back to the first element of the run containing `least`
    let len = seq.len();
    let mut first = start;
    while seq[(first + len - 1) % len].1.is_some() {
        first = (first + len - 1) % len;
    }
    let mut word = Vec::new();
    let mut run = 0u64;
    for step in 0..len {
        match seq[(first + step) % len].1 {
            Some(m) => run += m,
            None if run > 0 => {
                word.push(run);
                run = 0;
            }
            None => {}
        }
    }
    if run > 0 {
        word.push(run);
    }
    debug_assert!(word.len() % 2 == 1 && word.len() >= 3);
    Ok(OddGon { k: (word.len() - 1) / 2, multiplicities: word })
}

/// Link type of an odd-gon word.
pub fn classify_oddgon(g: &OddGon) -> LinkType {
    let m = &g.multiplicities;
    if g.k == 1 {
        return LinkType::products(LinkKind::ProductOfThreeSpheres, vec![m.iter().map(|&x| 2 * x as u32 - 1).collect()]);
    }
    let n = g.n();
    let len = m.len();
    let summands = (0..len)
        .map(|i| {
            let d: u64 = (0..g.k).map(|s| m[(i + s) % len]).sum();
            vec![(2 * d - 1) as u32, (2 * n - 2 * d - 2) as u32]
        })
        .collect();
    LinkType::products(LinkKind::ConnectedSum, summands)
}

pub fn classify_l2(a: &WeightMatrix) -> Result<LinkType> {
    Ok(classify_oddgon(&oddgon_reduce(a)?))
}

/// Dispatches on ℓ; three or more rows give an `Unsupported` result.
pub fn classify(a: &WeightMatrix) -> Result<LinkType> {
    match a.ell() {
        1 => classify_l1(a),
        2 => classify_l2(a),
        l => Ok(LinkType::unsupported(format!("no classification available for a torus of dimension {l}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    /// 1-based indices of the circle factors with nonzero radius.
    pub face: Vec<usize>,
    pub label: String,
}

/// Face poset of `Δ^{ℓ−1}`, ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataPoset {
    pub ell: usize,
    pub strata: Vec<Stratum>,
    /// Cover relations `(lower, upper)` as indices into `strata`.
    pub covers: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

impl StrataPoset {
    pub fn atoms(&self) -> usize {
        self.strata.iter().filter(|s| s.face.len() == 1).count()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.strata[i].face.iter().all(|x| self.strata[j].face.contains(x))
    }
}

fn stratum_label(k: usize) -> String {
    match k {
        1 => "S^1".into(),
        2 => "S^1 x S^1 x (0,1)".into(),
        _ => format!("(S^1)^{k} x open {}-simplex", k - 1),
    }
}

pub fn cross_polytope_strata(ell: usize) -> Result<StrataPoset> {
    if ell < 2 {
        return Err(Error::InvalidInput(format!("cross-polytope strata need ell >= 2, got {ell}")));
    }
    if ell > 16 {
        return Err(Error::Unsupported(format!("face poset of a {}-simplex is too large", ell - 1)));
    }
    let mut faces: Vec<Vec<usize>> =
        (1u32..1 << ell).map(|mask| (0..ell).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()).collect();
    faces.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let mut covers = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for (j, g) in faces.iter().enumerate() {
            if g.len() == f.len() + 1 && f.iter().all(|x| g.contains(x)) {
                covers.push((i, j));
            }
        }
    }
    let strata = faces.into_iter().map(|face| Stratum { label: stratum_label(face.len()), face }).collect();
    let annotation = (ell == 2).then(|| "3-sphere with an embedded Hopf link".to_string());
    Ok(StrataPoset { ell, strata, covers, annotation })
}
