//! Static pictures of `conv(A)` for one or two rows.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::action::WeightMatrix;
use crate::error::{Error, Result};

const SIZE: f64 = 400.0;
const RADIUS: f64 = 160.0;

type Pt = [i64; 2];

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counterclockwise hull of distinct sorted points, collinear points dropped.
fn hull(pts: &[Pt]) -> Vec<Pt> {
    if pts.len() < 3 {
        return pts.to_vec();
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &p in pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Deterministic SVG of the columns of `A` (ℓ = 1 or 2), their hull and the origin.
pub fn emit_svg(a: &WeightMatrix) -> Result<String> {
    if a.ell() > 2 {
        return Err(Error::Unsupported(format!("diagrams need one or two rows, got {}", a.ell())));
    }
    let mut counts: BTreeMap<Pt, usize> = BTreeMap::new();
    for c in a.columns() {
        *counts.entry([c[0], c.get(1).copied().unwrap_or(0)]).or_default() += 1;
    }
    let extent = counts.keys().flat_map(|p| [p[0].abs(), p[1].abs()]).max().unwrap_or(0).max(1);
    let scale = RADIUS / extent as f64;
    let at = |p: Pt| (SIZE / 2.0 + p[0] as f64 * scale, SIZE / 2.0 - p[1] as f64 * scale);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" viewBox="0 0 400 400">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="400" height="400" fill="white"/>"#);
    if a.ell() == 1 {
        let _ = writeln!(s, r##"<line x1="20" y1="200" x2="380" y2="200" stroke="#999999" stroke-width="1"/>"##);
    } else {
        let _ = writeln!(s, r##"<line x1="20" y1="200" x2="380" y2="200" stroke="#dddddd" stroke-width="1"/>"##);
        let _ = writeln!(s, r##"<line x1="200" y1="20" x2="200" y2="380" stroke="#dddddd" stroke-width="1"/>"##);
    }
    let pts: Vec<Pt> = counts.keys().copied().collect();
    let h = hull(&pts);
    let coords: Vec<String> = h.iter().map(|&p| at(p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let shape = if h.len() >= 3 { "polygon" } else { "polyline" };
    let _ = writeln!(
        s,
        r##"<{shape} points="{}" fill="#cfe3f7" fill-opacity="0.6" stroke="#1f5f99" stroke-width="2"/>"##,
        coords.join(" ")
    );
    let _ = writeln!(s, r##"<circle cx="200.00" cy="200.00" r="4" fill="none" stroke="#c0392b" stroke-width="2"/>"##);
    let _ = writeln!(s, r##"<text x="206.00" y="216.00" font-family="monospace" font-size="11" fill="#c0392b">0</text>"##);
    for (p, m) in &counts {
        let (x, y) = at(*p);
        let name = if a.ell() == 1 { format!("{}", p[0]) } else { format!("({},{})", p[0], p[1]) };
        let label = if *m > 1 { format!("{name} n={m}") } else { name };
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#1f5f99"/>"##);
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12" fill="#000000">{label}</text>"##,
            x + 6.0,
            y - 6.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_line() {
        let svg = emit_svg(&WeightMatrix::new(vec![vec![1, -1]]).unwrap()).unwrap();
        assert!(svg.contains(">1</text>") && svg.contains(">-1</text>"));
        assert!(svg.contains(r#"points="40.00,200.00 360.00,200.00""#));
    }

    #[test]
    fn triangle_and_multiplicity() {
        let a = WeightMatrix::new(vec![vec![1, 1, 0, -1], vec![0, 0, 1, -1]]).unwrap();
        let svg = emit_svg(&a).unwrap();
        assert!(svg.contains("<polygon"));
        assert!(svg.contains("(1,0) n=2"));
        assert_eq!(svg, emit_svg(&a).unwrap());
        assert_eq!(hull(&[[-1, -1], [0, 1], [1, 0]]).len(), 3);
        assert_eq!(hull(&[[-1, 0], [0, 0], [1, 0]]), vec![[-1, 0], [1, 0]]);
    }

    #[test]
    fn refuses_three_rows() {
        let a = WeightMatrix::new(vec![vec![1], vec![0], vec![0]]).unwrap();
        assert!(matches!(emit_svg(&a), Err(Error::Unsupported(_))));
    }
}
