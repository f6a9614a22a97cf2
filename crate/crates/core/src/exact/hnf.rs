use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row Hermite normal form `H = U · M` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf {
    pub h: Vec<Vec<BigInt>>,
    /// Unimodular row transformation.
    pub u: Vec<Vec<BigInt>>,
    /// Rank over the rationals; rows `rank..` of `h` are zero.
    pub rank: usize,
}

/// Computes the row Hermite normal form of `m` (`cols` given for 0-row inputs).
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, and every
/// entry below a pivot is zero. Only unimodular row operations are used.
pub fn hnf(m: &[Vec<i64>], cols: usize) -> Hnf {
    let rows = m.len();
    let mut h: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // gcd-combine every lower row into the pivot row
        for i in r + 1..rows {
            if h[i][c].is_zero() {
                continue;
            }
            let a = h[r][c].clone();
            let b = h[i][c].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (pa, pb) = (&a / &g, &b / &g);
            combine(&mut h, r, i, &s, &t, &pa, &pb);
            combine(&mut u, r, i, &s, &t, &pa, &pb);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate(&mut h[r]);
            negate(&mut u[r]);
        }
        let p = h[r][c].clone();
        for i in 0..r {
            let f = h[i][c].div_floor(&p);
            if !f.is_zero() {
                sub_multiple(&mut h, i, r, &f);
                sub_multiple(&mut u, i, r, &f);
            }
        }
        r += 1;
    }
    Hnf { h, u, rank: r }
}

// rows (r, i) <- ([s t], [-pb pa]) · (rows r, i); determinant s·pa + t·pb = 1
fn combine(m: &mut [Vec<BigInt>], r: usize, i: usize, s: &BigInt, t: &BigInt, pa: &BigInt, pb: &BigInt) {
    for j in 0..m[r].len() {
        let x = m[r][j].clone();
        let y = m[i][j].clone();
        m[r][j] = s * &x + t * &y;
        m[i][j] = pa * &y - pb * &x;
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -&*x;
    }
}

fn sub_multiple(m: &mut [Vec<BigInt>], target: usize, src: usize, f: &BigInt) {
    for j in 0..m[target].len() {
        let d = f * &m[src][j];
        m[target][j] -= d;
    }
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let cols = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect())
            .collect()
    }

    fn check(m: &[Vec<i64>], cols: usize) -> Hnf {
        let out = hnf(m, cols);
        let mb: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(matmul(&out.u, &mb), out.h);
        assert_eq!(det(&out.u).abs(), BigInt::one());
        out
    }

    #[test]
    fn rank_one_example() {
        let out = check(&[vec![2, 4], vec![1, 2]], 2);
        assert_eq!(out.rank, 1);
        assert_eq!(out.h, big(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn identity_is_fixed() {
        let out = check(&[vec![1, 0], vec![0, 1]], 2);
        assert_eq!(out.h, big(&[&[1, 0], &[0, 1]]));
        assert_eq!(out.u, big(&[&[1, 0], &[0, 1]]));
        assert_eq!(out.rank, 2);
    }

    #[test]
    fn cross_polytope_is_already_normal() {
        let m = vec![vec![1, -1, 0, 0], vec![0, 0, 1, -1]];
        let out = check(&m, 4);
        assert_eq!(out.rank, 2);
        assert_eq!(out.h, big(&[&[1, -1, 0, 0], &[0, 0, 1, -1]]));
        assert_eq!(out.u, big(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn reduces_above_pivots() {
        let out = check(&[vec![3, 5, 1], vec![2, 7, 4], vec![1, 1, 1]], 3);
        assert_eq!(out.rank, 3);
        for (r, row) in out.h.iter().enumerate() {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            assert!(row[p].is_positive());
            for above in &out.h[..r] {
                assert!(!above[p].is_negative() && above[p] < row[p]);
            }
        }
    }

    #[test]
    fn zero_and_empty() {
        let out = check(&[vec![0, 0]], 2);
        assert_eq!(out.rank, 0);
        let out = hnf(&[], 3);
        assert_eq!(out.rank, 0);
    }

    #[test]
    fn determinant_values() {
        assert_eq!(det(&big(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(det(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&big(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }
}
