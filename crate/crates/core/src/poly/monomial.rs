use std::cmp::Ordering;
use std::fmt;

/// Exponent vector over `z_1..z_n, zb_1..zb_n` (length `2n`).
///
/// Ordered by degrevlex with `z_1 > … > z_n > zb_1 > … > zb_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; 2 * n])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        assert!(exps.len().is_multiple_of(2), "exponent vector must have even length");
        Monomial(exps)
    }

    /// `z^alpha zb^beta`.
    pub fn from_parts(alpha: &[u32], beta: &[u32]) -> Self {
        assert_eq!(alpha.len(), beta.len());
        Monomial(alpha.iter().chain(beta).copied().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn alpha(&self) -> &[u32] {
        &self.0[..self.n()]
    }

    pub fn beta(&self) -> &[u32] {
        &self.0[self.n()..]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Torus weight `A·(beta - alpha)`.
    pub fn weight(&self, a: &[Vec<i64>]) -> Vec<i64> {
        let n = self.n();
        a.iter()
            .map(|row| (0..n).map(|j| row[j] * (self.0[n + j] as i64 - self.0[j] as i64)).sum())
            .collect()
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let n = self.n();
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if k < n {
                write!(f, "z{}", k + 1)?;
            } else {
                write!(f, "zb{}", k - n + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
