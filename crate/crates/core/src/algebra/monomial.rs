use std::cmp::Ordering;
use std::fmt;

/// Number of variables: x, y, z, w.
pub const NVARS: usize = 4;
pub const VAR_NAMES: [char; NVARS] = ['x', 'y', 'z', 'w'];

/// Exponent vector in x, y, z, w.
///
/// Ordered graded-lexicographically with x > y > z > w: higher total
/// degree first, ties broken by comparing exponents left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn new(e: [u32; NVARS]) -> Monomial {
        Monomial(e)
    }

    pub fn exponents(&self) -> [u32; NVARS] {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0;
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// `other / self` when divisible.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    /// First variable with positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&a| a > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", VAR_NAMES[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `k` in four variables, in descending order.
pub fn monomials_of_degree(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(count_of_degree(k, NVARS));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            for c in (0..=k - a - b).rev() {
                out.push(Monomial([a, b, c, k - a - b - c]));
            }
        }
    }
    out
}

/// Monomials of degree `k` in x, y, z only (w exponent 0), descending.
pub fn ternary_monomials_of_degree(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(count_of_degree(k, 3));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push(Monomial([a, b, k - a - b, 0]));
        }
    }
    out
}

/// Number of monomials of degree `k` in `n` variables.
pub fn count_of_degree(k: u32, n: usize) -> usize {
    binomial(k as u64 + n as u64 - 1, n as u64 - 1) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glex_order() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let w = Monomial::var(3);
        assert!(x > y && y > w);
        assert!(Monomial([0, 0, 0, 2]) > x);
        assert!(Monomial([1, 1, 0, 0]) > Monomial([1, 0, 1, 0]));
    }

    #[test]
    fn degree_lists() {
        assert_eq!(monomials_of_degree(3).len(), 20);
        assert_eq!(monomials_of_degree(6).len(), 84);
        assert_eq!(ternary_monomials_of_degree(4).len(), 15);
        let m = monomials_of_degree(2);
        assert!(m.windows(2).all(|p| p[0] > p[1]));
        assert_eq!(m[0], Monomial([2, 0, 0, 0]));
        assert_eq!(m[9], Monomial([0, 0, 0, 2]));
        assert_eq!(count_of_degree(20, 4), 1771);
    }

    #[test]
    fn display() {
        assert_eq!(Monomial([2, 1, 0, 3]).to_string(), "x^2*y*w^3");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
