//! Monomials in the four variables `x, y, z, w`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const W: usize = 3;

pub const VARIABLE_NAMES: [&str; 4] = ["x", "y", "z", "w"];

/// Exponent vector `(i, j, k, l)` of `x^i y^j z^k w^l`.
///
/// Ordered graded-lexicographically with `x > y > z > w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u16; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(i: u16, j: u16, k: u16, l: u16) -> Self {
        Monomial([i, j, k, l])
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; 4];
        e[v] = 1;
        Monomial(e)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn exponents(&self) -> [u16; 4] {
        self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn times_var(&self, v: usize) -> Monomial {
        let mut e = self.0;
        e[v] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    /// Degree in the line variables `x, y`.
    #[inline]
    pub fn xy_degree(&self) -> u32 {
        self.0[X] as u32 + self.0[Y] as u32
    }

    /// Degree in `z, w`.
    #[inline]
    pub fn zw_degree(&self) -> u32 {
        self.0[Z] as u32 + self.0[W] as u32
    }

    /// Exchanges `x <-> z` and `y <-> w`, moving the line `x = y = 0` to `z = w = 0`.
    pub fn swap_lines(&self) -> Monomial {
        let [i, j, k, l] = self.0;
        Monomial([k, l, i, j])
    }

    /// All monomials of degree `n` in decreasing order.
    pub fn all_of_degree(n: u32) -> Vec<Monomial> {
        let n = n as u16;
        let mut out = Vec::with_capacity(binomial(n as u64 + 3, 3) as usize);
        for i in (0..=n).rev() {
            for j in (0..=n - i).rev() {
                for k in (0..=n - i - j).rev() {
                    out.push(Monomial([i, j, k, n - i - j - k]));
                }
            }
        }
        out
    }

    /// Monomials `z^k w^(n-k)` for `k = n, ..., 0`.
    pub fn binary_of_degree(n: u32) -> Vec<Monomial> {
        let n = n as u16;
        (0..=n).rev().map(|k| Monomial([0, 0, k, n - k])).collect()
    }

    /// Monomials `x^i y^(n-i)` for `i = n, ..., 0`.
    pub fn line_power_generators(n: u32) -> Vec<Monomial> {
        let n = n as u16;
        (0..=n).rev().map(|i| Monomial([i, n - i, 0, 0])).collect()
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
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", VARIABLE_NAMES[v])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial coefficient on signed input, zero outside `0 <= k <= n`.
pub fn binomial_i(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::array::uniform4(0u16..6).prop_map(Monomial)
    }

    #[test]
    fn degree_slices_have_binomial_size() {
        for n in 0..8 {
            let all = Monomial::all_of_degree(n);
            assert_eq!(all.len() as u64, binomial(n as u64 + 3, 3));
            assert!(all.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn variable_order() {
        let [x, y, z, w] = [X, Y, Z, W].map(Monomial::var);
        assert!(x > y && y > z && z > w);
        assert!(Monomial::new(0, 0, 0, 2) > x);
        assert_eq!(Monomial::new(2, 0, 1, 0).to_string(), "x^2*z");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial_i(-1, 0), 0);
        assert_eq!(binomial_i(6, 3), 20);
    }

    proptest! {
        #[test]
        fn order_is_compatible_with_multiplication(a in mono(), b in mono(), c in mono()) {
            if a < b {
                prop_assert!(a.mul(&c) < b.mul(&c));
            }
            prop_assert_eq!(a.mul(&b).degree(), a.degree() + b.degree());
            prop_assert!(a.divides(&a.mul(&b)));
            prop_assert_eq!(a.quotient(&a.mul(&b)), Some(b));
        }

        #[test]
        fn swap_is_an_involution(a in mono()) {
            prop_assert_eq!(a.swap_lines().swap_lines(), a);
            prop_assert_eq!(a.swap_lines().xy_degree(), a.zw_degree());
        }
    }
}
