//! Homogeneous polynomials in `k[x, y, z, w]`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{AtlasError, Result};
use crate::field::{PrimeField, Scalar};
use crate::linalg::Matrix;
use crate::monomial::{Monomial, W, X, Y, Z};

/// A homogeneous form with canonical storage: no zero coefficients.
///
/// The zero form keeps a nominal degree but adds to forms of any degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousPolynomial {
    field: PrimeField,
    degree: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl HomogeneousPolynomial {
    pub fn zero(field: PrimeField, degree: u32) -> Self {
        Self {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        Self::monomial(field, Monomial::ONE, c)
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: i64) -> Self {
        let mut p = Self::zero(field, m.degree());
        let v = field.reduce(c);
        if v != 0 {
            p.terms.insert(m, v);
        }
        p
    }

    pub fn var(field: PrimeField, v: usize) -> Self {
        Self::monomial(field, Monomial::var(v), 1)
    }

    /// Builds a form from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(field: PrimeField, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut degree = None;
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => {
                    return Err(AtlasError::Inhomogeneous {
                        expected: d,
                        found: m.degree(),
                    })
                }
                _ => {}
            }
            let e = out.entry(m).or_insert(0u32);
            *e = field.add(*e, field.reduce(c));
        }
        out.retain(|_, c| *c != 0);
        Ok(Self {
            field,
            degree: degree.unwrap_or(0),
            terms: out,
        })
    }

    /// Like [`from_terms`](Self::from_terms) for raw residues known to share a degree.
    pub(crate) fn from_residues(
        field: PrimeField,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.degree(), degree);
            if c != 0 {
                let e = out.entry(m).or_insert(0u32);
                *e = field.add(*e, c);
            }
        }
        out.retain(|_, c| *c != 0);
        Self {
            field,
            degree,
            terms: out,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Scalar)> + '_ {
        let k = self.field;
        self.terms
            .iter()
            .rev()
            .map(move |(m, &c)| (*m, k.element(c as i64)))
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.field
            .element(self.terms.get(m).copied().unwrap_or(0) as i64)
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }

    /// True when every term is a monomial in `z, w` only.
    pub fn is_binary(&self) -> bool {
        self.terms.keys().all(|m| m.xy_degree() == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(AtlasError::FieldMismatch(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        Ok(())
    }

    /// Sum of two forms; errors when both are nonzero of different degrees.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(AtlasError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let k = self.field;
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            let e = terms.entry(*m).or_insert(0);
            *e = k.add(*e, c);
        }
        terms.retain(|_, c| *c != 0);
        Ok(Self {
            field: k,
            degree: self.degree,
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let k = self.field;
        Self {
            field: k,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, &c)| (*m, k.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: Scalar) -> Self {
        let k = self.field;
        let c = c.value();
        if c == 0 {
            return Self::zero(k, self.degree);
        }
        Self {
            field: k,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, &v)| (*m, k.mul(v, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "forms over different fields");
        let k = self.field;
        let degree = self.degree + other.degree;
        let mut terms: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = terms.entry(a.mul(b)).or_insert(0);
                *e = k.add(*e, k.mul(ca, cb));
            }
        }
        terms.retain(|_, c| *c != 0);
        Self {
            field: k,
            degree,
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            field: self.field,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(a, &c)| (a.mul(m), c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.field, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluation at a point of affine 4-space.
    pub fn eval(&self, point: [u32; 4]) -> u32 {
        let k = self.field;
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for v in 0..4 {
                t = k.mul(t, k.pow(point[v], m.0[v] as u64));
            }
            acc = k.add(acc, t);
        }
        acc
    }

    /// Exchanges `x <-> z`, `y <-> w`.
    pub fn swap_lines(&self) -> Self {
        Self {
            field: self.field,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, &c)| (m.swap_lines(), c)).collect(),
        }
    }

    /// Random binary form of degree `n` in `z, w`.
    pub fn random_binary<R: Rng + ?Sized>(field: PrimeField, n: u32, rng: &mut R) -> Self {
        let terms = Monomial::binary_of_degree(n)
            .into_iter()
            .map(|m| (m, field.random(rng)));
        Self::from_residues(field, n, terms)
    }

    /// Coefficients `c_n, ..., c_0` of a binary form `sum c_k z^k w^(n-k)`.
    pub fn binary_coefficients(&self) -> Result<Vec<u32>> {
        if !self.is_binary() {
            return Err(AtlasError::InvalidData(format!(
                "{self} is not a form in z, w"
            )));
        }
        Ok(Monomial::binary_of_degree(self.degree)
            .iter()
            .map(|m| self.terms.get(m).copied().unwrap_or(0))
            .collect())
    }
}

/// Resultant of two binary forms via the Sylvester determinant.
///
/// Vanishes exactly when the forms share a zero on the projective line.
pub fn binary_resultant(f: &HomogeneousPolynomial, g: &HomogeneousPolynomial) -> Result<u32> {
    f.check_field(g)?;
    let k = f.field;
    if f.is_zero() || g.is_zero() {
        return Ok(0);
    }
    let cf = f.binary_coefficients()?;
    let cg = g.binary_coefficients()?;
    let (m, n) = (f.degree as usize, g.degree as usize);
    if m + n == 0 {
        return Ok(1);
    }
    let size = m + n;
    let mut sylv = Matrix::zeros(k, size, size);
    for r in 0..n {
        for (i, &c) in cf.iter().enumerate() {
            sylv.set(r, r + i, c);
        }
    }
    for r in 0..m {
        for (i, &c) in cg.iter().enumerate() {
            sylv.set(n + r, r + i, c);
        }
    }
    Ok(sylv.determinant())
}

/// True when two binary forms have no common zero.
pub fn coprime(f: &HomogeneousPolynomial, g: &HomogeneousPolynomial) -> Result<bool> {
    Ok(binary_resultant(f, g)? != 0)
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let k = self.field;
        for (idx, (m, &c)) in self.terms.iter().rev().enumerate() {
            let v = k.lift(c);
            let sign = if v < 0 { "-" } else { "+" };
            if idx == 0 {
                if v < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = v.abs();
            match (a, m.degree()) {
                (_, 0) => write!(f, "{a}")?,
                (1, _) => write!(f, "{m}")?,
                _ => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

/// Shorthand constructors for the four variables.
pub fn variables(field: PrimeField) -> [HomogeneousPolynomial; 4] {
    [X, Y, Z, W].map(|v| HomogeneousPolynomial::var(field, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k() -> PrimeField {
        PrimeField::default()
    }

    fn random_form(seed: u64, degree: u32) -> HomogeneousPolynomial {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = k();
        let mut terms = Vec::new();
        for m in Monomial::all_of_degree(degree) {
            if rng.gen_bool(0.5) {
                terms.push((m, field.random(&mut rng)));
            }
        }
        HomogeneousPolynomial::from_residues(field, degree, terms)
    }

    #[test]
    fn addition_builds_the_double_line_form() {
        let [x, y, z, w] = variables(k());
        let f = x.mul(&w).try_add(&y.mul(&z).neg()).unwrap();
        assert_eq!(f.to_string(), "x*w - y*z");
        assert!(f.try_add(&HomogeneousPolynomial::zero(k(), 7)).unwrap() == f);
        assert!(f.try_add(&f.neg()).unwrap().is_zero());
        assert_eq!(
            f.try_add(&x),
            Err(AtlasError::DegreeMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn products() {
        let [x, _, z, w] = variables(k());
        assert_eq!(x.mul(&x), HomogeneousPolynomial::monomial(k(), Monomial::new(2, 0, 0, 0), 1));
        let lhs = z.try_add(&w).unwrap().mul(&z.try_sub(&w).unwrap());
        let rhs = z.mul(&z).try_sub(&w.mul(&w)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_detects_common_roots() {
        let [_, _, z, w] = variables(k());
        assert!(coprime(&z, &w).unwrap());
        let zw = z.mul(&w);
        assert!(!coprime(&zw, &z).unwrap());
        let q = z.pow(3).try_add(&w.pow(3)).unwrap();
        assert!(coprime(&q, &z).unwrap());
        // z^2 - w^2 and z + w share (1 : -1)
        let a = z.pow(2).try_sub(&w.pow(2)).unwrap();
        let b = z.try_add(&w).unwrap();
        assert!(!coprime(&a, &b).unwrap());
        // a constant is coprime to everything nonzero
        assert!(coprime(&HomogeneousPolynomial::constant(k(), 3), &a).unwrap());
    }

    #[test]
    fn resultant_of_linear_forms_is_a_determinant() {
        // Res(a z + b w, c z + d w) = a d - b c
        let field = k();
        let f = HomogeneousPolynomial::from_terms(
            field,
            [(Monomial::new(0, 0, 1, 0), 2), (Monomial::new(0, 0, 0, 1), 3)],
        )
        .unwrap();
        let g = HomogeneousPolynomial::from_terms(
            field,
            [(Monomial::new(0, 0, 1, 0), 5), (Monomial::new(0, 0, 0, 1), 7)],
        )
        .unwrap();
        assert_eq!(binary_resultant(&f, &g).unwrap(), field.reduce(2 * 7 - 3 * 5));
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let r = HomogeneousPolynomial::from_terms(
            k(),
            [(Monomial::new(1, 0, 0, 0), 1), (Monomial::new(1, 1, 0, 0), 1)],
        );
        assert!(matches!(r, Err(AtlasError::Inhomogeneous { .. })));
    }

    proptest! {
        #[test]
        fn multiplication_is_a_commutative_monoid(s in any::<u64>(), da in 0u32..4, db in 0u32..4, dc in 0u32..3) {
            let a = random_form(s, da);
            let b = random_form(s.wrapping_add(1), db);
            let c = random_form(s.wrapping_add(2), dc);
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).degree(), da + db);
            let b2 = random_form(s.wrapping_add(3), db);
            prop_assert_eq!(
                a.mul(&b.try_add(&b2).unwrap()),
                a.mul(&b).try_add(&a.mul(&b2)).unwrap()
            );
        }

        #[test]
        fn evaluation_is_a_ring_map(s in any::<u64>(), pt in prop::array::uniform4(0u32..32003)) {
            let a = random_form(s, 2);
            let b = random_form(s ^ 0x55, 3);
            let field = k();
            prop_assert_eq!(a.mul(&b).eval(pt), field.mul(a.eval(pt), b.eval(pt)));
            prop_assert_eq!(a.swap_lines().swap_lines(), a);
        }
    }
}
