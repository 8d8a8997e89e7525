//! Homogeneous ideals of `k[x, y, z, w]` held degree by degree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{AtlasError, Result};
use crate::field::PrimeField;
use crate::graded::frame::Frame;
use crate::linalg::{EchelonBasis, Matrix};
use crate::monomial::{binomial, Monomial};
use crate::poly::HomogeneousPolynomial;

/// Records the window over which downward saturation was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationCertificate {
    pub window: u32,
}

/// An ideal given by generators together with a monomial floor it contains.
///
/// Slices are cached as reduced echelon bases modulo the floor, built
/// incrementally as `I_n = x I_{n-1} + y I_{n-1} + z I_{n-1} + w I_{n-1} + <gens of degree n>`.
pub struct GradedIdeal {
    field: PrimeField,
    frame: Arc<Frame>,
    generators: Vec<HomogeneousPolynomial>,
    gens_by_degree: BTreeMap<u32, Vec<Vec<u32>>>,
    cache: Mutex<BTreeMap<u32, Arc<EchelonBasis>>>,
    saturated: Option<SaturationCertificate>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        Self {
            field: self.field,
            frame: self.frame.clone(),
            generators: self.generators.clone(),
            gens_by_degree: self.gens_by_degree.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
            saturated: self.saturated,
        }
    }
}

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedIdeal")
            .field("p", &self.field.characteristic())
            .field("floor", &self.frame.floor())
            .field("generators", &self.generators.len())
            .field("saturated", &self.saturated)
            .finish()
    }
}

impl GradedIdeal {
    /// Ideal generated by `gens`; monomial generators become the floor.
    pub fn new(field: PrimeField, gens: Vec<HomogeneousPolynomial>) -> Result<Self> {
        let mut floor = Vec::new();
        let mut rest = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if g.is_monomial() {
                floor.push(g.leading_monomial().unwrap());
            } else {
                rest.push(g);
            }
        }
        Self::with_frame(field, Frame::monomial(floor), rest)
    }

    /// Ideal generated by the floor of `frame` and `gens`.
    pub fn with_frame(
        field: PrimeField,
        frame: Arc<Frame>,
        gens: Vec<HomogeneousPolynomial>,
    ) -> Result<Self> {
        let mut generators = Vec::new();
        let mut gens_by_degree: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
        for g in gens {
            if g.field() != field {
                return Err(AtlasError::FieldMismatch(
                    field.characteristic(),
                    g.field().characteristic(),
                ));
            }
            let v = frame.vector_of(&g);
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            gens_by_degree.entry(g.degree()).or_default().push(v);
            generators.push(g);
        }
        Ok(Self {
            field,
            frame,
            generators,
            gens_by_degree,
            cache: Mutex::new(BTreeMap::new()),
            saturated: None,
        })
    }

    /// `(x, y)^d`.
    pub fn line_power(field: PrimeField, d: u32) -> Self {
        let mut i = Self::with_frame(field, Frame::line_power(d), Vec::new())
            .expect("monomial ideal");
        i.saturated = Some(SaturationCertificate { window: 0 });
        i
    }

    /// The unit ideal.
    pub fn unit(field: PrimeField) -> Self {
        Self::with_frame(field, Frame::monomial(vec![Monomial::ONE]), Vec::new())
            .expect("unit ideal")
    }

    /// Ideal whose slices in degrees `0..=top` are `slices`; generators are read off
    /// as complements of the part generated from below.
    pub fn from_slices(
        field: PrimeField,
        frame: Arc<Frame>,
        slices: Vec<EchelonBasis>,
        saturated: Option<SaturationCertificate>,
    ) -> Result<Self> {
        let mut gens = Vec::new();
        for (n, s) in slices.iter().enumerate() {
            let n = n as u32;
            if s.ncols() != frame.ncols(n) {
                return Err(AtlasError::InvalidData(format!(
                    "slice of degree {n} has {} columns, frame has {}",
                    s.ncols(),
                    frame.ncols(n)
                )));
            }
            let lower = if n == 0 {
                EchelonBasis::new(field, s.ncols())
            } else {
                shift_up(&frame, field, n - 1, &slices[n as usize - 1])
            };
            if !lower.is_subspace_of(s) {
                return Err(AtlasError::Containment(format!(
                    "slices are not closed under multiplication in degree {n}"
                )));
            }
            for v in s.complement_of(&lower) {
                gens.push(frame.polynomial_of(field, n, &v));
            }
        }
        let mut ideal = Self::with_frame(field, frame, gens)?;
        ideal.saturated = saturated;
        let mut cache = ideal.cache.lock().unwrap();
        for (n, s) in slices.into_iter().enumerate() {
            cache.insert(n as u32, Arc::new(s));
        }
        drop(cache);
        Ok(ideal)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    /// Generators outside the floor.
    pub fn generators(&self) -> &[HomogeneousPolynomial] {
        &self.generators
    }

    /// Floor monomials followed by the remaining generators.
    pub fn all_generators(&self) -> Vec<HomogeneousPolynomial> {
        let mut out: Vec<_> = self
            .frame
            .floor()
            .iter()
            .map(|m| HomogeneousPolynomial::monomial(self.field, *m, 1))
            .collect();
        out.extend(self.generators.iter().cloned());
        out
    }

    pub fn max_generator_degree(&self) -> u32 {
        let g = self.gens_by_degree.keys().next_back().copied().unwrap_or(0);
        let f = self.frame.floor().iter().map(|m| m.degree()).max().unwrap_or(0);
        g.max(f)
    }

    pub fn saturation(&self) -> Option<SaturationCertificate> {
        self.saturated
    }

    /// Basis of `I_n` modulo the floor.
    pub fn slice(&self, n: u32) -> Arc<EchelonBasis> {
        let mut cache = self.cache.lock().unwrap();
        if let Some(s) = cache.get(&n) {
            return s.clone();
        }
        let start = cache.range(..n).next_back().map(|(&m, _)| m + 1).unwrap_or(0);
        for m in start..=n {
            let mut basis = if m == 0 {
                EchelonBasis::new(self.field, self.frame.ncols(0))
            } else {
                let prev = cache.get(&(m - 1)).expect("previous slice cached").clone();
                shift_up(&self.frame, self.field, m - 1, &prev)
            };
            if let Some(gs) = self.gens_by_degree.get(&m) {
                for g in gs {
                    basis.insert(g.clone());
                }
            }
            cache.insert(m, Arc::new(basis));
        }
        cache.get(&n).unwrap().clone()
    }

    /// `dim_k I_n`.
    pub fn dim(&self, n: u32) -> usize {
        self.frame.floor_dim(n) + self.slice(n).dim()
    }

    /// `dim_k (S/I)_n`.
    pub fn hilbert_function(&self, n: u32) -> usize {
        self.frame.ncols(n) - self.slice(n).dim()
    }

    pub fn hilbert_values(&self, upto: u32) -> Vec<usize> {
        (0..=upto).map(|n| self.hilbert_function(n)).collect()
    }

    /// Degree and arithmetic genus from the linear tail of the Hilbert function,
    /// required to be linear on the top three degrees of the window.
    pub fn hilbert_polynomial(&self, window: u32) -> Result<(i64, i64)> {
        if window < 2 {
            return Err(AtlasError::WindowTooSmall(format!(
                "window {window} has fewer than three degrees"
            )));
        }
        let h: Vec<i64> = (window - 2..=window)
            .map(|n| self.hilbert_function(n) as i64)
            .collect();
        let d = h[2] - h[1];
        if h[1] - h[0] != d {
            return Err(AtlasError::WindowTooSmall(format!(
                "Hilbert function {:?} is not linear on degrees {}..={window}",
                h,
                window - 2
            )));
        }
        Ok((d, 1 - (h[2] - d * window as i64)))
    }

    pub fn contains(&self, p: &HomogeneousPolynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        let v = self.frame.vector_of(p);
        self.slice(p.degree()).contains(&v)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        if self.frame.in_floor(m) {
            return true;
        }
        self.contains(&HomogeneousPolynomial::monomial(self.field, *m, 1))
    }

    /// Whether the floor of `frame` lies in the ideal.
    pub fn contains_floor(&self, frame: &Frame) -> bool {
        frame.floor().iter().all(|m| self.contains_monomial(m))
    }

    /// `self ⊆ other`, checked on generators of degree at most `window`.
    pub fn is_contained_in(&self, other: &GradedIdeal, window: u32) -> bool {
        self.frame
            .floor()
            .iter()
            .filter(|m| m.degree() <= window)
            .all(|m| other.contains_monomial(m))
            && self
                .generators
                .iter()
                .filter(|g| g.degree() <= window)
                .all(|g| other.contains(g))
    }

    /// Equality of all slices up to `window`.
    pub fn same_as(&self, other: &GradedIdeal, window: u32) -> bool {
        (0..=window).all(|n| self.dim(n) == other.dim(n)) && self.is_contained_in(other, window)
    }

    /// Image of `(I + floor(target))_n` in the columns of `target`.
    pub fn image_in(&self, target: &Frame, n: u32) -> EchelonBasis {
        let tcols = target.columns(n);
        let src = self.frame.columns(n);
        let map: Vec<Option<usize>> = src.monomials.iter().map(|m| tcols.position(m)).collect();
        let slice = self.slice(n);
        let mut rows = Vec::with_capacity(slice.dim());
        for r in slice.rows() {
            let mut v = vec![0u32; tcols.len()];
            for (c, &x) in r.iter().enumerate() {
                if x != 0 {
                    if let Some(t) = map[c] {
                        v[t] = x;
                    }
                }
            }
            rows.push(v);
        }
        let mut basis = EchelonBasis::from_rows(self.field, tcols.len(), rows);
        for (t, m) in tcols.monomials.iter().enumerate() {
            if self.frame.in_floor(m) {
                let mut v = vec![0u32; tcols.len()];
                v[t] = 1;
                basis.insert(v);
            }
        }
        basis
    }

    pub fn sum(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        let frame = Frame::join(&self.frame, &other.frame);
        let gens = self
            .generators
            .iter()
            .chain(&other.generators)
            .cloned()
            .collect();
        Self::with_frame(self.field, frame, gens)
    }

    /// Adds generators to the ideal.
    pub fn plus(&self, extra: &[HomogeneousPolynomial]) -> Result<GradedIdeal> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::with_frame(self.field, self.frame.clone(), gens)
    }

    pub fn product(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        let frame = Frame::product(&self.frame, &other.frame);
        let floor_a: Vec<_> = self
            .frame
            .floor()
            .iter()
            .map(|m| HomogeneousPolynomial::monomial(self.field, *m, 1))
            .collect();
        let floor_b: Vec<_> = other
            .frame
            .floor()
            .iter()
            .map(|m| HomogeneousPolynomial::monomial(self.field, *m, 1))
            .collect();
        let mut gens = Vec::new();
        for a in floor_a.iter().chain(&self.generators) {
            for b in &other.generators {
                gens.push(a.mul(b));
            }
        }
        for a in &self.generators {
            for b in &floor_b {
                gens.push(a.mul(b));
            }
        }
        Self::with_frame(self.field, frame, gens)
    }

    /// Degreewise intersection, exact in degrees up to `window`.
    pub fn intersection(&self, other: &GradedIdeal, window: u32) -> Result<GradedIdeal> {
        let frame = Frame::meet(&self.frame, &other.frame);
        let slices = (0..=window)
            .map(|n| {
                self.image_in(&frame, n)
                    .intersection(&other.image_in(&frame, n))
            })
            .collect();
        let sat = match (self.saturated, other.saturated) {
            (Some(_), Some(_)) => Some(SaturationCertificate { window }),
            _ => None,
        };
        Self::from_slices(self.field, frame, slices, sat)
    }

    /// Exchanges `x <-> z`, `y <-> w`.
    pub fn swap_lines(&self) -> GradedIdeal {
        let mut i = Self::with_frame(
            self.field,
            self.frame.swap_lines(),
            self.generators.iter().map(|g| g.swap_lines()).collect(),
        )
        .expect("swap preserves the field");
        i.saturated = self.saturated;
        i
    }

    /// Saturation by downward propagation from the top of the window:
    /// `sat_{n1} = I_{n1}` and `sat_n = { v : x_i v ∈ sat_{n+1} for all i }`.
    ///
    /// The top three degrees must already agree with `I`.
    pub fn saturate(&self, window: u32) -> Result<GradedIdeal> {
        if window < self.max_generator_degree() || window < 2 {
            return Err(AtlasError::WindowTooSmall(format!(
                "window {window} is below the generator degree {}",
                self.max_generator_degree()
            )));
        }
        let k = self.field;
        let mut sat: Vec<EchelonBasis> = vec![EchelonBasis::new(k, 0); window as usize + 1];
        sat[window as usize] = (*self.slice(window)).clone();
        for n in (0..window).rev() {
            sat[n as usize] = colon_step(&self.frame, k, n, &sat[n as usize + 1]);
        }
        for (n, s) in sat.iter().enumerate() {
            let own = self.slice(n as u32);
            if !own.is_subspace_of(s) {
                return Err(AtlasError::Containment(format!(
                    "degree {n} slice is not inside its saturation"
                )));
            }
        }
        for n in [window - 1, window - 2] {
            if sat[n as usize].dim() != self.slice(n).dim() {
                return Err(AtlasError::WindowTooSmall(format!(
                    "saturation differs from the ideal in degree {n} near the top of window {window}"
                )));
            }
        }
        Self::from_slices(k, self.frame.clone(), sat, Some(SaturationCertificate { window }))
    }

    /// Verifies that the ideal equals its saturation over `window` and records it.
    pub fn certify_saturated(&mut self, window: u32) -> Result<()> {
        let sat = self.saturate(window)?;
        for n in 0..=window {
            if sat.slice(n).dim() != self.slice(n).dim() {
                return Err(AtlasError::Verification(format!(
                    "ideal is not saturated in degree {n}"
                )));
            }
        }
        self.saturated = Some(SaturationCertificate { window });
        Ok(())
    }

    /// Least degree with a nonzero element, searched up to `window`.
    pub fn initial_degree(&self, window: u32) -> Option<u32> {
        (0..=window).find(|&n| self.dim(n) > 0)
    }
}

/// Span of `var * v` over the variables and the rows of `basis` (degree `n` to `n + 1`).
pub(crate) fn shift_up(frame: &Frame, field: PrimeField, n: u32, basis: &EchelonBasis) -> EchelonBasis {
    let ncols = frame.ncols(n + 1);
    let table = frame.shifts(n);
    let mut out = EchelonBasis::new(field, ncols);
    if out.ncols() == 0 {
        return out;
    }
    for var in 0..4 {
        for r in basis.rows() {
            let mut v = vec![0u32; ncols];
            for (c, &x) in r.iter().enumerate() {
                if x != 0 {
                    let t = table[var][c];
                    if t != super::frame::NONE {
                        v[t as usize] = x;
                    }
                }
            }
            out.insert(v);
            if out.dim() == ncols {
                return out;
            }
        }
    }
    out
}

/// `{ v in V_n : x_i v in upper for every variable }`.
pub(crate) fn colon_step(frame: &Frame, field: PrimeField, n: u32, upper: &EchelonBasis) -> EchelonBasis {
    let cols = frame.ncols(n);
    let np = upper.non_pivots();
    let q = np.len();
    if q == 0 {
        return EchelonBasis::full(field, cols);
    }
    let mut pos = vec![u32::MAX; upper.ncols()];
    for (j, &c) in np.iter().enumerate() {
        pos[c] = j as u32;
    }
    let table = frame.shifts(n);
    let mut m = Matrix::zeros(field, 4 * q, cols);
    for c in 0..cols {
        for var in 0..4 {
            let t = table[var][c];
            if t == super::frame::NONE {
                continue;
            }
            let t = t as usize;
            match upper.row_with_pivot(t) {
                Some(row) => {
                    for (j, &npc) in np.iter().enumerate() {
                        let x = row[npc];
                        if x != 0 {
                            m.set(var * q + j, c, field.neg(x));
                        }
                    }
                }
                None => m.set(var * q + pos[t] as usize, c, 1),
            }
        }
    }
    let (_, ker) = m.rank_kernel();
    EchelonBasis::from_rows(field, cols, ker)
}

/// `dim S_n = C(n + 3, 3)`.
pub fn ambient_dim(n: u32) -> usize {
    binomial(n as u64 + 3, 3) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::variables;

    fn k() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn line_power_slices() {
        let i = GradedIdeal::line_power(k(), 3);
        assert_eq!(i.dim(2), 0);
        let j = GradedIdeal::line_power(k(), 2);
        assert_eq!(j.dim(2), 3);
        assert_eq!(j.hilbert_function(2), 7);
        let l = GradedIdeal::line_power(k(), 1);
        for n in 0..10 {
            assert_eq!(l.hilbert_function(n), n as usize + 1);
        }
    }

    #[test]
    fn neighbourhood_hilbert_function_oracle() {
        // independent count: sum_{i <= min(d-1, n)} (i+1)(n-i+1)
        for d in 1..=5u32 {
            let i = GradedIdeal::line_power(k(), d);
            for n in 0..14u32 {
                let expected: u32 = (0..=n.min(d - 1)).map(|i| (i + 1) * (n - i + 1)).sum();
                assert_eq!(i.hilbert_function(n) as u32, expected, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn generated_slices_grow_from_generators() {
        let [x, y, z, w] = variables(k());
        let f = x.mul(&w).try_sub(&y.mul(&z)).unwrap();
        let i = GradedIdeal::new(k(), vec![x.mul(&x), x.mul(&y), y.mul(&y), f]).unwrap();
        assert_eq!(i.frame().as_line_power(), Some(2));
        assert_eq!(i.dim(2), 4);
        // double line of genus -1: Hilbert polynomial 2n + 2
        assert_eq!(i.hilbert_polynomial(8).unwrap(), (2, -1));
        assert!(i.contains(&x.mul(&w).mul(&z).try_sub(&y.mul(&z).mul(&z)).unwrap()));
        assert!(!i.contains(&x.mul(&z)));
    }

    #[test]
    fn saturation_recovers_low_degree_elements() {
        // (x, y) * (x, y, z, w)^3 has saturation (x, y)
        let m = GradedIdeal::line_power(k(), 1);
        let mut gens = Vec::new();
        for g in m.all_generators() {
            for e in Monomial::all_of_degree(3) {
                gens.push(g.mul_monomial(&e));
            }
        }
        let i = GradedIdeal::new(k(), gens).unwrap();
        assert_eq!(i.dim(1), 0);
        let s = i.saturate(8).unwrap();
        assert_eq!(s.dim(1), 2);
        assert!(s.same_as(&m, 8));
        assert_eq!(s.saturation(), Some(SaturationCertificate { window: 8 }));
        // idempotence
        let t = s.saturate(8).unwrap();
        assert!(t.same_as(&s, 8));
    }

    #[test]
    fn saturation_of_a_non_monomial_ideal() {
        // (x + y)(x, y, z, w) + y (y, z, w) = (x, y)(x, y, z, w)
        let [x, y, z, w] = variables(k());
        let u = x.try_add(&y).unwrap();
        let gens = vec![
            u.mul(&x),
            u.mul(&y),
            u.mul(&z),
            u.mul(&w),
            y.mul(&y),
            y.mul(&z),
            y.mul(&w),
        ];
        let i = GradedIdeal::new(k(), gens).unwrap();
        let s = i.saturate(7).unwrap();
        assert_eq!(s.dim(1), 2);
        assert!(s.contains(&x) && s.contains(&y));
    }

    #[test]
    fn window_too_small_is_reported() {
        // x (x, y, z, w)^6 has saturation (x)
        let [x, ..] = variables(k());
        let gens = Monomial::all_of_degree(6)
            .iter()
            .map(|e| x.mul_monomial(e))
            .collect();
        let i = GradedIdeal::new(k(), gens).unwrap();
        assert!(matches!(i.saturate(7), Err(AtlasError::WindowTooSmall(_))));
        assert!(matches!(i.saturate(5), Err(AtlasError::WindowTooSmall(_))));
        let s = i.saturate(9).unwrap();
        assert!(s.contains(&x));
        assert_eq!(s.hilbert_function(4), 15);
    }

    #[test]
    fn intersection_of_two_lines() {
        let l = GradedIdeal::line_power(k(), 1);
        let m = l.swap_lines();
        let u = l.intersection(&m, 8).unwrap();
        // two skew lines: 2n + 2
        assert_eq!(u.hilbert_polynomial(8).unwrap(), (2, -1));
        assert_eq!(u.initial_degree(8), Some(2));
        assert_eq!(u.dim(2), 4);
    }
}
