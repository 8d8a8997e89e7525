//! Graded modules over the line ring `R = k[z, w]`.
//!
//! A [`LineModule`] is a subquotient `A / B` of the free module
//! `F = S / (x, y)^D`, whose `R`-basis is the set of monomials `x^i y^j` with
//! `i + j < D`. Both `A` and `B` are stored as subspaces in each degree of a
//! window `[0, n1]`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AtlasError, Result};
use crate::field::PrimeField;
use crate::graded::frame::Frame;
use crate::graded::ideal::GradedIdeal;
use crate::linalg::{EchelonBasis, Matrix};
use crate::monomial::{W, X, Y, Z};

/// How a splitting type was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplittingMethod {
    /// Minimal generators plus an exact Hilbert-function match.
    GradedFree,
    /// Ranks of evaluation maps at random points of the line.
    Fibers,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingCertificate {
    pub method: SplittingMethod,
    pub window: u32,
}

/// Multiset of twists `c_i` of a bundle `⊕ O_L(c_i)`, sorted decreasingly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub twists: Vec<i64>,
    pub certificate: SplittingCertificate,
}

impl SplittingType {
    pub fn new(mut twists: Vec<i64>, certificate: SplittingCertificate) -> Self {
        twists.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            twists,
            certificate,
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Degree of the bundle, the sum of the twists.
    pub fn degree(&self) -> i64 {
        self.twists.iter().sum()
    }

    pub fn multiplicity(&self, c: i64) -> usize {
        self.twists.iter().filter(|&&t| t == c).count()
    }

    /// Twists grouped as `(twist, multiplicity)`, decreasing.
    pub fn grouped(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &t in &self.twists {
            match out.last_mut() {
                Some((c, m)) if *c == t => *m += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }

    pub fn is_uniform(&self, c: i64, rank: usize) -> bool {
        self.rank() == rank && self.twists.iter().all(|&t| t == c)
    }

    /// `χ(E) = Σ (c_i + 1)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.twists.iter().map(|c| c + 1).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (c, m)) in self.grouped().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Fiber layout of `F = S / (x, y)^D`: column monomial to `(xy index, z exponent)`.
#[derive(Debug)]
struct FiberMap {
    entries: Vec<(u32, u32)>,
}

/// `A / B` inside `S / (x, y)^D`, degrees `0..=window`.
#[derive(Clone, Debug)]
pub struct LineModule {
    field: PrimeField,
    ambient: Arc<Frame>,
    thickness: u32,
    window: u32,
    numer: Vec<EchelonBasis>,
    denom: Vec<EchelonBasis>,
    quotient: Vec<EchelonBasis>,
}

fn xy_index(i: u32, j: u32) -> u32 {
    // monomials of xy-degree s come after the s(s+1)/2 of lower degree
    let s = i + j;
    s * (s + 1) / 2 + j
}

impl LineModule {
    /// Builds `A / B` from degreewise subspaces after checking `B ⊆ A` and that
    /// both are stable under `z` and `w`.
    pub fn from_subspaces(
        field: PrimeField,
        thickness: u32,
        window: u32,
        numer: Vec<EchelonBasis>,
        denom: Vec<EchelonBasis>,
    ) -> Result<Self> {
        let ambient = Frame::line_power(thickness);
        let len = window as usize + 1;
        if numer.len() != len || denom.len() != len {
            return Err(AtlasError::InvalidData(format!(
                "expected {len} slices for window {window}"
            )));
        }
        for n in 0..=window {
            let (a, b) = (&numer[n as usize], &denom[n as usize]);
            if a.ncols() != ambient.ncols(n) || b.ncols() != ambient.ncols(n) {
                return Err(AtlasError::InvalidData(format!(
                    "slice of degree {n} does not match the ambient columns"
                )));
            }
            if !b.is_subspace_of(a) {
                return Err(AtlasError::Containment(format!(
                    "denominator not inside numerator in degree {n}"
                )));
            }
            if n < window {
                for var in [Z, W] {
                    for (s, name) in [(a, "numerator"), (b, "denominator")] {
                        let up = if name == "numerator" {
                            &numer[n as usize + 1]
                        } else {
                            &denom[n as usize + 1]
                        };
                        for r in s.rows() {
                            if !up.contains(&ambient.shift_vector(n, r, var)) {
                                return Err(AtlasError::Containment(format!(
                                    "{name} not stable under the line ring in degree {n}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        let quotient = numer
            .iter()
            .zip(&denom)
            .map(|(a, b)| {
                let rows = a.rows().iter().map(|r| {
                    let mut v = r.clone();
                    b.reduce(&mut v);
                    v
                });
                EchelonBasis::from_rows(field, a.ncols(), rows)
            })
            .collect();
        Ok(Self {
            field,
            ambient,
            thickness,
            window,
            numer,
            denom,
            quotient,
        })
    }

    /// `(A + I_L^D) / (B + I_L^D)` for ideals `B ⊆ A`.
    pub fn from_ideals(
        a: &GradedIdeal,
        b: Option<&GradedIdeal>,
        thickness: u32,
        window: u32,
    ) -> Result<Self> {
        let ambient = Frame::line_power(thickness);
        let numer = (0..=window).map(|n| a.image_in(&ambient, n)).collect();
        let denom = match b {
            Some(b) => (0..=window).map(|n| b.image_in(&ambient, n)).collect(),
            None => (0..=window)
                .map(|n| EchelonBasis::new(a.field(), ambient.ncols(n)))
                .collect(),
        };
        Self::from_subspaces(a.field(), thickness, window, numer, denom)
    }

    /// `I / I_L^d`, after checking `I_L^d ⊆ I`.
    pub fn module_of(ideal: &GradedIdeal, d: u32, window: u32) -> Result<Self> {
        if !ideal.contains_floor(&Frame::line_power(d)) {
            return Err(AtlasError::Containment(format!(
                "the ideal does not contain (x,y)^{d}"
            )));
        }
        Self::from_ideals(ideal, None, d, window)
    }

    /// The free module `S / (x, y)^D` itself.
    pub fn ambient_module(field: PrimeField, thickness: u32, window: u32) -> Self {
        let unit = GradedIdeal::unit(field);
        Self::from_ideals(&unit, None, thickness, window).expect("ambient module")
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn thickness(&self) -> u32 {
        self.thickness
    }

    pub fn ambient(&self) -> &Arc<Frame> {
        &self.ambient
    }

    pub fn numerator(&self, n: u32) -> &EchelonBasis {
        &self.numer[n as usize]
    }

    pub fn denominator(&self, n: u32) -> &EchelonBasis {
        &self.denom[n as usize]
    }

    pub fn has_denominator(&self) -> bool {
        self.denom.iter().any(|b| !b.is_empty())
    }

    /// `dim M_n`.
    pub fn dim(&self, n: u32) -> usize {
        self.quotient[n as usize].dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.window).map(|n| self.dim(n)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.quotient.iter().all(|q| q.is_empty())
    }

    /// Coordinates of `v ∈ A_n` in the basis of `M_n`.
    pub fn coordinates(&self, n: u32, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.denom[n as usize].reduce(&mut w);
        self.quotient[n as usize]
            .pivots()
            .iter()
            .map(|&c| w[c])
            .collect()
    }

    /// Matrix of multiplication by `var` from `M_n` to `M_{n+1}`, columns indexed by `M_n`.
    pub fn action(&self, n: u32, var: usize) -> Matrix {
        assert!(n < self.window, "action leaves the window");
        let src = &self.quotient[n as usize];
        let mut m = Matrix::zeros(self.field, self.dim(n + 1), src.dim());
        for (j, r) in src.rows().iter().enumerate() {
            let image = self.ambient.shift_vector(n, r, var);
            for (i, c) in self.coordinates(n + 1, &image).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Checks that `z` and `w` commute on every degree of the window.
    pub fn verify_commuting(&self) -> Result<()> {
        for n in 0..self.window.saturating_sub(1) {
            let zw = self.action(n + 1, Z).mul(&self.action(n, W));
            let wz = self.action(n + 1, W).mul(&self.action(n, Z));
            if zw != wz {
                return Err(AtlasError::Verification(format!(
                    "z and w actions do not commute in degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// `dim M_n - dim (z M_{n-1} + w M_{n-1})` for every degree with a nonzero count.
    ///
    /// The top three degrees of the window must carry no generators.
    pub fn minimal_generators(&self) -> Result<BTreeMap<u32, usize>> {
        let mut out = BTreeMap::new();
        for n in 0..=self.window {
            let total = self.dim(n);
            let generated = if n == 0 || total == 0 {
                0
            } else {
                let z = self.action(n - 1, Z);
                let w = self.action(n - 1, W);
                let mut span = EchelonBasis::new(self.field, total);
                for m in [z, w] {
                    for r in m.transpose().row_vecs() {
                        span.insert(r);
                    }
                }
                span.dim()
            };
            if total > generated {
                out.insert(n, total - generated);
            }
        }
        if let Some((&top, _)) = out.iter().next_back() {
            if top + 3 > self.window {
                return Err(AtlasError::WindowTooSmall(format!(
                    "generators found in degree {top}, within three of the window top {}",
                    self.window
                )));
            }
        }
        Ok(out)
    }

    /// Splitting type of a free module from its minimal generators.
    ///
    /// Freeness is certified when `dim M_n = Σ max(0, n - e_i + 1)` over the window.
    pub fn splitting_type(&self) -> Result<SplittingType> {
        let gens = self.minimal_generators()?;
        for n in 0..=self.window {
            let expected: usize = gens
                .iter()
                .map(|(&e, &c)| c * (n as i64 - e as i64 + 1).max(0) as usize)
                .sum();
            if expected != self.dim(n) {
                return Err(AtlasError::NotFree(format!(
                    "dim M_{n} = {} but free generators predict {expected}",
                    self.dim(n)
                )));
            }
        }
        let twists = gens
            .iter()
            .flat_map(|(&e, &c)| std::iter::repeat_n(-(e as i64), c))
            .collect();
        Ok(SplittingType::new(
            twists,
            SplittingCertificate {
                method: SplittingMethod::GradedFree,
                window: self.window,
            },
        ))
    }

    fn fiber_map(&self, n: u32) -> FiberMap {
        let cols = self.ambient.columns(n);
        FiberMap {
            entries: cols
                .monomials
                .iter()
                .map(|m| {
                    let e = m.exponents();
                    (xy_index(e[X] as u32, e[Y] as u32), e[Z] as u32)
                })
                .collect(),
        }
    }

    fn fiber_dim(&self) -> usize {
        (self.thickness * (self.thickness + 1) / 2) as usize
    }

    /// Value at the point `(z : w) = (z0 : 1)` of a degree-`n` ambient vector.
    fn evaluate(&self, map: &FiberMap, powers: &[u32], v: &[u32]) -> Vec<u32> {
        let k = self.field;
        let mut out = vec![0u32; self.fiber_dim()];
        for (&(idx, e), &x) in map.entries.iter().zip(v) {
            if x != 0 {
                let slot = &mut out[idx as usize];
                *slot = k.add(*slot, k.mul(x, powers[e as usize]));
            }
        }
        out
    }

    fn powers(&self, z0: u32) -> Vec<u32> {
        let k = self.field;
        let mut p = Vec::with_capacity(self.window as usize + 2);
        let mut acc = 1;
        for _ in 0..=self.window + 1 {
            p.push(acc);
            acc = k.mul(acc, z0);
        }
        p
    }

    /// Image of a subspace of `F_n` in the fiber at `(z0 : 1)`.
    fn fiber_of(&self, n: u32, sub: &EchelonBasis, z0: u32) -> EchelonBasis {
        let map = self.fiber_map(n);
        let pw = self.powers(z0);
        EchelonBasis::from_rows(
            self.field,
            self.fiber_dim(),
            sub.rows().iter().map(|r| self.evaluate(&map, &pw, r)),
        )
    }

    /// Splitting type of the sheaf `M~` modulo torsion, read from evaluation ranks.
    ///
    /// At degree `n`, sections of `⊕ O(c_i)(n)` evaluated at `k` general points
    /// have rank `Σ min(k, n + c_i + 1)`; the increments recover the twists.
    /// The computation is repeated one degree lower and must agree.
    pub fn sheaf_splitting(&self, seed: u64) -> Result<SplittingType> {
        if self.window < 4 {
            return Err(AtlasError::WindowTooSmall("window below 4".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hi = self.twists_at(self.window, &mut rng)?;
        let lo = self.twists_at(self.window - 1, &mut rng)?;
        if hi != lo {
            return Err(AtlasError::WindowTooSmall(format!(
                "fiber splitting {hi:?} in degree {} differs from {lo:?} one degree lower",
                self.window
            )));
        }
        Ok(SplittingType::new(
            hi,
            SplittingCertificate {
                method: SplittingMethod::Fibers,
                window: self.window,
            },
        ))
    }

    fn twists_at(&self, n: u32, rng: &mut ChaCha8Rng) -> Result<Vec<i64>> {
        let a = &self.numer[n as usize];
        let b_top = &self.denom[self.window as usize];
        let ra = a.dim();
        let map = self.fiber_map(n);
        let mut functionals = EchelonBasis::new(self.field, ra);
        let mut deltas: Vec<usize> = Vec::new();
        let mut used = HashSet::new();
        let mut draw = |rng: &mut ChaCha8Rng| {
            let z0 = loop {
                let c = self.field.random_nonzero(rng);
                if used.insert(c) {
                    break c;
                }
            };
            let pw = self.powers(z0);
            let bp = self.fiber_of(self.window, b_top, z0);
            let np = bp.non_pivots();
            let q: Vec<Vec<u32>> = a
                .rows()
                .iter()
                .map(|r| bp.quotient_coordinates(&self.evaluate(&map, &pw, r), &np))
                .collect();
            let rank = Matrix::from_rows(self.field, np.len(), &q).rank();
            (np, q, rank)
        };
        // skip points where the denominator fiber grows or the image rank drops
        let mut spare: Vec<_> = (0..4).map(|_| draw(rng)).collect();
        let codim = spare.iter().map(|p| p.0.len()).min().unwrap_or(0);
        let rank = spare.iter().map(|p| p.2).max().unwrap_or(0);
        let mut zeros = 0;
        let mut skipped = 0;
        while zeros < 2 {
            if ra == 0 {
                break;
            }
            let (np, q, r) = spare.pop().unwrap_or_else(|| draw(rng));
            if np.len() != codim || r != rank {
                skipped += 1;
                if skipped > 64 {
                    return Err(AtlasError::Verification("no general sample point found".into()));
                }
                continue;
            }
            let before = functionals.dim();
            for t in 0..np.len() {
                functionals.insert(q.iter().map(|row| row[t]).collect());
            }
            let d = functionals.dim() - before;
            zeros = if d == 0 { zeros + 1 } else { 0 };
            deltas.push(d);
            if deltas.len() > ra + 4 {
                return Err(AtlasError::WindowExhausted(
                    "evaluation ranks did not stabilise".into(),
                ));
            }
        }
        if deltas.windows(2).any(|w| w[1] > w[0]) {
            return Err(AtlasError::Verification(format!(
                "rank increments {deltas:?} are not monotone; points not general"
            )));
        }
        // delta(k) = #{ i : c_i >= k - n - 1 } for k = 1, 2, ...
        let delta = |k: usize| deltas.get(k - 1).copied().unwrap_or(0);
        let mut twists = Vec::new();
        for kk in 1..=deltas.len() {
            let mult = delta(kk) - delta(kk + 1);
            let c = kk as i64 - n as i64 - 1;
            twists.extend(std::iter::repeat_n(c, mult));
        }
        Ok(twists)
    }

    /// Saturation of a submodule `M ⊆ F` with respect to `R`-torsion of `F / M`:
    /// `N = { v ∈ F : h v ∈ M for some nonzero h ∈ R }`.
    ///
    /// Each `N_n` is cut out by fiber conditions at random points, rank growth
    /// stalling twice; every new generator is then certified exactly by a form
    /// `h` with `h v ∈ M` inside the window.
    pub fn torsion_saturate(&self, seed: u64) -> Result<LineModule> {
        if self.has_denominator() {
            return Err(AtlasError::Unsupported(
                "torsion saturation needs a submodule of the free ambient".into(),
            ));
        }
        let k = self.field;
        let top = self.window;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fd = self.fiber_dim();
        let mut points: Vec<(Vec<u32>, EchelonBasis, Vec<usize>)> = Vec::new();
        let mut used = HashSet::new();
        let mut draw = |rng: &mut ChaCha8Rng| loop {
            let c = k.random_nonzero(rng);
            if used.insert(c) {
                let fiber = self.fiber_of(top, &self.numer[top as usize], c);
                let np = fiber.non_pivots();
                return (c, fiber, np);
            }
        };
        // points on the torsion support have a smaller fiber; skip them
        let mut spare: Vec<_> = (0..4).map(|_| draw(&mut rng)).collect();
        let generic = spare.iter().map(|p| p.2.len()).min().unwrap_or(0);
        let mut next_point = |rng: &mut ChaCha8Rng| -> Result<_> {
            for _ in 0..64 {
                let p = match spare.pop() {
                    Some(p) => p,
                    None => draw(rng),
                };
                match p.2.len().cmp(&generic) {
                    std::cmp::Ordering::Equal => return Ok(p),
                    std::cmp::Ordering::Less => {
                        return Err(AtlasError::Verification(
                            "sample points not general for the fiber rank".into(),
                        ))
                    }
                    std::cmp::Ordering::Greater => {}
                }
            }
            Err(AtlasError::Verification("no general sample point found".into()))
        };
        let mut sat: Vec<EchelonBasis> = Vec::with_capacity(top as usize + 1);
        for n in 0..=top {
            let cols = self.ambient.ncols(n);
            let map = self.fiber_map(n);
            let mut constraints = EchelonBasis::new(k, cols);
            let mut stalls = 0;
            let mut idx = 0;
            while stalls < 2 && constraints.dim() < cols {
                if idx == points.len() {
                    let (z0, fiber, np) = next_point(&mut rng)?;
                    points.push((self.powers(z0), fiber, np));
                }
                let (pw, fiber, np) = &points[idx];
                idx += 1;
                let before = constraints.dim();
                // functional t on F_n: quotient coordinate t of the evaluated column
                let mut rows = vec![vec![0u32; cols]; np.len()];
                for (c, &(xy, e)) in map.entries.iter().enumerate() {
                    let mut unit = vec![0u32; fd];
                    unit[xy as usize] = pw[e as usize];
                    let qc = fiber.quotient_coordinates(&unit, np);
                    for (t, &x) in qc.iter().enumerate() {
                        rows[t][c] = x;
                    }
                }
                for r in rows {
                    constraints.insert(r);
                }
                stalls = if constraints.dim() == before { stalls + 1 } else { 0 };
                if idx > cols + 4 {
                    return Err(AtlasError::WindowExhausted(format!(
                        "fiber conditions in degree {n} did not stabilise"
                    )));
                }
            }
            let (_, ker) = constraints.to_matrix().rank_kernel();
            let ker = if constraints.is_empty() {
                EchelonBasis::full(k, cols)
            } else {
                EchelonBasis::from_rows(k, cols, ker)
            };
            if !self.numer[n as usize].is_subspace_of(&ker) {
                return Err(AtlasError::Verification(format!(
                    "module not inside its fiber saturation in degree {n}; points not general"
                )));
            }
            sat.push(ker);
        }
        // exact certificates for the new generators
        for n in 0..=top {
            let mut lower = self.numer[n as usize].clone();
            if n > 0 {
                for var in [Z, W] {
                    for r in sat[n as usize - 1].rows() {
                        lower.insert(self.ambient.shift_vector(n - 1, r, var));
                    }
                }
            }
            for g in sat[n as usize].complement_of(&lower) {
                self.certify_torsion(n, g)?;
            }
        }
        for n in 0..top {
            for var in [X, Y] {
                for r in sat[n as usize].rows() {
                    if !sat[n as usize + 1].contains(&self.ambient.shift_vector(n, r, var)) {
                        return Err(AtlasError::Verification(format!(
                            "torsion saturation is not an ideal image in degree {n}"
                        )));
                    }
                }
            }
        }
        let denom = (0..=top)
            .map(|n| EchelonBasis::new(k, self.ambient.ncols(n)))
            .collect();
        Self::from_subspaces(k, self.thickness, top, sat, denom)
    }

    /// Finds a nonzero `h ∈ R_N` with `h v ∈ M_{n+N}`, `n + N` inside the window.
    fn certify_torsion(&self, n: u32, v: Vec<u32>) -> Result<()> {
        let mut level = vec![v];
        for big_n in 1..=(self.window - n) {
            let deg = n + big_n - 1;
            let mut next: Vec<Vec<u32>> = level
                .iter()
                .map(|u| self.ambient.shift_vector(deg, u, Z))
                .collect();
            next.push(self.ambient.shift_vector(deg, level.last().unwrap(), W));
            level = next;
            let m = &self.numer[(n + big_n) as usize];
            let mut span = EchelonBasis::new(self.field, m.ncols());
            let mut independent = true;
            for u in &level {
                let mut r = u.clone();
                m.reduce(&mut r);
                if !span.insert(r) {
                    independent = false;
                    break;
                }
            }
            if !independent {
                return Ok(());
            }
        }
        Err(AtlasError::WindowExhausted(format!(
            "no annihilating form found for a torsion generator of degree {n}"
        )))
    }

    /// Draws a random element of `A_n` (used for seeded choices).
    pub fn random_numerator_element<R: Rng + ?Sized>(&self, n: u32, rng: &mut R) -> Vec<u32> {
        crate::linalg::random_combination(
            self.field,
            self.ambient.ncols(n),
            self.numer[n as usize].rows(),
            rng,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::poly::{variables, HomogeneousPolynomial};

    fn k() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn structure_sheaf_of_neighbourhoods() {
        for d in 1..=4u32 {
            let m = LineModule::ambient_module(k(), d, d + 8);
            m.verify_commuting().unwrap();
            let gens = m.minimal_generators().unwrap();
            let expected: BTreeMap<u32, usize> = (0..d).map(|i| (i, i as usize + 1)).collect();
            assert_eq!(gens, expected);
            let s = m.splitting_type().unwrap();
            let mut twists = Vec::new();
            for i in 0..d as i64 {
                twists.extend(std::iter::repeat_n(-i, i as usize + 1));
            }
            twists.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(s.twists, twists);
            assert_eq!(m.sheaf_splitting(3).unwrap().twists, twists);
        }
    }

    #[test]
    fn neighbourhood_module_is_zero() {
        let i = GradedIdeal::line_power(k(), 3);
        let m = LineModule::module_of(&i, 3, 8).unwrap();
        assert!(m.is_zero());
        assert!(m.minimal_generators().unwrap().is_empty());
        assert!(LineModule::module_of(&GradedIdeal::line_power(k(), 2), 3, 8).is_ok());
        assert!(matches!(
            LineModule::module_of(&GradedIdeal::line_power(k(), 4), 3, 8),
            Err(AtlasError::Containment(_))
        ));
    }

    #[test]
    fn free_rank_one_generated_in_degree_four() {
        // (x, y, z^4) / (x, y)
        let field = k();
        let [x, y, z, _] = variables(field);
        let i = GradedIdeal::new(field, vec![x, y, z.pow(4)]).unwrap();
        let m = LineModule::module_of(&i, 1, 10).unwrap();
        assert_eq!(m.minimal_generators().unwrap(), BTreeMap::from([(4, 1)]));
        assert_eq!(m.splitting_type().unwrap().twists, vec![-4]);
    }

    #[test]
    fn torsion_module_is_not_free() {
        // (z, w) ⊂ R is not free, but it is irrelevant: its sheaf is O
        let field = k();
        let [x, y, z, w] = variables(field);
        let i = GradedIdeal::new(field, vec![x, y, z, w]).unwrap();
        let m = LineModule::module_of(&i, 1, 10).unwrap();
        assert!(matches!(m.splitting_type(), Err(AtlasError::NotFree(_))));
        assert_eq!(m.sheaf_splitting(1).unwrap().twists, vec![0]);
    }

    #[test]
    fn planted_torsion_is_recovered() {
        // M = (z, w) v with v = 1 in F = S/(x, y)
        let field = k();
        let [x, y, z, w] = variables(field);
        let i = GradedIdeal::new(field, vec![x, y, z, w]).unwrap();
        let m = LineModule::module_of(&i, 1, 9).unwrap();
        let n = m.torsion_saturate(5).unwrap();
        assert_eq!(n.dim(0), 1);
        assert_eq!(n.splitting_type().unwrap().twists, vec![0]);
        // idempotence
        let again = n.torsion_saturate(6).unwrap();
        assert_eq!(again.dims(), n.dims());
    }

    #[test]
    fn torsion_along_a_point_of_the_line() {
        // M = z * F inside F = S/(x, y)^2 has N = F since F/M is torsion
        let field = k();
        let z = HomogeneousPolynomial::var(field, Z);
        let gens: Vec<_> = Monomial::line_power_generators(2)
            .into_iter()
            .map(|m| HomogeneousPolynomial::monomial(field, m, 1))
            .chain([z])
            .collect();
        let i = GradedIdeal::new(field, gens).unwrap();
        let m = LineModule::module_of(&i, 2, 9).unwrap();
        let sat = m.torsion_saturate(11).unwrap();
        assert_eq!(sat.dims(), LineModule::ambient_module(field, 2, 9).dims());
    }

    #[test]
    fn display_groups_twists() {
        let s = SplittingType::new(
            vec![-4, -4, -3],
            SplittingCertificate {
                method: SplittingMethod::GradedFree,
                window: 9,
            },
        );
        assert_eq!(s.to_string(), "{-3, -4^2}");
        assert_eq!(s.degree(), -11);
        assert_eq!(s.euler_characteristic(), -8);
    }
}
