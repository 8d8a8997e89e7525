//! Dense exact linear algebra over a prime field.

use rand::Rng;

use crate::field::PrimeField;

const NONE: u32 = u32::MAX;

/// Subtracts `f * src` from `dst` on the columns `from..`.
#[inline]
fn axpy(p: u64, dst: &mut [u32], src: &[u32], coeff: u32, from: usize) {
    // dst += (p - coeff) * src
    let c = (p - coeff as u64) % p;
    if c == 0 {
        return;
    }
    for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
        if s != 0 {
            *d = ((*d as u64 + c * s as u64) % p) as u32;
        }
    }
}

#[inline]
fn scale_row(k: PrimeField, row: &mut [u32], c: u32, from: usize) {
    for v in &mut row[from..] {
        *v = k.mul(*v, c);
    }
}

/// Dense row-major matrix of residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows have unequal length.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&v| v % field.characteristic()));
        }
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = self.field.characteristic() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, &b) in other.row(k).iter().enumerate() {
                    acc[c] = (acc[c] + a * b as u64) % p;
                }
            }
            for (c, &a) in acc.iter().enumerate() {
                out.set(r, c, a as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.characteristic() as u64;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (&a, &b) in self.row(r).iter().zip(v) {
                    acc = (acc + a as u64 * b as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let k = self.field;
        let p = k.characteristic() as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, lead * cols + j);
                }
            }
            let inv = k.inv(self.get(lead, c)).expect("nonzero pivot");
            let (before, rest) = self.data.split_at_mut(lead * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            scale_row(k, pivot_row, inv, c);
            for r in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
                let f = r[c];
                if f != 0 {
                    axpy(p, r, pivot_row, f, c);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Rank and a basis of the right kernel `{v : M v = 0}`.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<u32>>) {
        let k = self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![NONE; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = r as u32;
        }
        let mut kernel = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] != NONE {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = k.neg(m.get(r, free));
            }
            kernel.push(v);
        }
        (pivots.len(), kernel)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let k = self.field;
        let p = k.characteristic() as u64;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| m.get(r, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = k.neg(det);
            }
            let piv = m.get(c, c);
            det = k.mul(det, piv);
            let inv = k.inv(piv).expect("nonzero pivot");
            let pivot_row: Vec<u32> = m.row(c).iter().map(|&v| k.mul(v, inv)).collect();
            for r in c + 1..n {
                let f = m.get(r, c);
                if f != 0 {
                    axpy(p, &mut m.data[r * n..(r + 1) * n], &pivot_row, f, c);
                }
            }
        }
        det
    }
}

/// A subspace of `k^ncols` held as a fully reduced row echelon basis.
///
/// Rows are kept sorted by pivot column; every pivot column is zero in all
/// other rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    pivot_row: Vec<u32>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![NONE; ncols],
        }
    }

    pub fn full(field: PrimeField, ncols: usize) -> Self {
        let mut b = Self::new(field, ncols);
        for c in 0..ncols {
            let mut v = vec![0; ncols];
            v[c] = 1;
            b.rows.push(v);
            b.pivots.push(c);
            b.pivot_row[c] = c as u32;
        }
        b
    }

    pub fn from_rows<I>(field: PrimeField, ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut b = Self::new(field, ncols);
        for r in rows {
            b.insert(r);
        }
        b
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&c| self.pivot_row[c] == NONE)
            .collect()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c] != NONE
    }

    /// Row with pivot in column `c`.
    pub fn row_with_pivot(&self, c: usize) -> Option<&[u32]> {
        match self.pivot_row[c] {
            NONE => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    /// Reduces `v` modulo the subspace; the result is zero on every pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.ncols);
        let p = self.field.characteristic() as u64;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                axpy(p, v, row, f, c);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length does not match subspace");
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let k = self.field;
        let p = k.characteristic() as u64;
        let inv = k.inv(v[c]).expect("nonzero entry");
        scale_row(k, &mut v, inv, c);
        for row in &mut self.rows {
            let f = row[c];
            if f != 0 {
                axpy(p, row, &v, f, c);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, c);
        for (r, &q) in self.pivots.iter().enumerate().skip(pos) {
            self.pivot_row[q] = r as u32;
        }
        true
    }

    pub fn is_subspace_of(&self, other: &EchelonBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &EchelonBasis) -> EchelonBasis {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    /// Rows of `self` extending a basis of `sub` to one of `sub + self`.
    pub fn complement_of(&self, sub: &EchelonBasis) -> Vec<Vec<u32>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for r in &self.rows {
            if acc.insert(r.clone()) {
                out.push(r.clone());
            }
        }
        out
    }

    /// Intersection by Zassenhaus' algorithm.
    pub fn intersection(&self, other: &EchelonBasis) -> EchelonBasis {
        assert_eq!(self.ncols, other.ncols);
        let n = self.ncols;
        let mut z = EchelonBasis::new(self.field, 2 * n);
        for r in &self.rows {
            let mut v = r.clone();
            v.extend_from_slice(r);
            z.insert(v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.resize(2 * n, 0);
            z.insert(v);
        }
        let mut out = EchelonBasis::new(self.field, n);
        for (row, &c) in z.rows.iter().zip(&z.pivots) {
            if c >= n {
                out.insert(row[n..].to_vec());
            }
        }
        out
    }

    /// Coordinates of `v + self` in the quotient, read off the non-pivot columns.
    pub fn quotient_coordinates(&self, v: &[u32], non_pivots: &[usize]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        non_pivots.iter().map(|&c| w[c]).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ncols, &self.rows)
    }
}

/// Random linear combination of `rows`.
pub fn random_combination<R: Rng + ?Sized>(
    field: PrimeField,
    ncols: usize,
    rows: &[Vec<u32>],
    rng: &mut R,
) -> Vec<u32> {
    let p = field.characteristic() as u64;
    let mut acc = vec![0u64; ncols];
    for r in rows {
        let c = field.random(rng) as u64;
        for (a, &v) in acc.iter_mut().zip(r) {
            *a = (*a + c * v as u64) % p;
        }
    }
    acc.into_iter().map(|a| a as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k() -> PrimeField {
        PrimeField::default()
    }

    /// Random matrix of prescribed rank as a product of thin factors.
    fn low_rank(seed: u64, rows: usize, cols: usize, rank: usize) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::random(k(), rows, rank, &mut rng);
        let b = Matrix::random(k(), rank, cols, &mut rng);
        a.mul(&b)
    }

    #[test]
    fn identity_and_zero() {
        let (r, ker) = Matrix::identity(k(), 5).rank_kernel();
        assert_eq!((r, ker.len()), (5, 0));
        let (r, ker) = Matrix::zeros(k(), 3, 4).rank_kernel();
        assert_eq!((r, ker.len()), (0, 4));
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_rows(k(), 2, &[vec![2, 3], vec![5, 7]]);
        assert_eq!(m.determinant(), k().reduce(-1));
        let m = Matrix::from_rows(k(), 3, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 4]]);
        assert_eq!(m.determinant(), k().reduce(-4));
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let e = |c: usize| {
            let mut v = vec![0; 4];
            v[c] = 1;
            v
        };
        let u = EchelonBasis::from_rows(k(), 4, [e(0), e(1), e(2)]);
        let w = EchelonBasis::from_rows(k(), 4, [e(1), e(2), e(3)]);
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 2);
        assert!(i.contains(&e(1)) && i.contains(&e(2)));
        assert_eq!(u.complement_of(&i).len(), 1);
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(seed in any::<u64>(), rows in 1usize..9, cols in 1usize..9, rank in 0usize..6) {
            let rank = rank.min(rows).min(cols);
            let m = low_rank(seed, rows, cols, rank);
            let (r, ker) = m.rank_kernel();
            prop_assert_eq!(r + ker.len(), cols);
            prop_assert_eq!(r, m.transpose().rank());
            prop_assert!(r <= rank);
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
            let kb = EchelonBasis::from_rows(k(), cols, ker.clone());
            prop_assert_eq!(kb.dim(), ker.len());
        }

        #[test]
        fn echelon_dimension_formula(seed in any::<u64>(), n in 1usize..8, a in 0usize..6, b in 0usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ua = low_rank(seed, a, n, a.min(n).max(1).min(3));
            let ub = Matrix::random(k(), b, n, &mut rng);
            let u = EchelonBasis::from_rows(k(), n, ua.row_vecs());
            let w = EchelonBasis::from_rows(k(), n, ub.row_vecs());
            let s = u.sum(&w);
            let i = u.intersection(&w);
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
            for r in u.rows() {
                let mut v = r.clone();
                u.reduce(&mut v);
                prop_assert!(v.iter().all(|&x| x == 0));
            }
            for (row, &c) in u.rows().iter().zip(u.pivots()) {
                prop_assert_eq!(row[c], 1);
                for other in u.rows() {
                    if other != row {
                        prop_assert_eq!(other[c], 0);
                    }
                }
            }
        }
    }
}
