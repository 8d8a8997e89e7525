//! Column frames for degreewise slices.
//!
//! A frame fixes a monomial ideal (the floor) known to lie inside every ideal
//! stored against it. Slices are then kept modulo the floor, as vectors on the
//! monomials of degree `n` outside it.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::field::PrimeField;
use crate::monomial::{binomial, Monomial, W, X, Y, Z};
use crate::poly::HomogeneousPolynomial;

pub(crate) const NONE: u32 = u32::MAX;

/// Non-floor monomials of one degree and their positions.
#[derive(Debug)]
pub struct DegreeColumns {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

impl DegreeColumns {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }
}

/// Monomial floor plus per-degree column tables.
#[derive(Debug)]
pub struct Frame {
    floor: Vec<Monomial>,
    line_power: Option<u32>,
    columns: Mutex<BTreeMap<u32, Arc<DegreeColumns>>>,
    shifts: Mutex<BTreeMap<u32, Arc<[Vec<u32>; 4]>>>,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.floor == other.floor
    }
}

impl Eq for Frame {}

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

impl Frame {
    /// Frame for the monomial ideal generated by `gens`.
    pub fn monomial(gens: Vec<Monomial>) -> Arc<Frame> {
        let floor = minimize(gens);
        let line_power = detect_line_power(&floor);
        Arc::new(Frame {
            floor,
            line_power,
            columns: Mutex::new(BTreeMap::new()),
            shifts: Mutex::new(BTreeMap::new()),
        })
    }

    /// The frame with empty floor: every monomial is a column.
    pub fn empty() -> Arc<Frame> {
        Self::monomial(Vec::new())
    }

    /// The frame of `(x, y)^d`, i.e. the ambient of the line neighbourhood `L_d`.
    pub fn line_power(d: u32) -> Arc<Frame> {
        Self::monomial(Monomial::line_power_generators(d))
    }

    /// Intersection of the two floors (pairwise lcms).
    pub fn meet(a: &Frame, b: &Frame) -> Arc<Frame> {
        let mut gens = Vec::new();
        for p in &a.floor {
            for q in &b.floor {
                let mut e = [0u16; 4];
                for (v, slot) in e.iter_mut().enumerate() {
                    *slot = p.0[v].max(q.0[v]);
                }
                gens.push(Monomial(e));
            }
        }
        Self::monomial(gens)
    }

    /// Sum of the two floors.
    pub fn join(a: &Frame, b: &Frame) -> Arc<Frame> {
        Self::monomial(a.floor.iter().chain(&b.floor).copied().collect())
    }

    /// Product of the two floors.
    pub fn product(a: &Frame, b: &Frame) -> Arc<Frame> {
        let mut gens = Vec::new();
        for p in &a.floor {
            for q in &b.floor {
                gens.push(p.mul(q));
            }
        }
        Self::monomial(gens)
    }

    pub fn swap_lines(&self) -> Arc<Frame> {
        Self::monomial(self.floor.iter().map(Monomial::swap_lines).collect())
    }

    pub fn floor(&self) -> &[Monomial] {
        &self.floor
    }

    /// `Some(d)` when the floor is exactly `(x, y)^d`.
    pub fn as_line_power(&self) -> Option<u32> {
        self.line_power
    }

    pub fn in_floor(&self, m: &Monomial) -> bool {
        self.floor.iter().any(|g| g.divides(m))
    }

    pub fn columns(&self, n: u32) -> Arc<DegreeColumns> {
        if let Some(c) = self.columns.lock().unwrap().get(&n) {
            return c.clone();
        }
        let monomials: Vec<Monomial> = match self.line_power {
            Some(d) => line_frame_columns(d, n),
            None => Monomial::all_of_degree(n)
                .into_iter()
                .filter(|m| !self.in_floor(m))
                .collect(),
        };
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as u32))
            .collect();
        let cols = Arc::new(DegreeColumns {
            degree: n,
            monomials,
            index,
        });
        self.columns
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(cols)
            .clone()
    }

    pub fn ncols(&self, n: u32) -> usize {
        self.columns(n).len()
    }

    /// Number of floor monomials of degree `n`.
    pub fn floor_dim(&self, n: u32) -> usize {
        binomial(n as u64 + 3, 3) as usize - self.ncols(n)
    }

    /// For each variable, the column of `m * var` in degree `n + 1` (or `NONE`).
    pub fn shifts(&self, n: u32) -> Arc<[Vec<u32>; 4]> {
        if let Some(s) = self.shifts.lock().unwrap().get(&n) {
            return s.clone();
        }
        let src = self.columns(n);
        let dst = self.columns(n + 1);
        let table = [X, Y, Z, W].map(|v| {
            src.monomials
                .iter()
                .map(|m| {
                    dst.position(&m.times_var(v))
                        .map(|i| i as u32)
                        .unwrap_or(NONE)
                })
                .collect::<Vec<u32>>()
        });
        let table = Arc::new(table);
        self.shifts
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(table)
            .clone()
    }

    /// `var * v` for a degree-`n` vector, as a degree-`n + 1` vector.
    pub fn shift_vector(&self, n: u32, v: &[u32], var: usize) -> Vec<u32> {
        let table = self.shifts(n);
        let mut out = vec![0u32; self.ncols(n + 1)];
        for (c, &x) in v.iter().enumerate() {
            if x != 0 {
                let t = table[var][c];
                if t != NONE {
                    out[t as usize] = x;
                }
            }
        }
        out
    }

    /// Coordinates of a form modulo the floor. The degree must match.
    pub fn vector_of(&self, p: &HomogeneousPolynomial) -> Vec<u32> {
        let cols = self.columns(p.degree());
        let mut v = vec![0u32; cols.len()];
        for (m, c) in p.raw_terms() {
            if let Some(i) = cols.position(m) {
                v[i] = *c;
            }
        }
        v
    }

    pub fn polynomial_of(
        &self,
        field: PrimeField,
        n: u32,
        v: &[u32],
    ) -> HomogeneousPolynomial {
        let cols = self.columns(n);
        HomogeneousPolynomial::from_residues(
            field,
            n,
            cols.monomials.iter().zip(v).map(|(m, &c)| (*m, c)),
        )
    }
}

fn detect_line_power(floor: &[Monomial]) -> Option<u32> {
    let Some(first) = floor.first() else {
        return None;
    };
    let d = first.degree();
    let expected = Monomial::line_power_generators(d);
    (floor.len() == expected.len() && floor.iter().zip(&expected).all(|(a, b)| a == b))
        .then_some(d)
}

/// Monomials `x^i y^j z^k w^l` of degree `n` with `i + j < d`, in decreasing order.
fn line_frame_columns(d: u32, n: u32) -> Vec<Monomial> {
    let n16 = n as u16;
    let mut out = Vec::new();
    for i in (0..=n16).rev() {
        for j in (0..=n16 - i).rev() {
            if (i + j) as u32 >= d {
                continue;
            }
            for k in (0..=n16 - i - j).rev() {
                out.push(Monomial([i, j, k, n16 - i - j - k]));
            }
        }
    }
    out
}
