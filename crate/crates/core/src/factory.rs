//! Constructors for multiplicity structures on the lines `x = y = 0` and `z = w = 0`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AtlasError, Result};
use crate::field::PrimeField;
use crate::graded::frame::Frame;
use crate::graded::ideal::GradedIdeal;
use crate::graded::module::{LineModule, SplittingType};
use crate::linalg::{random_combination, Matrix};
use crate::monomial::{Monomial, X, Y};
use crate::poly::{coprime, HomogeneousPolynomial};

/// Which coordinate line(s) carry the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Support {
    /// `x = y = 0`.
    Line,
    /// `z = w = 0`.
    SkewLine,
    /// Both lines.
    TwoLines,
}

/// Quasiprimitive type `(a; b_2, ..., b_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QPType {
    pub a: i64,
    pub b: Vec<i64>,
}

impl QPType {
    pub fn new(a: i64, b: Vec<i64>) -> Self {
        Self { a, b }
    }

    /// Type `(a; 0, ..., 0)` of a primitive `d`-uple line.
    pub fn primitive(d: u32, a: i64) -> Self {
        Self {
            a,
            b: vec![0; d.saturating_sub(2) as usize],
        }
    }

    /// The multiplicity `d` of a curve with this type.
    pub fn degree(&self) -> u32 {
        self.b.len() as u32 + 2
    }

    /// `b_j` with the convention `b_1 = 0`.
    pub fn b_at(&self, j: usize) -> i64 {
        if j <= 1 {
            0
        } else {
            self.b[j - 2]
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.b.iter().all(|&b| b == 0)
    }

    /// `b_i + b_j <= b_{i+j}` for `i + j <= d - 1`, with `b_1 = 0`.
    pub fn is_superadditive(&self) -> bool {
        let top = self.degree() as usize - 1;
        (1..=top).all(|i| (i..=top - i).all(|j| self.b_at(i) + self.b_at(j) <= self.b_at(i + j)))
            && self.b.iter().all(|&b| b >= 0)
    }

    /// Subtype of the filtration member `C_k`.
    pub fn truncate(&self, k: u32) -> QPType {
        QPType {
            a: self.a,
            b: self.b[..k.saturating_sub(2) as usize].to_vec(),
        }
    }
}

impl fmt::Display for QPType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.a)?;
        if !self.b.is_empty() {
            let b: Vec<String> = self.b.iter().map(|b| b.to_string()).collect();
            write!(f, ";{}", b.join(","))?;
        }
        write!(f, ")")
    }
}

/// How a curve was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub recipe: String,
    /// Seeds tried, the last one successful.
    pub seeds: Vec<u64>,
}

impl Provenance {
    pub fn fixed(recipe: impl Into<String>) -> Self {
        Self {
            recipe: recipe.into(),
            seeds: Vec::new(),
        }
    }
}

/// A saturated ideal of a curve supported on coordinate lines.
#[derive(Clone, Debug)]
pub struct MultiLineCurve {
    pub ideal: GradedIdeal,
    pub support: Support,
    pub window: u32,
    /// `I_{C_1} ⊇ ... ⊇ I_{C_k}` as retained by the constructor.
    pub filtration: Option<Vec<GradedIdeal>>,
    pub qp_type: Option<QPType>,
    pub provenance: Provenance,
}

impl MultiLineCurve {
    pub fn field(&self) -> PrimeField {
        self.ideal.field()
    }

    /// Degree and genus from the Hilbert polynomial over the window.
    pub fn degree_genus(&self) -> Result<(i64, i64)> {
        self.ideal.hilbert_polynomial(self.window)
    }

    pub fn degree(&self) -> Result<i64> {
        Ok(self.degree_genus()?.0)
    }

    pub fn genus(&self) -> Result<i64> {
        Ok(self.degree_genus()?.1)
    }

    /// Least `k` with `(x, y)^k ⊆ I_C`, searched up to the window.
    pub fn line_thickness(&self) -> Result<u32> {
        if self.support != Support::Line {
            return Err(AtlasError::Unsupported(
                "thickness is defined for curves on x = y = 0".into(),
            ));
        }
        (1..=self.window)
            .find(|&k| self.ideal.contains_floor(&Frame::line_power(k)))
            .ok_or_else(|| AtlasError::WindowExhausted("no power of (x,y) inside the ideal".into()))
    }

    /// The curve moved to the other coordinate line.
    pub fn swap_lines(&self) -> MultiLineCurve {
        let support = match self.support {
            Support::Line => Support::SkewLine,
            Support::SkewLine => Support::Line,
            Support::TwoLines => Support::TwoLines,
        };
        MultiLineCurve {
            ideal: self.ideal.swap_lines(),
            support,
            window: self.window,
            filtration: self
                .filtration
                .as_ref()
                .map(|f| f.iter().map(|i| i.swap_lines()).collect()),
            qp_type: self.qp_type.clone(),
            provenance: self.provenance.clone(),
        }
    }

    /// Replaces the window, e.g. to enlarge certification range.
    pub fn with_window(mut self, window: u32) -> Self {
        self.window = window;
        self
    }
}

/// Default top degree `n1 = d + l + 2a + 8` with `l = a`, plus the largest `b_j`.
pub fn default_window(d: u32, a: u32, max_b: u32) -> u32 {
    d + a + 2 * a + 8 + max_b
}

fn window_for(t: &QPType) -> u32 {
    let max_b = t.b.iter().copied().max().unwrap_or(0).max(0) as u32;
    default_window(t.degree(), t.a.max(0) as u32, max_b)
}

/// Deterministic child seed for a named sub-step.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    // splitmix64 step
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Retries a seeded construction on verification failure, up to `attempts` seeds
/// `seed, seed + 1, ...`. Returns the value with all seeds tried.
pub fn with_reseed<T>(
    seed: u64,
    attempts: usize,
    mut build: impl FnMut(u64) -> Result<T>,
) -> Result<(T, Vec<u64>)> {
    let mut tried = Vec::new();
    let mut last = None;
    for i in 0..attempts.max(1) {
        let s = seed.wrapping_add(i as u64);
        tried.push(s);
        match build(s) {
            Ok(v) => return Ok((v, tried)),
            Err(AtlasError::Verification(msg)) => last = Some(msg),
            Err(e) => return Err(e),
        }
    }
    Err(AtlasError::Verification(format!(
        "all seeds {tried:?} failed; last: {}",
        last.unwrap_or_default()
    )))
}

fn binary_degree_check(name: &str, p: &HomogeneousPolynomial, degree: u32) -> Result<()> {
    if !p.is_binary() {
        return Err(AtlasError::InvalidData(format!("{name} = {p} is not a form in z, w")));
    }
    if !p.is_zero() && p.degree() != degree {
        return Err(AtlasError::InvalidData(format!(
            "{name} has degree {}, expected {degree}",
            p.degree()
        )));
    }
    Ok(())
}

fn lift_degree(p: &HomogeneousPolynomial, degree: u32) -> HomogeneousPolynomial {
    if p.is_zero() {
        HomogeneousPolynomial::zero(p.field(), degree)
    } else {
        p.clone()
    }
}

fn var(field: PrimeField, v: usize) -> HomogeneousPolynomial {
    HomogeneousPolynomial::var(field, v)
}

/// `F = x g - y f`.
pub fn double_line_form(f: &HomogeneousPolynomial, g: &HomogeneousPolynomial) -> HomogeneousPolynomial {
    let field = f.field();
    var(field, X)
        .mul(g)
        .try_sub(&var(field, Y).mul(f))
        .expect("forms of equal degree")
}

/// The neighbourhood `L_d` with ideal `(x, y)^d`.
pub fn neighborhood(field: PrimeField, d: u32) -> Result<MultiLineCurve> {
    if d == 0 {
        return Err(AtlasError::InvalidData("multiplicity must be at least 1".into()));
    }
    let ideal = GradedIdeal::line_power(field, d);
    let filtration = (1..=d).map(|j| GradedIdeal::line_power(field, j)).collect();
    let window = default_window(d, 0, 0);
    let mut ideal = ideal;
    ideal.certify_saturated(window)?;
    Ok(MultiLineCurve {
        ideal,
        support: Support::Line,
        window,
        filtration: Some(filtration),
        qp_type: None,
        provenance: Provenance::fixed(format!("neighborhood:{d}")),
    })
}

/// The reduced line `x = y = 0`.
pub fn line(field: PrimeField) -> MultiLineCurve {
    let mut c = neighborhood(field, 1).expect("the line");
    c.provenance = Provenance::fixed("line");
    c
}

fn double_ideal(field: PrimeField, f: &HomogeneousPolynomial, g: &HomogeneousPolynomial) -> Result<GradedIdeal> {
    GradedIdeal::with_frame(field, Frame::line_power(2), vec![double_line_form(f, g)])
}

/// Double line `(x^2, xy, y^2, x g - y f)` of type `a`, genus `-a - 1`.
pub fn double_line(
    field: PrimeField,
    a: u32,
    f: &HomogeneousPolynomial,
    g: &HomogeneousPolynomial,
) -> Result<MultiLineCurve> {
    binary_degree_check("f", f, a + 1)?;
    binary_degree_check("g", g, a + 1)?;
    if f.is_zero() || g.is_zero() || !coprime(f, g)? {
        return Err(AtlasError::InvalidData("f and g have a common zero".into()));
    }
    let window = default_window(2, a, 0);
    let mut ideal = double_ideal(field, f, g)?;
    ideal.certify_saturated(window)?;
    Ok(MultiLineCurve {
        ideal: ideal.clone(),
        support: Support::Line,
        window,
        filtration: Some(vec![GradedIdeal::line_power(field, 1), ideal]),
        qp_type: Some(QPType::new(a as i64, vec![])),
        provenance: Provenance::fixed(format!("double:{a}")),
    })
}

/// Double line with `f = z^{a+1}`, `g = w^{a+1}`.
pub fn standard_double_line(field: PrimeField, a: u32) -> Result<MultiLineCurve> {
    let f = HomogeneousPolynomial::monomial(field, Monomial::new(0, 0, a as u16 + 1, 0), 1);
    let g = HomogeneousPolynomial::monomial(field, Monomial::new(0, 0, 0, a as u16 + 1), 1);
    double_line(field, a, &f, &g)
}

/// Random double line of type `a`.
pub fn random_double_line<R: Rng + ?Sized>(field: PrimeField, a: u32, rng: &mut R) -> Result<MultiLineCurve> {
    loop {
        let f = HomogeneousPolynomial::random_binary(field, a + 1, rng);
        let g = HomogeneousPolynomial::random_binary(field, a + 1, rng);
        match double_line(field, a, &f, &g) {
            Err(AtlasError::InvalidData(_)) => continue,
            other => return other,
        }
    }
}

/// Parameters `(f, g, p, r, s, t)` of a quasiprimitive triple line of type `(a; b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleData {
    pub a: u32,
    pub b: u32,
    pub f: HomogeneousPolynomial,
    pub g: HomogeneousPolynomial,
    pub p: HomogeneousPolynomial,
    pub r: HomogeneousPolynomial,
    pub s: HomogeneousPolynomial,
    pub t: HomogeneousPolynomial,
}

impl TripleData {
    /// Checks degrees, `gcd(f, g) = 1` and `gcd(p, q) = 1` for `q = r f^2 + s f g + t g^2`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: u32,
        b: u32,
        f: HomogeneousPolynomial,
        g: HomogeneousPolynomial,
        p: HomogeneousPolynomial,
        r: HomogeneousPolynomial,
        s: HomogeneousPolynomial,
        t: HomogeneousPolynomial,
    ) -> Result<Self> {
        binary_degree_check("f", &f, a + 1)?;
        binary_degree_check("g", &g, a + 1)?;
        binary_degree_check("p", &p, b)?;
        for (name, x) in [("r", &r), ("s", &s), ("t", &t)] {
            binary_degree_check(name, x, a + b)?;
        }
        if f.is_zero() || g.is_zero() || !coprime(&f, &g)? {
            return Err(AtlasError::InvalidData("f and g have a common zero".into()));
        }
        let data = Self {
            a,
            b,
            f,
            g,
            p: lift_degree(&p, b),
            r: lift_degree(&r, a + b),
            s: lift_degree(&s, a + b),
            t: lift_degree(&t, a + b),
        };
        if data.p.is_zero() {
            return Err(AtlasError::InvalidData("p must be nonzero".into()));
        }
        let q = data.q();
        if q.is_zero() || !coprime(&data.p, &q)? {
            return Err(AtlasError::InvalidData(
                "q = r f^2 + s f g + t g^2 is not coprime with p".into(),
            ));
        }
        Ok(data)
    }

    /// Random admissible data of type `(a; b)`.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, a: u32, b: u32, rng: &mut R) -> Self {
        loop {
            let mut draw = |n| HomogeneousPolynomial::random_binary(field, n, rng);
            let (f, g, p) = (draw(a + 1), draw(a + 1), draw(b));
            let (r, s, t) = (draw(a + b), draw(a + b), draw(a + b));
            if let Ok(d) = Self::new(a, b, f, g, p, r, s, t) {
                return d;
            }
        }
    }

    /// `f = z^{a+1}`, `g = w^{a+1}`, `p = z^{b - ⌊b/2⌋} w^{⌊b/2⌋}`, `r = z^{a+b}`,
    /// `s = 0`, `t = w^{a+b}`, so that `q = z^{3a+b+2} + w^{3a+b+2}`.
    pub fn good(field: PrimeField, a: u32, b: u32) -> Self {
        let m = |k: u32, l: u32| HomogeneousPolynomial::monomial(field, Monomial::new(0, 0, k as u16, l as u16), 1);
        Self::new(
            a,
            b,
            m(a + 1, 0),
            m(0, a + 1),
            m(b - b / 2, b / 2),
            m(a + b, 0),
            HomogeneousPolynomial::zero(field, a + b),
            m(0, a + b),
        )
        .expect("the standard instance is admissible")
    }

    pub fn field(&self) -> PrimeField {
        self.f.field()
    }

    /// `F = x g - y f`.
    pub fn big_f(&self) -> HomogeneousPolynomial {
        double_line_form(&self.f, &self.g)
    }

    /// `G = p F - r x^2 - s x y - t y^2`.
    pub fn big_g(&self) -> HomogeneousPolynomial {
        let k = self.field();
        let (x, y) = (var(k, X), var(k, Y));
        let mut out = self.p.mul(&self.big_f());
        for (c, m) in [(&self.r, x.mul(&x)), (&self.s, x.mul(&y)), (&self.t, y.mul(&y))] {
            out = out.try_sub(&c.mul(&m)).expect("degree a+b+2");
        }
        out
    }

    /// `q = r f^2 + s f g + t g^2`.
    pub fn q(&self) -> HomogeneousPolynomial {
        let (f, g) = (&self.f, &self.g);
        self.r
            .mul(&f.mul(f))
            .try_add(&self.s.mul(&f.mul(g)))
            .and_then(|u| u.try_add(&self.t.mul(&g.mul(g))))
            .expect("degree 3a+b+2")
    }

    pub fn qp_type(&self) -> QPType {
        QPType::new(self.a as i64, vec![self.b as i64])
    }
}

fn triple_ideal(data: &TripleData) -> Result<GradedIdeal> {
    let k = data.field();
    let f = data.big_f();
    GradedIdeal::with_frame(
        k,
        Frame::line_power(3),
        vec![var(k, X).mul(&f), var(k, Y).mul(&f), data.big_g()],
    )
}

/// Quasiprimitive triple line `I_L^3 + (xF, yF, G)` of type `(a; b)`.
pub fn triple_line(data: &TripleData) -> Result<MultiLineCurve> {
    let k = data.field();
    let t = data.qp_type();
    let window = window_for(&t);
    let mut ideal = triple_ideal(data)?;
    ideal.certify_saturated(window)?;
    let c2 = double_ideal(k, &data.f, &data.g)?;
    let curve = MultiLineCurve {
        ideal: ideal.clone(),
        support: Support::Line,
        window,
        filtration: Some(vec![GradedIdeal::line_power(k, 1), c2, ideal]),
        qp_type: Some(t.clone()),
        provenance: Provenance::fixed(format!("triple:{},{}", data.a, data.b)),
    };
    let expected = crate::invariants::qp_genus(&t);
    let (d, g) = curve.degree_genus()?;
    if (d, g) != (3, expected) {
        return Err(AtlasError::Verification(format!(
            "triple line has degree {d} and genus {g}, expected 3 and {expected}"
        )));
    }
    Ok(curve)
}

/// The ideals `I_{C_2}`, `I_{C_3}` and `J = I_L I_{C_3} + I_{C_2}^2` of the quadruple construction.
#[derive(Clone, Debug)]
pub struct QuadrupleParts {
    pub c2: GradedIdeal,
    pub c3: GradedIdeal,
    pub j: GradedIdeal,
}

impl QuadrupleParts {
    pub fn new(data: &TripleData) -> Result<Self> {
        let k = data.field();
        let c2 = double_ideal(k, &data.f, &data.g)?;
        let c3 = triple_ideal(data)?;
        let j = GradedIdeal::line_power(k, 1)
            .product(&c3)?
            .sum(&c2.product(&c2)?)?;
        Ok(Self { c2, c3, j })
    }

    /// `J / I_L^4`.
    pub fn j_module(&self, window: u32) -> Result<LineModule> {
        LineModule::module_of(&self.j, 4, window)
    }

    /// `I_{C_3} / J` inside `S / I_L^4`.
    pub fn c3_over_j(&self, window: u32) -> Result<LineModule> {
        LineModule::from_ideals(&self.c3, Some(&self.j), 4, window)
    }
}

/// `I_L I_{C_2} / I_L^3` for the double line of `data`.
pub fn double_conormal_module(data: &TripleData, window: u32) -> Result<LineModule> {
    let k = data.field();
    let c2 = double_ideal(k, &data.f, &data.g)?;
    let m = GradedIdeal::line_power(k, 1).product(&c2)?;
    LineModule::module_of(&m, 3, window)
}

/// Quadruple line over the triple line of `data`:
/// `I_C = sat(J + ξ)` with `ξ = G + (random element of I_{C_3} in degree a+b+2 built from
/// x^3.., xF, yF)`.
///
/// Verified before return: degree 4, and for `b = 2` type `(a; 2, 2)` and the matching genus.
pub fn quadruple_line(data: &TripleData, seed: u64) -> Result<MultiLineCurve> {
    if data.b == 0 {
        return Err(AtlasError::InvalidData(
            "the quadruple construction needs b >= 1".into(),
        ));
    }
    let k = data.field();
    let (a, b) = (data.a, data.b);
    let parts = QuadrupleParts::new(data)?;
    let deg = a + b + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = data.big_f();
    let mut xi = data.big_g();
    let mut push = |base: &HomogeneousPolynomial, rest: u32, rng: &mut ChaCha8Rng| {
        for m in Monomial::binary_of_degree(rest) {
            let c = k.random(rng) as i64;
            xi = xi
                .try_add(&base.mul_monomial(&m).scale(k.element(c)))
                .expect("degree a+b+2");
        }
    };
    if a + b >= 1 {
        for cubic in Monomial::line_power_generators(3) {
            push(&HomogeneousPolynomial::monomial(k, cubic, 1), a + b - 1, &mut rng);
        }
    }
    push(&var(k, X).mul(&f), b - 1, &mut rng);
    push(&var(k, Y).mul(&f), b - 1, &mut rng);
    debug_assert_eq!(xi.degree(), deg);

    let max_b = b;
    let window = default_window(4, a, max_b);
    let ideal = parts.j.plus(&[xi])?.saturate(window)?;
    let mut curve = MultiLineCurve {
        ideal: ideal.clone(),
        support: Support::Line,
        window,
        filtration: Some(vec![
            GradedIdeal::line_power(k, 1),
            parts.c2.clone(),
            parts.c3.clone(),
            ideal,
        ]),
        qp_type: None,
        provenance: Provenance {
            recipe: format!("quadruple:{a},{b}"),
            seeds: vec![seed],
        },
    };
    let (d, g) = curve.degree_genus()?;
    if d != 4 {
        return Err(AtlasError::Verification(format!(
            "extension has degree {d}, expected 4"
        )));
    }
    let filtration = cm_filtration(&curve, derive_seed(seed, 1))?;
    let t = extract_type(&filtration, window)?;
    if b == 2 {
        let expected = QPType::new(a as i64, vec![2, 2]);
        let eg = crate::invariants::qp_genus(&expected);
        if t != expected || g != eg {
            return Err(AtlasError::Verification(format!(
                "extension has type {t} and genus {g}, expected {expected} and {eg}"
            )));
        }
    }
    curve.qp_type = Some(t);
    Ok(curve)
}

/// Primitive `(d+1)`-uple line of type `a` containing the primitive `d`-uple line `C`.
///
/// A seeded surjection `𝒞_C ⊗ O_L → O_L(da)` is fixed by the section `s` of
/// `𝒞_C ⊗ O_L(a+2)` spanning its kernel. `s` is realised in `I_C / I_L I_C` through the
/// pair `(z^N s, w^N s)`, and `I = sat(I_L I_C + lifts of the pair)`.
pub fn primitive_extension(curve: &MultiLineCurve, seed: u64) -> Result<MultiLineCurve> {
    let Some(t) = curve.qp_type.clone() else {
        return Err(AtlasError::InvalidData("input type unknown".into()));
    };
    if !t.is_primitive() || t.a < 0 || curve.support != Support::Line {
        return Err(AtlasError::InvalidData(format!(
            "primitive extension needs a primitive curve of type a >= 0 on x = y = 0, got {t}"
        )));
    }
    let k = curve.field();
    let d = t.degree();
    let a = t.a as u32;
    let new_type = QPType::primitive(d + 1, t.a);
    let lift = d + a + 2;
    let n = a + 2 + lift;
    let window = window_for(&new_type).max(curve.window).max(n + lift + 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let lic = GradedIdeal::line_power(k, 1).product(&curve.ideal)?;
    let m = LineModule::from_ideals(&curve.ideal, Some(&lic), d + 1, n + lift)?;
    let frame = m.ambient().clone();
    let power = |v: &[u32], var: usize| {
        let mut u = v.to_vec();
        for e in 0..lift {
            u = frame.shift_vector(n + e, &u, var);
        }
        u
    };
    let basis = m.numerator(n).rows().to_vec();
    let top = m.denominator(n + lift);
    let mut unknowns: Vec<Vec<u32>> = Vec::with_capacity(2 * basis.len());
    for (var, sign) in [(crate::monomial::W, false), (crate::monomial::Z, true)] {
        for r in &basis {
            let mut u = power(r, var);
            if sign {
                u = u.iter().map(|&c| k.neg(c)).collect();
            }
            top.reduce(&mut u);
            unknowns.push(u);
        }
    }
    let system = Matrix::from_rows(k, frame.ncols(n + lift), &unknowns).transpose();
    let (_, kernel) = system.rank_kernel();
    let pick = random_combination(k, 2 * basis.len(), &kernel, &mut rng);
    let mut lifts = Vec::new();
    for half in pick.chunks(basis.len()) {
        let mut v = vec![0u32; frame.ncols(n)];
        for (c, r) in half.iter().zip(&basis) {
            for (slot, &x) in v.iter_mut().zip(r) {
                *slot = k.add(*slot, k.mul(*c, x));
            }
        }
        lifts.push(frame.polynomial_of(k, n, &v));
    }
    let ideal = lic.plus(&lifts)?.saturate(window)?;
    let mut out = MultiLineCurve {
        ideal: ideal.clone(),
        support: Support::Line,
        window,
        filtration: None,
        qp_type: None,
        provenance: Provenance {
            recipe: format!("primitive:{},{}", d + 1, a),
            seeds: vec![seed],
        },
    };
    let (deg, g) = out.degree_genus()?;
    let eg = crate::invariants::qp_genus(&new_type);
    if deg != d as i64 + 1 || g != eg {
        return Err(AtlasError::Verification(format!(
            "extension has degree {deg} and genus {g}, expected {} and {eg}",
            d + 1
        )));
    }
    let filtration = cm_filtration(&out, derive_seed(seed, 1))?;
    let got = extract_type(&filtration, window)?;
    if got != new_type {
        return Err(AtlasError::Verification(format!(
            "extension has type {got}, expected {new_type}"
        )));
    }
    if !filtration[d as usize - 1].same_as(&curve.ideal, window) {
        return Err(AtlasError::Verification(
            "extension does not contain the input curve".into(),
        ));
    }
    let mut retained = curve
        .filtration
        .clone()
        .unwrap_or_else(|| filtration[..d as usize].to_vec());
    retained.push(ideal);
    out.filtration = Some(retained);
    out.qp_type = Some(got);
    Ok(out)
}

/// Primitive line of multiplicity `d` and type `a`, built from the standard double
/// line by seeded primitive extensions with reseeding.
pub fn primitive_line(field: PrimeField, d: u32, a: u32, seed: u64, attempts: usize) -> Result<MultiLineCurve> {
    if d < 2 {
        return Err(AtlasError::InvalidData("primitive lines start in degree 2".into()));
    }
    let mut curve = standard_double_line(field, a)?;
    let mut seeds = Vec::new();
    for step in 2..d {
        let base = derive_seed(seed, step as u64);
        let (next, tried) = with_reseed(base, attempts, |s| primitive_extension(&curve, s))?;
        seeds.extend(tried);
        curve = next;
    }
    curve.provenance = Provenance {
        recipe: format!("primitive:{d},{a}"),
        seeds,
    };
    Ok(curve)
}

/// Disjoint union of `C` on `x = y = 0` with `D`, moved to `z = w = 0` if needed.
pub fn disjoint_union(c: &MultiLineCurve, d: &MultiLineCurve) -> Result<MultiLineCurve> {
    if c.support != Support::Line {
        return Err(AtlasError::InvalidData(
            "first curve must lie on x = y = 0".into(),
        ));
    }
    let d = match d.support {
        Support::Line => d.swap_lines(),
        Support::SkewLine => d.clone(),
        Support::TwoLines => {
            return Err(AtlasError::InvalidData(
                "second curve must be supported on one line".into(),
            ))
        }
    };
    let kc = c.line_thickness()?;
    let kd = d.swap_lines().line_thickness()?;
    let window = c.window.max(d.window).max(kc + kd + 2);
    let ideal = c.ideal.intersection(&d.ideal, window)?;
    Ok(MultiLineCurve {
        ideal,
        support: Support::TwoLines,
        window,
        filtration: None,
        qp_type: None,
        provenance: Provenance {
            recipe: format!("union({} , {})", c.provenance.recipe, d.provenance.recipe),
            seeds: c
                .provenance
                .seeds
                .iter()
                .chain(&d.provenance.seeds)
                .copied()
                .collect(),
        },
    })
}

/// Cohen–Macaulay filtration `I_{C_1} ⊇ I_{C_2} ⊇ ... ⊇ I_{C_k} = I_C`, where
/// `I_{C_j}` is the preimage of the torsion saturation of `(I_C + I_L^j) / I_L^j`.
pub fn cm_filtration(curve: &MultiLineCurve, seed: u64) -> Result<Vec<GradedIdeal>> {
    let top = curve.line_thickness()?;
    let k = curve.field();
    let mut out = Vec::with_capacity(top as usize);
    for j in 1..top {
        let m = LineModule::from_ideals(&curve.ideal, None, j, curve.window)?;
        let n = m.torsion_saturate(derive_seed(seed, j as u64))?;
        let slices = (0..=curve.window).map(|d| n.numerator(d).clone()).collect();
        out.push(GradedIdeal::from_slices(
            k,
            Frame::line_power(j),
            slices,
            Some(crate::graded::SaturationCertificate {
                window: curve.window,
            }),
        )?);
    }
    out.push(curve.ideal.clone());
    Ok(out)
}

/// Type `(a; b_2, ...)` from the Hilbert tails of the quotients `I_{C_j} / I_{C_{j+1}}`.
pub fn extract_type(filtration: &[GradedIdeal], window: u32) -> Result<QPType> {
    if filtration.len() < 2 {
        return Err(AtlasError::NotQuasiprimitive(
            "filtration has a single member".into(),
        ));
    }
    let (d2, _) = filtration[1].hilbert_polynomial(window)?;
    if d2 != 2 {
        return Err(AtlasError::NotQuasiprimitive(format!(
            "C_2 has degree {d2}"
        )));
    }
    let mut twists = Vec::new();
    for j in 0..filtration.len() - 1 {
        let h: Vec<i64> = (window - 2..=window)
            .map(|n| {
                filtration[j + 1].hilbert_function(n) as i64
                    - filtration[j].hilbert_function(n) as i64
            })
            .collect();
        if h[1] - h[0] != 1 || h[2] - h[1] != 1 {
            return Err(AtlasError::NonRankOne(j + 1));
        }
        twists.push(h[2] - window as i64 - 1);
    }
    let a = twists[0];
    let b: Vec<i64> = twists
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &t)| t - (i as i64 + 1) * a)
        .collect();
    let t = QPType::new(a, b);
    if !t.is_superadditive() {
        return Err(AtlasError::TypeInvariant(format!(
            "extracted type {t} is not superadditive"
        )));
    }
    Ok(t)
}

/// Splitting of `I_C / (I_L I_C)` modulo torsion, from fibers.
pub fn conormal_restriction(curve: &MultiLineCurve, seed: u64) -> Result<SplittingType> {
    let k = curve.line_thickness()?;
    let lic = GradedIdeal::line_power(curve.field(), 1).product(&curve.ideal)?;
    let m = LineModule::from_ideals(&curve.ideal, Some(&lic), k + 1, curve.window)?;
    m.sheaf_splitting(seed)
}

/// The 7×6 matrix of binary forms with rows `x^3, x^2y, xy^2, y^3, xF, yF, G` and
/// columns `F^2, xG, yG, x^2F, xyF, y^2F`.
#[derive(Clone, Debug)]
pub struct BetaMatrix {
    pub entries: Vec<Vec<HomogeneousPolynomial>>,
    pub row_degrees: [u32; 7],
    pub col_degrees: [u32; 6],
    pub syzygy: [HomogeneousPolynomial; 6],
    field: PrimeField,
}

impl BetaMatrix {
    pub fn new(data: &TripleData) -> Self {
        let k = data.field();
        let (a, b) = (data.a, data.b);
        let z = || HomogeneousPolynomial::zero(k, 0);
        let (f, g, p, r, s, t) = (&data.f, &data.g, &data.p, &data.r, &data.s, &data.t);
        let n = |x: &HomogeneousPolynomial| x.neg();
        let entries = vec![
            vec![z(), n(r), z(), g.clone(), z(), z()],
            vec![z(), n(s), n(r), n(f), g.clone(), z()],
            vec![z(), n(t), n(s), z(), n(f), g.clone()],
            vec![z(), z(), n(t), z(), z(), n(f)],
            vec![g.clone(), p.clone(), z(), z(), z(), z()],
            vec![n(f), z(), p.clone(), z(), z(), z()],
            vec![z(), z(), z(), z(), z(), z()],
        ];
        Self {
            entries,
            row_degrees: [3, 3, 3, 3, a + 3, a + 3, a + b + 2],
            col_degrees: [2 * a + 4, a + b + 3, a + b + 3, a + 4, a + 4, a + 4],
            syzygy: [p.clone(), n(g), f.clone(), n(r), n(s), n(t)],
            field: k,
        }
    }

    /// `β v` for a column of binary forms.
    pub fn apply(&self, v: &[HomogeneousPolynomial; 6]) -> Vec<HomogeneousPolynomial> {
        self.entries
            .iter()
            .map(|row| {
                let mut acc = HomogeneousPolynomial::zero(self.field, 0);
                for (e, x) in row.iter().zip(v) {
                    acc = acc.try_add(&e.mul(x)).expect("homogeneous row");
                }
                acc
            })
            .collect()
    }

    pub fn annihilates_syzygy(&self) -> bool {
        self.apply(&self.syzygy).iter().all(|e| e.is_zero())
    }

    /// Rank of the scalar matrix at `(z : w) = (z0 : w0)`.
    pub fn rank_at(&self, z0: u32, w0: u32) -> usize {
        let rows: Vec<Vec<u32>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval([0, 0, z0, w0])).collect())
            .collect();
        Matrix::from_rows(self.field, 6, &rows).rank()
    }

    /// Largest rank over `points` random evaluations.
    pub fn generic_rank<R: Rng + ?Sized>(&self, points: usize, rng: &mut R) -> usize {
        (0..points)
            .map(|_| self.rank_at(self.field.random(rng), self.field.random_nonzero(rng)))
            .max()
            .unwrap_or(0)
    }

    /// Degree of the syzygy as a section: `deg p + col_degrees[0]`.
    pub fn syzygy_degree(&self) -> u32 {
        self.col_degrees[0] + self.syzygy[0].degree()
    }

    /// The map `⊕_j R_{n - c_j} → ⊕_i R_{n - r_i}` in degree `n`.
    pub fn degreewise(&self, n: u32) -> Matrix {
        let block = |deg: u32| if n >= deg { (n - deg + 1) as usize } else { 0 };
        let row_off: Vec<usize> = self
            .row_degrees
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += block(d);
                Some(o)
            })
            .collect();
        let col_off: Vec<usize> = self
            .col_degrees
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += block(d);
                Some(o)
            })
            .collect();
        let nrows: usize = self.row_degrees.iter().map(|&d| block(d)).sum();
        let ncols: usize = self.col_degrees.iter().map(|&d| block(d)).sum();
        let mut m = Matrix::zeros(self.field, nrows, ncols);
        for (j, &cd) in self.col_degrees.iter().enumerate() {
            if n < cd {
                continue;
            }
            let src = Monomial::binary_of_degree(n - cd);
            for (i, &rd) in self.row_degrees.iter().enumerate() {
                let e = &self.entries[i][j];
                if e.is_zero() || n < rd {
                    continue;
                }
                let tdeg = n - rd;
                for (sc, mono) in src.iter().enumerate() {
                    for (tm, c) in e.raw_terms() {
                        let prod = mono.mul(tm);
                        debug_assert_eq!(prod.degree(), tdeg);
                        // position of z^k w^(tdeg-k) in decreasing order
                        let pos = (tdeg - prod.exponents()[2] as u32) as usize;
                        let cur = m.get(row_off[i] + pos, col_off[j] + sc);
                        m.set(row_off[i] + pos, col_off[j] + sc, self.field.add(cur, *c));
                    }
                }
            }
        }
        m
    }

    pub fn kernel_dim(&self, n: u32) -> usize {
        self.degreewise(n).rank_kernel().1.len()
    }
}

/// The polynomial `p F^2 - g H_1 + f H_2 - r x^2 F - s x y F - t y^2 F` with `H_1 = x G`, `H_2 = y G`.
pub fn syzygy_identity(data: &TripleData) -> HomogeneousPolynomial {
    let k = data.field();
    let (x, y) = (var(k, X), var(k, Y));
    let f = data.big_f();
    let g = data.big_g();
    let h1 = x.mul(&g);
    let h2 = y.mul(&g);
    let terms = [
        data.p.mul(&f).mul(&f),
        data.g.mul(&h1).neg(),
        data.f.mul(&h2),
        data.r.mul(&x).mul(&x).mul(&f).neg(),
        data.s.mul(&x).mul(&y).mul(&f).neg(),
        data.t.mul(&y).mul(&y).mul(&f).neg(),
    ];
    terms
        .iter()
        .fold(HomogeneousPolynomial::zero(k, 0), |acc, t| acc.try_add(t).expect("homogeneous"))
}
