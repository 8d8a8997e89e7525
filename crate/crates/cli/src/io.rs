//! `IdealFile` import and export.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context as _};
use atlas_core::factory::{cm_filtration, extract_type, MultiLineCurve, Provenance, Support};
use atlas_core::graded::Frame;
use atlas_core::{GradedIdeal, HomogeneousPolynomial, Monomial, PrimeField};
use serde::{Deserialize, Serialize};

/// Generators as `(exponents (x, y, z, w), coefficient)` lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub field_char: u32,
    pub variables: Vec<String>,
    pub generators: Vec<Vec<([u16; 4], i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
}

impl IdealFile {
    pub fn from_curve(curve: &MultiLineCurve) -> Self {
        let field = curve.field();
        let generators = curve
            .ideal
            .all_generators()
            .iter()
            .map(|g| {
                g.terms()
                    .map(|(m, c)| (m.exponents(), c.value() as i64))
                    .collect()
            })
            .collect();
        Self {
            field_char: field.characteristic(),
            variables: ["x", "y", "z", "w"].map(String::from).to_vec(),
            generators,
            window: Some(curve.window),
        }
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        fs::write(path, self.to_json()).with_context(|| format!("writing {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn polynomials(&self) -> anyhow::Result<(PrimeField, Vec<HomogeneousPolynomial>)> {
        let field = PrimeField::new(self.field_char)?;
        if self.variables.len() != 4 {
            bail!("expected four variables, found {}", self.variables.len());
        }
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let terms = g
                .iter()
                .map(|&(e, c)| (Monomial::new(e[0], e[1], e[2], e[3]), c));
            let p = HomogeneousPolynomial::from_terms(field, terms)
                .with_context(|| format!("generator {i}"))?;
            out.push(p);
        }
        Ok((field, out))
    }
}

/// Result of importing a file.
pub struct Imported {
    pub curve: MultiLineCurve,
    pub warnings: Vec<String>,
}

fn default_import_window(ideal: &GradedIdeal) -> u32 {
    (2 * ideal.max_generator_degree() + 6).max(12)
}

fn support_of(ideal: &GradedIdeal, window: u32) -> Option<Support> {
    let contains = |f: &Frame| ideal.contains_floor(f);
    for k in 1..=window {
        let l = Frame::line_power(k);
        let m = l.swap_lines();
        if contains(&l) {
            return Some(Support::Line);
        }
        if contains(&m) {
            return Some(Support::SkewLine);
        }
        if contains(&Frame::meet(&l, &m)) {
            return Some(Support::TwoLines);
        }
    }
    None
}

/// Saturates the ideal of the file; on one line also runs the filtration and type extraction.
pub fn import_ideal(file: &IdealFile, window: Option<u32>, seed: u64) -> anyhow::Result<Imported> {
    let (field, gens) = file.polynomials()?;
    let raw = GradedIdeal::new(field, gens)?;
    let window = window
        .or(file.window)
        .unwrap_or_else(|| default_import_window(&raw));
    let ideal = raw.saturate(window)?;
    let mut warnings = Vec::new();
    let support = match support_of(&ideal, window) {
        Some(s) => s,
        None => {
            warnings.push("ideal is not supported on the coordinate lines; analysis skipped".into());
            Support::TwoLines
        }
    };
    let mut curve = MultiLineCurve {
        ideal,
        support,
        window,
        filtration: None,
        qp_type: None,
        provenance: Provenance::fixed("import"),
    };
    if support == Support::SkewLine {
        curve = curve.swap_lines();
        warnings.push("curve lies on z = w = 0; swapped onto x = y = 0".into());
    }
    if curve.support == Support::Line {
        match cm_filtration(&curve, seed).and_then(|f| extract_type(&f, window).map(|t| (f, t))) {
            Ok((f, t)) => {
                curve.filtration = Some(f);
                curve.qp_type = Some(t);
            }
            Err(e) => warnings.push(format!("no quasiprimitive type: {e}")),
        }
    }
    Ok(Imported { curve, warnings })
}

pub fn export_ideal(curve: &MultiLineCurve, path: &Path) -> anyhow::Result<()> {
    IdealFile::from_curve(curve).write(path)
}
