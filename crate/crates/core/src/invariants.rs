//! Numerical invariants and the `C_{d,l}` decision procedures.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{AtlasError, Result};
use crate::factory::{MultiLineCurve, QPType, Support};
use crate::graded::frame::Frame;
use crate::graded::module::{LineModule, SplittingType};
use crate::monomial::{binomial, binomial_i};

/// Maximum genus of a degree `d` curve not on a surface of degree `< s`.
pub fn beorchia_bound(d: i64, s: i64) -> Result<i64> {
    if s < 1 || s > d {
        return Err(AtlasError::InvalidData(format!(
            "bound needs 1 <= s <= d, got d = {d}, s = {s}"
        )));
    }
    Ok(if d <= 2 * s {
        (s - 1) * d + 1 - binomial_i(s + 2, 3)
    } else {
        binomial_i(d - s, 2) - binomial_i(s - 1, 3)
    })
}

/// Genus of a `C_{d,l}`: `-(d-1) - C(d,3) - l C(d,2)`.
pub fn cdl_genus(d: i64, l: i64) -> i64 {
    -(d - 1) - binomial_i(d, 3) - l * binomial_i(d, 2)
}

/// Genus of a quasiprimitive multiple line of the given type.
pub fn qp_genus(t: &QPType) -> i64 {
    let d = t.degree() as i64;
    -(d - 1) - t.a * d * (d - 1) / 2 - t.b.iter().sum::<i64>()
}

/// Families with a closed-form dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FamilySpec {
    /// Primitive `d`-uple lines of type `a` (`d = 1` is the family of lines).
    Primitive { d: i64, a: i64 },
    Triple { a: i64, b: i64 },
    Quadruple { a: i64, b: i64, c: i64 },
    /// Type `(a; 0, ..., 0, b)` in degree `d`.
    LastJump { d: i64, a: i64, b: i64 },
    /// Type `(a; 0, ..., 0, b, c)` in degree `d`.
    LastTwoJumps { d: i64, a: i64, b: i64, c: i64 },
    /// Disjoint unions of general members.
    Union(Vec<FamilySpec>),
}

pub fn family_dimension(spec: &FamilySpec) -> Result<i64> {
    let bad = |msg: &str| Err(AtlasError::Unsupported(msg.to_string()));
    match *spec {
        FamilySpec::Primitive { d, a } => {
            if d < 1 || a < 0 {
                return bad("primitive family needs d >= 1, a >= 0");
            }
            Ok(a * (d - 1) * (d + 2) / 2 + 3 * d + 1)
        }
        FamilySpec::Triple { a, b } => {
            if a < 0 || b < 0 {
                return bad("triple family needs a, b >= 0");
            }
            Ok(5 * a + 2 * b + 10)
        }
        FamilySpec::Quadruple { a, b, c } => {
            if a < 0 || b < 0 || c < 0 {
                return bad("quadruple family needs a, b, c >= 0");
            }
            Ok(9 * a + 2 * b + 2 * c + 13)
        }
        FamilySpec::LastJump { d, a, b } => {
            if d < 3 || a < 0 || b < 0 {
                return bad("family (a;0..0,b) needs d >= 3");
            }
            Ok(a * (d - 1) * (d + 2) / 2 + 3 * d + 2 * b + 1)
        }
        FamilySpec::LastTwoJumps { d, a, b, c } => {
            if d < 4 || a < 0 || b < 0 || c < 0 {
                return bad("family (a;0..0,b,c) needs d >= 4");
            }
            Ok(family_dimension(&FamilySpec::LastJump { d: d - 1, a, b })? + d * a + 2 * c + 3)
        }
        FamilySpec::Union(ref parts) => {
            if parts.len() < 2 {
                return bad("a union needs at least two members");
            }
            parts.iter().map(family_dimension).sum()
        }
    }
}

/// `s(C)`: least degree of a surface containing `C`.
pub fn min_surface_degree(curve: &MultiLineCurve) -> Result<u32> {
    curve
        .ideal
        .initial_degree(curve.window)
        .ok_or_else(|| AtlasError::WindowExhausted("no surface found below the window".into()))
}

fn line_only(curve: &MultiLineCurve) -> Result<()> {
    if curve.support != Support::Line {
        return Err(AtlasError::Unsupported(
            "criterion defined for curves on x = y = 0".into(),
        ));
    }
    Ok(())
}

fn expect_degree(curve: &MultiLineCurve, d: u32) -> Result<()> {
    let deg = curve.degree()?;
    if deg != d as i64 {
        return Err(AtlasError::DegreeMismatch {
            left: deg as u32,
            right: d,
        });
    }
    Ok(())
}

/// `dim (I_L^d)_n`.
fn line_power_dim(d: u32, n: u32) -> usize {
    Frame::line_power(d).floor_dim(n)
}

/// Condition `𝒞_{d,l}`: `I_C` and `I_L^d` agree in every degree `n <= l + d - 1`.
pub fn check_condition(curve: &MultiLineCurve, d: u32, l: u32) -> Result<bool> {
    line_only(curve)?;
    expect_degree(curve, d)?;
    Ok((0..l + d).all(|n| curve.ideal.dim(n) == line_power_dim(d, n)))
}

/// Splitting of `I_C / I_L^d` on `L`, from fibers.
pub fn ideal_splitting(curve: &MultiLineCurve, d: u32, seed: u64) -> Result<SplittingType> {
    line_only(curve)?;
    LineModule::module_of(&curve.ideal, d, curve.window)?.sheaf_splitting(seed)
}

/// `(degree, genus)` of the curve whose ideal modulo `I_L^d` splits as given.
pub fn genus_from_splitting(d: u32, splitting: &SplittingType) -> (i64, i64) {
    let d = d as i64;
    let chi_ld: i64 = (0..d).map(|i| (i + 1) * (1 - i)).sum();
    let chi: i64 = splitting.twists.iter().map(|c| c + 1).sum();
    let degree = d * (d + 1) / 2 - splitting.rank() as i64;
    (degree, 1 - (chi_ld - chi))
}

/// The three equivalent `C_{d,l}` criteria.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdlCriteria {
    pub d: u32,
    pub l: u32,
    /// Genus and `h^0(I_C(l+d-1)) = h^0(I_{L_d}(l+d-1))`.
    pub h0_agreement: bool,
    /// Genus and `h^1(I_C(l+d-1)) = 0`.
    pub h1_vanishing: bool,
    /// `I_C / I_L^d ≅ O_L(-(d+l))^{d(d-1)/2}`.
    pub splitting: bool,
}

impl CdlCriteria {
    pub fn holds(&self) -> bool {
        self.h0_agreement
    }

    pub fn agree(&self) -> bool {
        self.h0_agreement == self.h1_vanishing && self.h1_vanishing == self.splitting
    }
}

/// Evaluates the three criteria; errors if they disagree.
pub fn is_cdl(curve: &MultiLineCurve, d: u32, l: u32, seed: u64) -> Result<CdlCriteria> {
    line_only(curve)?;
    let (deg, genus) = curve.degree_genus()?;
    if deg != d as i64 {
        return Err(AtlasError::DegreeMismatch {
            left: deg as u32,
            right: d,
        });
    }
    let splitting = ideal_splitting(curve, d, seed)?;
    cdl_from_parts(curve, d, l, genus, &splitting)
}

fn cdl_from_parts(
    curve: &MultiLineCurve,
    d: u32,
    l: u32,
    genus: i64,
    splitting: &SplittingType,
) -> Result<CdlCriteria> {
    let n = l + d - 1;
    let genus_ok = genus == cdl_genus(d as i64, l as i64);
    let h0 = curve.ideal.dim(n) as i64;
    let h0_agreement = genus_ok && h0 == line_power_dim(d, n) as i64;

    // h^2(I_{L_d}(n)) = h^1(O_{L_d}(n)) from O_{L_d} = ⊕ O_L(-i)^{i+1}
    let h2_ld: i64 = (0..d as i64)
        .map(|i| (i + 1) * (i - n as i64 - 1).max(0))
        .sum();
    if h2_ld != 0 {
        return Err(AtlasError::Unsupported(format!(
            "h^2 of I_L^{d} does not vanish in degree {n}"
        )));
    }
    let nn = n as i64;
    let chi = binomial_i(nn + 3, 3) - (d as i64 * nn + 1 - genus);
    let h1_vanishing = genus_ok && h0 - chi == 0;

    let rank = binomial(d as u64, 2) as usize;
    let splitting = splitting.is_uniform(-((d + l) as i64), rank);

    let c = CdlCriteria {
        d,
        l,
        h0_agreement,
        h1_vanishing,
        splitting,
    };
    if !c.agree() {
        return Err(AtlasError::CriteriaDisagree(format!(
            "equivalent C_{{{d},{l}}} criteria disagree: h0 {}, h1 {}, splitting {}",
            c.h0_agreement, c.h1_vanishing, c.splitting
        )));
    }
    Ok(c)
}

/// Compares `g(C)` with `cdl_genus(d, l)` under `𝒞_{d,l}`.
pub fn genus_bound_check(curve: &MultiLineCurve, l: u32) -> Result<Ordering> {
    let (d, g) = curve.degree_genus()?;
    if !check_condition(curve, d as u32, l)? {
        return Err(AtlasError::InvalidData(format!(
            "curve does not satisfy condition C_{{{d},{l}}}"
        )));
    }
    let bound = cdl_genus(d, l as i64);
    match g.cmp(&bound) {
        Ordering::Greater => Err(AtlasError::Verification(format!(
            "genus {g} exceeds the bound {bound}"
        ))),
        o => Ok(o),
    }
}

fn compositions(len: usize, total: i64, min: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if len == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    // nondecreasing, as superadditivity with b_1 = 0 forces
    for v in min..=total {
        if v * len as i64 > total {
            break;
        }
        prefix.push(v);
        compositions(len - 1, total - v, v, prefix, out);
        prefix.pop();
    }
}

/// Types allowed in degree `d` for a `C_{d,l}` by the numerical constraints, optionally
/// filtered by the triple and quadruple conditions on `C_3` and `C_4`.
pub fn admissible_types(d: u32, l: u32, apply_subcurve_filters: bool) -> Vec<QPType> {
    assert!(d >= 2, "admissible types start in degree 2");
    let (di, li) = (d as i64, l as i64);
    let mut out = Vec::new();
    for a in li..=li + (di - 2) / 3 {
        let total = binomial_i(di, 3) - (a - li) * binomial_i(di, 2);
        if total < 0 {
            continue;
        }
        let mut bs = Vec::new();
        compositions(d as usize - 2, total, 0, &mut Vec::new(), &mut bs);
        for b in bs {
            let t = QPType::new(a, b);
            if !t.is_superadditive() {
                continue;
            }
            if apply_subcurve_filters {
                let above = a > li;
                if d >= 3 && !(above || t.b_at(2) >= 1) {
                    continue;
                }
                if d >= 4 && !(above || t.b_at(2) >= 2) {
                    continue;
                }
            }
            out.push(t);
        }
    }
    out.sort();
    out
}

/// Certification data attached to a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub field_char: u32,
    pub window: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFlag {
    pub d: u32,
    pub l: u32,
    pub holds: bool,
}

/// Invariants of one curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub recipe: String,
    pub degree: i64,
    pub genus: i64,
    pub s_value: u32,
    pub support: Support,
    pub qp_type: Option<QPType>,
    /// Sheaf splitting of `I_C / I_L^d` for curves on one line.
    pub splitting: Option<SplittingType>,
    pub genus_from_splitting: Option<i64>,
    pub condition_flags: Vec<ConditionFlag>,
    pub cdl_flags: Vec<CdlCriteria>,
    pub certification: Certification,
}

impl CurveReport {
    /// `Some(l)` for the least `l` among those checked with `C` a `C_{d,l}`.
    pub fn cdl_level(&self) -> Option<u32> {
        self.cdl_flags.iter().find(|c| c.holds()).map(|c| c.l)
    }
}

/// Degree, genus, `s(C)`, and for curves on one line the splitting, conditions and
/// `C_{d,l}` criteria for `l` in `levels`.
pub fn analyze(curve: &MultiLineCurve, levels: &[u32], seed: u64) -> Result<CurveReport> {
    let (degree, genus) = curve.degree_genus()?;
    let s_value = min_surface_degree(curve)?;
    let mut report = CurveReport {
        recipe: curve.provenance.recipe.clone(),
        degree,
        genus,
        s_value,
        support: curve.support,
        qp_type: curve.qp_type.clone(),
        splitting: None,
        genus_from_splitting: None,
        condition_flags: Vec::new(),
        cdl_flags: Vec::new(),
        certification: Certification {
            field_char: curve.field().characteristic(),
            window: curve.window,
            seed,
        },
    };
    if curve.support != Support::Line || degree < 1 {
        return Ok(report);
    }
    let d = degree as u32;
    let splitting = ideal_splitting(curve, d, seed)?;
    let (sd, sg) = genus_from_splitting(d, &splitting);
    if sd != degree {
        return Err(AtlasError::Verification(format!(
            "splitting gives degree {sd}, Hilbert polynomial {degree}"
        )));
    }
    report.genus_from_splitting = Some(sg);
    for &l in levels {
        report.condition_flags.push(ConditionFlag {
            d,
            l,
            holds: check_condition(curve, d, l)?,
        });
        report.cdl_flags.push(cdl_from_parts(curve, d, l, genus, &splitting)?);
    }
    report.splitting = Some(splitting);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_anchor_values() {
        assert_eq!(beorchia_bound(2, 2).unwrap(), -1);
        assert_eq!(beorchia_bound(3, 3).unwrap(), -3);
        assert_eq!(beorchia_bound(4, 4).unwrap(), -7);
        assert_eq!(beorchia_bound(5, 5).unwrap(), -14);
        assert_eq!(beorchia_bound(7, 3).unwrap(), 6);
        assert!(beorchia_bound(3, 4).is_err());
    }

    #[test]
    fn cdl_genus_values() {
        for l in 0..5 {
            assert_eq!(cdl_genus(1, l), 0);
        }
        assert_eq!(cdl_genus(4, 0), -7);
        assert_eq!(cdl_genus(3, 1), -6);
        assert_eq!(cdl_genus(4, 1), -13);
        for d in 1..8 {
            assert_eq!(cdl_genus(d, 0), beorchia_bound(d, d).unwrap());
        }
    }

    #[test]
    fn qp_genus_values() {
        for a in 0..5 {
            assert_eq!(qp_genus(&QPType::new(a, vec![])), -a - 1);
        }
        assert_eq!(qp_genus(&QPType::new(0, vec![1])), -3);
        assert_eq!(qp_genus(&QPType::primitive(5, 1)), -14);
        assert_eq!(qp_genus(&QPType::new(1, vec![2, 2])), -13);
    }

    #[test]
    fn family_dimensions() {
        for a in 0..4 {
            assert_eq!(family_dimension(&FamilySpec::Primitive { d: 2, a }).unwrap(), 2 * a + 7);
            assert_eq!(family_dimension(&FamilySpec::Triple { a, b: 1 }).unwrap(), 5 * a + 12);
            assert_eq!(
                family_dimension(&FamilySpec::Quadruple { a, b: 2, c: 2 }).unwrap(),
                9 * a + 21
            );
            for b in 0..4 {
                assert_eq!(
                    family_dimension(&FamilySpec::LastJump { d: 3, a, b }).unwrap(),
                    family_dimension(&FamilySpec::Triple { a, b }).unwrap()
                );
                assert_eq!(
                    family_dimension(&FamilySpec::LastTwoJumps { d: 4, a, b, c: b + 1 }).unwrap(),
                    family_dimension(&FamilySpec::Quadruple { a, b, c: b + 1 }).unwrap()
                );
            }
        }
        let line = FamilySpec::Primitive { d: 1, a: 0 };
        let g3 = FamilySpec::Primitive { d: 5, a: 1 };
        assert_eq!(family_dimension(&g3).unwrap(), 30);
        let g2 = FamilySpec::Union(vec![line.clone(), FamilySpec::Quadruple { a: 1, b: 2, c: 2 }]);
        assert_eq!(family_dimension(&g2).unwrap(), 34);
        let g1 = FamilySpec::Union(vec![
            FamilySpec::Triple { a: 2, b: 1 },
            FamilySpec::Primitive { d: 2, a: 3 },
        ]);
        assert_eq!(family_dimension(&g1).unwrap(), 35);
        assert!(family_dimension(&FamilySpec::Union(vec![line])).is_err());
    }

    #[test]
    fn admissible_type_lists() {
        for l in 0..4 {
            assert_eq!(admissible_types(3, l, false), vec![QPType::new(l as i64, vec![1])]);
            let all: Vec<String> = admissible_types(4, l, false).iter().map(|t| t.to_string()).collect();
            assert_eq!(
                all,
                vec![format!("({l};0,4)"), format!("({l};1,3)"), format!("({l};2,2)")]
            );
            assert_eq!(admissible_types(4, l, true), vec![QPType::new(l as i64, vec![2, 2])]);
        }
        let five: Vec<String> = admissible_types(5, 0, true).iter().map(|t| t.to_string()).collect();
        assert_eq!(five, vec!["(0;2,2,6)", "(0;2,3,5)", "(0;2,4,4)", "(1;0,0,0)"]);
    }

    #[test]
    fn splitting_genus_of_neighbourhoods() {
        use crate::graded::module::{SplittingCertificate, SplittingMethod};
        let cert = SplittingCertificate {
            method: SplittingMethod::Fibers,
            window: 0,
        };
        // a C_{d,l} has I_C / I_L^d = O(-(d+l))^{C(d,2)}
        for d in 1..6u32 {
            for l in 0..4i64 {
                let r = binomial(d as u64, 2) as usize;
                let s = SplittingType::new(vec![-(d as i64 + l); r], cert);
                assert_eq!(genus_from_splitting(d, &s), (d as i64, cdl_genus(d as i64, l)));
            }
        }
    }
}
