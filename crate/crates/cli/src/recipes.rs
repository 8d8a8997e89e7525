//! Named constructions, e.g. `triple:0,1` or `union:line+double:2`.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail};
use atlas_core::factory::{
    disjoint_union, line, neighborhood, primitive_line, quadruple_line, standard_double_line,
    triple_line, with_reseed, MultiLineCurve, TripleData,
};
use atlas_core::PrimeField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const RESEED_ATTEMPTS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Line,
    Neighborhood(u32),
    Double(u32),
    /// Standard triple of type `(a; b)`.
    Triple(u32, u32),
    /// Seeded random triple of type `(a; b)`.
    RandomTriple(u32, u32),
    /// Quadruple over the standard triple of type `(a; b)`.
    Quadruple(u32, u32),
    /// Quadruple over a seeded random triple of type `(a; b)`.
    RandomQuadruple(u32, u32),
    Primitive(u32, u32),
    Union(Box<Recipe>, Box<Recipe>),
}

fn numbers(s: &str, n: usize) -> anyhow::Result<Vec<u32>> {
    let v: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| anyhow!("bad parameters {s:?}: {e}"))?;
    if v.len() != n {
        bail!("expected {n} parameters, got {s:?}");
    }
    Ok(v)
}

impl FromStr for Recipe {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let s = s.trim();
        if s == "line" {
            return Ok(Recipe::Line);
        }
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| anyhow!("unknown recipe {s:?}"))?;
        Ok(match head {
            "neighborhood" => Recipe::Neighborhood(numbers(rest, 1)?[0]),
            "double" => Recipe::Double(numbers(rest, 1)?[0]),
            "triple" => {
                let v = numbers(rest, 2)?;
                Recipe::Triple(v[0], v[1])
            }
            "random-triple" => {
                let v = numbers(rest, 2)?;
                Recipe::RandomTriple(v[0], v[1])
            }
            "quadruple" => {
                let v = numbers(rest, 2)?;
                Recipe::Quadruple(v[0], v[1])
            }
            "random-quadruple" => {
                let v = numbers(rest, 2)?;
                Recipe::RandomQuadruple(v[0], v[1])
            }
            "primitive" => {
                let v = numbers(rest, 2)?;
                Recipe::Primitive(v[0], v[1])
            }
            "union" => {
                let (l, r) = split_union(rest)?;
                Recipe::Union(Box::new(l.parse()?), Box::new(r.parse()?))
            }
            _ => bail!("unknown recipe {s:?}"),
        })
    }
}

/// Splits at the first `+` outside parentheses; nested unions are written `(union:..+..)`.
fn split_union(s: &str) -> anyhow::Result<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => return Ok((unwrap_parens(&s[..i]), unwrap_parens(&s[i + 1..]))),
            _ => {}
        }
    }
    bail!("union needs two recipes joined by '+', got {s:?}")
}

fn unwrap_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s)
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Line => write!(f, "line"),
            Recipe::Neighborhood(d) => write!(f, "neighborhood:{d}"),
            Recipe::Double(a) => write!(f, "double:{a}"),
            Recipe::Triple(a, b) => write!(f, "triple:{a},{b}"),
            Recipe::RandomTriple(a, b) => write!(f, "random-triple:{a},{b}"),
            Recipe::Quadruple(a, b) => write!(f, "quadruple:{a},{b}"),
            Recipe::RandomQuadruple(a, b) => write!(f, "random-quadruple:{a},{b}"),
            Recipe::Primitive(d, a) => write!(f, "primitive:{d},{a}"),
            Recipe::Union(l, r) => {
                let wrap = |r: &Recipe| match r {
                    Recipe::Union(..) => format!("({r})"),
                    _ => r.to_string(),
                };
                write!(f, "union:{}+{}", wrap(l), wrap(r))
            }
        }
    }
}

impl Recipe {
    pub fn build(&self, field: PrimeField, seed: u64) -> anyhow::Result<MultiLineCurve> {
        let mut curve = match self {
            Recipe::Line => line(field),
            Recipe::Neighborhood(d) => neighborhood(field, *d)?,
            Recipe::Double(a) => standard_double_line(field, *a)?,
            Recipe::Triple(a, b) => triple_line(&TripleData::good(field, *a, *b))?,
            Recipe::RandomTriple(a, b) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                triple_line(&TripleData::random(field, *a, *b, &mut rng))?
            }
            Recipe::Quadruple(a, b) => {
                let data = TripleData::good(field, *a, *b);
                with_quadruple(&data, seed)?
            }
            Recipe::RandomQuadruple(a, b) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let data = TripleData::random(field, *a, *b, &mut rng);
                with_quadruple(&data, seed)?
            }
            Recipe::Primitive(d, a) => primitive_line(field, *d, *a, seed, RESEED_ATTEMPTS)?,
            Recipe::Union(l, r) => {
                let c = l.build(field, seed)?;
                let d = r.build(field, seed.wrapping_add(1))?;
                disjoint_union(&c, &d)?
            }
        };
        curve.provenance.recipe = self.to_string();
        Ok(curve)
    }
}

fn with_quadruple(data: &TripleData, seed: u64) -> anyhow::Result<MultiLineCurve> {
    let (mut c, seeds) = with_reseed(seed, RESEED_ATTEMPTS, |s| quadruple_line(data, s))?;
    c.provenance.seeds = seeds;
    Ok(c)
}
