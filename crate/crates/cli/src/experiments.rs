//! Randomized families: how often a random member has the expected invariants.

use anyhow::bail;
use atlas_core::factory::{
    derive_seed, primitive_line, quadruple_line, triple_line, with_reseed, TripleData,
};
use atlas_core::invariants::{check_condition, is_cdl};
use atlas_core::MultiLineCurve;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::recipes::RESEED_ATTEMPTS;
use crate::scenarios::Context;

pub const FAMILIES: [&str; 4] = [
    "triple-l1",
    "quadruple-l22",
    "quadruple-over-l1",
    "primitive-quintuple-a1",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub family: String,
    pub level: u32,
    pub seed: u64,
    pub trials: usize,
    pub constructed: usize,
    /// Members with the expected property.
    pub successes: usize,
    pub property: String,
    pub failures: Vec<String>,
}

fn member(family: &str, ctx: &Context, level: u32, seed: u64) -> anyhow::Result<(MultiLineCurve, bool)> {
    let k = ctx.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (c, d, expect) = match family {
        "triple-l1" => (triple_line(&TripleData::random(k, level, 1, &mut rng))?, 3, true),
        "quadruple-l22" => {
            let data = TripleData::random(k, level, 2, &mut rng);
            (with_reseed(seed, RESEED_ATTEMPTS, |s| quadruple_line(&data, s))?.0, 4, true)
        }
        "quadruple-over-l1" => {
            let data = TripleData::random(k, level, 1, &mut rng);
            let c = with_reseed(seed, RESEED_ATTEMPTS, |s| quadruple_line(&data, s))?.0;
            let holds = check_condition(&c, 4, level)?;
            return Ok((c, !holds));
        }
        "primitive-quintuple-a1" => (primitive_line(k, 5, 1, seed, RESEED_ATTEMPTS)?, 5, true),
        _ => bail!("unknown family {family:?}; known: {}", FAMILIES.join(", ")),
    };
    let c = match ctx.window {
        Some(w) => c.with_window(w),
        None => c,
    };
    let l = if family == "primitive-quintuple-a1" { 0 } else { level };
    let holds = is_cdl(&c, d, l, seed)?.holds();
    Ok((c, holds == expect))
}

pub fn property(family: &str, level: u32) -> String {
    match family {
        "triple-l1" => format!("is a C_{{3,{level}}}"),
        "quadruple-l22" => format!("is a C_{{4,{level}}}"),
        "quadruple-over-l1" => format!("fails the condition C_{{4,{level}}}"),
        _ => "is a C_{5,0}".to_string(),
    }
}

pub fn run_experiment(family: &str, level: u32, ctx: &Context) -> anyhow::Result<ExperimentReport> {
    if !FAMILIES.contains(&family) {
        bail!("unknown family {family:?}; known: {}", FAMILIES.join(", "));
    }
    let mut rep = ExperimentReport {
        family: family.to_string(),
        level,
        seed: ctx.seed,
        trials: ctx.trials,
        constructed: 0,
        successes: 0,
        property: property(family, level),
        failures: Vec::new(),
    };
    for trial in 0..ctx.trials {
        let seed = derive_seed(ctx.seed, trial as u64);
        match member(family, ctx, level, seed) {
            Ok((_, ok)) => {
                rep.constructed += 1;
                rep.successes += ok as usize;
            }
            Err(e) => rep.failures.push(format!("trial {trial} (seed {seed}): {e:#}")),
        }
    }
    Ok(rep)
}
