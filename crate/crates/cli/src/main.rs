use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use atlas_cli::experiments::run_experiment;
use atlas_cli::io::{export_ideal, import_ideal, IdealFile};
use atlas_cli::recipes::Recipe;
use atlas_cli::report::{curve_text, experiment_text, scenario_text};
use atlas_cli::scenarios::{run_all, run_scenario, Context, LEVELS, SCENARIOS};
use atlas_core::invariants::{analyze, check_condition, genus_bound_check, is_cdl};
use atlas_core::PrimeField;
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "atlas", version, about = "Multiple structures on a line in P^3 and their cohomology")]
struct Cli {
    /// Characteristic of the ground field.
    #[arg(long = "char", global = true, default_value_t = PrimeField::DEFAULT_CHARACTERISTIC)]
    characteristic: u32,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Certification window: top degree of all slice computations.
    #[arg(long, global = true)]
    window: Option<u32>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Number of random members in sampled checks.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a curve from a recipe such as `triple:0,1` or `union:line+double:1`.
    Construct {
        recipe: Recipe,
        /// Write the saturated ideal to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree, genus, s(C), type and splitting of an ideal file.
    Invariants { file: PathBuf },
    /// Test the condition and the C_{d,l} criteria on an ideal file.
    Check {
        file: PathBuf,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        l: u32,
    },
    /// Run the registered scenarios; exits nonzero on any failed check.
    Verify {
        /// Run only this scenario.
        #[arg(long)]
        only: Option<String>,
        /// Print passing checks too.
        #[arg(long)]
        verbose: bool,
    },
    /// Sample a random family.
    Experiment {
        family: String,
        #[arg(long, default_value_t = 0)]
        level: u32,
    },
}

fn print_json(v: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let field = PrimeField::new(cli.characteristic)?;
    let ctx = Context {
        field,
        seed: cli.seed,
        window: cli.window,
        trials: cli.trials,
    };
    match cli.command {
        Command::Construct { recipe, out } => {
            let mut c = recipe.build(field, cli.seed)?;
            if let Some(w) = cli.window {
                c = c.with_window(w);
            }
            let rep = analyze(&c, &LEVELS, cli.seed)?;
            if let Some(path) = &out {
                export_ideal(&c, path).with_context(|| format!("writing {}", path.display()))?;
            }
            if cli.json {
                print_json(&rep)?;
            } else {
                print!("{}", curve_text(&rep));
                if let Some(path) = &out {
                    println!("ideal written to {}", path.display());
                }
            }
        }
        Command::Invariants { file } => {
            let imported = import_ideal(&IdealFile::read(&file)?, cli.window, cli.seed)?;
            let rep = analyze(&imported.curve, &LEVELS, cli.seed)?;
            if cli.json {
                print_json(&json!({ "report": rep, "warnings": imported.warnings }))?;
            } else {
                for w in &imported.warnings {
                    eprintln!("warning: {w}");
                }
                print!("{}", curve_text(&rep));
            }
        }
        Command::Check { file, d, l } => {
            let imported = import_ideal(&IdealFile::read(&file)?, cli.window, cli.seed)?;
            let c = &imported.curve;
            let condition = check_condition(c, d, l)?;
            let criteria = is_cdl(c, d, l, cli.seed)?;
            let bound = genus_bound_check(c, l).map(|o| format!("{o:?}")).unwrap_or_else(|e| e.to_string());
            if cli.json {
                print_json(&json!({
                    "condition": condition,
                    "criteria": criteria,
                    "is_cdl": criteria.holds(),
                    "genus_vs_bound": bound,
                    "warnings": imported.warnings,
                }))?;
            } else {
                println!("condition C_{{{d},{l}}}: {condition}");
                println!(
                    "C_{{{d},{l}}}: {} (h0 {}, h1 {}, splitting {})",
                    criteria.holds(),
                    criteria.h0_agreement,
                    criteria.h1_vanishing,
                    criteria.splitting
                );
                println!("genus against the C_{{{d},{l}}} genus: {bound}");
            }
        }
        Command::Verify { only, verbose } => {
            let reports = match &only {
                Some(name) => vec![run_scenario(name, &ctx)],
                None => run_all(&ctx),
            };
            let mut ok = true;
            let mut done = Vec::new();
            for (i, r) in reports.into_iter().enumerate() {
                match r {
                    Ok(r) => {
                        ok &= r.passed();
                        done.push(r);
                    }
                    Err(e) => {
                        ok = false;
                        let name = only.clone().unwrap_or_else(|| SCENARIOS[i].to_string());
                        eprintln!("[FAIL] {name}: {e:#}");
                    }
                }
            }
            if cli.json {
                print_json(&done)?;
            } else {
                for r in &done {
                    print!("{}", scenario_text(r, verbose));
                }
                println!("{}", if ok { "all scenarios passed" } else { "some scenarios failed" });
            }
            return Ok(ok);
        }
        Command::Experiment { family, level } => {
            let rep = run_experiment(&family, level, &ctx)?;
            if cli.json {
                print_json(&rep)?;
            } else {
                print!("{}", experiment_text(&rep));
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
