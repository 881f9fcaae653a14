use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use convertor_harness::checks::{CheckConfig, Property};
use convertor_harness::commands::{self, OrderKind, RenderSource};
use convertor_harness::fuzz::{FuzzConfig, OperatorKind};
use convertor_harness::instance::Position;
use convertor_harness::json::{read_json, to_json};
use convertor_harness::{HarnessError, Result};
use serde::Serialize;

const DEFAULT_MAX_ITER: usize = convertor_core::DEFAULT_MAX_ITER;

/// Exact convertor dynamics on families of polytopes.
#[derive(Parser)]
#[command(name = "convertor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate F, F' or the scene's G_tau until a state repeats.
    Run {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value = "f")]
        mode: OperatorKind,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the realizable direction classes of a scene.
    Directions {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "total")]
        kind: OrderKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random trials with a period histogram and replayable findings.
    Fuzz(FuzzArgs),
    /// Run a property suite over seeded instances or one given instance.
    Check(CheckArgs),
    /// Draw a planar family or trace as SVG.
    Render {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, conflicts_with = "trace", required_unless_present = "trace")]
        family: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Iterate the abstract map of an order family on a set family.
    Gtau {
        #[arg(long)]
        tau: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether every orbit of an order family has period at most 2.
    Oscillator {
        #[arg(long)]
        tau: PathBuf,
        /// Sample this many random start families instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, env = "CONVERTOR_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare G_tau on the scene's orders against F' step by step.
    Bridge {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a finding bundle and compare with its recorded trace.
    Replay {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FuzzArgs {
    /// JSON config; other flags are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 5)]
    num_vertices: usize,
    #[arg(long, default_value_t = 3)]
    num_polytopes: usize,
    #[arg(long, default_value_t = 6)]
    coordinate_bound: i64,
    #[arg(long, env = "CONVERTOR_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, value_enum, default_value = "f")]
    operator: OperatorKind,
    #[arg(long)]
    simplex_mode: bool,
    #[arg(long, value_enum, default_value = "any")]
    position: Position,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FuzzArgs {
    fn config(&self) -> Result<FuzzConfig> {
        if let Some(path) = &self.config {
            return read_json(path);
        }
        Ok(FuzzConfig {
            dim: self.dim,
            num_vertices: self.num_vertices,
            num_polytopes: self.num_polytopes,
            coordinate_bound: self.coordinate_bound,
            seed: self.seed,
            trials: self.trials,
            operator: self.operator,
            simplex_mode: self.simplex_mode,
            position: self.position,
            max_iter: self.max_iter,
        })
    }
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    property: Property,
    /// Check this scene and family only.
    #[arg(long, requires = "family")]
    scene: Option<PathBuf>,
    #[arg(long, requires = "scene")]
    family: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 5)]
    max_vertices: usize,
    #[arg(long, default_value_t = 3)]
    num_polytopes: usize,
    #[arg(long, default_value_t = 6)]
    coordinate_bound: i64,
    #[arg(long, env = "CONVERTOR_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 6)]
    steps: usize,
    #[arg(long, value_enum, default_value = "any")]
    position: Position,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = to_json(value);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| HarnessError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Run {
            scene,
            family,
            mode,
            max_iter,
            out,
        } => emit(
            &commands::run(&scene, &family, mode, max_iter)?,
            out.as_deref(),
        ),
        Command::Directions { scene, kind, out } => {
            emit(&commands::directions(&scene, kind)?, out.as_deref())
        }
        Command::Fuzz(args) => {
            let (report, failure) = commands::fuzz(&args.config()?)?;
            emit(&report, args.out.as_deref())?;
            failure.map_or(Ok(()), Err)
        }
        Command::Check(args) => {
            let config = CheckConfig {
                dim: args.dim,
                max_vertices: args.max_vertices,
                num_polytopes: args.num_polytopes,
                coordinate_bound: args.coordinate_bound,
                seed: args.seed,
                trials: args.trials,
                steps: args.steps,
                position: args.position,
            };
            let instance = args.scene.as_deref().zip(args.family.as_deref());
            let report = commands::check(args.property, &config, instance)?;
            emit(&report, args.out.as_deref())?;
            commands::check_failure(&report).map_or(Ok(()), Err)
        }
        Command::Render {
            scene,
            family,
            trace,
            out,
        } => {
            let source = match (&family, &trace) {
                (Some(f), _) => RenderSource::Family(f),
                (None, Some(t)) => RenderSource::Trace(t),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let svg = commands::render(&scene, source)?;
            std::fs::write(&out, svg).map_err(|e| HarnessError::io(&out, e))
        }
        Command::Gtau {
            tau,
            family,
            max_iter,
            out,
        } => emit(&commands::gtau(&tau, &family, max_iter)?, out.as_deref()),
        Command::Oscillator {
            tau,
            samples,
            seed,
            max_iter,
            out,
        } => emit(
            &commands::oscillator(&tau, samples, seed, max_iter)?,
            out.as_deref(),
        ),
        Command::Bridge {
            scene,
            family,
            steps,
            out,
        } => emit(&commands::bridge(&scene, &family, steps)?, out.as_deref()),
        Command::Replay {
            bundle,
            max_iter,
            out,
        } => {
            let doc = commands::replay_bundle(&bundle, max_iter)?;
            emit(&doc, out.as_deref())?;
            if doc.identical {
                Ok(())
            } else {
                Err(HarnessError::PropertyFailure(
                    "replayed trace differs from the bundle".into(),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let reason = serde_json::json!({ "error": e.kind(), "reason": e.to_string() });
            eprintln!("{reason}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
