//! Command-line front end. Reads JSON payloads, writes JSON to stdout.
//!
//! Exit codes: 0 ok, 2 a curvature identity or hypothesis failed, 3 bad
//! input, 4 no admissible sample or line could be found.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use curvrank::Error;

#[derive(Parser, Debug)]
#[command(name = "curvrank", version, about = "Exact tools for rank-2 curvature tensors")]
struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = curvrank::reconstruct::DEFAULT_SEED)]
    seed: u64,
    /// Number of sampled planes.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Entry bound for sampled integer vectors.
    #[arg(long, global = true, default_value_t = 3)]
    bound: i64,
    /// Input payload; `-` reads stdin.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the curvature identities of a tensor (a map is turned into its tensor first).
    Validate,
    /// Operator of the plane spanned by two vectors.
    PlaneOp {
        #[arg(long, allow_hyphen_values = true)]
        v1: String,
        #[arg(long, allow_hyphen_values = true)]
        v2: String,
        /// Accept any nondegenerate plane and report only the rank.
        #[arg(long)]
        timelike: bool,
    },
    /// Jordan type of the operator of a spacelike plane.
    Jordan {
        #[arg(long, allow_hyphen_values = true)]
        v1: String,
        #[arg(long, allow_hyphen_values = true)]
        v2: String,
    },
    /// Self-adjointness, admissibility and the exact IP class of a map.
    Classify,
    /// Jordan types over sampled spacelike planes.
    IpCheck {
        /// Extra plane `v1;v2` sampled before the random ones; repeatable.
        #[arg(long = "plane", allow_hyphen_values = true)]
        planes: Vec<String>,
    },
    /// Canonical form of a rank-2 skew map.
    Decompose,
    /// Realize a rank-2 tensor by a graph hypersurface and check it.
    Realize {
        /// Near-origin points to sample.
        #[arg(long, default_value_t = 10)]
        points: usize,
        /// Planes sampled at each point.
        #[arg(long, default_value_t = 20)]
        planes: usize,
    },
    /// Emit one of the fixed constructions.
    Fixture {
        /// `8.1`, `8.2` or `8.3`.
        name: String,
        /// Timelike dimension.
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Emit::Native)]
        emit: Emit,
    },
    /// Emit a seeded random map.
    GenPhi {
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 5)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        kernel: usize,
        #[arg(long, value_enum, default_value_t = Kind::Admissible)]
        kind: Kind,
        /// Conformal factor for `--kind conformal`.
        #[arg(long, default_value = "1")]
        factor: String,
        #[arg(long, value_enum, default_value_t = Emit::Native)]
        emit: Emit,
    },
    /// Emit a seeded random spacelike plane.
    GenPlane {
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 5)]
        q: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Emit {
    /// The construction itself.
    Native,
    /// The skew map of a linear map.
    Skew,
    /// The curvature tensor of a self-map.
    Tensor,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Admissible,
    NonAdmissible,
    NonSelfAdjoint,
    Conformal,
    Isotropic,
}

/// Command result: the payload plus the exit status it carries.
struct Outcome {
    value: serde_json::Value,
    code: u8,
}

impl Outcome {
    fn ok(value: serde_json::Value) -> Self {
        Outcome { value, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CubeNotZero
        | Error::NotSelfAdjoint
        | Error::NotAdmissible
        | Error::NotRankTwo(_)
        | Error::UnsupportedRank(_)
        | Error::VerificationFailed => 2,
        Error::Unsatisfiable(_)
        | Error::DegenerateLine(_)
        | Error::DomainTooSmall(_)
        | Error::SpanningFamilyFailed
        | Error::SpanSolveFailed
        | Error::DegeneratePoint => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors count as bad input
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", curvrank::json::render(&out.value));
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
