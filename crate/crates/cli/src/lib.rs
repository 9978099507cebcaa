//! Command-line front end. Every subcommand reads JSON files and writes one
//! JSON (or DOT) document to `--output` or standard output.
//!
//! Exit codes: 0 success, 1 a check failed or a computation was refused,
//! 2 unreadable or malformed input.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use toricarr::arrangement::{all_a_layers, expand_fan, reduce_span, xi_of, Arrangement};
use toricarr::betti::betti_numbers;
use toricarr::fan::{make_orthant_fan, Fan};
use toricarr::lattice::{IntMatrix, IntVector};
use toricarr::strata::{build_strata_poset, property_e_witness, StrataPoset};
use toricarr::subdiv::{bad_two_cones, resolve_all, SubdivisionTrace, TraceStep};
use toricarr::wonderful::{blowup_schedule, is_building, minimal_building_set, nested_complex_dot, nested_sets};

#[derive(Parser, Debug)]
#[command(name = "toricarr", version, about = "Smooth toric compactifications of toric arrangements")]
pub struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format for posets and complexes.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Where to write the result; standard output if absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Subdivide a fan until every layer has property (E).
    Subdivide {
        /// Arrangement file.
        #[arg(long)]
        input: PathBuf,
        /// Starting fan; the orthant fan after span reduction if absent.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Where to write the list of moves.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a fan against an arrangement.
    Verify {
        #[arg(long)]
        fan: PathBuf,
        /// Arrangement file.
        #[arg(long)]
        input: PathBuf,
        /// Fan the input must subdivide; no support check if absent.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Sample points per maximal cone for the support check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// The poset of strata.
    Strata {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// The minimal building set.
    Building {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Nested sets of a building set.
    Nested {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// JSON list of stratum ids; the minimal building set if absent.
        #[arg(long)]
        building: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Blowup order of a building set.
    Schedule {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        building: Option<PathBuf>,
    },
    /// Even Betti numbers of a smooth complete fan.
    Betti {
        /// Fan file.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

/// What a command produced: the document and whether its check passed.
pub struct Outcome {
    pub body: String,
    pub ok: bool,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_pair(fan: &Path, input: &Path) -> Result<(Fan, Arrangement), CliError> {
    let f: Fan = read_json(fan)?;
    let a: Arrangement = read_json(input)?;
    if f.rank() != a.rank() {
        return Err(CliError::Input(format!(
            "fan has rank {} but the arrangement has rank {}",
            f.rank(),
            a.rank()
        )));
    }
    Ok((f, a))
}

fn poset(fan: &Path, input: &Path) -> Result<StrataPoset, CliError> {
    let (f, a) = load_pair(fan, input)?;
    build_strata_poset(&f, &a).map_err(|e| CliError::Failed(e.to_string()))
}

fn building_set(p: &StrataPoset, file: Option<&Path>) -> Result<BTreeSet<usize>, CliError> {
    match file {
        None => Ok(minimal_building_set(p)),
        Some(path) => {
            let ids: Vec<usize> = read_json(path)?;
            if let Some(bad) = ids.iter().find(|&&i| i == p.top() || i >= p.len()) {
                return Err(CliError::Input(format!("{bad} is not a stratum id of the arrangement")));
            }
            let g: BTreeSet<usize> = ids.into_iter().collect();
            if !is_building(p, &g) {
                return Err(CliError::Failed("the given set is not building".into()));
            }
            Ok(g)
        }
    }
}

fn stratum_entry(p: &StrataPoset, i: usize) -> Value {
    json!({ "id": i, "dim": p.dim(i), "label": p.label(i) })
}

fn map_trace(trace: &SubdivisionTrace, eta: &IntMatrix, inv: &IntMatrix) -> Result<SubdivisionTrace, CliError> {
    let n = eta.nrows();
    let err = |e: toricarr::lattice::LatticeError| CliError::Failed(e.to_string());
    let ray = |v: &IntVector| inv.mul_vector(&v.padded(n)).map_err(err);
    let steps = trace
        .steps()
        .iter()
        .map(|s| {
            Ok(TraceStep {
                character: eta.left_mul_vector(&s.character.padded(n)).map_err(err)?,
                cone: [ray(&s.cone[0])?, ray(&s.cone[1])?],
                new_ray: ray(&s.new_ray)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SubdivisionTrace(steps))
}

/// Runs `subdivide`: returns the fan and the trace in original coordinates.
pub fn subdivide(a: &Arrangement, base: Option<&Fan>) -> Result<(Fan, SubdivisionTrace), CliError> {
    match base {
        Some(b) => {
            if b.rank() != a.rank() {
                return Err(CliError::Input("base fan and arrangement have different ranks".into()));
            }
            resolve_all(b, &xi_of(a)).map_err(|e| CliError::Input(e.to_string()))
        }
        None => {
            let (red, eta) = reduce_span(a).map_err(|e| CliError::Failed(e.to_string()))?;
            let (f, trace) =
                resolve_all(&make_orthant_fan(red.rank()), &xi_of(&red)).map_err(|e| CliError::Input(e.to_string()))?;
            if red.rank() == a.rank() {
                return Ok((f, trace));
            }
            let full = expand_fan(&f, &eta).map_err(|e| CliError::Failed(e.to_string()))?;
            let inv = eta.inverse().map_err(|e| CliError::Failed(e.to_string()))?;
            Ok((full, map_trace(&trace, &eta, &inv)?))
        }
    }
}

/// The verification report for `verify`.
pub fn verify(f: &Fan, a: &Arrangement, base: Option<&Fan>, seed: u64, samples: usize) -> Value {
    let smooth = f.is_smooth();
    let fan_ok = f.check_intersections().is_ok();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subdivision = base.map(|b| f.rank() == b.rank() && f.is_subdivision_of(b, &mut rng, samples));
    let mut violations = Vec::new();
    if f.rank() == a.rank() {
        for layer in all_a_layers(a) {
            if let Some(c) = property_e_witness(f, &layer) {
                let mut entry = json!({
                    "layer": layer.to_string(),
                    "gamma": layer.characters(),
                    "cone": f.cone_vectors(&c),
                });
                if layer.codim() == 1 {
                    let chi = &layer.characters()[0];
                    if let Some(two) = bad_two_cones(f, chi).into_iter().find(|s| s.is_face_of(&c)) {
                        entry["two_cone"] = json!(f.cone_vectors(&two));
                    }
                }
                violations.push(entry);
            }
        }
    }
    let ok = smooth && fan_ok && subdivision != Some(false) && violations.is_empty() && f.rank() == a.rank();
    json!({
        "ok": ok,
        "smooth": smooth,
        "fan": fan_ok,
        "subdivision": subdivision,
        "violations": violations,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let ok = |body: String| Ok(Outcome { body, ok: true });
    match &cli.command {
        Command::Subdivide { input, base, trace } => {
            let a: Arrangement = read_json(input)?;
            let b = base.as_deref().map(read_json::<Fan>).transpose()?;
            let (f, t) = subdivide(&a, b.as_ref())?;
            if let Some(path) = trace {
                write_file(path, &pretty(&t))?;
            }
            ok(pretty(&f.canonical()))
        }
        Command::Verify {
            fan,
            input,
            base,
            samples,
        } => {
            let f: Fan = read_json(fan)?;
            let a: Arrangement = read_json(input)?;
            let b = base.as_deref().map(read_json::<Fan>).transpose()?;
            let report = verify(&f, &a, b.as_ref(), cli.seed, *samples);
            let passed = report["ok"] == json!(true);
            Ok(Outcome {
                body: pretty(&report),
                ok: passed,
            })
        }
        Command::Strata { fan, input } => {
            let p = poset(fan, input)?;
            match cli.format {
                Format::Json => ok(pretty(&p.to_json())),
                Format::Dot => ok(p.to_dot()),
            }
        }
        Command::Building { fan, input } => {
            let p = poset(fan, input)?;
            let g = minimal_building_set(&p);
            ok(pretty(&json!({
                "building_set": g,
                "strata": g.iter().map(|&i| stratum_entry(&p, i)).collect::<Vec<_>>(),
            })))
        }
        Command::Nested {
            fan,
            input,
            building,
            cap,
        } => {
            let p = poset(fan, input)?;
            let g = building_set(&p, building.as_deref())?;
            let sets = nested_sets(&p, &g, *cap).map_err(|e| CliError::Failed(e.to_string()))?;
            match cli.format {
                Format::Json => ok(pretty(&json!({
                    "building_set": g,
                    "nested_sets": sets,
                }))),
                Format::Dot => ok(nested_complex_dot(&p, &g, &sets)),
            }
        }
        Command::Schedule { fan, input, building } => {
            let p = poset(fan, input)?;
            let g = building_set(&p, building.as_deref())?;
            let s = blowup_schedule(&p, &g).map_err(|e| CliError::Failed(e.to_string()))?;
            ok(pretty(&json!({
                "schedule": s.iter().map(|&i| stratum_entry(&p, i)).collect::<Vec<_>>(),
            })))
        }
        Command::Betti { input } => {
            let f: Fan = read_json(input)?;
            let b = betti_numbers(&f).map_err(|e| CliError::Failed(e.to_string()))?;
            ok(pretty(&b))
        }
    }
}

/// Parses arguments, runs, writes the output and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => write_file(path, &out.body),
                None => stdout.write_all(out.body.as_bytes()).map_err(|e| CliError::Input(e.to_string())),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return e.exit_code();
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
