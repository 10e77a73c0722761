//! `dser`: run identity suites and compute factorizations, dilations, telescopings and
//! word products from JSON inputs.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use dser_core::dser::Generator;
use dser_core::identities::factor_generators;
use dser_core::local_global::{self as lg, dilate_generator};
use dser_core::matrix::Matrix;
use dser_core::quad_space::{AmbientSpace, Direction, HomMatrix};
use dser_core::suite::{run_suite, SuiteConfig, IDENTITIES};
use dser_core::wire::{word_from_json, word_to_json, DilationInput, FactorJson, MatrixJson, SpaceJson, WitnessJson};
use dser_core::Error;

#[derive(Parser)]
#[command(name = "dser", version, about = "Exact elementary orthogonal transformations over commutative rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded identity suites and write JSON-lines reports.
    Verify(VerifyArgs),
    /// Factor E_α (or E*_β) into coordinate generators.
    Factor(IoArgs),
    /// Dilate a conjugated generator, or a whole θ_s word.
    Dilate(IoArgs),
    /// Split θ(X) into κ-factors along a partition of unity.
    Telescope(IoArgs),
    /// Multiply a word out to a matrix.
    Eval(IoArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "QQ")]
    ring: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Comma-separated subset of the identity ids (default: all).
    #[arg(long, value_delimiter = ',')]
    identities: Option<Vec<String>>,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    #[arg(long, default_value_t = 3)]
    m_max: usize,
    /// Read the whole configuration from a JSON file instead.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Add one corrupted generator matrix to the membership suite.
    #[arg(long)]
    inject_fault: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IoArgs {
    /// Input JSON file (standard input when absent or `-`).
    input: Option<PathBuf>,
    /// Ring descriptor for a space given by flags.
    #[arg(long)]
    ring: Option<String>,
    /// JSON file holding the Gram matrix as rows of scalar strings.
    #[arg(long)]
    gram: Option<PathBuf>,
    #[arg(long)]
    hyperbolic_rank: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit status 2 (usage) or 1 (verification).
enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RewriteFailure { .. } => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("malformed JSON: {e}"))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Factor(a) => factor(a),
        Command::Dilate(a) => dilate(a),
        Command::Telescope(a) => telescope(a),
        Command::Eval(a) => eval(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Outcome {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_out(path, &text)
}

fn verify(a: VerifyArgs) -> Outcome {
    let config = match &a.config {
        Some(p) => serde_json::from_str::<SuiteConfig>(&fs::read_to_string(p)?)?,
        None => SuiteConfig {
            ring: a.ring,
            n_max: a.n_max,
            m_max: a.m_max,
            seed: a.seed,
            identities: a
                .identities
                .unwrap_or_else(|| IDENTITIES.iter().map(|s| s.to_string()).collect()),
            samples: a.samples,
            inject_fault: a.inject_fault,
        },
    };
    let outcome = run_suite(&config)?;
    write_out(&a.out, &outcome.to_json_lines())?;
    if outcome.passed() {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "{} violated, {} failed of {} reports",
            outcome.summary.violated, outcome.summary.failed, outcome.summary.total
        )))
    }
}

fn read_input(a: &IoArgs) -> Result<Value, Failure> {
    let text = match &a.input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

/// Fills in `"space"` from `--ring/--gram/--hyperbolic-rank` when the input lacks it.
/// A bare JSON array is taken as `{"word": [...]}`.
fn with_space(a: &IoArgs, value: Value) -> Result<Value, Failure> {
    let mut obj = match value {
        Value::Object(o) => o,
        Value::Array(w) => {
            let mut o = serde_json::Map::new();
            o.insert("word".into(), Value::Array(w));
            o
        }
        _ => return Err(Failure::Usage("input must be a JSON object or array".into())),
    };
    if !obj.contains_key("space") {
        let (Some(ring), Some(gram), Some(m)) = (&a.ring, &a.gram, a.hyperbolic_rank) else {
            return Err(Failure::Usage(
                "no \"space\" in the input; pass --ring, --gram and --hyperbolic-rank".into(),
            ));
        };
        let gram: Vec<Vec<String>> = serde_json::from_str(&fs::read_to_string(gram)?)?;
        let space = SpaceJson {
            ring: ring.clone(),
            gram,
            hyperbolic_rank: m,
        };
        obj.insert("space".into(), serde_json::to_value(space)?);
    }
    Ok(Value::Object(obj))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct HomJson {
    direction: Direction,
    entries: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct FactorInput {
    space: SpaceJson,
    hom: HomJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct FactorOutput {
    space: SpaceJson,
    hom: HomJson,
    factors: usize,
    word: Vec<FactorJson>,
}

fn factor(a: IoArgs) -> Outcome {
    let input: FactorInput = serde_json::from_value(with_space(&a, read_input(&a)?)?)?;
    let space = input.space.to_space()?;
    let h = HomMatrix::new(input.hom.direction, Matrix::parse(space.ring(), &input.hom.entries)?);
    let word = factor_generators(&space, &h)?;
    if word.matrix()? != Generator::Full(h).matrix(&space)? {
        return Err(Failure::Verify("factor product differs from E(h)".into()));
    }
    emit(
        &a.out,
        &FactorOutput {
            space: input.space,
            hom: input.hom,
            factors: word.len(),
            word: word_to_json(&word),
        },
    )
}

#[derive(Deserialize)]
struct ThetaInput {
    space: SpaceJson,
    theta: Vec<FactorJson>,
    #[serde(default = "default_var")]
    var: String,
}

fn default_var() -> String {
    "X".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct ThetaWitness {
    space: SpaceJson,
    theta: Vec<FactorJson>,
    var: String,
    d: u32,
    word: Vec<FactorJson>,
    verified: bool,
}

fn dilate(a: IoArgs) -> Outcome {
    let value = with_space(&a, read_input(&a)?)?;
    if value.get("theta").is_some() {
        let input: ThetaInput = serde_json::from_value(value)?;
        let space = input.space.to_space()?;
        let theta = word_from_json(&space, &input.theta)?;
        let (d, out) = lg::dilate_theta(&theta, &input.var)?;
        return emit(
            &a.out,
            &ThetaWitness {
                space: input.space,
                theta: input.theta,
                var: input.var,
                d,
                word: word_to_json(&out),
                verified: true,
            },
        );
    }
    let input: DilationInput = serde_json::from_value(value)?;
    let (space, conj, target) = input.parse()?;
    let w = dilate_generator(&space, &conj, &target, input.budget())?;
    emit(&a.out, &WitnessJson::from_witness(&space, &w))
}

#[derive(Deserialize)]
struct TelescopeInput {
    space: SpaceJson,
    theta: Vec<FactorJson>,
    #[serde(default = "default_var")]
    var: String,
    /// Pairs `[d_i, b_i]` with `Σ d_i b_i = 1`.
    shares: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct TelescopeOutput {
    space: SpaceJson,
    kappas: Vec<MatrixJson>,
    verified: bool,
}

fn telescope(a: IoArgs) -> Outcome {
    let input: TelescopeInput = serde_json::from_value(with_space(&a, read_input(&a)?)?)?;
    let space = input.space.to_space()?;
    let ring = space.ring();
    let theta = word_from_json(&space, &input.theta)?.matrix()?;
    let shares = input
        .shares
        .iter()
        .map(|(d, b)| Ok((ring.parse_scalar(d)?, ring.parse_scalar(b)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let kappas = lg::telescope(&space, &theta, &input.var, &shares)?;
    let product = kappas
        .iter()
        .fold(Matrix::identity(ring, space.dim()), |acc, k| acc.mul(k));
    let verified = product == theta;
    emit(
        &a.out,
        &TelescopeOutput {
            space: input.space,
            kappas: kappas.iter().map(MatrixJson::from_matrix).collect(),
            verified,
        },
    )?;
    if verified {
        Ok(())
    } else {
        Err(Failure::Verify("κ-product differs from θ(X)".into()))
    }
}

#[derive(Deserialize)]
struct EvalInput {
    space: SpaceJson,
    word: Vec<FactorJson>,
}

fn eval(a: IoArgs) -> Outcome {
    let input: EvalInput = serde_json::from_value(with_space(&a, read_input(&a)?)?)?;
    let space: AmbientSpace = input.space.to_space()?;
    let m = word_from_json(&space, &input.word)?.matrix()?;
    emit(&a.out, &MatrixJson::from_matrix(&m))
}
