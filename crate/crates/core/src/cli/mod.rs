//! Command line front end: `morikit <command> -c config.json`.
//!
//! Exit codes: 0 success, 1 oracle mismatch in `check`, 2 invalid
//! configuration or model, 3 incomplete result under `--require-complete`,
//! 64 usage error, 74 output could not be written.

mod config;
pub mod report;
mod slice;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

pub use config::{parse_rational, FieldError, Format, JobConfig, ModelSpec};

use crate::cone::{mori_cone, movable_chambers, nef_cone, DEFAULT_WORD_BOUND, MAX_CHAMBER_RANK};
use crate::enumeration::{
    box_oracle, enumerate_theorem_set, k3_pseudoeffective, ClassSearch, EnumerationBudget,
};
use crate::error::MorikitError;
use crate::linalg::{dot_int, mat_vec_int, primitive_of_rat, Int, Rat};
use crate::markman::ExtendedAlgebraicLattice;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "morikit",
    version,
    about = "Mori, nef and movable cones of K3^[n]-type varieties",
    long_about = "Mori, nef and movable cones of K3^[n]-type varieties.\n\n\
                  The polarization in the configuration is assumed to be ample; \
                  it is never certified."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Job configuration (JSON).
    #[arg(short, long, global = true)]
    pub config: Option<PathBuf>,
    /// Height bound for the enumeration, as `p/q`.
    #[arg(long, global = true, value_parser = parse_rat_arg)]
    pub height_bound: Option<Rat>,
    /// Maximal number of wall crossings or reflections.
    #[arg(long, global = true)]
    pub word_bound: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Omit the timestamp so that output is reproducible.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Exit with status 3 if the result is not certified complete.
    #[arg(long, global = true)]
    pub require_complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Validate the model and print it with its derived constants.
    Build,
    /// Extremal rays of the Mori cone.
    Mori,
    /// The nef cone.
    Nef,
    /// Chamber decomposition of the movable cone.
    Movable,
    /// Effective cone of the K3 surface of a `k3` model.
    K3cone,
    /// Cross-check the enumeration against brute force over a box.
    Check {
        #[arg(long, default_value_t = 8)]
        coeff_bound: u32,
    },
    /// Sections of the cones by the affine plane `(x, D) = 1`.
    Slice {
        /// `D` in `H²_alg` coordinates, comma separated (default: `h`).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        normal: Option<Vec<i64>>,
        /// Points sampled on the round boundary.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Mori => "mori",
            Command::Nef => "nef",
            Command::Movable => "movable",
            Command::K3cone => "k3cone",
            Command::Check { .. } => "check",
            Command::Slice { .. } => "slice",
        }
    }

    /// Parses a bare command name, using defaults for its options.
    pub fn from_name(name: &str) -> Option<Command> {
        Some(match name {
            "build" => Command::Build,
            "mori" => Command::Mori,
            "nef" => Command::Nef,
            "movable" => Command::Movable,
            "k3cone" => Command::K3cone,
            "check" => Command::Check { coeff_bound: 8 },
            "slice" => Command::Slice {
                normal: None,
                samples: 64,
            },
            _ => return None,
        })
    }
}

/// Overrides taken from the command line.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub height_bound: Option<Rat>,
    pub word_bound: Option<usize>,
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Invalid(Vec<FieldError>),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message, fields) = match self {
            CliError::Usage(m) => ("usage", m.clone(), Vec::new()),
            CliError::Io(m) => ("io", m.clone(), Vec::new()),
            CliError::Invalid(f) => (
                "validation",
                f.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
                f.clone(),
            ),
        };
        let fields: Vec<Value> = fields
            .iter()
            .map(|f| json!({ "path": f.path, "message": f.message }))
            .collect();
        json!({
            "schema": report::SCHEMA,
            "error": { "kind": kind, "message": message, "fields": fields },
        })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.to_json()["error"]["message"].as_str() {
            Some(m) => f.write_str(m),
            None => Ok(()),
        }
    }
}

impl std::error::Error for CliError {}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational p/q"))
}

fn invalid(path: &str, message: impl Into<String>) -> CliError {
    CliError::Invalid(vec![FieldError {
        path: path.into(),
        message: message.into(),
    }])
}

fn model_prefix(cfg: &JobConfig) -> &'static str {
    match cfg.model {
        ModelSpec::K3 { .. } => "model.k3",
        ModelSpec::Raw { .. } => "model.raw",
    }
}

fn budget(
    cfg: &JobConfig,
    opts: &Options,
    model: &ExtendedAlgebraicLattice,
) -> Result<EnumerationBudget, CliError> {
    match opts
        .height_bound
        .clone()
        .or_else(|| cfg.height_bound.clone())
    {
        Some(b) => EnumerationBudget::new(b)
            .map_err(|_| invalid("budget.height_bound", "must be positive")),
        None => Ok(EnumerationBudget::default_for(model)),
    }
}

/// Runs one command on a parsed configuration and returns the output
/// document.
pub fn execute(cmd: &Command, cfg: &JobConfig, opts: &Options) -> Result<Value, CliError> {
    let fail =
        |e: MorikitError| CliError::Invalid(vec![config::model_error(&e, model_prefix(cfg))]);
    let mut out = Map::new();
    out.insert("schema".into(), json!(report::SCHEMA));
    out.insert("command".into(), json!(cmd.name()));
    if !opts.deterministic {
        out.insert(
            "generated_at".into(),
            json!(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
        );
    }
    if let Command::K3cone = cmd {
        let ModelSpec::K3 {
            gram, polarization, ..
        } = &cfg.model
        else {
            return Err(invalid("model", "k3cone needs a `k3` model"));
        };
        let h_sq = dot_int(polarization, &mat_vec_int(gram, polarization));
        let bound = opts
            .height_bound
            .clone()
            .or_else(|| cfg.height_bound.clone())
            .unwrap_or_else(|| Rat::from(h_sq * Int::from(10)));
        let b = EnumerationBudget::new(bound).map_err(fail)?;
        let c = k3_pseudoeffective(gram, polarization, &b)
            .map_err(|e| CliError::Invalid(vec![config::model_error(&e, "model.k3")]))?;
        out.insert("pic_gram".into(), report::int_rows(gram));
        out.insert("polarization".into(), report::ints(polarization));
        out.extend(report::k3(&c));
        return Ok(Value::Object(out));
    }

    let model = cfg.model().map_err(CliError::Invalid)?;
    out.insert("model".into(), report::model(&model));
    report::constants(&model, &mut out);
    out.insert("h2".into(), report::h2(&model));
    match cmd {
        Command::Build | Command::K3cone => {}
        Command::Mori => {
            let b = budget(cfg, opts, &model)?;
            out.insert("height_bound".into(), report::rat(&b.height_bound));
            out.extend(report::mori(&model, &mori_cone(&model, &b).map_err(fail)?));
        }
        Command::Nef => {
            let b = budget(cfg, opts, &model)?;
            out.insert("height_bound".into(), report::rat(&b.height_bound));
            out.extend(report::nef(&model, &nef_cone(&model, &b).map_err(fail)?));
        }
        Command::Movable => {
            let b = budget(cfg, opts, &model)?;
            let w = opts
                .word_bound
                .or(cfg.word_bound)
                .unwrap_or(DEFAULT_WORD_BOUND);
            out.insert("height_bound".into(), report::rat(&b.height_bound));
            out.extend(report::movable(
                &model,
                &movable_chambers(&model, &b, w).map_err(fail)?,
            ));
        }
        Command::Check { coeff_bound } => {
            let b = budget(cfg, opts, &model)?;
            out.insert("height_bound".into(), report::rat(&b.height_bound));
            out.extend(check(&model, &b, *coeff_bound).map_err(fail)?);
        }
        Command::Slice { normal, samples } => {
            let b = budget(cfg, opts, &model)?;
            out.insert("height_bound".into(), report::rat(&b.height_bound));
            out.extend(slice(&model, &b, cfg, opts, normal.as_deref(), *samples)?);
        }
    }
    Ok(Value::Object(out))
}

fn check(
    model: &ExtendedAlgebraicLattice,
    b: &EnumerationBudget,
    coeff_bound: u32,
) -> crate::error::Result<Map<String, Value>> {
    use std::collections::BTreeSet;
    let oracle = box_oracle(model, coeff_bound)?;
    let c = Int::from(coeff_bound);
    let in_box = |a: &[Int]| a.iter().all(|x| x <= &c && x >= &-c.clone());
    let enumerated: BTreeSet<Vec<Int>> = enumerate_theorem_set(model, b)
        .into_iter()
        .map(|t| t.a.coords().to_vec())
        .filter(|a| in_box(a))
        .collect();
    let brute: BTreeSet<Vec<Int>> = oracle
        .into_iter()
        .filter(|t| t.r.q < Rat::from(Int::from(0)) && t.height <= b.height_bound)
        .map(|t| t.a.coords().to_vec())
        .collect();
    let only_enum: Vec<Vec<Int>> = enumerated.difference(&brute).cloned().collect();
    let only_oracle: Vec<Vec<Int>> = brute.difference(&enumerated).cloned().collect();
    let mut o = Map::new();
    o.insert("coeff_bound".into(), json!(coeff_bound));
    o.insert("compared".into(), json!(brute.len()));
    o.insert("only_enumerated".into(), report::int_rows(&only_enum));
    o.insert("only_oracle".into(), report::int_rows(&only_oracle));
    o.insert(
        "oracle_match".into(),
        json!(only_enum.is_empty() && only_oracle.is_empty()),
    );
    Ok(o)
}

fn slice(
    model: &ExtendedAlgebraicLattice,
    b: &EnumerationBudget,
    cfg: &JobConfig,
    opts: &Options,
    normal: Option<&[i64]>,
    samples: usize,
) -> Result<Map<String, Value>, CliError> {
    let fail =
        |e: MorikitError| CliError::Invalid(vec![config::model_error(&e, model_prefix(cfg))]);
    let positive = ClassSearch::for_model(model).positive_cone();
    let d: Vec<Int> = match normal {
        Some(n) if n.len() == model.h2_rank() => n.iter().map(|&x| Int::from(x)).collect(),
        Some(_) => {
            return Err(invalid(
                "--normal",
                format!("expected {} coordinates", model.h2_rank()),
            ))
        }
        None => primitive_of_rat(&model.to_h2(model.h())),
    };
    let frame = slice::Frame::new(&positive, &d)
        .ok_or_else(|| invalid("--normal", "must lie in the interior of the positive cone"))?;
    let mut o = Map::new();
    o.insert("plane".into(), frame.describe());
    o.insert("positive".into(), frame.positive(samples));
    let mori = mori_cone(model, b).map_err(fail)?;
    let nef = nef_cone(model, b).map_err(fail)?;
    o.insert("mori".into(), frame.cone(&positive, &mori.polyhedral));
    let mut n = frame.cone(&positive, &nef.cone);
    n["quadric_boundary"] = json!(nef.quadric_boundary);
    o.insert("nef".into(), n);
    let mut complete = mori.complete;
    if model.h2_rank() <= MAX_CHAMBER_RANK {
        let w = opts
            .word_bound
            .or(cfg.word_bound)
            .unwrap_or(DEFAULT_WORD_BOUND);
        let dec = movable_chambers(model, b, w).map_err(fail)?;
        complete &= dec.complete;
        let chambers: Vec<Value> = dec
            .chambers
            .iter()
            .map(|c| {
                let mut v = frame.cone(&positive, &c.cone);
                v["contains_h"] = json!(c.contains_h);
                v["quadric_boundary"] = json!(c.quadric_boundary);
                v
            })
            .collect();
        o.insert("chambers".into(), Value::Array(chambers));
    }
    o.insert("complete".into(), json!(complete));
    Ok(o)
}

/// Renders an output document in the requested format.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Tsv => report::to_tsv(v),
    }
}

/// Runs a command on a configuration given as JSON text and returns the
/// JSON output.
pub fn run_json(command: &str, config_json: &str, deterministic: bool) -> Result<String, CliError> {
    let cmd = Command::from_name(command)
        .ok_or_else(|| CliError::Usage(format!("unknown command `{command}`")))?;
    let cfg = JobConfig::from_json(config_json).map_err(CliError::Invalid)?;
    let opts = Options {
        deterministic,
        ..Options::default()
    };
    Ok(render(&execute(&cmd, &cfg, &opts)?, Format::Json))
}

/// Entry point of the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match job(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = err.write_all(render(&e.to_json(), Format::Json).as_bytes());
            e.exit_code()
        }
    }
}

fn job(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Usage("missing -c/--config".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid("--config", format!("{}: {e}", path.display())))?;
    let cfg = JobConfig::from_json(&text).map_err(CliError::Invalid)?;
    let opts = Options {
        height_bound: cli.height_bound.clone(),
        word_bound: cli.word_bound,
        deterministic: cli.deterministic,
    };
    let doc = execute(&cli.command, &cfg, &opts)?;
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let text = render(&doc, format);
    match &cfg.path {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    if doc.get("oracle_match") == Some(&json!(false)) {
        return Ok(EXIT_CHECK_FAILED);
    }
    if cli.require_complete && doc.get("complete") == Some(&json!(false)) {
        return Ok(EXIT_INCOMPLETE);
    }
    Ok(EXIT_OK)
}
