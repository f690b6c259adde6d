//! Command-line front end for the glint toolkit.
//!
//! One subcommand per invocation, batch-friendly: formulas arrive inline or
//! as `@file`, models as JSON files or `-` for stdin, and `--format`
//! switches between human text, JSON, and GraphViz DOT. Output is
//! deterministic given identical arguments — randomized commands take a
//! `--seed`, and setting `GLINT_REQUIRE_SEED=1` makes an explicit seed
//! mandatory so CI runs cannot drift.
//!
//! Exit codes: 0 success, 1 usage or parse error (bad flags, unreadable
//! files, malformed formulas or model JSON), 2 semantic precondition
//! violation (unknown world, `|>` where only boxes are allowed, a model
//! failing its frame conditions), 3 failed certification from `reduce`.

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use glint_core::gl::validate_gl_frame;
use glint_core::veltman::{check_axiom_sweep, AxiomScheme};
use glint_core::{
    lift_to_veltman, mc_gl, mc_il, normal_form_closed, parse, project_to_gl, prove_gl,
    random_veltman, reduce_and_certify_with, validate_veltman, Certificate, Diagnostics, Formula,
    KripkeModel, LiftedModel, ReduceConfig, ReductionError, VeltmanModel, World,
};
use serde_json::json;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for usage and parse errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for semantic precondition violations.
pub const EXIT_SEMANTIC: i32 = 2;
/// Exit code for a failed certification in `reduce`.
pub const EXIT_CERTIFICATION: i32 = 3;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Semantic(String),
    Certification(String),
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Semantic(_) => EXIT_SEMANTIC,
            CliError::Certification(_) => EXIT_CERTIFICATION,
            CliError::Io(_) => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Semantic(m) | CliError::Certification(m) => {
                f.write_str(m)
            }
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn semantic(msg: impl fmt::Display) -> CliError {
    CliError::Semantic(msg.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Gl,
    Veltman,
    Lifted,
}

#[derive(Parser)]
#[command(
    name = "glint",
    version,
    about = "Provability-logic toolkit: GL proving, Veltman models, and the |> reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide GL validity of a |>-free formula.
    ProveGl {
        /// Formula, inline or @file.
        formula: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the |>-translation of a one-variable {F,p0,->,[]} formula.
    Translate {
        /// Formula, inline or @file.
        formula: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Grow a tree-like one-variable GL model into a Veltman model.
    Lift {
        /// GL model JSON: a path or - for stdin.
        model: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Shrink a Veltman model back to a GL model around an anchor world.
    Project {
        /// Veltman or lifted model JSON: a path or - for stdin.
        model: String,
        /// Anchor world; defaults to the root for lifted models.
        #[arg(long)]
        world: Option<World>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Validate frame conditions; reports each violation with witnesses.
    CheckModel {
        /// Model JSON of any kind: a path or - for stdin.
        model: String,
        /// Override the detected model kind.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate a formula at one world of a model.
    Mc {
        /// Model JSON of any kind: a path or - for stdin.
        model: String,
        /// Formula, inline or @file.
        formula: String,
        /// World to evaluate at.
        #[arg(long)]
        world: World,
        /// Override the detected model kind.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide a one-variable formula and certify the verdict on the IL side.
    Reduce {
        /// Formula, inline or @file.
        formula: String,
        /// Random Veltman models swept when the verdict is "valid".
        #[arg(long, default_value_t = 50)]
        smoke_models: usize,
        /// Seed for the sweep; defaults to 0 unless GLINT_REQUIRE_SEED is set.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Height profile and []^n F normal form of a closed |>-free formula.
    NormalForm {
        /// Formula, inline or @file.
        formula: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Generate a seeded random Veltman model.
    RandomModel {
        #[arg(long, default_value_t = 6)]
        worlds: u32,
        /// Probability of keeping each candidate R edge, in [0, 1].
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        /// Seed; defaults to 0 unless GLINT_REQUIRE_SEED is set.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate axiom schemes over every world of a Veltman model.
    SweepAxioms {
        /// Veltman or lifted model JSON: a path or - for stdin.
        model: String,
        /// Scheme names (GL1, GL2, J1..J5, BoxRhd, F); default: all.
        #[arg(long = "scheme")]
        schemes: Vec<String>,
        /// Instance triple "A;B;C" of formulas; repeatable.
        #[arg(long = "instance")]
        instances: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Runs one invocation. `argv` includes the program name; `require_seed`
/// mirrors the GLINT_REQUIRE_SEED environment flag. Returns the exit code.
pub fn run(
    argv: &[String],
    require_seed: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive as "errors" but are successes.
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli.command, require_seed, stdin, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(
    cmd: &Command,
    require_seed: bool,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    preflight(cmd)?;
    match cmd {
        Command::ProveGl { formula, format } => cmd_prove_gl(formula, *format, out),
        Command::Translate { formula, format } => cmd_translate(formula, *format, out),
        Command::Lift { model, format } => cmd_lift(model, *format, stdin, out),
        Command::Project {
            model,
            world,
            format,
        } => cmd_project(model, *world, *format, stdin, out),
        Command::CheckModel {
            model,
            kind,
            format,
        } => cmd_check_model(model, *kind, *format, stdin, out),
        Command::Mc {
            model,
            formula,
            world,
            kind,
            format,
        } => cmd_mc(model, formula, *world, *kind, *format, stdin, out),
        Command::Reduce {
            formula,
            smoke_models,
            seed,
            format,
        } => cmd_reduce(
            formula,
            *smoke_models,
            pick_seed(*seed, require_seed)?,
            *format,
            out,
        ),
        Command::NormalForm { formula, format } => cmd_normal_form(formula, *format, out),
        Command::RandomModel {
            worlds,
            density,
            seed,
            format,
        } => cmd_random_model(
            *worlds,
            *density,
            pick_seed(*seed, require_seed)?,
            *format,
            out,
        ),
        Command::SweepAxioms {
            model,
            schemes,
            instances,
            format,
        } => cmd_sweep_axioms(model, schemes, instances, *format, stdin, out),
    }
}

/// Every file named on the command line must exist before any work starts.
fn preflight(cmd: &Command) -> Result<(), CliError> {
    let mut files: Vec<&str> = Vec::new();
    match cmd {
        Command::ProveGl { formula, .. }
        | Command::Translate { formula, .. }
        | Command::Reduce { formula, .. }
        | Command::NormalForm { formula, .. } => files.extend(formula.strip_prefix('@')),
        Command::Lift { model, .. }
        | Command::Project { model, .. }
        | Command::CheckModel { model, .. }
        | Command::SweepAxioms { model, .. } => files.extend(model_file(model)),
        Command::Mc { model, formula, .. } => {
            files.extend(model_file(model));
            files.extend(formula.strip_prefix('@'));
        }
        Command::RandomModel { .. } => {}
    }
    for f in files {
        if !Path::new(f).is_file() {
            return Err(usage(format!("file not found: {f}")));
        }
    }
    Ok(())
}

fn model_file(source: &str) -> Option<&str> {
    (source != "-").then_some(source)
}

fn pick_seed(seed: Option<u64>, require_seed: bool) -> Result<u64, CliError> {
    match seed {
        Some(s) => Ok(s),
        None if require_seed => Err(usage(
            "--seed is required because GLINT_REQUIRE_SEED is set",
        )),
        None => Ok(0),
    }
}

fn read_source(source: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    if source == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(source).map_err(|e| usage(format!("cannot read {source}: {e}")))
    }
}

fn formula_arg(text: &str) -> Result<Formula, CliError> {
    let raw = match text.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?
        }
        None => text.to_string(),
    };
    parse(raw.trim()).map_err(|e| usage(format!("cannot parse formula: {e}")))
}

enum ModelInput {
    Gl(KripkeModel),
    Veltman(VeltmanModel),
    Lifted(LiftedModel),
}

impl ModelInput {
    fn kind_name(&self) -> &'static str {
        match self {
            ModelInput::Gl(_) => "GL",
            ModelInput::Veltman(_) => "Veltman",
            ModelInput::Lifted(_) => "lifted",
        }
    }
}

fn load_model(
    source: &str,
    kind: Option<Kind>,
    stdin: &mut dyn Read,
) -> Result<ModelInput, CliError> {
    let text = read_source(source, stdin)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("model is not JSON: {e}")))?;
    let kind = kind.unwrap_or_else(|| match value.as_object() {
        Some(o) if o.contains_key("model") => Kind::Lifted,
        Some(o) if o.contains_key("S") => Kind::Veltman,
        _ => Kind::Gl,
    });
    let decoded = match kind {
        Kind::Gl => serde_json::from_value(value).map(ModelInput::Gl),
        Kind::Veltman => serde_json::from_value(value).map(ModelInput::Veltman),
        Kind::Lifted => serde_json::from_value(value).map(ModelInput::Lifted),
    };
    decoded.map_err(|e| usage(format!("cannot decode the model: {e}")))
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Semantic(format!("cannot encode output: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn no_dot(format: Format, what: &str) -> Result<(), CliError> {
    if format == Format::Dot {
        return Err(usage(format!("--format dot does not apply to {what}")));
    }
    Ok(())
}

fn cmd_prove_gl(formula: &str, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let f = formula_arg(formula)?;
    let verdict = prove_gl(&f).map_err(semantic)?;
    match format {
        Format::Json => emit_json(out, &verdict),
        Format::Dot => match verdict.countermodel() {
            Some((m, _)) => {
                write!(out, "{}", m.to_dot())?;
                Ok(())
            }
            None => Err(semantic("the formula is valid; no countermodel to draw")),
        },
        Format::Text => {
            if let Some((m, root)) = verdict.countermodel() {
                writeln!(out, "invalid")?;
                emit_json(out, &json!({ "countermodel": m, "root": root }))
            } else {
                writeln!(out, "valid")?;
                emit_json(out, &json!({ "proof_trace": verdict.trace() }))
            }
        }
    }
}

fn cmd_translate(formula: &str, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    no_dot(format, "translate")?;
    let f = formula_arg(formula)?;
    let translated = f.translate_dagger().map_err(semantic)?;
    match format {
        Format::Json => emit_json(out, &json!({ "input": f, "translated": translated })),
        _ => {
            writeln!(out, "{translated}")?;
            Ok(())
        }
    }
}

fn cmd_lift(
    model: &str,
    format: Format,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let m = match load_model(model, None, stdin)? {
        ModelInput::Gl(m) => m,
        other => {
            return Err(semantic(format!(
                "lift expects a GL model, found a {} model",
                other.kind_name()
            )))
        }
    };
    let lifted = lift_to_veltman(&m).map_err(semantic)?;
    match format {
        Format::Dot => {
            write!(out, "{}", lifted.model.to_dot())?;
            Ok(())
        }
        _ => emit_json(out, &lifted),
    }
}

fn cmd_project(
    model: &str,
    world: Option<World>,
    format: Format,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (m, anchor) = match load_model(model, None, stdin)? {
        ModelInput::Veltman(m) => match world {
            Some(w) => (m, w),
            None => {
                return Err(semantic(
                    "a bare Veltman model has no root; pass --world",
                ))
            }
        },
        ModelInput::Lifted(lm) => {
            let anchor = world.unwrap_or(lm.root);
            (lm.model, anchor)
        }
        ModelInput::Gl(_) => {
            return Err(semantic("project expects a Veltman or lifted model"))
        }
    };
    let (mut projected, kept) = project_to_gl(&m, anchor).map_err(semantic)?;
    projected.root = Some(kept);
    match format {
        Format::Dot => {
            write!(out, "{}", projected.to_dot())?;
            Ok(())
        }
        _ => emit_json(out, &projected),
    }
}

/// Frame conditions plus, for lifted models, the bookkeeping they promise:
/// old worlds, bridges, and tips partition the worlds, the root is old, and
/// `<><>T` holds exactly at the old worlds.
fn lifted_diagnostics(lm: &LiftedModel) -> Diagnostics {
    let mut d = validate_veltman(&lm.model);
    let mut claimed = lm.old_worlds.clone();
    for (&e, &b) in &lm.bridges {
        if !claimed.insert(b) {
            d.push("bridge world reused", [e, b]);
        }
    }
    for (&e, &t) in &lm.tips {
        if !claimed.insert(t) {
            d.push("tip world reused", [e, t]);
        }
    }
    if claimed != lm.model.worlds {
        d.push("old worlds, bridges, and tips do not partition the worlds", Vec::new());
    }
    if !lm.old_worlds.contains(&lm.root) {
        d.push("root is not an old world", [lm.root]);
    }
    if !lm.bridges.keys().eq(lm.tips.keys()) {
        d.push("bridges and tips disagree on the endpoints", Vec::new());
    }
    let probe = Formula::Top.dia().dia();
    for &x in &lm.model.worlds {
        if let Ok(reaches_two_deep) = mc_il(&lm.model, x, &probe) {
            if reaches_two_deep != lm.old_worlds.contains(&x) {
                d.push("<><>T does not define the old worlds", [x]);
            }
        }
    }
    d
}

fn cmd_check_model(
    model: &str,
    kind: Option<Kind>,
    format: Format,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    no_dot(format, "check-model")?;
    let diagnostics = match load_model(model, kind, stdin)? {
        ModelInput::Gl(m) => validate_gl_frame(&m),
        ModelInput::Veltman(m) => validate_veltman(&m),
        ModelInput::Lifted(lm) => lifted_diagnostics(&lm),
    };
    match format {
        Format::Json => emit_json(out, &diagnostics)?,
        _ => {
            if diagnostics.clean() {
                writeln!(out, "ok")?;
            } else {
                writeln!(out, "{diagnostics}")?;
            }
        }
    }
    if diagnostics.clean() {
        Ok(())
    } else {
        Err(semantic(format!(
            "{} frame condition(s) violated",
            diagnostics.violations.len()
        )))
    }
}

fn cmd_mc(
    model: &str,
    formula: &str,
    world: World,
    kind: Option<Kind>,
    format: Format,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    no_dot(format, "mc")?;
    let f = formula_arg(formula)?;
    let holds = match load_model(model, kind, stdin)? {
        ModelInput::Gl(m) => mc_gl(&m, world, &f).map_err(semantic)?,
        ModelInput::Veltman(m) => mc_il(&m, world, &f).map_err(semantic)?,
        ModelInput::Lifted(lm) => mc_il(&lm.model, world, &f).map_err(semantic)?,
    };
    match format {
        Format::Json => emit_json(out, &json!({ "world": world, "formula": f, "holds": holds })),
        _ => {
            writeln!(out, "{holds}")?;
            Ok(())
        }
    }
}

fn cmd_reduce(
    formula: &str,
    smoke_models: usize,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let f = formula_arg(formula)?;
    let config = ReduceConfig { smoke_models, seed };
    let reduction = reduce_and_certify_with(&f, config).map_err(|e| match e {
        ReductionError::Certification(msg) => CliError::Certification(msg),
        other => semantic(other),
    })?;
    match format {
        Format::Json => emit_json(out, &reduction),
        Format::Dot => match &reduction.certificate {
            Certificate::Countermodel { lifted, .. } => {
                write!(out, "{}", lifted.model.to_dot())?;
                Ok(())
            }
            Certificate::Proof { .. } => {
                Err(semantic("the formula is valid; no countermodel to draw"))
            }
        },
        Format::Text => {
            let valid = reduction.gl_verdict.is_valid();
            writeln!(out, "{}", if valid { "valid" } else { "invalid" })?;
            writeln!(out, "input: {}", reduction.input)?;
            writeln!(out, "translated: {}", reduction.translated)?;
            match &reduction.certificate {
                Certificate::Proof { smoke } => {
                    writeln!(
                        out,
                        "smoke: {} models, {} worlds checked, all satisfied: {}",
                        smoke.models, smoke.worlds_checked, smoke.all_satisfied
                    )?;
                }
                Certificate::Countermodel { lifted, recheck } => {
                    writeln!(
                        out,
                        "lifted countermodel: {} worlds, root {}, refutes translation: {}",
                        lifted.model.worlds.len(),
                        lifted.root,
                        recheck
                    )?;
                }
            }
            Ok(())
        }
    }
}

fn cmd_normal_form(formula: &str, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    no_dot(format, "normal-form")?;
    let f = formula_arg(formula)?;
    let nf = normal_form_closed(&f).map_err(semantic)?;
    match format {
        Format::Json => emit_json(out, &nf),
        _ => {
            writeln!(out, "normal form: {}", nf.formula)?;
            let heights = if nf.true_below.is_empty() {
                "none".to_string()
            } else {
                nf.true_below
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            writeln!(out, "true at heights: {heights}")?;
            writeln!(out, "stable from h={}: {}", nf.stable_from, nf.stable_value)?;
            Ok(())
        }
    }
}

fn cmd_random_model(
    worlds: u32,
    density: f64,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(usage(format!("--density must be in [0, 1], got {density}")));
    }
    let m = random_veltman(worlds, density, seed);
    match format {
        Format::Dot => {
            write!(out, "{}", m.to_dot())?;
            Ok(())
        }
        _ => emit_json(out, &m),
    }
}

/// Instance triples used by sweep-axioms when none are supplied: a
/// propositional mix, a contradictory/trivial pair, and modal arguments.
const DEFAULT_INSTANCES: [(&str, &str, &str); 3] = [
    ("p0", "p1", "p0 & p1"),
    ("~p0", "F", "T"),
    ("T |> p0", "<>p1", "[]p0"),
];

fn cmd_sweep_axioms(
    model: &str,
    schemes: &[String],
    instances: &[String],
    format: Format,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    no_dot(format, "sweep-axioms")?;
    let schemes: Vec<AxiomScheme> = if schemes.is_empty() {
        AxiomScheme::ALL.to_vec()
    } else {
        schemes
            .iter()
            .map(|name| name.parse().map_err(|e| usage(format!("{e}"))))
            .collect::<Result<_, _>>()?
    };
    let triples: Vec<(Formula, Formula, Formula)> = if instances.is_empty() {
        DEFAULT_INSTANCES
            .iter()
            .map(|(a, b, c)| {
                Ok((
                    parse(a).expect("built-in instance parses"),
                    parse(b).expect("built-in instance parses"),
                    parse(c).expect("built-in instance parses"),
                ))
            })
            .collect::<Result<_, CliError>>()?
    } else {
        instances
            .iter()
            .map(|text| {
                let parts: Vec<&str> = text.split(';').collect();
                if parts.len() != 3 {
                    return Err(usage(format!(
                        "--instance wants three formulas separated by ';', got {text:?}"
                    )));
                }
                let mut fs = parts.iter().map(|p| {
                    parse(p.trim()).map_err(|e| usage(format!("cannot parse instance: {e}")))
                });
                Ok((
                    fs.next().unwrap()?,
                    fs.next().unwrap()?,
                    fs.next().unwrap()?,
                ))
            })
            .collect::<Result<_, _>>()?
    };
    let m = match load_model(model, None, stdin)? {
        ModelInput::Veltman(m) => m,
        ModelInput::Lifted(lm) => lm.model,
        ModelInput::Gl(_) => {
            return Err(semantic(
                "sweep-axioms expects a Veltman or lifted model",
            ))
        }
    };
    let sweeps: Vec<(AxiomScheme, Diagnostics)> = schemes
        .into_iter()
        .map(|scheme| (scheme, check_axiom_sweep(&m, scheme, &triples)))
        .collect();
    match format {
        Format::Json => {
            let report: Vec<_> = sweeps
                .iter()
                .map(|(scheme, d)| json!({ "scheme": scheme.to_string(), "violations": d.violations }))
                .collect();
            emit_json(out, &report)
        }
        _ => {
            for (scheme, d) in &sweeps {
                if d.clean() {
                    writeln!(out, "{scheme}: ok")?;
                } else {
                    writeln!(out, "{d}")?;
                }
            }
            Ok(())
        }
    }
}
