//! Command-line front end. [`run`] maps argv to an exit code:
//! 0 when the sought object exists or the property holds, 1 when it is absent
//! or violated (including violated hypotheses), 2 for usage and input errors.

mod commands;
pub mod format;
pub mod report;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::{Limits, SetSystem};
use format::FileFormat;
use report::{digest, RunReport, Timing};

pub use commands::{
    BoundsCmd, ConstructCmd, GenArgs, InputArgs, KkCmd, SpreadCmd, SunflowerCmd, VcArgs,
    VerifyArgs,
};

#[derive(Parser, Debug)]
#[command(
    name = "sunflower-vc",
    version,
    about = "Sunflowers, VC-dimension and exact Kahn-Kalai dichotomy checks for small set systems"
)]
pub struct Cli {
    /// Report format; also the format of emitted set systems.
    #[arg(long, global = true, value_enum, default_value_t = FileFormat::Text)]
    pub format: FileFormat,

    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for the parallel exact searches; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact VC-dimension and a lexicographically least largest shattered set.
    Vc(VcArgs),
    /// Sunflower search and extraction.
    #[command(subcommand)]
    Sunflower(SunflowerCmd),
    /// Explicit constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Reduced families, the small/large split and exact expected weights.
    #[command(subcommand)]
    Spread(SpreadCmd),
    /// Dichotomy checks with exact covers and exact probabilities.
    #[command(subcommand)]
    Kk(KkCmd),
    /// Scalar bound functions.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Seeded random families.
    Gen(GenArgs),
    /// Runs a named invariant suite and reports pass or fail per property.
    Verify(VerifyArgs),
}

/// Runs the front end on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdin(), &mut io::stdout(), &mut io::stderr())
}

/// Runs the front end on explicit streams.
pub fn run_with<I, T>(args: I, input: &mut (dyn Read + Send), out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    let (name, parameters) = describe(&matches);
    match execute(&cli, name, parameters, input, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Hypothesis(_) => 1,
                _ => 2,
            }
        }
    }
}

fn execute(
    cli: &Cli,
    command: String,
    parameters: BTreeMap<String, String>,
    input: &mut (dyn Read + Send),
    out: &mut dyn Write,
) -> Result<i32> {
    let limits = Limits::from_env()?;
    let mut ctx = Context { input, digest: None, limits, format: cli.format };
    let start = Instant::now();
    let produced = match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
            pool.install(|| commands::dispatch(&cli.command, &mut ctx))?
        }
        None => commands::dispatch(&cli.command, &mut ctx)?,
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let text = match (&produced.raw, cli.format) {
        (Some(raw), _) => raw.clone(),
        (None, FileFormat::Json) => {
            let report = RunReport {
                command,
                parameters,
                seed: produced.seed,
                input_digest: ctx.digest.clone(),
                outcome: produced.outcome.clone(),
                result: produced.result.clone(),
                timing: Timing { elapsed_ms },
            };
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialise");
            s.push('\n');
            s
        }
        (None, FileFormat::Text) => {
            let mut s = produced.lines.join("\n");
            s.push('\n');
            s
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(produced.status.exit_code())
}

/// Shared state for one invocation.
pub struct Context<'a> {
    input: &'a mut (dyn Read + Send),
    digest: Option<String>,
    pub limits: Limits,
    pub format: FileFormat,
}

impl Context<'_> {
    /// Reads the set system named by `args` (`-` is stdin) and records the
    /// digest of its bytes.
    pub fn load(&mut self, args: &InputArgs) -> Result<SetSystem> {
        let mut bytes = Vec::new();
        if args.input == "-" {
            self.input.read_to_end(&mut bytes)?;
        } else {
            bytes = std::fs::read(&args.input)
                .map_err(|e| Error::Io(format!("{}: {e}", args.input)))?;
        }
        self.digest = Some(digest(&bytes));
        let text = String::from_utf8(bytes)
            .map_err(|_| Error::InvalidInput("input is not UTF-8".into()))?;
        format::parse_set_system(&text, args.input_format)
    }
}

/// The subcommand path and its arguments as strings, global flags excluded.
fn describe(matches: &ArgMatches) -> (String, BTreeMap<String, String>) {
    let mut names = Vec::new();
    let mut leaf = matches;
    while let Some((name, sub)) = leaf.subcommand() {
        names.push(name.to_string());
        leaf = sub;
    }
    let mut parameters = BTreeMap::new();
    for id in leaf.ids() {
        let key = id.as_str();
        if matches!(key, "format" | "output" | "threads") {
            continue;
        }
        if let Ok(Some(values)) = leaf.try_get_raw(key) {
            let joined: Vec<String> = values.map(|v| v.to_string_lossy().into_owned()).collect();
            parameters.insert(key.to_string(), joined.join(","));
        }
    }
    (names.join(" "), parameters)
}
