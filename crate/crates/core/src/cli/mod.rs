//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for unusable input (parse errors, invalid
//! meters, unsupported parameters, failed equivalence checks), 2 when a
//! structural invariant of the algorithms is violated.

mod output;

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::ops::ControlFlow;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::indis::{
    check_equivalence, descend_ref, descend_ref_traced, indispensability_gen, indispensability_gen_traced,
    indispensability_ref, indispensability_ref_traced, EquivConfig, IndisError, StartOrders,
};
use crate::meter::{
    count, enumerate, for_each_word, format_weights, recognize, Arity, InvalidMeter, MeterError, MeterKind,
    MeterParams, MeterSeq, ParseError, Recognition, DEFAULT_GUARD,
};
use crate::relkit::{PartialMap, Sequence};

pub use output::{Algorithm, OutputRecord, Trace, SCHEMA_VERSION};

/// Environment variable overriding the enumeration guard.
pub const GUARD_VAR: &str = "MEMGUARD";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<InvalidMeter> for Failure {
    fn from(e: InvalidMeter) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<MeterError> for Failure {
    fn from(e: MeterError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<IndisError> for Failure {
    fn from(e: IndisError) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(format!("i/o error: {e}"))
    }
}

/// Exit code an algorithm error maps to.
pub fn exit_code(e: &IndisError) -> u8 {
    if e.is_invariant_violation() {
        2
    } else {
        1
    }
}

/// Settings taken from the process environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub guard: u128,
}

impl Default for Context {
    fn default() -> Self {
        Context { guard: DEFAULT_GUARD }
    }
}

impl Context {
    pub fn from_env() -> Result<Self, Failure> {
        match std::env::var(GUARD_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|guard| Context { guard })
                .map_err(|_| Failure::input(format!("{GUARD_VAR} must be a natural number, got {v:?}"))),
            Err(_) => Ok(Context::default()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "stratameter", version, about = "Indispensability of stratified meters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute indispensability values for a meter
    Compute(ComputeArgs),
    /// List the members of a meter language
    Enumerate(EnumerateArgs),
    /// Classify a meter as GNSM, MNSM or invalid
    Validate(ValidateArgs),
    /// Compare the reference and generalized algorithms
    CheckEquiv(CheckEquivArgs),
    /// Count the members of a meter language
    Count(LanguageArgs),
    /// Run the reference descent from an explicit accumulator
    Descend(DescendArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmChoice {
    Ref,
    Gen,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Gnsm,
    Mnsm,
}

impl From<KindArg> for MeterKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Gnsm => MeterKind::Gnsm,
            KindArg::Mnsm => MeterKind::Mnsm,
        }
    }
}

#[derive(Debug, Args)]
struct ArityArgs {
    /// Minimal number of children per subtree
    #[arg(long = "i", default_value_t = 2)]
    min: usize,
    /// Maximal number of children per subtree
    #[arg(long = "a", default_value_t = 3)]
    max: usize,
}

impl ArityArgs {
    fn arity(&self) -> Result<Arity, Failure> {
        Ok(Arity::new(self.min, self.max)?)
    }
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Weights, e.g. "1 0 0 1 0 1 0 0" or "10010100"; "-" reads stdin
    meter: String,
    #[arg(long, value_enum, default_value_t = AlgorithmChoice::Both)]
    algorithm: AlgorithmChoice,
    #[command(flatten)]
    arity: ArityArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Index base for displayed positions (table and CSV)
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    base: u8,
    /// Include every intermediate step
    #[arg(long)]
    trace: bool,
    /// Custom start order for as many top pulses as it has entries, e.g. "0,3,1,4,2"
    #[arg(long = "start-order", value_name = "ORDER")]
    start_orders: Vec<String>,
}

#[derive(Debug, Args)]
struct LanguageArgs {
    /// Top stratum; -1 is the base case {⟨⟩}
    #[arg(long = "f", allow_negative_numbers = true)]
    top: i64,
    #[command(flatten)]
    arity: ArityArgs,
    #[arg(long, value_enum, default_value_t = KindArg::Gnsm)]
    kind: KindArg,
}

impl LanguageArgs {
    fn params(&self) -> Result<MeterParams, Failure> {
        Ok(MeterParams::new(self.top, self.arity.min, self.arity.max)?)
    }
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    language: LanguageArgs,
    /// Emit at most this many words, without materializing the language
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    meter: String,
    #[command(flatten)]
    arity: ArityArgs,
}

#[derive(Debug, Args)]
struct CheckEquivArgs {
    /// Highest top stratum compared exhaustively
    #[arg(long = "f-max", default_value_t = 2)]
    f_max: usize,
    /// Random inputs drawn one stratum above --f-max
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "start-order", value_name = "ORDER")]
    start_orders: Vec<String>,
}

#[derive(Debug, Args)]
struct DescendArgs {
    meter: String,
    /// Initial assignment as position:value pairs, e.g. "0:2,3:0,5:1"
    #[arg(long)]
    accumulator: String,
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

/// Runs the command line `args` and returns the process exit code.
pub fn run<I, T>(args: I, ctx: &Context, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if help { out } else { err };
            let _ = write!(sink, "{rendered}");
            return if help { 0 } else { 1 };
        }
    };
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(&args, stdin, out),
        Command::Enumerate(args) => cmd_enumerate(&args, ctx, out),
        Command::Validate(args) => cmd_validate(&args, stdin, out),
        Command::CheckEquiv(args) => cmd_check_equiv(&args, out),
        Command::Count(args) => cmd_count(&args, out),
        Command::Descend(args) => cmd_descend(&args, stdin, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn read_meter(text: &str, stdin: &mut dyn BufRead) -> Result<MeterSeq, Failure> {
    if text == "-" {
        let mut buf = String::new();
        stdin.read_to_string(&mut buf)?;
        return Ok(MeterSeq::parse(&buf)?);
    }
    Ok(MeterSeq::parse(text)?)
}

fn parse_order(text: &str) -> Result<Sequence, Failure> {
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Failure::input(format!("bad start order entry {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sequence::new(values))
}

fn start_orders(specs: &[String]) -> Result<StartOrders, Failure> {
    specs
        .iter()
        .try_fold(StartOrders::new(), |acc, spec| Ok(acc.with_custom(parse_order(spec)?)?))
}

fn cmd_compute(args: &ComputeArgs, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<u8, Failure> {
    let arity = args.arity.arity()?;
    let meter = read_meter(&args.meter, stdin)?.validate(arity)?;
    let starts = start_orders(&args.start_orders)?;

    let mut records = Vec::new();
    if matches!(args.algorithm, AlgorithmChoice::Ref | AlgorithmChoice::Both) {
        let (map, trace) = if args.trace {
            let (map, trace) = indispensability_ref_traced(&meter)?;
            (map, Some(Trace::Ref(trace)))
        } else {
            (indispensability_ref(&meter)?, None)
        };
        records.push(OutputRecord::new(&meter, arity, Algorithm::Ref, &map, trace));
    }
    if matches!(args.algorithm, AlgorithmChoice::Gen | AlgorithmChoice::Both) {
        let (map, trace) = if args.trace {
            let (map, _, trace) = indispensability_gen_traced(&meter, &starts)?;
            (map, Some(Trace::Gen(trace)))
        } else {
            (indispensability_gen(&meter, &starts)?, None)
        };
        records.push(OutputRecord::new(&meter, arity, Algorithm::Gen, &map, trace));
    }
    let verdict = (records.len() == 2).then(|| records[0].indispensability == records[1].indispensability);
    output::write_records(out, &records, verdict, args.format, args.base)?;
    Ok(0)
}

fn cmd_enumerate(args: &EnumerateArgs, ctx: &Context, out: &mut dyn Write) -> Result<u8, Failure> {
    let kind = MeterKind::from(args.language.kind);
    let params = args.language.params()?;
    let total = count(kind, params);
    let mut emitted = 0usize;
    match args.limit {
        Some(limit) => {
            let mut io_result = Ok(());
            for_each_word(kind, params, |word| {
                if emitted >= limit {
                    return ControlFlow::Break(());
                }
                io_result = writeln!(out, "{}", format_weights(word));
                emitted += 1;
                if io_result.is_err() {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
            io_result?;
            let truncated = match &total {
                Ok(t) => *t > emitted as u128,
                Err(_) => true,
            };
            if truncated {
                let size = total
                    .map(|t| t.to_string())
                    .unwrap_or_else(|_| "more than 2^128".into());
                writeln!(out, "# truncated at limit {limit} (language has {size} members)")?;
            }
        }
        None => {
            for word in enumerate(kind, params, ctx.guard)? {
                writeln!(out, "{}", format_weights(&word))?;
                emitted += 1;
            }
        }
    }
    writeln!(out, "# count={emitted}")?;
    Ok(0)
}

fn cmd_validate(args: &ValidateArgs, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<u8, Failure> {
    let arity = args.arity.arity()?;
    let meter = read_meter(&args.meter, stdin)?;
    let recognition = recognize(meter.weights().as_slice(), arity);
    writeln!(out, "{recognition}")?;
    Ok(match recognition {
        Recognition::Invalid(_) => 1,
        _ => 0,
    })
}

fn cmd_check_equiv(args: &CheckEquivArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let config = EquivConfig {
        max_top: args.f_max,
        samples: args.samples,
        seed: args.seed,
        starts: start_orders(&args.start_orders)?,
        ..EquivConfig::default()
    };
    let report = check_equivalence(&config)?;
    writeln!(
        out,
        "checked {} exhaustive + {} sampled, {} mismatches",
        report.exhaustive, report.sampled, report.mismatches
    )?;
    if let Some(m) = &report.first_mismatch {
        let show = |r: &Result<crate::indis::IndisMap, IndisError>| match r {
            Ok(map) => format_weights(map.values()),
            Err(e) => format!("error: {e}"),
        };
        writeln!(out, "first mismatch: {}", format_weights(&m.input))?;
        writeln!(out, "  ref: {}", show(&m.reference))?;
        writeln!(out, "  gen: {}", show(&m.generalized))?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_count(args: &LanguageArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let n = count(args.kind.into(), args.params()?)?;
    writeln!(out, "{n}")?;
    Ok(0)
}

fn parse_accumulator(text: &str) -> Result<PartialMap, Failure> {
    let pairs = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (pos, value) = t
                .split_once(':')
                .ok_or_else(|| Failure::input(format!("accumulator entry {t:?} is not position:value")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::input(format!("accumulator entry {t:?} is not position:value")))
            };
            Ok((parse(pos)?, parse(value)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    PartialMap::try_from_pairs(pairs).map_err(|e| Failure::input(e.to_string()))
}

fn cmd_descend(args: &DescendArgs, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<u8, Failure> {
    let meter = read_meter(&args.meter, stdin)?.validate(Arity::DUPLE_TRIPLE)?;
    let accumulator = parse_accumulator(&args.accumulator)?;
    let (result, trace) = if args.trace {
        let (result, trace) = descend_ref_traced(meter.weights(), &accumulator)?;
        (result, Some(trace))
    } else {
        (descend_ref(meter.weights(), &accumulator)?, None)
    };
    output::write_descent(out, &result, trace.as_ref(), args.format)?;
    Ok(0)
}
