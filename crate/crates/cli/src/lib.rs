//! Command-line workflows over the `unirep` library.
//!
//! Every report line is a JSON object: one per finding
//! (`check`, `location`, `expected`, `actual`), followed by a `summary`
//! object per sub-report. Exit codes: 0 pass, 1 findings, 2 usage or
//! hypothesis error.

pub mod format;

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use unirep::arith::Field;
use unirep::bch::{bch_components, denominator_lcm, dynkin_projection};
use unirep::hopf::{ExponentMatrix, Variable};
use unirep::rep::random::random_layer_data;
use unirep::rep::{
    audit_structure_lemmas, construct_from_layers, decompose_to_layers, verify_chi_relations, verify_comodule,
    verify_group_law_pointwise, LemmaOptions, PointwiseMode, RepError, Report, Representation, CONSTRUCT_REGIME,
    DECOMPOSE_REGIME,
};
use unirep::splitting::{brute_solve_yz, occurrence_report, solve_yz};

use format::{parse_layer_file, parse_rep_file, write_layer_file, write_rep_file, BodyFormat, FormatError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Largest degree `bch` will expand.
pub const MAX_BCH_DEGREE: usize = 10;
/// Largest number of `(Y, Z)` pairs `audit-splittings` will search.
pub const MAX_SPLITTING_PAIRS: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Parser)]
#[command(name = "unirep", version, about = "Representations of unipotent upper-triangular groups in prime characteristic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a representation file from a layer file.
    Construct(ConstructArgs),
    /// Check a representation file.
    Verify(VerifyArgs),
    /// Recover the Frobenius layers of a representation file.
    Decompose(DecomposeArgs),
    /// Generate random layers, construct, decompose and compare.
    Roundtrip(RoundtripArgs),
    /// Print the homogeneous components of log(e^x e^y).
    Bch(BchArgs),
    /// Check the L/R occurrence pattern and the unique-solution property.
    AuditSplittings(AuditArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Layer file, or `-` for standard input.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "chi")]
    pub format: BodyFormat,
    /// Write the representation here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Representation file, or `-` for standard input.
    pub input: PathBuf,
    /// Symbolic coproduct and counit identities (the default check).
    #[arg(long)]
    pub comodule: bool,
    /// Group law at points: `exhaustive` or `sampled:N`.
    #[arg(long, value_parser = parse_pointwise)]
    pub pointwise: Option<PointwiseArg>,
    /// Nilpotency and bracket relations of the layer images.
    #[arg(long)]
    pub chi_relations: bool,
    /// Factorization, digit formula and carrying audits.
    #[arg(long)]
    pub lemmas: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Representation file, or `-` for standard input.
    pub input: PathBuf,
    /// Write the layer file here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub p: u64,
    /// Number of Frobenius layers (at least one).
    #[arg(long, default_value_t = 1)]
    pub layers: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Body format used for the file round trip.
    #[arg(long, value_enum, default_value = "chi")]
    pub format: BodyFormat,
}

#[derive(Debug, Args)]
pub struct BchArgs {
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub n: usize,
    /// Entry bound for `Y` and `Z`; the exhaustive search allows one more.
    #[arg(long, default_value_t = 1)]
    pub bound: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointwiseArg {
    Exhaustive,
    Sampled(usize),
}

fn parse_pointwise(s: &str) -> Result<PointwiseArg, String> {
    if s == "exhaustive" {
        return Ok(PointwiseArg::Exhaustive);
    }
    s.strip_prefix("sampled:")
        .and_then(|n| n.parse().ok())
        .map(PointwiseArg::Sampled)
        .ok_or_else(|| format!("expected `exhaustive` or `sampled:N`, got `{s}`"))
}

/// Where report lines go.
struct Sink<'a> {
    out: &'a mut dyn Write,
    findings: usize,
}

impl Sink<'_> {
    fn line(&mut self, value: &Value) -> io::Result<()> {
        writeln!(self.out, "{value}")
    }

    fn report(&mut self, r: &Report) -> io::Result<()> {
        for f in &r.findings {
            writeln!(self.out, "{}", serde_json::to_string(f).expect("plain data serializes"))?;
        }
        self.findings += r.findings.len();
        let mut summary = json!({
            "summary": r.check,
            "checked": r.checked,
            "findings": r.findings.len(),
            "passed": r.passed(),
        });
        if !r.notes.is_empty() {
            summary["notes"] = json!(r.notes);
        }
        self.line(&summary)
    }

    fn exit_code(&self) -> i32 {
        if self.findings == 0 {
            EXIT_PASS
        } else {
            EXIT_FINDINGS
        }
    }
}

fn regime_line(n: usize, d: usize, p: u64) -> Value {
    let holds = |bound: usize| p == 0 || p >= bound as u64;
    json!({
        "regime": {
            "n": n,
            "d": d,
            "p": p,
            "construct": CONSTRUCT_REGIME,
            "construct_holds": holds(n.max(d)),
            "decompose": DECOMPOSE_REGIME,
            "decompose_holds": holds(n.max(2 * d)),
        }
    })
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn read_rep(path: &Path) -> Result<Representation, CliError> {
    parse_rep_file(&read_input(path)?).map_err(|source| CliError::Format { path: path.display().to_string(), source })
}

/// Data goes to `--output` if given, else to `out`; reports then go to the
/// other stream.
fn emit_data<'a>(
    text: &str,
    output: Option<&Path>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
) -> Result<&'a mut dyn Write, CliError> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            Ok(out)
        }
        None => {
            out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
            Ok(err)
        }
    }
}

fn io_failure(source: io::Error) -> CliError {
    CliError::Io { path: "<report stream>".into(), source }
}

fn construct(args: &ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_input(&args.input)?;
    let data = parse_layer_file(&text).map_err(|source| CliError::Format { path: args.input.display().to_string(), source })?;
    let regime = regime_line(data.ambient_size(), data.dimension(), data.characteristic());
    let r = construct_from_layers(&data)?;
    let reports = emit_data(&write_rep_file(&r, args.format), args.output.as_deref(), out, err)?;
    let mut sink = Sink { out: reports, findings: 0 };
    sink.line(&regime).map_err(io_failure)?;
    sink.line(&json!({"summary": "construct", "layers": data.layer_count(), "support": r.chi().support_len(), "passed": true}))
        .map_err(io_failure)?;
    Ok(EXIT_PASS)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let r = read_rep(&args.input)?;
    let mut sink = Sink { out, findings: 0 };
    sink.line(&regime_line(r.ambient_size(), r.dimension(), r.characteristic())).map_err(io_failure)?;
    let any = args.pointwise.is_some() || args.chi_relations || args.lemmas;
    if args.comodule || !any {
        sink.report(&verify_comodule(&r)).map_err(io_failure)?;
    }
    if let Some(arg) = args.pointwise {
        let mode = match arg {
            PointwiseArg::Exhaustive => PointwiseMode::Exhaustive,
            PointwiseArg::Sampled(count) => PointwiseMode::Sampled { count, seed: args.seed },
        };
        sink.report(&verify_group_law_pointwise(&r, mode)?).map_err(io_failure)?;
    }
    if args.chi_relations {
        sink.report(&verify_chi_relations(&r)?).map_err(io_failure)?;
    }
    if args.lemmas {
        sink.report(&audit_structure_lemmas(&r, LemmaOptions::default())?).map_err(io_failure)?;
    }
    Ok(sink.exit_code())
}

fn decompose(args: &DecomposeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let r = read_rep(&args.input)?;
    let regime = regime_line(r.ambient_size(), r.dimension(), r.characteristic());
    let (layers, report) = decompose_to_layers(&r)?;
    let reports = emit_data(&write_layer_file(&layers), args.output.as_deref(), out, err)?;
    let mut sink = Sink { out: reports, findings: 0 };
    sink.line(&regime).map_err(io_failure)?;
    sink.report(&report).map_err(io_failure)?;
    Ok(sink.exit_code())
}

fn roundtrip(args: &RoundtripArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.layers == 0 {
        return Err(CliError::Usage("--layers must be at least 1".into()));
    }
    if args.n < 2 || args.d < 1 {
        return Err(CliError::Usage(format!("need n >= 2 and d >= 1, got n = {}, d = {}", args.n, args.d)));
    }
    let field = Field::from_characteristic(args.p).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut sink = Sink { out, findings: 0 };
    sink.line(&regime_line(args.n, args.d, args.p)).map_err(io_failure)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let data = random_layer_data(args.n, field, args.d, args.layers, &mut rng);
    let r = construct_from_layers(&data)?;
    let (layers, decomposition) = decompose_to_layers(&r)?;
    let text = write_rep_file(&r, args.format);
    let reparsed = parse_rep_file(&text).map_err(|source| CliError::Format { path: "<generated>".into(), source })?;
    let mut report = Report::new("roundtrip");
    report.absorb(decomposition);
    report.expect(
        layers == data.trimmed(),
        "layer-recovery",
        || format!("seed {}", args.seed),
        || "decomposition equals the generated layers".into(),
        || "layers differ".into(),
    );
    report.expect(
        reparsed == r && write_rep_file(&reparsed, args.format) == text,
        "file-round-trip",
        || format!("seed {}", args.seed),
        || "parse(write(r)) = r".into(),
        || "representation changed".into(),
    );
    sink.report(&report).map_err(io_failure)?;
    sink.line(&json!({
        "roundtrip": {
            "n": args.n,
            "d": args.d,
            "p": args.p,
            "layers": data.trimmed().layer_count(),
            "seed": args.seed,
            "exact_layer_recovery": layers == data.trimmed(),
        }
    }))
    .map_err(io_failure)?;
    Ok(sink.exit_code())
}

fn bch(args: &BchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.max_degree == 0 || args.max_degree > MAX_BCH_DEGREE {
        return Err(CliError::Usage(format!("--max-degree must lie in 1..={MAX_BCH_DEGREE}")));
    }
    let mut sink = Sink { out, findings: 0 };
    let mut report = Report::new("dynkin-fixes-components");
    for (k, pm) in bch_components(args.max_degree).iter().enumerate() {
        let m = k + 1;
        let fixed = dynkin_projection(pm).map(|e| &e == pm).unwrap_or(false);
        report.expect(fixed, "dynkin-fixes-component", || format!("P_{m}"), || "phi(P_m) = P_m".into(), || "differs".into());
        sink.line(&json!({
            "m": m,
            "terms": pm.len(),
            "denominator_lcm": denominator_lcm(pm).to_string(),
            "dynkin_fixed": fixed,
            "P": pm.to_string(),
        }))
        .map_err(io_failure)?;
    }
    sink.report(&report).map_err(io_failure)?;
    Ok(sink.exit_code())
}

fn audit_splittings(args: &AuditArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let n = args.n;
    if n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let slots = Variable::all(n).count() as u32;
    let pairs = (args.bound + 1).checked_pow(slots).filter(|&c| c <= MAX_SPLITTING_PAIRS);
    let Some(pairs) = pairs else {
        return Err(CliError::Usage(format!("(bound + 1)^{slots} pairs exceed the limit of {MAX_SPLITTING_PAIRS}")));
    };
    let mut sink = Sink { out, findings: 0 };
    sink.report(&occurrence_report(n)).map_err(io_failure)?;
    let mut report = Report::new("unique-solution");
    let vars: Vec<Variable> = Variable::all(n).collect();
    let base = args.bound + 1;
    for code in 0..pairs {
        // one digit per coordinate: top-row digits fill Z, the rest fill Y
        let (mut y, mut z) = (ExponentMatrix::zero(n), ExponentMatrix::zero(n));
        let mut rest = code;
        for v in &vars {
            let digit = rest % base;
            rest /= base;
            if v.i == 1 {
                z.set(v.i, v.j, digit);
            } else {
                y.set(v.i, v.j, digit);
            }
        }
        let closed = solve_yz(&y, &z).map_err(|e| CliError::Usage(e.to_string()))?;
        let found = brute_solve_yz(&y, &z, args.bound + 1).map_err(|e| CliError::Usage(e.to_string()))?;
        report.expect(
            found.len() == 1 && found[0] == closed,
            "unique-solution",
            || format!("Y = {y}, Z = {z}"),
            || format!("exactly [{closed}]"),
            || format!("{} solution(s): [{}]", found.len(), found.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")),
        );
    }
    sink.report(&report).map_err(io_failure)?;
    Ok(sink.exit_code())
}

/// Run a parsed command.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Construct(a) => construct(a, out, err),
        Command::Verify(a) => verify(a, out),
        Command::Decompose(a) => decompose(a, out, err),
        Command::Roundtrip(a) => roundtrip(a, out),
        Command::Bch(a) => bch(a, out),
        Command::AuditSplittings(a) => audit_splittings(a, out),
    }
}

/// Parse `argv` (program name first), run, and return the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": e.to_string() }));
            EXIT_ERROR
        }
    }
}
