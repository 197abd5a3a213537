//! The `nlfg` command-line tool.
//!
//! Every subcommand first resolves its config file and flags into an
//! [`Invocation`], a complete and explicit parameter set, and then runs
//! it. The invocation, the tool version and a SHA-256 digest of the
//! output make up the [`RunManifest`] written by `--manifest`; `replay`
//! runs a manifest again and checks the digest.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{
    berlekamp_massey, compare_schemes, measure_distribution, reconcile, DistributionTable, Format, MeasureOptions,
    Reconciliation, Report, DEFAULT_MAX_STATES,
};
use crate::error::{spec_err, Error, Result};
use crate::gf::{default_primitive, is_primitive, FieldSpec, FieldSpecJson, Poly, WordVector};
use crate::nlfg::{GeneratorJson, ProductMode};
use crate::oracle::{self, CountParams};
use crate::registers::RegisterJson;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "nlfg", version, about = "Nonlinear feedforward generators over finite fields")]
struct Cli {
    /// Write a run manifest (parameters, version, output digest) here.
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the first COUNT generator outputs, one per line.
    Gen(GenArgs),
    /// Full-period output distribution checked against the closed forms.
    Dist(DistArgs),
    /// Field-product and element-wise generators side by side.
    Compare(CompareArgs),
    /// Linear complexity by Berlekamp-Massey.
    Lc(LcArgs),
    /// Evaluate a closed-form count.
    Oracle(OracleArgs),
    /// Test a polynomial for primitivity, or find one.
    Primitivity(PrimitivityArgs),
    /// Re-run a manifest and compare output digests.
    Replay(ReplayArgs),
}

#[derive(Args, Debug, Default)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: Option<u32>,
    /// q = p^n.
    #[arg(long)]
    n: Option<usize>,
    /// Primitive polynomial of degree n over GF(p).
    #[arg(long)]
    inner_poly: Option<String>,
    /// Word width (entries per delay block).
    #[arg(long)]
    r: Option<usize>,
    /// Primitive polynomial of degree r over GF(q); required when r > 1.
    #[arg(long)]
    outer_poly: Option<String>,
}

#[derive(Args, Debug, Default)]
struct GeneratorArgs {
    /// Generator config (JSON). Flags override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(flatten)]
    field: FieldArgs,
    /// Number of delay blocks.
    #[arg(long = "L", value_name = "L")]
    l: Option<usize>,
    /// Scalar feedback taps a0,...,a(L-1).
    #[arg(long)]
    taps: Option<String>,
    /// Primitive characteristic polynomial (over GF(q^r) when r > 1).
    #[arg(long)]
    feedback_poly: Option<String>,
    /// Initial stacked state, comma-separated.
    #[arg(long)]
    seed: Option<String>,
    /// Number of multipliers, using pairs (0,1), (2,3), ...
    #[arg(long)]
    m: Option<usize>,
    /// Multiplier inputs as i:j pairs, e.g. 0:1,2:4.
    #[arg(long)]
    pairs: Option<String>,
    /// field-product or element-wise.
    #[arg(long)]
    mode: Option<ProductMode>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    #[arg(long, default_value_t = 10)]
    count: u64,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Largest q^(rL) accepted for a full-period run.
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    #[command(flatten)]
    bounds: BoundArgs,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug, Default)]
struct ParamArgs {
    /// Parameter file: {"q", "r", "L", "m", "kappa"}. Flags override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long = "L", value_name = "L")]
    l: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    kappa: Option<u32>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    bounds: BoundArgs,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum LcSource {
    /// The generator output.
    Nlfg,
    /// The register output (block 0), bypassing the multipliers.
    Register,
}

#[derive(Args, Debug)]
struct LcArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    /// Read GF(q) symbols (whitespace or comma separated) from standard
    /// input instead; the field comes from --p/--n/--inner-poly.
    #[arg(long)]
    stdin: bool,
    /// Prefix length; default 4·r·L for generated sequences.
    #[arg(long)]
    length: Option<usize>,
    /// Word coordinate to analyze when r > 1.
    #[arg(long, default_value_t = 0)]
    component: usize,
    #[arg(long, value_enum, default_value = "nlfg")]
    source: LcSource,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Formula {
    #[value(name = "partition_count", alias = "partition-count")]
    PartitionCount,
    Psi,
    #[value(name = "n_scalar", alias = "n-scalar")]
    NScalar,
    #[value(name = "n_proposed", alias = "n-proposed")]
    NProposed,
    #[value(name = "n_elementwise", alias = "n-elementwise")]
    NElementwise,
    Deviation,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    formula: Formula,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct PrimitivityArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Polynomial to test.
    #[arg(long, conflicts_with = "find")]
    poly: Option<String>,
    /// Degree of a primitive polynomial to look up or search for.
    #[arg(long)]
    find: Option<usize>,
    /// Work over GF(q^r) instead of GF(q).
    #[arg(long)]
    word: bool,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    manifest_file: PathBuf,
}

/// A fully resolved command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Invocation {
    Gen {
        generator: GeneratorJson,
        count: u64,
        format: Format,
    },
    Dist {
        generator: GeneratorJson,
        max_states: u64,
        threads: usize,
        format: Format,
    },
    Compare {
        params: CountParams,
        max_states: u64,
        threads: usize,
        format: Format,
    },
    Lc {
        input: LcInput,
        format: Format,
    },
    Oracle {
        formula: String,
        params: OracleParams,
        format: Format,
    },
    Primitivity {
        field: FieldSpecJson,
        word: bool,
        poly: Option<String>,
        find: Option<usize>,
        format: Format,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum LcInput {
    Nlfg { generator: GeneratorJson, component: usize, length: usize },
    Register { register: RegisterJson, component: usize, length: usize },
    Symbols { field: FieldSpecJson, symbols: Vec<u32> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub invocation: Invocation,
    /// Hex SHA-256 of the primary output.
    pub output_sha256: String,
}

impl RunManifest {
    pub fn new(invocation: Invocation, output: &str) -> Self {
        RunManifest {
            tool: "nlfg".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            invocation,
            output_sha256: digest(output),
        }
    }
}

pub fn digest(output: &str) -> String {
    Sha256::digest(output.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Result of running an invocation: the primary output and whether every
/// verification in it passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub verified: bool,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => EXIT_BOUND,
        Error::Mismatch(_) | Error::Internal(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            };
        }
    };
    match dispatch(cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    if let Command::Replay(args) = &cli.command {
        let manifest: RunManifest = serde_json::from_str(&fs::read_to_string(&args.manifest_file)?)?;
        let outcome = execute(&manifest.invocation)?;
        stdout.write_all(outcome.output.as_bytes())?;
        let got = digest(&outcome.output);
        if got != manifest.output_sha256 {
            writeln!(stderr, "error: output digest {got} differs from the manifest's {}", manifest.output_sha256)?;
            return Ok(EXIT_MISMATCH);
        }
        return Ok(if outcome.verified { EXIT_OK } else { EXIT_MISMATCH });
    }
    let invocation = resolve(cli.command, stdin)?;
    let outcome = execute(&invocation)?;
    stdout.write_all(outcome.output.as_bytes())?;
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest::new(invocation, &outcome.output);
        fs::write(path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    }
    Ok(if outcome.verified { EXIT_OK } else { EXIT_MISMATCH })
}

fn parse_list(text: &str) -> Result<Vec<u32>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("'{t}' is not a field element index"))))
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<[usize; 2]>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .trim()
                .split_once([':', '-'])
                .ok_or_else(|| Error::Parse(format!("pair '{t}' is not of the form i:j")))?;
            let idx = |s: &str| s.trim().parse().map_err(|_| Error::Parse(format!("bad index in pair '{t}'")));
            Ok([idx(a)?, idx(b)?])
        })
        .collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn field_json(base: Option<FieldSpecJson>, f: &FieldArgs) -> Result<FieldSpecJson> {
    let mut spec = match (base, f.p) {
        (Some(b), _) => b,
        (None, Some(p)) => FieldSpecJson { p, n: 1, inner_poly: None, r: 1, outer_poly: None },
        (None, None) => return spec_err("the field needs --p (or a config file)"),
    };
    if let Some(p) = f.p {
        if p != spec.p {
            spec.inner_poly = None;
        }
        spec.p = p;
    }
    if let Some(n) = f.n {
        spec.n = n;
    }
    if f.inner_poly.is_some() {
        spec.inner_poly = f.inner_poly.clone();
    }
    if let Some(r) = f.r {
        spec.r = r;
    }
    if f.outer_poly.is_some() {
        spec.outer_poly = f.outer_poly.clone();
    }
    Ok(spec)
}

impl GeneratorArgs {
    /// Config file overlaid with flags, before validation.
    fn merged(&self) -> Result<GeneratorJson> {
        let base: Option<GeneratorJson> = self.config.as_deref().map(read_json).transpose()?;
        let (reg_base, mut pairs, mut m, mut mode) = match base {
            Some(g) => (Some(g.register), g.pairs, g.m, g.mode),
            None => (None, None, None, ProductMode::FieldProduct),
        };
        let spec = field_json(reg_base.as_ref().map(|r| r.spec.clone()), &self.field)?;
        let mut register = match reg_base {
            Some(r) => RegisterJson { spec, ..r },
            None => RegisterJson {
                spec,
                l: self.l.ok_or_else(|| Error::Spec("the register needs --L (or a config file)".into()))?,
                taps: None,
                gains: None,
                feedback_poly: None,
                seed: None,
            },
        };
        if let Some(l) = self.l {
            register.l = l;
        }
        if self.taps.is_some() || self.feedback_poly.is_some() {
            register.taps = self.taps.as_deref().map(parse_list).transpose()?;
            register.feedback_poly = self.feedback_poly.clone();
            register.gains = None;
        }
        if let Some(s) = &self.seed {
            register.seed = Some(parse_list(s)?);
        }
        if let Some(p) = &self.pairs {
            pairs = Some(parse_pairs(p)?);
            m = None;
        } else if let Some(k) = self.m {
            m = Some(k);
            pairs = None;
        }
        if let Some(md) = self.mode {
            mode = md;
        }
        Ok(GeneratorJson { register, pairs, m, mode })
    }

    /// Validated and made explicit (taps or gains, seed, pairs).
    fn resolve(&self) -> Result<GeneratorJson> {
        let generator = self.merged()?.build()?;
        Ok(GeneratorJson::from_generator(&generator))
    }
}

impl ParamArgs {
    fn merged(&self) -> Result<OracleParams> {
        let mut p: OracleParams = match &self.config {
            Some(path) => read_json(path)?,
            None => OracleParams::default(),
        };
        p.q = self.q.or(p.q);
        p.r = self.r.or(p.r);
        p.l = self.l.or(p.l);
        p.m = self.m.or(p.m);
        p.kappa = self.kappa.or(p.kappa);
        Ok(p)
    }
}

impl OracleParams {
    fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
        v.ok_or_else(|| Error::Spec(format!("missing parameter {name}")))
    }

    fn count_params(&self) -> Result<CountParams> {
        CountParams::new(
            Self::need(self.q, "q")?,
            self.r.unwrap_or(1),
            Self::need(self.l, "L")?,
            Self::need(self.m, "m")?,
        )?
        .with_kappa(self.kappa.unwrap_or(0))
    }
}

fn resolve(command: Command, stdin: &mut dyn BufRead) -> Result<Invocation> {
    Ok(match command {
        Command::Gen(a) => Invocation::Gen { generator: a.generator.resolve()?, count: a.count, format: a.format },
        Command::Dist(a) => Invocation::Dist {
            generator: a.generator.resolve()?,
            max_states: a.bounds.max_states,
            threads: a.bounds.threads,
            format: a.format,
        },
        Command::Compare(a) => Invocation::Compare {
            params: a.params.merged()?.count_params()?,
            max_states: a.bounds.max_states,
            threads: a.bounds.threads,
            format: a.format,
        },
        Command::Lc(a) => {
            let input = if a.stdin {
                let field = field_json(None, &a.generator.field)?;
                let mut text = String::new();
                stdin.read_to_string(&mut text)?;
                let mut symbols = parse_list(&text)?;
                if let Some(n) = a.length {
                    symbols.truncate(n);
                }
                LcInput::Symbols { field, symbols }
            } else {
                let generator = a.generator.resolve()?;
                let r = generator.register.spec.r;
                let length = a.length.unwrap_or(4 * r * generator.register.l);
                if a.component >= r {
                    return spec_err(format!("component {} out of range for r = {r}", a.component));
                }
                match a.source {
                    LcSource::Nlfg => LcInput::Nlfg { generator, component: a.component, length },
                    LcSource::Register => {
                        LcInput::Register { register: generator.register, component: a.component, length }
                    }
                }
            };
            Invocation::Lc { input, format: a.format }
        }
        Command::Oracle(a) => Invocation::Oracle {
            formula: a.formula.to_possible_value().expect("no skipped variants").get_name().to_string(),
            params: a.params.merged()?,
            format: a.format,
        },
        Command::Primitivity(a) => {
            if a.poly.is_none() && a.find.is_none() {
                return spec_err("give --poly or --find");
            }
            Invocation::Primitivity {
                field: field_json(None, &a.field)?,
                word: a.word,
                poly: a.poly,
                find: a.find,
                format: a.format,
            }
        }
        Command::Replay(_) => unreachable!("handled by dispatch"),
    })
}

/// Runs a resolved invocation.
pub fn execute(inv: &Invocation) -> Result<Outcome> {
    match inv {
        Invocation::Gen { generator, count, format } => {
            let mut gen = generator.build()?;
            let outputs: Vec<WordVector> = (0..*count).map(|_| gen.step()).collect();
            let report = GenReport { generator: generator.clone(), outputs };
            Ok(Outcome { output: report.render(*format), verified: true })
        }
        Invocation::Dist { generator, max_states, threads, format } => {
            let gen = generator.build()?;
            let opts = MeasureOptions { max_states: *max_states, threads: *threads };
            let distribution = measure_distribution(&gen, &opts)?;
            let spec = gen.spec();
            let params =
                CountParams::new(spec.q() as u64, spec.r() as u32, gen.register().len() as u32, gen.assembly().m() as u32)?;
            let reconciliation = reconcile(&distribution, &params, gen.assembly().mode())?;
            let verified = reconciliation.pass;
            let report = DistReport { generator: generator.clone(), distribution, reconciliation };
            Ok(Outcome { output: report.render(*format), verified })
        }
        Invocation::Compare { params, max_states, threads, format } => {
            let opts = MeasureOptions { max_states: *max_states, threads: *threads };
            let cmp = compare_schemes(params, &opts)?;
            Ok(Outcome { output: cmp.render(*format), verified: cmp.pass() })
        }
        Invocation::Lc { input, format } => {
            let (field, seq) = lc_sequence(input)?;
            let report = berlekamp_massey(&seq, field.base())?;
            Ok(Outcome { output: report.render(*format), verified: true })
        }
        Invocation::Oracle { formula, params, format } => {
            let formula = Formula::from_str(formula, false).map_err(|e| Error::Parse(e.to_string()))?;
            let report = oracle_report(formula, params)?;
            Ok(Outcome { output: report.render(*format), verified: true })
        }
        Invocation::Primitivity { field, word, poly, find, format } => {
            let spec = FieldSpec::try_from(field.clone())?;
            let f = if *word { spec.word_field() } else { spec.base() };
            let (poly, primitive) = match (poly, find) {
                (Some(text), _) => {
                    let poly: Poly = text.parse()?;
                    poly.check_in(f)?;
                    let ok = is_primitive(&poly, f)?;
                    (poly, ok)
                }
                (None, Some(d)) => (default_primitive(f, *d)?, true),
                (None, None) => return spec_err("give --poly or --find"),
            };
            let report = PrimitivityReport { field_order: f.order() as u64, poly: poly.to_string(), primitive };
            Ok(Outcome { output: report.render(*format), verified: primitive })
        }
    }
}

fn lc_sequence(input: &LcInput) -> Result<(FieldSpec, Vec<u32>)> {
    Ok(match input {
        LcInput::Nlfg { generator, component, length } => {
            let mut gen = generator.build()?;
            let spec = gen.spec().clone();
            check_component(*component, spec.r())?;
            let seq = (0..*length).map(|_| gen.step().0[*component]).collect();
            (spec, seq)
        }
        LcInput::Register { register, component, length } => {
            let reg = register.build()?;
            check_component(*component, reg.width())?;
            (reg.spec().clone(), crate::analysis::component_sequence(&reg, *component, *length))
        }
        LcInput::Symbols { field, symbols } => (FieldSpec::try_from(field.clone())?, symbols.clone()),
    })
}

fn check_component(j: usize, r: usize) -> Result<()> {
    if j >= r {
        return spec_err(format!("component {j} out of range for r = {r}"));
    }
    Ok(())
}

#[derive(Serialize)]
struct GenReport {
    generator: GeneratorJson,
    outputs: Vec<WordVector>,
}

impl Report for GenReport {
    fn to_text(&self) -> String {
        self.outputs.iter().map(|v| format!("{v}\n")).collect()
    }

    fn to_csv(&self) -> String {
        let r = self.generator.register.spec.r;
        let header: Vec<String> = (0..r).map(|i| format!("e{i}")).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for v in &self.outputs {
            w.write_record(v.entries().iter().map(u32::to_string)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

#[derive(Serialize)]
struct DistReport {
    generator: GeneratorJson,
    distribution: DistributionTable,
    reconciliation: Reconciliation,
}

impl Report for DistReport {
    fn to_text(&self) -> String {
        self.reconciliation.to_text()
    }

    fn to_csv(&self) -> String {
        self.reconciliation.to_csv()
    }
}

#[derive(Serialize)]
struct OracleValue {
    label: String,
    value: String,
}

#[derive(Serialize)]
struct OracleReport {
    formula: Formula,
    params: OracleParams,
    values: Vec<OracleValue>,
}

impl Report for OracleReport {
    fn to_text(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|v| format!("{}: {}", v.label, v.value)).collect();
        parts.join(", ") + "\n"
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "value"]).expect("in-memory write");
        for v in &self.values {
            w.write_record([&v.label, &v.value]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

fn oracle_report(formula: Formula, params: &OracleParams) -> Result<OracleReport> {
    let value = |label: &str, v: String| OracleValue { label: label.into(), value: v };
    let scalar_only = || -> Result<(u64, u32)> {
        if params.r.is_some_and(|r| r != 1) {
            return spec_err("this formula takes q and m only; pass q^r as --q for a word field");
        }
        Ok((OracleParams::need(params.q, "q")?, OracleParams::need(params.m, "m")?))
    };
    let values = match formula {
        Formula::PartitionCount => {
            let (q, m) = scalar_only()?;
            if q < 2 {
                return spec_err("q must be at least 2");
            }
            vec![value("nonzero", oracle::partition_count(m, q)?.to_string())]
        }
        Formula::Psi => {
            let (q, m) = scalar_only()?;
            if q < 2 {
                return spec_err("q must be at least 2");
            }
            vec![
                value("nonzero", oracle::psi_m(m, q, false)?.to_string()),
                value("zero", oracle::psi_m(m, q, true)?.to_string()),
            ]
        }
        Formula::NScalar => {
            let p = params.count_params()?;
            vec![
                value("nonzero", oracle::n_scalar(&p, false)?.to_string()),
                value("zero", oracle::n_scalar(&p, true)?.to_string()),
            ]
        }
        Formula::NProposed => {
            let p = params.count_params()?;
            vec![
                value("nonzero", oracle::n_proposed(&p, false)?.to_string()),
                value("zero", oracle::n_proposed(&p, true)?.to_string()),
            ]
        }
        Formula::NElementwise => {
            let p = params.count_params()?;
            let kappas: Vec<u32> = match params.kappa {
                Some(k) => vec![k],
                None => (0..=p.r).collect(),
            };
            kappas
                .into_iter()
                .map(|k| Ok(value(&format!("kappa={k}"), oracle::n_elementwise_class(&p, k)?.to_string())))
                .collect::<Result<_>>()?
        }
        Formula::Deviation => {
            let p = params.count_params()?;
            vec![
                value("field-product", oracle::balance_deviation(&p)?.to_string()),
                value("element-wise", oracle::balance_deviation_elementwise(&p)?.to_string()),
            ]
        }
    };
    Ok(OracleReport { formula, params: params.clone(), values })
}

#[derive(Serialize)]
struct PrimitivityReport {
    field_order: u64,
    poly: String,
    primitive: bool,
}

impl Report for PrimitivityReport {
    fn to_text(&self) -> String {
        let verdict = if self.primitive { "primitive" } else { "not primitive" };
        format!("{} over GF({}): {verdict}\n", self.poly, self.field_order)
    }

    fn to_csv(&self) -> String {
        format!("field_order,poly,primitive\n{},{},{}\n", self.field_order, self.poly, self.primitive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("nlfg").chain(args.iter().copied()), &mut &b""[..], &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn psi_text() {
        let (code, out, _) = run_args(&["oracle", "--formula", "psi", "--m", "2", "--q", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "nonzero: 6, zero: 10\n");
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["gen", "--p", "2", "--r", "3", "--L", "5", "--m", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn bound_exit_3() {
        let (code, _, err) =
            run_args(&["dist", "--p", "2", "--L", "12", "--m", "2", "--max-states", "1000"]);
        assert_eq!(code, EXIT_BOUND);
        assert!(err.contains("max states 1000"));
    }

    #[test]
    fn pairs_parse() {
        assert_eq!(parse_pairs("0:1, 2-4").unwrap(), vec![[0, 1], [2, 4]]);
        assert!(parse_pairs("0").is_err());
        assert_eq!(parse_list("1, 0 1\n2").unwrap(), vec![1, 0, 1, 2]);
    }
}
