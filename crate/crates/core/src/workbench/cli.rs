//! `silmbench` command line. [`run`] returns the process exit code: 0 on
//! success, 2 for usage errors and unreadable inputs, 1 for failed strict
//! validation and other runtime errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use super::io::{records, write_records};
use super::plot::{report_svg, reports_csv};
use super::{
    validate_file, CorpusRecord, PairRecord, RecordError, Schema, ScoreRecord, StructureRecord, ValidationReport,
};
use crate::formal_lang::{generate, make_splits, GenConfig, LanguageKind, LanguageSpec, Sequence, Side, SplitConfig, SplitSize};
use crate::metrics::{
    annotation_similarity, annotation_similarity_corpus, consistency_across, evolution, head_diagnostics,
    triviality_profile, Averaging, BracketOptions, DiagnosticOptions, MetricOptions, MetricReport, StructureSet,
};
use crate::minimal_pairs::{
    build_benchmark, BenchmarkConfig, DistanceBuckets, PerturbError, PerturbOptions, ScoreFile, Subtask,
};

#[derive(Debug, Parser)]
#[command(name = "silmbench", version, about = "Dyck corpora, minimal-pair benchmarks and induced-structure metrics")]
struct Cli {
    /// Seed for every random choice
    #[arg(long, global = true, help_heading = "Global options", default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, help_heading = "Global options")]
    threads: Option<usize>,
    /// Fail on the first malformed or invalid input record
    #[arg(long, global = true, help_heading = "Global options")]
    strict: bool,
    /// Print reports as JSON
    #[arg(long, global = true, help_heading = "Global options")]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a corpus and write train, validation and generalization splits
    Generate(GenerateArgs),
    /// Build a minimal-pair benchmark from a corpus file
    Perturb(PerturbArgs),
    /// Evaluate induced structures
    EvalStruct(EvalArgs),
    /// Head-matrix confidence diagnostics
    Diagnose(DiagnoseArgs),
    /// Score a minimal-pair benchmark from per-sentence scores
    ScoreMp(ScoreArgs),
    /// Write CSV tables and SVG charts for report files
    Plot(PlotArgs),
    /// Check record files line by line
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct LangArgs {
    /// dyck-u, dyck-<k>, or dyck-k together with --k
    #[arg(long)]
    lang: String,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 7)]
    max_depth: usize,
    /// Maximum training sequence length
    #[arg(long, default_value_t = 96)]
    max_len: usize,
    /// Maximum length-generalization sequence length
    #[arg(long, default_value_t = 192)]
    max_len_gen: usize,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    lang: LangArgs,
    /// Training tokens to produce
    #[arg(long, default_value_t = 1_000_000)]
    tokens: usize,
    #[arg(long, default_value_t = 0.5)]
    p_open: f64,
    #[arg(long, default_value_t = 2)]
    min_len: usize,
    /// Validation size: a token count, or a fraction such as 0.01
    #[arg(long, default_value = "100000")]
    validation: String,
    /// Length-generalization size in tokens, or a fraction of the pool
    #[arg(long, default_value = "100000")]
    generalization: String,
    /// Write gzip-compressed files
    #[arg(long)]
    gzip: bool,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Open,
    Close,
}

#[derive(Debug, Args)]
struct PerturbArgs {
    #[command(flatten)]
    lang: LangArgs,
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated subset of bracketswap, randomswap, typemismatch
    #[arg(long, value_delimiter = ',')]
    subtasks: Option<Vec<String>>,
    #[arg(long)]
    pairs_per_subtask: Option<usize>,
    #[arg(long)]
    per_bucket: Option<usize>,
    /// Distance bucket lower bounds
    #[arg(long, default_value = "2,3,5,9,17")]
    buckets: String,
    #[arg(long, default_value_t = 64)]
    max_attempts: usize,
    #[arg(long, value_enum, default_value_t = SideArg::Close)]
    mismatch_side: SideArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    Consistency,
    Triviality,
    Evolution,
    Gold,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AvgArg {
    Micro,
    Macro,
}

impl From<AvgArg> for Averaging {
    fn from(a: AvgArg) -> Self {
        match a {
            AvgArg::Micro => Averaging::Micro,
            AvgArg::Macro => Averaging::Macro,
        }
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    metric: MetricArg,
    /// Structure record files; records are grouped by model and step
    #[arg(long, num_args = 1.., required = true)]
    structures: Vec<PathBuf>,
    /// Corpus file whose gold structures are the reference (gold)
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Structure file holding reference annotations (gold)
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = AvgArg::Macro)]
    dependency_averaging: AvgArg,
    #[arg(long, value_enum, default_value_t = AvgArg::Micro)]
    constituency_averaging: AvgArg,
    /// Count the whole-sentence bracket
    #[arg(long)]
    include_whole_sentence: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    #[arg(long, num_args = 1.., required = true)]
    structures: Vec<PathBuf>,
    #[arg(long, default_value_t = 0.6)]
    threshold: f64,
    #[arg(long, default_value_t = 0.17)]
    probe: f64,
    #[arg(long, default_value_t = 0.9)]
    percentile: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Pair records
    #[arg(long)]
    benchmark: PathBuf,
    /// Score records
    #[arg(long)]
    scores: PathBuf,
    #[arg(long, default_value = "2,3,5,9,17")]
    buckets: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Report files written with --out
    #[arg(long, num_args = 1.., required = true)]
    reports: Vec<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    schema: String,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Invalid(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invalid(_) | CliError::Runtime(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) | CliError::Runtime(m) => m,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

struct Ctx<'a> {
    seed: u64,
    strict: bool,
    json: bool,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

impl Ctx<'_> {
    fn warn(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "warning: {msg}");
    }

    fn print(&mut self, text: &str) -> Result<(), CliError> {
        self.out.write_all(text.as_bytes()).map_err(runtime)
    }
}

/// Parses `args` (program name first) and runs the command, printing to
/// stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout(), &mut io::stderr())
}

pub fn run_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    let mut ctx = Ctx {
        seed: cli.seed,
        strict: cli.strict,
        json: cli.json,
        out,
        err,
    };
    let result = match cli.threads {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &mut ctx)),
            Err(e) => Err(runtime(e)),
        },
        None => dispatch(&cli.command, &mut ctx),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<i32, CliError> {
    match cmd {
        Command::Generate(a) => cmd_generate(a, ctx),
        Command::Perturb(a) => cmd_perturb(a, ctx),
        Command::EvalStruct(a) => cmd_eval(a, ctx),
        Command::Diagnose(a) => cmd_diagnose(a, ctx),
        Command::ScoreMp(a) => cmd_score(a, ctx),
        Command::Plot(a) => cmd_plot(a, ctx),
        Command::Validate(a) => cmd_validate(a, ctx),
    }
}

impl LangArgs {
    fn spec(&self) -> Result<LanguageSpec, CliError> {
        let kind = match (self.lang.as_str(), self.k) {
            ("dyck-k" | "dyck_k", Some(k)) => LanguageKind::DyckK { k },
            ("dyck-k" | "dyck_k", None) => return Err(usage("--lang dyck-k needs --k")),
            (name, k) => {
                let kind: LanguageKind = name.parse().map_err(usage)?;
                match (kind, k) {
                    (LanguageKind::DyckK { k: a }, Some(b)) if a != b => {
                        return Err(usage(format!("--lang {name} conflicts with --k {b}")))
                    }
                    (LanguageKind::DyckU, Some(_)) => return Err(usage("--k does not apply to dyck-u")),
                    _ => kind,
                }
            }
        };
        LanguageSpec {
            kind,
            max_depth: self.max_depth,
            max_len_train: self.max_len,
            max_len_gen: self.max_len_gen,
        }
        .validated()
        .map_err(usage)
    }
}

fn parse_size(s: &str) -> Result<SplitSize, CliError> {
    if s.contains('.') {
        let f: f64 = s.parse().map_err(|_| usage(format!("bad split size {s:?}")))?;
        if !(0.0..1.0).contains(&f) {
            return Err(usage(format!("split fraction {f} must lie in [0, 1)")));
        }
        Ok(SplitSize::Fraction(f))
    } else {
        s.parse().map(SplitSize::Tokens).map_err(|_| usage(format!("bad split size {s:?}")))
    }
}

/// Reads every record of `path`. Malformed lines abort in strict mode and
/// are skipped with a warning otherwise.
fn load<T: DeserializeOwned>(path: &Path, ctx: &mut Ctx) -> Result<Vec<(usize, T)>, CliError> {
    let iter = records::<T>(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (line, rec) in iter {
        match rec {
            Ok(r) => out.push((line, r)),
            Err(e) => skip_or_fail(ctx, e.at(path, line))?,
        }
    }
    Ok(out)
}

fn skip_or_fail(ctx: &mut Ctx, e: RecordError) -> Result<(), CliError> {
    if ctx.strict {
        Err(CliError::Invalid(e.to_string()))
    } else {
        ctx.warn(format!("skipping {e}"));
        Ok(())
    }
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(runtime)?;
    }
    let mut text = serde_json::to_string_pretty(value).map_err(runtime)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn emit_reports(ctx: &mut Ctx, reports: &[MetricReport], out: Option<&Path>) -> Result<i32, CliError> {
    if let Some(path) = out {
        match reports {
            [one] => write_json(path, one)?,
            many => write_json(path, many)?,
        }
    }
    if ctx.json {
        let mut text = match reports {
            [one] => serde_json::to_string_pretty(one),
            many => serde_json::to_string_pretty(many),
        }
        .map_err(runtime)?;
        text.push('\n');
        ctx.print(&text)?;
    } else {
        for r in reports {
            let mut text = r.to_text();
            if let Some(src) = r.sources.first() {
                text = text.replacen('\n', &format!(" ({} step {})\n", src.model, src.step), 1);
            }
            ctx.print(&text)?;
        }
    }
    Ok(0)
}

fn cmd_generate(a: &GenerateArgs, ctx: &mut Ctx) -> Result<i32, CliError> {
    let spec = a.lang.spec()?;
    let validation = parse_size(&a.validation)?;
    let generalization = parse_size(&a.generalization)?;
    let train_target = match validation {
        SplitSize::Tokens(n) => a.tokens + n,
        SplitSize::Fraction(f) => (a.tokens as f64 / (1.0 - f)).ceil() as usize,
    };
    let train_cfg = GenConfig::new(ctx.seed, train_target, (a.min_len, spec.max_len_train)).with_p_open(a.p_open);
    let gen_target = match generalization {
        SplitSize::Tokens(n) => n,
        SplitSize::Fraction(f) => (train_target as f64 * f).round() as usize,
    };
    let gen_cfg = GenConfig::new(ctx.seed.wrapping_add(1), gen_target, (spec.max_len_train + 1, spec.max_len_gen))
        .with_p_open(a.p_open)
        .with_id_prefix(format!("{}-gen", spec.name()));

    let mut sequences = generate(&spec, &train_cfg).map_err(usage)?.sequences;
    if spec.max_len_gen > spec.max_len_train && gen_target > 0 {
        sequences.extend(generate(&spec, &gen_cfg).map_err(usage)?.sequences);
    }
    let split_cfg = SplitConfig {
        seed: ctx.seed,
        validation,
        generalization,
    };
    let splits = make_splits(&sequences, &spec, &split_cfg);

    let ext = if a.gzip { "jsonl.gz" } else { "jsonl" };
    for (name, seqs) in [
        ("train", &splits.train),
        ("validation", &splits.validation),
        ("generalization", &splits.length_generalization),
    ] {
        let recs: Vec<CorpusRecord> = seqs.iter().map(CorpusRecord::from_sequence).collect();
        let path = a.out_dir.join(format!("{name}.{ext}"));
        write_records(&path, &recs).map_err(|e| runtime(format!("{}: {e}", path.display())))?;
    }
    let (t, v, g) = splits.token_counts();
    let summary = serde_json::json!({
        "language": spec,
        "train_generation": train_cfg,
        "generalization_generation": gen_cfg,
        "splits": split_cfg,
        "sequences": {
            "train": splits.train.len(),
            "validation": splits.validation.len(),
            "generalization": splits.length_generalization.len(),
        },
        "tokens": { "train": t, "validation": v, "generalization": g },
        "version": env!("CARGO_PKG_VERSION"),
    });
    write_json(&a.out_dir.join("config.json"), &summary)?;
    if ctx.json {
        ctx.print(&format!("{}\n", serde_json::to_string_pretty(&summary).map_err(runtime)?))?;
    } else {
        ctx.print(&format!(
            "{}: train {} seqs / {t} tokens, validation {} / {v}, generalization {} / {g}\n",
            spec.name(),
            splits.train.len(),
            splits.validation.len(),
            splits.length_generalization.len()
        ))?;
    }
    Ok(0)
}

fn load_corpus(path: &Path, spec: &LanguageSpec, ctx: &mut Ctx) -> Result<Vec<Sequence>, CliError> {
    let mut out = Vec::new();
    for (line, rec) in load::<CorpusRecord>(path, ctx)? {
        match rec.to_sequence(spec) {
            Ok(s) => out.push(s),
            Err(e) => skip_or_fail(ctx, e.at(path, line))?,
        }
    }
    Ok(out)
}

fn cmd_perturb(a: &PerturbArgs, ctx: &mut Ctx) -> Result<i32, CliError> {
    let spec = a.lang.spec()?;
    let subtasks = match &a.subtasks {
        None => None,
        Some(names) => Some(
            names
                .iter()
                .map(|n| n.trim().parse::<Subtask>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?,
        ),
    };
    let buckets: DistanceBuckets = a.buckets.parse().map_err(usage)?;
    let cfg = BenchmarkConfig {
        seed: ctx.seed,
        subtasks,
        per_subtask: a.pairs_per_subtask,
        per_bucket: a.per_bucket,
        buckets,
        perturb: PerturbOptions {
            max_attempts: a.max_attempts,
            mismatch_side: match a.mismatch_side {
                SideArg::Open => Side::Open,
                SideArg::Close => Side::Close,
            },
        },
    };
    crate::minimal_pairs::resolve_subtasks(&spec, cfg.subtasks.as_deref()).map_err(usage)?;
    let corpus = load_corpus(&a.corpus, &spec, ctx)?;
    let bench = build_benchmark(&corpus, &spec, &cfg).map_err(|e| match e {
        PerturbError::UnsupportedSubtask { .. } => usage(e),
        other => runtime(other),
    })?;
    let recs: Vec<PairRecord> = bench.pairs.iter().map(PairRecord::from_pair).collect();
    write_records(&a.out, &recs).map_err(|e| runtime(format!("{}: {e}", a.out.display())))?;

    let mut per: BTreeMap<&str, usize> = BTreeMap::new();
    for p in &bench.pairs {
        *per.entry(p.subtask.name()).or_default() += 1;
    }
    for s in &bench.shortfalls {
        ctx.warn(format!(
            "{}{}: wanted {}, built {}",
            s.subtask,
            s.bucket.as_ref().map(|b| format!(" distance {b}")).unwrap_or_default(),
            s.wanted,
            s.got
        ));
    }
    if ctx.json {
        let summary = serde_json::json!({
            "pairs": bench.pairs.len(),
            "per_subtask": per,
            "shortfalls": bench.shortfalls,
            "skipped": bench.skipped,
            "config": cfg,
        });
        ctx.print(&format!("{}\n", serde_json::to_string_pretty(&summary).map_err(runtime)?))?;
    } else {
        let parts: Vec<String> = per.iter().map(|(k, v)| format!("{k} {v}")).collect();
        ctx.print(&format!("{} pairs ({})\n", bench.pairs.len(), parts.join(", ")))?;
    }
    Ok(0)
}

/// Structure sets keyed by (model, step).
fn load_sets(paths: &[PathBuf], ctx: &mut Ctx) -> Result<Vec<StructureSet>, CliError> {
    let mut sets: BTreeMap<(String, u64), StructureSet> = BTreeMap::new();
    for path in paths {
        for (line, rec) in load::<StructureRecord>(path, ctx)? {
            let s = match rec.to_structure() {
                Ok(s) => s,
                Err(e) => {
                    skip_or_fail(ctx, e.at(path, line))?;
                    continue;
                }
            };
            let set = sets
                .entry((rec.model.clone(), rec.step))
                .or_insert_with(|| StructureSet::new(rec.provenance(), s.kind()));
            if let Err(e) = set.insert(rec.id.clone(), s) {
                skip_or_fail(ctx, RecordError::Invalid(e.to_string()).at(path, line))?;
            }
        }
    }
    if sets.is_empty() {
        return Err(CliError::Runtime("no structures were read".into()));
    }
    Ok(sets.into_values().collect())
}

fn by_model(sets: Vec<StructureSet>) -> BTreeMap<String, Vec<StructureSet>> {
    let mut out: BTreeMap<String, Vec<StructureSet>> = BTreeMap::new();
    for s in sets {
        out.entry(s.provenance.model.clone()).or_default().push(s);
    }
    out
}

fn cmd_eval(a: &EvalArgs, ctx: &mut Ctx) -> Result<i32, CliError> {
    let opts = MetricOptions {
        brackets: BracketOptions {
            exclude_whole_sentence: !a.include_whole_sentence,
        },
        dependency_averaging: a.dependency_averaging.into(),
        constituency_averaging: a.constituency_averaging.into(),
    };
    let sets = load_sets(&a.structures, ctx)?;
    let reports: Vec<MetricReport> = match a.metric {
        MetricArg::Triviality => sets.iter().map(|s| triviality_profile(s, &opts)).collect::<Result<_, _>>().map_err(runtime)?,
        MetricArg::Evolution => by_model(sets)
            .values()
            .map(|series| evolution(series, &opts))
            .collect::<Result<_, _>>()
            .map_err(runtime)?,
        MetricArg::Consistency => {
            let models = by_model(sets);
            let series: Vec<&Vec<StructureSet>> = models.values().collect();
            let [sa, sb] = series.as_slice() else {
                return Err(usage(format!(
                    "consistency compares two models, found {}",
                    models.len()
                )));
            };
            vec![consistency_across(sa, sb, &opts).map_err(runtime)?]
        }
        MetricArg::Gold => match (&a.corpus, &a.reference) {
            (Some(path), None) => {
                let mut corpus = Vec::new();
                for (line, rec) in load::<CorpusRecord>(path, ctx)? {
                    match rec.to_gold_sequence() {
                        Ok(s) => corpus.push(s),
                        Err(e) => skip_or_fail(ctx, e.at(path, line))?,
                    }
                }
                sets.iter()
                    .map(|s| annotation_similarity_corpus(s, &corpus, &opts))
                    .collect::<Result<_, _>>()
                    .map_err(runtime)?
            }
            (None, Some(path)) => {
                let mut refs = load_sets(std::slice::from_ref(path), ctx)?;
                if refs.len() != 1 {
                    return Err(usage("the reference file must hold a single model and step"));
                }
                let reference = refs.pop().expect("one set");
                sets.iter()
                    .map(|s| annotation_similarity(s, &reference, &opts))
                    .collect::<Result<_, _>>()
                    .map_err(runtime)?
            }
            _ => return Err(usage("--metric gold needs exactly one of --corpus or --reference")),
        },
    };
    emit_reports(ctx, &reports, a.out.as_deref())
}

fn cmd_diagnose(a: &DiagnoseArgs, ctx: &mut Ctx) -> Result<i32, CliError> {
    let opts = DiagnosticOptions {
        confident_threshold: a.threshold,
        uniform_probe: a.probe,
        percentile: a.percentile,
    };
    let sets = load_sets(&a.structures, ctx)?;
    let reports = sets
        .iter()
        .map(|s| head_diagnostics(s, &opts))
        .collect::<Result<Vec<_>, _>>()
        .map_err(runtime)?;
    emit_reports(ctx, &reports, a.out.as_deref())
}

fn cmd_score(a: &ScoreArgs, ctx: &mut Ctx) -> Result<i32, CliError> {
    let buckets: DistanceBuckets = a.buckets.parse().map_err(usage)?;
    let mut metas = Vec::new();
    for (line, rec) in load::<PairRecord>(&a.benchmark, ctx)? {
        match rec.check() {
            Ok(()) => metas.push(rec.meta()),
            Err(e) => skip_or_fail(ctx, e.at(&a.benchmark, line))?,
        }
    }
    let mut scores = ScoreFile::new();
    for (line, rec) in load::<ScoreRecord>(&a.scores, ctx)? {
        if let Err(e) = scores.insert(rec.id, rec.variant, rec.score) {
            skip_or_fail(ctx, RecordError::Invalid(e.to_string()).at(&a.scores, line))?;
        }
    }
    let report = crate::minimal_pairs::score_benchmark(&metas, &scores, &buckets).map_err(runtime)?;
    emit_reports(ctx, std::slice::from_ref(&report), a.out.as_deref())
}

fn read_reports(path: &Path) -> Result<Vec<MetricReport>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let parsed = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|r| vec![r])
    };
    parsed.map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn cmd_plot(a: &PlotArgs, ctx: &mut Ctx) -> Result<i32, CliError> {
    let mut reports = Vec::new();
    for path in &a.reports {
        reports.extend(read_reports(path)?);
    }
    fs::create_dir_all(&a.out_dir).map_err(runtime)?;
    fs::write(a.out_dir.join("reports.csv"), reports_csv(&reports)).map_err(runtime)?;
    for (i, r) in reports.iter().enumerate() {
        let name = format!("{i:02}_{}.svg", r.metric);
        fs::write(a.out_dir.join(&name), report_svg(r)).map_err(runtime)?;
    }
    ctx.print(&format!(
        "wrote reports.csv and {} chart(s) to {}\n",
        reports.len(),
        a.out_dir.display()
    ))?;
    Ok(0)
}

fn cmd_validate(a: &ValidateArgs, ctx: &mut Ctx) -> Result<i32, CliError> {
    let schema: Schema = a.schema.parse().map_err(usage)?;
    let mut results: Vec<(String, ValidationReport)> = Vec::new();
    for path in &a.files {
        let report = validate_file(path, schema).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        results.push((path.display().to_string(), report));
    }
    let clean = results.iter().all(|(_, r)| r.is_clean());
    if ctx.json {
        let map: BTreeMap<&str, &ValidationReport> = results.iter().map(|(p, r)| (p.as_str(), r)).collect();
        ctx.print(&format!("{}\n", serde_json::to_string_pretty(&map).map_err(runtime)?))?;
    } else {
        for (path, r) in &results {
            for d in &r.diagnostics {
                ctx.print(&format!("{path}:{d}\n"))?;
            }
            ctx.print(&format!("{path}: {} of {} records valid\n", r.valid, r.records))?;
        }
    }
    if ctx.strict && !clean {
        return Err(CliError::Invalid("validation failed".into()));
    }
    Ok(0)
}
