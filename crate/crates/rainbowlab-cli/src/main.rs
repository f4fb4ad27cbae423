//! Command line front end. Every subcommand prints one JSON report to
//! stdout: the command name, each input file with its digest, the outcome,
//! and the elapsed time as the only nondeterministic field. Exit code 0
//! means found/holds, 1 means not found/fails, 2 means the input or budget
//! was unusable.

mod formats;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use rainbowlab::geometry::{cayley_menger_det, squared_volume, PointSet};
use rainbowlab::pattern::{
    convexify, extract_pattern_homogeneous, ClassPattern, ExtractOutcome, ExtractStage,
    ExtractionRequest, Partition,
};
use rainbowlab::rainbow::{
    check_rainbow, classify_config, gen_general_position, gen_parallel_lines, max_rainbow_subset,
    ConfigViolation, RainbowMode, RainbowVerdict, RainbowViolation, SearchBudget, SearchMethod,
};
use rainbowlab::ramsey::{
    arrow_case_count, arrow_check, find_homogeneous, find_homogeneous_over, make_volume_coloring,
    ArrowQuery, Coloring, HomogeneityMethod,
};
use rainbowlab::skew::{
    build_skew_set, check_canonical, find_canonical_subset, BinaryWord, OrderType, SkewSet,
};

#[derive(Parser)]
#[command(
    name = "rainbowlab",
    version,
    about = "Exact rational toolkit for distinct-volume point configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Squared volume and bordered distance determinant of a point tuple
    Volume(VolumeArgs),
    /// Check the distinct-volume property at one arity
    CheckRainbow(CheckRainbowArgs),
    /// Search for a maximum subset with the distinct-volume property
    MaxRainbow(MaxRainbowArgs),
    /// Generate random points in general position
    GenPoints(GenPointsArgs),
    /// Generate classes of points on parallel lines
    GenLines(GenLinesArgs),
    /// Classify a partitioned configuration against the rainbow hierarchy
    ClassifyConfig(ClassifyConfigArgs),
    /// Color 2a-subsets of a point set by their internal volume relations
    MakeColoring(MakeColoringArgs),
    /// Find a homogeneous set, optionally relative to a parameter set
    FindHomog(FindHomogArgs),
    /// Decide a small arrow relation by exhaustive enumeration
    ArrowCheck(ArrowCheckArgs),
    /// Select a subset on which every class becomes convex
    Convexify(ConvexifyArgs),
    /// Extract a pattern-homogeneous subset with a certificate
    ExtractEhomog(ExtractEhomogArgs),
    /// Build the full-tree skew set of a given height
    SkewBuild(SkewBuildArgs),
    /// Validate a skew set and optionally check a coloring is canonical
    SkewCheck(SkewCheckArgs),
    /// Search for a canonical full-tree subset of a skew set
    SkewSearch(SkewSearchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Plain,
    Strong,
    Strict,
}

impl From<ModeArg> for RainbowMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Plain => RainbowMode::Plain,
            ModeArg::Strong => RainbowMode::Strong,
            ModeArg::Strict => RainbowMode::Strict,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HomogMethodArg {
    Exhaustive,
    Stepwise,
}

#[derive(Args)]
struct VolumeArgs {
    /// Point set file
    #[arg(long)]
    points: PathBuf,
    /// Comma-separated point indices; the whole set when omitted
    #[arg(long)]
    indices: Option<String>,
}

#[derive(Args)]
struct CheckRainbowArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    arity: usize,
    #[arg(long, value_enum)]
    mode: ModeArg,
}

#[derive(Args)]
struct MaxRainbowArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    arity: usize,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "exact")]
    method: MethodArg,
    /// Node cap for the exact search
    #[arg(long, default_value_t = 20_000_000)]
    max_nodes: u64,
    /// Ground set size cap for the exact search
    #[arg(long, default_value_t = 16)]
    max_exact_points: usize,
    /// Write the selected points as a point set file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenPointsArgs {
    #[arg(long)]
    count: usize,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenLinesArgs {
    /// Comma-separated class sizes, e.g. 4,4
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Write the class partition alongside the points
    #[arg(long)]
    classes_out: PathBuf,
}

#[derive(Args)]
struct ClassifyConfigArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    classes: PathBuf,
}

#[derive(Args)]
struct MakeColoringArgs {
    #[arg(long)]
    points: PathBuf,
    /// Half the subset size: 2a-subsets are colored using arities up to a
    #[arg(long)]
    arity: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FindHomogArgs {
    #[arg(long)]
    coloring: PathBuf,
    /// Required size of the homogeneous set
    #[arg(long)]
    size: usize,
    /// Search engine; ignored when --over is given
    #[arg(long, value_enum, default_value = "exhaustive")]
    method: HomogMethodArg,
    /// Comma-separated parameter set for relative homogeneity
    #[arg(long)]
    over: Option<String>,
}

#[derive(Args)]
struct ArrowCheckArgs {
    /// Ground set size
    #[arg(long)]
    n: usize,
    /// Required homogeneous set size
    #[arg(long)]
    m: usize,
    /// Arity of the colorings
    #[arg(long)]
    r: usize,
    /// Number of colors
    #[arg(long)]
    c: u32,
    /// Maximum parameter set size
    #[arg(long, default_value_t = 0)]
    p: usize,
    /// Case budget: colorings times parameter sets
    #[arg(long, default_value_t = 1 << 26)]
    budget: u64,
}

#[derive(Args)]
struct ConvexifyArgs {
    #[arg(long)]
    classes: PathBuf,
    /// How many classes must survive
    #[arg(long)]
    count: usize,
    /// Minimum surviving class size
    #[arg(long)]
    size: usize,
}

#[derive(Args)]
struct ExtractEhomogArgs {
    #[arg(long)]
    classes: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    /// How many classes must survive
    #[arg(long)]
    count: usize,
    /// Minimum surviving class size
    #[arg(long)]
    size: usize,
    /// Declared color budget; defaults to the coloring's own count
    #[arg(long)]
    colors: Option<u32>,
}

#[derive(Args)]
struct SkewBuildArgs {
    #[arg(long)]
    height: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SkewCheckArgs {
    #[arg(long)]
    words: PathBuf,
    /// Check that this coloring is canonical on the set
    #[arg(long)]
    coloring: Option<PathBuf>,
}

#[derive(Args)]
struct SkewSearchArgs {
    #[arg(long)]
    words: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    /// Height of the full tree to find: 2^height words
    #[arg(long)]
    height: usize,
    /// Candidate subset budget
    #[arg(long, default_value_t = 1 << 26)]
    budget: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("RAINBOWLAB_THREADS") {
        let threads: usize = raw
            .trim()
            .parse()
            .context("RAINBOWLAB_THREADS must be a positive integer")?;
        if threads == 0 {
            bail!("RAINBOWLAB_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the global thread pool")?;
    }
    Ok(())
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Volume(a) => cmd_volume(a),
        Command::CheckRainbow(a) => cmd_check_rainbow(a),
        Command::MaxRainbow(a) => cmd_max_rainbow(a),
        Command::GenPoints(a) => cmd_gen_points(a),
        Command::GenLines(a) => cmd_gen_lines(a),
        Command::ClassifyConfig(a) => cmd_classify_config(a),
        Command::MakeColoring(a) => cmd_make_coloring(a),
        Command::FindHomog(a) => cmd_find_homog(a),
        Command::ArrowCheck(a) => cmd_arrow_check(a),
        Command::Convexify(a) => cmd_convexify(a),
        Command::ExtractEhomog(a) => cmd_extract_ehomog(a),
        Command::SkewBuild(a) => cmd_skew_build(a),
        Command::SkewCheck(a) => cmd_skew_check(a),
        Command::SkewSearch(a) => cmd_skew_search(a),
    }
}

/// Accumulates the report fields; `finish` prints the JSON and nothing else
/// touches stdout.
struct Report {
    command: &'static str,
    start: Instant,
    inputs: Vec<Value>,
    outputs: Vec<Value>,
    extra: Map<String, Value>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            start: Instant::now(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            extra: Map::new(),
        }
    }

    fn read_file(&mut self, path: &Path) -> Result<String> {
        let bytes =
            std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(json!({
            "path": path.display().to_string(),
            "sha256": hex_digest(&bytes),
        }));
        String::from_utf8(bytes).with_context(|| format!("{} is not utf-8", path.display()))
    }

    fn write_file(&mut self, path: &Path, content: &str) -> Result<()> {
        std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.push(json!({
            "path": path.display().to_string(),
            "sha256": hex_digest(content.as_bytes()),
        }));
        Ok(())
    }

    fn set(&mut self, key: &str, value: Value) {
        self.extra.insert(key.to_string(), value);
    }

    fn finish(self, outcome: Value) -> u8 {
        let exit = match outcome.get("exit") {
            Some(Value::Number(n)) => n.as_u64().unwrap_or(0) as u8,
            _ => 0,
        };
        let mut outcome = outcome;
        if let Value::Object(map) = &mut outcome {
            map.remove("exit");
        }
        let mut map = self.extra;
        map.insert("command".into(), Value::String(self.command.into()));
        map.insert("inputs".into(), Value::Array(self.inputs));
        if !self.outputs.is_empty() {
            map.insert("outputs".into(), Value::Array(self.outputs));
        }
        map.insert("outcome".into(), outcome);
        map.insert(
            "elapsed_ms".into(),
            Value::from(self.start.elapsed().as_millis() as u64),
        );
        let report = Value::Object(map);
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        exit
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn indices_json(idxs: &[usize]) -> Value {
    Value::Array(idxs.iter().map(|&i| Value::from(i as u64)).collect())
}

fn violation_json(v: &RainbowViolation) -> Value {
    match v {
        RainbowViolation::EqualVolume { arity, first, second } => json!({
            "type": "equal_volume",
            "arity": arity,
            "first": indices_json(first),
            "second": indices_json(second),
        }),
        RainbowViolation::DegenerateSubset { arity, subset } => json!({
            "type": "degenerate_subset",
            "arity": arity,
            "subset": indices_json(subset),
        }),
        RainbowViolation::NotInFlat { witness } => json!({
            "type": "not_in_flat",
            "witness": indices_json(witness),
        }),
    }
}

fn verdict_json(v: &RainbowVerdict) -> Value {
    json!({
        "holds": v.holds,
        "arity": v.arity,
        "violation": v.violation.as_ref().map(violation_json).unwrap_or(Value::Null),
    })
}

fn pattern_json(p: &ClassPattern) -> Value {
    Value::Array(p.0.iter().map(|&x| Value::from(x as u64)).collect())
}

fn order_type_json(ot: &OrderType) -> Value {
    Value::Array(ot.0.iter().map(|&x| Value::from(x as u64)).collect())
}

fn load_points(report: &mut Report, path: &Path) -> Result<PointSet> {
    let text = report.read_file(path)?;
    formats::parse_point_set(&text)
}

fn load_partition(report: &mut Report, path: &Path) -> Result<Partition> {
    let text = report.read_file(path)?;
    formats::parse_partition(&text)
}

fn load_coloring(report: &mut Report, path: &Path) -> Result<Coloring> {
    let text = report.read_file(path)?;
    formats::parse_coloring(&text)
}

fn load_words(report: &mut Report, path: &Path) -> Result<Vec<BinaryWord>> {
    let text = report.read_file(path)?;
    formats::parse_words(&text)
}

fn cmd_volume(args: VolumeArgs) -> Result<u8> {
    let mut report = Report::new("volume");
    let ps = load_points(&mut report, &args.points)?;
    let indices: Vec<usize> = match &args.indices {
        Some(s) => formats::parse_index_list(s)?,
        None => (0..ps.len()).collect(),
    };
    if indices.is_empty() {
        bail!("need at least one index");
    }
    if indices.last().is_some_and(|&i| i >= ps.len()) {
        bail!("index out of range: the set has {} points", ps.len());
    }
    let tuple = ps.select(&indices);
    let sq = squared_volume(&tuple)?;
    let cm = cayley_menger_det(&tuple)?;
    let outcome = json!({
        "arity": indices.len(),
        "dim": ps.dim(),
        "indices": indices_json(&indices),
        "squared_volume": sq.value().to_string(),
        "cayley_menger_det": cm.to_string(),
        "degenerate": sq.is_zero(),
    });
    Ok(report.finish(outcome))
}

fn cmd_check_rainbow(args: CheckRainbowArgs) -> Result<u8> {
    let mut report = Report::new("check-rainbow");
    let ps = load_points(&mut report, &args.points)?;
    let verdict = check_rainbow(&ps, args.arity, args.mode.into())?;
    let mut outcome = verdict_json(&verdict);
    outcome["mode"] = json!(match args.mode {
        ModeArg::Plain => "plain",
        ModeArg::Strong => "strong",
        ModeArg::Strict => "strict",
    });
    outcome["exit"] = json!(u8::from(!verdict.holds));
    Ok(report.finish(outcome))
}

fn cmd_max_rainbow(args: MaxRainbowArgs) -> Result<u8> {
    let mut report = Report::new("max-rainbow");
    let ps = load_points(&mut report, &args.points)?;
    let budget = SearchBudget {
        max_exact_points: args.max_exact_points,
        max_nodes: args.max_nodes,
    };
    let method = match args.method {
        MethodArg::Exact => SearchMethod::Exact,
        MethodArg::Greedy => SearchMethod::Greedy,
    };
    let result = max_rainbow_subset(&ps, args.arity, args.mode.into(), method, &budget)?;
    report.set(
        "budget",
        json!({ "max_nodes": args.max_nodes, "nodes_used": result.nodes }),
    );
    if let Some(out) = &args.out {
        let subset = ps.subset(&result.indices);
        report.write_file(out, &formats::emit_point_set(&subset))?;
    }
    let outcome = json!({
        "indices": indices_json(&result.indices),
        "size": result.indices.len(),
        "verdict": verdict_json(&result.verdict),
    });
    Ok(report.finish(outcome))
}

fn cmd_gen_points(args: GenPointsArgs) -> Result<u8> {
    let mut report = Report::new("gen-points");
    report.set("seed", json!(args.seed));
    let ps = gen_general_position(args.count, args.dim, args.seed)?;
    report.write_file(&args.out, &formats::emit_point_set(&ps))?;
    let outcome = json!({
        "count": ps.len(),
        "dim": ps.dim(),
        "path": args.out.display().to_string(),
    });
    Ok(report.finish(outcome))
}

fn cmd_gen_lines(args: GenLinesArgs) -> Result<u8> {
    let mut report = Report::new("gen-lines");
    report.set("seed", json!(args.seed));
    let sizes = formats::parse_size_list(&args.sizes)?;
    let (ps, partition) = gen_parallel_lines(&sizes, args.dim, args.seed)?;
    report.write_file(&args.out, &formats::emit_point_set(&ps))?;
    report.write_file(&args.classes_out, &formats::emit_partition(&partition))?;
    let outcome = json!({
        "count": ps.len(),
        "dim": ps.dim(),
        "classes": partition.class_count(),
        "points_path": args.out.display().to_string(),
        "classes_path": args.classes_out.display().to_string(),
    });
    Ok(report.finish(outcome))
}

fn cmd_classify_config(args: ClassifyConfigArgs) -> Result<u8> {
    let mut report = Report::new("classify-config");
    let ps = load_points(&mut report, &args.points)?;
    let partition = load_partition(&mut report, &args.classes)?;
    let cfg = classify_config(&ps, &partition)?;
    let violations: Vec<Value> = cfg
        .violations
        .iter()
        .map(|v| match v {
            ConfigViolation::ClassNotStrict { class_index, violation } => json!({
                "type": "class_not_strict",
                "class_index": class_index,
                "violation": violation_json(violation),
            }),
            ConfigViolation::GlobalNotStrong { arity, violation } => json!({
                "type": "global_not_strong",
                "arity": arity,
                "violation": violation_json(violation),
            }),
        })
        .collect();
    let outcome = json!({
        "per_class_strict_level": cfg.per_class_strict_level,
        "a_star": cfg.a_star,
        "global_strong_level": cfg.global_strong_level,
        "conclusion_holds": cfg.conclusion_holds,
        "violations": violations,
        "exit": u8::from(!cfg.conclusion_holds),
    });
    Ok(report.finish(outcome))
}

fn cmd_make_coloring(args: MakeColoringArgs) -> Result<u8> {
    let mut report = Report::new("make-coloring");
    let ps = load_points(&mut report, &args.points)?;
    let vc = make_volume_coloring(&ps, args.arity)?;
    report.write_file(&args.out, &formats::emit_coloring(&vc.coloring))?;
    let outcome = json!({
        "n": vc.coloring.n(),
        "r": vc.coloring.r(),
        "colors": vc.coloring.c(),
        "path": args.out.display().to_string(),
    });
    Ok(report.finish(outcome))
}

fn cmd_find_homog(args: FindHomogArgs) -> Result<u8> {
    let mut report = Report::new("find-homog");
    let g = load_coloring(&mut report, &args.coloring)?;
    let found = match &args.over {
        Some(over) => {
            let params = formats::parse_index_list(over)?;
            find_homogeneous_over(&g, &params, args.size)?
        }
        None => {
            let method = match args.method {
                HomogMethodArg::Exhaustive => HomogeneityMethod::Exhaustive,
                HomogMethodArg::Stepwise => HomogeneityMethod::Stepwise,
            };
            find_homogeneous(&g, args.size, method)?
        }
    };
    let outcome = match &found {
        Some(idxs) => json!({
            "found": true,
            "indices": indices_json(idxs),
            "size": idxs.len(),
        }),
        None => json!({ "found": false, "indices": Value::Null, "exit": 1 }),
    };
    Ok(report.finish(outcome))
}

fn cmd_arrow_check(args: ArrowCheckArgs) -> Result<u8> {
    let mut report = Report::new("arrow-check");
    let query = ArrowQuery {
        n: args.n,
        m: args.m,
        r: args.r,
        c: args.c,
        p: args.p,
    };
    let cases = arrow_case_count(&query)?;
    report.set("budget", json!({ "limit": args.budget, "cases": cases as u64 }));
    let holds = arrow_check(&query, args.budget)?;
    let outcome = json!({
        "holds": holds,
        "n": args.n,
        "m": args.m,
        "r": args.r,
        "c": args.c,
        "p": args.p,
        "exit": u8::from(!holds),
    });
    Ok(report.finish(outcome))
}

fn cmd_convexify(args: ConvexifyArgs) -> Result<u8> {
    let mut report = Report::new("convexify");
    let partition = load_partition(&mut report, &args.classes)?;
    let found = convexify(&partition, args.count, args.size)?;
    let outcome = match &found {
        Some(idxs) => json!({
            "found": true,
            "indices": indices_json(idxs),
            "size": idxs.len(),
        }),
        None => json!({ "found": false, "indices": Value::Null, "exit": 1 }),
    };
    Ok(report.finish(outcome))
}

fn cmd_extract_ehomog(args: ExtractEhomogArgs) -> Result<u8> {
    let mut report = Report::new("extract-ehomog");
    let partition = load_partition(&mut report, &args.classes)?;
    let coloring = load_coloring(&mut report, &args.coloring)?;
    let request = ExtractionRequest {
        class_count: args.count,
        class_size: args.size,
        arity: coloring.r(),
        colors: args.colors.unwrap_or_else(|| coloring.c()),
    };
    let outcome = match extract_pattern_homogeneous(&partition, &coloring, &request)? {
        ExtractOutcome::Success(cert) => {
            let table: Vec<Value> = cert
                .table
                .iter()
                .map(|(p, c)| json!({ "pattern": pattern_json(p), "color": c }))
                .collect();
            let classes: Vec<Value> = cert.classes.iter().map(|c| indices_json(c)).collect();
            json!({
                "status": "success",
                "indices": indices_json(&cert.indices),
                "classes": classes,
                "table": table,
                "verified": cert.verified,
            })
        }
        ExtractOutcome::Failure(fail) => {
            let stage = match fail.stage {
                ExtractStage::Eligibility => json!({ "name": "eligibility" }),
                ExtractStage::ClassChain { class, level } => json!({
                    "name": "class_chain",
                    "class": class,
                    "level": level,
                }),
                ExtractStage::ClassSelection => json!({ "name": "class_selection" }),
                ExtractStage::Verification => json!({ "name": "verification" }),
            };
            json!({
                "status": "failure",
                "stage": stage,
                "detail": fail.detail,
                "exit": 1,
            })
        }
    };
    Ok(report.finish(outcome))
}

fn cmd_skew_build(args: SkewBuildArgs) -> Result<u8> {
    let mut report = Report::new("skew-build");
    let set = build_skew_set(args.height)?;
    report.write_file(&args.out, &formats::emit_words(set.words()))?;
    let outcome = json!({
        "height": args.height,
        "words": set.len(),
        "word_length": set.word(0).len(),
        "path": args.out.display().to_string(),
    });
    Ok(report.finish(outcome))
}

fn cmd_skew_check(args: SkewCheckArgs) -> Result<u8> {
    let mut report = Report::new("skew-check");
    let words = load_words(&mut report, &args.words)?;
    let set = match SkewSet::new(words) {
        Ok(set) => set,
        Err(e) => {
            let outcome = json!({
                "valid": false,
                "reason": e.to_string(),
                "exit": 1,
            });
            return Ok(report.finish(outcome));
        }
    };
    match &args.coloring {
        None => {
            let outcome = json!({
                "valid": true,
                "words": set.len(),
                "word_length": set.word(0).len(),
            });
            Ok(report.finish(outcome))
        }
        Some(path) => {
            let coloring = load_coloring(&mut report, path)?;
            let arity = coloring.r();
            let rep = check_canonical(&set, arity, &coloring)?;
            let outcome = if rep.canonical {
                let table: Vec<Value> = rep
                    .table
                    .iter()
                    .map(|(ot, c)| json!({ "order_type": order_type_json(ot), "color": c }))
                    .collect();
                json!({
                    "valid": true,
                    "canonical": true,
                    "arity": arity,
                    "table": table,
                })
            } else {
                let (first, second) = rep.counterexample.expect("non-canonical check has a counterexample");
                json!({
                    "valid": true,
                    "canonical": false,
                    "arity": arity,
                    "counterexample": {
                        "first": indices_json(&first),
                        "second": indices_json(&second),
                    },
                    "exit": 1,
                })
            };
            Ok(report.finish(outcome))
        }
    }
}

fn cmd_skew_search(args: SkewSearchArgs) -> Result<u8> {
    let mut report = Report::new("skew-search");
    let words = load_words(&mut report, &args.words)?;
    let set = SkewSet::new(words).context("input is not a valid skew set")?;
    let coloring = load_coloring(&mut report, &args.coloring)?;
    let arity = coloring.r();
    report.set("budget", json!({ "limit": args.budget }));
    let found = find_canonical_subset(&set, arity, &coloring, args.height, args.budget)?;
    let outcome = match &found {
        Some(idxs) => json!({
            "found": true,
            "indices": indices_json(idxs),
            "size": idxs.len(),
        }),
        None => json!({ "found": false, "indices": Value::Null, "exit": 1 }),
    };
    Ok(report.finish(outcome))
}
