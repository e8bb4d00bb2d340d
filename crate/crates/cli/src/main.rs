mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use persistdist::dimdist::{dimension_distance, dimension_function, DimensionDistance, GridFunction};
use persistdist::intersection::{intersect_components, is_valid};
use persistdist::interleaving::interleaving_distance_with;
use persistdist::io::{parse, GridBlock, ModuleDocument};
use persistdist::oracle::{oracle_bottleneck, oracle_distance_with, OracleConfig, OracleError, DEFAULT_MAX_COMPONENTS, MAX_MATCHING_SUMMANDS};
use persistdist::random::{random_staircase, rng};
use persistdist::bottleneck::bottleneck_distance_with;
use persistdist::{Execution, ExtendedScalar, IntervalModule, Rational, StaircaseInterval};

use render::{Frame, FIRST, INVALID, SECOND, VALID};

#[derive(Parser)]
#[command(name = "persistdist", version, about = "Exact distances between 2-parameter interval persistence modules")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate documents.
    Validate { files: Vec<PathBuf> },
    /// Interleaving distance between two single-interval modules.
    Interleaving { a: String, b: String },
    /// Bottleneck distance between two interval decomposable modules.
    Bottleneck { a: String, b: String },
    /// Dimension distances between two grid functions.
    Dimdist {
        f: String,
        g: String,
        /// Sampling grid for documents without values: SHAPE[:ORIGIN[:SPACING]],
        /// e.g. 17x17:0,0:1/2.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Cross-check the fast algorithms against the brute-force oracle.
    OracleCheck {
        a: Option<String>,
        b: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COMPONENTS)]
        max_components: usize,
    },
    /// Write an SVG of one module, or of A with B shifted by --shift and
    /// the overlap components coloured by validity.
    Render {
        a: String,
        b: Option<String>,
        #[arg(long)]
        shift: Option<String>,
        /// Clipping frame x0,y0,x1,y1 for infinite coordinates.
        #[arg(long)]
        frame: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failures that map to their own exit status.
#[derive(Debug)]
enum Failure {
    Validation(String),
    SizeLimit(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Validation(m) | Failure::SizeLimit(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

fn validation(msg: impl Into<String>) -> anyhow::Error {
    Failure::Validation(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Validation(_) => 2,
            Failure::SizeLimit(_) => 3,
        };
    }
    if err.downcast_ref::<OracleError>().is_some() {
        return 3;
    }
    1
}

/// Honours PERSISTDIST_THREADS: 1 forces sequential execution, larger
/// values size the worker pool.
fn execution() -> Result<Execution> {
    let Ok(v) = std::env::var("PERSISTDIST_THREADS") else {
        return Ok(Execution::default());
    };
    let n: usize = v.trim().parse().map_err(|_| anyhow!("PERSISTDIST_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        bail!("PERSISTDIST_THREADS must be a positive integer, got 0");
    }
    if n == 1 {
        return Ok(Execution::Sequential);
    }
    #[cfg(feature = "parallel")]
    {
        // Another pool may already exist in tests; that is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(Execution::default())
}

fn load(path: &Path) -> Result<ModuleDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).map_err(|e| validation(format!("{}: {e}", path.display())))
}

/// `file.json` names the first module of a document, `file.json#name` a
/// module by name.
fn split_spec(spec: &str) -> (&str, Option<&str>) {
    match spec.rsplit_once('#') {
        Some((p, n)) if !Path::new(spec).exists() => (p, Some(n)),
        _ => (spec, None),
    }
}

fn pick(doc: &ModuleDocument, path: &str, name: Option<&str>) -> Result<Option<IntervalModule>> {
    match name {
        Some(n) => match doc.module(n) {
            Some(m) => Ok(Some(m.clone())),
            None => Err(validation(format!("{path}: no module named {n:?}"))),
        },
        None => Ok(doc.modules.first().map(|m| m.module.clone())),
    }
}

fn load_module(spec: &str) -> Result<(ModuleDocument, IntervalModule)> {
    let (path, name) = split_spec(spec);
    let doc = load(Path::new(path))?;
    let module = pick(&doc, path, name)?.ok_or_else(|| validation(format!("{path}: document has no modules")))?;
    Ok((doc, module))
}

fn single(spec: &str) -> Result<StaircaseInterval> {
    let (_, m) = load_module(spec)?;
    match <[StaircaseInterval; 1]>::try_from(m.summands) {
        Ok([s]) => Ok(s),
        Err(v) => Err(validation(format!(
            "{spec}: interleaving takes a module with exactly one interval, found {}; use bottleneck for direct sums",
            v.len()
        ))),
    }
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string(v).expect("output serializes"));
}

#[derive(Serialize)]
struct DistanceOut {
    distance: String,
}

#[derive(Serialize)]
struct BottleneckOut {
    distance: String,
    matching: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    unmatched_left: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    unmatched_right: Vec<usize>,
}

fn cmd_validate(files: &[PathBuf], json: bool) -> Result<()> {
    if files.is_empty() {
        bail!("no files given");
    }
    let mut summary = Vec::new();
    for f in files {
        let doc = load(f)?;
        let intervals: usize = doc.modules.iter().map(|m| m.module.len()).sum();
        summary.push(serde_json::json!({
            "file": f.display().to_string(),
            "modules": doc.modules.len(),
            "intervals": intervals,
            "grid": doc.grid.is_some(),
        }));
        if !json {
            println!("{}: ok, {} modules, {intervals} intervals{}", f.display(), doc.modules.len(), if doc.grid.is_some() { ", grid" } else { "" });
        }
    }
    if json {
        print_json(&summary);
    }
    Ok(())
}

fn cmd_interleaving(a: &str, b: &str, json: bool, exec: Execution) -> Result<()> {
    let d = interleaving_distance_with(&single(a)?, &single(b)?, exec);
    if json {
        print_json(&DistanceOut { distance: d.to_string() });
    } else {
        println!("{d}");
    }
    Ok(())
}

fn cmd_bottleneck(a: &str, b: &str, json: bool, exec: Execution) -> Result<()> {
    let (_, ms) = load_module(a)?;
    let (_, ns) = load_module(b)?;
    let r = bottleneck_distance_with(&ms, &ns, exec);
    let out = BottleneckOut {
        distance: r.distance.to_string(),
        matching: r.matching.pairs.iter().map(|&(i, j)| [i, j]).collect(),
        unmatched_left: r.matching.unmatched_left,
        unmatched_right: r.matching.unmatched_right,
    };
    if json {
        print_json(&out);
        return Ok(());
    }
    println!("{}", out.distance);
    let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let pairs: Vec<String> = out.matching.iter().map(|[i, j]| format!("{i}-{j}")).collect();
    println!("matched: {}", pairs.join(" "));
    if !out.unmatched_left.is_empty() {
        println!("unmatched left: {}", list(&out.unmatched_left));
    }
    if !out.unmatched_right.is_empty() {
        println!("unmatched right: {}", list(&out.unmatched_right));
    }
    Ok(())
}

fn parse_grid_flag(text: &str) -> Result<GridBlock> {
    let mut parts = text.splitn(3, ':');
    let shape = parts
        .next()
        .unwrap_or_default()
        .split('x')
        .map(|t| t.trim().parse::<usize>().ok().filter(|&k| k > 0))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| validation(format!("--grid: bad shape in {text:?}")))?;
    let rational = |t: &str| match t.trim().parse::<ExtendedScalar>() {
        Ok(ExtendedScalar::Finite(r)) => Ok(r),
        _ => Err(validation(format!("--grid: bad number {t:?}"))),
    };
    let origin = parts.next().map(|o| o.split(',').map(rational).collect::<Result<Vec<_>>>()).transpose()?;
    let spacing = parts.next().map(rational).transpose()?;
    if origin.as_ref().is_some_and(|o| o.len() != shape.len()) {
        return Err(validation("--grid: origin needs one coordinate per axis"));
    }
    if spacing.as_ref().is_some_and(|s| *s <= Rational::from_integer(0.into())) {
        return Err(validation("--grid: spacing must be positive"));
    }
    Ok(GridBlock { shape, origin, spacing, values: None })
}

/// The grid function of a document together with its spacing: stored
/// values if present, otherwise the first module sampled on the grid.
fn grid_function(spec: &str, flag: Option<&GridBlock>) -> Result<(GridFunction, Rational)> {
    let (path, name) = split_spec(spec);
    let doc = load(Path::new(path))?;
    let module = pick(&doc, path, name)?;
    let block = flag.or(doc.grid.as_ref()).ok_or_else(|| validation(format!("{spec}: no grid block; pass --grid")))?;
    if flag.is_none() {
        if let Some(values) = &block.values {
            return Ok((values.clone(), block.spacing_or_one()));
        }
    }
    let module = module.ok_or_else(|| validation(format!("{spec}: nothing to sample")))?;
    let f = dimension_function(&module, &block.shape, &block.origin_or_zero(), &block.spacing_or_one())
        .map_err(|e| validation(format!("{spec}: {e}")))?;
    Ok((f, block.spacing_or_one()))
}

fn scaled(d: Option<usize>, spacing: &Rational) -> String {
    match d {
        Some(k) => ExtendedScalar::Finite(spacing * Rational::from_integer(k.into())).to_string(),
        None => ExtendedScalar::PosInf.to_string(),
    }
}

fn cmd_dimdist(f: &str, g: &str, grid: Option<&str>, json: bool) -> Result<()> {
    let flag = grid.map(parse_grid_flag).transpose()?;
    let (ff, sf) = grid_function(f, flag.as_ref())?;
    let (gg, sg) = grid_function(g, flag.as_ref())?;
    if sf != sg {
        return Err(validation(format!("grid spacings differ: {} vs {}", ExtendedScalar::Finite(sf), ExtendedScalar::Finite(sg))));
    }
    let DimensionDistance { d_minus, d_plus, d_zero } = dimension_distance(&ff, &gg).map_err(|e| validation(e.to_string()))?;
    let (dm, dp, dz) = (scaled(d_minus, &sf), scaled(d_plus, &sf), scaled(d_zero, &sf));
    if json {
        print_json(&serde_json::json!({ "d_minus": dm, "d_plus": dp, "d_zero": dz }));
    } else {
        println!("d_minus {dm}\nd_plus {dp}\nd_zero {dz}");
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckOut {
    checked: usize,
    mismatches: Vec<String>,
}

fn cmd_oracle_check(
    files: Option<(&str, &str)>,
    seed: u64,
    trials: usize,
    max_components: usize,
    json: bool,
    exec: Execution,
) -> Result<()> {
    let cfg = OracleConfig { max_components, exec };
    let mut out = CheckOut { checked: 0, mismatches: Vec::new() };
    let mut check_pair = |label: String, m: &StaircaseInterval, n: &StaircaseInterval| -> Result<()> {
        let fast = interleaving_distance_with(m, n, exec);
        let slow = oracle_distance_with(m, n, &cfg).map_err(|e| Failure::SizeLimit(format!("{label}: {e}")))?;
        out.checked += 1;
        if fast != slow {
            out.mismatches.push(format!("{label}: interleaving {fast}, oracle {slow}"));
        }
        Ok(())
    };
    match files {
        Some((a, b)) => {
            let (_, ms) = load_module(a)?;
            let (_, ns) = load_module(b)?;
            for (i, m) in ms.summands.iter().enumerate() {
                for (j, n) in ns.summands.iter().enumerate() {
                    check_pair(format!("pair ({i}, {j})"), m, n)?;
                }
            }
            if ms.len() + ns.len() > MAX_MATCHING_SUMMANDS {
                return Err(Failure::SizeLimit(format!(
                    "{} summands exceed the matching enumeration limit of {MAX_MATCHING_SUMMANDS}",
                    ms.len() + ns.len()
                ))
                .into());
            }
            let fast = bottleneck_distance_with(&ms, &ns, exec).distance;
            let slow = oracle_bottleneck(&ms, &ns)?;
            out.checked += 1;
            if fast != slow {
                out.mismatches.push(format!("bottleneck: fast {fast}, oracle {slow}"));
            }
        }
        None => {
            let mut r = rng(seed);
            for t in 0..trials {
                let m = random_staircase(&mut r, 8, 3);
                let n = random_staircase(&mut r, 8, 3);
                check_pair(format!("trial {t}"), &m, &n)?;
            }
        }
    }
    if json {
        print_json(&out);
    } else {
        for m in &out.mismatches {
            println!("mismatch {m}");
        }
        println!("checked {}, {} mismatches", out.checked, out.mismatches.len());
    }
    if out.mismatches.is_empty() {
        Ok(())
    } else {
        bail!("{} mismatches against the oracle", out.mismatches.len())
    }
}

fn cmd_render(a: &str, b: Option<&str>, shift: Option<&str>, frame: Option<&str>, output: Option<&Path>) -> Result<()> {
    let (_, ms) = load_module(a)?;
    let delta = match shift {
        Some(t) => match t.parse::<ExtendedScalar>() {
            Ok(ExtendedScalar::Finite(r)) => r,
            _ => return Err(validation(format!("--shift: bad number {t:?}"))),
        },
        None => Rational::from_integer(0.into()),
    };
    let ns = b.map(load_module).transpose()?.map(|(_, n)| n);
    let shifted: Vec<StaircaseInterval> = ns.iter().flat_map(|n| n.summands.iter().map(|s| s.shift(&delta))).collect();
    let mut overlaps = Vec::new();
    if ns.is_some() {
        for m in &ms.summands {
            for n in &shifted {
                for q in intersect_components(m, n) {
                    let style = if is_valid(&q, m, n) { VALID } else { INVALID };
                    overlaps.push((q, style));
                }
            }
        }
    }
    let mut layers: Vec<(&StaircaseInterval, render::Style)> = ms.summands.iter().map(|s| (s, FIRST)).collect();
    layers.extend(shifted.iter().map(|s| (s, SECOND)));
    layers.extend(overlaps.iter().map(|(q, st)| (q, *st)));
    let frame = match frame {
        Some(t) => Frame::parse(t).map_err(|e| validation(format!("--frame: {e}")))?,
        None => Frame::fit(layers.iter().map(|(s, _)| *s)),
    };
    let svg = render::svg(&frame, &layers);
    match output {
        Some(p) => fs::write(p, svg).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{svg}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let exec = execution()?;
    match &cli.command {
        Command::Validate { files } => cmd_validate(files, cli.json),
        Command::Interleaving { a, b } => cmd_interleaving(a, b, cli.json, exec),
        Command::Bottleneck { a, b } => cmd_bottleneck(a, b, cli.json, exec),
        Command::Dimdist { f, g, grid } => cmd_dimdist(f, g, grid.as_deref(), cli.json),
        Command::OracleCheck { a, b, seed, trials, max_components } => {
            let files = match (a, b) {
                (Some(a), Some(b)) => Some((a.as_str(), b.as_str())),
                (None, None) => None,
                _ => bail!("oracle-check takes two files or none"),
            };
            cmd_oracle_check(files, *seed, *trials, *max_components, cli.json, exec)
        }
        Command::Render { a, b, shift, frame, output } => {
            cmd_render(a, b.as_deref(), shift.as_deref(), frame.as_deref(), output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
