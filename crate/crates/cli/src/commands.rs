use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use feedalloc::baselines::Threshold;
use feedalloc::bench::{run_suite, slots_cdf, summarize, write_rows, write_summary, BenchSuite, SuiteKind};
use feedalloc::generators::{generate, read_generator_config, GeneratorConfig, Scheme};
use feedalloc::io::{format_instance, parse_allocation, parse_allocation_pairs, read_instance, write_allocation};
use feedalloc::oracle::simulate_sessions;
use feedalloc::{
    decompose, expected_reward, reconstruct, relative_gap, solve, suffix_reward, Algorithm, AllocationError,
    ConfigError, Deadline, Execution, Mode, ParseError, ProblemInstance, SolveError, SolveOptions,
};

use crate::args::{BenchArgs, GenArgs, ModeArg, SlotsCdfArgs, SolveArgs, VerifyArgs};

/// A failed command and its exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Validation(String),
    Limit(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Limit(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Validation(m) => write!(f, "validation failed: {m}"),
            Failure::Limit(m) => write!(f, "{m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Io(e) => Failure::Io(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io(e) => Failure::Io(e.to_string()),
            ConfigError::Instance(e) => Failure::Validation(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::UnknownAlgorithm(_) => Failure::Usage(e.to_string()),
            SolveError::GuardExceeded(_) | SolveError::Timeout => Failure::Limit(e.to_string()),
        }
    }
}

impl From<AllocationError> for Failure {
    fn from(e: AllocationError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn open_out(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_instance_file(path: &Path) -> Result<ProblemInstance, Failure> {
    read_instance(path).map_err(|e| match e {
        ParseError::Io(io) => Failure::Io(format!("{}: {io}", path.display())),
        other => Failure::Validation(format!("{}: {other}", path.display())),
    })
}

fn time_limit(secs: Option<f64>) -> Result<Deadline, Failure> {
    match secs {
        None => Ok(Deadline::none()),
        Some(s) if s >= 0.0 && s.is_finite() => Ok(Deadline::after(Duration::from_secs_f64(s))),
        Some(s) => Err(Failure::Usage(format!("invalid time limit {s}"))),
    }
}

pub fn gen(args: GenArgs) -> Outcome {
    let mut cfg = match &args.config {
        Some(path) => read_generator_config(path)?,
        None => {
            let scheme = args.scheme.as_deref().ok_or_else(|| Failure::Usage("--scheme or --config is required".into()))?;
            GeneratorConfig { scheme: scheme.parse::<Scheme>()?, ..GeneratorConfig::default() }
        }
    };
    if let Some(s) = &args.scheme {
        cfg.scheme = s.parse()?;
    }
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(m) = args.m {
        cfg.m = m;
    }
    if let Some(q) = args.q {
        cfg.q = q;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(c) = args.c {
        cfg.big_reward = c;
    }
    cfg.integer_rewards |= args.integer;
    let inst = generate(&cfg)?;
    let mut out = open_out(args.out.as_deref())?;
    out.write_all(format_instance(&inst).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn parse_threshold(raw: &str) -> Result<Threshold, Failure> {
    if raw == "auto" {
        return Ok(Threshold::Auto);
    }
    raw.parse::<f64>()
        .ok()
        .filter(|t| t.is_finite())
        .map(Threshold::Fixed)
        .ok_or_else(|| Failure::Usage(format!("invalid threshold '{raw}', expected a number or 'auto'")))
}

pub fn solve_cmd(args: SolveArgs) -> Outcome {
    let name = match (&args.positional_algorithm, &args.algorithm) {
        (Some(a), Some(b)) if a != b => {
            return Err(Failure::Usage(format!("conflicting algorithms '{a}' and '{b}'")));
        }
        (Some(a), _) | (None, Some(a)) => a.clone(),
        (None, None) => return Err(Failure::Usage("no algorithm given".into())),
    };
    let algorithm: Algorithm = name.parse()?;
    let threshold = args.threshold.as_deref().map(parse_threshold).transpose()?;
    let deadline = time_limit(args.time_limit)?;
    let inst = read_instance_file(&args.instance)?;
    let report = solve(algorithm, &inst, &SolveOptions { k: args.k, threshold, deadline })?;

    let mut out = io::stdout().lock();
    writeln!(out, "algorithm       {}", report.algorithm)?;
    writeln!(out, "expected_reward {}", report.expected_reward)?;
    writeln!(out, "size            {}", report.size())?;
    writeln!(out, "seconds         {:.6}", report.elapsed_secs)?;
    if let Some(sessions) = args.simulate {
        simulate_report(&mut out, &inst, &report.allocation, report.expected_reward, sessions, args.seed)?;
    }
    if let Some(path) = &args.out {
        write_allocation(path, &report.allocation)?;
    }
    Ok(())
}

fn simulate_report(
    out: &mut impl Write,
    inst: &ProblemInstance,
    alloc: &feedalloc::Allocation,
    analytic: f64,
    sessions: usize,
    seed: u64,
) -> Outcome {
    if sessions == 0 {
        return Err(Failure::Usage("--simulate needs at least one session".into()));
    }
    let s = simulate_sessions(inst, alloc, sessions, seed);
    writeln!(out, "simulated_mean  {}", s.mean)?;
    writeln!(out, "std_error       {}", s.std_error)?;
    writeln!(out, "sessions        {}", s.sessions)?;
    writeln!(out, "within_3se      {}", if s.agrees_with(analytic, 3.0) { "yes" } else { "no" })?;
    Ok(())
}

fn load_suite(spec: &str) -> Result<BenchSuite, Failure> {
    if Path::new(spec).is_file() {
        return Ok(feedalloc::bench::read_suite(spec)?);
    }
    Ok(BenchSuite::preset(spec.parse::<SuiteKind>()?))
}

pub fn bench(args: BenchArgs) -> Outcome {
    let mut suite = load_suite(&args.suite)?;
    if let Some(seeds) = args.seed {
        suite.seeds = seeds;
    }
    if let Some(algs) = &args.algorithm {
        suite.algorithms = algs.iter().map(|a| a.trim().parse()).collect::<Result<_, SolveError>>()?;
    }
    if let Some(s) = &args.scheme {
        suite.schemes = vec![s.parse()?];
    }
    if let Some(n) = args.n {
        suite.base.n = n;
    }
    if let Some(m) = args.m {
        suite.ms = vec![m];
    }
    if let Some(q) = args.q {
        suite.qs = vec![q];
    }
    if let Some(k) = args.k {
        suite.ks = vec![Some(k)];
    }
    if let Some(t) = args.time_limit {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("invalid time limit {t}")));
        }
        suite.time_limit = Duration::from_secs_f64(t);
    }
    if suite.seeds.is_empty() || suite.algorithms.is_empty() {
        return Err(Failure::Usage("the suite has no runs".into()));
    }
    let exec = if args.sequential { Execution::Sequential } else { Execution::Auto };
    let rows = run_suite(&suite, exec)?;
    let summary = summarize(&rows);

    write_rows(open_out(args.out.as_deref())?, &rows)?;
    let summary_path = args.summary.clone().or_else(|| args.out.as_ref().map(|p| summary_path_for(p)));
    match summary_path {
        Some(p) => write_summary(File::create(p)?, &summary)?,
        None => {
            println!();
            write_summary(io::stdout().lock(), &summary)?;
        }
    }
    Ok(())
}

fn summary_path_for(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "bench".into());
    out.with_file_name(format!("{stem}.summary.csv"))
}

fn mode_of(arg: ModeArg) -> Mode {
    match arg {
        ModeArg::Matching => Mode::Matching,
        ModeArg::Mapping => Mode::Mapping,
    }
}

/// Largest relative gap between the suffix objective and its decomposition, over all `j`.
fn decomposition_residual(inst: &ProblemInstance, alloc: &feedalloc::Allocation) -> Result<f64, AllocationError> {
    let mut worst: f64 = 0.0;
    for j in 0..inst.num_slots() {
        let direct = suffix_reward(inst, alloc, j)?;
        let rebuilt = reconstruct(&decompose(inst, alloc, j)?);
        worst = worst.max(relative_gap(direct, rebuilt));
    }
    Ok(worst)
}

pub fn verify(args: VerifyArgs) -> Outcome {
    let inst = read_instance_file(&args.instance)?;
    let text = fs::read_to_string(&args.allocation)
        .map_err(|e| Failure::Io(format!("{}: {e}", args.allocation.display())))?;
    let alloc = parse_allocation(&inst, mode_of(args.mode), &text)
        .map_err(|e| Failure::Validation(format!("{}: {e}", args.allocation.display())))?;
    let reward = expected_reward(&inst, &alloc)?;
    let residual = decomposition_residual(&inst, &alloc)?;
    let mut out = io::stdout().lock();
    writeln!(out, "valid           yes")?;
    writeln!(out, "size            {}", alloc.len())?;
    writeln!(out, "expected_reward {reward}")?;
    writeln!(out, "residual        {residual:e}")?;
    if let Some(sessions) = args.simulate {
        simulate_report(&mut out, &inst, &alloc, reward, sessions, args.seed)?;
    }
    Ok(())
}

pub fn slots_cdf_cmd(args: SlotsCdfArgs) -> Outcome {
    let instance_m = match &args.instance {
        Some(p) => Some(read_instance_file(p)?.num_slots()),
        None => None,
    };
    let mut series = Vec::new();
    for path in &args.allocations {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let pairs = parse_allocation_pairs(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
        let slots: Vec<usize> = pairs.iter().map(|&(j, _)| j).collect();
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        series.push((name, slots));
    }
    let widest = series.iter().flat_map(|(_, s)| s.iter().copied()).max().unwrap_or(0);
    let m = args.m.or(instance_m).unwrap_or(widest);
    if widest > m {
        return Err(Failure::Validation(format!("slot {widest} exceeds m = {m}")));
    }

    let mut w = csv::Writer::from_writer(open_out(args.out.as_deref())?);
    w.write_record(["series", "slot", "cdf"])?;
    for (name, slots) in &series {
        let cdf = slots_cdf(m, slots);
        if cdf.is_empty() {
            eprintln!("warning: {name} has no occupied slots; its CDF is empty");
        }
        for (j, v) in cdf.iter().enumerate() {
            w.write_record([name.clone(), (j + 1).to_string(), feedalloc::bench::format_sig(*v)])?;
        }
    }
    w.flush()?;
    Ok(())
}
