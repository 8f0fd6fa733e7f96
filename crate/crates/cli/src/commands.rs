//! Command dispatch.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropcount::count::{count_refined, invariance_suite, u_expansion, CountOptions, PointSource, Strategy};
use tropcount::dr::{f3u_series, fmp_series, igd_series, mu_series, verify_moyal_claim};
use tropcount::moduli::{enumerate_types, EndLabeling};
use tropcount::multiplicity::{mu, ThetaMemo};
use tropcount::oracle::kontsevich;
use tropcount::poly::bracket_minus;
use tropcount::rational::{self, factorial};
use tropcount::{GaussianRational, LatticeVector, Normalization};

use crate::error::CliError;
use crate::problem::ProblemFile;
use crate::render::curve_svg;
use crate::report::CountReport;

/// Refined counts of rational tropical plane curves with descendant conditions.
#[derive(Debug, Parser)]
#[command(name = "tropcount", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count curves through generic points and print N_trop(q).
    Count(CountArgs),
    /// List the combinatorial types of a problem (small problems only).
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        labeled_ends: bool,
        #[arg(long)]
        json: bool,
    },
    /// Count with several seeds and compare the polynomials.
    Invariance {
        #[command(flatten)]
        count: CountArgs,
        /// Number of seeds, starting at the seed given with --seed (default 0).
        #[arg(long, default_value_t = 10)]
        seeds: u64,
    },
    /// Print a vertex generating series.
    VertexSeries {
        #[command(subcommand)]
        kind: SeriesKind,
    },
    /// Random check of θ_N = (N!/6)·μ_N.
    BsIdentity {
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        min_n: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random check of the symmetrized Moyal product against the cosine product.
    MoyalVerify {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_d: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Number of rational plane curves of degree d through 3d - 1 points.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        json: bool,
    },
    /// Write one SVG file per counted curve.
    Render {
        #[command(flatten)]
        count: CountArgs,
        /// Output directory.
        #[arg(long, short)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Problem file (JSON).
    pub file: PathBuf,
    /// Seed for sampling points; overrides points given in the file.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_parser = parse_convention)]
    pub convention: Option<Normalization>,
    /// Highest power of u in the expansion.
    #[arg(long)]
    pub truncation: Option<usize>,
    #[arg(long)]
    pub json: bool,
    /// Distinguish ends with equal directions.
    #[arg(long)]
    pub labeled_ends: bool,
    /// Solve every combinatorial type instead of the guided search.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Subcommand)]
pub enum SeriesKind {
    /// 2 sin(u·|v1 ∧ v2|/2).
    F3u {
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        v1: LatticeVector,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        v2: LatticeVector,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Series of a pointed vertex; vectors as one list, e.g. "1,0 0,1 -1,-1".
    Fmp {
        #[arg(value_parser = parse_vectors, allow_hyphen_values = true)]
        vectors: VectorList,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Cosine formula for I_{g,d}; a and b are comma-separated.
    Igd {
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        a: Vec<i64>,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        b: Vec<i64>,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
}

/// Balanced vectors of a pointed vertex.
#[derive(Clone, Debug)]
pub struct VectorList(pub Vec<LatticeVector>);

/// `"x,y x,y ..."`; spaces or semicolons separate the vectors.
fn parse_vectors(s: &str) -> Result<VectorList, String> {
    let vs: Vec<LatticeVector> =
        s.split(|c: char| c == ';' || c.is_whitespace()).filter(|p| !p.is_empty()).map(parse_vector).collect::<Result<_, _>>()?;
    if vs.len() < 3 {
        return Err(format!("need at least 3 vectors, got {}", vs.len()));
    }
    Ok(VectorList(vs))
}

fn parse_convention(s: &str) -> Result<Normalization, String> {
    s.parse()
}

/// `"x,y"`.
fn parse_vector(s: &str) -> Result<LatticeVector, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let x = x.trim().parse().map_err(|_| format!("bad coordinate in {s:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad coordinate in {s:?}"))?;
    Ok(LatticeVector::new(x, y))
}

/// What a command prints, and whether the property it checks held.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Count(args) => cmd_count(&args).map(|r| Output::ok(if args.json { r.to_json() } else { r.to_text() })),
        Command::Enumerate { file, labeled_ends, json } => cmd_enumerate(&file, labeled_ends, json),
        Command::Invariance { count, seeds } => cmd_invariance(&count, seeds),
        Command::VertexSeries { kind } => cmd_vertex_series(kind),
        Command::BsIdentity { count, min_n, max_n, bound, seed } => cmd_bs_identity(count, min_n, max_n, bound, seed),
        Command::MoyalVerify { count, max_d, bound, order, seed } => cmd_moyal_verify(count, max_d, bound, order, seed),
        Command::Oracle { degree, json } => cmd_oracle(degree, json),
        Command::Render { count, out } => cmd_render(&count, &out),
    }
}

fn options(args: &CountArgs, file: &ProblemFile) -> CountOptions {
    CountOptions {
        normalization: args.convention.or(file.convention).unwrap_or_default(),
        labeling: if args.labeled_ends { EndLabeling::Labeled } else { EndLabeling::UpToRelabeling },
        strategy: if args.exhaustive { Strategy::Exhaustive } else { Strategy::Guided },
        ..CountOptions::default()
    }
}

pub fn cmd_count(args: &CountArgs) -> Result<CountReport, CliError> {
    let file = ProblemFile::load(&args.file)?;
    let problem = file.problem()?;
    let given = file.point_configuration(&problem)?;
    let source = match (args.seed, given) {
        (Some(seed), _) => PointSource::Seed(seed),
        (None, Some(points)) => PointSource::Fixed(points),
        (None, None) => PointSource::Seed(file.seed.unwrap_or(0)),
    };
    let result = count_refined(&problem, source, options(args, &file))?;
    let order = args.truncation.or(file.truncation).unwrap_or(result.trivalent + 6);
    if order < result.trivalent {
        return Err(CliError::Validation(format!(
            "truncation {order} is below the leading power u^{}",
            result.trivalent
        )));
    }
    let expansion = u_expansion(&result, order)?;
    Ok(CountReport::new(result, expansion, file.delta.clone(), problem.profile.exponents().to_vec()))
}

fn cmd_enumerate(path: &Path, labeled_ends: bool, json: bool) -> Result<Output, CliError> {
    let file = ProblemFile::load(path)?;
    let problem = file.problem()?;
    let labeling = if labeled_ends { EndLabeling::Labeled } else { EndLabeling::UpToRelabeling };
    let types = enumerate_types(&problem.degree, &problem.profile, labeling);
    if json {
        return Ok(Output::ok(serde_json::to_string_pretty(&types).expect("types serialize")));
    }
    let mut out = format!("{} combinatorial types\n", types.len());
    for (i, t) in types.iter().enumerate() {
        let _ = writeln!(out, "{:>4}: {t}", i + 1);
    }
    Ok(Output::ok(out))
}

fn cmd_invariance(args: &CountArgs, seeds: u64) -> Result<Output, CliError> {
    let file = ProblemFile::load(&args.file)?;
    let problem = file.problem()?;
    let start = args.seed.or(file.seed).unwrap_or(0);
    let seeds: Vec<u64> = (start..start + seeds).collect();
    let report = invariance_suite(&problem, &seeds, options(args, &file))?;
    if args.json {
        return Ok(Output { text: serde_json::to_string_pretty(&report).expect("reports serialize"), ok: report.passed });
    }
    let mut out = String::new();
    for (seed, p) in &report.counts {
        let _ = writeln!(out, "seed {seed}: {p}");
    }
    let _ = writeln!(out, "{}", if report.passed { "PASS: all counts agree" } else { "FAIL: counts differ" });
    Ok(Output { text: out, ok: report.passed })
}

fn cmd_vertex_series(kind: SeriesKind) -> Result<Output, CliError> {
    let mut out = String::new();
    let ok = match kind {
        SeriesKind::F3u { v1, v2, order } => {
            let s = f3u_series(v1, v2, order);
            let w = tropcount::wedge(v1, v2).abs();
            let w = i64::try_from(w).map_err(|_| CliError::Validation("wedge too large".into()))?;
            let q_side = bracket_minus(w).scale(&-GaussianRational::i()).substitute_exponential(order);
            let _ = writeln!(out, "f3u: {s}");
            let _ = writeln!(out, "(-i)[{w}]_- at q = e^(iu): {q_side}");
            s == q_side
        }
        SeriesKind::Fmp { vectors: VectorList(vectors), order } => {
            if !vectors.iter().sum::<LatticeVector>().is_zero() {
                return Err(CliError::Validation("vectors are not balanced".into()));
            }
            let s = fmp_series(&vectors, order);
            let m = mu_series(&vectors, order);
            let _ = writeln!(out, "fmp: {s}");
            let _ = writeln!(out, "mu/(m-1)! at q = e^(iu): {m}");
            s == m
        }
        SeriesKind::Igd { a, b, order } => {
            if a.len() != b.len() || a.is_empty() {
                return Err(CliError::Validation("a and b need the same, non-zero length".into()));
            }
            let s = igd_series(&a, &b, order);
            let _ = writeln!(out, "igd: {s}");
            for (j, c) in s.coefficients().iter().enumerate().step_by(2) {
                let _ = writeln!(out, "  u^{j}: {c}");
            }
            true
        }
    };
    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    Ok(Output { text: out, ok })
}

fn random_balanced(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<LatticeVector> {
    loop {
        let mut vs: Vec<LatticeVector> =
            (0..n - 1).map(|_| LatticeVector::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))).collect();
        let last = -vs.iter().sum::<LatticeVector>();
        vs.push(last);
        if vs.iter().all(|v| !v.is_zero() && v.x.abs() <= bound && v.y.abs() <= bound) {
            return vs;
        }
    }
}

fn cmd_bs_identity(count: usize, min_n: usize, max_n: usize, bound: i64, seed: u64) -> Result<Output, CliError> {
    if min_n < 3 || max_n < min_n || bound < 1 {
        return Err(CliError::Validation("need 3 <= min-n <= max-n and bound >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut memo = ThetaMemo::new();
    let mut out = String::new();
    let mut ok = true;
    for n in min_n..=max_n {
        let mut passed = 0;
        for _ in 0..count {
            let vs = random_balanced(&mut rng, n, bound);
            let theta = memo.theta(&vs).map_err(|e| CliError::Internal(e.to_string()))?;
            let six = rational::int(6);
            let expected = mu(&vs).map_err(|e| CliError::Internal(e.to_string()))?.scale_rational(&(factorial(n) / six));
            if theta == expected {
                passed += 1;
            } else {
                let _ = writeln!(out, "mismatch for {vs:?}: {theta} vs {expected}");
            }
        }
        ok &= passed == count;
        let _ = writeln!(out, "N = {n}: {passed}/{count} tuples agree");
    }
    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    Ok(Output { text: out, ok })
}

fn cmd_moyal_verify(count: usize, max_d: usize, bound: i64, order: usize, seed: u64) -> Result<Output, CliError> {
    if max_d < 1 || bound < 0 {
        return Err(CliError::Validation("need max-d >= 1 and bound >= 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let mut ok = true;
    for d in 1..=max_d {
        let (mut passed, mut literal) = (0, 0);
        for _ in 0..count {
            let a: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
            let b: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
            let r = verify_moyal_claim(&a, &b, order);
            if r.passed {
                passed += 1;
            } else {
                let _ = writeln!(out, "mismatch for a = {a:?}, b = {b:?}");
            }
            literal += usize::from(r.literal_u_equals_i_eps_holds);
        }
        ok &= passed == count;
        let _ = writeln!(out, "d = {d}: {passed}/{count} agree to eps^{order}; literal u = i*eps reading holds on {literal}");
    }
    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    Ok(Output { text: out, ok })
}

fn cmd_oracle(degree: i64, json: bool) -> Result<Output, CliError> {
    let n = kontsevich(degree).map_err(CliError::Validation)?;
    Ok(Output::ok(if json { format!("{{\"degree\": {degree}, \"count\": \"{n}\"}}\n") } else { format!("N_{degree} = {n}\n") }))
}

fn cmd_render(args: &CountArgs, out_dir: &Path) -> Result<Output, CliError> {
    let report = cmd_count(args)?;
    let r = &report.result;
    if !r.curves.is_empty() {
        std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir.display().to_string(), e))?;
    }
    let mut out = String::new();
    for (i, c) in r.curves.iter().enumerate() {
        let path = out_dir.join(format!("curve-{}.svg", i + 1));
        let title = format!("curve {} of {}, multiplicity {}", i + 1, r.curves.len(), c.multiplicity);
        let svg = curve_svg(&c.curve, &r.provenance.points, &title);
        std::fs::write(&path, svg).map_err(|e| CliError::io(path.display().to_string(), e))?;
        let _ = writeln!(out, "{}", path.display());
    }
    let _ = writeln!(out, "{} file(s) written", r.curves.len());
    Ok(Output::ok(out))
}
