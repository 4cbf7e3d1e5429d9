//! Command-line front end: generate canonical configurations, census point
//! sets, verify distance/triangle inequalities, solve minimal triple
//! covers, and run grid searches.
//!
//! Exit codes: 0 on success, 1 when a verified property is violated, 2 on
//! usage or input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tricensus::bounds;
use tricensus::census::{census, point_census};
use tricensus::formats;
use tricensus::generators::GeneratorSpec;
use tricensus::geometry::PointSet;
use tricensus::search::{structure_report, GridSpec, SearchMode, SearchSpec, TwoTriangleCheck};

#[derive(Parser)]
#[command(
    name = "tricensus",
    version,
    about = "Exact distinct-distance and distinct-triangle censuses of finite point configurations"
)]
struct Cli {
    /// Bound the number of worker threads (results are identical for any
    /// value).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a canonical configuration and write it as JSON.
    Generate(GenerateArgs),
    /// Census a configuration file: distance classes, triangle classes,
    /// collinear triples.
    Census(CensusArgs),
    /// Check distance/triangle-count inequalities on a configuration.
    Verify(VerifyArgs),
    /// Solve a minimal triples-covering-pairs instance exactly.
    Cover(CoverArgs),
    /// Grid searches around the cross-polytope.
    Search(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Orthoplex,
    Simplex,
    SquareCenter,
    Pentagon,
    KDistance,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Dimension, for orthoplex and simplex.
    #[arg(long)]
    dim: Option<usize>,
    /// Number of distinct distances, for k-distance.
    #[arg(long)]
    k: Option<usize>,
    /// Squared scale for the orthoplex, e.g. "1" or "9/4".
    #[arg(long, default_value = "1")]
    scale2: String,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    input: PathBuf,
    /// JSON report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a flat CSV (one row per class).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Append non-authoritative decimal approximations to the CSV.
    #[arg(long)]
    approx: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    /// Distinct distances vs. 2 * triangles + 1.
    MaxDds,
    /// Per-point lower bounds on the triangle-class count.
    PointBounds,
    /// Forced geometry of a two-triangle configuration.
    TriGeom,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Lemma::All)]
    lemma: Lemma,
}

#[derive(Args)]
struct CoverArgs {
    /// Universe size (symbols 1..=n).
    #[arg(long)]
    n: usize,
    /// Number of symbols carrying doubled pairs.
    #[arg(long)]
    m: Option<usize>,
    /// Include the covering triples in the output.
    #[arg(long)]
    emit_certificate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Augment,
    Perturb,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long)]
    dim: usize,
    /// Rational grid step, e.g. "1/2".
    #[arg(long)]
    grid_step: String,
    /// Rational grid radius, e.g. "2".
    #[arg(long)]
    grid_radius: String,
    /// Candidate budget (approximate pre-check).
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// CSV report path: one row per censused candidate.
    #[arg(long)]
    report: Option<PathBuf>,
}

enum Outcome {
    Clean,
    ViolationFound,
}

struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::ViolationFound) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Generate(args) => generate(args),
        Command::Census(args) => run_census(args),
        Command::Verify(args) => verify(args),
        Command::Cover(args) => cover(args),
        Command::Search(args) => search(args),
    }
}

fn parse_big_rational(text: &str, what: &str) -> Result<BigRational, CliError> {
    let parse_int = |s: &str| -> Result<BigInt, CliError> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| CliError(format!("{what}: invalid integer {s:?}")))
    };
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(CliError(format!("{what}: zero denominator")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
    }
}

fn emit(path: Option<&Path>, payload: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, payload)
            .map_err(|e| CliError(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn load_point_set(path: &Path) -> Result<PointSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    formats::point_set_from_json(&text)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn generate(args: GenerateArgs) -> Result<Outcome, CliError> {
    let need = |opt: Option<usize>, flag: &str| {
        opt.ok_or_else(|| CliError(format!("--{flag} is required for this kind")))
    };
    let spec = match args.kind {
        Kind::Orthoplex => GeneratorSpec::Orthoplex {
            dim: need(args.dim, "dim")?,
            scale2: parse_big_rational(&args.scale2, "--scale2")?,
        },
        Kind::Simplex => GeneratorSpec::Simplex {
            dim: need(args.dim, "dim")?,
        },
        Kind::SquareCenter => GeneratorSpec::SquareCenter,
        Kind::Pentagon => GeneratorSpec::Pentagon,
        Kind::KDistance => GeneratorSpec::KDistance {
            k: need(args.k, "k")?,
        },
    };
    let set = spec.build()?;
    emit(args.out.as_deref(), &formats::point_set_to_json(&set))?;
    Ok(Outcome::Clean)
}

fn run_census(args: CensusArgs) -> Result<Outcome, CliError> {
    let set = load_point_set(&args.input)?;
    let report = census(&set)?;
    emit(args.out.as_deref(), &formats::census_report_to_json(&report))?;
    if let Some(csv) = &args.csv {
        emit(Some(csv), &formats::census_report_to_csv(&report, args.approx))?;
    }
    Ok(Outcome::Clean)
}

fn verify(args: VerifyArgs) -> Result<Outcome, CliError> {
    let set = load_point_set(&args.input)?;
    let report = structure_report(&set)?;
    let mut violated = false;

    let check_max_dds = matches!(args.lemma, Lemma::MaxDds | Lemma::All);
    let check_point_bounds = matches!(args.lemma, Lemma::PointBounds | Lemma::All);
    let check_tri_geom = matches!(args.lemma, Lemma::TriGeom | Lemma::All);

    if check_max_dds {
        match report.max_distance_bound {
            Some((bound, holds)) => {
                println!(
                    "max-dds: distance_classes={} triangle_classes={} bound={} {}",
                    report.distance_class_count,
                    report.triangle_class_count,
                    bound,
                    if holds { "ok" } else { "VIOLATED" }
                );
                violated |= !holds;
            }
            None => println!("max-dds: skipped (no noncollinear triple)"),
        }
    }

    if check_point_bounds {
        let t = report.triangle_class_count as u64;
        let mut worst = 0u64;
        let mut ok = true;
        for i in 0..set.n_points() {
            let pc = point_census(&set, i)?;
            if pc.n_distinct == 0 {
                continue;
            }
            let lb_distinct = bounds::min_triangles_for_distances(pc.n_distinct as u64);
            let lb_repeats =
                bounds::min_triangles_with_repeats(pc.n_distinct as u64, pc.m_repeated as u64);
            let lb = lb_distinct.max(lb_repeats);
            worst = worst.max(lb);
            if t < lb {
                ok = false;
                println!(
                    "point-bounds: point {i} (n={}, m={}) forces >= {lb} triangles, census has {t} VIOLATED",
                    pc.n_distinct, pc.m_repeated
                );
            }
        }
        if ok {
            println!("point-bounds: triangle_classes={t} >= strongest per-point bound {worst} ok");
        }
        violated |= !ok;
    }

    if check_tri_geom {
        match &report.two_triangle {
            TwoTriangleCheck::Verified { equilateral2, odd2 } => println!(
                "tri-geom: equilateral side^2 = {equilateral2}, isosceles odd side^2 = {odd2} ok"
            ),
            TwoTriangleCheck::Skipped(reason) => println!("tri-geom: skipped ({reason:?})"),
            TwoTriangleCheck::Violated { detail } => {
                println!("tri-geom: VIOLATED ({detail})");
                violated = true;
            }
        }
    }

    Ok(if violated {
        Outcome::ViolationFound
    } else {
        Outcome::Clean
    })
}

fn cover(args: CoverArgs) -> Result<Outcome, CliError> {
    let solution = match args.m {
        None => bounds::min_triple_cover(args.n)?,
        Some(m) => bounds::min_cover_with_repeats(args.n, m)?,
    };
    print!(
        "{}",
        formats::cover_solution_to_json(args.n, args.m, &solution, args.emit_certificate)
    );
    Ok(Outcome::Clean)
}

fn search(args: SearchArgs) -> Result<Outcome, CliError> {
    let spec = SearchSpec {
        dim: args.dim,
        mode: match args.mode {
            Mode::Augment => SearchMode::AugmentOnePoint,
            Mode::Perturb => SearchMode::PerturbOneVertex,
        },
        grid: GridSpec::new(
            parse_big_rational(&args.grid_step, "--grid-step")?,
            parse_big_rational(&args.grid_radius, "--grid-radius")?,
        )?,
        budget: args.budget,
    };
    let result = spec.run()?;
    print!("{}", formats::search_summary_to_json(&result));
    if let Some(path) = &args.report {
        emit(Some(path), &formats::search_result_to_csv(&result))?;
    }
    Ok(if result.violation_count() > 0 {
        Outcome::ViolationFound
    } else {
        Outcome::Clean
    })
}
