//! Command-line front end: validate polyhedron files, decompose their duals,
//! compute volume bounds, evaluate the cube families, and generate prism
//! fixtures.
//!
//! Exit codes: 0 on success, 1 when the input is structurally fine but not
//! realizable or violates a theorem hypothesis (the report is still
//! printed), 2 on malformed input or arguments.

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use polyvol::andreev::check_andreev;
use polyvol::angle::GeometryClass;
use polyvol::bounds::{estimate, BoundReport, EstimateError};
use polyvol::cubes::{c1_volume, c2_volume, solve_basic_prism};
use polyvol::decompose::{decompose, DecomposeOptions, DecompositionResult};
use polyvol::dual::DualGraph;
use polyvol::io::{decomposition_document, read_str, write_string};
use polyvol::numerics::lobachevsky;
use polyvol::polyhedron::LabeledPolyhedron;
use polyvol::andreev::RealizabilityReport;
use polyvol::shapes::{n_prism, PrismLabels};

#[derive(Parser)]
#[command(name = "polyvol", version, about = "Realizability, decomposition, and volume bounds for non-obtuse hyperbolic polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check a polyhedron file against the realizability conditions.
    Validate {
        /// Input file; `-` reads standard input.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Decompose the dual of a polyhedron file along its prismatic circuits.
    Decompose {
        /// Input file; `-` reads standard input.
        #[arg(default_value = "-")]
        file: String,
        /// Re-run under this many randomized choice orders and require the
        /// atoroidal components to agree.
        #[arg(long, default_value_t = 0)]
        trials: u32,
        /// Base seed for the randomized trials.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Two-sided volume bounds for a realizable polyhedron file.
    Bounds {
        /// Input file; `-` reads standard input.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Volume of a cube from the two Lambert families.
    CubeVolume {
        /// Which family: c1 (essential angles pi/3, pi/3, mu) or c2.
        #[arg(long, value_enum)]
        family: Family,
        /// Essential angle as a rational multiple of pi, e.g. 1/3.
        #[arg(long)]
        mu: PiRational,
    },
    /// The Lobachevsky function at a rational multiple of pi.
    Lobachevsky {
        /// Argument as a rational multiple of pi, e.g. 1/6.
        #[arg(long, allow_hyphen_values = true)]
        theta: PiRational,
    },
    /// Write a prism fixture file to standard output.
    PrismGen {
        /// Number of lateral faces.
        #[arg(long)]
        n: usize,
        /// alternating | basic:r,s | right-horizontal
        #[arg(long)]
        pattern: Pattern,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    C1,
    C2,
}

/// A rational multiple of pi written `p/q` (or a bare integer `p`).
#[derive(Clone, Copy)]
struct PiRational {
    p: i64,
    q: i64,
}

impl PiRational {
    fn radians(self) -> f64 {
        std::f64::consts::PI * self.p as f64 / self.q as f64
    }
}

impl FromStr for PiRational {
    type Err = String;

    fn from_str(text: &str) -> Result<PiRational, String> {
        let (p, q) = match text.split_once('/') {
            Some((p, q)) => (p, q),
            None => (text, "1"),
        };
        let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in '{text}'"))?;
        let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator in '{text}'"))?;
        if q == 0 {
            return Err("denominator must be nonzero".into());
        }
        Ok(PiRational { p, q })
    }
}

impl std::fmt::Display for PiRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[derive(Clone)]
enum Pattern {
    Alternating,
    Basic { r: usize, s: usize },
    RightHorizontal,
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(text: &str) -> Result<Pattern, String> {
        match text {
            "alternating" => Ok(Pattern::Alternating),
            "right-horizontal" => Ok(Pattern::RightHorizontal),
            other => match other.strip_prefix("basic:") {
                Some(counts) => {
                    let (r, s) = counts
                        .split_once(',')
                        .ok_or_else(|| "basic pattern is written basic:r,s".to_string())?;
                    let r = r.trim().parse().map_err(|_| format!("bad cube count '{r}'"))?;
                    let s = s.trim().parse().map_err(|_| format!("bad cube count '{s}'"))?;
                    Ok(Pattern::Basic { r, s })
                }
                None => Err(format!(
                    "unknown pattern '{other}'; expected alternating, basic:r,s, or right-horizontal"
                )),
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match cli.command {
        Command::Validate { file } => validate(&file, format),
        Command::Decompose { file, trials, seed } => run_decompose(&file, trials, seed, format),
        Command::Bounds { file } => bounds(&file, format),
        Command::CubeVolume { family, mu } => cube_volume(family, mu, format),
        Command::Lobachevsky { theta } => print_lobachevsky(theta, format),
        Command::PrismGen { n, pattern } => prism_gen(n, &pattern, format),
    }
}

/// Exit code 2: the input never made it past parsing.
fn malformed(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

/// Exit code 1: well-formed input that fails a realizability condition or a
/// theorem hypothesis.
fn rejected(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("{message}");
    ExitCode::from(1)
}

fn load(path: &str) -> Result<LabeledPolyhedron, String> {
    let text = if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| format!("reading standard input: {e}"))?;
        buffer
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
    };
    read_str(&text).map_err(|e| e.to_string())
}

/// Nine significant digits, plain decimal.
fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.8}");
    }
    let decimals = (8 - x.abs().log10().floor() as i64).max(0) as usize;
    format!("{x:.decimals$}")
}

fn print_structured<T: serde::Serialize>(payload: &T) {
    let value = serde_json::to_value(payload).expect("reports always serialize");
    println!("{}", serde_json::to_string_pretty(&value).expect("values always print"));
}

fn condition_name(v: &polyvol::andreev::Violation) -> String {
    serde_json::to_value(v.condition)
        .ok()
        .and_then(|value| value.as_str().map(str::to_owned))
        .unwrap_or_else(|| format!("{:?}", v.condition))
}

fn print_report_human(report: &RealizabilityReport) {
    println!("realizable: {}", if report.realizable { "yes" } else { "no" });
    println!("finite volume: {}", if report.finite_volume { "yes" } else { "no" });
    let count = |class: GeometryClass| report.links.iter().filter(|l| l.class == class).count();
    println!(
        "vertices: {} finite, {} ideal, {} hyperideal",
        count(GeometryClass::Spherical),
        count(GeometryClass::Euclidean),
        count(GeometryClass::Hyperbolic),
    );
    if report.borderline {
        println!("borderline: some verdicts were decided inside the float tolerance band");
    }
    for v in &report.violations {
        let edges: Vec<String> = v.edges.iter().map(|e| format!("({},{})", e.0, e.1)).collect();
        let site = match v.vertex {
            Some(vertex) => format!(" at vertex {vertex}"),
            None => String::new(),
        };
        println!(
            "violation: {}{site}, edges [{}], sum {}",
            condition_name(v),
            edges.join(", "),
            sig9(v.sum)
        );
    }
}

fn validate(path: &str, format: Format) -> ExitCode {
    let p = match load(path) {
        Ok(p) => p,
        Err(e) => return malformed(e),
    };
    let report = match check_andreev(&p) {
        Ok(report) => report,
        Err(e) => return rejected(e),
    };
    match format {
        Format::Human => print_report_human(&report),
        Format::Structured => print_structured(&report),
    }
    if report.realizable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn summarize_decomposition(result: &DecompositionResult) {
    println!(
        "components: {} seifert-fibered, {} atoroidal",
        result.seifert.len(),
        result.atoroidal.len()
    );
    println!(
        "splits: {} turnover, {} euclidean 3-circuit, {} trace steps",
        result.spherical_splits.len(),
        result.euclidean3_splits.len(),
        result.trace.len()
    );
    if !result.degree_four_vertices.is_empty() {
        println!("degree-4 vertices on the input: {:?}", result.degree_four_vertices);
    }
    for (before, after) in result.descent_violations() {
        println!("descent violation: complexity {before} -> {after}");
    }
    for certificate in result.atoroidal_certificates() {
        println!("atoroidal certificate: {certificate}");
    }
}

fn run_decompose(path: &str, trials: u32, seed: u64, format: Format) -> ExitCode {
    let p = match load(path) {
        Ok(p) => p,
        Err(e) => return malformed(e),
    };
    let dual = DualGraph::of(&p);
    let result = match decompose(&dual, &DecomposeOptions::default()) {
        Ok(result) => result,
        Err(e) => return rejected(format!("decomposition refused: {e}")),
    };

    let baseline = result.atoroidal_certificates();
    for trial in 0..trials {
        let options = DecomposeOptions {
            seed: Some(seed.wrapping_add(trial as u64)),
            ..DecomposeOptions::default()
        };
        match decompose(&dual, &options) {
            Ok(shuffled) => {
                if shuffled.atoroidal_certificates() != baseline {
                    return rejected(format!(
                        "canonicity failure: trial {trial} produced different atoroidal components"
                    ));
                }
            }
            Err(e) => return rejected(format!("trial {trial} refused: {e}")),
        }
    }

    match format {
        Format::Human => {
            summarize_decomposition(&result);
            if trials > 0 {
                println!("canonicity: atoroidal components identical across {trials} randomized orders");
            }
        }
        Format::Structured => match decomposition_document(&result) {
            Ok(doc) => print_structured(&doc),
            Err(e) => return rejected(format!("component is not polyhedral: {e}")),
        },
    }
    ExitCode::SUCCESS
}

fn print_bounds_human(report: &BoundReport) {
    println!("lower bound: {}", sig9(report.lower));
    println!("upper bound: {}", sig9(report.upper));
    println!("breakdown:");
    for c in &report.breakdown {
        println!("  {:<40} {:<24} {}", c.component, c.theorem, sig9(c.value));
    }
    for flag in &report.flags {
        println!("note: {flag}");
    }
    let counts = &report.counts;
    println!(
        "counts: {} vertices ({} degree-3, {} degree-4), {} prismatic 3-circuits, {} prismatic 4-circuits",
        counts.vertices, counts.degree3, counts.degree4, counts.prismatic3, counts.prismatic4
    );
    let t = counts.truncation;
    println!(
        "truncation census: n2 {}, n3 {}, n4 {}, e33 {}, e34 {} ({} ideal, {} finite)",
        t.n2, t.n3, t.n4, t.e33, t.e34, counts.truncated_ideal, counts.truncated_finite
    );
}

fn bounds(path: &str, format: Format) -> ExitCode {
    let p = match load(path) {
        Ok(p) => p,
        Err(e) => return malformed(e),
    };
    match estimate(&p) {
        Ok(report) => {
            match format {
                Format::Human => print_bounds_human(&report),
                Format::Structured => print_structured(&report),
            }
            ExitCode::SUCCESS
        }
        Err(EstimateError::NotRealizable(report)) | Err(EstimateError::InfiniteVolume(report)) => {
            let hyperideal = report
                .links
                .iter()
                .any(|l| l.class == GeometryClass::Hyperbolic);
            match format {
                Format::Human => {
                    print_report_human(&report);
                    if report.realizable && hyperideal {
                        println!("no finite volume to bound: truncate the hyperideal corners first");
                    }
                }
                Format::Structured => print_structured(&report),
            }
            ExitCode::from(1)
        }
        Err(e) => rejected(e),
    }
}

fn cube_volume(family: Family, mu: PiRational, format: Format) -> ExitCode {
    let (name, result) = match family {
        Family::C1 => ("c1", c1_volume(mu.radians())),
        Family::C2 => ("c2", c2_volume(mu.radians())),
    };
    match result {
        Ok(volume) => {
            match format {
                Format::Human => println!("vol({}(pi*{})) = {}", name.to_uppercase(), mu, sig9(volume)),
                Format::Structured => print_structured(&serde_json::json!({
                    "family": name,
                    "mu_over_pi": mu.to_string(),
                    "volume": volume,
                })),
            }
            ExitCode::SUCCESS
        }
        Err(e) => rejected(e),
    }
}

fn print_lobachevsky(theta: PiRational, format: Format) -> ExitCode {
    let value = lobachevsky(theta.radians());
    match format {
        Format::Human => println!("Lambda(pi*{theta}) = {}", sig9(value)),
        Format::Structured => print_structured(&serde_json::json!({
            "theta_over_pi": theta.to_string(),
            "lambda": value,
        })),
    }
    ExitCode::SUCCESS
}

fn prism_gen(n: usize, pattern: &Pattern, format: Format) -> ExitCode {
    if n < 3 {
        return malformed("a prism needs at least 3 lateral faces");
    }
    let labels = match pattern {
        Pattern::Alternating => PrismLabels::alternating(n),
        Pattern::RightHorizontal => PrismLabels::right_horizontal(n),
        Pattern::Basic { r, s } => {
            if r + s + 3 != n {
                return malformed(format!(
                    "basic:{r},{s} describes a {}-prism, not n = {n}",
                    r + s + 3
                ));
            }
            match solve_basic_prism(*r as u32, *s as u32) {
                Ok(solution) => {
                    if format == Format::Human {
                        eprintln!(
                            "basic {}-prism: mu = {}, nu = {}, volume = {}",
                            n,
                            sig9(solution.mu),
                            sig9(solution.nu),
                            sig9(solution.volume)
                        );
                    }
                }
                Err(e) => return rejected(e),
            }
            PrismLabels::basic(*r, *s)
        }
    };
    print!("{}", write_string(&n_prism(n, labels)));
    ExitCode::SUCCESS
}
