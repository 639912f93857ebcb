use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use netmet::format::{fmt_real, parse_network, write_motifs, write_network, write_report};
use netmet::generators::{constant_network, directed_circle, directed_circle_reversible, random_network};
use netmet::motifs::DEFAULT_TUPLE_BUDGET;
use netmet::{
    distance_report, motif_set, sample_geodesic, strong_isomorphic_within, weak_isomorphic_within,
    Bijection, Network, ReportOptions, DEFAULT_NODE_BUDGET,
};
use rayon::prelude::*;

#[derive(Parser, Debug)]
#[command(name = "netmet", version, about = "Distances between finite weighted directed networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bounds and, for small inputs, the exact network distance
    Dist(DistArgs),
    /// Collapse structurally interchangeable nodes
    Skeleton {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Treat weights within this tolerance as equal (heuristic)
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
    },
    /// Replace node i by mult[i] copies
    Blowup {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        mult: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the motif set of order n
    Motifs {
        input: PathBuf,
        #[arg(short = 'n', long = "order")]
        n: usize,
        /// Maximum number of enumerated tuples
        #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET)]
        budget: u128,
    },
    /// Sample the straight-line geodesic between two networks
    Geodesic {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        ts: Vec<f64>,
        /// Write one network file per sample into this directory
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide isomorphism; exits 0 when isomorphic, 1 when not
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, conflicts_with = "strong")]
        weak: bool,
        #[arg(long)]
        strong: bool,
        /// Compare weights up to this tolerance (heuristic)
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// Generate example networks
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct DistArgs {
    /// Two network files, or nothing with --all
    #[arg(num_args = 0..=2)]
    inputs: Vec<PathBuf>,
    /// Compare every pair of `*.net` files in a directory
    #[arg(long, value_name = "DIR", conflicts_with = "inputs")]
    all: Option<PathBuf>,
    /// Largest network size handed to the exact solver
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    exact_budget: usize,
    /// Highest motif order used for lower bounds
    #[arg(long, default_value_t = 2)]
    motif_n: usize,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Directed circle sampled at n points
    Circle { n: usize },
    /// Directed circle with reversibility rho
    CircleRho { n: usize, rho: f64 },
    /// All weights equal to alpha
    #[command(allow_negative_numbers = true)]
    Constant { n: usize, alpha: f64 },
    /// Uniform weights on [low, high]
    #[command(allow_negative_numbers = true)]
    Random { n: usize, low: f64, high: f64, seed: u64 },
}

/// A failure reported as `error: <kind>: <message>`.
struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            kind,
            message: message.into(),
        }
    }

    fn in_file(path: &Path, err: netmet::Error) -> Self {
        let mut f = Failure::from(err);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

impl From<netmet::Error> for Failure {
    fn from(err: netmet::Error) -> Self {
        let message = match &err {
            netmet::Error::InvalidArgument(m) => m.clone(),
            netmet::Error::BudgetExceeded { what, required, budget } => {
                format!("{what} requires {required}, budget is {budget}")
            }
            netmet::Error::Parse { line, column, message } => {
                format!("line {line}, column {column}: {message}")
            }
        };
        Failure::new(err.kind(), message)
    }
}

type Outcome<T> = Result<T, Failure>;

fn read_network(path: &Path) -> Outcome<Network> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
    parse_network(&text).map_err(|e| Failure::in_file(path, e))
}

fn write_file(path: &Path, text: &str) -> Outcome<()> {
    fs::write(path, text).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome<()> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_options(args: &DistArgs) -> ReportOptions {
    ReportOptions {
        node_budget: args.exact_budget,
        max_motif_order: args.motif_n,
        ..ReportOptions::default()
    }
}

fn thread_count() -> Outcome<usize> {
    match std::env::var("NETMET_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new("invalid-argument", format!("NETMET_THREADS must be a count, got {v:?}"))),
    }
}

fn dist_all(dir: &Path, options: &ReportOptions) -> Outcome<String> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::new("io", format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "net"))
        .collect();
    paths.sort();
    let networks = paths.iter().map(|p| read_network(p)).collect::<Outcome<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..networks.len())
        .flat_map(|i| (i + 1..networks.len()).map(move |j| (i, j)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| Failure::new("io", e.to_string()))?;
    // par_iter().collect() keeps input order
    let reports: Vec<_> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| distance_report(&networks[i], &networks[j], options))
            .collect()
    });

    let name = |i: usize| paths[i].file_name().unwrap_or_default().to_string_lossy().into_owned();
    let mut out = String::from("# x y lower upper exact\n");
    for (&(i, j), report) in pairs.iter().zip(&reports) {
        let exact = report
            .exact
            .as_ref()
            .map_or("skipped".to_string(), |e| fmt_real(e.value));
        let _ = writeln!(
            out,
            "{} {} {} {} {exact}",
            name(i),
            name(j),
            fmt_real(report.max_lower()),
            fmt_real(report.min_upper())
        );
    }
    Ok(out)
}

fn dist(args: &DistArgs) -> Outcome<String> {
    let options = report_options(args);
    if let Some(dir) = &args.all {
        return dist_all(dir, &options);
    }
    let [a, b] = args.inputs.as_slice() else {
        return Err(Failure::new("usage", "dist takes two network files or --all DIR"));
    };
    let x = read_network(a)?;
    let y = read_network(b)?;
    Ok(write_report(&distance_report(&x, &y, &options)))
}

fn bijection_line(phi: &Bijection, x: &Network, y: &Network) -> String {
    let pairs: Vec<String> = (0..phi.len())
        .map(|i| format!("{}:{}", x.label(i), y.label(phi.apply(i))))
        .collect();
    pairs.join(" ")
}

fn iso(a: &Path, b: &Path, weak: bool, eps: f64) -> Outcome<ExitCode> {
    let x = read_network(a)?;
    let y = read_network(b)?;
    let (witness, from, to) = if weak {
        let w = weak_isomorphic_within(&x, &y, eps);
        (w.witness, w.skeleton_x, w.skeleton_y)
    } else {
        (strong_isomorphic_within(&x, &y, eps), x, y)
    };
    println!("relation = {}", if weak { "weak" } else { "strong" });
    match witness {
        Some(phi) => {
            println!("isomorphic = true");
            println!("bijection = {}", bijection_line(&phi, &from, &to));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("isomorphic = false");
            Ok(ExitCode::from(1))
        }
    }
}

fn geodesic(a: &Path, b: &Path, ts: &[f64], output: Option<&Path>) -> Outcome<()> {
    let x = read_network(a)?;
    let y = read_network(b)?;
    let sampled = sample_geodesic(&x, &y, ts)?;
    println!("distance = {}", fmt_real(sampled.distance.value));
    match output {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::new("io", format!("{}: {e}", dir.display())))?;
            for (i, point) in sampled.points.iter().enumerate() {
                let path = dir.join(format!("point_{i:03}.net"));
                let text = format!("# t = {}\n{}", fmt_real(point.t), write_network(&point.network));
                write_file(&path, &text)?;
                println!("point.{i} = {}", path.display());
            }
        }
        None => {
            for point in &sampled.points {
                print!("--- t = {}\n{}", fmt_real(point.t), write_network(&point.network));
            }
        }
    }
    Ok(())
}

fn generate(family: &Family) -> Outcome<Network> {
    let net = match *family {
        Family::Circle { n } => directed_circle(n),
        Family::CircleRho { n, rho } => directed_circle_reversible(n, rho),
        Family::Constant { n, alpha } => constant_network(n, alpha),
        Family::Random { n, low, high, seed } => random_network(n, low, high, seed),
    };
    Ok(net?)
}

fn run(cli: Cli) -> Outcome<ExitCode> {
    match cli.command {
        Command::Dist(args) => print!("{}", dist(&args)?),
        Command::Skeleton { input, output, tol } => {
            let x = read_network(&input)?;
            emit(output.as_deref(), &write_network(&x.skeletonize(tol).skeleton))?;
        }
        Command::Blowup { input, mult, output } => {
            let x = read_network(&input)?;
            emit(output.as_deref(), &write_network(&x.blow_up(&mult)?))?;
        }
        Command::Motifs { input, n, budget } => {
            let x = read_network(&input)?;
            print!("{}", write_motifs(&motif_set(&x, n, budget)?));
        }
        Command::Geodesic { a, b, ts, output } => geodesic(&a, &b, &ts, output.as_deref())?,
        Command::Iso { a, b, weak, eps, .. } => return iso(&a, &b, weak, eps),
        Command::Gen { family, output } => emit(output.as_deref(), &write_network(&generate(&family)?))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            eprintln!("error: usage: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}: {}", f.kind, f.message.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
