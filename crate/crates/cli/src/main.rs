use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use sgdqe::beam::{nondimensionalize, solve_beam, BeamEnd, BeamLoad, BeamProblem, NonClassical, Support};
use sgdqe::bench::{beam_convergence, plate_convergence, reproduce, write_convergence_csv, write_report_csv};
use sgdqe::export::{beam_json, plate_json, write_beam_csv, write_plate_csv};
use sgdqe::plate::{nondimensionalize_plate, parse_edges, solve_plate, PlateLoad, PlateProblem, Variant};
use sgdqe::Error;

#[derive(Parser)]
#[command(name = "sgdqe", version, about = "Strain-gradient beam and plate solver")]
struct Cli {
    /// Print diagnostics to stderr (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one beam.
    Beam(BeamRun),
    /// Solve one plate.
    Plate(PlateRun),
    /// Solve the problem described by a JSON config file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        /// Print the resolved config as JSON and exit.
        #[arg(long)]
        dump_config: bool,
    },
    /// Compare against a bundled benchmark table (table1 .. table9).
    Reproduce {
        table: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Deflection against grid size.
    Convergence {
        /// Comma-separated grid sizes.
        #[arg(long, value_delimiter = ',', default_value = "7,9,11,13,15")]
        n_list: Vec<usize>,
        /// Output CSV file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(subcommand)]
        target: ConvergenceTarget,
    },
}

#[derive(Subcommand)]
enum ConvergenceTarget {
    /// Peak beam deflection, error against the analytical solution.
    Beam(BeamArgs),
    /// Plate center deflection, error against the finest grid.
    Plate(PlateArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct BeamRun {
    #[command(flatten)]
    beam: BeamArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Print the resolved config as JSON and exit.
    #[arg(long)]
    dump_config: bool,
}

#[derive(Args)]
struct PlateRun {
    #[command(flatten)]
    plate: PlateArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Print the resolved config as JSON and exit.
    #[arg(long)]
    dump_config: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum LoadKind {
    Udl,
    Point,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Ll,
    Lh,
}

#[derive(Clone, Copy, ValueEnum)]
enum NonClassicalArg {
    CurvatureZero,
    HigherMomentZero,
}

#[derive(Args)]
struct BeamArgs {
    /// End supports: one code for both ends or `left-right`, with codes ss, c, f.
    #[arg(long, default_value = "ss")]
    bc: String,
    /// Override the non-classical condition at both ends.
    #[arg(long, value_enum)]
    nonclassical: Option<NonClassicalArg>,
    #[arg(long, value_enum, default_value = "udl")]
    load: LoadKind,
    /// Load intensity (udl) or force (point).
    #[arg(long, default_value_t = 1.0)]
    magnitude: f64,
    /// Point load position; midspan when absent.
    #[arg(long)]
    load_x: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    g_over_l: f64,
    #[arg(long, default_value_t = 11)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    length: f64,
    #[arg(long, default_value_t = 1.0)]
    ei: f64,
}

#[derive(Args)]
struct PlateArgs {
    /// Edge letters (S, C, F, G) for x=0, y=0, x=lx, y=ly.
    #[arg(long, default_value = "SSSS")]
    edges: String,
    #[arg(long, value_enum, default_value = "ll")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "udl")]
    load: LoadKind,
    #[arg(long, default_value_t = 1.0)]
    magnitude: f64,
    /// Point load position; plate centre when absent.
    #[arg(long)]
    load_x: Option<f64>,
    #[arg(long)]
    load_y: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    g_over_l: f64,
    #[arg(long, default_value_t = 11)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    lx: f64,
    #[arg(long, default_value_t = 1.0)]
    ly: f64,
    #[arg(long, default_value_t = 0.01)]
    h: f64,
    #[arg(long, default_value_t = 3e6)]
    e: f64,
    #[arg(long, default_value_t = 0.3)]
    nu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
enum ProblemConfig {
    Beam(BeamProblem),
    Plate(PlateProblem),
}

/// Everything needed to repeat a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RunConfig {
    problem: ProblemConfig,
    format: Format,
    #[serde(default)]
    out: Option<PathBuf>,
    #[serde(default)]
    verbosity: u8,
}

enum Failure {
    Config(String),
    Solver(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularMatrix { .. } | Error::DimensionMismatch(_) => Failure::Solver(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Solver(format!("output: {e}"))
    }
}

fn parse_support(code: &str) -> Result<Support, Failure> {
    match code.trim().to_ascii_lowercase().as_str() {
        "ss" | "s" | "simply_supported" => Ok(Support::SimplySupported),
        "c" | "clamped" => Ok(Support::Clamped),
        "f" | "free" => Ok(Support::Free),
        other => Err(Failure::Config(format!("unknown support {other:?}, expected ss, c or f"))),
    }
}

fn beam_problem(a: &BeamArgs) -> Result<BeamProblem, Failure> {
    let (l, r) = match a.bc.split_once('-') {
        Some((l, r)) => (parse_support(l)?, parse_support(r)?),
        None => {
            let s = parse_support(&a.bc)?;
            (s, s)
        }
    };
    let end = |s| match a.nonclassical {
        None => BeamEnd::new(s),
        Some(NonClassicalArg::CurvatureZero) => BeamEnd::with(s, NonClassical::CurvatureZero),
        Some(NonClassicalArg::HigherMomentZero) => BeamEnd::with(s, NonClassical::HigherMomentZero),
    };
    let load = match a.load {
        LoadKind::Udl => BeamLoad::Udl { q: a.magnitude },
        LoadKind::Point => BeamLoad::Point {
            p: a.magnitude,
            x: a.load_x.unwrap_or(0.5 * a.length),
        },
    };
    Ok(BeamProblem {
        length: a.length,
        ei: a.ei,
        g: a.g_over_l * a.length,
        load,
        left: end(l),
        right: end(r),
        n: a.n,
    })
}

fn plate_problem(a: &PlateArgs) -> Result<PlateProblem, Failure> {
    let load = match a.load {
        LoadKind::Udl => PlateLoad::Udl { q: a.magnitude },
        LoadKind::Point => PlateLoad::Point {
            p: a.magnitude,
            x: a.load_x.unwrap_or(0.5 * a.lx),
            y: a.load_y.unwrap_or(0.5 * a.ly),
        },
    };
    Ok(PlateProblem {
        lx: a.lx,
        ly: a.ly,
        h: a.h,
        e: a.e,
        nu: a.nu,
        g: a.g_over_l * a.lx,
        load,
        edges: parse_edges(&a.edges)?,
        n: a.n,
        variant: match a.variant {
            VariantArg::Ll => Variant::LL,
            VariantArg::Lh => Variant::LH,
        },
    })
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure::Solver(format!("serialization: {e}"))
}

fn execute(cfg: &RunConfig) -> Result<(), Failure> {
    let mut out = open_out(&cfg.out)?;
    match &cfg.problem {
        ProblemConfig::Beam(p) => {
            let sol = solve_beam(p)?;
            if cfg.verbosity > 0 {
                eprintln!(
                    "condition estimates: boundary {:.3e}, domain {:.3e}",
                    sol.boundary_condition, sol.domain_condition
                );
            }
            match cfg.format {
                Format::Csv => write_beam_csv(&mut out, &sol)?,
                Format::Json => {
                    let report = nondimensionalize(&sol, p);
                    writeln!(out, "{}", beam_json(p, &report, &sol).map_err(json_err)?)?;
                }
            }
        }
        ProblemConfig::Plate(p) => {
            let sol = solve_plate(p)?;
            if cfg.verbosity > 0 {
                eprintln!(
                    "boundary dofs {}, condition estimates: boundary {:.3e}, domain {:.3e}",
                    sol.boundary_dof_count, sol.boundary_condition, sol.domain_condition
                );
            }
            match cfg.format {
                Format::Csv => write_plate_csv(&mut out, &sol)?,
                Format::Json => {
                    let report = nondimensionalize_plate(&sol, p);
                    writeln!(out, "{}", plate_json(p, &report, &sol).map_err(json_err)?)?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn single(problem: ProblemConfig, output: &OutputArgs, dump: bool, verbosity: u8) -> Result<(), Failure> {
    let cfg = RunConfig {
        problem,
        format: output.format.unwrap_or(Format::Csv),
        out: output.out.clone(),
        verbosity,
    };
    if dump {
        println!("{}", serde_json::to_string_pretty(&cfg).map_err(json_err)?);
        return Ok(());
    }
    execute(&cfg)
}

fn load_config(path: &PathBuf, output: &OutputArgs, verbosity: u8) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let mut cfg: RunConfig =
        serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    if output.out.is_some() {
        cfg.out = output.out.clone();
    }
    if let Some(f) = output.format {
        cfg.format = f;
    }
    cfg.verbosity = cfg.verbosity.max(verbosity);
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let v = cli.verbose;
    match cli.command {
        Command::Beam(b) => single(ProblemConfig::Beam(beam_problem(&b.beam)?), &b.output, b.dump_config, v),
        Command::Plate(p) => single(ProblemConfig::Plate(plate_problem(&p.plate)?), &p.output, p.dump_config, v),
        Command::Run {
            config,
            output,
            dump_config,
        } => {
            let cfg = load_config(&config, &output, v)?;
            if dump_config {
                println!("{}", serde_json::to_string_pretty(&cfg).map_err(json_err)?);
                return Ok(());
            }
            execute(&cfg)
        }
        Command::Reproduce { table, output } => {
            let cells = reproduce(&table)?;
            if v > 0 {
                for c in cells.iter().filter(|c| c.error.is_some()) {
                    eprintln!("{} {} g/L={}: {}", c.table, c.label, c.g_over_l, c.error.as_deref().unwrap_or(""));
                }
            }
            let mut out = open_out(&output.out)?;
            match output.format.unwrap_or(Format::Csv) {
                Format::Csv => write_report_csv(&mut out, &cells)?,
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&cells).map_err(json_err)?)?,
            }
            out.flush()?;
            Ok(())
        }
        Command::Convergence { n_list, out, target } => {
            let points = match target {
                ConvergenceTarget::Beam(b) => beam_convergence(&beam_problem(&b)?, &n_list)?,
                ConvergenceTarget::Plate(p) => plate_convergence(&plate_problem(&p)?, &n_list)?,
            };
            let mut w = open_out(&out)?;
            write_convergence_csv(&mut w, &points)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Solver(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
