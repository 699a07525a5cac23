//! `xdeficit` command-line front end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use xdeficit::deficit::{oracle_deficit, paper_deficit, DEFAULT_ORACLE_GRID, DEFAULT_REFINE_ITERS};
use xdeficit::dynamics::{find_sudden_death, sweep_with, OracleSettings, DEFAULT_SUDDEN_DEATH_TOL};
use xdeficit::entanglement::concurrence_closed;
use xdeficit::par::Exec;
use xdeficit::report::{format_sig12, sweep_csv, sweep_svg, SweepDocument};
use xdeficit::verify::run_verification;
use xdeficit::xstate::XStateParams;

/// Relative output paths are resolved against this directory when set.
const OUTPUT_DIR_ENV: &str = "XDEFICIT_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "xdeficit", version, about = "One-way deficit and concurrence of two-qubit X states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-way deficit of a single state, in bits.
    Deficit {
        #[command(flatten)]
        params: ParamArgs,
        /// Also run the sphere oracle and report the gap.
        #[arg(long)]
        with_oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_GRID)]
        oracle_grid: usize,
    },
    /// Concurrence of a single state.
    Concurrence {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Deficit and concurrence along the phase-flip channel.
    Sweep(SweepArgs),
    /// Cross-check closed forms against matrix computations on random states.
    Verify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Channel strength at which entanglement vanishes.
    SuddenDeath {
        #[command(flatten)]
        params: ParamArgs,
        /// Decay rate; when given, also print the time `t*` with `p = 1 - exp(-gamma t)`.
        #[arg(long)]
        gamma: Option<f64>,
    },
}

#[derive(Args)]
struct ParamArgs {
    /// JSON file with any of the fields r, s, c1, c2, c3 (missing ones are 0).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c3: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 101)]
    p_steps: usize,
    #[arg(long)]
    with_oracle: bool,
    #[arg(long, default_value_t = DEFAULT_ORACLE_GRID)]
    oracle_grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Table destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Re-render a previously written JSON sweep instead of computing one.
    #[arg(long, conflicts_with_all = ["input", "r", "s", "c1", "c2", "c3", "with_oracle"])]
    replay: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PartialParams {
    r: Option<f64>,
    s: Option<f64>,
    c1: Option<f64>,
    c2: Option<f64>,
    c3: Option<f64>,
}

enum Failure {
    Params(String),
    Io(String),
    Breach,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Params(_) => 2,
            Failure::Io(_) => 3,
            Failure::Breach => 4,
        }
    }
}

impl From<xdeficit::Error> for Failure {
    fn from(e: xdeficit::Error) -> Self {
        Failure::Params(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    let path = resolve_output(path);
    fs::write(&path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

impl ParamArgs {
    fn resolve(&self) -> CliResult<XStateParams> {
        let base = match &self.input {
            Some(path) => serde_json::from_str::<PartialParams>(&read_file(path)?)
                .map_err(|e| Failure::Params(format!("{}: {e}", path.display())))?,
            None => PartialParams::default(),
        };
        let x = XStateParams {
            r: self.r.or(base.r).unwrap_or(0.0),
            s: self.s.or(base.s).unwrap_or(0.0),
            c1: self.c1.or(base.c1).unwrap_or(0.0),
            c2: self.c2.or(base.c2).unwrap_or(0.0),
            c3: self.c3.or(base.c3).unwrap_or(0.0),
        };
        x.check_physical()?;
        Ok(x)
    }
}

fn run_deficit(x: &XStateParams, with_oracle: bool, grid: usize) -> CliResult<()> {
    let d = paper_deficit(x)?;
    println!("deficit_bits: {}", format_sig12(d.value));
    println!("method: {}", d.method.as_str());
    println!("argmin_phi: {}", format_sig12(d.argmin_phi()));
    println!("state_entropy_bits: {}", format_sig12(d.state_entropy));
    if d.theta_capped {
        println!("theta_capped: true");
    }
    if with_oracle {
        let o = oracle_deficit(x, grid, DEFAULT_REFINE_ITERS)?;
        println!("oracle_deficit_bits: {}", format_sig12(o.value));
        println!("oracle_gap_bits: {}", format_sig12(o.value - d.value));
    }
    Ok(())
}

fn run_concurrence(x: &XStateParams) -> CliResult<()> {
    let c = concurrence_closed(x)?;
    println!("concurrence: {}", format_sig12(c.value));
    println!("margin: {}", format_sig12(c.margin()));
    Ok(())
}

fn run_sweep(args: &SweepArgs) -> CliResult<()> {
    let doc = match &args.replay {
        Some(path) => {
            let doc: SweepDocument = serde_json::from_str(&read_file(path)?)
                .map_err(|e| Failure::Params(format!("{}: {e}", path.display())))?;
            doc.params.check_physical()?;
            doc
        }
        None => {
            let params = args.params.resolve()?;
            let oracle = args
                .with_oracle
                .then(|| OracleSettings { coarse_grid: args.oracle_grid, ..OracleSettings::default() });
            let records = sweep_with(&params, args.p_steps, oracle, Exec::default())?;
            SweepDocument { params, records }
        }
    };
    let table = match args.format {
        Format::Csv => sweep_csv(&doc.records),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Io(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    match &args.output {
        Some(path) => write_file(path, &table)?,
        None => print!("{table}"),
    }
    if let Some(path) = &args.svg {
        let p_star = find_sudden_death(&doc.params, DEFAULT_SUDDEN_DEATH_TOL)?;
        write_file(path, &sweep_svg(&doc.records, p_star))?;
    }
    Ok(())
}

fn run_verify(samples: usize, seed: u64) -> CliResult<()> {
    let report = run_verification(samples, seed)?;
    for c in &report.checks {
        println!(
            "{} {}: max deviation {:e} (tol {:e}, {} samples)",
            if c.passed() { "ok  " } else { "FAIL" },
            c.name,
            c.max_deviation,
            c.tolerance,
            c.samples
        );
    }
    println!(
        "info relaxed deficit below -1e-9 in {} of {samples} states (min {})",
        report.relaxed_below_zero,
        format_sig12(report.relaxed_min_value)
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Breach)
    }
}

fn run_sudden_death(x: &XStateParams, gamma: Option<f64>) -> CliResult<()> {
    if let Some(g) = gamma {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Failure::Params(format!("gamma = {g} must be positive")));
        }
    }
    match find_sudden_death(x, DEFAULT_SUDDEN_DEATH_TOL)? {
        Some(p) => {
            println!("p_star: {}", format_sig12(p));
            if let Some(g) = gamma {
                println!("t_star: {}", format_sig12(-(-p).ln_1p() / g));
            }
        }
        None => println!("p_star: none"),
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Deficit { params, with_oracle, oracle_grid } => {
            run_deficit(&params.resolve()?, with_oracle, oracle_grid)
        }
        Command::Concurrence { params } => run_concurrence(&params.resolve()?),
        Command::Sweep(args) => run_sweep(&args),
        Command::Verify { samples, seed } => run_verify(samples, seed),
        Command::SuddenDeath { params, gamma } => run_sudden_death(&params.resolve()?, gamma),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Params(m) => eprintln!("error: {m}"),
                Failure::Io(m) => eprintln!("i/o error: {m}"),
                Failure::Breach => eprintln!("verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
