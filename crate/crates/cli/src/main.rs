use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coeffbound::bounds::ClassParams;
use coeffbound::harness::{
    self, expand_command, render_bounds, render_expand, render_reports, Format, GridSpec, SuiteConfig, SuiteReport,
};
use coeffbound::{Rational, Scalar};

#[derive(Parser)]
#[command(name = "coeffbound", version, about = "Coefficient bounds for T_n^alpha(beta): tables, verification suites, expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the bound formulas over a grid.
    Bounds(GridArgs),
    /// Run a verification suite. Exits 1 if any assertion fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Expand f for one generator document and report every coefficient.
    Expand {
        /// Generator document (JSON); `-` reads stdin.
        spec: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Extremal,
    Random,
    Hk,
    Nehari,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Float,
    Rational,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Iteration depths (repeatable or comma separated).
    #[arg(long = "n", value_delimiter = ',')]
    n: Vec<u32>,
    /// Values of alpha, e.g. `2`, `1.5` or `3/2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Vec<String>,
    /// Values of beta in [0, 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Vec<String>,
    #[arg(long, default_value_t = harness::DEFAULT_K_MAX)]
    kmax: usize,
    #[arg(long, default_value_t = coeffbound::series::DEFAULT_ORDER)]
    order: usize,
    #[arg(long, default_value_t = harness::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Backend::Float)]
    backend: Backend,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Radius of the sampling circle for real-part checks.
    #[arg(long, default_value_t = 0.99)]
    radius: f64,
    #[arg(long, default_value_t = 720)]
    samples: usize,
    /// Relative tolerance for the extremal suite (float backend).
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Absolute slack for inequality checks (float backend).
    #[arg(long, default_value_t = 1e-9)]
    slack: f64,
    /// Most atoms in a random generator.
    #[arg(long, default_value_t = 6)]
    max_atoms: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl GridArgs {
    fn format(&self) -> Format {
        match self.format {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }

    fn config(&self) -> SuiteConfig {
        SuiteConfig {
            extremal_rel_tol: self.tol,
            slack: self.slack,
            radius: self.radius,
            samples: self.samples,
            max_atoms: self.max_atoms,
        }
    }

    fn grid<S: Scalar>(&self) -> anyhow::Result<GridSpec<S>> {
        let parse = |vals: &[String], what: &str| -> anyhow::Result<Vec<S>> {
            vals.iter()
                .map(|v| S::parse(v).with_context(|| format!("invalid {what} value {v:?}")))
                .collect()
        };
        let mut grid = GridSpec::<S> {
            k_max: self.kmax,
            order: self.order,
            trials: self.trials,
            seed: self.seed,
            ..GridSpec::default()
        };
        if !self.n.is_empty() {
            grid.n_values = self.n.clone();
        }
        if !self.alpha.is_empty() {
            grid.alpha_values = parse(&self.alpha, "alpha")?;
        }
        if !self.beta.is_empty() {
            grid.beta_values = parse(&self.beta, "beta")?;
        }
        Ok(grid)
    }
}

/// Rendered output plus whether every assertion passed.
struct Outcome {
    text: String,
    passed: bool,
    summary: Option<String>,
}

fn summarize(reports: &[SuiteReport]) -> String {
    let failed = reports.iter().filter(|r| !r.passed).count();
    format!("{} assertions, {} failed", reports.len(), failed)
}

fn suite_outcome(reports: Vec<SuiteReport>, format: Format) -> Outcome {
    Outcome {
        passed: reports.iter().all(|r| r.passed),
        summary: Some(summarize(&reports)),
        text: render_reports(&reports, format),
    }
}

fn read_spec(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn single<T: Clone>(vals: &[T], default: T, what: &str) -> anyhow::Result<T> {
    match vals {
        [] => Ok(default),
        [v] => Ok(v.clone()),
        _ => bail!("expand takes a single {what} value"),
    }
}

fn run<S: Scalar>(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Bounds(args) => {
            let rows = harness::run_bounds_table(&args.grid::<S>()?)?;
            Ok(Outcome { text: render_bounds(&rows, args.format()), passed: true, summary: None })
        }
        Command::Verify { suite, grid: args } => {
            let grid = args.grid::<S>()?;
            let cfg = args.config();
            let reports = match suite {
                Suite::Extremal => harness::run_extremal_suite(&grid, &cfg)?,
                Suite::Random => harness::run_random_suite(&grid, &cfg)?,
                Suite::Nehari => harness::run_nehari_suite(&grid, &cfg)?,
                Suite::Hk => harness::run_hk_audit(grid.k_max, &grid.alpha_values, grid.order, &cfg)?,
            };
            Ok(suite_outcome(reports, args.format()))
        }
        Command::Expand { spec, grid: args } => {
            let doc = read_spec(spec)?;
            let n = single(&args.n, 1, "n")?;
            let alpha = S::parse(&single(&args.alpha, "2".to_string(), "alpha")?)?;
            let beta = S::parse(&single(&args.beta, "0".to_string(), "beta")?)?;
            let params = ClassParams::new(n, alpha, beta)?;
            let out = expand_command(&doc, &params, args.order, args.radius, args.samples)?;
            Ok(Outcome { text: render_expand(&out, args.format()), passed: true, summary: None })
        }
    }
}

fn out_path(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Bounds(a) | Command::Verify { grid: a, .. } | Command::Expand { grid: a, .. } => a.out.as_ref(),
    }
}

fn backend(command: &Command) -> Backend {
    match command {
        Command::Bounds(a) | Command::Verify { grid: a, .. } | Command::Expand { grid: a, .. } => a.backend,
    }
}

fn emit(outcome: &Outcome, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, &outcome.text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match backend(&cli.command) {
        Backend::Float => run::<f64>(&cli.command),
        Backend::Rational => run::<Rational>(&cli.command),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&outcome, out_path(&cli.command)) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if let Some(s) = &outcome.summary {
        eprintln!("{s}");
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
