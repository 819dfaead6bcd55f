use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod report;

use report::{JobConfig, JobError, ModuleChoice, Source, Task};

/// Logarithmic forms, Chern classes and CSM classes of hyperplane arrangements.
#[derive(Parser)]
#[command(name = "logchern", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Input {
    /// Arrangement file (JSON with `l` and `hyperplanes`)
    path: Option<PathBuf>,
    /// Use a bundled example instead of a file
    #[arg(long, conflicts_with = "path")]
    example: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Bound on the degrees scanned by Hilbert function loops
    #[arg(long, default_value_t = 200)]
    degree_cap: i64,
}

#[derive(Args, Clone)]
struct Charts {
    /// Preferred chart coordinate for the per-point computation of N
    #[arg(long)]
    chart: Option<usize>,
    /// Also recompute on a random reordering of the hyperplanes and compare
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection lattice with Möbius values
    Lattice(Input),
    /// Affine and projective Poincaré polynomials
    Poincare(Input),
    /// CSM classes of the projective complement and of the arrangement
    Csm(Input),
    /// Logarithmic derivation and form modules with freeness data
    Modules(Input),
    /// Minimal free resolution of one of the log modules
    Resolution {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ModuleChoice::Omega0)]
        module: ModuleChoice,
    },
    /// Chern polynomials read off free resolutions
    Chern(Input),
    /// Length N of the non-free locus
    Nval {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        charts: Charts,
    },
    /// Compare the Chern class of the dual log forms with the CSM class
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        charts: Charts,
        /// Accept local tameness in dimension 5 and above
        #[arg(long)]
        assume_locally_tame: bool,
    },
    /// List bundled example arrangements
    Examples {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn source(input: &Input) -> Result<Source, JobError> {
    match (&input.path, &input.example) {
        (Some(p), None) => Ok(Source::File(p.clone())),
        (None, Some(name)) => Ok(Source::Bundled(name.clone())),
        _ => Err(JobError::Input("give an arrangement file or --example NAME".into())),
    }
}

enum Job {
    Examples,
    Run(JobConfig),
}

fn job(command: Command) -> Result<(Job, Format), JobError> {
    let (input, task) = match command {
        Command::Examples { format } => return Ok((Job::Examples, format)),
        Command::Lattice(i) => (i, Task::Lattice),
        Command::Poincare(i) => (i, Task::Poincare),
        Command::Csm(i) => (i, Task::Csm),
        Command::Modules(i) => (i, Task::Modules),
        Command::Chern(i) => (i, Task::Chern),
        Command::Resolution { input, module } => (input, Task::Resolution(module)),
        Command::Nval { input, charts } => (input, Task::Nval { chart: charts.chart, seed: charts.seed }),
        Command::Verify { input, charts, assume_locally_tame } => {
            (input, Task::Verify { chart: charts.chart, seed: charts.seed, assume_locally_tame })
        }
    };
    let source = source(&input)?;
    if input.degree_cap <= 0 {
        return Err(JobError::Input("--degree-cap must be positive".into()));
    }
    Ok((Job::Run(JobConfig { source, task, degree_cap: input.degree_cap }), input.format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = job(cli.command).and_then(|(job, format)| {
        let rep = match job {
            Job::Examples => Ok(report::examples()),
            Job::Run(cfg) => report::run(&cfg),
        };
        rep.map(|r| (r, format))
    });
    match outcome {
        Ok((rep, format)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep.json).expect("serializable")),
                Format::Text => {
                    print!("{}", rep.text);
                    eprintln!("elapsed: {:.2?}", start.elapsed());
                }
            }
            ExitCode::from(rep.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
