use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dcakit::commands::{cmd_diagnose, cmd_rates, cmd_run, cmd_zoo_list, DiagnoseArgs, Form, RatesArgs};
use dcakit::config::{parse_rule, parse_tie, parse_vector, RunSpec};
use dcakit::CliError;

#[derive(Parser)]
#[command(name = "dcakit", version, about = "Run DCA, check its convergence inequalities and classify rates")]
#[command(after_help = "DCAKIT_SEED is reserved for future stochastic components and is currently ignored.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run DCA on a zoo problem or an inline 1-D problem; writes <out>.csv and <out>.json.
    Run(RunArgs),
    /// Check a recorded trace against the descent, KL and Cauchy inequalities.
    Diagnose(DiagnoseCli),
    /// Classify a sequence hypothesis or predict rates from a KL exponent.
    Rates(RatesCli),
    /// Inspect the problem zoo.
    Zoo {
        #[command(subcommand)]
        action: Option<ZooAction>,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    /// List problems, scenarios and expected behavior.
    List,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Zoo problem name (see `dcakit zoo list`).
    #[arg(long)]
    problem: Option<String>,
    /// Inline problem, e.g. "g = quad(0.5); h = negsqrt; box = 0, inf".
    #[arg(long)]
    inline: Option<String>,
    /// Zoo scenario label.
    #[arg(long)]
    scenario: Option<String>,
    /// Starting point, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Maximum number of iterations.
    #[arg(long)]
    iters: Option<usize>,
    /// Stop once a step is this short (not an optimality test).
    #[arg(long)]
    halt_step_tol: Option<f64>,
    #[arg(long)]
    divergence_guard: Option<f64>,
    /// default | adversarial | negative | fixed:v1,...
    #[arg(long, allow_hyphen_values = true)]
    selection: Option<String>,
    /// lowest | highest | stay | alternate
    #[arg(long)]
    tie_break: Option<String>,
    #[arg(long)]
    subsolver_tol: Option<f64>,
    /// Flat key = value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output prefix (defaults to the problem name).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct DiagnoseCli {
    /// Run JSON, or trace CSV (its sibling .json is used for metadata when present).
    trace: PathBuf,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    f_star: Option<f64>,
    /// Use this KL exponent instead of the fitted one.
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    burn_in: f64,
    /// Lipschitz constant of grad h.
    #[arg(long)]
    lipschitz: Option<f64>,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Next,
    Current,
    Mixed,
}

#[derive(clap::Args)]
struct RatesCli {
    #[arg(long, value_enum)]
    form: Option<FormArg>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    /// Print the first n terms of the extremal sequence.
    #[arg(long)]
    generate: Option<usize>,
    #[arg(long)]
    r0: Option<f64>,
    /// Predict the rates of f and x from a KL exponent in [0, 1).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long)]
    json: bool,
}

fn run_spec(a: RunArgs) -> Result<RunSpec, CliError> {
    let file = match &a.config {
        Some(p) => RunSpec::parse(&std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?)?,
        None => RunSpec::default(),
    };
    let flags = RunSpec {
        problem: a.problem,
        inline: a.inline,
        scenario: a.scenario,
        x0: a.x0.as_deref().map(|s| parse_vector("x0", s)).transpose()?,
        max_iters: a.iters,
        halt_step_tol: a.halt_step_tol,
        divergence_guard: a.divergence_guard,
        selection: a.selection.as_deref().map(parse_rule).transpose()?,
        tie_break: a.tie_break.as_deref().map(parse_tie).transpose()?,
        subsolver_tol: a.subsolver_tol,
        max_inner_iters: None,
        out: a.out,
    };
    Ok(file.overlay(flags))
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Run(a) => {
            cmd_run(&run_spec(a)?, &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Diagnose(d) => {
            let args = DiagnoseArgs {
                path: d.trace,
                rho: d.rho,
                f_star: d.f_star,
                theta: d.theta,
                burn_in: d.burn_in,
                lipschitz: d.lipschitz,
                json: d.json,
                report: d.report,
            };
            Ok(if cmd_diagnose(&args, &mut out)? { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Rates(r) => {
            let args = RatesArgs {
                form: r.form.map(|f| match f {
                    FormArg::Next => Form::Next,
                    FormArg::Current => Form::Current,
                    FormArg::Mixed => Form::Mixed,
                }),
                alpha: r.alpha,
                beta: r.beta,
                a: r.a,
                b: r.b,
                c: r.c,
                generate: r.generate,
                r0: r.r0,
                theta: r.theta,
                json: r.json,
            };
            cmd_rates(&args, &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Zoo { action: None | Some(ZooAction::List) } => {
            cmd_zoo_list(&mut out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
