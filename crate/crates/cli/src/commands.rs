use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mlmarket_core::oracle::{brute_force_equilibrium, exact_marginals};
use mlmarket_core::AgentStyle;

use crate::error::{CliError, Result};
use crate::generate::{generate, Family};
use crate::runner::{render_table, run, Overrides, RunReport};
use crate::scenario::{build, load_scenario, Loaded, Scenario};
use crate::trace::write_trace;
use crate::validate::{factor_product_prices, validate, ValidateOptions, GRID_RESOLUTION};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    NotConverged = 1,
    ValidationFailed = 2,
    InputError = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mlmarket",
    version,
    about = "Solve prediction-market scenarios for equilibrium prices"
)]
pub struct Cli {
    /// Override the solver tolerance
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    /// Override the iteration (or sweep) budget
    #[arg(long = "max-iters", global = true)]
    pub max_iters: Option<usize>,

    /// Seed for `generate`; solvers are deterministic and ignore it
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the JSON report here
    #[arg(long, short)]
    pub out: Option<PathBuf>,

    /// Print JSON instead of the table
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a scenario, or re-run the scenario embedded in a report
    Run {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Solve a scenario and compare against the matching oracle
    Validate {
        scenario: PathBuf,
        /// Allowed price discrepancy (default depends on the oracle)
        #[arg(long = "oracle-tolerance")]
        oracle_tolerance: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Run message passing and write one CSV row per (sweep, good)
    Trace {
        scenario: PathBuf,
        /// CSV destination; stdout when absent
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Invoke an oracle directly
    Oracle {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = OracleKind::Equilibrium)]
        which: OracleKind,
        /// Price-grid resolution for the equilibrium oracle
        #[arg(long, default_value_t = GRID_RESOLUTION)]
        resolution: f64,
    },
    /// Write a random scenario
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Goods for joint families, variables otherwise
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 3)]
        agents: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    /// Grid search over the price simplex
    Equilibrium,
    /// Base belief times niche factors, by enumeration
    Product,
    /// Per-variable marginals of each full-joint belief
    Marginals,
}

pub fn execute(cli: Cli) -> Status {
    match dispatch(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            Status::InputError
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Status> {
    let overrides = Overrides {
        tolerance: cli.tolerance,
        max_iterations: cli.max_iters,
    };
    match &cli.command {
        Command::Run { input, output } => run_cmd(input, output, overrides),
        Command::Validate {
            scenario,
            oracle_tolerance,
            output,
        } => {
            let loaded = load_scenario(scenario)?;
            let (mut report, solution) = run(&loaded, overrides)?;
            let v = validate(
                &loaded,
                &solution,
                ValidateOptions {
                    tolerance: *oracle_tolerance,
                },
            )?;
            let failed = v.status == "fail";
            report.validation = Some(v);
            emit(&report, output)?;
            Ok(if failed {
                Status::ValidationFailed
            } else {
                convergence_status(&report)
            })
        }
        Command::Trace { scenario, out } => {
            let loaded = load_scenario(scenario)?;
            let (report, solution) = run(&loaded, overrides)?;
            let mp = solution.message_passing.as_ref().ok_or_else(|| {
                CliError::invalid("trace needs a restricted market solved by message passing")
            })?;
            let ids: Vec<String> = loaded.scenario.agents.iter().map(|a| a.id.clone()).collect();
            match out {
                Some(p) => {
                    let f =
                        fs::File::create(p).map_err(|e| CliError::Output(format!("{}: {e}", p.display())))?;
                    write_trace(f, mp, &solution.labels, &ids)?;
                }
                None => write_trace(io::stdout().lock(), mp, &solution.labels, &ids)?,
            }
            eprintln!(
                "{} sweeps, converged: {}, residual {:.3e}",
                report.iterations, report.converged, report.residual
            );
            Ok(convergence_status(&report))
        }
        Command::Oracle {
            scenario,
            which,
            resolution,
        } => {
            let loaded = load_scenario(scenario)?;
            print!("{}", oracle_cmd(&loaded, *which, *resolution)?);
            Ok(Status::Success)
        }
        Command::Generate {
            family,
            size,
            agents,
            out,
        } => {
            let s = generate(*family, *size, *agents, cli.seed);
            let text = serde_json::to_string_pretty(&s).expect("scenarios always serialize") + "\n";
            write_or_print(out.as_deref(), &text)?;
            Ok(Status::Success)
        }
    }
}

fn convergence_status(report: &RunReport) -> Status {
    if report.converged {
        Status::Success
    } else {
        Status::NotConverged
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Output(e.to_string())),
    }
}

fn emit(report: &RunReport, output: &Output) -> Result<()> {
    let json = report.to_json() + "\n";
    if let Some(p) = &output.out {
        write_or_print(Some(p), &json)?;
    }
    if output.json {
        write_or_print(None, &json)
    } else {
        write_or_print(None, &render_table(report))
    }
}

/// Input that is either a scenario or a persisted report.
pub enum Input {
    Scenario(Loaded),
    Report(Box<RunReport>, Loaded),
}

pub fn read_input(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let origin = path.display().to_string();
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        origin: origin.clone(),
        source: e,
    })?;
    if value.get("digest").is_some() && value.get("scenario").is_some() {
        let report = RunReport::from_json(&text, &origin)?;
        if report.scenario.digest() != report.digest {
            return Err(CliError::invalid(format!(
                "{origin}: embedded scenario does not match its digest"
            )));
        }
        let loaded = build(report.scenario.clone())?;
        Ok(Input::Report(Box::new(report), loaded))
    } else {
        Ok(Input::Scenario(build(Scenario::from_json(&text, &origin)?)?))
    }
}

/// Re-runs a persisted report and checks the prices bit for bit.
pub fn rerun(previous: &RunReport, loaded: &Loaded, overrides: Overrides) -> Result<(RunReport, bool)> {
    let (report, _) = run(loaded, overrides)?;
    let same = previous.prices.len() == report.prices.len()
        && previous
            .prices
            .iter()
            .zip(&report.prices)
            .all(|((la, a), (lb, b))| la == lb && a.to_bits() == b.to_bits());
    Ok((report, same))
}

fn run_cmd(input: &Path, output: &Output, overrides: Overrides) -> Result<Status> {
    match read_input(input)? {
        Input::Scenario(loaded) => {
            let (report, _) = run(&loaded, overrides)?;
            emit(&report, output)?;
            Ok(convergence_status(&report))
        }
        Input::Report(previous, loaded) => {
            let (mut report, same) = rerun(&previous, &loaded, overrides)?;
            if !same {
                report
                    .warnings
                    .push("re-run prices differ from the stored report".into());
            }
            emit(&report, output)?;
            eprintln!("reproduced: {}", if same { "yes" } else { "no" });
            Ok(if !same {
                Status::ValidationFailed
            } else {
                convergence_status(&report)
            })
        }
    }
}

fn oracle_cmd(loaded: &Loaded, which: OracleKind, resolution: f64) -> Result<String> {
    use std::fmt::Write as _;
    let space = &loaded.space;
    let mut out = String::new();
    match which {
        OracleKind::Equilibrium => {
            let prices = brute_force_equilibrium(space, &loaded.agents, resolution)?;
            for (g, c) in space.joint_goods().iter().zip(prices.costs()) {
                let _ = writeln!(out, "{}  {c:.6}", g.label(space));
            }
        }
        OracleKind::Product => {
            let joint = factor_product_prices(loaded)?;
            for (g, c) in space.joint_goods().iter().zip(joint.probs()) {
                let _ = writeln!(out, "{}  {c:.12}", g.label(space));
            }
        }
        OracleKind::Marginals => {
            for (decl, agent) in loaded.scenario.agents.iter().zip(&loaded.agents) {
                let AgentStyle::FullJoint(b) = &agent.style else {
                    continue;
                };
                let _ = writeln!(out, "{}", decl.id);
                for (v, m) in space.variables().iter().zip(exact_marginals(space, b)?) {
                    let probs: Vec<String> = m.probs().iter().map(|p| format!("{p:.12}")).collect();
                    let _ = writeln!(out, "  {}  {}", v.name, probs.join(" "));
                }
            }
        }
    }
    Ok(out)
}
