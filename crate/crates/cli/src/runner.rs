//! Solver dispatch and run reports.

use std::time::Instant;

use indexmap::IndexMap;
use mlmarket_core::beliefs::UtilityKind;
use mlmarket_core::equilibrium::{
    solve_exp_market, solve_linear_binary, solve_log_market, solve_niche_market, tatonnement,
    EquilibriumReport, PriceVector, TatonnementParams, CLOSED_FORM_TOLERANCE,
};
use mlmarket_core::message_passing::{run_message_passing, MessagePassingReport, Schedule, UpdateMode};
use mlmarket_core::{Agent, AgentStyle, RestrictedMarket};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::scenario::{Loaded, MarketKind, Scenario, SolverKind, SweepMode};

/// Command-line overrides of the scenario's solver parameters.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverUsed {
    ClosedFormLog,
    ClosedFormExp,
    ClosedFormNiche,
    WeightedMedian,
    Tatonnement,
    MessagePassing,
}

impl SolverUsed {
    pub fn name(self) -> &'static str {
        match self {
            Self::ClosedFormLog => "closed_form_log",
            Self::ClosedFormExp => "closed_form_exp",
            Self::ClosedFormNiche => "closed_form_niche",
            Self::WeightedMedian => "weighted_median",
            Self::Tatonnement => "tatonnement",
            Self::MessagePassing => "message_passing",
        }
    }
}

/// Solver output in the scenario's agent order.
#[derive(Debug, Clone)]
pub struct Solution {
    pub solver: SolverUsed,
    pub labels: Vec<String>,
    pub prices: Vec<f64>,
    pub positions: Vec<Vec<f64>>,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub tolerance: f64,
    pub warnings: Vec<String>,
    pub message_passing: Option<MessagePassingReport>,
}

fn full_joint_kind(agents: &[Agent]) -> Option<UtilityKind> {
    let first = agents.first()?.utility;
    agents
        .iter()
        .all(|a| a.utility == first && matches!(a.style, AgentStyle::FullJoint(_)))
        .then_some(first)
}

/// Index of the single exp full-joint agent when every other agent is niche.
fn niche_base(agents: &[Agent]) -> Option<usize> {
    let bases: Vec<usize> = agents
        .iter()
        .enumerate()
        .filter(|(_, a)| matches!(a.style, AgentStyle::FullJoint(_)))
        .map(|(i, _)| i)
        .collect();
    let niche = agents
        .iter()
        .filter(|a| matches!(a.style, AgentStyle::Niche(_)))
        .count();
    (bases.len() == 1
        && niche >= 1
        && bases.len() + niche == agents.len()
        && agents[bases[0]].utility == UtilityKind::ExponentialNegative)
        .then(|| bases[0])
}

fn closed_form_for(loaded: &Loaded) -> Option<SolverUsed> {
    let agents = &loaded.agents;
    match full_joint_kind(agents) {
        Some(UtilityKind::Logarithmic) => Some(SolverUsed::ClosedFormLog),
        Some(UtilityKind::ExponentialNegative) => Some(SolverUsed::ClosedFormExp),
        Some(UtilityKind::LinearDebtFree) if loaded.space.num_joint_states() == 2 => {
            Some(SolverUsed::WeightedMedian)
        }
        _ => niche_base(agents).map(|_| SolverUsed::ClosedFormNiche),
    }
}

/// Which solver a scenario runs under.
pub fn dispatch(loaded: &Loaded) -> Result<SolverUsed> {
    let market = loaded.scenario.market;
    match (loaded.scenario.solver.kind, market) {
        (SolverKind::Auto | SolverKind::MessagePassing, MarketKind::Restricted) => {
            Ok(SolverUsed::MessagePassing)
        }
        (_, MarketKind::Restricted) => Err(CliError::invalid(
            "restricted markets are solved by message passing only",
        )),
        (SolverKind::MessagePassing, MarketKind::Joint) => {
            Err(CliError::invalid("message passing needs a restricted market"))
        }
        (SolverKind::Tatonnement, MarketKind::Joint) => Ok(SolverUsed::Tatonnement),
        (SolverKind::ClosedForm, MarketKind::Joint) => closed_form_for(loaded)
            .ok_or_else(|| CliError::invalid("no closed form covers this agent population; use tatonnement")),
        (SolverKind::Auto, MarketKind::Joint) => {
            Ok(closed_form_for(loaded).unwrap_or(SolverUsed::Tatonnement))
        }
    }
}

pub fn solve(loaded: &Loaded, overrides: Overrides) -> Result<Solution> {
    let solver = dispatch(loaded)?;
    let decl = &loaded.scenario.solver;
    let tolerance = overrides.tolerance.or(decl.tolerance);
    let max_iterations = overrides.max_iterations.or(decl.max_iterations);
    let space = &loaded.space;
    let agents = &loaded.agents;

    if solver == SolverUsed::MessagePassing {
        let mut schedule = Schedule::new(space.num_variables());
        if let Some(t) = tolerance {
            schedule.tolerance = t;
        }
        if let Some(m) = max_iterations {
            schedule.max_sweeps = m;
        }
        if let Some(d) = decl.damping {
            schedule.damping = d;
        }
        if decl.mode == Some(SweepMode::Jacobi) {
            schedule.mode = UpdateMode::Jacobi;
        }
        if let Some(order) = &decl.order {
            schedule.order = order
                .iter()
                .map(|n| space.variable_index(n).expect("checked at load"))
                .collect();
        }
        let market = RestrictedMarket::new(space.clone(), agents.clone())?;
        let report = run_message_passing(&market, &schedule)?;
        let labels = space
            .single_variable_goods()?
            .iter()
            .map(|g| g.label(space))
            .collect();
        return Ok(Solution {
            solver,
            labels,
            prices: report.state.prices.clone(),
            positions: report.state.positions.clone(),
            residual: report.clearing_residual(),
            iterations: report.sweeps.len(),
            converged: report.converged,
            tolerance: schedule.tolerance,
            warnings: report.warnings.clone(),
            message_passing: Some(report),
        });
    }

    let mut order: Vec<usize> = (0..agents.len()).collect();
    let mut tol = CLOSED_FORM_TOLERANCE;
    let report: EquilibriumReport = match solver {
        SolverUsed::ClosedFormLog => solve_log_market(agents)?,
        SolverUsed::ClosedFormExp => solve_exp_market(agents)?,
        SolverUsed::WeightedMedian => solve_linear_binary(agents)?,
        SolverUsed::ClosedFormNiche => {
            let base = niche_base(agents).expect("dispatch checked the population");
            let niche: Vec<Agent> = agents
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != base)
                .map(|(_, a)| a.clone())
                .collect();
            order = std::iter::once(base)
                .chain((0..agents.len()).filter(|&i| i != base))
                .collect();
            solve_niche_market(space, &agents[base], &niche)?
        }
        SolverUsed::Tatonnement => {
            let mut params = TatonnementParams::default();
            if let Some(t) = tolerance {
                params.tolerance = t;
            }
            if let Some(m) = max_iterations {
                params.max_iterations = m;
            }
            if let Some(s) = decl.step_size {
                params.step_size = s;
            }
            if let Some(d) = decl.damping {
                params.damping = d;
            }
            tol = params.tolerance;
            tatonnement(
                space,
                agents,
                &PriceVector::uniform(space.num_joint_states()),
                &params,
            )?
        }
        SolverUsed::MessagePassing => unreachable!(),
    };
    // Reported positions follow solver order; map back to scenario order.
    let mut positions = vec![Vec::new(); agents.len()];
    for (slot, pos) in order.iter().zip(report.positions) {
        positions[*slot] = pos.into_holdings();
    }
    Ok(Solution {
        solver,
        labels: space.joint_goods().iter().map(|g| g.label(space)).collect(),
        prices: report.prices.costs().to_vec(),
        positions,
        residual: report.clearing_residual,
        iterations: report.iterations,
        converged: report.converged,
        tolerance: tol,
        warnings: report.warnings,
        message_passing: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    /// `pass`, `fail` or `unvalidatable`.
    pub status: String,
    pub oracle: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_discrepancy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub digest: String,
    pub solver: SolverUsed,
    pub converged: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub iterations: usize,
    pub wall_time_ms: f64,
    pub prices: IndexMap<String, f64>,
    pub positions: IndexMap<String, IndexMap<String, f64>>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
    pub scenario: Scenario,
}

impl RunReport {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            origin: origin.to_owned(),
            source: e,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn price_values(&self) -> Vec<f64> {
        self.prices.values().copied().collect()
    }
}

/// Solves `loaded` and packages the result.
pub fn run(loaded: &Loaded, overrides: Overrides) -> Result<(RunReport, Solution)> {
    let start = Instant::now();
    let solution = solve(loaded, overrides)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let prices = solution
        .labels
        .iter()
        .cloned()
        .zip(solution.prices.iter().copied())
        .collect();
    let positions = loaded
        .scenario
        .agents
        .iter()
        .zip(&solution.positions)
        .map(|(a, p)| {
            let holdings = solution.labels.iter().cloned().zip(p.iter().copied()).collect();
            (a.id.clone(), holdings)
        })
        .collect();
    let mut warnings = loaded.warnings.clone();
    warnings.extend(solution.warnings.iter().cloned());
    let report = RunReport {
        digest: loaded.scenario.digest(),
        solver: solution.solver,
        converged: solution.converged,
        residual: solution.residual,
        tolerance: solution.tolerance,
        iterations: solution.iterations,
        wall_time_ms,
        prices,
        positions,
        warnings,
        validation: None,
        scenario: loaded.scenario.clone(),
    };
    Ok((report, solution))
}

/// Aligned plain-text rendering.
pub fn render_table(report: &RunReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "solver      {}", report.solver.name());
    let _ = writeln!(
        out,
        "converged   {} (residual {:.3e}, tolerance {:.1e}, {} iterations)",
        if report.converged { "yes" } else { "no" },
        report.residual,
        report.tolerance,
        report.iterations
    );
    let _ = writeln!(out, "digest      {}", report.digest);
    let _ = writeln!(out, "wall time   {:.3} ms", report.wall_time_ms);
    if let Some(v) = &report.validation {
        let _ = write!(out, "validation  {} vs {}", v.status, v.oracle);
        if let (Some(d), Some(t)) = (v.max_discrepancy, v.tolerance) {
            let _ = write!(out, " (max discrepancy {d:.3e}, tolerance {t:.1e})");
        }
        if let Some(r) = &v.reason {
            let _ = write!(out, ": {r}");
        }
        out.push('\n');
    }

    let label_w = report.prices.keys().map(String::len).max().unwrap_or(0).max(4);
    let _ = writeln!(out, "\n{:<label_w$}  {:>16}", "good", "price");
    for (label, price) in &report.prices {
        let _ = writeln!(out, "{label:<label_w$}  {price:>16.12}");
    }

    let id_w = report.positions.keys().map(String::len).max().unwrap_or(0).max(5);
    let col_w = label_w.max(12);
    let _ = write!(out, "\n{:<id_w$}", "agent");
    for label in report.prices.keys() {
        let _ = write!(out, "  {label:>col_w$}");
    }
    out.push('\n');
    for (id, holdings) in &report.positions {
        let _ = write!(out, "{id:<id_w$}");
        for h in holdings.values() {
            let _ = write!(out, "  {h:>col_w$.6}");
        }
        out.push('\n');
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
