//! Cross-checks a solver run against the brute-force oracles.

use mlmarket_core::oracle::{
    brute_force_equilibrium, brute_force_joint_product, exact_marginals, MAX_EQUILIBRIUM_GOODS,
    ORACLE_STATE_CAP,
};
use mlmarket_core::{AgentStyle, Belief, FactorTable};

use crate::error::Result;
use crate::runner::{Solution, SolverUsed, Validation};
use crate::scenario::Loaded;

pub const EXACT_TOLERANCE: f64 = 1e-6;
pub const GRID_TOLERANCE: f64 = 1e-3;
pub const GRID_RESOLUTION: f64 = 1e-3;

/// Tolerance overrides; `None` keeps the per-oracle default.
#[derive(Debug, Clone, Copy, Default)]
pub struct ValidateOptions {
    pub tolerance: Option<f64>,
}

fn unvalidatable(oracle: &str, reason: impl Into<String>) -> Validation {
    Validation {
        status: "unvalidatable".into(),
        oracle: oracle.into(),
        max_discrepancy: None,
        tolerance: None,
        reason: Some(reason.into()),
    }
}

fn compare(oracle: &str, got: &[f64], want: &[f64], tolerance: f64) -> Validation {
    let gap = got
        .iter()
        .zip(want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Validation {
        status: if gap <= tolerance { "pass" } else { "fail" }.into(),
        oracle: oracle.into(),
        max_discrepancy: Some(gap),
        tolerance: Some(tolerance),
        reason: None,
    }
}

/// Niche market prices recomputed as an explicit factor product.
pub fn factor_product_prices(loaded: &Loaded) -> Result<Belief> {
    let mut base = None;
    let mut factors: Vec<FactorTable> = Vec::new();
    for a in &loaded.agents {
        match &a.style {
            AgentStyle::FullJoint(b) => base = Some(b),
            AgentStyle::Niche(f) => factors.push(f.clone()),
            AgentStyle::Marginal(_) => {}
        }
    }
    Ok(brute_force_joint_product(&loaded.space, base, &factors)?)
}

pub fn validate(loaded: &Loaded, solution: &Solution, opts: ValidateOptions) -> Result<Validation> {
    let space = &loaded.space;
    let states = space.num_joint_states();
    let v = match solution.solver {
        SolverUsed::ClosedFormNiche => {
            if states > ORACLE_STATE_CAP {
                unvalidatable(
                    "brute_force_joint_product",
                    "unvalidatable at this scale: joint state count exceeds the oracle cap",
                )
            } else {
                let product = factor_product_prices(loaded)?;
                compare(
                    "brute_force_joint_product",
                    &solution.prices,
                    product.probs(),
                    opts.tolerance.unwrap_or(EXACT_TOLERANCE),
                )
            }
        }
        SolverUsed::MessagePassing => {
            let oracle = "exact_marginals";
            if states > ORACLE_STATE_CAP {
                unvalidatable(
                    oracle,
                    "unvalidatable at this scale: joint state count exceeds the oracle cap",
                )
            } else {
                match shared_joint_belief(loaded) {
                    Some(b) => {
                        let want: Vec<f64> = exact_marginals(space, b)?.iter().map(|m| m.prob(1)).collect();
                        compare(oracle, &solution.prices, &want, opts.tolerance.unwrap_or(EXACT_TOLERANCE))
                    }
                    None => unvalidatable(
                        oracle,
                        "no oracle for restricted markets whose agents disagree; exact marginals apply only to a single shared joint belief",
                    ),
                }
            }
        }
        _ => {
            let oracle = "brute_force_equilibrium";
            if states > MAX_EQUILIBRIUM_GOODS {
                unvalidatable(
                    oracle,
                    format!("unvalidatable at this scale: {states} goods; the price grid covers at most {MAX_EQUILIBRIUM_GOODS}"),
                )
            } else {
                let grid = brute_force_equilibrium(space, &loaded.agents, GRID_RESOLUTION)?;
                compare(
                    oracle,
                    &solution.prices,
                    grid.costs(),
                    opts.tolerance.unwrap_or(GRID_TOLERANCE),
                )
            }
        }
    };
    Ok(v)
}

/// The joint belief every agent shares, if all agents are full-joint with
/// identical tables.
fn shared_joint_belief(loaded: &Loaded) -> Option<&Belief> {
    let mut beliefs = loaded.agents.iter().map(|a| match &a.style {
        AgentStyle::FullJoint(b) => Some(b),
        _ => None,
    });
    let first = beliefs.next()??;
    for b in beliefs {
        if b? != first {
            return None;
        }
    }
    Some(first)
}
