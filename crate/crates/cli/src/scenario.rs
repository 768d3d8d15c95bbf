//! Scenario documents: JSON with an explicit variable order on every table.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use mlmarket_core::beliefs::{Belief, FactorTable, Scope, UtilityKind};
use mlmarket_core::outcome_space::{Clique, OutcomeSpace, Variable};
use mlmarket_core::Agent;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Belief tables further than this from summing to one are flagged.
pub const NORMALIZATION_WARN_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub space: SpaceDecl,
    #[serde(default)]
    pub market: MarketKind,
    pub agents: Vec<AgentDecl>,
    #[serde(default)]
    pub solver: SolverDecl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDecl {
    pub variables: Vec<VariableDecl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDecl {
    pub name: String,
    #[serde(default = "binary")]
    pub cardinality: usize,
}

fn binary() -> usize {
    2
}

fn unit_wealth() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarketKind {
    /// One good per joint state.
    #[default]
    Joint,
    /// One bet per binary variable.
    Restricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UtilityTag {
    Linear,
    Log,
    Exp,
}

impl From<UtilityTag> for UtilityKind {
    fn from(t: UtilityTag) -> Self {
        match t {
            UtilityTag::Linear => UtilityKind::LinearDebtFree,
            UtilityTag::Log => UtilityKind::Logarithmic,
            UtilityTag::Exp => UtilityKind::ExponentialNegative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StyleTag {
    #[default]
    FullJoint,
    Niche,
    Marginal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentDecl {
    pub id: String,
    pub utility: UtilityTag,
    #[serde(default = "unit_wealth")]
    pub wealth: f64,
    #[serde(default)]
    pub style: StyleTag,
    /// Variables enumerated by `table`, last one fastest. For niche and
    /// marginal agents this is also the clique.
    pub state_order: Vec<String>,
    pub table: Vec<f64>,
    /// `table` holds natural logarithms.
    #[serde(default)]
    pub log: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    #[default]
    Auto,
    ClosedForm,
    Tatonnement,
    MessagePassing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    #[default]
    GaussSeidel,
    Jacobi,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverDecl {
    #[serde(default)]
    pub kind: SolverKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Tatonnement iterations or message-passing sweeps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_size: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub damping: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<SweepMode>,
    /// Message-passing visiting order, by variable name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
}

impl Scenario {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            origin: origin.to_owned(),
            source: e,
        })
    }

    /// SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("scenarios always serialize");
        hex::encode(Sha256::digest(bytes))
    }
}

/// A validated scenario with its core objects built.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub scenario: Scenario,
    pub space: OutcomeSpace,
    pub agents: Vec<Agent>,
    pub warnings: Vec<String>,
}

pub fn load_scenario(path: &Path) -> Result<Loaded> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    build(Scenario::from_json(&text, &path.display().to_string())?)
}

pub fn build(scenario: Scenario) -> Result<Loaded> {
    let mut names = HashSet::new();
    for v in &scenario.space.variables {
        if !names.insert(v.name.as_str()) {
            return Err(CliError::invalid(format!(
                "variable `{}` is declared twice",
                v.name
            )));
        }
    }
    let variables = scenario
        .space
        .variables
        .iter()
        .map(|v| Variable::new(v.name.clone(), v.cardinality))
        .collect();
    // Restricted markets trade one bet per variable and never enumerate
    // joint states, so the joint-state cap does not apply to them.
    let space = match scenario.market {
        MarketKind::Joint => OutcomeSpace::new(variables),
        MarketKind::Restricted => OutcomeSpace::with_state_cap(variables, usize::MAX),
    }
    .map_err(|e| CliError::invalid(format!("space: {e}")))?;
    if scenario.market == MarketKind::Restricted && !space.is_binary() {
        return Err(CliError::invalid(
            "a restricted market needs every variable to be binary",
        ));
    }

    let mut ids = HashSet::new();
    let mut warnings = Vec::new();
    let mut agents = Vec::with_capacity(scenario.agents.len());
    if scenario.agents.is_empty() {
        return Err(CliError::invalid("scenario declares no agents"));
    }
    for decl in &scenario.agents {
        if !ids.insert(decl.id.as_str()) {
            return Err(CliError::invalid(format!("agent id `{}` is used twice", decl.id)));
        }
        let agent = build_agent(&space, decl, &mut warnings).map_err(|e| e.in_agent(&decl.id))?;
        agents.push(agent);
    }
    if let Some(order) = &scenario.solver.order {
        for name in order {
            if space.variable_index(name).is_none() {
                return Err(CliError::invalid(format!(
                    "solver order references undeclared variable `{name}`"
                )));
            }
        }
    }
    Ok(Loaded {
        scenario,
        space,
        agents,
        warnings,
    })
}

fn build_agent(space: &OutcomeSpace, decl: &AgentDecl, warnings: &mut Vec<String>) -> Result<Agent> {
    let mut declared = Vec::with_capacity(decl.state_order.len());
    for name in &decl.state_order {
        let idx = space
            .variable_index(name)
            .ok_or_else(|| CliError::invalid(format!("references undeclared variable `{name}`")))?;
        if declared.contains(&idx) {
            return Err(CliError::invalid(format!(
                "lists variable `{name}` twice in state_order"
            )));
        }
        declared.push(idx);
    }
    if declared.is_empty() {
        return Err(CliError::invalid("state_order is empty"));
    }
    let clique = Clique::new(declared.clone()).map_err(|e| CliError::invalid(e.to_string()))?;
    if decl.style == StyleTag::FullJoint && clique.len() != space.num_variables() {
        return Err(CliError::invalid(
            "a full_joint table must list every variable in state_order",
        ));
    }
    let cards: Vec<usize> = declared.iter().map(|&v| space.cardinality(v)).collect();
    let expected: usize = cards.iter().product();
    if decl.table.len() != expected {
        return Err(CliError::invalid(format!(
            "table has {} entries; state_order implies {expected}",
            decl.table.len()
        )));
    }
    if let Some(i) = decl
        .table
        .iter()
        .position(|v| !v.is_finite() && !(decl.log && *v == f64::NEG_INFINITY))
    {
        return Err(CliError::invalid(format!(
            "table entry {i} is not a finite number"
        )));
    }
    let table = canonical_order(space, &clique, &declared, &decl.table);
    let kind = UtilityKind::from(decl.utility);

    let agent = match decl.style {
        StyleTag::FullJoint | StyleTag::Marginal => {
            let belief = belief_from_table(space, &clique, decl, table, warnings)?;
            if decl.style == StyleTag::FullJoint {
                Agent::full_joint(decl.id.clone(), decl.wealth, kind, belief)
            } else {
                if kind != UtilityKind::ExponentialNegative {
                    return Err(CliError::invalid("marginal agents need exp utility"));
                }
                Agent::marginal(decl.id.clone(), decl.wealth, belief)
            }
        }
        StyleTag::Niche => {
            if kind != UtilityKind::ExponentialNegative {
                return Err(CliError::invalid("niche agents need exp utility"));
            }
            let values = if decl.log {
                table.iter().map(|v| v.exp()).collect()
            } else {
                table
            };
            let factor = FactorTable::new(clique, values).map_err(|e| CliError::invalid(e.to_string()))?;
            Agent::niche(decl.id.clone(), decl.wealth, factor)
        }
    };
    agent.map_err(|e| CliError::invalid(e.to_string()))
}

fn belief_from_table(
    space: &OutcomeSpace,
    clique: &Clique,
    decl: &AgentDecl,
    table: Vec<f64>,
    warnings: &mut Vec<String>,
) -> Result<Belief> {
    let scope = if clique.len() == space.num_variables() {
        Scope::Full
    } else {
        Scope::Clique(clique.clone())
    };
    let mass = if decl.log {
        table.iter().map(|v| v.exp()).sum::<f64>()
    } else {
        table.iter().sum::<f64>()
    };
    if (mass - 1.0).abs() > NORMALIZATION_WARN_TOLERANCE {
        warnings.push(format!(
            "agent `{}`: belief table sums to {mass}; normalized",
            decl.id
        ));
    }
    let belief = if decl.log {
        Belief::from_log_weights(scope, &table)
    } else {
        Belief::from_weights(scope, table)
    };
    belief.map_err(|e| CliError::invalid(e.to_string()))
}

/// Re-indexes a table enumerated over `declared` (last fastest) into the
/// clique's canonical ascending-variable order.
fn canonical_order(space: &OutcomeSpace, clique: &Clique, declared: &[usize], table: &[f64]) -> Vec<f64> {
    let members = clique.members();
    let n = table.len();
    (0..n)
        .map(|t| {
            let values = space.substate_at(clique, t);
            let src = declared.iter().fold(0, |acc, v| {
                let pos = members
                    .iter()
                    .position(|m| m == v)
                    .expect("declared variables form the clique");
                acc * space.cardinality(*v) + values[pos]
            });
            table[src]
        })
        .collect()
}
