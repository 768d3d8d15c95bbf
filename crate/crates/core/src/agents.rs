//! Agents and their buying functions: the price-conditional optimal
//! positions for each utility form and belief style.

use alloc::string::String;
use alloc::vec::Vec;

use crate::beliefs::{Belief, FactorTable, Scope, UtilityKind};
use crate::equilibrium::PriceVector;
use crate::error::{Error, Result};
use crate::math::{dot, ln};
use crate::outcome_space::{Clique, OutcomeSpace};

pub use crate::oracle::best_response_oracle;

/// Per-good holdings. Negative entries are short positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Position(Vec<f64>);

impl Position {
    pub fn new(holdings: Vec<f64>) -> Self {
        Self(holdings)
    }

    pub fn zeros(len: usize) -> Self {
        Self(alloc::vec![0.0; len])
    }

    pub fn holdings(&self) -> &[f64] {
        &self.0
    }

    pub fn into_holdings(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Market value `s.c`.
    pub fn value(&self, prices: &PriceVector) -> f64 {
        dot(&self.0, prices.costs())
    }

    /// `s + alpha * 1`: the risk-free shift.
    pub fn shifted(&self, alpha: f64) -> Self {
        Self(self.0.iter().map(|s| s + alpha).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|s| s.is_finite())
    }
}

/// Canonical representative of the risk-free equivalence class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardizationKind {
    /// `s.c = 0`
    ZeroValue,
    /// `s_last = 0`
    ZeroLastGood,
    /// `min_k s_k = 0`
    MinZero,
}

/// Shifts `position` by a multiple of the all-ones bundle so the chosen
/// constraint holds.
pub fn standardize(position: &Position, prices: &PriceVector, kind: StandardizationKind) -> Result<Position> {
    if position.len() != prices.len() {
        return Err(Error::LengthMismatch {
            expected: prices.len(),
            found: position.len(),
        });
    }
    let alpha = match kind {
        StandardizationKind::ZeroValue => {
            let total = prices.total();
            if total == 0.0 {
                return Err(Error::DegeneratePrices);
            }
            -position.value(prices) / total
        }
        StandardizationKind::ZeroLastGood => -position.0.last().copied().unwrap_or(0.0),
        StandardizationKind::MinZero => -position.0.iter().copied().fold(f64::INFINITY, f64::min),
    };
    Ok(position.shifted(alpha))
}

#[derive(Debug, Clone, PartialEq)]
pub enum AgentStyle {
    /// Belief over every joint state.
    FullJoint(Belief),
    /// Deviation factor relative to the market price on a clique.
    Niche(FactorTable),
    /// Belief over a clique only; bets on marginal outcomes.
    Marginal(Belief),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub id: String,
    /// Kept for reporting even where positions ignore it.
    pub wealth: f64,
    pub utility: UtilityKind,
    pub style: AgentStyle,
}

impl Agent {
    pub fn new(id: impl Into<String>, wealth: f64, utility: UtilityKind, style: AgentStyle) -> Result<Self> {
        if !(wealth > 0.0) || !wealth.is_finite() {
            return Err(Error::InvalidWealth);
        }
        if !matches!(style, AgentStyle::FullJoint(_)) && utility != UtilityKind::ExponentialNegative {
            return Err(Error::UnsupportedAgent(
                "niche and marginal agents require exponential utility",
            ));
        }
        Ok(Self {
            id: id.into(),
            wealth,
            utility,
            style,
        })
    }

    pub fn full_joint(
        id: impl Into<String>,
        wealth: f64,
        utility: UtilityKind,
        belief: Belief,
    ) -> Result<Self> {
        Self::new(id, wealth, utility, AgentStyle::FullJoint(belief))
    }

    pub fn niche(id: impl Into<String>, wealth: f64, factor: FactorTable) -> Result<Self> {
        Self::new(
            id,
            wealth,
            UtilityKind::ExponentialNegative,
            AgentStyle::Niche(factor),
        )
    }

    pub fn marginal(id: impl Into<String>, wealth: f64, belief: Belief) -> Result<Self> {
        Self::new(
            id,
            wealth,
            UtilityKind::ExponentialNegative,
            AgentStyle::Marginal(belief),
        )
    }

    /// Checks table lengths and clique references against `space`.
    pub fn check_space(&self, space: &OutcomeSpace) -> Result<()> {
        match &self.style {
            AgentStyle::FullJoint(b) => {
                if *b.scope() != Scope::Full {
                    return Err(Error::UnsupportedAgent(
                        "full-joint agents need a belief over the whole space",
                    ));
                }
                b.scope().check(space, b.len())
            }
            AgentStyle::Niche(f) => f.check(space),
            AgentStyle::Marginal(b) => b.scope().check(space, b.len()),
        }
    }

    /// Variables this agent holds an opinion on.
    pub fn clique(&self, space: &OutcomeSpace) -> Clique {
        match &self.style {
            AgentStyle::FullJoint(_) => space.full_clique(),
            AgentStyle::Niche(f) => f.scope().clone(),
            AgentStyle::Marginal(b) => b.scope().clique(space),
        }
    }

    /// Optimal position over the joint goods at `prices`. Marginal agents'
    /// substate holdings are expanded onto every consistent joint good.
    pub fn demand(&self, space: &OutcomeSpace, prices: &PriceVector) -> Result<Position> {
        match (&self.style, self.utility) {
            (AgentStyle::FullJoint(b), UtilityKind::LinearDebtFree) => buy_linear(self.wealth, b, prices),
            (AgentStyle::FullJoint(b), UtilityKind::Logarithmic) => buy_log(self.wealth, b, prices),
            (AgentStyle::FullJoint(b), UtilityKind::ExponentialNegative) => buy_exp(b, prices),
            (AgentStyle::Niche(f), _) => buy_niche(space, f, prices),
            (AgentStyle::Marginal(b), _) => {
                let clique = b.scope().clique(space);
                let sub = buy_marginal(space, &clique, b, prices)?;
                expand_marginal(space, &clique, &sub)
            }
        }
    }
}

fn check_market(belief_len: usize, prices: &PriceVector) -> Result<()> {
    if belief_len != prices.len() {
        return Err(Error::LengthMismatch {
            expected: prices.len(),
            found: belief_len,
        });
    }
    Ok(())
}

/// Debt-free linear utility: stake the whole wealth on the good with the
/// largest relative edge `(P(k) - c_k) / c_k`, as a pure long position.
///
/// Ties go to the lowest index. Without a positive edge the agent stays out.
pub fn buy_linear(wealth: f64, belief: &Belief, prices: &PriceVector) -> Result<Position> {
    check_market(belief.len(), prices)?;
    let mut best: Option<(usize, f64)> = None;
    for (k, (&p, &c)) in belief.probs().iter().zip(prices.costs()).enumerate() {
        let edge = (p - c) / c;
        if best.is_none_or(|(_, e)| edge > e) {
            best = Some((k, edge));
        }
    }
    let mut s = Position::zeros(prices.len());
    if let Some((k, edge)) = best {
        if edge > 0.0 {
            s.0[k] = wealth / prices.cost(k);
        }
    }
    Ok(s)
}

/// Logarithmic utility: `s_k = W (P(k) - c_k) / c_k`, which has zero value.
pub fn buy_log(wealth: f64, belief: &Belief, prices: &PriceVector) -> Result<Position> {
    check_market(belief.len(), prices)?;
    Ok(Position(
        belief
            .probs()
            .iter()
            .zip(prices.costs())
            .map(|(&p, &c)| wealth * (p - c) / c)
            .collect(),
    ))
}

/// Exponential utility: `s_k = ln(P(k) / c_k) - ln(lambda)`, with `lambda`
/// fixing `s.c = 0`. Independent of wealth.
pub fn buy_exp(belief: &Belief, prices: &PriceVector) -> Result<Position> {
    check_market(belief.len(), prices)?;
    let log_p = belief.log_probs()?;
    let ratios: Vec<f64> = log_p
        .iter()
        .zip(prices.costs())
        .map(|(&lp, &c)| lp - ln(c))
        .collect();
    Ok(zero_value_shift(ratios, prices.costs()))
}

/// Niche agent with factor `F` on clique `S`: `s_k = ln F(y_k^S) - ln(lambda)`.
pub fn buy_niche(space: &OutcomeSpace, factor: &FactorTable, prices: &PriceVector) -> Result<Position> {
    space.check_prices(prices.costs())?;
    factor.check(space)?;
    let proj = space.projection(factor.scope())?;
    let log_f = factor.log_values();
    let raw: Vec<f64> = proj.iter().map(|&sub| log_f[sub]).collect();
    Ok(zero_value_shift(raw, prices.costs()))
}

/// Marginal agent: holding per clique substate,
/// `s(y_S) = ln P(y_S) - ln c(y_S) - ln(lambda)`, where `c(y_S)` is the
/// marginal cost and `lambda` fixes zero marginal value.
pub fn buy_marginal(
    space: &OutcomeSpace,
    clique: &Clique,
    belief: &Belief,
    prices: &PriceVector,
) -> Result<Position> {
    let costs = space.marginal_costs(prices.costs(), clique)?;
    if belief.len() != costs.len() {
        return Err(Error::LengthMismatch {
            expected: costs.len(),
            found: belief.len(),
        });
    }
    if let Some(index) = costs.iter().position(|&c| !(c > 0.0)) {
        return Err(Error::ZeroPrice { index });
    }
    let log_p = belief.log_probs()?;
    let ratios: Vec<f64> = log_p.iter().zip(&costs).map(|(&lp, &c)| lp - ln(c)).collect();
    Ok(zero_value_shift(ratios, &costs))
}

/// Buying a marginal outcome is an equal purchase of every consistent
/// joint good.
pub fn expand_marginal(space: &OutcomeSpace, clique: &Clique, substate: &Position) -> Result<Position> {
    let expected = space.clique_num_states(clique);
    if substate.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: substate.len(),
        });
    }
    let proj = space.projection(clique)?;
    Ok(Position(proj.iter().map(|&s| substate.0[s]).collect()))
}

/// Subtracts the cost-weighted mean so the result has zero value.
fn zero_value_shift(mut raw: Vec<f64>, costs: &[f64]) -> Position {
    let total: f64 = costs.iter().sum();
    let log_lambda = dot(&raw, costs) / total;
    for r in &mut raw {
        *r -= log_lambda;
    }
    Position(raw)
}
