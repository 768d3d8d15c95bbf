//! Restricted-goods market: one bet per binary variable, paying when that
//! variable is 1, traded good by good.
//!
//! When good `k` comes up, every agent with an opinion on variable `k`
//! summarizes its belief and its holdings in the other goods as a message
//! `A_ik(y_k)`. The clearing price of `k` is a geometric mean over those
//! agents of `A_ik(y) P_ik(y)`, after which each agent re-optimizes its
//! holding in `k` alone. Repeating over all goods is a message-passing
//! scheme whose fixed points clear every good.

use alloc::string::String;
use alloc::vec::Vec;

use crate::agents::{Agent, AgentStyle};
use crate::beliefs::UtilityKind;
use crate::error::{Error, Result};
use crate::math::{exp, ln};
use crate::outcome_space::{Clique, OutcomeSpace};

/// Sweep order for the auction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateMode {
    /// Goods are priced one after another, each seeing the latest prices.
    #[default]
    GaussSeidel,
    /// Every good is priced against a frozen snapshot; commits once per sweep.
    Jacobi,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub order: Vec<usize>,
    /// Stop once no price moves more than this in a sweep.
    pub tolerance: f64,
    pub max_sweeps: usize,
    pub mode: UpdateMode,
    /// `price <- (1 - damping) * old + damping * new`; 1 disables damping.
    pub damping: f64,
}

impl Schedule {
    /// Ascending full sweeps with default tolerances.
    pub fn new(num_goods: usize) -> Self {
        Self {
            order: (0..num_goods).collect(),
            tolerance: 1e-9,
            max_sweeps: 10_000,
            mode: UpdateMode::GaussSeidel,
            damping: 1.0,
        }
    }

    pub fn validate(&self, num_goods: usize) -> Result<()> {
        if let Some(&k) = self.order.iter().find(|&&k| k >= num_goods) {
            return Err(Error::InvalidValue {
                variable: k,
                value: k,
            });
        }
        if (0..num_goods).any(|k| !self.order.contains(&k)) {
            return Err(Error::InvalidParameter("schedule must visit every good"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive"));
        }
        if self.max_sweeps == 0 {
            return Err(Error::InvalidParameter("max_sweeps must be positive"));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidParameter("damping must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// A binary outcome space traded through single-variable bets, with
/// exponential-utility agents.
#[derive(Debug, Clone)]
pub struct RestrictedMarket {
    space: OutcomeSpace,
    agents: Vec<Agent>,
    cliques: Vec<Clique>,
    participants: Vec<Vec<usize>>,
}

impl RestrictedMarket {
    pub fn new(space: OutcomeSpace, agents: Vec<Agent>) -> Result<Self> {
        space.single_variable_goods()?;
        if agents.is_empty() {
            return Err(Error::NoAgents);
        }
        let mut cliques = Vec::with_capacity(agents.len());
        for a in &agents {
            if a.utility != UtilityKind::ExponentialNegative {
                return Err(Error::UnsupportedAgent(
                    "restricted markets need exponential-utility agents",
                ));
            }
            a.check_space(&space)?;
            cliques.push(a.clique(&space));
        }
        let participants: Vec<Vec<usize>> = (0..space.num_variables())
            .map(|k| (0..agents.len()).filter(|&i| cliques[i].contains(k)).collect())
            .collect();
        if let Some(k) = participants.iter().position(|p| p.is_empty()) {
            return Err(Error::UncoveredVariable(k));
        }
        Ok(Self {
            space,
            agents,
            cliques,
            participants,
        })
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn num_goods(&self) -> usize {
        self.space.num_variables()
    }

    /// Variables agent `i` holds an opinion on.
    pub fn clique(&self, i: usize) -> &Clique {
        &self.cliques[i]
    }

    /// Agents holding an opinion on variable `good`.
    pub fn participants(&self, good: usize) -> &[usize] {
        &self.participants[good]
    }
}

/// One agent's message for one good, with its marginal belief on that
/// good's variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentMessage {
    /// `ln A(0)`, `ln A(1)`
    pub log_a: [f64; 2],
    /// `P(y_k = 0)`, `P(y_k = 1)`
    pub marginal: [f64; 2],
    /// Belief-table entries visited to build the message.
    pub terms: usize,
}

impl AgentMessage {
    pub fn from_values(a: [f64; 2], marginal: [f64; 2]) -> Result<Self> {
        if a.iter().chain(&marginal).any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::InvalidParameter("messages and marginals must be positive"));
        }
        Ok(Self {
            log_a: [ln(a[0]), ln(a[1])],
            marginal,
            terms: 0,
        })
    }

    pub fn a(&self) -> [f64; 2] {
        [exp(self.log_a[0]), exp(self.log_a[1])]
    }

    /// `ln(A(1) P(1) / (A(0) P(0)))`
    fn log_odds(&self) -> f64 {
        self.log_a[1] + ln(self.marginal[1]) - self.log_a[0] - ln(self.marginal[0])
    }
}

/// Belief over the agent's clique at the given prices, last-fastest order.
///
/// Niche agents tilt the market's product-of-Bernoulli measure on their
/// clique by their factor.
fn local_belief(space: &OutcomeSpace, agent: &Agent, prices: &[f64]) -> Result<(Clique, Vec<f64>)> {
    match &agent.style {
        AgentStyle::FullJoint(b) => Ok((space.full_clique(), b.probs().to_vec())),
        AgentStyle::Marginal(b) => Ok((b.scope().clique(space), b.probs().to_vec())),
        AgentStyle::Niche(f) => {
            let clique = f.scope().clone();
            let m = clique.len();
            let mut w: Vec<f64> = f
                .values()
                .iter()
                .enumerate()
                .map(|(t, &fv)| {
                    let mut p = fv;
                    for (j, &v) in clique.members().iter().enumerate() {
                        let bit = (t >> (m - 1 - j)) & 1;
                        p *= if bit == 1 { prices[v] } else { 1.0 - prices[v] };
                    }
                    p
                })
                .collect();
            let z: f64 = w.iter().sum();
            for x in &mut w {
                *x /= z;
            }
            Ok((clique, w))
        }
    }
}

/// `A_ik(y_k) = sum_{y^-k} P_i(y^-k | y_k) exp(s^-k . (c^-k - y^-k))`, the
/// sum running over the agent's clique only.
///
/// `positions` and `prices` are indexed by variable; entries outside the
/// agent's clique are ignored.
pub fn compute_message(
    space: &OutcomeSpace,
    agent: &Agent,
    good: usize,
    positions: &[f64],
    prices: &[f64],
) -> Result<AgentMessage> {
    let j = space.num_variables();
    for found in [positions.len(), prices.len()] {
        if found != j {
            return Err(Error::LengthMismatch { expected: j, found });
        }
    }
    let (clique, table) = local_belief(space, agent, prices)?;
    let kpos = clique
        .position(good)
        .ok_or(Error::InvalidParameter("agent holds no opinion on this good"))?;
    let m = clique.len();

    let mut exponents: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
    let mut marginal = [0.0, 0.0];
    for (t, &q) in table.iter().enumerate() {
        let bit = |pos: usize| (t >> (m - 1 - pos)) & 1;
        let yk = bit(kpos);
        marginal[yk] += q;
        if q == 0.0 {
            continue;
        }
        let mut e = 0.0;
        for (pos, &v) in clique.members().iter().enumerate() {
            if pos != kpos {
                e += positions[v] * (prices[v] - bit(pos) as f64);
            }
        }
        exponents[yk].push((q, e));
    }
    let mut log_a = [0.0, 0.0];
    for value in 0..2 {
        if !(marginal[value] > 0.0) {
            return Err(Error::DegenerateConditional {
                variable: good,
                value,
            });
        }
        let max = exponents[value]
            .iter()
            .map(|&(_, e)| e)
            .fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = exponents[value]
            .iter()
            .map(|&(q, e)| q / marginal[value] * exp(e - max))
            .sum();
        log_a[value] = max + ln(sum);
    }
    Ok(AgentMessage {
        log_a,
        marginal,
        terms: table.len(),
    })
}

fn check_unit_price(price: f64) -> Result<()> {
    if price > 0.0 && price < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("price must lie in (0, 1)"))
    }
}

/// Holding in a single good given the agent's message:
/// `ln((1 - c)/c) + ln(A(1) P(1) / (A(0) P(0)))`.
pub fn local_buying(price: f64, a: [f64; 2], marginal: [f64; 2]) -> Result<f64> {
    check_unit_price(price)?;
    let msg = AgentMessage::from_values(a, marginal)?;
    Ok(buying_from_message(price, &msg))
}

fn buying_from_message(price: f64, msg: &AgentMessage) -> f64 {
    libm::log1p(-price) - ln(price) + msg.log_odds()
}

/// Price that zeroes the summed single-good demand of `messages`:
/// `c = G(1) / (G(0) + G(1))` with `G(y) = prod_i (A_i(y) P_i(y))^(1/N)`.
pub fn update_price(messages: &[AgentMessage]) -> Result<f64> {
    if messages.is_empty() {
        return Err(Error::NoAgents);
    }
    let mean = messages.iter().map(AgentMessage::log_odds).sum::<f64>() / messages.len() as f64;
    let price = 1.0 / (1.0 + exp(-mean));
    check_unit_price(price)?;
    Ok(price)
}

/// Message values for every agent and good; `ln A = 0` where an agent has
/// no opinion.
#[derive(Debug, Clone, PartialEq)]
pub struct MessageTable {
    log_a: Vec<Vec<[f64; 2]>>,
}

impl MessageTable {
    fn new(agents: usize, goods: usize) -> Self {
        Self {
            log_a: alloc::vec![alloc::vec![[0.0, 0.0]; goods]; agents],
        }
    }

    pub fn get(&self, agent: usize, good: usize) -> [f64; 2] {
        let [a0, a1] = self.log_a[agent][good];
        [exp(a0), exp(a1)]
    }

    pub fn log(&self, agent: usize, good: usize) -> [f64; 2] {
        self.log_a[agent][good]
    }
}

/// Prices and holdings the auction resumes from.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketState {
    pub prices: Vec<f64>,
    /// Per agent, per good.
    pub positions: Vec<Vec<f64>>,
}

impl MarketState {
    /// All prices 0.5, nobody holding anything.
    pub fn initial(market: &RestrictedMarket) -> Self {
        Self {
            prices: alloc::vec![0.5; market.num_goods()],
            positions: alloc::vec![alloc::vec![0.0; market.num_goods()]; market.agents.len()],
        }
    }
}

/// One auction of one good.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub sweep: usize,
    pub good: usize,
    pub old_price: f64,
    pub new_price: f64,
    /// Each agent's holding in this good after the auction.
    pub holdings: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub sweep: usize,
    pub max_price_change: f64,
    /// Largest `|sum_i s_ik|` after the sweep.
    pub clearing_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MessagePassingReport {
    pub state: MarketState,
    pub messages: MessageTable,
    pub trace: Vec<TraceRecord>,
    pub sweeps: Vec<SweepSummary>,
    pub converged: bool,
    pub warnings: Vec<String>,
}

impl MessagePassingReport {
    pub fn prices(&self) -> &[f64] {
        &self.state.prices
    }

    pub fn clearing_residual(&self) -> f64 {
        self.sweeps.last().map_or(f64::INFINITY, |s| s.clearing_residual)
    }
}

pub fn run_message_passing(market: &RestrictedMarket, schedule: &Schedule) -> Result<MessagePassingReport> {
    run_message_passing_from(market, schedule, MarketState::initial(market))
}

/// Sweeps the schedule from `state` until no price moves more than the
/// tolerance or the sweep budget runs out.
pub fn run_message_passing_from(
    market: &RestrictedMarket,
    schedule: &Schedule,
    mut state: MarketState,
) -> Result<MessagePassingReport> {
    let goods = market.num_goods();
    schedule.validate(goods)?;
    if state.prices.len() != goods {
        return Err(Error::LengthMismatch {
            expected: goods,
            found: state.prices.len(),
        });
    }
    if state.positions.len() != market.agents.len() || state.positions.iter().any(|p| p.len() != goods) {
        return Err(Error::InvalidParameter("state positions do not match the market"));
    }
    for &c in &state.prices {
        check_unit_price(c)?;
    }

    let mut messages = MessageTable::new(market.agents.len(), goods);
    let mut trace = Vec::new();
    let mut sweeps = Vec::new();
    let mut converged = false;

    for sweep in 0..schedule.max_sweeps {
        let snapshot = state.clone();
        let mut max_change: f64 = 0.0;
        for &k in &schedule.order {
            let view = match schedule.mode {
                UpdateMode::GaussSeidel => &state,
                UpdateMode::Jacobi => &snapshot,
            };
            let msgs = market.participants[k]
                .iter()
                .map(|&i| {
                    compute_message(
                        &market.space,
                        &market.agents[i],
                        k,
                        &view.positions[i],
                        &view.prices,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let old = view.prices[k];
            let cleared = update_price(&msgs)?;
            let new = (1.0 - schedule.damping) * old + schedule.damping * cleared;
            max_change = max_change.max(libm::fabs(new - old));
            state.prices[k] = new;
            for (&i, msg) in market.participants[k].iter().zip(&msgs) {
                state.positions[i][k] = buying_from_message(new, msg);
                messages.log_a[i][k] = msg.log_a;
            }
            trace.push(TraceRecord {
                sweep,
                good: k,
                old_price: old,
                new_price: new,
                holdings: state.positions.iter().map(|p| p[k]).collect(),
            });
        }
        let clearing_residual = (0..goods)
            .map(|k| libm::fabs(state.positions.iter().map(|p| p[k]).sum::<f64>()))
            .fold(0.0, f64::max);
        sweeps.push(SweepSummary {
            sweep,
            max_price_change: max_change,
            clearing_residual,
        });
        if max_change <= schedule.tolerance {
            converged = true;
            break;
        }
    }

    let mut warnings = Vec::new();
    if !converged {
        warnings.push(alloc::format!(
            "no fixed point within {} sweeps; last price change {:e}",
            schedule.max_sweeps,
            sweeps.last().map_or(f64::NAN, |s| s.max_price_change)
        ));
    }
    Ok(MessagePassingReport {
        state,
        messages,
        trace,
        sweeps,
        converged,
        warnings,
    })
}
