//! Market-clearing prices.
//!
//! Homogeneous markets have closed forms: a wealth-weighted mean of beliefs
//! for logarithmic utility, a normalized geometric mean for exponential
//! utility, a factor product for a base agent plus niche agents, and a
//! wealth-weighted median for binary linear markets. Everything else goes
//! through [`tatonnement`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::agents::{
    buy_exp, buy_linear, buy_log, buy_niche, standardize, Agent, AgentStyle, Position, StandardizationKind,
};
use crate::beliefs::{Belief, UtilityKind};
use crate::error::{Error, Result};
use crate::math::{ln, max_abs, softmax};
use crate::outcome_space::OutcomeSpace;

/// Allowed deviation of a complete price vector's sum from one.
pub const NO_ARBITRAGE_TOLERANCE: f64 = 1e-10;

/// Clearing tolerance used to flag closed-form solutions as converged.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;

/// Per-good costs of one-unit bets.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceVector(Vec<f64>);

impl PriceVector {
    /// Every cost must be positive and finite. Summing to one is checked
    /// separately by [`check_no_arbitrage`].
    pub fn new(costs: Vec<f64>) -> Result<Self> {
        if let Some(index) = costs.iter().position(|c| !(*c > 0.0) || !c.is_finite()) {
            return Err(Error::ZeroPrice { index });
        }
        Ok(Self(costs))
    }

    pub fn uniform(len: usize) -> Self {
        Self(alloc::vec![1.0 / len as f64; len])
    }

    /// Scales positive weights to sum to one.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::DegeneratePrices);
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn costs(&self) -> &[f64] {
        &self.0
    }

    pub fn cost(&self, good: usize) -> f64 {
        self.0[good]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoArbitrageCheck {
    pub passed: bool,
    /// `|sum_k c_k - 1|`
    pub deviation: f64,
}

/// Prices over a complete set of exclusive outcomes must sum to one with
/// every entry in `(0, 1)`.
pub fn check_no_arbitrage(prices: &[f64]) -> NoArbitrageCheck {
    let deviation = libm::fabs(prices.iter().sum::<f64>() - 1.0);
    let in_range = prices.iter().all(|&c| c > 0.0 && c < 1.0);
    NoArbitrageCheck {
        passed: in_range && deviation <= NO_ARBITRAGE_TOLERANCE,
        deviation,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub prices: PriceVector,
    /// One position per agent, in agent order.
    pub positions: Vec<Position>,
    /// Max-norm of the aggregate demand.
    pub clearing_residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TatonnementParams {
    pub step_size: f64,
    /// Max-norm clearing residual at which iteration stops.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Step multiplier applied whenever the residual grows.
    pub damping: f64,
}

impl Default for TatonnementParams {
    fn default() -> Self {
        Self {
            step_size: 0.1,
            tolerance: 1e-9,
            max_iterations: 100_000,
            damping: 0.5,
        }
    }
}

impl TatonnementParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_size > 0.0) || !self.step_size.is_finite() {
            return Err(Error::InvalidParameter("step_size must be positive"));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(Error::InvalidParameter("tolerance must lie in (0, 1)"));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max_iterations must be positive"));
        }
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidParameter("damping must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Aggregate demand `sum_i s_i(c)` over the joint goods.
///
/// Linear agents report pure long stakes; they are moved to their zero-value
/// representative first, the difference being held by the neutral agent.
pub fn clearing_residual(space: &OutcomeSpace, agents: &[Agent], prices: &PriceVector) -> Result<Vec<f64>> {
    space.check_prices(prices.costs())?;
    let mut total = alloc::vec![0.0; prices.len()];
    for agent in agents {
        let mut s = agent.demand(space, prices)?;
        if agent.utility == UtilityKind::LinearDebtFree {
            s = standardize(&s, prices, StandardizationKind::ZeroValue)?;
        }
        accumulate(&mut total, &s);
    }
    Ok(total)
}

fn accumulate(total: &mut [f64], s: &Position) {
    for (t, h) in total.iter_mut().zip(s.holdings()) {
        *t += h;
    }
}

fn aggregate(positions: &[Position], len: usize) -> Vec<f64> {
    let mut total = alloc::vec![0.0; len];
    for s in positions {
        accumulate(&mut total, s);
    }
    total
}

fn full_joint_beliefs<'a>(
    agents: &'a [Agent],
    utility: UtilityKind,
    what: &'static str,
) -> Result<Vec<&'a Belief>> {
    if agents.is_empty() {
        return Err(Error::NoAgents);
    }
    let beliefs = agents
        .iter()
        .map(|a| match &a.style {
            AgentStyle::FullJoint(b) if a.utility == utility => Ok(b),
            _ => Err(Error::UnsupportedAgent(what)),
        })
        .collect::<Result<Vec<_>>>()?;
    let n = beliefs[0].len();
    if let Some(b) = beliefs.iter().find(|b| b.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: b.len(),
        });
    }
    Ok(beliefs)
}

fn closed_form_report(prices: PriceVector, positions: Vec<Position>) -> EquilibriumReport {
    let clearing_residual = max_abs(&aggregate(&positions, prices.len()));
    let mut warnings = Vec::new();
    let converged = clearing_residual <= CLOSED_FORM_TOLERANCE;
    if !converged {
        warnings.push(format!(
            "closed-form prices leave a clearing residual of {clearing_residual:e}"
        ));
    }
    EquilibriumReport {
        prices,
        positions,
        clearing_residual,
        iterations: 0,
        converged,
        warnings,
    }
}

/// All-logarithmic market: `c_k = sum_i W_i P_i(k) / sum_i W_i`.
pub fn solve_log_market(agents: &[Agent]) -> Result<EquilibriumReport> {
    let beliefs = full_joint_beliefs(
        agents,
        UtilityKind::Logarithmic,
        "log market needs logarithmic full-joint agents",
    )?;
    let n = beliefs[0].len();
    let total_wealth: f64 = agents.iter().map(|a| a.wealth).sum();
    let mut costs = alloc::vec![0.0; n];
    for (a, b) in agents.iter().zip(&beliefs) {
        for (c, p) in costs.iter_mut().zip(b.probs()) {
            *c += a.wealth * p;
        }
    }
    for c in &mut costs {
        *c /= total_wealth;
    }
    let prices = PriceVector::new(costs)?;
    let positions = agents
        .iter()
        .zip(&beliefs)
        .map(|(a, b)| buy_log(a.wealth, b, &prices))
        .collect::<Result<Vec<_>>>()?;
    Ok(closed_form_report(prices, positions))
}

/// All-exponential market: the normalized geometric mean of the beliefs,
/// `c_k ∝ exp(sum_i ln P_i(k) / N)`. Wealth plays no part.
pub fn solve_exp_market(agents: &[Agent]) -> Result<EquilibriumReport> {
    let beliefs = full_joint_beliefs(
        agents,
        UtilityKind::ExponentialNegative,
        "exp market needs exponential full-joint agents",
    )?;
    let n = beliefs[0].len();
    let weight = 1.0 / agents.len() as f64;
    let mut potential = alloc::vec![0.0; n];
    for b in &beliefs {
        for (phi, lp) in potential.iter_mut().zip(b.log_probs()?) {
            *phi += weight * lp;
        }
    }
    let prices = PriceVector::new(softmax(&potential))?;
    let positions = beliefs
        .iter()
        .map(|b| buy_exp(b, &prices))
        .collect::<Result<Vec<_>>>()?;
    Ok(closed_form_report(prices, positions))
}

/// One exponential agent with a direct opinion plus exponential niche
/// agents: `c_k ∝ P_0(k) prod_i F_i(y_k^{S_i})`.
///
/// Positions are reported base agent first, then niche agents in order.
pub fn solve_niche_market(
    space: &OutcomeSpace,
    base: &Agent,
    niche_agents: &[Agent],
) -> Result<EquilibriumReport> {
    let base_belief = match (&base.style, base.utility) {
        (AgentStyle::FullJoint(b), UtilityKind::ExponentialNegative) => b,
        _ => {
            return Err(Error::UnsupportedAgent(
                "base agent must be an exponential full-joint agent",
            ))
        }
    };
    base.check_space(space)?;
    let mut potential = base_belief.log_probs()?;
    let mut factors = Vec::with_capacity(niche_agents.len());
    for agent in niche_agents {
        let AgentStyle::Niche(f) = &agent.style else {
            return Err(Error::UnsupportedAgent("expected a niche agent"));
        };
        f.check(space)?;
        let proj = space.projection(f.scope())?;
        let log_f = f.log_values();
        for (phi, &sub) in potential.iter_mut().zip(&proj) {
            *phi += log_f[sub];
        }
        factors.push(f);
    }
    let prices = PriceVector::new(softmax(&potential))?;
    let mut positions = Vec::with_capacity(1 + factors.len());
    positions.push(buy_exp(base_belief, &prices)?);
    for f in factors {
        positions.push(buy_niche(space, f, &prices)?);
    }
    Ok(closed_form_report(prices, positions))
}

/// Binary market of debt-free linear agents. Good 0 pays on outcome 0 and
/// good 1 on outcome 1.
///
/// The price of good 1 is the wealth-weighted lower median of the agents'
/// `P_i(1)`: the smallest belief value `b` such that agents with
/// `P_i(1) <= b` hold at least half the wealth. Agents whose belief equals
/// the price are indifferent; they take whatever side balances the book, as
/// far as their wealth allows. When they cannot, the report says so.
pub fn solve_linear_binary(agents: &[Agent]) -> Result<EquilibriumReport> {
    let beliefs = full_joint_beliefs(
        agents,
        UtilityKind::LinearDebtFree,
        "weighted median needs linear full-joint agents",
    )?;
    if beliefs[0].len() != 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            found: beliefs[0].len(),
        });
    }
    let total_wealth: f64 = agents.iter().map(|a| a.wealth).sum();
    let wealth_at_or_below = |b: f64| -> f64 {
        agents
            .iter()
            .zip(&beliefs)
            .filter(|(_, q)| q.prob(1) <= b)
            .map(|(a, _)| a.wealth)
            .sum()
    };
    let median = beliefs
        .iter()
        .map(|b| b.prob(1))
        .filter(|&b| 2.0 * wealth_at_or_below(b) >= total_wealth)
        .fold(f64::INFINITY, f64::min);

    let mut warnings = Vec::new();
    if 2.0 * wealth_at_or_below(median) == total_wealth {
        warnings.push(String::from(
            "weighted median is not unique; the lower median is reported",
        ));
    }
    let prices = PriceVector::new(alloc::vec![1.0 - median, median])?;

    let mut positions = agents
        .iter()
        .zip(&beliefs)
        .map(|(a, b)| buy_linear(a.wealth, b, &prices))
        .collect::<Result<Vec<_>>>()?;

    // Payouts owed on each outcome by the agents who took a side.
    let mut payout = [0.0, 0.0];
    for s in &positions {
        payout[0] += s.holdings()[0];
        payout[1] += s.holdings()[1];
    }
    let indifferent: Vec<usize> = (0..agents.len())
        .filter(|&i| beliefs[i].prob(1) == median)
        .collect();
    let idle_wealth: f64 = indifferent.iter().map(|&i| agents[i].wealth).sum();
    // Stake needed on the light side to equalize payouts.
    let (side, needed) = if payout[1] < payout[0] {
        (1, prices.cost(1) * (payout[0] - payout[1]))
    } else {
        (0, prices.cost(0) * (payout[1] - payout[0]))
    };
    let used = needed.min(idle_wealth);
    if used > 0.0 {
        for &i in &indifferent {
            let stake = used * agents[i].wealth / idle_wealth;
            let mut h = alloc::vec![0.0, 0.0];
            h[side] = stake / prices.cost(side);
            positions[i] = Position::new(h);
        }
    }

    let zero_value = positions
        .iter()
        .map(|s| standardize(s, &prices, StandardizationKind::ZeroValue))
        .collect::<Result<Vec<_>>>()?;
    let clearing_residual = max_abs(&aggregate(&zero_value, 2));
    let converged = clearing_residual <= CLOSED_FORM_TOLERANCE;
    if !converged {
        warnings.push(format!(
            "indifferent agents cannot absorb the imbalance at the median; residual {clearing_residual:e}"
        ));
    }
    Ok(EquilibriumReport {
        prices,
        positions,
        clearing_residual,
        iterations: 0,
        converged,
        warnings,
    })
}

/// Largest change of a log-price in one step.
const MAX_LOG_STEP: f64 = 2.0;
/// Below this the step is considered exhausted.
const MIN_STEP: f64 = 1e-14;

/// Multiplicative price adjustment toward zero excess demand:
/// `c <- normalize(c * exp(step * z(c)))`, halving the step whenever the
/// residual grows.
///
/// Works for any population whose agents have buying functions. Failure to
/// converge is reported, not raised.
pub fn tatonnement(
    space: &OutcomeSpace,
    agents: &[Agent],
    init: &PriceVector,
    params: &TatonnementParams,
) -> Result<EquilibriumReport> {
    params.validate()?;
    if agents.is_empty() {
        return Err(Error::NoAgents);
    }
    space.check_prices(init.costs())?;
    for a in agents {
        a.check_space(space)?;
    }
    let mut warnings = Vec::new();
    if agents.iter().any(|a| a.utility == UtilityKind::LinearDebtFree) {
        warnings.push(String::from(
            "linear agents have set-valued demand; the equilibrium may be non-unique",
        ));
    }

    let mut log_prices: Vec<f64> = init.costs().iter().map(|&c| ln(c)).collect();
    let mut prices = PriceVector::normalized(init.costs().to_vec())?;
    let mut step = params.step_size;
    let mut previous = f64::INFINITY;
    let mut iterations = 0;
    let mut residual;
    let mut excess;
    loop {
        excess = clearing_residual(space, agents, &prices)?;
        residual = max_abs(&excess);
        if residual <= params.tolerance {
            break;
        }
        if !residual.is_finite() {
            warnings.push(String::from("excess demand diverged"));
            break;
        }
        if residual > previous {
            step *= params.damping;
            if step < MIN_STEP {
                warnings.push(String::from("step size exhausted before clearing"));
                break;
            }
        }
        previous = residual;
        if iterations == params.max_iterations {
            warnings.push(format!(
                "stopped after {iterations} iterations with residual {residual:e}"
            ));
            break;
        }
        for (lc, z) in log_prices.iter_mut().zip(&excess) {
            *lc += (step * z).clamp(-MAX_LOG_STEP, MAX_LOG_STEP);
        }
        let normalized = softmax(&log_prices);
        for (lc, &c) in log_prices.iter_mut().zip(&normalized) {
            *lc = ln(c);
        }
        prices = match PriceVector::new(normalized) {
            Ok(p) => p,
            Err(_) => {
                warnings.push(String::from("a price underflowed to zero"));
                break;
            }
        };
        iterations += 1;
    }

    let converged = residual <= params.tolerance;
    let positions = agents
        .iter()
        .map(|a| a.demand(space, &prices))
        .collect::<Result<Vec<_>>>()?;
    Ok(EquilibriumReport {
        prices,
        positions,
        clearing_residual: residual,
        iterations,
        converged,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beliefs::{normalize, FactorTable};
    use crate::outcome_space::Clique;
    use alloc::vec;

    fn agent(kind: UtilityKind, wealth: f64, p: &[f64]) -> Agent {
        Agent::full_joint("a", wealth, kind, normalize(p).unwrap()).unwrap()
    }

    fn prices(v: &[f64]) -> PriceVector {
        PriceVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn price_vector_rejects_non_positive() {
        assert_eq!(
            PriceVector::new(vec![0.5, 0.0]),
            Err(Error::ZeroPrice { index: 1 })
        );
        assert!(PriceVector::new(vec![0.5, f64::NAN]).is_err());
    }

    #[test]
    fn no_arbitrage_examples() {
        let ok = check_no_arbitrage(&[0.25; 4]);
        assert!(ok.passed);
        assert_eq!(ok.deviation, 0.0);
        let bad = check_no_arbitrage(&[0.6, 0.5]);
        assert!(!bad.passed);
        assert!((bad.deviation - 0.1).abs() < 1e-15);
        assert!(!check_no_arbitrage(&[1.0, 0.0]).passed);
    }

    #[test]
    fn residual_examples() {
        let space = OutcomeSpace::binary(["y"]).unwrap();
        let log = UtilityKind::Logarithmic;
        let agents = [agent(log, 1.0, &[0.8, 0.2]), agent(log, 1.0, &[0.4, 0.6])];
        let z = clearing_residual(&space, &agents, &prices(&[0.6, 0.4])).unwrap();
        assert!(max_abs(&z) < 1e-15, "{z:?}");

        let exp_kind = UtilityKind::ExponentialNegative;
        let single = [agent(exp_kind, 1.0, &[0.3, 0.7])];
        let z = clearing_residual(&space, &single, &prices(&[0.3, 0.7])).unwrap();
        assert_eq!(z, vec![0.0, 0.0]);

        // Product equilibrium is (0.75, 0.25); (0.7, 0.3) underprices good 0.
        let pair = [
            agent(exp_kind, 1.0, &[0.9, 0.1]),
            agent(exp_kind, 1.0, &[0.5, 0.5]),
        ];
        let z = clearing_residual(&space, &pair, &prices(&[0.7, 0.3])).unwrap();
        assert!(z[0] > 1e-3 && z[1] < -1e-3, "{z:?}");
    }

    #[test]
    fn log_market_examples() {
        let log = UtilityKind::Logarithmic;
        let r = solve_log_market(&[agent(log, 3.0, &[0.3, 0.7])]).unwrap();
        assert!((r.prices.cost(0) - 0.3).abs() < 1e-15 && (r.prices.cost(1) - 0.7).abs() < 1e-15);

        let agents = [
            agent(log, 1.0, &[0.8, 0.2]),
            agent(log, 1.0, &[0.5, 0.5]),
            agent(log, 2.0, &[0.2, 0.8]),
        ];
        let r = solve_log_market(&agents).unwrap();
        assert!((r.prices.cost(1) - 0.575).abs() < 1e-15);
        assert!(r.converged && r.clearing_residual <= 1e-12);

        let sym = solve_log_market(&[agent(log, 1.0, &[0.9, 0.1]), agent(log, 1.0, &[0.1, 0.9])]).unwrap();
        assert!((sym.prices.cost(0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn log_market_rejects_mixed_population() {
        let agents = [
            agent(UtilityKind::Logarithmic, 1.0, &[0.5, 0.5]),
            agent(UtilityKind::ExponentialNegative, 1.0, &[0.5, 0.5]),
        ];
        assert!(matches!(
            solve_log_market(&agents),
            Err(Error::UnsupportedAgent(_))
        ));
        assert_eq!(solve_log_market(&[]), Err(Error::NoAgents));
    }

    #[test]
    fn exp_market_examples() {
        let e = UtilityKind::ExponentialNegative;
        let one = solve_exp_market(&[agent(e, 1.0, &[0.3, 0.7])]).unwrap();
        assert!((one.prices.cost(0) - 0.3).abs() < 1e-15);

        let r = solve_exp_market(&[agent(e, 1.0, &[0.9, 0.1]), agent(e, 5.0, &[0.5, 0.5])]).unwrap();
        assert!((r.prices.cost(0) - 0.75).abs() < 1e-14);
        assert!((r.prices.cost(1) - 0.25).abs() < 1e-14);
        assert!(r.clearing_residual <= 1e-10);

        let sym = solve_exp_market(&[agent(e, 1.0, &[0.8, 0.2]), agent(e, 1.0, &[0.2, 0.8])]).unwrap();
        assert!((sym.prices.cost(0) - 0.5).abs() < 1e-15);

        assert_eq!(
            solve_exp_market(&[agent(e, 1.0, &[1.0, 0.0])]),
            Err(Error::ZeroBelief { index: 1 })
        );
    }

    #[test]
    fn niche_market_examples() {
        let space = OutcomeSpace::binary(["y1", "y2"]).unwrap();
        let base = agent(UtilityKind::ExponentialNegative, 1.0, &[1.0; 4]);
        let alone = solve_niche_market(&space, &base, &[]).unwrap();
        assert_eq!(alone.prices.costs(), &[0.25; 4]);

        let f = FactorTable::new(Clique::new(vec![0]).unwrap(), vec![1.0, 3.0]).unwrap();
        let niche = Agent::niche("n", 1.0, f).unwrap();
        let r = solve_niche_market(&space, &base, &[niche]).unwrap();
        for (c, want) in r.prices.costs().iter().zip([0.125, 0.125, 0.375, 0.375]) {
            assert!((c - want).abs() < 1e-15);
        }
        assert!(r.converged);
        assert_eq!(r.positions.len(), 2);
    }

    #[test]
    fn weighted_median_examples() {
        let lin = UtilityKind::LinearDebtFree;
        let b = |p1: f64, w: f64| agent(lin, w, &[1.0 - p1, p1]);

        let r = solve_linear_binary(&[b(0.2, 1.0), b(0.6, 1.0), b(0.7, 1.0)]).unwrap();
        assert_eq!(r.prices.cost(1), 0.6);
        // The median agent absorbs the imbalance: 0.5 units of stake on outcome 1.
        assert!(r.converged, "{r:?}");
        assert!((r.positions[1].holdings()[1] - 0.5 / 0.6).abs() < 1e-12);

        let r = solve_linear_binary(&[b(0.3, 2.0)]).unwrap();
        assert_eq!(r.prices.cost(1), 0.3);

        let r = solve_linear_binary(&[b(0.2, 3.0), b(0.6, 1.0), b(0.7, 1.0)]).unwrap();
        assert_eq!(r.prices.cost(1), 0.2);
    }

    #[test]
    fn weighted_median_flags_non_uniqueness_and_imbalance() {
        let lin = UtilityKind::LinearDebtFree;
        let b = |p1: f64| agent(lin, 1.0, &[1.0 - p1, p1]);
        let r = solve_linear_binary(&[b(0.3), b(0.6)]).unwrap();
        assert_eq!(r.prices.cost(1), 0.3);
        assert!(r.warnings.iter().any(|w| w.contains("not unique")));

        // 0.9 is the median but the two optimists' stakes cannot be matched.
        let r = solve_linear_binary(&[b(0.2), b(0.9), b(0.95)]).unwrap();
        assert_eq!(r.prices.cost(1), 0.9);
        assert!(!r.converged);
        assert!(r.clearing_residual > 0.1);
    }

    #[test]
    fn tatonnement_recovers_closed_forms() {
        let space = OutcomeSpace::new(vec![crate::outcome_space::Variable::new("y", 3)]).unwrap();
        let log = UtilityKind::Logarithmic;
        let agents = [
            agent(log, 2.0, &[0.5, 0.3, 0.2]),
            agent(log, 7.0, &[0.1, 0.1, 0.8]),
            agent(log, 0.5, &[0.3, 0.4, 0.3]),
        ];
        let closed = solve_log_market(&agents).unwrap();
        let r = tatonnement(
            &space,
            &agents,
            &PriceVector::uniform(3),
            &TatonnementParams::default(),
        )
        .unwrap();
        assert!(r.converged, "{:?}", r.warnings);
        for (a, b) in r.prices.costs().iter().zip(closed.prices.costs()) {
            assert!((a - b).abs() < 1e-8);
        }

        let e = UtilityKind::ExponentialNegative;
        let agents = [agent(e, 1.0, &[0.5, 0.3, 0.2]), agent(e, 1.0, &[0.1, 0.1, 0.8])];
        let closed = solve_exp_market(&agents).unwrap();
        let r = tatonnement(
            &space,
            &agents,
            &PriceVector::uniform(3),
            &TatonnementParams::default(),
        )
        .unwrap();
        assert!(r.converged);
        for (a, b) in r.prices.costs().iter().zip(closed.prices.costs()) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn tatonnement_single_agent_finds_belief() {
        let space = OutcomeSpace::binary(["y1", "y2"]).unwrap();
        for kind in [UtilityKind::Logarithmic, UtilityKind::ExponentialNegative] {
            let a = [agent(kind, 1.5, &[0.1, 0.2, 0.3, 0.4])];
            let r = tatonnement(
                &space,
                &a,
                &PriceVector::uniform(4),
                &TatonnementParams::default(),
            )
            .unwrap();
            assert!(r.converged);
            for (c, p) in r.prices.costs().iter().zip([0.1, 0.2, 0.3, 0.4]) {
                assert!((c - p).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn tatonnement_reports_non_convergence() {
        let space = OutcomeSpace::binary(["y"]).unwrap();
        let lin = UtilityKind::LinearDebtFree;
        let agents = [agent(lin, 1.0, &[0.8, 0.2]), agent(lin, 1.0, &[0.3, 0.7])];
        let params = TatonnementParams {
            max_iterations: 200,
            ..TatonnementParams::default()
        };
        let r = tatonnement(&space, &agents, &PriceVector::uniform(2), &params).unwrap();
        if !r.converged {
            assert!(!r.warnings.is_empty());
            assert!(r.clearing_residual > params.tolerance);
        }
    }

    #[test]
    fn params_validation() {
        let bad = TatonnementParams {
            damping: 1.0,
            ..TatonnementParams::default()
        };
        assert!(bad.validate().is_err());
        assert!(TatonnementParams::default().validate().is_ok());
    }
}
