//! Brute-force reference computations.
//!
//! Nothing here calls the closed-form buying functions or solvers. Joint
//! states are decoded with local arithmetic, products are rebuilt from the
//! raw tables, and demand comes from a dual bisection on the first-order
//! conditions or from exhaustive search. These routines are deliberately
//! naive and slow.

use alloc::vec::Vec;

use crate::agents::{Agent, AgentStyle, Position, StandardizationKind};
use crate::beliefs::{utility_eval, Belief, FactorTable, Scope, UtilityKind, UtilityValue};
use crate::equilibrium::PriceVector;
use crate::error::{Error, Result};
use crate::outcome_space::{Clique, OutcomeSpace};

/// Largest holding grid the best-response search will walk.
pub const MAX_GRID_POINTS: u128 = 10_000_000;
/// Largest joint space the product and marginal oracles will enumerate.
pub const ORACLE_STATE_CAP: usize = 1 << 20;
/// Finest price-simplex resolution accepted by [`brute_force_equilibrium`].
pub const MIN_PRICE_RESOLUTION: f64 = 1e-3;
/// Most goods [`brute_force_equilibrium`] will grid over.
pub const MAX_EQUILIBRIUM_GOODS: usize = 3;

/// Holding grid for [`best_response_oracle`].
///
/// `ranges` has one `(lo, hi)` per good. Under `ZeroValue` and
/// `ZeroLastGood` the last good is pinned by the constraint and its range is
/// ignored. Under `MinZero` every good is gridded and each point is shifted
/// so its smallest holding is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub ranges: Vec<(f64, f64)>,
    pub step: f64,
    pub standardization: StandardizationKind,
}

impl GridSpec {
    pub fn uniform(goods: usize, lo: f64, hi: f64, step: f64, standardization: StandardizationKind) -> Self {
        Self {
            ranges: alloc::vec![(lo, hi); goods],
            step,
            standardization,
        }
    }

    fn free_coordinates(&self) -> usize {
        match self.standardization {
            StandardizationKind::MinZero => self.ranges.len(),
            _ => self.ranges.len().saturating_sub(1),
        }
    }

    fn axis_len(&self, axis: usize) -> usize {
        let (lo, hi) = self.ranges[axis];
        libm::floor((hi - lo) / self.step + 1e-9) as usize + 1
    }

    /// Number of points the search will visit.
    pub fn points(&self) -> Result<u128> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidParameter("grid step must be positive"));
        }
        if self.ranges.iter().any(|&(lo, hi)| !(lo < hi)) {
            return Err(Error::InvalidParameter("grid ranges need lo < hi"));
        }
        let free = self.free_coordinates();
        if free == 0 {
            return Err(Error::EmptyGrid);
        }
        let mut total: u128 = 1;
        for axis in 0..free {
            total = total.saturating_mul(self.axis_len(axis) as u128);
        }
        if total > MAX_GRID_POINTS {
            return Err(Error::GridTooLarge {
                points: total,
                limit: MAX_GRID_POINTS,
            });
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse {
    pub position: Position,
    pub utility: UtilityValue,
}

/// Mixed-radix decoding, last variable fastest.
fn decode(mut index: usize, cards: &[usize]) -> Vec<usize> {
    let mut out = alloc::vec![0; cards.len()];
    for (slot, &card) in out.iter_mut().zip(cards).rev() {
        *slot = index % card;
        index /= card;
    }
    out
}

fn encode(values: &[usize], cards: &[usize]) -> usize {
    values.iter().zip(cards).fold(0, |acc, (&v, &c)| acc * c + v)
}

fn cards(space: &OutcomeSpace) -> Vec<usize> {
    space.variables().iter().map(|v| v.cardinality).collect()
}

/// Index of every joint state's restriction to `members`.
fn restriction_indices(space: &OutcomeSpace, members: &[usize]) -> Vec<usize> {
    let all = cards(space);
    let sub_cards: Vec<usize> = members.iter().map(|&m| all[m]).collect();
    (0..space.num_joint_states())
        .map(|k| {
            let digits = decode(k, &all);
            let sub: Vec<usize> = members.iter().map(|&m| digits[m]).collect();
            encode(&sub, &sub_cards)
        })
        .collect()
}

fn check_oracle_space(space: &OutcomeSpace) -> Result<()> {
    if space.num_joint_states() > ORACLE_STATE_CAP {
        return Err(Error::StateCapExceeded {
            cap: ORACLE_STATE_CAP,
        });
    }
    Ok(())
}

/// `sum_k P(k) U(W - s.c + s_k)` evaluated from scratch.
fn grid_utility(kind: UtilityKind, wealth: f64, probs: &[f64], costs: &[f64], s: &[f64]) -> UtilityValue {
    let spent: f64 = s.iter().zip(costs).map(|(a, b)| a * b).sum();
    let mut total = 0.0;
    for (&p, &h) in probs.iter().zip(s) {
        if p == 0.0 {
            continue;
        }
        match utility_eval(kind, wealth - spent + h) {
            UtilityValue::Finite(u) => total += p * u,
            UtilityValue::NegInfinity => return UtilityValue::NegInfinity,
        }
    }
    if total.is_finite() {
        UtilityValue::Finite(total)
    } else {
        UtilityValue::NegInfinity
    }
}

/// The belief an agent prices joint goods with: its own table, or for a
/// niche agent the market price tilted by its factor.
fn joint_belief(agent: &Agent, space: &OutcomeSpace, prices: &PriceVector) -> Result<Vec<f64>> {
    match &agent.style {
        AgentStyle::FullJoint(b) => Ok(b.probs().to_vec()),
        AgentStyle::Niche(f) => {
            let idx = restriction_indices(space, f.scope().members());
            let mut w: Vec<f64> = idx
                .iter()
                .zip(prices.costs())
                .map(|(&i, &c)| f.values()[i] * c)
                .collect();
            let z: f64 = w.iter().sum();
            for x in &mut w {
                *x /= z;
            }
            Ok(w)
        }
        AgentStyle::Marginal(_) => Err(Error::UnsupportedAgent(
            "marginal agents trade substates, not joint goods",
        )),
    }
}

/// Exhaustive maximization of expected utility over a holding grid.
///
/// Visits points in lexicographic order and keeps the first strict maximum.
pub fn best_response_oracle(
    agent: &Agent,
    space: &OutcomeSpace,
    prices: &PriceVector,
    grid: &GridSpec,
) -> Result<BestResponse> {
    let n = prices.len();
    if grid.ranges.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: grid.ranges.len(),
        });
    }
    let points = grid.points()?;
    let probs = joint_belief(agent, space, prices)?;
    if probs.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: probs.len(),
        });
    }
    let costs = prices.costs();
    let free = grid.free_coordinates();
    let lens: Vec<usize> = (0..free).map(|a| grid.axis_len(a)).collect();

    let mut best: Option<(Vec<f64>, UtilityValue)> = None;
    let mut counter = alloc::vec![0usize; free];
    let mut s = alloc::vec![0.0; n];
    for _ in 0..points {
        for axis in 0..free {
            s[axis] = grid.ranges[axis].0 + counter[axis] as f64 * grid.step;
        }
        match grid.standardization {
            StandardizationKind::ZeroValue => {
                let partial: f64 = s[..n - 1].iter().zip(costs).map(|(a, b)| a * b).sum();
                s[n - 1] = -partial / costs[n - 1];
            }
            StandardizationKind::ZeroLastGood => s[n - 1] = 0.0,
            StandardizationKind::MinZero => {
                let min = s.iter().copied().fold(f64::INFINITY, f64::min);
                for h in &mut s {
                    *h -= min;
                }
            }
        }
        let u = grid_utility(agent.utility, agent.wealth, &probs, costs, &s);
        if best.as_ref().is_none_or(|(_, b)| u > *b) {
            best = Some((s.clone(), u));
        }
        // Odometer, last axis fastest.
        for axis in (0..free).rev() {
            counter[axis] += 1;
            if counter[axis] < lens[axis] {
                break;
            }
            counter[axis] = 0;
        }
    }
    let (holdings, utility) = best.ok_or(Error::EmptyGrid)?;
    Ok(BestResponse {
        position: Position::new(holdings),
        utility,
    })
}

/// Normalized `base(k) * prod_i F_i(y_k^{S_i})` over every joint state.
/// A missing base is uniform.
pub fn brute_force_joint_product(
    space: &OutcomeSpace,
    base: Option<&Belief>,
    factors: &[FactorTable],
) -> Result<Belief> {
    check_oracle_space(space)?;
    let n = space.num_joint_states();
    let mut log_w = alloc::vec![0.0; n];
    if let Some(b) = base {
        if b.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: b.len(),
            });
        }
        for (w, &p) in log_w.iter_mut().zip(b.probs()) {
            *w = libm::log(p);
        }
    }
    for f in factors {
        f.check(space)?;
        let idx = restriction_indices(space, f.scope().members());
        for (w, &i) in log_w.iter_mut().zip(&idx) {
            *w += libm::log(f.values()[i]);
        }
    }
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_w.iter().map(|&l| libm::exp(l - max)).collect();
    Belief::from_weights(Scope::Full, weights)
}

/// Per-variable marginals by exhaustive summation.
pub fn exact_marginals(space: &OutcomeSpace, joint: &Belief) -> Result<Vec<Belief>> {
    check_oracle_space(space)?;
    let n = space.num_joint_states();
    if joint.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: joint.len(),
        });
    }
    let all = cards(space);
    let mut sums: Vec<Vec<f64>> = all.iter().map(|&c| alloc::vec![0.0; c]).collect();
    for (k, &p) in joint.probs().iter().enumerate() {
        let digits = decode(k, &all);
        for (v, &d) in digits.iter().enumerate() {
            sums[v][d] += p;
        }
    }
    sums.into_iter()
        .enumerate()
        .map(|(v, w)| Belief::from_weights(Scope::Clique(Clique::new(alloc::vec![v])?), w))
        .collect()
}

/// Wealth-weighted lower median by sorting and accumulating wealth.
pub fn weighted_median_oracle(wealths: &[f64], values: &[f64]) -> Result<f64> {
    if wealths.is_empty() {
        return Err(Error::NoAgents);
    }
    if wealths.len() != values.len() {
        return Err(Error::LengthMismatch {
            expected: wealths.len(),
            found: values.len(),
        });
    }
    let mut pairs: Vec<(f64, f64)> = values.iter().copied().zip(wealths.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let half = 0.5 * wealths.iter().sum::<f64>();
    let mut acc = 0.0;
    let mut i = 0;
    while i < pairs.len() {
        // Ties enter together.
        let v = pairs[i].0;
        while i < pairs.len() && pairs[i].0 == v {
            acc += pairs[i].1;
            i += 1;
        }
        if acc >= half {
            return Ok(v);
        }
    }
    Ok(pairs[pairs.len() - 1].0)
}

/// Inverse marginal utility: the wealth outcome `x` with `U'(x) = t`.
fn inverse_marginal_utility(kind: UtilityKind, t: f64) -> f64 {
    match kind {
        UtilityKind::Logarithmic => 1.0 / t,
        UtilityKind::ExponentialNegative => -libm::log(t),
        UtilityKind::LinearDebtFree => unreachable!("linear utility has no interior optimum"),
    }
}

/// Zero-value demand of a smooth concave utility by bisection on the
/// budget multiplier `mu` in `P_k U'(W + s_k) = mu c_k`.
fn dual_demand(kind: UtilityKind, wealth: f64, probs: &[f64], costs: &[f64]) -> Result<Vec<f64>> {
    if let Some(index) = probs.iter().position(|&p| !(p > 0.0)) {
        return Err(Error::ZeroBelief { index });
    }
    let total: f64 = costs.iter().sum();
    let holdings = |log_mu: f64| -> Vec<f64> {
        let mu = libm::exp(log_mu);
        probs
            .iter()
            .zip(costs)
            .map(|(&p, &c)| inverse_marginal_utility(kind, mu * c / p) - wealth)
            .collect()
    };
    let value = |s: &[f64]| -> f64 { s.iter().zip(costs).map(|(a, b)| a * b).sum::<f64>() / total };
    let (mut lo, mut hi) = (-300.0f64, 300.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        // Spending falls as mu rises.
        if value(&holdings(mid)) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(holdings(0.5 * (lo + hi)))
}

/// Linear agents: the optimum sits on a vertex, either no trade or the
/// whole wealth on one good. Vertices are scored just inside the budget
/// and the winner is returned at the full stake.
fn linear_vertex_demand(wealth: f64, probs: &[f64], costs: &[f64]) -> Vec<f64> {
    const INSIDE: f64 = 1.0 - 1e-9;
    let n = costs.len();
    let zero = alloc::vec![0.0; n];
    let mut best = (
        None,
        grid_utility(UtilityKind::LinearDebtFree, wealth, probs, costs, &zero),
    );
    for k in 0..n {
        let mut s = zero.clone();
        s[k] = INSIDE * wealth / costs[k];
        let u = grid_utility(UtilityKind::LinearDebtFree, wealth, probs, costs, &s);
        let improves = match (u, best.1) {
            (UtilityValue::Finite(a), UtilityValue::Finite(b)) => a > b + 1e-12 * wealth,
            _ => u > best.1,
        };
        if improves {
            best = (Some(k), u);
        }
    }
    let mut s = zero;
    if let Some(k) = best.0 {
        s[k] = wealth / costs[k];
    }
    // Zero-value representative.
    let value: f64 = s.iter().zip(costs).map(|(a, b)| a * b).sum::<f64>() / costs.iter().sum::<f64>();
    s.iter().map(|h| h - value).collect()
}

/// Zero-value demand over the joint goods, computed without the closed forms.
fn oracle_demand(agent: &Agent, space: &OutcomeSpace, prices: &PriceVector) -> Result<Vec<f64>> {
    let costs = prices.costs();
    match (&agent.style, agent.utility) {
        (AgentStyle::FullJoint(b), UtilityKind::LinearDebtFree) => {
            Ok(linear_vertex_demand(agent.wealth, b.probs(), costs))
        }
        (AgentStyle::Marginal(b), kind) => {
            let clique = b.scope().clique(space);
            let idx = restriction_indices(space, clique.members());
            let mut marginal = alloc::vec![0.0; b.len()];
            for (&i, &c) in idx.iter().zip(costs) {
                marginal[i] += c;
            }
            let sub = dual_demand(kind, agent.wealth, b.probs(), &marginal)?;
            Ok(idx.iter().map(|&i| sub[i]).collect())
        }
        (_, kind) => {
            let probs = joint_belief(agent, space, prices)?;
            dual_demand(kind, agent.wealth, &probs, costs)
        }
    }
}

/// Grid search over the price simplex for the point with the smallest
/// max-norm clearing residual. Every grid price is a positive multiple of
/// `resolution`; ties go to the first point in lexicographic order.
pub fn brute_force_equilibrium(
    space: &OutcomeSpace,
    agents: &[Agent],
    resolution: f64,
) -> Result<PriceVector> {
    let n = space.num_joint_states();
    if agents.is_empty() {
        return Err(Error::NoAgents);
    }
    let steps = libm::round(1.0 / resolution) as usize;
    if n > MAX_EQUILIBRIUM_GOODS || !(resolution >= MIN_PRICE_RESOLUTION) || steps < n {
        return Err(Error::GridTooLarge {
            points: simplex_points(n, libm::round(1.0 / resolution) as u128),
            limit: simplex_points(
                MAX_EQUILIBRIUM_GOODS,
                libm::round(1.0 / MIN_PRICE_RESOLUTION) as u128,
            ),
        });
    }
    for a in agents {
        a.check_space(space)?;
    }

    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut parts = alloc::vec![1usize; n];
    loop {
        let used: usize = parts[..n - 1].iter().sum();
        if used < steps {
            parts[n - 1] = steps - used;
            let costs: Vec<f64> = parts.iter().map(|&p| p as f64 / steps as f64).collect();
            let prices = PriceVector::new(costs)?;
            let mut total = alloc::vec![0.0; n];
            for a in agents {
                for (t, d) in total.iter_mut().zip(oracle_demand(a, space, &prices)?) {
                    *t += d;
                }
            }
            let r = total.iter().fold(0.0, |m: f64, x| m.max(libm::fabs(*x)));
            if best.as_ref().is_none_or(|(_, b)| r < *b) {
                best = Some((prices.costs().to_vec(), r));
            }
        }
        // Next composition of the free parts.
        let mut axis = n - 1;
        loop {
            if axis == 0 {
                let (costs, _) = best.ok_or(Error::EmptyGrid)?;
                return PriceVector::new(costs);
            }
            axis -= 1;
            parts[axis] += 1;
            if parts[..n - 1].iter().sum::<usize>() < steps {
                break;
            }
            parts[axis] = 1;
        }
    }
}

fn simplex_points(goods: usize, steps: u128) -> u128 {
    // Compositions of `steps` into `goods` positive parts.
    let (mut num, mut den) = (1u128, 1u128);
    for i in 1..goods as u128 {
        num = num.saturating_mul(steps.saturating_sub(i));
        den = den.saturating_mul(i);
    }
    num / den.max(1)
}
