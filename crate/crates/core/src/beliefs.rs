//! Probability tables, clique factors and the three utility forms.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::agents::Position;
use crate::equilibrium::PriceVector;
use crate::error::{Error, Result};
use crate::math::{exp, ln};
use crate::outcome_space::{Clique, OutcomeSpace};

/// Entries of a normalized belief sum to one within this tolerance.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// What a table is defined over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scope {
    Full,
    Clique(Clique),
}

impl Scope {
    pub fn clique(&self, space: &OutcomeSpace) -> Clique {
        match self {
            Scope::Full => space.full_clique(),
            Scope::Clique(c) => c.clone(),
        }
    }

    pub fn num_states(&self, space: &OutcomeSpace) -> usize {
        match self {
            Scope::Full => space.num_joint_states(),
            Scope::Clique(c) => space.clique_num_states(c),
        }
    }

    pub fn check(&self, space: &OutcomeSpace, table_len: usize) -> Result<()> {
        if let Scope::Clique(c) = self {
            space.check_clique(c)?;
        }
        let expected = self.num_states(space);
        if table_len != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: table_len,
            });
        }
        Ok(())
    }
}

/// A normalized probability table.
#[derive(Debug, Clone, PartialEq)]
pub struct Belief {
    scope: Scope,
    probs: Vec<f64>,
}

impl Belief {
    /// Normalizes nonnegative weights into a belief over `scope`.
    pub fn from_weights(scope: Scope, weights: Vec<f64>) -> Result<Self> {
        let probs = normalize_table(weights)?;
        Ok(Self { scope, probs })
    }

    /// Builds a belief from unnormalized log-probabilities.
    pub fn from_log_weights(scope: Scope, log_weights: &[f64]) -> Result<Self> {
        if log_weights.is_empty() || log_weights.iter().all(|&l| l == f64::NEG_INFINITY) {
            return Err(Error::DegenerateBelief);
        }
        if let Some(index) = log_weights.iter().position(|l| l.is_nan() || *l == f64::INFINITY) {
            return Err(Error::InvalidEntry { index });
        }
        Ok(Self {
            scope,
            probs: crate::math::softmax(log_weights),
        })
    }

    pub fn uniform(scope: Scope, num_states: usize) -> Result<Self> {
        Self::from_weights(scope, alloc::vec![1.0; num_states])
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob(&self, state: usize) -> f64 {
        self.probs[state]
    }

    /// `ln P(state)`; negative infinity for zero entries.
    pub fn ln_prob(&self, state: usize) -> f64 {
        ln(self.probs[state])
    }

    /// Log-domain table; fails on the first zero entry.
    pub fn log_probs(&self) -> Result<Vec<f64>> {
        self.probs
            .iter()
            .enumerate()
            .map(|(index, &p)| {
                if p > 0.0 {
                    Ok(ln(p))
                } else {
                    Err(Error::ZeroBelief { index })
                }
            })
            .collect()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }
}

/// Scales a nonnegative table to sum to one.
pub fn normalize(table: &[f64]) -> Result<Belief> {
    Belief::from_weights(Scope::Full, table.to_vec())
}

fn normalize_table(mut weights: Vec<f64>) -> Result<Vec<f64>> {
    if let Some(index) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidEntry { index });
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::DegenerateBelief);
    }
    for w in &mut weights {
        *w /= total;
    }
    Ok(weights)
}

/// Strictly positive, unnormalized clique potential.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorTable {
    scope: Clique,
    values: Vec<f64>,
}

impl FactorTable {
    pub fn new(scope: Clique, values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::NonPositiveFactor { index });
        }
        Ok(Self { scope, values })
    }

    pub fn scope(&self) -> &Clique {
        &self.scope
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn log_values(&self) -> Vec<f64> {
        self.values.iter().map(|&v| ln(v)).collect()
    }

    pub fn check(&self, space: &OutcomeSpace) -> Result<()> {
        Scope::Clique(self.scope.clone()).check(space, self.values.len())
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.scope.clone(),
            self.values.iter().map(|v| v * factor).collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UtilityKind {
    /// `x` for positive wealth, `-inf` otherwise.
    LinearDebtFree,
    Logarithmic,
    /// `-exp(-x)`.
    ExponentialNegative,
}

/// Utility on the extended real line. `NegInfinity` orders below every
/// finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UtilityValue {
    NegInfinity,
    Finite(f64),
}

impl UtilityValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            UtilityValue::Finite(x) => Some(x),
            UtilityValue::NegInfinity => None,
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        matches!(self, UtilityValue::NegInfinity)
    }

    /// `-inf` maps to `f64::NEG_INFINITY`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::NEG_INFINITY)
    }

    fn from_f64(x: f64) -> Self {
        if x.is_finite() {
            UtilityValue::Finite(x)
        } else {
            UtilityValue::NegInfinity
        }
    }
}

impl PartialOrd for UtilityValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use UtilityValue::*;
        match (self, other) {
            (NegInfinity, NegInfinity) => Some(Ordering::Equal),
            (NegInfinity, Finite(_)) => Some(Ordering::Less),
            (Finite(_), NegInfinity) => Some(Ordering::Greater),
            (Finite(a), Finite(b)) => a.partial_cmp(b),
        }
    }
}

pub fn utility_eval(kind: UtilityKind, wealth_outcome: f64) -> UtilityValue {
    let x = wealth_outcome;
    match kind {
        UtilityKind::LinearDebtFree if x > 0.0 => UtilityValue::from_f64(x),
        UtilityKind::Logarithmic if x > 0.0 => UtilityValue::from_f64(ln(x)),
        UtilityKind::ExponentialNegative => UtilityValue::from_f64(-exp(-x)),
        _ => UtilityValue::NegInfinity,
    }
}

/// `sum_k P(k) U(W - s.c + s_k)` for a market of joint bets.
///
/// States with zero probability contribute nothing, even when their
/// outcome would be ruinous.
pub fn expected_utility(
    belief: &Belief,
    kind: UtilityKind,
    wealth: f64,
    prices: &PriceVector,
    position: &Position,
) -> Result<UtilityValue> {
    let n = prices.len();
    for found in [belief.len(), position.len()] {
        if found != n {
            return Err(Error::LengthMismatch { expected: n, found });
        }
    }
    let spent = position.value(prices);
    let mut total = 0.0;
    for (&p, &s) in belief.probs().iter().zip(position.holdings()) {
        if p == 0.0 {
            continue;
        }
        match utility_eval(kind, wealth - spent + s) {
            UtilityValue::Finite(u) => total += p * u,
            UtilityValue::NegInfinity => return Ok(UtilityValue::NegInfinity),
        }
    }
    Ok(UtilityValue::from_f64(total))
}

/// Exponential expected utility when the goods are single-variable bets on
/// `y_j = 1`: `-sum_y P(y) exp(-W + s.(c - y))`.
///
/// `belief` is over the binary variables that `prices` and `position` index,
/// in last-fastest order.
pub fn restricted_expected_utility(
    belief: &Belief,
    wealth: f64,
    prices: &[f64],
    position: &[f64],
) -> Result<f64> {
    let m = prices.len();
    if position.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: position.len(),
        });
    }
    let states = 1usize.checked_shl(m as u32).unwrap_or(0);
    if belief.len() != states {
        return Err(Error::LengthMismatch {
            expected: states,
            found: belief.len(),
        });
    }
    let mut total = 0.0;
    for (state, &p) in belief.probs().iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let mut exponent = -wealth;
        for j in 0..m {
            let y = ((state >> (m - 1 - j)) & 1) as f64;
            exponent += position[j] * (prices[j] - y);
        }
        total += p * exp(exponent);
    }
    Ok(-total)
}
