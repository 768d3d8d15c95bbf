//! Discrete multivariate outcome spaces and the goods traded on them.
//!
//! Joint states are enumerated row-major with the last declared variable
//! varying fastest. That order defines the good index `k` of every joint
//! market, so it must never change.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Default refusal threshold for joint markets.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub cardinality: usize,
}

impl Variable {
    pub fn new(name: impl Into<String>, cardinality: usize) -> Self {
        Self {
            name: name.into(),
            cardinality,
        }
    }

    pub fn binary(name: impl Into<String>) -> Self {
        Self::new(name, 2)
    }
}

/// A full assignment, one value index per variable in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointState(pub Vec<usize>);

impl JointState {
    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for JointState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A sorted, duplicate-free, nonempty set of variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clique(Vec<usize>);

impl Clique {
    /// Members may be given in any order; duplicates are rejected.
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyClique);
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCliqueMember(w[0]));
        }
        Ok(Self(members))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, variable: usize) -> bool {
        self.0.binary_search(&variable).is_ok()
    }

    /// Position of `variable` among the members.
    pub fn position(&self, variable: usize) -> Option<usize> {
        self.0.binary_search(&variable).ok()
    }
}

/// What a one-unit bet pays out on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodKind {
    JointBet(JointState),
    MarginalBet { clique: Clique, substate: Vec<usize> },
    SingleVarBet { variable: usize, value: usize },
}

/// An Arrow-Debreu bet paying one currency unit when its event occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Good {
    pub kind: GoodKind,
}

impl Good {
    pub const PAYOUT: f64 = 1.0;

    /// Report label: `(0,1)` for joint bets, `y1=1` for single-variable bets,
    /// `{y1=1,y3=0}` for marginal bets.
    pub fn label(&self, space: &OutcomeSpace) -> String {
        match &self.kind {
            GoodKind::JointBet(state) => format!("{state}"),
            GoodKind::SingleVarBet { variable, value } => {
                format!("{}={}", space.variables[*variable].name, value)
            }
            GoodKind::MarginalBet { clique, substate } => {
                let parts: Vec<String> = clique
                    .members()
                    .iter()
                    .zip(substate)
                    .map(|(&v, x)| format!("{}={}", space.variables[v].name, x))
                    .collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }
}

/// A finite product space of discrete variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeSpace {
    variables: Vec<Variable>,
    strides: Vec<usize>,
    num_joint_states: usize,
}

impl OutcomeSpace {
    pub fn new(variables: Vec<Variable>) -> Result<Self> {
        Self::with_state_cap(variables, DEFAULT_STATE_CAP)
    }

    pub fn with_state_cap(variables: Vec<Variable>, cap: usize) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (i, v) in variables.iter().enumerate() {
            if v.cardinality < 2 {
                return Err(Error::InvalidCardinality {
                    name: v.name.clone(),
                    cardinality: v.cardinality,
                });
            }
            if variables[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        let mut strides = alloc::vec![0; variables.len()];
        let mut total: usize = 1;
        for (i, v) in variables.iter().enumerate().rev() {
            strides[i] = total;
            total = total
                .checked_mul(v.cardinality)
                .filter(|&t| t <= cap)
                .ok_or(Error::StateCapExceeded { cap })?;
        }
        Ok(Self {
            variables,
            strides,
            num_joint_states: total,
        })
    }

    /// All-binary space with the given names.
    pub fn binary<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(names.into_iter().map(Variable::binary).collect())
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_joint_states(&self) -> usize {
        self.num_joint_states
    }

    pub fn cardinality(&self, variable: usize) -> usize {
        self.variables[variable].cardinality
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn is_binary(&self) -> bool {
        self.variables.iter().all(|v| v.cardinality == 2)
    }

    /// Clique covering every variable.
    pub fn full_clique(&self) -> Clique {
        Clique((0..self.variables.len()).collect())
    }

    pub fn state(&self, index: usize) -> JointState {
        debug_assert!(index < self.num_joint_states);
        JointState(
            self.variables
                .iter()
                .zip(&self.strides)
                .map(|(v, &s)| (index / s) % v.cardinality)
                .collect(),
        )
    }

    pub fn index_of(&self, state: &JointState) -> Result<usize> {
        if state.0.len() != self.variables.len() {
            return Err(Error::LengthMismatch {
                expected: self.variables.len(),
                found: state.0.len(),
            });
        }
        let mut index = 0;
        for (i, (&x, v)) in state.0.iter().zip(&self.variables).enumerate() {
            if x >= v.cardinality {
                return Err(Error::InvalidValue {
                    variable: i,
                    value: x,
                });
            }
            index += x * self.strides[i];
        }
        Ok(index)
    }

    /// Every joint state in good-index order.
    pub fn enumerate_joint(&self) -> Vec<JointState> {
        (0..self.num_joint_states).map(|k| self.state(k)).collect()
    }

    pub fn check_clique(&self, clique: &Clique) -> Result<()> {
        match clique.members().last() {
            Some(&last) if last >= self.variables.len() => Err(Error::InvalidClique {
                index: last,
                len: self.variables.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn clique_cardinalities(&self, clique: &Clique) -> Vec<usize> {
        clique
            .members()
            .iter()
            .map(|&v| self.variables[v].cardinality)
            .collect()
    }

    pub fn clique_num_states(&self, clique: &Clique) -> usize {
        clique
            .members()
            .iter()
            .map(|&v| self.variables[v].cardinality)
            .product()
    }

    fn check_substate(&self, clique: &Clique, substate: &[usize]) -> Result<()> {
        self.check_clique(clique)?;
        if substate.len() != clique.len() {
            return Err(Error::LengthMismatch {
                expected: clique.len(),
                found: substate.len(),
            });
        }
        for (&v, &x) in clique.members().iter().zip(substate) {
            if x >= self.variables[v].cardinality {
                return Err(Error::InvalidValue {
                    variable: v,
                    value: x,
                });
            }
        }
        Ok(())
    }

    /// Index of a clique sub-assignment, using the same last-fastest order.
    pub fn substate_index(&self, clique: &Clique, substate: &[usize]) -> Result<usize> {
        self.check_substate(clique, substate)?;
        Ok(clique
            .members()
            .iter()
            .zip(substate)
            .fold(0, |acc, (&v, &x)| acc * self.variables[v].cardinality + x))
    }

    pub fn substate_at(&self, clique: &Clique, mut index: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; clique.len()];
        for (slot, &v) in out.iter_mut().zip(clique.members()).rev() {
            let card = self.variables[v].cardinality;
            *slot = index % card;
            index /= card;
        }
        out
    }

    /// Maps each joint good index to the index of its restriction to `clique`.
    pub fn projection(&self, clique: &Clique) -> Result<Vec<usize>> {
        self.check_clique(clique)?;
        Ok((0..self.num_joint_states)
            .map(|k| {
                clique.members().iter().fold(0, |acc, &v| {
                    let card = self.variables[v].cardinality;
                    acc * card + (k / self.strides[v]) % card
                })
            })
            .collect())
    }

    /// Every joint state whose restriction to `clique` equals `substate`.
    pub fn consistent_states(&self, substate: &[usize], clique: &Clique) -> Result<Vec<JointState>> {
        let target = self.substate_index(clique, substate)?;
        let proj = self.projection(clique)?;
        Ok(proj
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == target)
            .map(|(k, _)| self.state(k))
            .collect())
    }

    /// Cost of a bet on the marginal outcome `substate`: the summed joint
    /// costs of every consistent joint good.
    pub fn marginal_cost(&self, prices: &[f64], clique: &Clique, substate: &[usize]) -> Result<f64> {
        let target = self.substate_index(clique, substate)?;
        Ok(self.marginal_costs(prices, clique)?[target])
    }

    /// Marginal costs of every substate of `clique`, in substate order.
    pub fn marginal_costs(&self, prices: &[f64], clique: &Clique) -> Result<Vec<f64>> {
        self.check_prices(prices)?;
        let proj = self.projection(clique)?;
        let mut out = alloc::vec![0.0; self.clique_num_states(clique)];
        for (&s, &c) in proj.iter().zip(prices) {
            out[s] += c;
        }
        Ok(out)
    }

    pub(crate) fn check_prices(&self, prices: &[f64]) -> Result<()> {
        if prices.len() != self.num_joint_states {
            return Err(Error::LengthMismatch {
                expected: self.num_joint_states,
                found: prices.len(),
            });
        }
        Ok(())
    }

    /// One bet per joint state.
    pub fn joint_goods(&self) -> Vec<Good> {
        self.enumerate_joint()
            .into_iter()
            .map(|s| Good {
                kind: GoodKind::JointBet(s),
            })
            .collect()
    }

    /// One bet per variable on that variable taking value 1. Binary spaces only.
    pub fn single_variable_goods(&self) -> Result<Vec<Good>> {
        if let Some(i) = self.variables.iter().position(|v| v.cardinality != 2) {
            return Err(Error::NonBinaryVariable(i));
        }
        Ok((0..self.variables.len())
            .map(|variable| Good {
                kind: GoodKind::SingleVarBet { variable, value: 1 },
            })
            .collect())
    }

    /// Bets on every substate of `clique`.
    pub fn marginal_goods(&self, clique: &Clique) -> Result<Vec<Good>> {
        self.check_clique(clique)?;
        Ok((0..self.clique_num_states(clique))
            .map(|i| Good {
                kind: GoodKind::MarginalBet {
                    clique: clique.clone(),
                    substate: self.substate_at(clique, i),
                },
            })
            .collect())
    }
}

/// Projects `state` onto the clique members, in member order.
pub fn restrict(state: &JointState, clique: &Clique) -> Result<Vec<usize>> {
    clique
        .members()
        .iter()
        .map(|&v| {
            state.0.get(v).copied().ok_or(Error::InvalidClique {
                index: v,
                len: state.0.len(),
            })
        })
        .collect()
}
