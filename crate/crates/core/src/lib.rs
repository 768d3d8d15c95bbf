//! Prediction markets as belief aggregators: outcome spaces, agents with
//! utility-driven demand, equilibrium solvers and a message-passing auction
//! for restricted single-variable goods.
#![no_std]
// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod agents;
pub mod beliefs;
pub mod equilibrium;
pub mod error;
mod math;
pub mod message_passing;
pub mod oracle;
pub mod outcome_space;

pub use agents::{Agent, AgentStyle, Position, StandardizationKind};
pub use beliefs::{Belief, FactorTable, Scope, UtilityKind, UtilityValue};
pub use equilibrium::{EquilibriumReport, PriceVector, TatonnementParams};
pub use error::{Error, Result};
pub use message_passing::{MessagePassingReport, RestrictedMarket, Schedule, UpdateMode};
pub use outcome_space::{Clique, Good, GoodKind, JointState, OutcomeSpace, Variable};
