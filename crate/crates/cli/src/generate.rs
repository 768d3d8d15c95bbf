//! Seeded random scenarios for experiments and tests.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scenario::{
    AgentDecl, MarketKind, Scenario, SolverDecl, SpaceDecl, StyleTag, UtilityTag, VariableDecl,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Log-utility agents over a joint market.
    Log,
    /// Exp-utility agents over a joint market.
    Exp,
    /// One linear binary market.
    Linear,
    /// One exp base agent plus niche factors over binary variables.
    Niche,
    /// Exp agents with marginal beliefs over a chain of binary variables.
    Restricted,
}

fn table(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let z: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / z).collect()
}

fn binary_vars(n: usize) -> Vec<VariableDecl> {
    (0..n)
        .map(|i| VariableDecl {
            name: format!("y{}", i + 1),
            cardinality: 2,
        })
        .collect()
}

/// `size` is the number of goods for joint families and the number of
/// variables otherwise.
pub fn generate(family: Family, size: usize, agents: usize, seed: u64) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = size.max(1);
    let agents = agents.max(1);
    let mut decls = Vec::new();
    let (variables, market) = match family {
        Family::Log | Family::Exp | Family::Linear => {
            let goods = if family == Family::Linear { 2 } else { size.max(2) };
            let utility = match family {
                Family::Log => UtilityTag::Log,
                Family::Exp => UtilityTag::Exp,
                _ => UtilityTag::Linear,
            };
            for i in 0..agents {
                decls.push(AgentDecl {
                    id: format!("a{}", i + 1),
                    utility,
                    wealth: rng.gen_range(0.1..10.0),
                    style: StyleTag::FullJoint,
                    state_order: vec!["x".into()],
                    table: table(&mut rng, goods),
                    log: false,
                });
            }
            (
                vec![VariableDecl {
                    name: "x".into(),
                    cardinality: goods,
                }],
                MarketKind::Joint,
            )
        }
        Family::Niche => {
            let vars = binary_vars(size.max(2));
            decls.push(AgentDecl {
                id: "base".into(),
                utility: UtilityTag::Exp,
                wealth: 1.0,
                style: StyleTag::FullJoint,
                state_order: vars.iter().map(|v| v.name.clone()).collect(),
                table: table(&mut rng, 1 << vars.len()),
                log: false,
            });
            for i in 0..agents {
                let m = rng.gen_range(1..=vars.len().min(3));
                let mut members: Vec<usize> = (0..vars.len()).collect();
                for k in 0..m {
                    let j = rng.gen_range(k..members.len());
                    members.swap(k, j);
                }
                members.truncate(m);
                decls.push(AgentDecl {
                    id: format!("n{}", i + 1),
                    utility: UtilityTag::Exp,
                    wealth: 1.0,
                    style: StyleTag::Niche,
                    state_order: members.iter().map(|&k| vars[k].name.clone()).collect(),
                    table: (0..1 << m).map(|_| rng.gen_range(0.2..5.0)).collect(),
                    log: false,
                });
            }
            (vars, MarketKind::Joint)
        }
        Family::Restricted => {
            let vars = binary_vars(size.max(2));
            // Overlapping pairs along the chain, then extra random pairs.
            let mut pairs: Vec<(usize, usize)> = (0..vars.len() - 1).map(|k| (k, k + 1)).collect();
            for _ in pairs.len()..agents {
                let a = rng.gen_range(0..vars.len());
                let b = (a + rng.gen_range(1..vars.len())) % vars.len();
                pairs.push((a, b));
            }
            for (i, (a, b)) in pairs.into_iter().enumerate() {
                decls.push(AgentDecl {
                    id: format!("m{}", i + 1),
                    utility: UtilityTag::Exp,
                    wealth: 1.0,
                    style: StyleTag::Marginal,
                    state_order: vec![vars[a].name.clone(), vars[b].name.clone()],
                    table: table(&mut rng, 4),
                    log: false,
                });
            }
            (vars, MarketKind::Restricted)
        }
    };
    Scenario {
        space: SpaceDecl { variables },
        market,
        agents: decls,
        solver: SolverDecl::default(),
    }
}
