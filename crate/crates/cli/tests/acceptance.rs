//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p mlmarket --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use mlmarket::commands::{read_input, rerun, Input};
use mlmarket::{load_scenario, run, Overrides, RunReport};
use mlmarket_core::agents::{buy_exp, buy_log, standardize};
use mlmarket_core::beliefs::{expected_utility, normalize};
use mlmarket_core::equilibrium::{
    check_no_arbitrage, solve_exp_market, solve_linear_binary, solve_log_market, solve_niche_market,
    tatonnement, TatonnementParams,
};
use mlmarket_core::message_passing::{
    compute_message, local_buying, run_message_passing, update_price, AgentMessage, Schedule,
};
use mlmarket_core::oracle::{
    best_response_oracle, brute_force_joint_product, exact_marginals, weighted_median_oracle, GridSpec,
};
use mlmarket_core::{
    Agent, AgentStyle, Belief, Clique, FactorTable, OutcomeSpace, Position, PriceVector, RestrictedMarket,
    StandardizationKind, UtilityKind, Variable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_table(rng: &mut ChaCha8Rng, n: usize, lo: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..1.0)).collect()
}

fn belief_of(a: &Agent) -> &Belief {
    match &a.style {
        AgentStyle::FullJoint(b) => b,
        _ => unreachable!("test agents are full-joint"),
    }
}

fn joint_agent(kind: UtilityKind, wealth: f64, table: &[f64]) -> Agent {
    Agent::full_joint("a", wealth, kind, normalize(table).unwrap()).unwrap()
}

fn random_market(rng: &mut ChaCha8Rng, kind: UtilityKind) -> Vec<Agent> {
    let goods = rng.gen_range(2..=5);
    let n = rng.gen_range(1..=6);
    (0..n)
        .map(|_| {
            let w = rng.gen_range(0.1..10.0);
            let t = random_table(rng, goods, 0.05);
            joint_agent(kind, w, &t)
        })
        .collect()
}

fn single_good_space(goods: usize) -> OutcomeSpace {
    OutcomeSpace::new(vec![Variable::new("x", goods)]).unwrap()
}

fn binary_space(j: usize) -> OutcomeSpace {
    OutcomeSpace::binary((0..j).map(|i| format!("y{i}"))).unwrap()
}

/// Every price vector any solver produced, for the no-arbitrage sweep.
#[derive(Default)]
struct Collected {
    joint: Vec<Vec<f64>>,
    restricted: Vec<Vec<f64>>,
}

fn ac1(out: &mut Collected) -> Outcome {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    for _ in 0..50 {
        let agents = random_market(&mut r, UtilityKind::Logarithmic);
        let report = solve_log_market(&agents).map_err(|e| e.to_string())?;
        let total: f64 = agents.iter().map(|a| a.wealth).sum();
        for k in 0..report.prices.len() {
            let want = agents
                .iter()
                .map(|a| a.wealth * belief_of(a).prob(k))
                .sum::<f64>()
                / total;
            worst = worst.max((report.prices.cost(k) - want).abs());
        }
        worst_residual = worst_residual.max(report.clearing_residual);
        out.joint.push(report.prices.costs().to_vec());
    }
    ensure(worst <= 1e-12, || format!("max price error {worst:e}"))?;
    ensure(worst_residual <= 1e-10, || {
        format!("max residual {worst_residual:e}")
    })?;
    let worked = [
        joint_agent(UtilityKind::Logarithmic, 1.0, &[0.8, 0.2]),
        joint_agent(UtilityKind::Logarithmic, 1.0, &[0.5, 0.5]),
        joint_agent(UtilityKind::Logarithmic, 2.0, &[0.2, 0.8]),
    ];
    let p = solve_log_market(&worked)
        .map_err(|e| e.to_string())?
        .prices
        .cost(1);
    ensure((p - 0.575).abs() <= 1e-15, || format!("worked case gave {p}"))?;
    Ok(format!(
        "50 markets, max error {worst:.1e}, max residual {worst_residual:.1e}; worked case {p}"
    ))
}

fn ac2(out: &mut Collected) -> Outcome {
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    let mut worst_shift: f64 = 0.0;
    for _ in 0..50 {
        let agents = random_market(&mut r, UtilityKind::ExponentialNegative);
        let report = solve_exp_market(&agents).map_err(|e| e.to_string())?;
        let n = agents.len() as f64;
        let goods = report.prices.len();
        let g: Vec<f64> = (0..goods)
            .map(|k| {
                agents
                    .iter()
                    .map(|a| belief_of(a).prob(k).powf(1.0 / n))
                    .product()
            })
            .collect();
        let z: f64 = g.iter().sum();
        for (c, gk) in report.prices.costs().iter().zip(&g) {
            worst = worst.max((c - gk / z).abs());
        }
        let mut perturbed = agents.clone();
        for a in &mut perturbed {
            a.wealth = r.gen_range(0.1..10.0);
        }
        let again = solve_exp_market(&perturbed).map_err(|e| e.to_string())?;
        for k in 0..goods {
            worst_shift = worst_shift.max((again.prices.cost(k) - report.prices.cost(k)).abs());
        }
        out.joint.push(report.prices.costs().to_vec());
    }
    ensure(worst <= 1e-12, || format!("max price error {worst:e}"))?;
    ensure(worst_shift <= f64::EPSILON, || {
        format!("wealth perturbation moved prices by {worst_shift:e}")
    })?;
    let worked = solve_exp_market(&[
        joint_agent(UtilityKind::ExponentialNegative, 1.0, &[0.9, 0.1]),
        joint_agent(UtilityKind::ExponentialNegative, 1.0, &[0.5, 0.5]),
    ])
    .map_err(|e| e.to_string())?;
    let c = worked.prices.costs();
    ensure(
        (c[0] - 0.75).abs() <= 1e-15 && (c[1] - 0.25).abs() <= 1e-15,
        || format!("worked case gave {c:?}"),
    )?;
    Ok(format!(
        "50 markets, max error {worst:.1e}, wealth shift {worst_shift:.1e}; worked case ({}, {})",
        c[0], c[1]
    ))
}

fn ac3(out: &mut Collected) -> Outcome {
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for _ in 0..25 {
        let j = r.gen_range(2..=6);
        let space = binary_space(j);
        let base = normalize(&random_table(&mut r, 1 << j, 0.05)).unwrap();
        let base_agent = Agent::full_joint("b", 1.0, UtilityKind::ExponentialNegative, base.clone()).unwrap();
        let mut factors = Vec::new();
        for _ in 0..r.gen_range(1..=5) {
            let m = r.gen_range(1..=j.min(3));
            let mut vars: Vec<usize> = (0..j).collect();
            for k in 0..m {
                let pick = r.gen_range(k..j);
                vars.swap(k, pick);
            }
            vars.truncate(m);
            let values = (0..1 << m).map(|_| r.gen_range(0.2..5.0)).collect();
            factors.push(FactorTable::new(Clique::new(vars).unwrap(), values).unwrap());
        }
        let niche: Vec<Agent> = factors
            .iter()
            .map(|f| Agent::niche("n", 1.0, f.clone()).unwrap())
            .collect();
        let report = solve_niche_market(&space, &base_agent, &niche).map_err(|e| e.to_string())?;
        let oracle = brute_force_joint_product(&space, Some(&base), &factors).map_err(|e| e.to_string())?;
        for (a, b) in report.prices.costs().iter().zip(oracle.probs()) {
            worst = worst.max((a - b).abs());
        }
        out.joint.push(report.prices.costs().to_vec());
    }
    ensure(worst <= 1e-12, || format!("max discrepancy {worst:e}"))?;
    Ok(format!("25 niche markets, max discrepancy {worst:.1e}"))
}

fn ac4() -> Outcome {
    const STEP: f64 = 0.01;
    let mut r = rng(4);
    let mut checked = 0;
    let mut worst_gap: f64 = 0.0;
    let mut worst_dist: f64 = 0.0;
    while checked < 20 {
        let goods = if checked % 2 == 0 { 2 } else { 3 };
        let space = single_good_space(goods);
        let belief = normalize(&random_table(&mut r, goods, 0.3)).unwrap();
        let prices = PriceVector::normalized(random_table(&mut r, goods, 0.3)).unwrap();
        let wealth = r.gen_range(0.5..1.0);
        let grid = GridSpec::uniform(goods, -10.0, 10.0, STEP, StandardizationKind::ZeroLastGood);
        let mut candidates = Vec::new();
        for kind in [UtilityKind::Logarithmic, UtilityKind::ExponentialNegative] {
            let agent = Agent::full_joint("a", wealth, kind, belief.clone()).unwrap();
            let closed = match kind {
                UtilityKind::Logarithmic => buy_log(wealth, &belief, &prices),
                _ => buy_exp(&belief, &prices),
            }
            .map_err(|e| e.to_string())?;
            let closed = standardize(&closed, &prices, StandardizationKind::ZeroLastGood).unwrap();
            candidates.push((agent, kind, closed));
        }
        // The optimum must sit inside the grid for the comparison to mean anything.
        if candidates
            .iter()
            .any(|(_, _, s)| s.holdings().iter().any(|h| h.abs() > 9.9))
        {
            continue;
        }
        for (agent, kind, closed) in candidates {
            let best = best_response_oracle(&agent, &space, &prices, &grid).map_err(|e| e.to_string())?;
            let u = expected_utility(&belief, kind, wealth, &prices, &closed)
                .map_err(|e| e.to_string())?
                .to_f64();
            let grid_u = best.utility.to_f64();
            let gap = grid_u - u;
            ensure(gap <= 1e-12 * u.abs().max(1.0), || {
                format!("{kind:?}: grid point beats closed form by {gap:e}")
            })?;
            worst_gap = worst_gap.max(gap);
            for (a, b) in closed.holdings().iter().zip(best.position.holdings()) {
                let d = (a - b).abs();
                worst_dist = worst_dist.max(d);
                ensure(d <= STEP + 1e-9, || {
                    format!(
                        "{kind:?}: closed form {:?} vs grid argmax {:?}",
                        closed.holdings(),
                        best.position.holdings()
                    )
                })?;
            }
        }
        checked += 1;
    }
    Ok(format!(
        "20 instances x 2 utilities; grid never beats closed form (max gap {worst_gap:.1e}); max distance to argmax {worst_dist:.4}"
    ))
}

fn ac5(out: &mut Collected) -> Outcome {
    let mut r = rng(5);
    for case in 0..30 {
        let n = 2 * r.gen_range(0..=4) + 1;
        let agents: Vec<Agent> = (0..n)
            .map(|_| {
                let q = r.gen_range(0.01..0.99);
                joint_agent(UtilityKind::LinearDebtFree, 1.0, &[1.0 - q, q])
            })
            .collect();
        let report = solve_linear_binary(&agents).map_err(|e| e.to_string())?;
        let mut beliefs: Vec<f64> = agents.iter().map(|a| belief_of(a).prob(1)).collect();
        beliefs.sort_by(f64::total_cmp);
        let median = beliefs[n / 2];
        ensure(report.prices.cost(1) == median, || {
            format!(
                "case {case}: price {} vs sample median {median}",
                report.prices.cost(1)
            )
        })?;
        out.joint.push(report.prices.costs().to_vec());
    }
    for case in 0..30 {
        let n = r.gen_range(1..=8);
        let agents: Vec<Agent> = (0..n)
            .map(|_| {
                let q = r.gen_range(0.01..0.99);
                joint_agent(UtilityKind::LinearDebtFree, r.gen_range(0.1..10.0), &[1.0 - q, q])
            })
            .collect();
        let report = solve_linear_binary(&agents).map_err(|e| e.to_string())?;
        let wealths: Vec<f64> = agents.iter().map(|a| a.wealth).collect();
        let values: Vec<f64> = agents.iter().map(|a| belief_of(a).prob(1)).collect();
        let want = weighted_median_oracle(&wealths, &values).map_err(|e| e.to_string())?;
        ensure(report.prices.cost(1) == want, || {
            format!(
                "weighted case {case}: price {} vs oracle {want}",
                report.prices.cost(1)
            )
        })?;
        out.joint.push(report.prices.costs().to_vec());
    }
    Ok("30 equal-wealth odd populations match the sample median; 30 weighted cases match the cumulative-wealth oracle".into())
}

fn ac6(out: &mut Collected) -> Outcome {
    let mut r = rng(6);
    let params = TatonnementParams::default();
    let mut worst: f64 = 0.0;
    let mut most_iters = 0;
    let mut check =
        |agents: &[Agent], closed: &PriceVector, label: &str, out: &mut Collected| -> Result<(), String> {
            let goods = closed.len();
            let space = single_good_space(goods);
            let t = tatonnement(&space, agents, &PriceVector::uniform(goods), &params)
                .map_err(|e| e.to_string())?;
            ensure(t.converged && t.clearing_residual <= 1e-9, || {
                format!(
                    "{label}: residual {:e} after {} iterations",
                    t.clearing_residual, t.iterations
                )
            })?;
            ensure(t.iterations <= 100_000, || {
                format!("{label}: {} iterations", t.iterations)
            })?;
            for (a, b) in t.prices.costs().iter().zip(closed.costs()) {
                let d = (a - b).abs();
                worst = worst.max(d);
                ensure(d <= 1e-8, || format!("{label}: price off by {d:e}"))?;
            }
            most_iters = most_iters.max(t.iterations);
            out.joint.push(t.prices.costs().to_vec());
            Ok(())
        };
    for i in 0..10 {
        let goods = r.gen_range(2..=4);
        let n = r.gen_range(1..=5);
        for kind in [UtilityKind::Logarithmic, UtilityKind::ExponentialNegative] {
            let agents: Vec<Agent> = (0..n)
                .map(|_| {
                    let t = random_table(&mut r, goods, 0.1);
                    joint_agent(kind, r.gen_range(0.5..5.0), &t)
                })
                .collect();
            let closed = match kind {
                UtilityKind::Logarithmic => solve_log_market(&agents),
                _ => solve_exp_market(&agents),
            }
            .map_err(|e| e.to_string())?
            .prices;
            check(&agents, &closed, &format!("{kind:?} market {i}"), out)?;
        }
    }
    // Mixed populations over two beliefs A and B, each utility group split
    // evenly between them; the all-log and all-exp ends are the limits.
    let a = [0.7, 0.2, 0.1];
    let b = [0.2, 0.3, 0.5];
    for (n_log, n_exp) in [(4usize, 0usize), (0, 4), (6, 0), (0, 6)] {
        let mut agents = Vec::new();
        for (count, kind) in [
            (n_log, UtilityKind::Logarithmic),
            (n_exp, UtilityKind::ExponentialNegative),
        ] {
            for i in 0..count {
                agents.push(joint_agent(kind, 1.0, if i % 2 == 0 { &a } else { &b }));
            }
        }
        let closed = if n_exp == 0 {
            solve_log_market(&agents)
        } else {
            solve_exp_market(&agents)
        }
        .map_err(|e| e.to_string())?
        .prices;
        check(
            &agents,
            &closed,
            &format!("endpoint ({n_log} log, {n_exp} exp)"),
            out,
        )?;
    }
    Ok(format!(
        "20 homogeneous markets and 4 mixture endpoints: max price error {worst:.1e}, at most {most_iters} iterations"
    ))
}

fn ac7(out: &mut Collected) -> Outcome {
    let mut r = rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let j = r.gen_range(2..=4);
        let space = binary_space(j);
        let belief = normalize(&random_table(&mut r, 1 << j, 0.05)).unwrap();
        let agent = Agent::full_joint("a", 1.0, UtilityKind::ExponentialNegative, belief.clone()).unwrap();
        let market = RestrictedMarket::new(space.clone(), vec![agent]).map_err(|e| e.to_string())?;
        let report = run_message_passing(&market, &Schedule::new(j)).map_err(|e| e.to_string())?;
        ensure(report.converged, || "message passing did not converge".into())?;
        let marginals = exact_marginals(&space, &belief).map_err(|e| e.to_string())?;
        for (c, m) in report.prices().iter().zip(&marginals) {
            worst = worst.max((c - m.prob(1)).abs());
        }
        out.restricted.push(report.prices().to_vec());
    }
    ensure(worst <= 1e-8, || format!("max marginal error {worst:e}"))?;

    let mut worst_clear: f64 = 0.0;
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let msgs: Vec<AgentMessage> = (0..n)
            .map(|_| {
                let p1 = r.gen_range(0.05..0.95);
                AgentMessage::from_values([r.gen_range(0.1..10.0), r.gen_range(0.1..10.0)], [1.0 - p1, p1])
                    .unwrap()
            })
            .collect();
        let c = update_price(&msgs).map_err(|e| e.to_string())?;
        let total: f64 = msgs
            .iter()
            .map(|m| local_buying(c, m.a(), m.marginal).unwrap())
            .sum();
        worst_clear = worst_clear.max(total.abs());
    }
    ensure(worst_clear <= 1e-12, || {
        format!("clearing identity off by {worst_clear:e}")
    })?;

    let mut worst_unit: f64 = 0.0;
    for _ in 0..20 {
        let j = r.gen_range(2..=4);
        let space = binary_space(j);
        let agent = joint_agent(
            UtilityKind::ExponentialNegative,
            1.0,
            &random_table(&mut r, 1 << j, 0.05),
        );
        let prices: Vec<f64> = (0..j).map(|_| r.gen_range(0.05..0.95)).collect();
        for k in 0..j {
            let m = compute_message(&space, &agent, k, &vec![0.0; j], &prices).map_err(|e| e.to_string())?;
            for a in m.a() {
                worst_unit = worst_unit.max((a - 1.0).abs());
            }
        }
    }
    ensure(worst_unit <= 1e-14, || {
        format!("zero-position message off by {worst_unit:e}")
    })?;
    Ok(format!(
        "20 single-agent markets, max marginal error {worst:.1e}; clearing identity {worst_clear:.1e}; |A-1| {worst_unit:.1e}"
    ))
}

fn ac8(collected: &Collected, bundled: &[RunReport]) -> Outcome {
    let mut count = 0;
    let mut worst: f64 = 0.0;
    let mut check = |prices: &[f64], what: &str| -> Result<(), String> {
        let c = check_no_arbitrage(prices);
        worst = worst.max(c.deviation);
        count += 1;
        ensure(c.passed, || {
            format!("{what}: {prices:?} deviates by {:e}", c.deviation)
        })
    };
    for p in &collected.joint {
        check(p, "joint solver")?;
    }
    // A restricted bet at c together with its complement at 1 - c.
    for p in &collected.restricted {
        for &c in p {
            check(&[1.0 - c, c], "restricted good")?;
        }
    }
    for report in bundled {
        let prices = report.price_values();
        if report.scenario.market == mlmarket::scenario::MarketKind::Restricted {
            for &c in &prices {
                check(&[1.0 - c, c], "bundled restricted good")?;
            }
        } else {
            check(&prices, "bundled scenario")?;
        }
    }
    Ok(format!("{count} price vectors, max sum deviation {worst:.1e}"))
}

fn ac9() -> Outcome {
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let goods = r.gen_range(2..=5);
        let belief = normalize(&random_table(&mut r, goods, 0.05)).unwrap();
        let prices = PriceVector::normalized(random_table(&mut r, goods, 0.05)).unwrap();
        let pos = Position::new((0..goods).map(|_| r.gen_range(-2.0..2.0)).collect());
        let alpha = r.gen_range(-5.0..5.0);
        for kind in [
            UtilityKind::ExponentialNegative,
            UtilityKind::Logarithmic,
            UtilityKind::LinearDebtFree,
        ] {
            // Enough wealth that log and linear stay on their domain.
            let wealth = match kind {
                UtilityKind::ExponentialNegative => r.gen_range(-1.0..1.0),
                _ => r.gen_range(10.0..20.0),
            };
            let u0 = expected_utility(&belief, kind, wealth, &prices, &pos).map_err(|e| e.to_string())?;
            let u1 = expected_utility(&belief, kind, wealth, &prices, &pos.shifted(alpha))
                .map_err(|e| e.to_string())?;
            ensure(u0.finite().is_some(), || format!("{kind:?}: off domain"))?;
            let d = (u0.to_f64() - u1.to_f64()).abs();
            worst = worst.max(d);
            ensure(d <= 1e-12, || format!("{kind:?}: shift changed utility by {d:e}"))?;
        }
    }
    Ok(format!("200 positions x 3 utilities, max change {worst:.1e}"))
}

fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn bundled_reports() -> Result<Vec<(PathBuf, RunReport)>, String> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(scenario_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let loaded = load_scenario(&p).map_err(|e| e.to_string())?;
            let (report, _) = run(&loaded, Overrides::default()).map_err(|e| e.to_string())?;
            Ok((p, report))
        })
        .collect()
}

fn ac10(bundled: &[(PathBuf, RunReport)]) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (path, report) in bundled {
        let name = path.file_name().unwrap();
        let saved = dir.path().join(name);
        std::fs::write(&saved, report.to_json()).map_err(|e| e.to_string())?;
        let Input::Report(previous, loaded) = read_input(&saved).map_err(|e| e.to_string())? else {
            return Err(format!(
                "{}: saved report read back as a scenario",
                name.to_string_lossy()
            ));
        };
        let (again, same) = rerun(&previous, &loaded, Overrides::default()).map_err(|e| e.to_string())?;
        ensure(same && again.digest == report.digest, || {
            format!("{}: re-run prices differ", name.to_string_lossy())
        })?;
    }
    Ok(format!(
        "{} bundled scenarios reproduced bit for bit",
        bundled.len()
    ))
}

fn report(id: &str, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    match result {
        Ok(detail) => {
            println!("{id} PASS {title}: {detail}");
            true
        }
        Err(detail) => {
            println!("{id} FAIL {title}: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut collected = Collected::default();
    let bundled = bundled_reports();
    let mut ok = true;
    ok &= report("AC1", "mixture recovery", || ac1(&mut collected));
    ok &= report("AC2", "product recovery", || ac2(&mut collected));
    ok &= report("AC3", "factor-graph equivalence", || ac3(&mut collected));
    ok &= report("AC4", "buying-function optimality", ac4);
    ok &= report("AC5", "weighted median", || ac5(&mut collected));
    ok &= report("AC6", "tatonnement cross-check", || ac6(&mut collected));
    ok &= report("AC7", "message-passing marginal recovery", || ac7(&mut collected));
    ok &= report("AC8", "no-arbitrage", || {
        let reports: Vec<RunReport> = bundled.clone()?.into_iter().map(|(_, r)| r).collect();
        ac8(&collected, &reports)
    });
    ok &= report("AC9", "standardization neutrality", ac9);
    ok &= report("AC10", "CLI round-trip", || ac10(&bundled.clone()?));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
