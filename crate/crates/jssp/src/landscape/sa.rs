//! Simulated annealing over machine orders with critical-arc-reversal moves,
//! used to sample the first schedule within factor ρ of the optimum.

use super::{rho_threshold, RhoGrid};
use crate::core::{
    build_schedule, critical_arcs, schedule_from_orders, MachineOrders, Schedule,
};
use crate::core::Instance;
use crate::error::{Error, Result};
use crate::generate::{derive_seed, random_sequence};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Annealing schedule parameters. The initial temperature is calibrated per
/// run so roughly `initial_acceptance` of uphill moves would be accepted;
/// each plateau holds the temperature for `plateau_length` proposed moves
/// (default 16·M·C(N,2)); after `frozen_threshold` consecutive plateaus
/// without an accepted move the run restarts from a fresh random schedule.
#[derive(Debug, Clone)]
pub struct SaConfig {
    pub initial_acceptance: f64,
    pub cooling_factor: f64,
    pub plateau_length: Option<u64>,
    pub frozen_threshold: u32,
    /// Cap on total proposed moves across restarts.
    pub iteration_cap: u64,
    pub seed: u64,
}

impl SaConfig {
    pub fn new(seed: u64) -> Self {
        SaConfig {
            initial_acceptance: 0.95,
            cooling_factor: 0.95,
            plateau_length: None,
            frozen_threshold: 5,
            iteration_cap: 20_000_000,
            seed,
        }
    }

    fn plateau(&self, instance: &Instance) -> u64 {
        self.plateau_length
            .unwrap_or(16 * instance.disjunctive_edge_count() as u64)
            .max(1)
    }
}

fn random_start(instance: &Instance, rng: &mut ChaCha8Rng) -> Schedule {
    let seq = random_sequence(instance, rng.random());
    build_schedule(instance, &seq)
}

/// Reverse one uniformly chosen critical disjunctive arc. Returns `None`
/// when the critical path has no disjunctive arc (the schedule then meets
/// the single-job lower bound).
fn propose(instance: &Instance, current: &Schedule, rng: &mut ChaCha8Rng) -> Option<Schedule> {
    let arcs = critical_arcs(instance, current);
    if arcs.is_empty() {
        return None;
    }
    let arc = arcs[rng.random_range(0..arcs.len())];
    let orders = current.machine_orders();
    let pos = orders.order_on(arc.machine)
        .iter()
        .position(|&j| j == arc.first)
        .expect("critical arc endpoints are on their machine");
    let swapped = orders.swap_adjacent(arc.machine, pos);
    // reversing a critical arc never creates a cycle
    Some(schedule_from_orders(instance, &swapped).expect("critical arc reversal is feasible"))
}

/// Temperature at which the mean uphill move is accepted with probability
/// `target`, estimated from sampled neighbors of the starting schedule.
fn calibrate_temperature(
    instance: &Instance,
    start: &Schedule,
    target: f64,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let mut uphill = Vec::new();
    for _ in 0..64 {
        if let Some(next) = propose(instance, start, rng) {
            if next.makespan() > start.makespan() {
                uphill.push((next.makespan() - start.makespan()) as f64);
            }
        }
    }
    if uphill.is_empty() {
        return 1.0;
    }
    let mean = uphill.iter().sum::<f64>() / uphill.len() as f64;
    mean / -target.ln()
}

/// Runs SA until a schedule with makespan ≤ `target` is visited, restarting
/// when frozen, and returns for every ρ in the grid the machine orders of
/// the first visited schedule with makespan ≤ ρ·target. Visited states are
/// the initial schedule of each restart plus every accepted move.
pub fn sa_run(
    instance: &Instance,
    target: u64,
    grid: &RhoGrid,
    config: &SaConfig,
) -> Result<Vec<MachineOrders>> {
    let cutoffs: Vec<u64> = grid
        .values()
        .iter()
        .map(|&rho| rho_threshold(rho, target))
        .collect();
    let mut hits: Vec<Option<MachineOrders>> = vec![None; grid.len()];
    let mut done = false;
    let visit = |schedule: &Schedule, hits: &mut Vec<Option<MachineOrders>>| {
        for (slot, &cutoff) in hits.iter_mut().zip(&cutoffs) {
            if slot.is_none() && schedule.makespan() <= cutoff {
                *slot = Some(schedule.machine_orders().clone());
            }
        }
        schedule.makespan() <= target
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let plateau = config.plateau(instance);
    let mut iterations = 0u64;

    'restarts: while !done {
        let mut current = random_start(instance, &mut rng);
        done = visit(&current, &mut hits);
        if done {
            break;
        }
        let mut temperature =
            calibrate_temperature(instance, &current, config.initial_acceptance, &mut rng);
        let mut frozen = 0u32;
        while frozen < config.frozen_threshold {
            let mut accepted_any = false;
            for _ in 0..plateau {
                iterations += 1;
                if iterations > config.iteration_cap {
                    return Err(Error::SaTimeout);
                }
                let Some(next) = propose(instance, &current, &mut rng) else {
                    // no disjunctive critical arc: current meets the job
                    // lower bound, so it is optimal and was just visited
                    continue 'restarts;
                };
                let delta = next.makespan() as i64 - current.makespan() as i64;
                let accept = delta <= 0
                    || rng.random::<f64>() < (-(delta as f64) / temperature).exp();
                if accept {
                    current = next;
                    accepted_any = true;
                    done = visit(&current, &mut hits);
                    if done {
                        break 'restarts;
                    }
                }
            }
            temperature *= config.cooling_factor;
            frozen = if accepted_any { 0 } else { frozen + 1 };
        }
    }

    Ok(hits
        .into_iter()
        .map(|h| h.expect("a schedule at the target fills every slot"))
        .collect())
}

/// `k` independent SA runs; for each ρ, all C(k,2) pairwise disjunctive
/// graph distances between the runs' first-hit schedules.
pub fn sample_rho_distances(
    instance: &Instance,
    k: usize,
    target: u64,
    grid: &RhoGrid,
    config: &SaConfig,
) -> Result<Vec<Vec<u64>>> {
    if k < 2 {
        return Err(Error::Validation("need at least 2 SA runs".into()));
    }
    let mut first_hits = Vec::with_capacity(k);
    for i in 0..k {
        let run_config = SaConfig {
            seed: derive_seed(config.seed, i as u64),
            ..config.clone()
        };
        first_hits.push(sa_run(instance, target, grid, &run_config)?);
    }
    let mut per_rho = vec![Vec::with_capacity(k * (k - 1) / 2); grid.len()];
    for i in 0..k {
        for j in i + 1..k {
            for (r, distances) in per_rho.iter_mut().enumerate() {
                distances.push(crate::core::orders_distance(&first_hits[i][r], &first_hits[j][r])?);
            }
        }
    }
    Ok(per_rho)
}
