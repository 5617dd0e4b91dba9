//! Descent operators: best-in-ball descent driven by the radius-limited
//! exact solver, single-flip next-descent, and the neighborhood-exactness
//! measurement built on ball descent.

use crate::core::{
    build_schedule, makespan_longest_path, schedule_from_orders, Instance, Schedule,
};
use crate::error::{Error, Result};
use crate::exact::{solve_radius_limited, BnbConfig};
use crate::generate::random_sequence;

/// Repeatedly replaces the schedule with the best schedule within
/// disjunctive graph distance `r` until no strictly better one exists.
/// The result is N_r-locally optimal.
pub fn ball_descent(
    instance: &Instance,
    start: &Schedule,
    r: u64,
    config: &BnbConfig,
) -> Result<Schedule> {
    let mut current = start.clone();
    loop {
        let result = solve_radius_limited(instance, current.machine_orders(), r, config)?;
        let best = result.optimum().ok_or(Error::LimitExceeded)?;
        if best >= current.makespan() {
            return Ok(current);
        }
        let witness = result.witness().expect("proven solve has a witness");
        current = schedule_from_orders(instance, witness)?;
    }
}

/// Next-descent over single-edge flips: scan adjacent transpositions of the
/// machine orders in a fixed order (machine ascending, then position
/// ascending), skip flips that create a cycle, move to the first strict
/// improvement, and repeat until none exists. Returns an N₁-local optimum.
pub fn next_descent_n1(instance: &Instance, start: &Schedule) -> Schedule {
    let mut current = start.clone();
    'outer: loop {
        let orders = current.machine_orders();
        for machine in 0..instance.n_machines() {
            for pos in 0..instance.n_jobs().saturating_sub(1) {
                let flipped = orders.swap_adjacent(machine, pos);
                match makespan_longest_path(instance, &flipped) {
                    Ok(ms) if ms < current.makespan() => {
                        current = schedule_from_orders(instance, &flipped)
                            .expect("acyclic orders build a schedule");
                        continue 'outer;
                    }
                    _ => {}
                }
            }
        }
        return current;
    }
}

/// For each radius r, whether descent under N_r from one random schedule
/// reached a global optimum. Within a record, once true it stays true.
#[derive(Debug, Clone)]
pub struct ExactnessRecord {
    /// `pairs[i]` is (r = i+1, reached optimum), up to r = M·C(N,2).
    pub pairs: Vec<(u64, bool)>,
}

/// Draws a random starting schedule and, for r = 1, 2, …: runs ball descent
/// with radius r from the current schedule and records whether the result
/// is optimal; once it is, every larger radius is recorded as reaching the
/// optimum too.
pub fn exactness_run(
    instance: &Instance,
    optimum: u64,
    seed: u64,
    config: &BnbConfig,
) -> Result<ExactnessRecord> {
    let max_radius = instance.disjunctive_edge_count() as u64;
    let mut current = build_schedule(instance, &random_sequence(instance, seed));
    let mut pairs = Vec::with_capacity(max_radius as usize);
    let mut r = 1u64;
    while r <= max_radius {
        current = ball_descent(instance, &current, r, config)?;
        let opt = current.makespan() <= optimum;
        pairs.push((r, opt));
        r += 1;
        if opt {
            break;
        }
    }
    for rest in r..=max_radius {
        pairs.push((rest, true));
    }
    Ok(ExactnessRecord { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::fixtures::{i22, i22_orders};
    use crate::exact::{solve_optimal, solve_radius_limited};
    use crate::generate::{random_instance, GenConfig};

    fn schedule_of(instance: &Instance, orders: &crate::core::MachineOrders) -> Schedule {
        schedule_from_orders(instance, orders).unwrap()
    }

    #[test]
    fn ball_descent_from_optimum_is_identity() {
        let inst = i22();
        let opt = schedule_of(&inst, &i22_orders(&inst, &[&[0, 1], &[1, 0]]));
        let out = ball_descent(&inst, &opt, 1, &BnbConfig::default()).unwrap();
        assert_eq!(out.machine_orders(), opt.machine_orders());
    }

    #[test]
    fn ball_descent_i22_b_radius_one_reaches_optimum() {
        let inst = i22();
        let b = schedule_of(&inst, &i22_orders(&inst, &[&[0, 1], &[0, 1]]));
        assert_eq!(b.makespan(), 11);
        let out = ball_descent(&inst, &b, 1, &BnbConfig::default()).unwrap();
        assert_eq!(out.makespan(), 7);
    }

    #[test]
    fn full_radius_ball_descent_is_global_optimum() {
        for seed in 0..4 {
            let inst = random_instance(&GenConfig::new(3, 3, 40 + seed)).unwrap();
            let opt = solve_optimal(&inst, &BnbConfig::default()).optimum().unwrap();
            let start = build_schedule(&inst, &random_sequence(&inst, seed));
            let r = inst.disjunctive_edge_count() as u64;
            let out = ball_descent(&inst, &start, r, &BnbConfig::default()).unwrap();
            assert_eq!(out.makespan(), opt);
        }
    }

    #[test]
    fn ball_descent_result_is_fixed_point() {
        for seed in 0..4 {
            let inst = random_instance(&GenConfig::new(4, 3, 60 + seed)).unwrap();
            let start = build_schedule(&inst, &random_sequence(&inst, seed));
            let out = ball_descent(&inst, &start, 2, &BnbConfig::default()).unwrap();
            let recheck =
                solve_radius_limited(&inst, out.machine_orders(), 2, &BnbConfig::default())
                    .unwrap();
            assert_eq!(recheck.optimum().unwrap(), out.makespan());
        }
    }

    #[test]
    fn next_descent_from_optimum_is_identity() {
        let inst = i22();
        let opt = schedule_of(&inst, &i22_orders(&inst, &[&[0, 1], &[1, 0]]));
        let out = next_descent_n1(&inst, &opt);
        assert_eq!(out.machine_orders(), opt.machine_orders());
    }

    #[test]
    fn next_descent_i22_b_reaches_optimum() {
        let inst = i22();
        let b = schedule_of(&inst, &i22_orders(&inst, &[&[0, 1], &[0, 1]]));
        let out = next_descent_n1(&inst, &b);
        assert_eq!(out.makespan(), 7);
    }

    #[test]
    fn next_descent_never_worsens() {
        for seed in 0..10 {
            let inst = random_instance(&GenConfig::new(5, 4, seed)).unwrap();
            let start = build_schedule(&inst, &random_sequence(&inst, seed));
            let out = next_descent_n1(&inst, &start);
            assert!(out.makespan() <= start.makespan());
        }
    }

    #[test]
    fn exactness_i22_true_at_radius_one() {
        let inst = i22();
        for seed in 0..6 {
            let record = exactness_run(&inst, 7, seed, &BnbConfig::default()).unwrap();
            assert_eq!(record.pairs.len(), 2);
            assert_eq!(record.pairs[0], (1, true));
            assert_eq!(record.pairs[1], (2, true));
        }
    }

    #[test]
    fn exactness_monotone_and_ends_true() {
        for seed in 0..4 {
            let inst = random_instance(&GenConfig::new(3, 3, 80 + seed)).unwrap();
            let opt = solve_optimal(&inst, &BnbConfig::default()).optimum().unwrap();
            let record = exactness_run(&inst, opt, seed, &BnbConfig::default()).unwrap();
            let e = inst.disjunctive_edge_count() as u64;
            assert_eq!(record.pairs.len(), e as usize);
            assert_eq!(record.pairs.last().unwrap(), &(e, true));
            let mut seen_true = false;
            for &(_, opt_here) in &record.pairs {
                assert!(!seen_true || opt_here);
                seen_true |= opt_here;
            }
        }
    }
}
