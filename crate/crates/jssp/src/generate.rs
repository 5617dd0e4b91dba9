//! Random instance and schedule distributions plus priority rules, all
//! deterministic under explicit 64-bit seeds.
//!
//! Randomness comes from ChaCha8 (a counter-based stream cipher RNG) seeded
//! per call; per-instance seeds are derived with [`derive_seed`] so parallel
//! and serial experiment runs agree bit for bit.

use crate::core::{build_schedule, Instance, OperationId, OperationSequence, Schedule};
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Configuration of the random instance distribution: uniform machine
/// permutations per job, i.i.d. uniform integer durations in
/// `[duration_low, duration_high]`.
#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub n_jobs: usize,
    pub n_machines: usize,
    pub duration_low: u64,
    pub duration_high: u64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(n_jobs: usize, n_machines: usize, seed: u64) -> Self {
        GenConfig {
            n_jobs,
            n_machines,
            duration_low: 1,
            duration_high: 100,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_jobs == 0 || self.n_machines == 0 {
            return Err(Error::Validation("N and M must be at least 1".into()));
        }
        if self.duration_low == 0 || self.duration_low > self.duration_high {
            return Err(Error::Validation(format!(
                "duration range [{}, {}] invalid",
                self.duration_low, self.duration_high
            )));
        }
        Ok(())
    }
}

/// splitmix64 finalizer; mixes a master seed with a stream index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9e3779b97f4a7c15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draw a random instance: each job's machine row an independent uniform
/// permutation, durations i.i.d. uniform integers.
pub fn random_instance(config: &GenConfig) -> Result<Instance> {
    config.validate()?;
    let mut rng = rng_from(config.seed);
    let mut machine_of = Vec::with_capacity(config.n_jobs);
    let mut duration = Vec::with_capacity(config.n_jobs);
    for _ in 0..config.n_jobs {
        let mut perm: Vec<usize> = (0..config.n_machines).collect();
        perm.shuffle(&mut rng);
        machine_of.push(perm);
        duration.push(
            (0..config.n_machines)
                .map(|_| rng.random_range(config.duration_low..=config.duration_high))
                .collect(),
        );
    }
    Instance::new(machine_of, duration)
}

/// Uniform draw over the (NM)!/(M!)^N job-order-respecting sequences:
/// shuffle a list of M copies of each job index.
pub fn random_sequence(instance: &Instance, seed: u64) -> OperationSequence {
    let mut rng = rng_from(seed);
    let mut jobs: Vec<usize> = (0..instance.n_jobs())
        .flat_map(|k| std::iter::repeat(k).take(instance.n_machines()))
        .collect();
    jobs.shuffle(&mut rng);
    OperationSequence::from_job_list(instance, &jobs).expect("shuffled job list is valid")
}

/// The paper's priority rules. Lower priority schedules earlier.
#[derive(Debug, Clone)]
pub enum PriorityRule {
    /// Schedule the longest job first, then the rest in fixed order.
    Pi0,
    /// Interleave: first operation of every job, then second, and so on.
    PiInf,
    /// PiInf with the jobs relabelled by a permutation (0-based).
    Permuted(Vec<usize>),
    /// Uniform random sequence drawn from the given seed.
    Random(u64),
}

/// Priority of one operation. Formula indices are 1-based to match the
/// usual statements of pi_0 and pi_inf; ties are broken by the caller using
/// (job, step) lexicographic order.
pub fn priority_of(rule: &PriorityRule, instance: &Instance, op: OperationId) -> f64 {
    let n = instance.n_jobs() as f64;
    let m = instance.n_machines() as f64;
    let i = (op.step + 1) as f64;
    let k = (op.job + 1) as f64;
    match rule {
        PriorityRule::Pi0 => {
            let k_star = longest_job(instance);
            if op.job == k_star {
                i
            } else {
                m * k + i
            }
        }
        PriorityRule::PiInf => i * n + k,
        PriorityRule::Permuted(phi) => i * n + (phi[op.job] + 1) as f64,
        PriorityRule::Random(seed) => {
            // index of the step-th occurrence of the job in the shuffled list
            let seq = random_sequence(instance, *seed);
            seq.order()
                .iter()
                .position(|&o| o == op)
                .expect("sequence covers every operation") as f64
        }
    }
}

/// Index of the longest job; equal totals break toward the lowest index.
fn longest_job(instance: &Instance) -> usize {
    (0..instance.n_jobs())
        .max_by_key(|&k| (instance.job_duration(k), std::cmp::Reverse(k)))
        .expect("at least one job")
}

/// Run the greedy Ready-set loop: repeatedly start, as early as possible,
/// the minimum-priority operation whose job predecessor is scheduled.
pub fn schedule_by_rule(instance: &Instance, rule: &PriorityRule) -> Schedule {
    let priorities: Vec<Vec<f64>> = (0..instance.n_jobs())
        .map(|k| {
            (0..instance.n_machines())
                .map(|i| priority_of(rule, instance, OperationId::new(k, i)))
                .collect()
        })
        .collect();

    let n = instance.n_jobs();
    let mut next_step = vec![0usize; n];
    let mut jobs_order = Vec::with_capacity(instance.n_ops());
    for _ in 0..instance.n_ops() {
        let mut best: Option<(f64, usize, usize)> = None;
        for k in 0..n {
            let i = next_step[k];
            if i >= instance.n_machines() {
                continue;
            }
            let cand = (priorities[k][i], k, i);
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
        let (_, k, _) = best.expect("some job unfinished");
        next_step[k] += 1;
        jobs_order.push(k);
    }
    let seq = OperationSequence::from_job_list(instance, &jobs_order)
        .expect("ready loop respects job order");
    build_schedule(instance, &seq)
}
