//! Brute-force enumeration of every semi-active schedule of a small
//! instance. Test oracle for the exact solver and the backbone computation.

use crate::core::instance::Instance;
use crate::core::schedule::{build_schedule, MachineOrders, OperationSequence};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Number of job-order-respecting operation sequences, (NM)!/(M!)^N.
pub fn sequence_count(n_jobs: usize, n_machines: usize) -> Option<u128> {
    // multinomial as a product of binomials: choose each job's M slots in turn
    let mut result: u128 = 1;
    let mut slots = n_jobs * n_machines;
    for _ in 0..n_jobs {
        let mut c: u128 = 1;
        for i in 0..n_machines {
            c = c.checked_mul((slots - i) as u128)?;
            c /= (i + 1) as u128;
        }
        slots -= n_machines;
        result = result.checked_mul(c)?;
    }
    Some(result)
}

/// All distinct feasible machine-order orientations with their makespans,
/// obtained by enumerating every job-order-respecting sequence.
pub fn enumerate_all(instance: &Instance, cap: u128) -> Result<Vec<(MachineOrders, u64)>> {
    let count = sequence_count(instance.n_jobs(), instance.n_machines())
        .ok_or(Error::SizeExceeded { count: u128::MAX, cap })?;
    if count > cap {
        return Err(Error::SizeExceeded { count, cap });
    }
    let mut seen: BTreeMap<MachineOrders, u64> = BTreeMap::new();
    let mut remaining = vec![instance.n_machines(); instance.n_jobs()];
    let mut job_list = Vec::with_capacity(instance.n_ops());
    enumerate_rec(instance, &mut remaining, &mut job_list, &mut seen);
    Ok(seen.into_iter().collect())
}

fn enumerate_rec(
    instance: &Instance,
    remaining: &mut [usize],
    job_list: &mut Vec<usize>,
    seen: &mut BTreeMap<MachineOrders, u64>,
) {
    if job_list.len() == instance.n_ops() {
        let seq = OperationSequence::from_job_list(instance, job_list)
            .expect("constructed list respects job order");
        let schedule = build_schedule(instance, &seq);
        let makespan = schedule.makespan();
        seen.entry(schedule.into_machine_orders()).or_insert(makespan);
        return;
    }
    for k in 0..remaining.len() {
        if remaining[k] > 0 {
            remaining[k] -= 1;
            job_list.push(k);
            enumerate_rec(instance, remaining, job_list, seen);
            job_list.pop();
            remaining[k] += 1;
        }
    }
}

/// Minimum makespan over all semi-active schedules.
pub fn enumerate_optimum(instance: &Instance, cap: u128) -> Result<u64> {
    Ok(enumerate_all(instance, cap)?
        .iter()
        .map(|&(_, ms)| ms)
        .min()
        .expect("at least one feasible schedule exists"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::fixtures::i22;

    #[test]
    fn sequence_counts() {
        assert_eq!(sequence_count(2, 2), Some(6));
        assert_eq!(sequence_count(1, 7), Some(1));
        assert_eq!(sequence_count(2, 1), Some(2));
        assert_eq!(sequence_count(3, 3), Some(1680));
    }

    #[test]
    fn i22_has_three_feasible_orientations() {
        let inst = i22();
        let all = enumerate_all(&inst, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 3);
        let mut makespans: Vec<u64> = all.iter().map(|&(_, ms)| ms).collect();
        makespans.sort();
        assert_eq!(makespans, vec![7, 11, 11]);
    }

    #[test]
    fn single_job_single_schedule() {
        let inst = Instance::new(vec![vec![1, 0, 2]], vec![vec![2, 3, 4]]).unwrap();
        let all = enumerate_all(&inst, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].1, 9);
    }

    #[test]
    fn two_jobs_one_machine() {
        let inst = Instance::new(vec![vec![0], vec![0]], vec![vec![3], vec![4]]).unwrap();
        let all = enumerate_all(&inst, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|&(_, ms)| ms == 7));
    }

    #[test]
    fn cap_enforced() {
        let inst = i22();
        assert!(matches!(
            enumerate_all(&inst, 2),
            Err(Error::SizeExceeded { count: 6, cap: 2 })
        ));
    }
}
