//! Lower bounds: the static job/workload bound and the per-node one-machine
//! relaxation with heads and tails (preemptive Jackson schedule).

use crate::core::Instance;
use std::collections::BinaryHeap;

/// max(max job duration, max machine workload); valid for every schedule.
pub fn lower_bound(instance: &Instance) -> u64 {
    let job = (0..instance.n_jobs())
        .map(|k| instance.job_duration(k))
        .max()
        .unwrap_or(0);
    let work = (0..instance.n_machines())
        .map(|m| instance.machine_workload(m))
        .max()
        .unwrap_or(0);
    job.max(work)
}

/// Optimal value of the preemptive one-machine problem with release times
/// (heads), processing times, and delivery times (tails): schedule the
/// released operation with the largest tail, preempting on release.
///
/// Admissible for the job shop: every feasible schedule must run these
/// operations on one machine after their heads and deliver their tails.
pub fn preemptive_jackson(ops: &[(u64, u64, u64)]) -> u64 {
    let mut by_release: Vec<(u64, u64, u64)> = ops.to_vec();
    by_release.sort_by_key(|&(r, _, _)| r);
    // heap of (tail, remaining)
    let mut ready: BinaryHeap<(u64, u64)> = BinaryHeap::new();
    let mut t = 0u64;
    let mut next = 0usize;
    let mut bound = 0u64;
    loop {
        while next < by_release.len() && by_release[next].0 <= t {
            let (_, p, q) = by_release[next];
            ready.push((q, p));
            next += 1;
        }
        match ready.pop() {
            None => {
                if next >= by_release.len() {
                    break;
                }
                t = by_release[next].0;
            }
            Some((q, rem)) => {
                let horizon = if next < by_release.len() {
                    by_release[next].0
                } else {
                    u64::MAX
                };
                let run = rem.min(horizon.saturating_sub(t));
                t += run;
                if run == rem {
                    bound = bound.max(t + q);
                } else {
                    ready.push((q, rem - run));
                }
            }
        }
    }
    bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::fixtures::i22;

    #[test]
    fn i22_lower_bound() {
        assert_eq!(lower_bound(&i22()), 7);
    }

    #[test]
    fn single_job_bound_is_job_length() {
        let inst = Instance::new(vec![vec![1, 0]], vec![vec![4, 9]]).unwrap();
        assert_eq!(lower_bound(&inst), 13);
    }

    #[test]
    fn single_machine_bound_is_workload() {
        let inst = Instance::new(
            vec![vec![0], vec![0], vec![0]],
            vec![vec![5], vec![5], vec![5]],
        )
        .unwrap();
        assert_eq!(lower_bound(&inst), 15);
    }

    #[test]
    fn jackson_no_heads_tails_is_workload() {
        assert_eq!(preemptive_jackson(&[(0, 3, 0), (0, 4, 0), (0, 5, 0)]), 12);
    }

    #[test]
    fn jackson_respects_heads_and_tails() {
        // one op released late with a long tail dominates
        assert_eq!(preemptive_jackson(&[(0, 2, 0), (10, 1, 7)]), 18);
        // preemption: run the big-tail op as soon as it is released
        assert_eq!(preemptive_jackson(&[(0, 10, 0), (1, 2, 8)]), 12.max(11));
    }

    #[test]
    fn jackson_empty() {
        assert_eq!(preemptive_jackson(&[]), 0);
    }
}
