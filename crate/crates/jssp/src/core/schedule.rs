//! Schedules and the two encodings used throughout: an operation sequence
//! (total order respecting job order) and per-machine job orders.

use crate::core::instance::{Instance, OperationId};
use crate::error::{Error, Result};

/// A total order on all N*M operations in which each job's operations appear
/// in job order. The canonical input encoding for building semi-active
/// schedules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationSequence {
    order: Vec<OperationId>,
}

impl OperationSequence {
    pub fn new(instance: &Instance, order: Vec<OperationId>) -> Result<Self> {
        if order.len() != instance.n_ops() {
            return Err(Error::Validation(format!(
                "sequence has {} operations, instance has {}",
                order.len(),
                instance.n_ops()
            )));
        }
        let mut next_step = vec![0usize; instance.n_jobs()];
        for op in &order {
            if !instance.contains(*op) {
                return Err(Error::Validation(format!(
                    "operation ({}, {}) out of bounds",
                    op.job, op.step
                )));
            }
            if op.step != next_step[op.job] {
                return Err(Error::Validation(format!(
                    "job {} appears at step {} but step {} is next",
                    op.job, op.step, next_step[op.job]
                )));
            }
            next_step[op.job] += 1;
        }
        Ok(OperationSequence { order })
    }

    /// Build from a job list: the i-th occurrence of job k stands for
    /// operation (k, i).
    pub fn from_job_list(instance: &Instance, jobs: &[usize]) -> Result<Self> {
        let mut next_step = vec![0usize; instance.n_jobs()];
        let mut order = Vec::with_capacity(jobs.len());
        for &k in jobs {
            if k >= instance.n_jobs() {
                return Err(Error::Validation(format!("job index {} out of bounds", k)));
            }
            order.push(OperationId::new(k, next_step[k]));
            next_step[k] += 1;
        }
        OperationSequence::new(instance, order)
    }

    pub fn order(&self) -> &[OperationId] {
        &self.order
    }
}

/// Per-machine job processing orders: the compact encoding of a disjunctive
/// graph orientation. Two schedules are the same point of the search space
/// iff their machine orders are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MachineOrders {
    order_on: Vec<Vec<usize>>,
}

impl MachineOrders {
    pub fn new(instance: &Instance, order_on: Vec<Vec<usize>>) -> Result<Self> {
        if order_on.len() != instance.n_machines() {
            return Err(Error::Validation(format!(
                "{} machine orders for {} machines",
                order_on.len(),
                instance.n_machines()
            )));
        }
        for (m, order) in order_on.iter().enumerate() {
            let mut seen = vec![false; instance.n_jobs()];
            if order.len() != instance.n_jobs() {
                return Err(Error::Validation(format!(
                    "machine {} order lists {} jobs, expected {}",
                    m,
                    order.len(),
                    instance.n_jobs()
                )));
            }
            for &k in order {
                if k >= instance.n_jobs() || seen[k] {
                    return Err(Error::Validation(format!(
                        "machine {} order is not a permutation of jobs",
                        m
                    )));
                }
                seen[k] = true;
            }
        }
        Ok(MachineOrders { order_on })
    }

    pub fn order_on(&self, machine: usize) -> &[usize] {
        &self.order_on[machine]
    }

    pub fn n_machines(&self) -> usize {
        self.order_on.len()
    }

    pub fn n_jobs(&self) -> usize {
        self.order_on.first().map_or(0, |o| o.len())
    }

    /// Swap the jobs at positions `pos` and `pos + 1` on `machine`.
    pub fn swap_adjacent(&self, machine: usize, pos: usize) -> MachineOrders {
        let mut next = self.clone();
        next.order_on[machine].swap(pos, pos + 1);
        next
    }

    /// position_of[m][k] = position of job k on machine m.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        self.order_on
            .iter()
            .map(|order| {
                let mut pos = vec![0usize; order.len()];
                for (p, &k) in order.iter().enumerate() {
                    pos[k] = p;
                }
                pos
            })
            .collect()
    }
}

/// A semi-active schedule: start times plus the machine orders they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    start: Vec<Vec<u64>>,
    makespan: u64,
    machine_orders: MachineOrders,
}

impl Schedule {
    pub(crate) fn from_parts(
        start: Vec<Vec<u64>>,
        makespan: u64,
        machine_orders: MachineOrders,
    ) -> Self {
        Schedule {
            start,
            makespan,
            machine_orders,
        }
    }

    pub fn start(&self, op: OperationId) -> u64 {
        self.start[op.job][op.step]
    }

    pub fn completion(&self, instance: &Instance, op: OperationId) -> u64 {
        self.start(op) + instance.duration(op)
    }

    pub fn makespan(&self) -> u64 {
        self.makespan
    }

    pub fn machine_orders(&self) -> &MachineOrders {
        &self.machine_orders
    }

    pub fn into_machine_orders(self) -> MachineOrders {
        self.machine_orders
    }
}

/// Build the semi-active schedule of a sequence: assign, in sequence order,
/// each operation the earliest start after its job and machine predecessors.
pub fn build_schedule(instance: &Instance, seq: &OperationSequence) -> Schedule {
    let n = instance.n_jobs();
    let m = instance.n_machines();
    let mut start = vec![vec![0u64; m]; n];
    let mut job_done = vec![0u64; n];
    let mut machine_done = vec![0u64; m];
    let mut order_on = vec![Vec::with_capacity(n); m];
    let mut makespan = 0u64;
    for &op in seq.order() {
        let mach = instance.machine(op);
        let s = job_done[op.job].max(machine_done[mach]);
        let c = s + instance.duration(op);
        start[op.job][op.step] = s;
        job_done[op.job] = c;
        machine_done[mach] = c;
        order_on[mach].push(op.job);
        makespan = makespan.max(c);
    }
    let machine_orders =
        MachineOrders::new(instance, order_on).expect("valid sequence yields valid orders");
    Schedule::from_parts(start, makespan, machine_orders)
}

/// One feasibility violation found by [`check_feasible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub op: OperationId,
    pub reason: String,
}

/// Diagnostic check that a schedule is semi-active and feasible, and that
/// its recorded machine orders agree with its start times.
pub fn check_feasible(instance: &Instance, schedule: &Schedule) -> (bool, Vec<Violation>) {
    let mut violations = Vec::new();
    let n = instance.n_jobs();
    let m = instance.n_machines();

    for op in instance.ops() {
        let mut pred_done = 0u64;
        if op.step > 0 {
            let jp = OperationId::new(op.job, op.step - 1);
            pred_done = schedule.completion(instance, jp);
        }
        // machine predecessor: latest-starting earlier op on the same machine
        let mach = instance.machine(op);
        let mut mp_done = 0u64;
        for k in 0..n {
            if k == op.job {
                continue;
            }
            let other = OperationId::new(k, instance.step_on_machine(k, mach));
            if schedule.start(other) < schedule.start(op) {
                mp_done = mp_done.max(schedule.completion(instance, other));
            }
        }
        let required = pred_done.max(mp_done);
        if schedule.start(op) != required {
            violations.push(Violation {
                op,
                reason: format!(
                    "start {} but predecessors complete at {} (semi-active start must equal it)",
                    schedule.start(op),
                    required
                ),
            });
        }
    }

    // overlap check per machine
    for mach in 0..m {
        let mut intervals: Vec<(u64, u64, usize)> = (0..n)
            .map(|k| {
                let op = OperationId::new(k, instance.step_on_machine(k, mach));
                (schedule.start(op), schedule.completion(instance, op), k)
            })
            .collect();
        intervals.sort();
        for w in intervals.windows(2) {
            if w[1].0 < w[0].1 {
                violations.push(Violation {
                    op: OperationId::new(w[1].2, instance.step_on_machine(w[1].2, mach)),
                    reason: format!(
                        "overlaps job {} on machine {} ([{},{}) vs [{},{}))",
                        w[0].2, mach, w[0].0, w[0].1, w[1].0, w[1].1
                    ),
                });
            }
        }
        // machine order must match start-time order
        let by_start: Vec<usize> = intervals.iter().map(|&(_, _, k)| k).collect();
        if by_start != schedule.machine_orders().order_on(mach) {
            violations.push(Violation {
                op: OperationId::new(by_start[0], instance.step_on_machine(by_start[0], mach)),
                reason: format!("recorded order on machine {} disagrees with start times", mach),
            });
        }
    }

    (violations.is_empty(), violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::fixtures::{i22, i22_seq};

    #[test]
    fn single_op_schedule() {
        let inst = Instance::new(vec![vec![0]], vec![vec![5]]).unwrap();
        let seq = OperationSequence::from_job_list(&inst, &[0]).unwrap();
        let s = build_schedule(&inst, &seq);
        assert_eq!(s.start(OperationId::new(0, 0)), 0);
        assert_eq!(s.makespan(), 5);
    }

    #[test]
    fn i22_forward_sequence() {
        let inst = i22();
        let s = build_schedule(&inst, &i22_seq(&inst, &[0, 1, 0, 1]));
        assert_eq!(s.start(OperationId::new(0, 0)), 0);
        assert_eq!(s.start(OperationId::new(1, 0)), 0);
        assert_eq!(s.start(OperationId::new(0, 1)), 3);
        assert_eq!(s.start(OperationId::new(1, 1)), 3);
        assert_eq!(s.makespan(), 7);
        let (ok, report) = check_feasible(&inst, &s);
        assert!(ok, "{:?}", report);
    }

    #[test]
    fn i22_job2_first_sequence() {
        let inst = i22();
        let s = build_schedule(&inst, &i22_seq(&inst, &[1, 1, 0, 0]));
        assert_eq!(s.makespan(), 11);
    }

    #[test]
    fn rejects_job_order_violation() {
        let inst = i22();
        let bad = OperationSequence::new(
            &inst,
            vec![
                OperationId::new(0, 1),
                OperationId::new(0, 0),
                OperationId::new(1, 0),
                OperationId::new(1, 1),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn rejects_duplicate_operation() {
        let inst = i22();
        let bad = OperationSequence::new(
            &inst,
            vec![
                OperationId::new(0, 0),
                OperationId::new(0, 0),
                OperationId::new(1, 0),
                OperationId::new(1, 1),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn tampered_start_fails_check() {
        let inst = i22();
        let s = build_schedule(&inst, &i22_seq(&inst, &[0, 1, 0, 1]));
        let mut start = vec![
            vec![s.start(OperationId::new(0, 0)), s.start(OperationId::new(0, 1))],
            vec![s.start(OperationId::new(1, 0)), s.start(OperationId::new(1, 1))],
        ];
        start[0][1] = 2;
        let tampered = Schedule::from_parts(start, 11, s.machine_orders().clone());
        let (ok, report) = check_feasible(&inst, &tampered);
        assert!(!ok);
        assert!(!report.is_empty());
    }
}
