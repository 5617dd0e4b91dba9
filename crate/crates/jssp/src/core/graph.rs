//! Disjunctive graph operations: longest paths, distance between
//! orientations, and critical arcs.

use crate::core::instance::{Instance, OperationId};
use crate::core::schedule::{MachineOrders, Schedule};
use crate::error::{Error, Result};

/// A directed same-machine precedence: job `first` runs before job `second`
/// on `machine`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisjunctiveArc {
    pub machine: usize,
    pub first: usize,
    pub second: usize,
}

/// Reconstruct the semi-active schedule a machine-order orientation encodes.
///
/// Start times are longest-path lengths in the graph of job arcs plus the
/// consecutive-on-machine arcs. Errors if the orientation is cyclic.
pub fn schedule_from_orders(instance: &Instance, orders: &MachineOrders) -> Result<Schedule> {
    let n = instance.n_jobs();
    let m = instance.n_machines();
    let n_ops = n * m;
    let idx = |op: OperationId| op.job * m + op.step;

    // successors and in-degrees over job arcs + machine arcs
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n_ops];
    let mut indeg = vec![0u32; n_ops];
    for k in 0..n {
        for i in 0..m - 1 {
            succ[k * m + i].push(k * m + i + 1);
            indeg[k * m + i + 1] += 1;
        }
    }
    for mach in 0..m {
        let order = orders.order_on(mach);
        for w in order.windows(2) {
            let a = OperationId::new(w[0], instance.step_on_machine(w[0], mach));
            let b = OperationId::new(w[1], instance.step_on_machine(w[1], mach));
            succ[idx(a)].push(idx(b));
            indeg[idx(b)] += 1;
        }
    }

    let mut start = vec![vec![0u64; m]; n];
    let mut queue: Vec<usize> = (0..n_ops).filter(|&v| indeg[v] == 0).collect();
    let mut processed = 0usize;
    let mut makespan = 0u64;
    while let Some(v) = queue.pop() {
        processed += 1;
        let op = OperationId::new(v / m, v % m);
        let done = start[op.job][op.step] + instance.duration(op);
        makespan = makespan.max(done);
        for &w in &succ[v] {
            let (wj, ws) = (w / m, w % m);
            start[wj][ws] = start[wj][ws].max(done);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    if processed != n_ops {
        return Err(Error::Cyclic(format!(
            "{} of {} operations unreachable in topological order",
            n_ops - processed,
            n_ops
        )));
    }
    Ok(Schedule::from_parts(start, makespan, orders.clone()))
}

/// Longest weighted source-to-sink path length of an orientation; equals the
/// makespan of the corresponding semi-active schedule.
pub fn makespan_longest_path(instance: &Instance, orders: &MachineOrders) -> Result<u64> {
    Ok(schedule_from_orders(instance, orders)?.makespan())
}

/// Disjunctive graph distance: number of disjunctive edges oriented in
/// opposite directions in the two orientations.
pub fn orders_distance(a: &MachineOrders, b: &MachineOrders) -> Result<u64> {
    if a.n_machines() != b.n_machines() || a.n_jobs() != b.n_jobs() {
        return Err(Error::InstanceMismatch(format!(
            "{}x{} orders vs {}x{} orders",
            a.n_jobs(),
            a.n_machines(),
            b.n_jobs(),
            b.n_machines()
        )));
    }
    let pos_b = b.positions();
    let mut count = 0u64;
    for mach in 0..a.n_machines() {
        let order = a.order_on(mach);
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                if pos_b[mach][order[i]] > pos_b[mach][order[j]] {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Distance between two schedules of the same instance.
pub fn distance(s1: &Schedule, s2: &Schedule) -> Result<u64> {
    orders_distance(s1.machine_orders(), s2.machine_orders())
}

/// Disjunctive arcs lying on a longest source-to-sink path of `schedule`.
/// Each returned arc joins consecutive jobs on its machine, so reversing it
/// is one adjacent transposition in the machine order.
pub fn critical_arcs(instance: &Instance, schedule: &Schedule) -> Vec<DisjunctiveArc> {
    let tails = op_tails(instance, schedule);
    let makespan = schedule.makespan();
    let mut arcs = Vec::new();
    let critical = |op: OperationId| schedule.start(op) + tails[op.job][op.step] == makespan;
    for mach in 0..instance.n_machines() {
        let order = schedule.machine_orders().order_on(mach);
        for w in order.windows(2) {
            let a = OperationId::new(w[0], instance.step_on_machine(w[0], mach));
            let b = OperationId::new(w[1], instance.step_on_machine(w[1], mach));
            if schedule.completion(instance, a) == schedule.start(b) && critical(a) && critical(b) {
                arcs.push(DisjunctiveArc {
                    machine: mach,
                    first: w[0],
                    second: w[1],
                });
            }
        }
    }
    arcs
}

/// tails[k][i] = longest path length from the start of (k,i) to the sink,
/// including (k,i)'s own duration.
fn op_tails(instance: &Instance, schedule: &Schedule) -> Vec<Vec<u64>> {
    let n = instance.n_jobs();
    let m = instance.n_machines();
    let mut tails = vec![vec![0u64; m]; n];
    // process in descending start time; all successors start strictly later
    // (durations are positive), so they are already done.
    let mut by_start: Vec<OperationId> = instance.ops().collect();
    by_start.sort_by_key(|&op| std::cmp::Reverse(schedule.start(op)));
    let pos = schedule.machine_orders().positions();
    for op in by_start {
        let mut best = 0u64;
        if op.step + 1 < m {
            best = best.max(tails[op.job][op.step + 1]);
        }
        let mach = instance.machine(op);
        let p = pos[mach][op.job];
        if p + 1 < n {
            let next_job = schedule.machine_orders().order_on(mach)[p + 1];
            let next = OperationId::new(next_job, instance.step_on_machine(next_job, mach));
            best = best.max(tails[next.job][next.step]);
        }
        tails[op.job][op.step] = best + instance.duration(op);
    }
    tails
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::fixtures::{i22, i22_orders};
    use crate::core::schedule::build_schedule;
    use crate::core::OperationSequence;

    #[test]
    fn longest_path_matches_build_schedule() {
        let inst = i22();
        // schedule A: m0 (J1,J2), m1 (J2,J1)
        let a = i22_orders(&inst, &[&[0, 1], &[1, 0]]);
        assert_eq!(makespan_longest_path(&inst, &a).unwrap(), 7);
        // schedule B: both machines (J1,J2)
        let b = i22_orders(&inst, &[&[0, 1], &[0, 1]]);
        assert_eq!(makespan_longest_path(&inst, &b).unwrap(), 11);
    }

    #[test]
    fn single_job_chain() {
        let inst = Instance::new(vec![vec![2, 0, 1]], vec![vec![4, 5, 6]]).unwrap();
        let orders = MachineOrders::new(&inst, vec![vec![0], vec![0], vec![0]]).unwrap();
        assert_eq!(makespan_longest_path(&inst, &orders).unwrap(), 15);
    }

    #[test]
    fn cyclic_orders_rejected() {
        let inst = i22();
        // m0 (J2,J1), m1 (J1,J2) forces the cycle J1_2 -> J2_1 -> J2_2 -> J1_1 -> J1_2
        let c = i22_orders(&inst, &[&[1, 0], &[0, 1]]);
        assert!(matches!(
            makespan_longest_path(&inst, &c),
            Err(Error::Cyclic(_))
        ));
    }

    #[test]
    fn distance_examples() {
        let inst = i22();
        let a = i22_orders(&inst, &[&[0, 1], &[1, 0]]);
        let b = i22_orders(&inst, &[&[0, 1], &[0, 1]]);
        assert_eq!(orders_distance(&a, &a).unwrap(), 0);
        assert_eq!(orders_distance(&a, &b).unwrap(), 1);
        let rev = i22_orders(&inst, &[&[1, 0], &[0, 1]]);
        assert_eq!(orders_distance(&a, &rev).unwrap(), 2);
    }

    #[test]
    fn distance_rejects_mismatched_shapes() {
        let inst = i22();
        let a = i22_orders(&inst, &[&[0, 1], &[1, 0]]);
        let other = Instance::new(vec![vec![0]], vec![vec![5]]).unwrap();
        let b = MachineOrders::new(&other, vec![vec![0]]).unwrap();
        assert!(orders_distance(&a, &b).is_err());
    }

    #[test]
    fn critical_arcs_single_job_empty() {
        let inst = Instance::new(vec![vec![0, 1]], vec![vec![3, 4]]).unwrap();
        let orders = MachineOrders::new(&inst, vec![vec![0], vec![0]]).unwrap();
        let s = schedule_from_orders(&inst, &orders).unwrap();
        assert!(critical_arcs(&inst, &s).is_empty());
    }

    #[test]
    fn critical_arcs_on_schedule_b() {
        let inst = i22();
        let seq = OperationSequence::from_job_list(&inst, &[0, 0, 1, 1]).unwrap();
        let s = build_schedule(&inst, &seq);
        assert_eq!(s.makespan(), 11);
        let arcs = critical_arcs(&inst, &s);
        // critical path J1_1 -> J1_2 -> J2_1 -> J2_2: the machine-1 arc (J1, J2)
        assert!(arcs.contains(&DisjunctiveArc {
            machine: 1,
            first: 0,
            second: 1
        }));
    }
}
