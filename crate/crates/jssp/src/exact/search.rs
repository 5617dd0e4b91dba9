//! The branch and bound engine.
//!
//! Nodes fix orientations for a subset of the disjunctive edges. Branching
//! is binary on an unfixed edge taken from a critical path of the node's
//! completion schedule (Balas-style); bounding combines the longest path
//! through the fixed arcs with the preemptive one-machine relaxation per
//! machine. Pruning is admissible only, so the search is exact whenever it
//! runs to completion.

use crate::core::{critical_arcs, Instance, MachineOrders, OperationId, Schedule};
use crate::exact::bound::preemptive_jackson;
use std::time::Instant;

/// Orientation state of one disjunctive edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Fix {
    Free,
    /// lower-indexed job first
    Forward,
    /// higher-indexed job first
    Backward,
}

/// Static table of the M*C(N,2) disjunctive edges of an instance.
pub(crate) struct EdgeTable {
    pub n_jobs: usize,
    /// (machine, job_a, job_b) with job_a < job_b, in index order
    pub edges: Vec<(usize, usize, usize)>,
}

impl EdgeTable {
    pub fn new(instance: &Instance) -> Self {
        let n = instance.n_jobs();
        let mut edges = Vec::with_capacity(instance.disjunctive_edge_count());
        for m in 0..instance.n_machines() {
            for a in 0..n {
                for b in a + 1..n {
                    edges.push((m, a, b));
                }
            }
        }
        EdgeTable { n_jobs: n, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn index(&self, machine: usize, job_a: usize, job_b: usize) -> usize {
        let (a, b) = if job_a < job_b {
            (job_a, job_b)
        } else {
            (job_b, job_a)
        };
        let n = self.n_jobs;
        let pair = a * n - a * (a + 1) / 2 + (b - a - 1);
        machine * (n * (n - 1) / 2) + pair
    }

    /// Fix value meaning "job `first` precedes job `second`".
    pub fn fix_for(&self, first: usize, second: usize) -> Fix {
        if first < second {
            Fix::Forward
        } else {
            Fix::Backward
        }
    }

    /// Orientation of every edge in a complete set of machine orders.
    pub fn orientation_of(&self, orders: &MachineOrders) -> Vec<Fix> {
        let pos = orders.positions();
        self.edges
            .iter()
            .map(|&(m, a, b)| {
                if pos[m][a] < pos[m][b] {
                    Fix::Forward
                } else {
                    Fix::Backward
                }
            })
            .collect()
    }
}

pub(crate) enum Mode {
    /// Unrestricted search (optionally with pre-fixed arcs at the root).
    Free,
    /// Only orientations within `radius` flips of `center` qualify.
    Ball { center: Vec<Fix>, radius: u64 },
}

pub(crate) struct Limits {
    pub node_limit: Option<u64>,
    pub deadline: Option<Instant>,
}

pub(crate) struct Searcher<'a> {
    instance: &'a Instance,
    edges: &'a EdgeTable,
    mode: Mode,
    limits: Limits,
    pub nodes_expanded: u64,
    pub best: Option<(u64, MachineOrders)>,
    pub limit_hit: bool,
}

impl<'a> Searcher<'a> {
    pub fn new(instance: &'a Instance, edges: &'a EdgeTable, mode: Mode, limits: Limits) -> Self {
        Searcher {
            instance,
            edges,
            mode,
            limits,
            nodes_expanded: 0,
            best: None,
            limit_hit: false,
        }
    }

    pub fn offer_incumbent(&mut self, makespan: u64, orders: MachineOrders) {
        if self.best.as_ref().is_none_or(|&(b, _)| makespan < b) {
            self.best = Some((makespan, orders));
        }
    }

    pub fn run(&mut self, fixed: &mut Vec<Fix>, opposite_count: u64) {
        self.explore(fixed, opposite_count);
    }

    fn over_limit(&mut self) -> bool {
        if let Some(cap) = self.limits.node_limit {
            if self.nodes_expanded > cap {
                return true;
            }
        }
        if let Some(deadline) = self.limits.deadline {
            // wall clock checked sparingly
            if self.nodes_expanded % 256 == 0 && Instant::now() > deadline {
                return true;
            }
        }
        false
    }

    fn explore(&mut self, fixed: &mut Vec<Fix>, opposite_count: u64) {
        if self.limit_hit {
            return;
        }
        self.nodes_expanded += 1;
        if self.over_limit() {
            self.limit_hit = true;
            return;
        }

        let (mut heads, mut tails) =
            match (self.fixed_heads(fixed, false), self.fixed_heads(fixed, true)) {
                (Ok(h), Ok(t)) => (h, t),
                _ => return, // fixed arcs already cyclic
            };

        let mut lb = self.node_bound(&heads, &tails);
        if self.best.as_ref().is_some_and(|&(b, _)| lb >= b) {
            return;
        }

        match &self.mode {
            Mode::Free => {
                let mut forced = Vec::new();
                if self.force_arcs(fixed, &mut forced, &mut heads, &mut tails, &mut lb) {
                    self.expand_free(fixed, lb);
                }
                for e in forced {
                    fixed[e] = Fix::Free;
                }
            }
            Mode::Ball { .. } => self.expand_ball(fixed, opposite_count),
        }
    }

    /// Immediate arc fixing: a free edge whose one orientation cannot beat
    /// the incumbent (head of the first operation plus both processing
    /// times plus the tail of the second already reaches it) is fixed the
    /// other way. Iterates to a fixpoint, appending the fixed edge indices
    /// to `forced`; returns false when the node can be pruned outright.
    fn force_arcs(
        &mut self,
        fixed: &mut [Fix],
        forced: &mut Vec<usize>,
        heads: &mut Vec<u64>,
        tails: &mut Vec<u64>,
        lb: &mut u64,
    ) -> bool {
        let Some(best) = self.best.as_ref().map(|&(b, _)| b) else {
            return true;
        };
        let m = self.instance.n_machines();
        loop {
            let mut changed = false;
            for e in 0..self.edges.len() {
                if fixed[e] != Fix::Free {
                    continue;
                }
                let (mach, a, b) = self.edges.edges[e];
                let u = a * m + self.instance.step_on_machine(a, mach);
                let v = b * m + self.instance.step_on_machine(b, mach);
                let du = self.instance.duration(OperationId::new(a, u % m));
                let dv = self.instance.duration(OperationId::new(b, v % m));
                // tails include the operation's own duration
                let uv_bad = heads[u] + du + tails[v] >= best;
                let vu_bad = heads[v] + dv + tails[u] >= best;
                if uv_bad && vu_bad {
                    return false;
                }
                if uv_bad {
                    fixed[e] = self.edges.fix_for(b, a);
                    forced.push(e);
                    changed = true;
                } else if vu_bad {
                    fixed[e] = self.edges.fix_for(a, b);
                    forced.push(e);
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
            match (self.fixed_heads(fixed, false), self.fixed_heads(fixed, true)) {
                (Ok(h), Ok(t)) => {
                    *heads = h;
                    *tails = t;
                }
                _ => return false, // forced arcs close a cycle: prune
            }
            *lb = self.node_bound(heads, tails);
            if *lb >= best {
                return false;
            }
        }
    }

    fn expand_free(&mut self, fixed: &mut Vec<Fix>, lb: u64) {
        let schedule = self.greedy_completion(fixed);
        let makespan = schedule.makespan();
        if self.best.as_ref().is_none_or(|&(b, _)| makespan < b) {
            self.best = Some((makespan, schedule.machine_orders().clone()));
        }
        if makespan <= lb {
            return; // completion meets the node bound: subtree solved
        }
        // branch on the unfixed critical arc with the largest combined
        // processing time: reversing it perturbs the completion the most
        let branch = critical_arcs(self.instance, &schedule)
            .into_iter()
            .filter(|arc| fixed[self.edges.index(arc.machine, arc.first, arc.second)] == Fix::Free)
            .max_by_key(|arc| {
                let i = self.instance.step_on_machine(arc.first, arc.machine);
                let j = self.instance.step_on_machine(arc.second, arc.machine);
                self.instance.duration(OperationId::new(arc.first, i))
                    + self.instance.duration(OperationId::new(arc.second, j))
            });
        let Some(arc) = branch else {
            // critical path uses only fixed and conjunctive arcs, so the
            // completion is optimal for this subtree
            return;
        };
        let e = self.edges.index(arc.machine, arc.first, arc.second);
        let along = self.edges.fix_for(arc.first, arc.second);
        let against = self.edges.fix_for(arc.second, arc.first);
        // explore the completion's own orientation first
        fixed[e] = along;
        self.explore(fixed, 0);
        fixed[e] = against;
        self.explore(fixed, 0);
        fixed[e] = Fix::Free;
    }

    fn expand_ball(&mut self, fixed: &mut Vec<Fix>, opposite_count: u64) {
        let Mode::Ball { center, radius, .. } = &self.mode else {
            unreachable!()
        };
        let (center_fix, radius) = (center.clone(), *radius);
        // complete every free edge with the center orientation
        let mut completion = fixed.to_vec();
        for (e, slot) in completion.iter_mut().enumerate() {
            if *slot == Fix::Free {
                *slot = center_fix[e];
            }
        }
        match self.complete_schedule(&completion) {
            Ok(schedule) => {
                // the completion flips exactly the fixed-opposite arcs, so it
                // lies within the ball
                let makespan = schedule.makespan();
                if self.best.as_ref().is_none_or(|&(b, _)| makespan < b) {
                    self.best = Some((makespan, schedule.machine_orders().clone()));
                }
                if opposite_count == radius {
                    return; // every remaining edge is forced to the center
                }
                let branch = critical_arcs(self.instance, &schedule).into_iter().find(|arc| {
                    fixed[self.edges.index(arc.machine, arc.first, arc.second)] == Fix::Free
                });
                let Some(arc) = branch else {
                    return; // completion meets the fixed-graph bound
                };
                let e = self.edges.index(arc.machine, arc.first, arc.second);
                self.branch_ball(fixed, e, opposite_count, radius, &center_fix);
            }
            Err(unreached) => {
                if opposite_count == radius {
                    return; // forced completion is cyclic: dead end
                }
                // branch on a free edge inside the cyclic region
                let branch = (0..self.edges.len()).find(|&e| {
                    if fixed[e] != Fix::Free {
                        return false;
                    }
                    let (m, a, b) = self.edges.edges[e];
                    let op_a = a * self.instance.n_machines()
                        + self.instance.step_on_machine(a, m);
                    let op_b = b * self.instance.n_machines()
                        + self.instance.step_on_machine(b, m);
                    unreached[op_a] && unreached[op_b]
                });
                let Some(e) = branch else {
                    return; // cycle lies entirely in fixed arcs (cannot happen)
                };
                self.branch_ball(fixed, e, opposite_count, radius, &center_fix);
            }
        }
    }

    fn branch_ball(
        &mut self,
        fixed: &mut Vec<Fix>,
        e: usize,
        opposite_count: u64,
        radius: u64,
        center_fix: &[Fix],
    ) {
        let center_dir = center_fix[e];
        let opposite_dir = match center_dir {
            Fix::Forward => Fix::Backward,
            Fix::Backward => Fix::Forward,
            Fix::Free => unreachable!(),
        };
        fixed[e] = center_dir;
        self.explore(fixed, opposite_count);
        if opposite_count + 1 <= radius {
            fixed[e] = opposite_dir;
            self.explore(fixed, opposite_count + 1);
        }
        fixed[e] = Fix::Free;
    }

    /// Heads (or tails, when `reversed`) of every operation over conjunctive
    /// plus fixed arcs. Tails include the operation's own duration.
    fn fixed_heads(&self, fixed: &[Fix], reversed: bool) -> Result<Vec<u64>, ()> {
        let n = self.instance.n_jobs();
        let m = self.instance.n_machines();
        let n_ops = n * m;
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n_ops];
        let mut indeg = vec![0u32; n_ops];
        let add = |from: usize, to: usize, succ: &mut Vec<Vec<usize>>, indeg: &mut Vec<u32>| {
            let (f, t) = if reversed { (to, from) } else { (from, to) };
            succ[f].push(t);
            indeg[t] += 1;
        };
        for k in 0..n {
            for i in 0..m - 1 {
                add(k * m + i, k * m + i + 1, &mut succ, &mut indeg);
            }
        }
        for (e, &fix) in fixed.iter().enumerate() {
            let (mach, a, b) = self.edges.edges[e];
            let (first, second) = match fix {
                Fix::Free => continue,
                Fix::Forward => (a, b),
                Fix::Backward => (b, a),
            };
            let from = first * m + self.instance.step_on_machine(first, mach);
            let to = second * m + self.instance.step_on_machine(second, mach);
            add(from, to, &mut succ, &mut indeg);
        }
        let dur =
            |v: usize| self.instance.duration(OperationId::new(v / m, v % m));
        let mut value = vec![0u64; n_ops];
        let mut queue: Vec<usize> = (0..n_ops).filter(|&v| indeg[v] == 0).collect();
        let mut processed = 0usize;
        while let Some(v) = queue.pop() {
            processed += 1;
            let done = value[v] + dur(v);
            for &w in &succ[v] {
                value[w] = value[w].max(done);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if processed != n_ops {
            return Err(());
        }
        if reversed {
            // tails include own duration
            for (v, slot) in value.iter_mut().enumerate() {
                *slot += dur(v);
            }
        }
        Ok(value)
    }

    fn node_bound(&self, heads: &[u64], tails: &[u64]) -> u64 {
        let m = self.instance.n_machines();
        let path = heads
            .iter()
            .zip(tails.iter())
            .map(|(&h, &t)| h + t)
            .max()
            .unwrap_or(0);
        let mut bound = path;
        for mach in 0..m {
            let ops: Vec<(u64, u64, u64)> = (0..self.instance.n_jobs())
                .map(|k| {
                    let step = self.instance.step_on_machine(k, mach);
                    let v = k * m + step;
                    let p = self.instance.duration(OperationId::new(k, step));
                    (heads[v], p, tails[v] - p)
                })
                .collect();
            bound = bound.max(preemptive_jackson(&ops));
        }
        bound
    }

    /// Greedy semi-active completion containing every fixed arc: repeatedly
    /// start the eligible operation with the earliest possible start time.
    fn greedy_completion(&self, fixed: &[Fix]) -> Schedule {
        let instance = self.instance;
        let n = instance.n_jobs();
        let m = instance.n_machines();
        // unsatisfied fixed predecessors per operation
        let mut pred_left = vec![0u32; n * m];
        let mut fixed_succ: Vec<Vec<usize>> = vec![Vec::new(); n * m];
        for (e, &fix) in fixed.iter().enumerate() {
            let (mach, a, b) = self.edges.edges[e];
            let (first, second) = match fix {
                Fix::Free => continue,
                Fix::Forward => (a, b),
                Fix::Backward => (b, a),
            };
            let from = first * m + instance.step_on_machine(first, mach);
            let to = second * m + instance.step_on_machine(second, mach);
            fixed_succ[from].push(to);
            pred_left[to] += 1;
        }

        let mut next_step = vec![0usize; n];
        let mut job_done = vec![0u64; n];
        let mut machine_done = vec![0u64; m];
        let mut job_list = Vec::with_capacity(n * m);
        for _ in 0..n * m {
            let mut pick: Option<(u64, u64, usize)> = None;
            for k in 0..n {
                let i = next_step[k];
                if i >= m || pred_left[k * m + i] > 0 {
                    continue;
                }
                let mach = instance.machine(OperationId::new(k, i));
                let est = job_done[k].max(machine_done[mach]);
                let ect = est + instance.duration(OperationId::new(k, i));
                let cand = (est, ect, k);
                if pick.is_none_or(|p| cand < p) {
                    pick = Some(cand);
                }
            }
            let (_, ect, k) = pick.expect("acyclic fixed arcs leave an eligible operation");
            let i = next_step[k];
            let v = k * m + i;
            let mach = instance.machine(OperationId::new(k, i));
            job_done[k] = ect;
            machine_done[mach] = ect;
            for &w in &fixed_succ[v] {
                pred_left[w] -= 1;
            }
            next_step[k] += 1;
            job_list.push(k);
        }
        let seq = crate::core::OperationSequence::from_job_list(instance, &job_list)
            .expect("greedy order respects job order");
        crate::core::build_schedule(instance, &seq)
    }

    /// Schedule of a complete orientation; on a cycle, reports which
    /// operations were unreachable.
    fn complete_schedule(&self, orientation: &[Fix]) -> Result<Schedule, Vec<bool>> {
        let instance = self.instance;
        let n = instance.n_jobs();
        let m = instance.n_machines();
        let n_ops = n * m;
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n_ops];
        let mut indeg = vec![0u32; n_ops];
        for k in 0..n {
            for i in 0..m - 1 {
                succ[k * m + i].push(k * m + i + 1);
                indeg[k * m + i + 1] += 1;
            }
        }
        for (e, &fix) in orientation.iter().enumerate() {
            let (mach, a, b) = self.edges.edges[e];
            let (first, second) = match fix {
                Fix::Free => unreachable!("orientation is complete"),
                Fix::Forward => (a, b),
                Fix::Backward => (b, a),
            };
            let from = first * m + instance.step_on_machine(first, mach);
            let to = second * m + instance.step_on_machine(second, mach);
            succ[from].push(to);
            indeg[to] += 1;
        }
        let mut start = vec![0u64; n_ops];
        let mut queue: Vec<usize> = (0..n_ops).filter(|&v| indeg[v] == 0).collect();
        let mut done = vec![false; n_ops];
        let mut processed = 0usize;
        let mut makespan = 0u64;
        let mut order: Vec<usize> = Vec::with_capacity(n_ops);
        while let Some(v) = queue.pop() {
            processed += 1;
            done[v] = true;
            order.push(v);
            let c = start[v] + instance.duration(OperationId::new(v / m, v % m));
            makespan = makespan.max(c);
            for &w in &succ[v] {
                start[w] = start[w].max(c);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if processed != n_ops {
            return Err(done.iter().map(|&d| !d).collect());
        }
        // machine orders sorted by start time (strict since durations > 0)
        let mut order_on: Vec<Vec<usize>> = vec![Vec::with_capacity(n); m];
        for mach in 0..m {
            let mut jobs: Vec<usize> = (0..n).collect();
            jobs.sort_by_key(|&k| start[k * m + instance.step_on_machine(k, mach)]);
            order_on[mach] = jobs;
        }
        let orders = MachineOrders::new(instance, order_on).expect("orders valid");
        let start2d: Vec<Vec<u64>> = (0..n)
            .map(|k| (0..m).map(|i| start[k * m + i]).collect())
            .collect();
        Ok(Schedule::from_parts(start2d, makespan, orders))
    }
}
