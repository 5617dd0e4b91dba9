//! Exact solving by branch and bound: the global optimum, the optimum
//! subject to fixed disjunctive arcs, and the best schedule within a
//! disjunctive-graph-distance ball around a center orientation.

mod bound;
mod search;

pub use bound::{lower_bound, preemptive_jackson};

use crate::core::{DisjunctiveArc, Instance, MachineOrders};
use crate::error::{Error, Result};
use crate::generate::{schedule_by_rule, PriorityRule};
use search::{EdgeTable, Fix, Limits, Mode, Searcher};
use std::time::{Duration, Instant};

/// Resource limits and an optional warm-start incumbent.
#[derive(Debug, Clone, Default)]
pub struct BnbConfig {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub incumbent_seed: Option<MachineOrders>,
}

impl BnbConfig {
    pub fn with_node_limit(limit: u64) -> Self {
        BnbConfig {
            node_limit: Some(limit),
            ..Default::default()
        }
    }

    fn limits(&self) -> Limits {
        Limits {
            node_limit: self.node_limit,
            deadline: self.time_limit.map(|d| Instant::now() + d),
        }
    }
}

/// How a solve ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BnbOutcome {
    /// The optimum, with a witness attaining it.
    Proven { makespan: u64, witness: MachineOrders },
    /// Limits hit first; `best` is the incumbent, if any was found.
    Unproven { best: Option<(u64, MachineOrders)> },
    /// The constraints admit no acyclic orientation.
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct BnbResult {
    pub outcome: BnbOutcome,
    pub nodes_expanded: u64,
}

impl BnbResult {
    pub fn proven(&self) -> bool {
        matches!(self.outcome, BnbOutcome::Proven { .. })
    }

    /// Proven optimum, or `None` when unproven/infeasible.
    pub fn optimum(&self) -> Option<u64> {
        match &self.outcome {
            BnbOutcome::Proven { makespan, .. } => Some(*makespan),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&MachineOrders> {
        match &self.outcome {
            BnbOutcome::Proven { witness, .. } => Some(witness),
            BnbOutcome::Unproven {
                best: Some((_, w)), ..
            } => Some(w),
            _ => None,
        }
    }

    /// Proven optimum as a value comparable against other solves, mapping
    /// infeasibility to `u64::MAX` ("plus infinity").
    pub fn optimum_or_infinite(&self) -> Option<u64> {
        match &self.outcome {
            BnbOutcome::Proven { makespan, .. } => Some(*makespan),
            BnbOutcome::Infeasible => Some(u64::MAX),
            BnbOutcome::Unproven { .. } => None,
        }
    }
}

/// Arcs that must appear in every explored orientation.
#[derive(Debug, Clone, Default)]
pub struct ArcConstraint {
    pub arcs: Vec<DisjunctiveArc>,
}

impl ArcConstraint {
    pub fn single(arc: DisjunctiveArc) -> Self {
        ArcConstraint { arcs: vec![arc] }
    }
}

/// Exact minimum makespan over all feasible schedules.
pub fn solve_optimal(instance: &Instance, config: &BnbConfig) -> BnbResult {
    solve_with_constraint(instance, &ArcConstraint::default(), config)
}

/// Exact minimum makespan over schedules containing every constraint arc.
pub fn solve_fixed_arc(
    instance: &Instance,
    constraint: &ArcConstraint,
    config: &BnbConfig,
) -> BnbResult {
    solve_with_constraint(instance, constraint, config)
}

fn solve_with_constraint(
    instance: &Instance,
    constraint: &ArcConstraint,
    config: &BnbConfig,
) -> BnbResult {
    let edges = EdgeTable::new(instance);
    let mut fixed = vec![Fix::Free; edges.len()];
    for arc in &constraint.arcs {
        let e = edges.index(arc.machine, arc.first, arc.second);
        let dir = edges.fix_for(arc.first, arc.second);
        if fixed[e] != Fix::Free && fixed[e] != dir {
            return BnbResult {
                outcome: BnbOutcome::Infeasible,
                nodes_expanded: 0,
            };
        }
        fixed[e] = dir;
    }

    let mut searcher = Searcher::new(instance, &edges, Mode::Free, config.limits());

    // warm start with any feasible orientation that honors the constraint
    for candidate in [
        config.incumbent_seed.clone(),
        Some(
            schedule_by_rule(instance, &PriorityRule::PiInf)
                .machine_orders()
                .clone(),
        ),
    ]
    .into_iter()
    .flatten()
    {
        if orientation_contains(&edges, &candidate, &fixed) {
            if let Ok(ms) = crate::core::makespan_longest_path(instance, &candidate) {
                searcher.offer_incumbent(ms, candidate);
            }
        }
    }

    searcher.run(&mut fixed, 0);
    finish(searcher, true)
}

/// Exact minimum makespan over feasible orientations within disjunctive
/// graph distance `radius` of `center`. Errors if `center` is cyclic.
pub fn solve_radius_limited(
    instance: &Instance,
    center: &MachineOrders,
    radius: u64,
    config: &BnbConfig,
) -> Result<BnbResult> {
    let center_makespan = crate::core::makespan_longest_path(instance, center)
        .map_err(|_| Error::Cyclic("radius-limited search center is cyclic".into()))?;
    let edges = EdgeTable::new(instance);
    let center_fix = edges.orientation_of(center);
    let mut fixed = vec![Fix::Free; edges.len()];
    let mut searcher = Searcher::new(
        instance,
        &edges,
        Mode::Ball {
            center: center_fix,
            radius,
        },
        config.limits(),
    );
    searcher.offer_incumbent(center_makespan, center.clone());
    if let Some(seed) = &config.incumbent_seed {
        if let (Ok(d), Ok(ms)) = (
            crate::core::orders_distance(seed, center),
            crate::core::makespan_longest_path(instance, seed),
        ) {
            if d <= radius {
                searcher.offer_incumbent(ms, seed.clone());
            }
        }
    }
    searcher.run(&mut fixed, 0);
    Ok(finish(searcher, false))
}

fn orientation_contains(edges: &EdgeTable, orders: &MachineOrders, fixed: &[Fix]) -> bool {
    let orientation = edges.orientation_of(orders);
    fixed
        .iter()
        .zip(orientation.iter())
        .all(|(&f, &o)| f == Fix::Free || f == o)
}

fn finish(searcher: Searcher<'_>, constraint_may_be_infeasible: bool) -> BnbResult {
    let nodes_expanded = searcher.nodes_expanded;
    let outcome = if searcher.limit_hit {
        BnbOutcome::Unproven {
            best: searcher.best,
        }
    } else {
        match searcher.best {
            Some((makespan, witness)) => BnbOutcome::Proven { makespan, witness },
            // a complete, limit-free search that never found a feasible
            // orientation: the constraints force a cycle
            None if constraint_may_be_infeasible => BnbOutcome::Infeasible,
            None => BnbOutcome::Infeasible,
        }
    };
    BnbResult {
        outcome,
        nodes_expanded,
    }
}
