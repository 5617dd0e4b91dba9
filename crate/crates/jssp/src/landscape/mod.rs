//! Landscape analyses: ρ-backbone computation, simulated-annealing sampling
//! of distances between near-optimal schedules, and neighborhood-exactness
//! measurement via ball descent.

mod descent;
mod sa;

pub use descent::{ball_descent, exactness_run, next_descent_n1, ExactnessRecord};
pub use sa::{sa_run, sample_rho_distances, SaConfig};

use crate::core::{DisjunctiveArc, Instance};
use crate::error::{Error, Result};
use crate::exact::{solve_fixed_arc, solve_optimal, ArcConstraint, BnbConfig};
use rayon::prelude::*;

/// Ordered grid of approximation factors ρ ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoGrid {
    values: Vec<f64>,
}

impl RhoGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Validation("rho grid is empty".into()));
        }
        if values[0] < 1.0 {
            return Err(Error::Validation("rho values must be >= 1".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(
                "rho grid must be strictly increasing".into(),
            ));
        }
        Ok(RhoGrid { values })
    }

    /// Evenly spaced grid from `min` to `max` inclusive (within float slack).
    pub fn from_range(min: f64, max: f64, step: f64) -> Result<Self> {
        if step <= 0.0 || max < min {
            return Err(Error::Validation("bad rho range".into()));
        }
        let count = ((max - min) / step + 1e-9).floor() as usize + 1;
        RhoGrid::new((0..count).map(|i| min + i as f64 * step).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Default for RhoGrid {
    /// {1.00, 1.01, ..., 1.50}
    fn default() -> Self {
        RhoGrid::new((0..=50).map(|i| 1.0 + i as f64 * 0.01).collect()).unwrap()
    }
}

/// Largest integer makespan counted as "within factor ρ" of `lmin`.
///
/// Makespans are integers, so `ms ≤ ρ·lmin` is evaluated as
/// `ms ≤ floor(ρ·lmin + ε)` with a small ε absorbing float error in ρ·lmin.
pub fn rho_threshold(rho: f64, lmin: u64) -> u64 {
    (rho * lmin as f64 + 1e-9).floor() as u64
}

/// The two constrained optima of one disjunctive edge: the minimum makespan
/// with the edge fixed each way. `forward` fixes `job_a` before `job_b`
/// (with `job_a < job_b`); a cyclic orientation is `u64::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeOptima {
    pub machine: usize,
    pub job_a: usize,
    pub job_b: usize,
    pub forward: u64,
    pub backward: u64,
}

impl EdgeOptima {
    /// An edge is in the ρ-backbone iff its worse orientation is not within
    /// factor ρ of the optimum: every ρ-optimal schedule then agrees on it.
    pub fn in_backbone(&self, rho: f64, lmin: u64) -> bool {
        self.forward.max(self.backward) > rho_threshold(rho, lmin)
    }
}

/// ρ-backbone of an instance over a grid of ρ values.
#[derive(Debug, Clone)]
pub struct BackboneResult {
    pub lmin: u64,
    pub edges: Vec<EdgeOptima>,
    /// Edges in the ρ-backbone, aligned with the grid.
    pub counts: Vec<usize>,
    /// `counts` divided by the edge count; non-increasing in ρ.
    pub fractions: Vec<f64>,
}

impl BackboneResult {
    pub fn fraction_at(&self, grid: &RhoGrid, rho: f64) -> Option<f64> {
        grid.values()
            .iter()
            .position(|&v| (v - rho).abs() < 1e-12)
            .map(|i| self.fractions[i])
    }
}

/// Computes the ρ-backbone with 1 + M·C(N,2) branch-and-bound runs: one
/// unconstrained solve gives ℓ_min and a witness whose orientation pins one
/// constrained optimum per edge to ℓ_min; one constrained solve per edge
/// covers the opposite orientation.
pub fn rho_backbone(instance: &Instance, grid: &RhoGrid, config: &BnbConfig) -> Result<BackboneResult> {
    let root = solve_optimal(instance, config);
    let lmin = root.optimum().ok_or(Error::LimitExceeded)?;
    let witness = root.witness().expect("proven solve has a witness").clone();
    let positions = witness.positions();

    let mut pairs = Vec::new();
    for machine in 0..instance.n_machines() {
        for job_a in 0..instance.n_jobs() {
            for job_b in job_a + 1..instance.n_jobs() {
                pairs.push((machine, job_a, job_b));
            }
        }
    }

    let edges: Vec<Result<EdgeOptima>> = pairs
        .par_iter()
        .map(|&(machine, job_a, job_b)| {
            // the witness realizes lmin with its own orientation of this edge
            let a_first = positions[machine][job_a] < positions[machine][job_b];
            let (first, second) = if a_first { (job_a, job_b) } else { (job_b, job_a) };
            // warm start: the witness with this job pair swapped contains
            // the reversed arc and is usually near the constrained optimum
            let mut swapped_rows: Vec<Vec<usize>> = (0..instance.n_machines())
                .map(|mm| witness.order_on(mm).to_vec())
                .collect();
            let (pa, pb) = (positions[machine][job_a], positions[machine][job_b]);
            swapped_rows[machine].swap(pa, pb);
            let warm = crate::core::MachineOrders::new(instance, swapped_rows)
                .expect("swapping two jobs keeps valid permutations");
            let warm = descend_keeping_pair(instance, warm, machine, job_a, job_b);
            let reversed = solve_fixed_arc(
                instance,
                &ArcConstraint::single(DisjunctiveArc {
                    machine,
                    first: second,
                    second: first,
                }),
                &BnbConfig {
                    incumbent_seed: Some(warm),
                    ..config.clone()
                },
            );
            let against = reversed.optimum_or_infinite().ok_or(Error::UnprovenEdge {
                machine,
                job_a,
                job_b,
            })?;
            let (forward, backward) = if a_first { (lmin, against) } else { (against, lmin) };
            Ok(EdgeOptima {
                machine,
                job_a,
                job_b,
                forward,
                backward,
            })
        })
        .collect();
    let edges: Vec<EdgeOptima> = edges.into_iter().collect::<Result<_>>()?;

    let total = edges.len().max(1);
    let mut counts = Vec::with_capacity(grid.len());
    let mut fractions = Vec::with_capacity(grid.len());
    for &rho in grid.values() {
        let c = edges.iter().filter(|e| e.in_backbone(rho, lmin)).count();
        counts.push(c);
        fractions.push(c as f64 / total as f64);
    }
    Ok(BackboneResult {
        lmin,
        edges,
        counts,
        fractions,
    })
}

/// Next-descent over adjacent transpositions that never touches the
/// relative order of `job_a` and `job_b` on `machine`, so the result still
/// contains the constrained arc. Used only to sharpen warm-start incumbents.
fn descend_keeping_pair(
    instance: &Instance,
    start: crate::core::MachineOrders,
    machine: usize,
    job_a: usize,
    job_b: usize,
) -> crate::core::MachineOrders {
    use crate::core::makespan_longest_path;
    let mut current = start;
    let Ok(mut best) = makespan_longest_path(instance, &current) else {
        return current;
    };
    'outer: loop {
        for mm in 0..instance.n_machines() {
            for pos in 0..instance.n_jobs().saturating_sub(1) {
                if mm == machine {
                    let row = current.order_on(mm);
                    let pair = (row[pos].min(row[pos + 1]), row[pos].max(row[pos + 1]));
                    if pair == (job_a, job_b) {
                        continue;
                    }
                }
                let flipped = current.swap_adjacent(mm, pos);
                if let Ok(ms) = makespan_longest_path(instance, &flipped) {
                    if ms < best {
                        best = ms;
                        current = flipped;
                        continue 'outer;
                    }
                }
            }
        }
        return current;
    }
}
