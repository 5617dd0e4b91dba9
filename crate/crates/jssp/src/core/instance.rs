//! Problem representation and the instance file formats.
//!
//! An instance is `N` jobs, each visiting every one of `M` machines exactly
//! once. Two on-disk formats are supported: a Taillard/OR-Library style text
//! format and a JSON mirror of the same data.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One operation, addressed as step `step` of job `job`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationId {
    pub job: usize,
    pub step: usize,
}

impl OperationId {
    pub fn new(job: usize, step: usize) -> Self {
        OperationId { job, step }
    }
}

/// An N-by-M job shop instance.
///
/// `machine_of[k]` is a permutation of `0..M` giving the machine routing of
/// job `k`; `duration[k][i]` is the (strictly positive, integer) duration of
/// the i-th operation of job `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n_jobs: usize,
    n_machines: usize,
    machine_of: Vec<Vec<usize>>,
    duration: Vec<Vec<u64>>,
    /// step_on[k][m] = the step of job k that runs on machine m.
    step_on: Vec<Vec<usize>>,
}

impl Instance {
    pub fn new(machine_of: Vec<Vec<usize>>, duration: Vec<Vec<u64>>) -> Result<Self> {
        let n_jobs = machine_of.len();
        if n_jobs == 0 {
            return Err(Error::Validation("instance must have at least one job".into()));
        }
        if duration.len() != n_jobs {
            return Err(Error::Validation(format!(
                "machine rows ({}) and duration rows ({}) differ",
                n_jobs,
                duration.len()
            )));
        }
        let n_machines = machine_of[0].len();
        if n_machines == 0 {
            return Err(Error::Validation("instance must have at least one machine".into()));
        }
        let mut step_on = Vec::with_capacity(n_jobs);
        for (k, (machines, durs)) in machine_of.iter().zip(duration.iter()).enumerate() {
            if machines.len() != n_machines || durs.len() != n_machines {
                return Err(Error::Validation(format!(
                    "job {} has {} machines / {} durations, expected {}",
                    k,
                    machines.len(),
                    durs.len(),
                    n_machines
                )));
            }
            let mut steps = vec![usize::MAX; n_machines];
            for (i, &m) in machines.iter().enumerate() {
                if m >= n_machines {
                    return Err(Error::Validation(format!(
                        "job {} step {} names machine {} (valid: 0..{})",
                        k, i, m, n_machines
                    )));
                }
                if steps[m] != usize::MAX {
                    return Err(Error::Validation(format!(
                        "job {} visits machine {} more than once",
                        k, m
                    )));
                }
                steps[m] = i;
            }
            for (i, &d) in durs.iter().enumerate() {
                if d == 0 {
                    return Err(Error::Validation(format!(
                        "job {} step {} has zero duration",
                        k, i
                    )));
                }
            }
            step_on.push(steps);
        }
        Ok(Instance {
            n_jobs,
            n_machines,
            machine_of,
            duration,
            step_on,
        })
    }

    pub fn n_jobs(&self) -> usize {
        self.n_jobs
    }

    pub fn n_machines(&self) -> usize {
        self.n_machines
    }

    pub fn n_ops(&self) -> usize {
        self.n_jobs * self.n_machines
    }

    /// Machine of operation `(k, i)`.
    pub fn machine(&self, op: OperationId) -> usize {
        self.machine_of[op.job][op.step]
    }

    pub fn duration(&self, op: OperationId) -> u64 {
        self.duration[op.job][op.step]
    }

    /// Which step of job `k` runs on machine `m`.
    pub fn step_on_machine(&self, job: usize, machine: usize) -> usize {
        self.step_on[job][machine]
    }

    /// Total duration of job `k`.
    pub fn job_duration(&self, job: usize) -> u64 {
        self.duration[job].iter().sum()
    }

    /// Total duration of all operations on machine `m`.
    pub fn machine_workload(&self, machine: usize) -> u64 {
        (0..self.n_jobs)
            .map(|k| self.duration[k][self.step_on[k][machine]])
            .sum()
    }

    pub fn ops(&self) -> impl Iterator<Item = OperationId> + '_ {
        (0..self.n_jobs)
            .flat_map(move |k| (0..self.n_machines).map(move |i| OperationId::new(k, i)))
    }

    /// Number of disjunctive edges, M*C(N,2).
    pub fn disjunctive_edge_count(&self) -> usize {
        disjunctive_edge_count(self.n_jobs, self.n_machines)
    }

    pub fn contains(&self, op: OperationId) -> bool {
        op.job < self.n_jobs && op.step < self.n_machines
    }

    /// Parse the text format: first line `N M`, then N lines of M
    /// whitespace-separated `machine duration` pairs (machines 0-indexed).
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut tokens = input
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("not an integer: {:?}", t)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter();
        let n = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty instance file".into()))?;
        let m = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing machine count".into()))?;
        if n <= 0 || m <= 0 {
            return Err(Error::Parse(format!("bad dimensions {} {}", n, m)));
        }
        // cap dimensions so a hostile header cannot drive huge allocations
        if n > 10_000 || m > 10_000 || n.checked_mul(m).is_none_or(|p| p > 4_000_000) {
            return Err(Error::Parse(format!("dimensions too large: {} {}", n, m)));
        }
        let (n, m) = (n as usize, m as usize);
        let mut machine_of = Vec::with_capacity(n);
        let mut duration = Vec::with_capacity(n);
        for k in 0..n {
            let mut machines = Vec::with_capacity(m);
            let mut durs = Vec::with_capacity(m);
            for i in 0..m {
                let mach = tokens.next().ok_or_else(|| {
                    Error::Parse(format!("job {} step {}: missing machine", k, i))
                })?;
                let dur = tokens.next().ok_or_else(|| {
                    Error::Parse(format!("job {} step {}: missing duration", k, i))
                })?;
                if mach < 0 {
                    return Err(Error::Parse(format!("negative machine index {}", mach)));
                }
                if dur <= 0 {
                    return Err(Error::Parse(format!("non-positive duration {}", dur)));
                }
                machines.push(mach as usize);
                durs.push(dur as u64);
            }
            machine_of.push(machines);
            duration.push(durs);
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing data after last job".into()));
        }
        Instance::new(machine_of, duration)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n_jobs, self.n_machines);
        for k in 0..self.n_jobs {
            let line: Vec<String> = (0..self.n_machines)
                .map(|i| format!("{} {}", self.machine_of[k][i], self.duration[k][i]))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the JSON mirror: `{n_jobs, n_machines, jobs: [[[m, d], ...], ...]}`.
    pub fn parse_json(input: &str) -> Result<Self> {
        let raw: InstanceJson = serde_json::from_str(input)?;
        let mut machine_of = Vec::with_capacity(raw.jobs.len());
        let mut duration = Vec::with_capacity(raw.jobs.len());
        for job in &raw.jobs {
            machine_of.push(job.iter().map(|&(m, _)| m).collect());
            duration.push(job.iter().map(|&(_, d)| d).collect());
        }
        let inst = Instance::new(machine_of, duration)?;
        if inst.n_jobs != raw.n_jobs || inst.n_machines != raw.n_machines {
            return Err(Error::Parse(format!(
                "declared shape {}x{} does not match jobs array {}x{}",
                raw.n_jobs, raw.n_machines, inst.n_jobs, inst.n_machines
            )));
        }
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        let raw = InstanceJson {
            n_jobs: self.n_jobs,
            n_machines: self.n_machines,
            jobs: (0..self.n_jobs)
                .map(|k| {
                    (0..self.n_machines)
                        .map(|i| (self.machine_of[k][i], self.duration[k][i]))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("instance serializes")
    }

    /// Load from a file; `.json` extension selects the JSON mirror.
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e == "json") {
            Instance::parse_json(&text)
        } else {
            Instance::parse_text(&text)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    n_jobs: usize,
    n_machines: usize,
    jobs: Vec<Vec<(usize, u64)>>,
}

/// M*C(N,2), the number of disjunctive edges of an N-by-M instance.
pub fn disjunctive_edge_count(n_jobs: usize, n_machines: usize) -> usize {
    n_machines * n_jobs * n_jobs.saturating_sub(1) / 2
}

/// log2 of the orientation-count expression `2^(N*C(M,2))` used for the
/// difficulty curves' x-axis. Note this counts per-job step pairs, not
/// disjunctive edges; both expressions are exposed deliberately.
pub fn search_space_log2(n_jobs: usize, n_machines: usize) -> u64 {
    (n_jobs * n_machines * n_machines.saturating_sub(1) / 2) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::fixtures::i22;

    #[test]
    fn i22_shape() {
        let inst = i22();
        assert_eq!(inst.n_jobs(), 2);
        assert_eq!(inst.n_machines(), 2);
        assert_eq!(inst.duration(OperationId::new(0, 0)), 3);
        assert_eq!(inst.machine(OperationId::new(1, 1)), 0);
        assert_eq!(inst.job_duration(0), 5);
        assert_eq!(inst.job_duration(1), 6);
        assert_eq!(inst.machine_workload(0), 7);
        assert_eq!(inst.machine_workload(1), 4);
    }

    #[test]
    fn text_round_trip() {
        let inst = i22();
        let txt = inst.to_text();
        assert_eq!(Instance::parse_text(&txt).unwrap(), inst);
    }

    #[test]
    fn json_round_trip() {
        let inst = i22();
        assert_eq!(Instance::parse_json(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn rejects_repeated_machine() {
        let err = Instance::new(vec![vec![0, 0]], vec![vec![1, 1]]);
        assert!(matches!(err, Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_zero_duration() {
        let err = Instance::new(vec![vec![0, 1]], vec![vec![1, 0]]);
        assert!(matches!(err, Err(Error::Validation(_))));
    }

    #[test]
    fn parse_rejects_truncated_input() {
        assert!(Instance::parse_text("2 2\n0 3 1 2\n1 2").is_err());
        assert!(Instance::parse_text("").is_err());
        assert!(Instance::parse_text("1 1\n0 5\n7").is_err());
    }

    #[test]
    fn edge_counts() {
        assert_eq!(disjunctive_edge_count(2, 2), 2);
        assert_eq!(disjunctive_edge_count(6, 6), 90);
        assert_eq!(disjunctive_edge_count(1, 5), 0);
        assert_eq!(search_space_log2(6, 6), 90);
        assert_eq!(search_space_log2(2, 3), 6);
    }
}
