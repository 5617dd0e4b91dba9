//! The experiment runners. Each one maps a master seed to deterministic CSV:
//! instances get seeds derived from (master seed, combo index, instance
//! index), instance pipelines run in parallel, and aggregation is an ordered
//! reduction, so serial and parallel runs produce identical bytes.

use super::stats::{least_squares, mean, quantile};
use super::ExperimentConfig;
use crate::core::{build_schedule, Instance};
use crate::error::{Error, Result};
use crate::exact::{lower_bound, solve_optimal, BnbConfig};
use crate::generate::{
    derive_seed, random_instance, random_sequence, schedule_by_rule, GenConfig, PriorityRule,
};
use crate::landscape::{
    exactness_run, next_descent_n1, rho_backbone, sample_rho_distances, SaConfig,
};
use rayon::prelude::*;
use std::fmt::Write as _;

fn combo_label(n: usize, m: usize) -> String {
    format!("{n}x{m}")
}

fn instance_seed(config: &ExperimentConfig, combo_idx: usize, i: usize) -> u64 {
    derive_seed(derive_seed(config.master_seed, combo_idx as u64), i as u64)
}

/// Runs `f` on every instance of one combo in parallel and splits the
/// results from the failures, preserving instance order.
fn per_instance<T: Send>(
    config: &ExperimentConfig,
    combo_idx: usize,
    n: usize,
    m: usize,
    f: impl Fn(&Instance, u64) -> Result<T> + Sync,
) -> (Vec<T>, usize) {
    let results: Vec<Result<T>> = (0..config.instances_per_combo)
        .into_par_iter()
        .map(|i| {
            let seed = instance_seed(config, combo_idx, i);
            let instance = random_instance(&GenConfig::new(n, m, seed))?;
            f(&instance, seed)
        })
        .collect();
    let mut ok = Vec::new();
    let mut excluded = 0;
    for r in results {
        match r {
            Ok(v) => ok.push(v),
            Err(_) => excluded += 1,
        }
    }
    (ok, excluded)
}

fn report_exclusions(label: &str, combo: &str, excluded: usize) {
    if excluded > 0 {
        eprintln!("{label}: {combo}: excluded {excluded} instance(s) (solver/SA limits)");
    }
}

/// Mean ρ-backbone fraction per ρ per combo, with 0.25/0.75 quantiles taken
/// across the per-instance fractions.
pub fn run_backbone_experiment(config: &ExperimentConfig) -> Result<String> {
    let mut csv = String::from("combo,n,m,rho,mean_fraction,q25,q75,count\n");
    for (combo_idx, &(n, m)) in config.combos.iter().enumerate() {
        let combo = combo_label(n, m);
        let (fractions, excluded) = per_instance(config, combo_idx, n, m, |instance, _| {
            Ok(rho_backbone(instance, &config.grid, &config.bnb())?.fractions)
        });
        report_exclusions("backbone", &combo, excluded);
        if fractions.is_empty() {
            continue;
        }
        for (ri, &rho) in config.grid.values().iter().enumerate() {
            let samples: Vec<f64> = fractions.iter().map(|f| f[ri]).collect();
            writeln!(
                csv,
                "{combo},{n},{m},{rho:.6},{:.6},{:.6},{:.6},{}",
                mean(&samples)?,
                quantile(&samples, 0.25)?,
                quantile(&samples, 0.75)?,
                samples.len()
            )
            .expect("writing to a String cannot fail");
        }
    }
    Ok(csv)
}

/// Mean normalized distance between SA first-hit schedules per ρ per combo.
/// Distances are normalized by the edge count M·C(N,2); the per-instance
/// mean over C(k,2) pairs is computed first, quantiles are across instances.
pub fn run_distance_experiment(config: &ExperimentConfig) -> Result<String> {
    if config.k < 2 {
        return Err(Error::Validation("distance experiment needs k >= 2".into()));
    }
    let mut csv = String::from("combo,n,m,rho,mean_norm_distance,q25,q75,count\n");
    for (combo_idx, &(n, m)) in config.combos.iter().enumerate() {
        let combo = combo_label(n, m);
        let edge_count = crate::core::disjunctive_edge_count(n, m) as f64;
        let (means, excluded) = per_instance(config, combo_idx, n, m, |instance, seed| {
            let target = solve_optimal(instance, &config.bnb())
                .optimum()
                .ok_or(Error::LimitExceeded)?;
            let sa = SaConfig::new(derive_seed(seed, 1));
            let per_rho =
                sample_rho_distances(instance, config.k, target, &config.grid, &sa)?;
            per_rho
                .iter()
                .map(|d| {
                    let raw: Vec<f64> = d.iter().map(|&x| x as f64 / edge_count).collect();
                    mean(&raw)
                })
                .collect::<Result<Vec<f64>>>()
        });
        report_exclusions("distance", &combo, excluded);
        if means.is_empty() {
            continue;
        }
        for (ri, &rho) in config.grid.values().iter().enumerate() {
            let samples: Vec<f64> = means.iter().map(|v| v[ri]).collect();
            writeln!(
                csv,
                "{combo},{n},{m},{rho:.6},{:.6},{:.6},{:.6},{}",
                mean(&samples)?,
                quantile(&samples, 0.25)?,
                quantile(&samples, 0.75)?,
                samples.len()
            )
            .expect("writing to a String cannot fail");
        }
    }
    Ok(csv)
}

/// Pooled neighborhood exactness per radius per combo: the fraction of
/// (instance, start) runs whose ball descent at radius r reached a global
/// optimum, with r reported normalized by the edge count.
pub fn run_exactness_experiment(config: &ExperimentConfig) -> Result<String> {
    let mut csv = String::from("combo,n,m,norm_radius,exactness,count\n");
    for (combo_idx, &(n, m)) in config.combos.iter().enumerate() {
        let combo = combo_label(n, m);
        let edge_count = crate::core::disjunctive_edge_count(n, m);
        let (records, excluded) = per_instance(config, combo_idx, n, m, |instance, seed| {
            let optimum = solve_optimal(instance, &config.bnb())
                .optimum()
                .ok_or(Error::LimitExceeded)?;
            (0..config.k)
                .map(|j| {
                    exactness_run(instance, optimum, derive_seed(seed, 1 + j as u64), &config.bnb())
                })
                .collect::<Result<Vec<_>>>()
        });
        report_exclusions("exactness", &combo, excluded);
        let pooled: Vec<_> = records.into_iter().flatten().collect();
        if pooled.is_empty() {
            continue;
        }
        for r in 1..=edge_count {
            let hits = pooled.iter().filter(|rec| rec.pairs[r - 1].1).count();
            writeln!(
                csv,
                "{combo},{n},{m},{:.6},{:.6},{}",
                r as f64 / edge_count as f64,
                hits as f64 / pooled.len() as f64,
                pooled.len()
            )
            .expect("writing to a String cannot fail");
        }
    }
    Ok(csv)
}

struct QualityInstance {
    mean_random: f64,
    mean_descended: f64,
    optimum: Option<f64>,
    bound: f64,
}

struct QualityCombo {
    n: usize,
    m: usize,
    mean_a: f64,
    mean_b: f64,
    mean_c: Option<f64>,
    mean_d: f64,
}

fn opt_field(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

/// Per-combo schedule-quality summary — (A) mean random-schedule makespan,
/// (B) mean makespan after single-flip next-descent from the same starts,
/// (C) mean proven optimum, (D) mean lower bound — plus, for each
/// job-to-machine ratio shared by at least two combos, the least-squares
/// fit of mean (A)/(B)/(C) against mean (D). Returns (quality, slopes) CSV.
pub fn run_quality_experiment(config: &ExperimentConfig) -> Result<(String, String)> {
    let mut quality = String::from(
        "combo,n,m,ratio,mean_A,mean_B,mean_C,mean_D,q25_A,q75_A,q25_B,q75_B,q25_C,q75_C,q25_D,q75_D,count\n",
    );
    let mut per_combo = Vec::new();
    for (combo_idx, &(n, m)) in config.combos.iter().enumerate() {
        let combo = combo_label(n, m);
        let (rows, excluded) = per_instance(config, combo_idx, n, m, |instance, seed| {
            let mut randoms = Vec::with_capacity(config.samples_per_instance);
            let mut descended = Vec::with_capacity(config.samples_per_instance);
            for s in 0..config.samples_per_instance {
                let start = build_schedule(
                    instance,
                    &random_sequence(instance, derive_seed(seed, 1 + s as u64)),
                );
                randoms.push(start.makespan() as f64);
                descended.push(next_descent_n1(instance, &start).makespan() as f64);
            }
            let optimum = solve_optimal(instance, &config.bnb())
                .optimum()
                .map(|v| v as f64);
            Ok(QualityInstance {
                mean_random: mean(&randoms)?,
                mean_descended: mean(&descended)?,
                optimum,
                bound: lower_bound(instance) as f64,
            })
        });
        report_exclusions("quality", &combo, excluded);
        if rows.is_empty() {
            continue;
        }
        let a: Vec<f64> = rows.iter().map(|r| r.mean_random).collect();
        let b: Vec<f64> = rows.iter().map(|r| r.mean_descended).collect();
        let c: Vec<f64> = rows.iter().filter_map(|r| r.optimum).collect();
        let d: Vec<f64> = rows.iter().map(|r| r.bound).collect();
        let mean_c = if c.is_empty() { None } else { Some(mean(&c)?) };
        writeln!(
            quality,
            "{combo},{n},{m},{:.6},{:.6},{:.6},{},{:.6},{:.6},{:.6},{:.6},{:.6},{},{},{:.6},{:.6},{}",
            n as f64 / m as f64,
            mean(&a)?,
            mean(&b)?,
            opt_field(mean_c),
            mean(&d)?,
            quantile(&a, 0.25)?,
            quantile(&a, 0.75)?,
            quantile(&b, 0.25)?,
            quantile(&b, 0.75)?,
            opt_field(if c.is_empty() { None } else { Some(quantile(&c, 0.25)?) }),
            opt_field(if c.is_empty() { None } else { Some(quantile(&c, 0.75)?) }),
            quantile(&d, 0.25)?,
            quantile(&d, 0.75)?,
            rows.len()
        )
        .expect("writing to a String cannot fail");
        per_combo.push(QualityCombo {
            n,
            m,
            mean_a: mean(&a)?,
            mean_b: mean(&b)?,
            mean_c,
            mean_d: mean(&d)?,
        });
    }

    let mut slopes = String::from("ratio,quantity,slope,intercept,r_squared\n");
    // group by the reduced fraction n/m so float noise cannot split a ratio
    let mut ratios: Vec<(usize, usize)> = per_combo
        .iter()
        .map(|c| {
            let g = gcd(c.n, c.m);
            (c.n / g, c.m / g)
        })
        .collect();
    ratios.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    ratios.dedup();
    for (rn, rm) in ratios {
        let group: Vec<&QualityCombo> = per_combo
            .iter()
            .filter(|c| c.n * rm == c.m * rn)
            .collect();
        if group.len() < 2 {
            continue;
        }
        let ratio = rn as f64 / rm as f64;
        let quantities: [(&str, Vec<(f64, f64)>); 3] = [
            ("A", group.iter().map(|c| (c.mean_d, c.mean_a)).collect()),
            ("B", group.iter().map(|c| (c.mean_d, c.mean_b)).collect()),
            (
                "C",
                group
                    .iter()
                    .filter_map(|c| c.mean_c.map(|v| (c.mean_d, v)))
                    .collect(),
            ),
        ];
        for (name, points) in quantities {
            if points.len() < 2 {
                continue;
            }
            let fit = least_squares(&points)?;
            writeln!(
                slopes,
                "{ratio:.6},{name},{:.6},{:.6},{:.6}",
                fit.slope, fit.intercept, fit.r_squared
            )
            .expect("writing to a String cannot fail");
        }
    }
    Ok((quality, slopes))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// 90th-percentile branch-and-bound node count per combo, against the
/// log10 of the 2^{N·C(M,2)} search-space size expression.
pub fn run_difficulty_experiment(config: &ExperimentConfig) -> Result<String> {
    let mut csv = String::from("combo,n,m,log10_size,p90_nodes,count\n");
    for (combo_idx, &(n, m)) in config.combos.iter().enumerate() {
        let combo = combo_label(n, m);
        let (nodes, excluded) = per_instance(config, combo_idx, n, m, |instance, _| {
            let result = solve_optimal(instance, &config.bnb());
            if result.proven() {
                Ok(result.nodes_expanded as f64)
            } else {
                Err(Error::LimitExceeded)
            }
        });
        report_exclusions("difficulty", &combo, excluded);
        if nodes.is_empty() {
            continue;
        }
        let log10_size = crate::core::search_space_log2(n, m) as f64 * 2f64.log10();
        writeln!(
            csv,
            "{combo},{n},{m},{log10_size:.6},{:.0},{}",
            quantile(&nodes, 0.9)?,
            nodes.len()
        )
        .expect("writing to a String cannot fail");
    }
    Ok(csv)
}

/// Measured fractions for the limit-theorem directions.
#[derive(Debug, Clone)]
pub struct LimitReport {
    /// N=2: per M, fraction of instances where the longest-job-first rule
    /// certifies optimality (its makespan equals the max job duration).
    pub two_job_certified: Vec<(usize, f64)>,
    /// M=2: per N, fraction where the step-interleaving rule certifies
    /// optimality (its makespan equals the job/workload lower bound).
    pub two_machine_certified: Vec<(usize, f64)>,
    /// Mean ℓ(random schedule)/ℓ_min per combo, with exclusion counts.
    pub random_ratio: Vec<((usize, usize), f64, usize)>,
    /// N=2, identity-permutation rule: per M, mean over jobs of the job's
    /// final completion minus its total duration (should stay bounded in M).
    pub delta_mean: Vec<(usize, f64)>,
}

impl LimitReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(m, frac) in &self.two_job_certified {
            writeln!(out, "two_job_certified m={m} fraction={frac:.4}").unwrap();
        }
        for &(n, frac) in &self.two_machine_certified {
            writeln!(out, "two_machine_certified n={n} fraction={frac:.4}").unwrap();
        }
        for &((n, m), ratio, excluded) in &self.random_ratio {
            writeln!(out, "random_ratio combo={n}x{m} mean={ratio:.4} excluded={excluded}").unwrap();
        }
        for &(m, delta) in &self.delta_mean {
            writeln!(out, "delta_mean m={m} mean={delta:.4}").unwrap();
        }
        out
    }
}

/// Certified-optimality fractions along the many-machines (N=2) and
/// many-jobs (M=2) limit directions, mean random-schedule approximation
/// ratios at the extreme and square combos, and the two-job slack statistic.
pub fn run_limit_theorem_tests(config: &ExperimentConfig) -> Result<LimitReport> {
    let instances = config.instances_per_combo;
    let fraction_where = |n: usize, m: usize, salt: u64, pred: &(dyn Fn(&Instance) -> bool + Sync)| {
        let hits: usize = (0..instances)
            .into_par_iter()
            .filter(|&i| {
                let seed = derive_seed(derive_seed(config.master_seed, salt), i as u64);
                let instance = random_instance(&GenConfig::new(n, m, seed)).unwrap();
                pred(&instance)
            })
            .count();
        hits as f64 / instances as f64
    };

    let mut two_job_certified = Vec::new();
    for (idx, &m) in [5usize, 10, 20, 40].iter().enumerate() {
        let frac = fraction_where(2, m, 100 + idx as u64, &|instance| {
            let max_job = (0..2).map(|j| instance.job_duration(j)).max().unwrap();
            schedule_by_rule(instance, &PriorityRule::Pi0).makespan() == max_job
        });
        two_job_certified.push((m, frac));
    }

    let mut two_machine_certified = Vec::new();
    for (idx, &n) in [10usize, 20, 40, 60].iter().enumerate() {
        let frac = fraction_where(n, 2, 200 + idx as u64, &|instance| {
            schedule_by_rule(instance, &PriorityRule::PiInf).makespan() == lower_bound(instance)
        });
        two_machine_certified.push((n, frac));
    }

    // fall back to a bounded search when no rule certifies the optimum
    let ratio_bnb = BnbConfig {
        node_limit: Some(config.node_limit.unwrap_or(1_000_000)),
        ..config.bnb()
    };
    let mut random_ratio = Vec::new();
    for (idx, &(n, m)) in [(2usize, 2usize), (2, 40), (60, 2)].iter().enumerate() {
        let ratios: Vec<Option<f64>> = (0..instances)
            .into_par_iter()
            .map(|i| {
                let seed = derive_seed(derive_seed(config.master_seed, 300 + idx as u64), i as u64);
                let instance = random_instance(&GenConfig::new(n, m, seed)).unwrap();
                let bound = lower_bound(&instance);
                let certified = [PriorityRule::Pi0, PriorityRule::PiInf]
                    .iter()
                    .map(|rule| schedule_by_rule(&instance, rule).makespan())
                    .find(|&ms| ms == bound);
                let lmin = certified.or_else(|| solve_optimal(&instance, &ratio_bnb).optimum())?;
                let random =
                    build_schedule(&instance, &random_sequence(&instance, derive_seed(seed, 1)));
                Some(random.makespan() as f64 / lmin as f64)
            })
            .collect();
        let ok: Vec<f64> = ratios.iter().flatten().copied().collect();
        let excluded = instances - ok.len();
        random_ratio.push(((n, m), mean(&ok)?, excluded));
    }

    let mut delta_mean = Vec::new();
    for (idx, &m) in [10usize, 20, 40, 80].iter().enumerate() {
        let deltas: Vec<f64> = (0..instances)
            .into_par_iter()
            .map(|i| {
                let seed = derive_seed(derive_seed(config.master_seed, 400 + idx as u64), i as u64);
                let instance = random_instance(&GenConfig::new(2, m, seed)).unwrap();
                let identity: Vec<usize> = (0..m).collect();
                let schedule = schedule_by_rule(&instance, &PriorityRule::Permuted(identity));
                (0..2)
                    .map(|job| {
                        let last = crate::core::OperationId::new(job, m - 1);
                        (schedule.completion(&instance, last) - instance.job_duration(job)) as f64
                    })
                    .sum::<f64>()
                    / 2.0
            })
            .collect();
        delta_mean.push((m, mean(&deltas)?));
    }

    Ok(LimitReport {
        two_job_certified,
        two_machine_certified,
        random_ratio,
        delta_mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> ExperimentConfig {
        ExperimentConfig {
            combos: vec![(3, 2), (3, 3)],
            instances_per_combo: 4,
            k: 2,
            samples_per_instance: 5,
            grid: crate::landscape::RhoGrid::new(vec![1.0, 1.2, 1.5]).unwrap(),
            master_seed: 7,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn backbone_csv_shape_and_monotonicity() {
        let csv = run_backbone_experiment(&tiny_config()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "combo,n,m,rho,mean_fraction,q25,q75,count");
        assert_eq!(lines.len(), 1 + 2 * 3);
        let means: Vec<f64> = lines[1..4]
            .iter()
            .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
            .collect();
        assert!(means[0] >= means[1] && means[1] >= means[2]);
        for line in &lines[1..] {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 8);
            assert_eq!(fields.last().unwrap(), &"4");
        }
    }

    #[test]
    fn distance_csv_shape_and_bounds() {
        let csv = run_distance_experiment(&tiny_config()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "combo,n,m,rho,mean_norm_distance,q25,q75,count");
        for line in &lines[1..] {
            let v: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn exactness_csv_monotone_and_ends_at_one() {
        let csv = run_exactness_experiment(&tiny_config()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "combo,n,m,norm_radius,exactness,count");
        let mut prev: Option<(String, f64)> = None;
        for line in &lines[1..] {
            let fields: Vec<&str> = line.split(',').collect();
            let combo = fields[0].to_string();
            let value: f64 = fields[4].parse().unwrap();
            if let Some((prev_combo, prev_value)) = &prev {
                if *prev_combo == combo {
                    assert!(value >= *prev_value);
                }
            }
            prev = Some((combo, value));
        }
        // the last radius of each combo is the full ball: exactness 1
        let last_per_combo: Vec<f64> = ["3x2", "3x3"]
            .iter()
            .map(|c| {
                lines[1..]
                    .iter()
                    .filter(|l| l.starts_with(&format!("{c},")))
                    .next_back()
                    .unwrap()
                    .split(',')
                    .nth(4)
                    .unwrap()
                    .parse()
                    .unwrap()
            })
            .collect();
        assert_eq!(last_per_combo, vec![1.0, 1.0]);
    }

    #[test]
    fn quality_bounds_hold() {
        let (quality, _) = run_quality_experiment(&tiny_config()).unwrap();
        let lines: Vec<&str> = quality.lines().collect();
        assert!(lines[0].starts_with("combo,n,m,ratio,mean_A,mean_B,mean_C,mean_D"));
        for line in &lines[1..] {
            let fields: Vec<&str> = line.split(',').collect();
            let a: f64 = fields[4].parse().unwrap();
            let b: f64 = fields[5].parse().unwrap();
            let c: f64 = fields[6].parse().unwrap();
            let d: f64 = fields[7].parse().unwrap();
            assert!(d <= c && c <= b && b <= a);
        }
    }

    #[test]
    fn quality_slopes_need_shared_ratio() {
        let (_, slopes) = run_quality_experiment(&tiny_config()).unwrap();
        // 3x2 and 3x3 have different ratios: header only
        assert_eq!(slopes.lines().count(), 1);

        let config = ExperimentConfig {
            combos: vec![(2, 2), (3, 3)],
            ..tiny_config()
        };
        let (_, slopes) = run_quality_experiment(&config).unwrap();
        let lines: Vec<&str> = slopes.lines().collect();
        assert_eq!(lines[0], "ratio,quantity,slope,intercept,r_squared");
        assert_eq!(lines.len(), 4); // quantities A, B, C at ratio 1
        assert!(lines[1].starts_with("1.000000,A,"));
    }

    #[test]
    fn difficulty_csv_shape() {
        let csv = run_difficulty_experiment(&tiny_config()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "combo,n,m,log10_size,p90_nodes,count");
        assert_eq!(lines.len(), 3);
        // log10(2^{N·C(M,2)}): 3·1·log10(2) and 3·3·log10(2)
        let l1: f64 = lines[1].split(',').nth(3).unwrap().parse().unwrap();
        assert!((l1 - 3.0 * 2f64.log10()).abs() < 1e-6);
    }

    #[test]
    fn single_job_difficulty_is_constant() {
        let config = ExperimentConfig {
            combos: vec![(1, 4)],
            ..tiny_config()
        };
        let csv = run_difficulty_experiment(&config).unwrap();
        let p90: f64 = csv.lines().nth(1).unwrap().split(',').nth(4).unwrap().parse().unwrap();
        assert_eq!(p90, 1.0);
    }

    #[test]
    fn experiments_are_deterministic() {
        let config = tiny_config();
        assert_eq!(
            run_backbone_experiment(&config).unwrap(),
            run_backbone_experiment(&config).unwrap()
        );
        assert_eq!(
            run_distance_experiment(&config).unwrap(),
            run_distance_experiment(&config).unwrap()
        );
        assert_eq!(
            run_exactness_experiment(&config).unwrap(),
            run_exactness_experiment(&config).unwrap()
        );
        assert_eq!(
            run_quality_experiment(&config).unwrap(),
            run_quality_experiment(&config).unwrap()
        );
        assert_eq!(
            run_difficulty_experiment(&config).unwrap(),
            run_difficulty_experiment(&config).unwrap()
        );
    }

    #[test]
    fn limit_report_trivial_directions() {
        let config = ExperimentConfig {
            instances_per_combo: 20,
            master_seed: 3,
            ..ExperimentConfig::default()
        };
        let report = run_limit_theorem_tests(&config).unwrap();
        assert_eq!(report.two_job_certified.len(), 4);
        assert_eq!(report.two_machine_certified.len(), 4);
        for &(_, frac) in report
            .two_job_certified
            .iter()
            .chain(&report.two_machine_certified)
        {
            assert!((0.0..=1.0).contains(&frac));
        }
        for &(_, ratio, _) in &report.random_ratio {
            assert!(ratio >= 1.0);
        }
        let text = report.to_text();
        assert!(text.contains("two_job_certified m=40"));
        assert!(text.contains("random_ratio combo=60x2"));
    }
}
