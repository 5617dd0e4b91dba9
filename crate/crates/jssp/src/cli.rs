//! Command line front end. Every subcommand is a thin adapter over the
//! library: parse flags, build a config, call one operation, write output.

use crate::core::{
    enumerate_optimum, schedule_from_orders, sequence_count, Instance, DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::exact::{solve_optimal, BnbConfig};
use crate::experiments::{
    parse_combos, parse_config, run_backbone_experiment, run_difficulty_experiment,
    run_distance_experiment, run_exactness_experiment, run_limit_theorem_tests,
    run_quality_experiment, ExperimentConfig,
};
use crate::generate::{derive_seed, random_instance, GenConfig};
use crate::landscape::{rho_backbone, sample_rho_distances, RhoGrid, SaConfig};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

#[derive(Parser)]
#[command(name = "jssp", version, about = "Job shop scheduling landscape analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Master seed (falls back to the JSSP_SEED environment variable, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file, or directory for multi-file commands (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Machine-readable JSON output where supported
    #[arg(long, global = true)]
    json: bool,

    /// Branch-and-bound node budget per solve
    #[arg(long, global = true)]
    limit_nodes: Option<u64>,

    /// Branch-and-bound wall-clock budget per solve, in seconds
    #[arg(long, global = true)]
    limit_seconds: Option<f64>,

    /// Worker threads for experiment parallelism (default: available cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args, Default)]
struct ExperimentFlags {
    /// Experiment config file (key=value lines or JSON)
    #[arg(long)]
    config: Option<PathBuf>,

    /// Comma-separated size list like "6x6,9x3"
    #[arg(long)]
    combos: Option<String>,

    /// Instances per combination
    #[arg(long)]
    instances: Option<usize>,

    /// Runs per instance (SA runs / descent starts)
    #[arg(long)]
    k: Option<usize>,

    /// Random schedules per instance (quality experiment)
    #[arg(long)]
    samples: Option<usize>,

    #[arg(long)]
    rho_min: Option<f64>,

    #[arg(long)]
    rho_max: Option<f64>,

    #[arg(long)]
    rho_step: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Write random instances in the text format
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        instances: usize,
    },
    /// Solve one instance file to proven optimality
    Solve { instance: PathBuf },
    /// ρ-backbone fractions (one instance file, or random instances per combo)
    Backbone {
        instance: Option<PathBuf>,
        #[command(flatten)]
        flags: ExperimentFlags,
    },
    /// Distances between SA-sampled ρ-optimal schedules
    Distance {
        instance: Option<PathBuf>,
        #[command(flatten)]
        flags: ExperimentFlags,
    },
    /// Neighborhood exactness via ball descent
    Exactness {
        instance: Option<PathBuf>,
        #[command(flatten)]
        flags: ExperimentFlags,
    },
    /// Random/descended/optimal schedule quality and per-ratio regressions
    Quality {
        #[command(flatten)]
        flags: ExperimentFlags,
    },
    /// Branch-and-bound node counts against search-space size
    Difficulty {
        #[command(flatten)]
        flags: ExperimentFlags,
    },
    /// Limit-theorem property fractions
    Limits {
        #[command(flatten)]
        flags: ExperimentFlags,
    },
    /// Brute-force equivalence sweeps for the solver and the backbone
    OracleCheck {
        #[command(flatten)]
        flags: ExperimentFlags,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(threads) = cli.threads {
        // a second configuration attempt in-process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn master_seed(cli: &Cli) -> Result<u64> {
    if let Some(seed) = cli.seed {
        return Ok(seed);
    }
    match std::env::var("JSSP_SEED") {
        Ok(v) => v
            .parse()
            .map_err(|_| Error::Parse(format!("JSSP_SEED is not a u64: '{v}'"))),
        Err(_) => Ok(0),
    }
}

fn bnb_config(cli: &Cli) -> BnbConfig {
    BnbConfig {
        node_limit: cli.limit_nodes,
        time_limit: cli.limit_seconds.map(Duration::from_secs_f64),
        incumbent_seed: None,
    }
}

fn experiment_config(cli: &Cli, flags: &ExperimentFlags) -> Result<ExperimentConfig> {
    let mut config = match &flags.config {
        Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(combos) = &flags.combos {
        config.combos = parse_combos(combos)?;
    }
    if let Some(v) = flags.instances {
        config.instances_per_combo = v;
    }
    if let Some(v) = flags.k {
        config.k = v;
    }
    if let Some(v) = flags.samples {
        config.samples_per_instance = v;
    }
    if flags.rho_min.is_some() || flags.rho_max.is_some() || flags.rho_step.is_some() {
        config.grid = RhoGrid::from_range(
            flags.rho_min.unwrap_or(1.0),
            flags.rho_max.unwrap_or(1.5),
            flags.rho_step.unwrap_or(0.01),
        )?;
    }
    config.master_seed = master_seed(cli)?;
    if cli.limit_nodes.is_some() {
        config.node_limit = cli.limit_nodes;
    }
    if cli.limit_seconds.is_some() {
        config.time_limit_seconds = cli.limit_seconds;
    }
    if config.instances_per_combo == 0 || config.k == 0 || config.samples_per_instance == 0 {
        return Err(Error::Validation("counts must be positive".into()));
    }
    Ok(config)
}

/// Writes to `--out` (joining a default file name when it is a directory),
/// or to stdout.
fn write_output(cli: &Cli, default_name: &str, content: &str) -> Result<()> {
    match resolve_out(cli, default_name) {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn resolve_out(cli: &Cli, default_name: &str) -> Option<PathBuf> {
    let out = cli.out.as_ref()?;
    if out.is_dir() || out.as_os_str().to_string_lossy().ends_with('/') {
        Some(out.join(default_name))
    } else {
        Some(out.to_path_buf())
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Gen { n, m, instances } => cmd_gen(cli, *n, *m, *instances),
        Command::Solve { instance } => cmd_solve(cli, instance),
        Command::Backbone { instance, flags } => match instance {
            Some(path) => cmd_backbone_single(cli, path, flags),
            None => {
                let csv = run_backbone_experiment(&experiment_config(cli, flags)?)?;
                write_output(cli, "backbone.csv", &csv)?;
                Ok(0)
            }
        },
        Command::Distance { instance, flags } => match instance {
            Some(path) => cmd_distance_single(cli, path, flags),
            None => {
                let csv = run_distance_experiment(&experiment_config(cli, flags)?)?;
                write_output(cli, "distance.csv", &csv)?;
                Ok(0)
            }
        },
        Command::Exactness { instance, flags } => match instance {
            Some(path) => cmd_exactness_single(cli, path, flags),
            None => {
                let csv = run_exactness_experiment(&experiment_config(cli, flags)?)?;
                write_output(cli, "exactness.csv", &csv)?;
                Ok(0)
            }
        },
        Command::Quality { flags } => {
            let (quality, slopes) = run_quality_experiment(&experiment_config(cli, flags)?)?;
            if cli.out.is_some() {
                write_output(cli, "quality.csv", &quality)?;
                // a plain-file --out gets slopes.csv written beside it
                let slopes_path = resolve_out(cli, "slopes.csv")
                    .expect("--out was provided")
                    .with_file_name("slopes.csv");
                std::fs::write(slopes_path, &slopes)?;
            } else {
                print!("{quality}");
                print!("{slopes}");
            }
            Ok(0)
        }
        Command::Difficulty { flags } => {
            let csv = run_difficulty_experiment(&experiment_config(cli, flags)?)?;
            write_output(cli, "difficulty.csv", &csv)?;
            Ok(0)
        }
        Command::Limits { flags } => {
            let report = run_limit_theorem_tests(&experiment_config(cli, flags)?)?;
            let content = if cli.json {
                let obj = serde_json::json!({
                    "two_job_certified": report.two_job_certified,
                    "two_machine_certified": report.two_machine_certified,
                    "random_ratio": report.random_ratio,
                    "delta_mean": report.delta_mean,
                });
                format!("{obj:#}\n")
            } else {
                report.to_text()
            };
            write_output(cli, "limits.txt", &content)?;
            Ok(0)
        }
        Command::OracleCheck { flags } => cmd_oracle_check(cli, flags),
    }
}

fn cmd_gen(cli: &Cli, n: usize, m: usize, instances: usize) -> Result<i32> {
    if n == 0 || m == 0 || instances == 0 {
        return Err(Error::Validation("n, m, instances must be positive".into()));
    }
    let master = master_seed(cli)?;
    for i in 0..instances {
        let seed = derive_seed(master, i as u64);
        let instance = random_instance(&GenConfig::new(n, m, seed))?;
        let (name, content) = if cli.json {
            (format!("jssp_{n}x{m}_{seed:016x}.json"), instance.to_json())
        } else {
            (format!("jssp_{n}x{m}_{seed:016x}.jsp"), instance.to_text())
        };
        match &cli.out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(name), content)?;
            }
            None => print!("{content}"),
        }
    }
    Ok(0)
}

fn cmd_solve(cli: &Cli, path: &Path) -> Result<i32> {
    let instance = Instance::load(path)?;
    let result = solve_optimal(&instance, &bnb_config(cli));
    let orders_rows = |orders: &crate::core::MachineOrders| -> Vec<Vec<usize>> {
        (0..orders.n_machines())
            .map(|m| orders.order_on(m).to_vec())
            .collect()
    };
    match (result.optimum(), result.witness()) {
        (Some(makespan), Some(witness)) => {
            let content = if cli.json {
                format!(
                    "{:#}\n",
                    serde_json::json!({
                        "makespan": makespan,
                        "proven": true,
                        "nodes_expanded": result.nodes_expanded,
                        "machine_orders": orders_rows(witness),
                    })
                )
            } else {
                let mut text = format!("optimum {makespan}\nnodes {}\n", result.nodes_expanded);
                for (machine, row) in orders_rows(witness).iter().enumerate() {
                    writeln!(
                        text,
                        "machine {machine}: {}",
                        row.iter()
                            .map(|j| j.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )
                    .expect("writing to a String cannot fail");
                }
                text
            };
            write_output(cli, "solution.txt", &content)?;
            Ok(0)
        }
        _ => {
            match result.witness() {
                Some(w) => {
                    let ms = schedule_from_orders(&instance, w)?.makespan();
                    eprintln!("unproven after {} nodes; best found {ms}", result.nodes_expanded);
                }
                None => eprintln!("unproven after {} nodes; no schedule found", result.nodes_expanded),
            }
            Ok(1)
        }
    }
}

fn single_grid(flags: &ExperimentFlags) -> Result<RhoGrid> {
    if flags.rho_min.is_some() || flags.rho_max.is_some() || flags.rho_step.is_some() {
        RhoGrid::from_range(
            flags.rho_min.unwrap_or(1.0),
            flags.rho_max.unwrap_or(1.5),
            flags.rho_step.unwrap_or(0.01),
        )
    } else {
        Ok(RhoGrid::default())
    }
}

fn cmd_backbone_single(cli: &Cli, path: &Path, flags: &ExperimentFlags) -> Result<i32> {
    let instance = Instance::load(path)?;
    let grid = single_grid(flags)?;
    let result = rho_backbone(&instance, &grid, &bnb_config(cli))?;
    let (n, m) = (instance.n_jobs(), instance.n_machines());
    let mut csv = String::from("combo,n,m,rho,mean_fraction,q25,q75,count\n");
    for (i, &rho) in grid.values().iter().enumerate() {
        let f = result.fractions[i];
        writeln!(csv, "{n}x{m},{n},{m},{rho:.6},{f:.6},{f:.6},{f:.6},1")
            .expect("writing to a String cannot fail");
    }
    write_output(cli, "backbone.csv", &csv)?;
    Ok(0)
}

fn cmd_distance_single(cli: &Cli, path: &Path, flags: &ExperimentFlags) -> Result<i32> {
    let instance = Instance::load(path)?;
    let grid = single_grid(flags)?;
    let k = flags.k.unwrap_or(4);
    let target = solve_optimal(&instance, &bnb_config(cli))
        .optimum()
        .ok_or(Error::LimitExceeded)?;
    let sa = SaConfig::new(master_seed(cli)?);
    let per_rho = sample_rho_distances(&instance, k, target, &grid, &sa)?;
    let (n, m) = (instance.n_jobs(), instance.n_machines());
    let edge_count = instance.disjunctive_edge_count() as f64;
    let mut csv = String::from("combo,n,m,rho,mean_norm_distance,q25,q75,count\n");
    for (i, &rho) in grid.values().iter().enumerate() {
        let samples: Vec<f64> = per_rho[i].iter().map(|&d| d as f64 / edge_count).collect();
        writeln!(
            csv,
            "{n}x{m},{n},{m},{rho:.6},{:.6},{:.6},{:.6},{}",
            crate::experiments::mean(&samples)?,
            crate::experiments::quantile(&samples, 0.25)?,
            crate::experiments::quantile(&samples, 0.75)?,
            samples.len()
        )
        .expect("writing to a String cannot fail");
    }
    write_output(cli, "distance.csv", &csv)?;
    Ok(0)
}

fn cmd_exactness_single(cli: &Cli, path: &Path, flags: &ExperimentFlags) -> Result<i32> {
    let instance = Instance::load(path)?;
    let k = flags.k.unwrap_or(4);
    let optimum = solve_optimal(&instance, &bnb_config(cli))
        .optimum()
        .ok_or(Error::LimitExceeded)?;
    let master = master_seed(cli)?;
    let records: Vec<_> = (0..k)
        .map(|j| {
            crate::landscape::exactness_run(
                &instance,
                optimum,
                derive_seed(master, j as u64),
                &bnb_config(cli),
            )
        })
        .collect::<Result<_>>()?;
    let (n, m) = (instance.n_jobs(), instance.n_machines());
    let edge_count = instance.disjunctive_edge_count();
    let mut csv = String::from("combo,n,m,norm_radius,exactness,count\n");
    for r in 1..=edge_count {
        let hits = records.iter().filter(|rec| rec.pairs[r - 1].1).count();
        writeln!(
            csv,
            "{n}x{m},{n},{m},{:.6},{:.6},{}",
            r as f64 / edge_count as f64,
            hits as f64 / records.len() as f64,
            records.len()
        )
        .expect("writing to a String cannot fail");
    }
    write_output(cli, "exactness.csv", &csv)?;
    Ok(0)
}

/// Checks the branch-and-bound optimum against full enumeration on small
/// random instances, and the backbone against its brute-force definition.
fn cmd_oracle_check(cli: &Cli, flags: &ExperimentFlags) -> Result<i32> {
    let master = master_seed(cli)?;
    let solver_instances = flags.instances.unwrap_or(200);
    let backbone_instances = flags.instances.unwrap_or(50).min(50);
    let mut failures = 0usize;

    let shapes = [(2usize, 2usize), (2, 3), (3, 2), (3, 3)];
    let mut checked = 0;
    'solver: for i in 0.. {
        for (si, &(n, m)) in shapes.iter().enumerate() {
            if checked >= solver_instances {
                break 'solver;
            }
            let seed = derive_seed(derive_seed(master, si as u64), i);
            let instance = random_instance(&GenConfig::new(n, m, seed))?;
            let exact = solve_optimal(&instance, &bnb_config(cli))
                .optimum()
                .ok_or(Error::LimitExceeded)?;
            let brute = enumerate_optimum(&instance, DEFAULT_ENUMERATION_CAP)?;
            if exact != brute {
                failures += 1;
                eprintln!("solver mismatch on {n}x{m} seed {seed}: {exact} vs {brute}");
            }
            checked += 1;
        }
    }
    println!(
        "solver-vs-enumeration: {}/{checked} agree",
        checked - failures
    );

    let grid = RhoGrid::from_range(1.0, 1.5, 0.1)?;
    let mut backbone_failures = 0usize;
    for i in 0..backbone_instances {
        let seed = derive_seed(derive_seed(master, 1000), i as u64);
        let instance = random_instance(&GenConfig::new(3, 3, seed))?;
        if !backbone_matches_brute_force(&instance, &grid, &bnb_config(cli))? {
            backbone_failures += 1;
            eprintln!("backbone mismatch on 3x3 seed {seed}");
        }
    }
    println!(
        "backbone-vs-enumeration: {}/{backbone_instances} agree",
        backbone_instances - backbone_failures
    );

    Ok(if failures + backbone_failures == 0 { 0 } else { 1 })
}

fn backbone_matches_brute_force(
    instance: &Instance,
    grid: &RhoGrid,
    bnb: &BnbConfig,
) -> Result<bool> {
    use crate::core::enumerate_all;
    let result = rho_backbone(instance, grid, bnb)?;
    let cap = sequence_count(instance.n_jobs(), instance.n_machines())
        .map(|c| c.max(DEFAULT_ENUMERATION_CAP))
        .unwrap_or(DEFAULT_ENUMERATION_CAP);
    let all = enumerate_all(instance, cap)?;
    let lmin = all.iter().map(|&(_, ms)| ms).min().unwrap();
    if lmin != result.lmin {
        return Ok(false);
    }
    let positions: Vec<Vec<Vec<usize>>> = all.iter().map(|(o, _)| o.positions()).collect();
    for (gi, &rho) in grid.values().iter().enumerate() {
        let cutoff = crate::landscape::rho_threshold(rho, lmin);
        let opt: Vec<&Vec<Vec<usize>>> = all
            .iter()
            .zip(&positions)
            .filter(|((_, ms), _)| *ms <= cutoff)
            .map(|(_, pos)| pos)
            .collect();
        let mut count = 0usize;
        for machine in 0..instance.n_machines() {
            for a in 0..instance.n_jobs() {
                for b in a + 1..instance.n_jobs() {
                    let first = opt[0][machine][a] < opt[0][machine][b];
                    if opt
                        .iter()
                        .all(|pos| (pos[machine][a] < pos[machine][b]) == first)
                    {
                        count += 1;
                    }
                }
            }
        }
        if count != result.counts[gi] {
            return Ok(false);
        }
    }
    Ok(true)
}
