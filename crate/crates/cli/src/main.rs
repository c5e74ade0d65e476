use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dcm_core::exec::Executor;
use dcm_core::experiments::{
    generate_degrees, instance, parse_model_spec, plan_regime, render_svg, run_profile_experiment,
    sample_typical_start, ExperimentConfig, RunOptions, StartMode, CSV_HEADER,
};
use dcm_core::regularity::check_conditions;
use dcm_core::verify::{run_verification_suite, Mutations};
use dcm_core::walk::{exact_reset_law, run_joint_traced, run_modified, ResetSampler, ResetSet};
use dcm_core::{DegreeMode, DegreeSequence};

#[derive(Parser)]
#[command(name = "dcm", version, about = "Random walks on dynamically rewired configuration models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Minimum degree 2.
    R,
    /// Minimum degree 3 and the moment conditions of the dynamic setting.
    Rstar,
}

impl From<Mode> for DegreeMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::R => DegreeMode::R,
            Mode::Rstar => DegreeMode::RStar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mutation {
    DropPairingFactor,
    WalkThenRewire,
}

#[derive(Subcommand)]
enum Command {
    /// Report degree statistics and regularity conditions.
    Check {
        /// A file with one degree per line, or a model such as
        /// "bivalued n=10000 d1=3 d2=4".
        target: String,
        #[arg(long, value_enum, default_value = "rstar")]
        mode: Mode,
        /// Seed for random degree models.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run one trajectory of the joint chain and print it.
    Simulate {
        /// Degree file or model description.
        #[arg(long)]
        degrees: String,
        /// Edges rewired per step (0 for a static graph).
        #[arg(long, conflicts_with = "alpha")]
        k: Option<usize>,
        /// Fraction of edges rewired per step.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        steps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print which half-edges each step rewired.
        #[arg(long)]
        trace: bool,
        /// Run the resetting walk on a static graph instead, jumping
        /// uniformly at these times (comma separated).
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["k", "alpha", "trace"])]
        resets: Option<Vec<u32>>,
    },
    /// Estimate mixing profiles as configured and write CSV.
    Profile {
        #[arg(long)]
        config: PathBuf,
        /// Output path; overrides `out` in the config. Standard output if
        /// neither is given.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a line chart to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        /// Draw a new initial configuration and half-edge for every replica
        /// instead of sharing one typical start.
        #[arg(long)]
        fresh_starts: bool,
    },
    /// Run the exhaustive small-instance checks.
    Exact {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Inject a defect to see the checks fail.
        #[arg(long, value_enum)]
        mutate: Option<Mutation>,
    },
    /// Print the law of rewiring histories along a self-avoiding path.
    ResetLaw {
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: u32,
        /// Also estimate the law by exploration with this many samples.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load_degrees(target: &str, seed: u64) -> Result<DegreeSequence> {
    let path = Path::new(target);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {target}"))?;
        return Ok(DegreeSequence::from_text(&text, DegreeMode::R)?);
    }
    let (model, n) = parse_model_spec(target)
        .with_context(|| format!("{target:?} is neither a file nor a model description"))?;
    Ok(generate_degrees(&model, n, &mut ChaCha8Rng::seed_from_u64(seed))?)
}

fn check(target: &str, mode: Mode, seed: u64, json: bool) -> Result<ExitCode> {
    let ds = load_degrees(target, seed)?;
    let report = check_conditions(&ds, mode.into());
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.exact_checks_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn simulate(
    degrees: &str,
    k: Option<usize>,
    alpha: Option<f64>,
    steps: u32,
    seed: u64,
    trace: bool,
    resets: Option<Vec<u32>>,
) -> Result<()> {
    let ds = load_degrees(degrees, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (eta, x) = sample_typical_start(&ds, &mut rng);
    let out = io::stdout();
    let mut out = BufWriter::new(out.lock());
    if let Some(times) = resets {
        let resets = ResetSet::new(times, steps)?;
        let rec = run_modified(&ds, &eta, x, &resets, &mut rng)?;
        writeln!(out, "# n={} ell={} steps={steps} seed={seed} resets={:?}", ds.n(), ds.ell(), resets.times())?;
        for (s, &y) in rec.trajectory.iter().enumerate() {
            let mark = if resets.contains(s as u32) { " RESET" } else { "" };
            writeln!(out, "s {s} X {y} v {}{mark}", ds.vertex_of(y))?;
        }
        writeln!(out, "self_avoiding {}", rec.self_avoiding)?;
        return Ok(());
    }
    let k = match (k, alpha) {
        (Some(k), _) => k,
        (None, Some(a)) => dcm_core::experiments::edges_per_step(a, ds.m()).0,
        (None, None) => bail!("one of --k or --alpha is required"),
    };
    let (rec, tr) = run_joint_traced(&ds, &eta, x, steps, k, &mut rng)?;
    writeln!(out, "# n={} ell={} k={k} steps={steps} seed={seed}", ds.n(), ds.ell())?;
    for (s, &y) in rec.trajectory.iter().enumerate() {
        let mark = if rec.tau == Some(s as u32) { " TAU" } else { "" };
        writeln!(out, "s {s} X {y} v {}{mark}", ds.vertex_of(y))?;
    }
    match rec.tau {
        Some(t) => writeln!(out, "tau {t}")?,
        None => writeln!(out, "tau none")?,
    }
    writeln!(out, "self_avoiding {}", rec.self_avoiding)?;
    if trace {
        if let Some(tr) = tr {
            write!(out, "{}", tr.to_text())?;
        }
    }
    Ok(())
}

fn profile(
    config: &Path,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
    workers: Option<usize>,
    fresh_starts: bool,
) -> Result<()> {
    let text = fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let cfg = ExperimentConfig::from_text(&text)?;
    let exec = match workers {
        Some(w) => Executor::new(w)?,
        None => Executor::available(),
    };
    let ds = instance(&cfg)?;
    for &regime in &cfg.regimes {
        let plan = plan_regime(&cfg, &ds, regime)?;
        if plan.k_clamped {
            eprintln!(
                "warning: {}: alpha * m = {:.3} rounds outside [2, {}], using k = {}",
                regime.name(),
                plan.alpha * ds.m() as f64,
                ds.m(),
                plan.k
            );
        }
    }
    let opts = RunOptions {
        exec,
        start: if fresh_starts {
            StartMode::Fresh
        } else {
            StartMode::Typical
        },
    };
    let mut sink: Box<dyn Write> = match out.or_else(|| cfg.out.clone()) {
        Some(p) => Box::new(BufWriter::new(
            File::create(&p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    writeln!(sink, "{CSV_HEADER}")?;
    sink.flush()?;
    let rows = run_profile_experiment(&cfg, &opts, |rows| {
        let write = |sink: &mut Box<dyn Write>| -> io::Result<()> {
            for r in rows {
                writeln!(sink, "{}", r.to_csv())?;
            }
            sink.flush()
        };
        write(&mut sink).map_err(|e| dcm_core::Error::InvalidParameter(format!("writing output: {e}")))
    })?;
    if let Some(p) = svg {
        fs::write(&p, render_svg(&rows)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn exact(seed: u64, mutate: Option<Mutation>) -> ExitCode {
    let mutations = match mutate {
        None => Mutations::default(),
        Some(Mutation::DropPairingFactor) => Mutations {
            drop_pairing_factor: true,
            ..Default::default()
        },
        Some(Mutation::WalkThenRewire) => Mutations {
            walk_then_rewire: true,
            ..Default::default()
        },
    };
    let report = run_verification_suite(mutations, seed);
    print!("{}", report.to_text());
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn reset_law(degrees: &str, k: usize, t: u32, samples: usize, seed: u64) -> Result<()> {
    let ds = load_degrees(degrees, seed)?;
    let law = exact_reset_law(&ds, k, t)?;
    let mut counts = vec![0usize; 1 << t];
    if samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sampler = ResetSampler::new(&ds, k, t)?;
        for _ in 0..samples {
            counts[sampler.sample(&mut rng)?.mask() as usize] += 1;
        }
    }
    println!("# ell={} k={k} t={t}", ds.ell());
    for (set, p) in law.iter() {
        let name = format!("{{{}}}", set.times().iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        if samples > 0 {
            let q = counts[set.mask() as usize] as f64 / samples as f64;
            println!("{name:<10} {p:.12} {q:.6}");
        } else {
            println!("{name:<10} {p:.12}");
        }
    }
    println!("total      {:.12}", law.total());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { target, mode, seed, json } => check(&target, mode, seed, json),
        Command::Simulate {
            degrees,
            k,
            alpha,
            steps,
            seed,
            trace,
            resets,
        } => simulate(&degrees, k, alpha, steps, seed, trace, resets).map(|_| ExitCode::SUCCESS),
        Command::Profile {
            config,
            out,
            svg,
            workers,
            fresh_starts,
        } => profile(&config, out, svg, workers, fresh_starts).map(|_| ExitCode::SUCCESS),
        Command::Exact { seed, mutate } => Ok(exact(seed, mutate)),
        Command::ResetLaw {
            degrees,
            k,
            t,
            samples,
            seed,
        } => reset_law(&degrees, k, t, samples, seed).map(|_| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
