//! Experiment configuration, degree-sequence generators and the profile
//! driver that turns a configuration into CSV rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exec::{task_rng, Executor};
use crate::halfedge::{Configuration, DegreeMode, DegreeSequence};
use crate::mixing::{estimate_profile, theory_profile, MixingPoint, ReplicaPlan, Start, Theory, UniformBaseline};
use crate::regularity::{classify_regime, degree_statistics, Regime};
use crate::walk::StepOrder;

const STREAM_DEGREES: u64 = 1;
const STREAM_START: u64 = 16;
const STREAM_REPLICAS: u64 = 32;
const STREAM_ESTIMATE: u64 = 48;

/// Smallest degree drawn by the power-law model.
pub const POWER_LAW_FLOOR: u32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum DegreeModel {
    Regular { d: u32 },
    /// `round(frac1 · n)` vertices of degree `d1`, the rest `d2`.
    Bivalued { d1: u32, d2: u32, frac1: f64 },
    /// i.i.d. degrees with `P(d) ∝ d^{-γ}` on `[3, cap]`.
    PowerLaw { gamma: f64 },
}

impl DegreeModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DegreeModel::Regular { d } if d < 2 => Err(Error::InvalidParameter(format!(
                "regular degree {d} below 2"
            ))),
            DegreeModel::Bivalued { d1, d2, frac1 } => {
                if d1.min(d2) < 2 {
                    return Err(Error::InvalidParameter("bivalued degrees below 2".into()));
                }
                if !(0.0..=1.0).contains(&frac1) {
                    return Err(Error::InvalidParameter(format!("frac1 = {frac1} outside [0, 1]")));
                }
                Ok(())
            }
            DegreeModel::PowerLaw { gamma } if !(gamma > 2.0) || !gamma.is_finite() => Err(
                Error::InvalidParameter(format!("power-law exponent {gamma} must exceed 2")),
            ),
            _ => Ok(()),
        }
    }
}

/// `⌈n^{1 / max(γ − 1, 2)}⌉`, never below the floor.
pub fn power_law_cap(n: usize, gamma: f64) -> u32 {
    let cap = (n as f64).powf(1.0 / (gamma - 1.0).max(2.0)).ceil() as u32;
    cap.max(POWER_LAW_FLOOR)
}

/// Builds `n` degrees from `model`. If the total is odd, one uniformly chosen
/// vertex gets one extra half-edge.
pub fn generate_degrees<R: Rng + ?Sized>(model: &DegreeModel, n: usize, rng: &mut R) -> Result<DegreeSequence> {
    model.validate()?;
    if n == 0 {
        return Err(Error::EmptyDegreeSequence);
    }
    let mut degrees = match *model {
        DegreeModel::Regular { d } => vec![d; n],
        DegreeModel::Bivalued { d1, d2, frac1 } => {
            let n1 = (frac1 * n as f64).round() as usize;
            let mut v = vec![d1; n1];
            v.resize(n, d2);
            v
        }
        DegreeModel::PowerLaw { gamma } => {
            let cap = power_law_cap(n, gamma);
            let support: Vec<u32> = (POWER_LAW_FLOOR..=cap).collect();
            let weights = support.iter().map(|&d| (d as f64).powf(-gamma));
            let dist = WeightedIndex::new(weights)
                .map_err(|e| Error::InvalidParameter(format!("power-law weights: {e}")))?;
            (0..n).map(|_| support[dist.sample(rng)]).collect()
        }
    };
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        let v = rng.random_range(0..n);
        degrees[v] += 1;
    }
    DegreeSequence::new(degrees, DegreeMode::R)
}

/// A uniform configuration and an independent uniform half-edge.
pub fn sample_typical_start<R: Rng + ?Sized>(ds: &DegreeSequence, rng: &mut R) -> (Configuration, u32) {
    let eta = Configuration::sample_uniform(ds, rng);
    let x = rng.random_range(0..ds.ell() as u32);
    (eta, x)
}

/// `α_n` of the preset schedule for `regime`.
pub fn preset_alpha(regime: Regime, n: usize, beta: f64) -> f64 {
    let log_n = (n as f64).ln();
    match regime {
        Regime::Supercritical => 1.0 / log_n,
        Regime::Critical => beta / (log_n * log_n),
        Regime::Subcritical => log_n.powi(-3),
    }
}

/// `round(α m)` clamped to `[2, m]`, with a flag telling whether the clamp
/// was active.
pub fn edges_per_step(alpha: f64, m: usize) -> (usize, bool) {
    let raw = (alpha * m as f64).round();
    let k = raw.clamp(2.0, m as f64) as usize;
    (k, raw < 2.0 || raw > m as f64)
}

/// Time unit of the profile abscissa: `α^{-1/2}` above the critical window,
/// `log n` otherwise.
pub fn time_scale(regime: Regime, alpha: f64, n: usize) -> f64 {
    match regime {
        Regime::Supercritical => alpha.powf(-0.5),
        _ => (n as f64).ln(),
    }
}

/// A grid entry: an absolute `c`, or a multiple of `c_stat`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridPoint {
    Absolute(f64),
    TimesStatic(f64),
}

impl GridPoint {
    pub fn resolve(self, c_stat: Option<f64>) -> Result<f64> {
        match self {
            GridPoint::Absolute(c) => Ok(c),
            GridPoint::TimesStatic(f) => c_stat.map(|cs| f * cs).ok_or_else(|| {
                Error::InvalidParameter("c_stat is undefined for this degree sequence".into())
            }),
        }
    }
}

impl std::str::FromStr for GridPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, scaled) = match s.strip_suffix("cs") {
            Some(b) => (b.trim().trim_end_matches('*'), true),
            None => (s, false),
        };
        let v: f64 = body
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad grid entry {s:?}")))?;
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!("grid entry {s:?} must be positive")));
        }
        Ok(if scaled {
            GridPoint::TimesStatic(v)
        } else {
            GridPoint::Absolute(v)
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: DegreeModel,
    pub n: usize,
    pub regimes: Vec<Regime>,
    /// Used by the critical preset.
    pub beta: f64,
    /// Overrides the preset schedule.
    pub alpha: Option<f64>,
    pub c_grid: Vec<GridPoint>,
    pub replicas: usize,
    pub baseline_draws: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

const KEYS: [&str; 15] = [
    "model", "n", "d", "d1", "d2", "frac1", "gamma", "regime", "beta", "alpha", "c_grid", "N", "B",
    "seed", "out",
];

fn parse_pairs<'a>(items: impl Iterator<Item = (usize, &'a str)>) -> Result<BTreeMap<String, (usize, String)>> {
    let mut map = BTreeMap::new();
    for (line, raw) in items {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (key, value) = text.split_once('=').ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected key = value, got {text:?}"),
        })?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(Error::Parse {
                line,
                msg: format!("unknown key {key:?}"),
            });
        }
        if map
            .insert(key.to_string(), (line, value.trim().to_string()))
            .is_some()
        {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate key {key:?}"),
            });
        }
    }
    Ok(map)
}

struct Fields(BTreeMap<String, (usize, String)>);

impl Fields {
    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| Error::Parse {
                line: *line,
                msg: format!("bad value {v:?} for {key}"),
            }),
        }
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?.ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing key {key:?}"),
        })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(|(_, v)| v.as_str())
    }

    fn model(&self) -> Result<(DegreeModel, usize)> {
        let name: String = self.require("model")?;
        let model = match name.to_ascii_lowercase().as_str() {
            "regular" => DegreeModel::Regular { d: self.require("d")? },
            "bivalued" => DegreeModel::Bivalued {
                d1: self.require("d1")?,
                d2: self.require("d2")?,
                frac1: self.get("frac1")?.unwrap_or(0.5),
            },
            "powerlaw" | "power-law" | "power_law" => DegreeModel::PowerLaw {
                gamma: self.require("gamma")?,
            },
            other => {
                return Err(Error::InvalidParameter(format!("unknown degree model {other:?}")))
            }
        };
        model.validate()?;
        let n: usize = self.require("n")?;
        if n == 0 {
            return Err(Error::EmptyDegreeSequence);
        }
        Ok((model, n))
    }
}

/// Parses a one-line model description such as
/// `bivalued n=10000 d1=3 d2=4 frac1=0.5` (commas also separate fields).
pub fn parse_model_spec(spec: &str) -> Result<(DegreeModel, usize)> {
    let mut parts = spec.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
    let name = parts
        .next()
        .ok_or_else(|| Error::InvalidParameter("empty model description".into()))?;
    let mut items = vec![format!("model = {name}")];
    items.extend(parts.map(str::to_string));
    let fields = Fields(parse_pairs(items.iter().map(|s| (1, s.as_str())))?);
    fields.model()
}

impl ExperimentConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        let fields = Fields(parse_pairs(text.lines().enumerate().map(|(i, l)| (i + 1, l)))?);
        let (model, n) = fields.model()?;
        let alpha: Option<f64> = fields.get("alpha")?;
        if let Some(a) = alpha {
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::InvalidParameter(format!("alpha = {a} outside (0, 1]")));
            }
        }
        let mut regimes = match fields.raw("regime") {
            Some(list) => list
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<Regime>>>()?,
            None => Vec::new(),
        };
        if regimes.is_empty() {
            let a = alpha.ok_or_else(|| Error::Parse {
                line: 0,
                msg: "either regime or alpha is required".into(),
            })?;
            let log_n = (n as f64).ln();
            regimes.push(classify_regime(a * log_n * log_n)?);
        }
        if alpha.is_some() && regimes.len() > 1 {
            return Err(Error::InvalidParameter(
                "an explicit alpha applies to a single regime".into(),
            ));
        }
        let beta = fields.get("beta")?.unwrap_or(2.0);
        if !(beta > 0.0) || !f64::is_finite(beta) {
            return Err(Error::InvalidParameter(format!("beta = {beta} must be positive")));
        }
        let c_grid = fields
            .raw("c_grid")
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: "missing key \"c_grid\"".into(),
            })?
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<GridPoint>>>()?;
        let baseline_draws = fields.get("B")?.unwrap_or(20);
        if baseline_draws < 20 {
            return Err(Error::InvalidParameter(format!(
                "B = {baseline_draws} below the minimum of 20"
            )));
        }
        Ok(Self {
            model,
            n,
            regimes,
            beta,
            alpha,
            c_grid,
            replicas: fields.require("N")?,
            baseline_draws,
            seed: fields.get("seed")?.unwrap_or(0),
            out: fields.get::<String>("out")?.map(PathBuf::from),
        })
    }
}

/// How replicas choose their initial condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartMode {
    /// One `(η, x)` drawn from the master seed, shared by all replicas.
    #[default]
    Typical,
    /// A fresh uniform `(η, x)` per replica.
    Fresh,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub exec: Executor,
    pub start: StartMode,
}

/// Parameters of one regime after resolving presets against the instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimePlan {
    pub regime: Regime,
    pub alpha: f64,
    /// `α (log n)²`, the parameter of the critical profile.
    pub beta: f64,
    pub k: usize,
    pub k_clamped: bool,
    pub scale: f64,
    /// `(c, t)` pairs, `t = ⌈c · scale⌉`.
    pub grid: Vec<(f64, u32)>,
}

pub fn plan_regime(config: &ExperimentConfig, ds: &DegreeSequence, regime: Regime) -> Result<RegimePlan> {
    let c_stat = degree_statistics(ds).c_stat;
    let alpha = config
        .alpha
        .unwrap_or_else(|| preset_alpha(regime, config.n, config.beta));
    let log_n = (config.n as f64).ln();
    let (k, k_clamped) = edges_per_step(alpha, ds.m());
    let scale = time_scale(regime, alpha, config.n);
    let mut grid = Vec::with_capacity(config.c_grid.len());
    for g in &config.c_grid {
        let c = g.resolve(c_stat)?;
        let t = (c * scale).ceil();
        if t > u32::MAX as f64 {
            return Err(Error::InvalidParameter(format!("time {t} too large")));
        }
        grid.push((c, t as u32));
    }
    if grid.windows(2).any(|w| w[0].0 > w[1].0) {
        return Err(Error::InvalidParameter("c grid must be sorted".into()));
    }
    Ok(RegimePlan {
        regime,
        alpha,
        beta: alpha * log_n * log_n,
        k,
        k_clamped,
        scale,
        grid,
    })
}

/// One CSV line: a `(regime, c)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub regime: Regime,
    pub n: usize,
    pub ell: usize,
    pub alpha: f64,
    pub k: usize,
    pub c: f64,
    pub t: u32,
    pub replicas: usize,
    pub theory: Theory,
    /// `None` when no replicas were requested.
    pub point: Option<MixingPoint>,
    pub seed: u64,
    /// Seconds spent on the whole regime this row belongs to.
    pub wall_clock: f64,
}

pub const CSV_HEADER: &str =
    "regime,n,ell,alpha,k,c,t,N,tv_raw,tv_debiased,stderr,p_tau_gt,sa_rate,theory,lower,upper,seed";

impl ResultRow {
    pub fn to_csv(&self) -> String {
        let theory = match self.theory {
            Theory::Value(v) => format!("{v:.6}"),
            Theory::Undefined => "undefined".to_string(),
        };
        let estimates = match &self.point {
            Some(p) => format!(
                "{:.6},{:.6},{:.6},{:.6},{:.6}",
                p.tv_raw, p.tv_debiased, p.stderr, p.p_tau_gt, p.sa_rate
            ),
            None => ",,,,".to_string(),
        };
        let bounds = match &self.point {
            Some(p) => format!("{:.6},{:.6}", p.lower_bound, p.upper_bound),
            None => ",".to_string(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.regime.name(),
            self.n,
            self.ell,
            self.alpha,
            self.k,
            self.c,
            self.t,
            self.replicas,
            estimates,
            theory,
            bounds,
            self.seed
        )
    }
}

fn regime_index(regime: Regime) -> u64 {
    match regime {
        Regime::Supercritical => 0,
        Regime::Critical => 1,
        Regime::Subcritical => 2,
    }
}

/// Builds the degree sequence of `config` from its master seed.
pub fn instance(config: &ExperimentConfig) -> Result<DegreeSequence> {
    let mut rng = task_rng(config.seed, STREAM_DEGREES, 0);
    generate_degrees(&config.model, config.n, &mut rng)
}

/// Runs every regime of `config` and returns one row per `(regime, c)`.
/// `on_regime` sees the rows of each regime as soon as they are complete.
pub fn run_profile_experiment<F>(config: &ExperimentConfig, opts: &RunOptions, mut on_regime: F) -> Result<Vec<ResultRow>>
where
    F: FnMut(&[ResultRow]) -> Result<()>,
{
    let ds = instance(config)?;
    let stats = degree_statistics(&ds);
    let mut rows = Vec::new();
    for &regime in &config.regimes {
        let started = Instant::now();
        let plan = plan_regime(config, &ds, regime)?;
        let ri = regime_index(regime);
        let mut start_rng = task_rng(config.seed, STREAM_START + ri, 0);
        let (eta, x) = sample_typical_start(&ds, &mut start_rng);
        let start = match opts.start {
            StartMode::Typical => Start::Fixed { eta: &eta, x },
            StartMode::Fresh => Start::Fresh,
        };
        let mut times: Vec<u32> = plan.grid.iter().map(|&(_, t)| t).collect();
        times.dedup();
        let estimates = if config.replicas > 0 {
            let replica_plan = ReplicaPlan {
                ds: &ds,
                start,
                k: plan.k,
                times,
                replicas: config.replicas,
                seed: config.seed,
                stream: STREAM_REPLICAS + ri,
                order: StepOrder::RewireThenWalk,
            };
            estimate_profile(&replica_plan, &opts.exec)?
        } else {
            Vec::new()
        };
        let mut est_rng = task_rng(config.seed, STREAM_ESTIMATE + ri, 0);
        let baseline = if config.replicas > 0 {
            Some(UniformBaseline::new(
                ds.ell(),
                config.replicas as u64,
                config.baseline_draws,
                &mut est_rng,
            )?)
        } else {
            None
        };
        let first = rows.len();
        for &(c, t) in &plan.grid {
            let theory = theory_profile(regime, plan.beta, stats.c_stat.unwrap_or(f64::INFINITY), c)?;
            let point = match &baseline {
                Some(b) => {
                    let est = estimates
                        .iter()
                        .find(|e| e.t == t)
                        .expect("every grid time is estimated");
                    Some(MixingPoint::from_estimate(c, est, b, theory, &mut est_rng)?)
                }
                None => None,
            };
            rows.push(ResultRow {
                regime,
                n: ds.n(),
                ell: ds.ell(),
                alpha: plan.alpha,
                k: plan.k,
                c,
                t,
                replicas: config.replicas,
                theory,
                point,
                seed: config.seed,
                wall_clock: 0.0,
            });
        }
        let elapsed = started.elapsed().as_secs_f64();
        for row in &mut rows[first..] {
            row.wall_clock = elapsed;
        }
        on_regime(&rows[first..])?;
    }
    Ok(rows)
}

/// Header plus one line per row.
pub fn to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Estimated and predicted profiles, one colour per regime, against `c`.
pub fn render_svg(rows: &[ResultRow]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 50.0;
    let c_max = rows.iter().map(|r| r.c).fold(0.0, f64::max).max(1e-9);
    let px = |c: f64| PAD + c / c_max * (W - 2.0 * PAD);
    let py = |v: f64| H - PAD - v.clamp(0.0, 1.0) * (H - 2.0 * PAD);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    );
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.1}" font-size="11" text-anchor="end">{tick}</text>"#,
            PAD - 6.0,
            py(tick) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">c (max {c_max:.3})</text>"#,
        W / 2.0,
        H - 12.0
    );
    let colours = ["#1f77b4", "#d62728", "#2ca02c"];
    let mut legend_y = PAD;
    for regime in [Regime::Supercritical, Regime::Critical, Regime::Subcritical] {
        let these: Vec<&ResultRow> = rows.iter().filter(|r| r.regime == regime).collect();
        if these.is_empty() {
            continue;
        }
        let colour = colours[regime_index(regime) as usize];
        let theory: Vec<String> = these
            .iter()
            .filter_map(|r| r.theory.value().map(|v| format!("{:.1},{:.1}", px(r.c), py(v))))
            .collect();
        if theory.len() > 1 {
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-dasharray="5,4"/>"#,
                theory.join(" ")
            );
        }
        let est: Vec<(f64, f64)> = these
            .iter()
            .filter_map(|r| r.point.as_ref().map(|p| (px(r.c), py(p.tv_debiased))))
            .collect();
        if est.len() > 1 {
            let pts: Vec<String> = est.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{colour}"/>"#,
                pts.join(" ")
            );
        }
        for (x, y) in est {
            let _ = writeln!(svg, r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="{colour}"/>"#);
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{legend_y}" font-size="12" fill="{colour}">{} (solid: estimate, dashed: limit)</text>"#,
            W - PAD - 260.0,
            regime.name()
        );
        legend_y += 16.0;
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parity_repair() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let even = generate_degrees(&DegreeModel::Regular { d: 3 }, 100, &mut rng).unwrap();
        assert_eq!(even.ell(), 300);
        let odd = generate_degrees(&DegreeModel::Regular { d: 3 }, 101, &mut rng).unwrap();
        assert_eq!(odd.ell(), 304);
        assert_eq!(odd.degrees().iter().filter(|&&d| d == 4).count(), 1);
    }

    #[test]
    fn bivalued_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let model = DegreeModel::Bivalued { d1: 3, d2: 4, frac1: 0.5 };
        let ds = generate_degrees(&model, 10_000, &mut rng).unwrap();
        assert_eq!(ds.ell(), 35_000);
        let cs = degree_statistics(&ds).c_stat.unwrap();
        assert!((cs - 1.081266).abs() < 1e-6);
    }

    #[test]
    fn power_law_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ds = generate_degrees(&DegreeModel::PowerLaw { gamma: 3.0 }, 5000, &mut rng).unwrap();
        let cap = power_law_cap(5000, 3.0);
        assert_eq!(cap, 71);
        let bumped = ds.degrees().iter().filter(|&&d| d > cap).count();
        assert!(bumped <= 1);
        assert!(ds.degrees().iter().all(|&d| d >= 3 && d <= cap + 1));
        assert_eq!(ds.ell() % 2, 0);
        assert!(generate_degrees(&DegreeModel::PowerLaw { gamma: 2.0 }, 10, &mut rng).is_err());
    }

    #[test]
    fn k_and_times() {
        assert_eq!(edges_per_step(0.0001, 100), (2, true));
        assert_eq!(edges_per_step(2.0, 100), (100, true));
        assert_eq!(edges_per_step(0.1, 17_500), (1750, false));
        let alpha = preset_alpha(Regime::Supercritical, 10_000, 2.0);
        assert!((time_scale(Regime::Supercritical, alpha, 10_000) - (10_000f64).ln().sqrt()).abs() < 1e-12);
    }

    #[test]
    fn parse_config() {
        let text = "\
# bivalued
model = bivalued
n = 10000
d1 = 3
d2 = 4
frac1 = 0.5
regime = critical, subcritical
beta = 2
c_grid = 0.5cs, 0.8cs, 1.5cs
N = 1000
B = 20
seed = 42
out = profile.csv
";
        let cfg = ExperimentConfig::from_text(text).unwrap();
        assert_eq!(cfg.regimes, vec![Regime::Critical, Regime::Subcritical]);
        assert_eq!(cfg.c_grid[1], GridPoint::TimesStatic(0.8));
        assert_eq!(cfg.out, Some(PathBuf::from("profile.csv")));
        assert!(ExperimentConfig::from_text(&format!("{text}bogus = 1\n")).is_err());
        assert!(ExperimentConfig::from_text(&text.replace("B = 20", "B = 5")).is_err());
        assert!(ExperimentConfig::from_text(&text.replace("0.8cs", "-1")).is_err());
        let (model, n) = parse_model_spec("regular n=10,d=3").unwrap();
        assert_eq!((model, n), (DegreeModel::Regular { d: 3 }, 10));
    }

    #[test]
    fn empty_rows_keep_theory() {
        let cfg = ExperimentConfig {
            model: DegreeModel::Regular { d: 3 },
            n: 200,
            regimes: vec![Regime::Supercritical],
            beta: 2.0,
            alpha: None,
            c_grid: vec![GridPoint::Absolute(1.0)],
            replicas: 0,
            baseline_draws: 20,
            seed: 1,
            out: None,
        };
        let rows = run_profile_experiment(&cfg, &RunOptions::default(), |_| Ok(())).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].point.is_none());
        assert!((rows[0].theory.value().unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        let line = rows[0].to_csv();
        assert_eq!(line.split(',').count(), CSV_HEADER.split(',').count());
        assert!(line.contains(",,,,,0.606531,,,"));
    }
}
