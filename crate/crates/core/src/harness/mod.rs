//! Radius sweeps over batches of sampled networks, their CSV form, and the
//! text rendering of analytic reports.

mod csv_io;
mod report;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::combinatorics::KeyScheme;
use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::graph_analysis::{analyze, ConnectivityTracker, GraphStats};
use crate::graph_models::{pairs_within, sample_positions, Deployment, LinkStrategy, Seed};

pub use csv_io::{emit_csv, parse_csv, read_csv, write_csv, CSV_HEADER};
pub use report::render_report;

/// Whether radii share one realisation per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepMode {
    /// Fresh positions and rings for every radius and trial.
    #[default]
    Independent,
    /// One realisation per trial evaluated at every radius, so connectivity
    /// is monotone in `r` within a trial.
    Coupled,
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMode::Independent => "independent",
            SweepMode::Coupled => "coupled",
        })
    }
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "independent" => Ok(SweepMode::Independent),
            "coupled" => Ok(SweepMode::Coupled),
            other => Err(Error::domain("sweep mode", format!("expected `independent` or `coupled`, got `{other}`"))),
        }
    }
}

/// Which graph is intersected with the geometric graph.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum LinkModel {
    /// Key rings from the configured scheme.
    #[default]
    KeyGraph,
    /// Each geometric pair kept independently with this probability.
    ErdosRenyi(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub n: u32,
    pub scheme: KeyScheme,
    pub region: Region,
    pub r_min: f64,
    pub r_max: f64,
    pub r_steps: usize,
    pub trials: u32,
    pub seed: Seed,
    pub mode: SweepMode,
    pub links: LinkModel,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        const QUANTITY: &str = "sweep configuration";
        if self.n == 0 {
            return Err(Error::domain(QUANTITY, "need at least one node"));
        }
        if !(0.0 < self.r_min && self.r_min < self.r_max && self.r_max < 0.5) {
            return Err(Error::domain(
                QUANTITY,
                format!("need 0 < r_min < r_max < 0.5, got r_min={} r_max={}", self.r_min, self.r_max),
            ));
        }
        if self.r_steps < 2 {
            return Err(Error::domain(QUANTITY, format!("need at least 2 radii, got {}", self.r_steps)));
        }
        if self.trials == 0 {
            return Err(Error::domain(QUANTITY, "need at least one trial"));
        }
        if let LinkModel::ErdosRenyi(p) = self.links {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(QUANTITY, format!("edge probability must lie in [0, 1], got {p}")));
            }
        }
        Ok(())
    }

    /// Linearly spaced radii from `r_min` to `r_max` inclusive.
    pub fn radii(&self) -> Vec<f64> {
        let last = (self.r_steps - 1) as f64;
        (0..self.r_steps)
            .map(|i| {
                if i + 1 == self.r_steps {
                    self.r_max
                } else {
                    self.r_min + (self.r_max - self.r_min) * i as f64 / last
                }
            })
            .collect()
    }
}

/// Aggregate over all trials at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub region: Region,
    pub n: u32,
    pub k: u32,
    pub p: u32,
    pub r: f64,
    pub trials: u32,
    pub seed: u64,
    pub connected_count: u32,
    pub connected_frac: f64,
    pub mean_isolated: f64,
    pub mean_edges: f64,
    pub mean_components: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Integer totals for one radius; summing is exact and order independent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    connected: u64,
    isolated: u64,
    edges: u64,
    components: u64,
}

impl Tally {
    fn of(stats: &GraphStats) -> Self {
        Tally {
            connected: stats.is_connected as u64,
            isolated: stats.isolated_count as u64,
            edges: stats.edge_count as u64,
            components: stats.component_count as u64,
        }
    }

    fn add(mut self, other: Tally) -> Tally {
        self.connected += other.connected;
        self.isolated += other.isolated;
        self.edges += other.edges;
        self.components += other.components;
        self
    }
}

const COUPLED_STREAM: u64 = 0;

/// Edges of one realisation within `r_max`, each with its squared length.
/// Pairs are in canonical order, so the Erdős–Rényi coins are reproducible.
fn realise(config: &SweepConfig, seed: Seed, r_max: f64) -> Vec<(u32, u32, f64)> {
    let mut rng = seed.rng();
    match config.links {
        LinkModel::KeyGraph => {
            Deployment::sample(config.n, config.scheme, config.region, &mut rng).linked_pairs(r_max, LinkStrategy::Auto)
        }
        LinkModel::ErdosRenyi(p) => {
            use rand::Rng;
            let positions = sample_positions(config.n, &mut rng);
            let mut pairs = pairs_within(config.region, &positions, r_max);
            pairs.retain(|_| rng.random::<f64>() < p);
            pairs
        }
    }
}

fn independent_trial(config: &SweepConfig, radius_index: usize, radius: f64, trial: u32) -> Tally {
    let seed = config.seed.derive(1 + radius_index as u64, trial as u64);
    let edges: Vec<_> = realise(config, seed, radius).into_iter().map(|(a, b, _)| (a, b)).collect();
    let stats = analyze(config.n as usize, &edges).expect("sampled endpoints are in range");
    Tally::of(&stats)
}

/// Connectivity statistics of one realisation at every radius, ascending.
fn coupled_trial(config: &SweepConfig, radii: &[f64], trial: u32) -> Vec<Tally> {
    let seed = config.seed.derive(COUPLED_STREAM, trial as u64);
    let r_max = radii.iter().copied().fold(0.0, f64::max);
    let mut pairs = realise(config, seed, r_max);
    pairs.sort_unstable_by(|x, y| x.2.total_cmp(&y.2).then((x.0, x.1).cmp(&(y.0, y.1))));
    let mut tracker = ConnectivityTracker::new(config.n as usize);
    let mut next = 0;
    radii
        .iter()
        .map(|&r| {
            let r2 = r * r;
            while next < pairs.len() && pairs[next].2 <= r2 {
                tracker.add_edge((pairs[next].0, pairs[next].1));
                next += 1;
            }
            Tally::of(&tracker.stats())
        })
        .collect()
}

fn sum_tallies(a: Vec<Tally>, b: Vec<Tally>) -> Vec<Tally> {
    a.into_iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn collect(config: &SweepConfig, radii: &[f64], totals: &[Tally]) -> SweepResult {
    let trials = config.trials as f64;
    let rows = radii
        .iter()
        .zip(totals)
        .map(|(&r, t)| SweepRow {
            region: config.region,
            n: config.n,
            k: config.scheme.ring_size(),
            p: config.scheme.pool_size(),
            r,
            trials: config.trials,
            seed: config.seed.0,
            connected_count: t.connected as u32,
            connected_frac: t.connected as f64 / trials,
            mean_isolated: t.isolated as f64 / trials,
            mean_edges: t.edges as f64 / trials,
            mean_components: t.components as f64 / trials,
        })
        .collect();
    SweepResult { rows }
}

fn sweep(config: &SweepConfig, parallel: bool) -> Result<SweepResult> {
    config.validate()?;
    let radii = config.radii();
    let zero = || vec![Tally::default(); radii.len()];
    let totals = match (config.mode, parallel) {
        (SweepMode::Coupled, true) => (0..config.trials)
            .into_par_iter()
            .map(|t| coupled_trial(config, &radii, t))
            .reduce(zero, sum_tallies),
        (SweepMode::Coupled, false) => (0..config.trials)
            .map(|t| coupled_trial(config, &radii, t))
            .fold(zero(), sum_tallies),
        (SweepMode::Independent, true) => radii
            .par_iter()
            .enumerate()
            .map(|(i, &r)| {
                (0..config.trials)
                    .into_par_iter()
                    .map(|t| independent_trial(config, i, r, t))
                    .reduce(Tally::default, Tally::add)
            })
            .collect(),
        (SweepMode::Independent, false) => radii
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                (0..config.trials)
                    .map(|t| independent_trial(config, i, r, t))
                    .fold(Tally::default(), Tally::add)
            })
            .collect(),
    };
    Ok(collect(config, &radii, &totals))
}

/// Run every trial at every radius, in parallel across trials.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    sweep(config, true)
}

/// Single-threaded [`run_sweep`]; the result is identical.
pub fn run_sweep_sequential(config: &SweepConfig) -> Result<SweepResult> {
    sweep(config, false)
}

/// Radius at which the connected fraction first reaches `level`, by linear
/// interpolation between neighbouring rows.
pub fn crossing_radius(result: &SweepResult, level: f64) -> Option<f64> {
    let rows = &result.rows;
    if rows.first()?.connected_frac >= level {
        return Some(rows[0].r);
    }
    rows.windows(2).find_map(|w| {
        let (a, b) = (&w[0], &w[1]);
        (a.connected_frac < level && b.connected_frac >= level).then(|| {
            a.r + (level - a.connected_frac) / (b.connected_frac - a.connected_frac) * (b.r - a.r)
        })
    })
}
