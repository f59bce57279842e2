//! Seeded samplers for key graphs, geometric graphs, their intersection,
//! Erdős–Rényi and random intersection graphs.

mod rings;
mod spatial;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use crate::combinatorics::KeyScheme;
use crate::error::{Error, Result};
use crate::geometry::{check_radius, distance_sq, Point, Region};

pub use rings::{rings_intersect, KeyIndex, RingSampler};
pub use spatial::{for_each_pair_within, pairs_within};

/// Unordered node pair stored as `(i, j)` with `i < j`.
pub type Edge = (u32, u32);

/// Master seed. Streams for individual trials come from [`Seed::derive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Seed {
    /// Child seed for `(stream, index)`; independent of evaluation order.
    pub fn derive(self, stream: u64, index: u64) -> Seed {
        Seed(mix64(mix64(self.0 ^ mix64(stream)).wrapping_add(index)))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn check_probability(quantity: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(quantity, format!("probability must lie in [0, 1], got {p}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    n: u32,
    scheme: KeyScheme,
    radius: f64,
    region: Region,
}

impl NetworkParams {
    pub fn new(n: u32, scheme: KeyScheme, radius: f64, region: Region) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("network parameters", "need at least one node"));
        }
        check_radius(radius)?;
        Ok(NetworkParams { n, scheme, radius, region })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn scheme(&self) -> KeyScheme {
        self.scheme
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn region(&self) -> Region {
        self.region
    }
}

/// `nodes` i.i.d. uniform points of the unit square (or torus).
pub fn sample_positions<R: Rng + ?Sized>(nodes: u32, rng: &mut R) -> Vec<Point> {
    (0..nodes).map(|_| Point::new(rng.random(), rng.random())).collect()
}

/// How [`Deployment::linked_pairs`] finds pairs that are both in range and
/// share a key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LinkStrategy {
    /// Grid search for geometric neighbours, then a ring merge-scan.
    GeometricFirst,
    /// Inverted key index, then a distance check.
    KeyFirst,
    /// Whichever of the two the cost model prefers.
    #[default]
    Auto,
}

/// Node positions and key rings, independent of any radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    region: Region,
    scheme: KeyScheme,
    positions: Vec<Point>,
    keys: Vec<u32>,
    sorted: bool,
}

impl Deployment {
    /// Positions are drawn first, then rings, all from `rng`. Rings are left
    /// in draw order; see [`Deployment::sort_rings`].
    pub fn sample<R: Rng + ?Sized>(nodes: u32, scheme: KeyScheme, region: Region, rng: &mut R) -> Self {
        let positions = sample_positions(nodes, rng);
        let k = scheme.ring_size();
        let mut keys = Vec::with_capacity(nodes as usize * k as usize);
        let mut sampler = RingSampler::new(scheme.pool_size(), k);
        for _ in 0..nodes {
            sampler.sample_into(rng, k, &mut keys);
        }
        Deployment { region, scheme, positions, keys, sorted: false }
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn scheme(&self) -> KeyScheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn ring(&self, i: usize) -> &[u32] {
        let k = self.scheme.ring_size() as usize;
        &self.keys[i * k..(i + 1) * k]
    }

    pub fn rings(&self) -> impl Iterator<Item = &[u32]> {
        self.keys.chunks_exact(self.scheme.ring_size() as usize)
    }

    pub fn sort_rings(&mut self) {
        if !self.sorted {
            let k = self.scheme.ring_size() as usize;
            self.keys.chunks_exact_mut(k).for_each(<[u32]>::sort_unstable);
            self.sorted = true;
        }
    }

    fn resolve(&self, radius: f64, strategy: LinkStrategy) -> LinkStrategy {
        if strategy != LinkStrategy::Auto {
            return strategy;
        }
        let n = self.len() as f64;
        let k = self.scheme.ring_size() as f64;
        let pool = self.scheme.pool_size() as f64;
        let area = (std::f64::consts::PI * radius * radius).min(1.0);
        let mut geometric = n * n / 2.0 * area * 2.0 * k;
        if !self.sorted {
            geometric += n * k * k.log2().max(1.0);
        }
        let keyed = n * k * 4.0 + 2.0 * n * n * k * k / (2.0 * pool);
        if geometric <= keyed {
            LinkStrategy::GeometricFirst
        } else {
            LinkStrategy::KeyFirst
        }
    }

    /// Pairs within `radius` that share a key, sorted, each with its squared
    /// distance. Any positive radius is accepted here.
    pub fn linked_pairs(&self, radius: f64, strategy: LinkStrategy) -> Vec<(u32, u32, f64)> {
        let r2 = radius * radius;
        match self.resolve(radius, strategy) {
            LinkStrategy::KeyFirst => {
                let index = KeyIndex::build(self.rings(), self.scheme.pool_size());
                let mut pairs = Vec::new();
                index.for_each_sharing_pair(|a, b| {
                    let d2 = distance_sq(self.region, self.positions[a as usize], self.positions[b as usize]);
                    if d2 <= r2 {
                        pairs.push((a, b, d2));
                    }
                });
                pairs.sort_unstable_by_key(|&(a, b, _)| (a, b));
                pairs.dedup_by_key(|&mut (a, b, _)| (a, b));
                pairs
            }
            _ => {
                let sorted_copy;
                let source = if self.sorted {
                    self
                } else {
                    let mut copy = self.clone();
                    copy.sort_rings();
                    sorted_copy = copy;
                    &sorted_copy
                };
                let mut pairs = pairs_within(self.region, &self.positions, radius);
                pairs.retain(|&(a, b, _)| rings_intersect(source.ring(a as usize), source.ring(b as usize)));
                pairs
            }
        }
    }

    /// All pairs within `radius`, sorted.
    pub fn geometric_pairs(&self, radius: f64) -> Vec<Edge> {
        pairs_within(self.region, &self.positions, radius)
            .into_iter()
            .map(|(a, b, _)| (a, b))
            .collect()
    }

    /// All pairs sharing at least one key, sorted.
    pub fn key_pairs(&self) -> Vec<Edge> {
        KeyIndex::build(self.rings(), self.scheme.pool_size()).sharing_pairs()
    }
}

/// One realisation of the intersection graph together with its two layers.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledNetwork {
    pub region: Region,
    pub radius: f64,
    pub positions: Vec<Point>,
    pub key_rings: Vec<Vec<u32>>,
    pub geo_edges: Vec<Edge>,
    pub key_edges: Vec<Edge>,
    pub edges: Vec<Edge>,
}

impl SampledNetwork {
    fn from_deployment(mut deployment: Deployment, radius: f64) -> Self {
        deployment.sort_rings();
        let geo_edges = deployment.geometric_pairs(radius);
        let key_edges = deployment.key_pairs();
        let edges = geo_edges
            .iter()
            .copied()
            .filter(|&(a, b)| rings_intersect(deployment.ring(a as usize), deployment.ring(b as usize)))
            .collect();
        SampledNetwork {
            region: deployment.region,
            radius,
            key_rings: deployment.rings().map(<[u32]>::to_vec).collect(),
            positions: deployment.positions,
            geo_edges,
            key_edges,
            edges,
        }
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }
}

/// Sample `G(n, θ, region)` with exactly `params.n()` nodes.
pub fn sample_network(params: &NetworkParams, seed: Seed) -> SampledNetwork {
    let mut rng = seed.rng();
    let deployment = Deployment::sample(params.n, params.scheme, params.region, &mut rng);
    SampledNetwork::from_deployment(deployment, params.radius)
}

/// Poissonized variant: the node count is itself Poisson with mean
/// `params.n()`.
pub fn sample_poisson_network(params: &NetworkParams, seed: Seed) -> SampledNetwork {
    let count = poissonize_count(params.n as f64, seed.derive(0, 0)).expect("n >= 1 is a valid intensity");
    let mut rng = seed.derive(1, 0).rng();
    let nodes = u32::try_from(count).expect("Poisson count fits in u32 for any u32 intensity");
    let deployment = Deployment::sample(nodes, params.scheme, params.region, &mut rng);
    SampledNetwork::from_deployment(deployment, params.radius)
}

/// Erdős–Rényi graph: every unordered pair independently with probability `p`.
///
/// Uses geometric skips between present pairs, so the cost is proportional to
/// the number of edges.
pub fn sample_er(n: u32, p: f64, seed: Seed) -> Result<Vec<Edge>> {
    check_probability("edge probability", p)?;
    let mut edges = Vec::new();
    if n < 2 || p == 0.0 {
        return Ok(edges);
    }
    let mut rng = seed.rng();
    let total = n as u64 * (n as u64 - 1) / 2;
    let log_q = (-p).ln_1p();
    let (mut row, mut row_start, mut row_len) = (0u32, 0u64, n as u64 - 1);
    let mut pos: u64 = 0;
    loop {
        if p < 1.0 {
            let u: f64 = 1.0 - rng.random::<f64>();
            let skip = (u.ln() / log_q).floor();
            if skip >= (total - pos) as f64 {
                break;
            }
            pos += skip as u64;
        }
        if pos >= total {
            break;
        }
        while pos >= row_start + row_len {
            row_start += row_len;
            row += 1;
            row_len -= 1;
        }
        edges.push((row, row + 1 + (pos - row_start) as u32));
        pos += 1;
    }
    Ok(edges)
}

/// Random intersection graph with per-key inclusion probability.
#[derive(Debug, Clone, PartialEq)]
pub struct RigNetwork {
    pub key_rings: Vec<Vec<u32>>,
    pub edges: Vec<Edge>,
}

/// Each of the `pool` keys joins each ring independently with probability
/// `p`: ring sizes are Binomial(pool, p) and rings uniform given their size.
pub fn sample_rig(n: u32, pool: u32, p: f64, seed: Seed) -> Result<RigNetwork> {
    check_probability("key inclusion probability", p)?;
    let mut rng = seed.rng();
    let sizes = Binomial::new(pool as u64, p).map_err(|e| Error::domain("key inclusion probability", e.to_string()))?;
    let mut sampler = RingSampler::new(pool.max(1), (pool as f64 * p).ceil() as u32);
    let key_rings: Vec<Vec<u32>> = (0..n)
        .map(|_| {
            let size = sizes.sample(&mut rng) as u32;
            let mut ring = Vec::with_capacity(size as usize);
            sampler.sample_into(&mut rng, size, &mut ring);
            ring.sort_unstable();
            ring
        })
        .collect();
    let edges = KeyIndex::build(key_rings.iter().map(Vec::as_slice), pool).sharing_pairs();
    Ok(RigNetwork { key_rings, edges })
}

/// Draw a Poisson(`intensity`) node count.
pub fn poissonize_count(intensity: f64, seed: Seed) -> Result<u64> {
    if !(intensity >= 1.0 && intensity.is_finite()) {
        return Err(Error::domain("Poisson intensity", format!("must be finite and at least 1, got {intensity}")));
    }
    let poisson = Poisson::new(intensity).map_err(|e| Error::domain("Poisson intensity", e.to_string()))?;
    Ok(poisson.sample(&mut seed.rng()) as u64)
}

/// `⌈n − n^(1/2 + c0)⌉`, clamped at zero.
pub fn depoissonized_count(n: u64, c0: f64) -> Result<u64> {
    if !(c0 > 0.0 && c0 < 0.5) {
        return Err(Error::domain("de-Poissonization constant", format!("c0 must lie in (0, 0.5), got {c0}")));
    }
    if n == 0 {
        return Err(Error::domain("node count", "need at least one node"));
    }
    let n = n as f64;
    Ok((n - n.powf(0.5 + c0)).ceil().max(0.0) as u64)
}

/// Keep each of `count` events independently with probability `keep`.
pub fn thin_count<R: Rng + ?Sized>(count: u64, keep: f64, rng: &mut R) -> u64 {
    (0..count).filter(|_| rng.random::<f64>() < keep).count() as u64
}
