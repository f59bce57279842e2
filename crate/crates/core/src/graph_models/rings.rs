//! Key-ring sampling and key-sharing pair enumeration.

use rand::Rng;

use crate::graph_models::Edge;

/// Pools up to this size use a dense permutation array.
const DENSE_POOL_LIMIT: u32 = 1 << 16;
const EMPTY: u32 = u32::MAX;

/// Sparse overlay on the identity permutation of `[0, P)`.
#[derive(Debug, Clone)]
enum SwapMap {
    Dense(Vec<u32>),
    Hashed { slots: Vec<(u32, u32)>, mask: usize, touched: Vec<usize> },
}

impl SwapMap {
    fn new(pool: u32, ring: u32) -> Self {
        if pool <= DENSE_POOL_LIMIT || pool / 16 <= ring {
            SwapMap::Dense((0..pool).collect())
        } else {
            let capacity = (4 * ring as usize).next_power_of_two().max(16);
            SwapMap::Hashed {
                slots: vec![(EMPTY, 0); capacity],
                mask: capacity - 1,
                touched: Vec::with_capacity(2 * ring as usize),
            }
        }
    }

    #[inline]
    fn slot(key: u32, mask: usize) -> usize {
        (key.wrapping_mul(0x9E37_79B1) as usize) & mask
    }

    #[inline]
    fn get(&self, key: u32) -> u32 {
        match self {
            SwapMap::Dense(a) => a[key as usize],
            SwapMap::Hashed { slots, mask, .. } => {
                let mut s = Self::slot(key, *mask);
                loop {
                    match slots[s] {
                        (EMPTY, _) => return key,
                        (k, v) if k == key => return v,
                        _ => s = (s + 1) & mask,
                    }
                }
            }
        }
    }

    #[inline]
    fn set(&mut self, key: u32, value: u32) {
        match self {
            SwapMap::Dense(a) => a[key as usize] = value,
            SwapMap::Hashed { slots, mask, touched } => {
                let mut s = Self::slot(key, *mask);
                loop {
                    if slots[s].0 == EMPTY {
                        touched.push(s);
                        slots[s] = (key, value);
                        return;
                    }
                    if slots[s].0 == key {
                        slots[s].1 = value;
                        return;
                    }
                    s = (s + 1) & *mask;
                }
            }
        }
    }

    /// Restore the identity; `drawn` lists the positions written since the
    /// last reset.
    fn reset(&mut self, drawn: &[u32]) {
        match self {
            SwapMap::Dense(a) => {
                for &j in drawn {
                    a[j as usize] = j;
                }
            }
            SwapMap::Hashed { slots, touched, .. } => {
                for s in touched.drain(..) {
                    slots[s] = (EMPTY, 0);
                }
            }
        }
    }
}

/// Draws uniform subsets of `[0, P)` by a partial Fisher–Yates shuffle whose
/// permutation is stored only where it differs from the identity.
#[derive(Debug, Clone)]
pub struct RingSampler {
    pool: u32,
    map: SwapMap,
    positions: Vec<u32>,
}

impl RingSampler {
    pub fn new(pool: u32, typical_ring: u32) -> Self {
        RingSampler {
            pool,
            map: SwapMap::new(pool, typical_ring),
            positions: Vec::new(),
        }
    }

    /// Append `size` distinct uniform keys to `out`, in draw order.
    pub fn sample_into<R: Rng + ?Sized>(&mut self, rng: &mut R, size: u32, out: &mut Vec<u32>) {
        assert!(size <= self.pool, "ring larger than pool");
        self.positions.clear();
        for i in 0..size {
            let j = rng.random_range(i..self.pool);
            let drawn = self.map.get(j);
            let displaced = self.map.get(i);
            self.map.set(j, displaced);
            self.positions.push(j);
            out.push(drawn);
        }
        let positions = std::mem::take(&mut self.positions);
        self.map.reset(&positions);
        self.positions = positions;
    }
}

/// Whether two sorted rings share a key.
#[inline]
pub fn rings_intersect(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// LSD radix sort of `(key << 32 | node)` words by the key half.
fn radix_sort_by_key(words: &mut Vec<u64>, pool: u32) {
    let bits = 32 - pool.saturating_sub(1).leading_zeros();
    if bits == 0 {
        return;
    }
    let passes = bits.div_ceil(12);
    let digit = bits.div_ceil(passes);
    let buckets = 1usize << digit;
    let mask = (buckets - 1) as u64;
    let mut scratch = vec![0u64; words.len()];
    let mut counts = vec![0usize; buckets];
    for pass in 0..passes {
        let shift = 32 + pass * digit;
        counts.iter_mut().for_each(|c| *c = 0);
        for &w in words.iter() {
            counts[((w >> shift) & mask) as usize] += 1;
        }
        let mut total = 0;
        for c in counts.iter_mut() {
            let here = *c;
            *c = total;
            total += here;
        }
        for &w in words.iter() {
            let d = ((w >> shift) & mask) as usize;
            scratch[counts[d]] = w;
            counts[d] += 1;
        }
        std::mem::swap(words, &mut scratch);
    }
}

/// Inverted index from key to the nodes holding it.
#[derive(Debug, Clone)]
pub struct KeyIndex {
    words: Vec<u64>,
}

impl KeyIndex {
    /// `rings` yields each node's ring; nodes are numbered in order.
    pub fn build<'a, I>(rings: I, pool: u32) -> Self
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        let mut words = Vec::new();
        for (node, ring) in rings.into_iter().enumerate() {
            words.extend(ring.iter().map(|&k| (k as u64) << 32 | node as u64));
        }
        // Stable passes keep nodes ascending within each key.
        radix_sort_by_key(&mut words, pool);
        KeyIndex { words }
    }

    /// Call `f(i, j)` with `i < j` for every pair holding a common key; a pair
    /// sharing several keys is reported once per shared key.
    pub fn for_each_sharing_pair(&self, mut f: impl FnMut(u32, u32)) {
        for run in self.words.chunk_by(|a, b| a >> 32 == b >> 32) {
            for (x, &a) in run.iter().enumerate() {
                for &b in &run[x + 1..] {
                    f(a as u32, b as u32);
                }
            }
        }
    }

    /// Expected number of candidate pairs per key-sharing edge is small when
    /// this is close to the edge count.
    pub fn candidate_count(&self) -> u64 {
        self.words
            .chunk_by(|a, b| a >> 32 == b >> 32)
            .map(|run| (run.len() as u64) * (run.len() as u64 - 1) / 2)
            .sum()
    }

    /// All distinct pairs sharing at least one key, sorted.
    pub fn sharing_pairs(&self) -> Vec<Edge> {
        let mut pairs = Vec::new();
        self.for_each_sharing_pair(|a, b| pairs.push((a, b)));
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn check_sampler(pool: u32, ring: u32, draws: usize) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(pool as u64 * 31 + ring as u64);
        let mut sampler = RingSampler::new(pool, ring);
        let mut hits = vec![0u64; pool as usize];
        let mut out = Vec::new();
        for _ in 0..draws {
            out.clear();
            sampler.sample_into(&mut rng, ring, &mut out);
            assert_eq!(out.len(), ring as usize);
            let mut sorted = out.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), ring as usize, "duplicate key");
            assert!(sorted.iter().all(|&k| k < pool));
            for &k in &out {
                hits[k as usize] += 1;
            }
        }
        hits
    }

    #[test]
    fn dense_sampler_is_uniform() {
        let (pool, ring, draws) = (20u32, 5u32, 40_000usize);
        let hits = check_sampler(pool, ring, draws);
        let expected = draws as f64 * ring as f64 / pool as f64;
        let sigma = (expected * (1.0 - ring as f64 / pool as f64)).sqrt();
        for h in hits {
            assert!((h as f64 - expected).abs() < 5.0 * sigma, "{h} vs {expected}");
        }
    }

    #[test]
    fn hashed_sampler_is_uniform_over_blocks() {
        let (pool, ring, draws) = (10_000_000u32, 50u32, 20_000usize);
        assert!(matches!(SwapMap::new(pool, ring), SwapMap::Hashed { .. }));
        let hits = check_sampler(pool, ring, draws);
        let blocks: Vec<u64> = hits.chunks(1_000_000).map(|c| c.iter().sum()).collect();
        let expected = (draws * ring as usize) as f64 / 10.0;
        for b in blocks {
            assert!((b as f64 - expected).abs() < 5.0 * expected.sqrt());
        }
    }

    #[test]
    fn full_pool_is_a_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut sampler = RingSampler::new(7, 7);
        let mut out = Vec::new();
        sampler.sample_into(&mut rng, 7, &mut out);
        out.sort_unstable();
        assert_eq!(out, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn intersection_scan() {
        assert!(rings_intersect(&[1, 4, 9], &[2, 3, 9]));
        assert!(!rings_intersect(&[1, 4, 9], &[2, 3, 10]));
        assert!(!rings_intersect(&[], &[1]));
    }

    #[test]
    fn key_index_matches_pairwise_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &(n, ring, pool) in &[(60usize, 3u32, 40u32), (40, 10, 5000), (30, 8, 9_000_000)] {
            let mut sampler = RingSampler::new(pool, ring);
            let rings: Vec<Vec<u32>> = (0..n)
                .map(|_| {
                    let mut r = Vec::new();
                    sampler.sample_into(&mut rng, ring, &mut r);
                    r.sort_unstable();
                    r
                })
                .collect();
            let index = KeyIndex::build(rings.iter().map(Vec::as_slice), pool);
            let mut expected = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rings_intersect(&rings[i], &rings[j]) {
                        expected.push((i as u32, j as u32));
                    }
                }
            }
            assert_eq!(index.sharing_pairs(), expected);
            assert!(index.candidate_count() >= expected.len() as u64);
        }
    }
}
