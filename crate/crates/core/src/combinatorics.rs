//! Key-sharing probabilities for rings drawn uniformly without replacement
//! from a common key pool.
//!
//! Every binomial ratio is evaluated in log space and exponentiated last, so
//! pools of 10^8 keys cause no overflow.

use crate::error::{Error, Result};

/// Ring size `K` and pool size `P` of a uniform key predistribution scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyScheme {
    ring_size: u32,
    pool_size: u32,
}

impl KeyScheme {
    pub fn new(ring_size: u32, pool_size: u32) -> Result<Self> {
        if ring_size == 0 {
            return Err(Error::domain("key scheme", "ring size K must be at least 1"));
        }
        if ring_size > pool_size {
            return Err(Error::domain(
                "key scheme",
                format!("ring size K={ring_size} exceeds pool size P={pool_size}"),
            ));
        }
        Ok(KeyScheme {
            ring_size,
            pool_size,
        })
    }

    pub fn ring_size(&self) -> u32 {
        self.ring_size
    }

    pub fn pool_size(&self) -> u32 {
        self.pool_size
    }

    /// `K^2 / P`, the asymptotic key-sharing probability.
    pub fn density(&self) -> f64 {
        let k = f64::from(self.ring_size);
        k * k / f64::from(self.pool_size)
    }

    /// True when `P < 2K`, where any two rings must overlap.
    pub fn is_saturated(&self) -> bool {
        u64::from(self.pool_size) < 2 * u64::from(self.ring_size)
    }
}

/// Law of the overlap size `|S_x ∩ S_y|` of two independent rings.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapDistribution {
    probs: Vec<f64>,
}

impl OverlapDistribution {
    /// Entry `u` is the probability that exactly `u` keys are shared.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, u: usize) -> f64 {
        self.probs.get(u).copied().unwrap_or(0.0)
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(u, p)| u as f64 * p)
            .sum()
    }
}

/// `ln C(n, k)`; negative infinity when `k > n`.
pub fn log_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    if k == 0 {
        return 0.0;
    }
    if k <= 256 {
        // Summing short products is more accurate than differencing
        // log-gamma values of large magnitude.
        let base = (n - k) as f64;
        (1..=k)
            .map(|i| (base / i as f64).ln_1p())
            .sum()
    } else {
        libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
    }
}

/// `ln [C(P - avoid, K) / C(P, K)]`: log-probability that a fresh ring
/// misses a fixed set of `avoid` keys.
fn log_miss_ratio(pool: u64, ring: u64, avoid: u64) -> f64 {
    if avoid > pool || pool - avoid < ring {
        return f64::NEG_INFINITY;
    }
    let avoid = avoid as f64;
    (0..ring)
        .map(|i| (-avoid / (pool - i) as f64).ln_1p())
        .sum()
}

/// Clamp a probability produced by floating-point arithmetic into `[0, 1]`.
pub(crate) fn clamp_probability(p: f64) -> f64 {
    debug_assert!(
        (-1e-10..=1.0 + 1e-10).contains(&p),
        "probability {p} is outside [0,1] by more than rounding"
    );
    p.clamp(0.0, 1.0)
}

/// Exact probability `p_s` that two rings share at least one key.
pub fn key_share_probability(scheme: KeyScheme) -> f64 {
    if scheme.is_saturated() {
        return 1.0;
    }
    let k = u64::from(scheme.ring_size);
    let log_miss = log_miss_ratio(u64::from(scheme.pool_size), k, k);
    clamp_probability(-log_miss.exp_m1())
}

/// The bound `p_s <= K^2 / P`, stated only for `P >= 2K`.
pub fn key_share_upper_bound(scheme: KeyScheme) -> Result<f64> {
    if scheme.is_saturated() {
        return Err(Error::domain(
            "key-share upper bound",
            format!(
                "bound requires P >= 2K (got K={}, P={})",
                scheme.ring_size, scheme.pool_size
            ),
        ));
    }
    Ok(scheme.density())
}

/// Hypergeometric law of the overlap: `C(K,u) C(P-K,K-u) / C(P,K)`.
pub fn overlap_distribution(scheme: KeyScheme) -> OverlapDistribution {
    let k = u64::from(scheme.ring_size);
    let p = u64::from(scheme.pool_size);
    let u_min = (2 * k).saturating_sub(p);

    let mut log_prob = if u_min == 0 {
        log_miss_ratio(p, k, k)
    } else {
        log_binomial(k, u_min) + log_binomial(p - k, k - u_min) - log_binomial(p, k)
    };

    let mut probs = vec![0.0; k as usize + 1];
    for u in u_min..=k {
        probs[u as usize] = clamp_probability(log_prob.exp());
        if u < k {
            let shrink = ((k - u) as f64).ln() * 2.0;
            let grow = ((u + 1) as f64).ln() + ((p + u + 1 - 2 * k) as f64).ln();
            log_prob += shrink - grow;
        }
    }
    OverlapDistribution { probs }
}

/// `phi_u`: probability that a third ring meets both of two rings that
/// share exactly `u` keys.
pub fn conditional_joint_share(scheme: KeyScheme, u: u32) -> Result<f64> {
    let k = u64::from(scheme.ring_size);
    let p = u64::from(scheme.pool_size);
    let u = u64::from(u);
    if u > k {
        return Err(Error::domain(
            "conditional joint share",
            format!("overlap u={u} exceeds ring size K={k}"),
        ));
    }
    let union = 2 * k - u;
    if union > p {
        return Err(Error::domain(
            "conditional joint share",
            format!("two rings sharing u={u} keys need {union} pool keys but P={p}"),
        ));
    }
    // 2 p_s - 1 + C(P - (2K - u), K) / C(P, K), rewritten as
    // expm1(b) - 2 expm1(a) to avoid cancelling when p_s is small.
    let a = if scheme.is_saturated() {
        f64::NEG_INFINITY
    } else {
        log_miss_ratio(p, k, k)
    };
    let b = log_miss_ratio(p, k, union);
    Ok(clamp_probability(b.exp_m1() - 2.0 * a.exp_m1()))
}

/// Upper bound `uK/P + 2K^4/P^2` on `phi_u`, valid when `P >= 3K`.
pub fn joint_share_upper_bound(scheme: KeyScheme, u: u32) -> Option<f64> {
    if u64::from(scheme.pool_size) < 3 * u64::from(scheme.ring_size) {
        return None;
    }
    let k = f64::from(scheme.ring_size);
    let p = f64::from(scheme.pool_size);
    Some(f64::from(u) * k / p + 2.0 * k.powi(4) / (p * p))
}
