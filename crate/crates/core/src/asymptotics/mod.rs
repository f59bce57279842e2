//! Closed-form analytic quantities: edge probabilities, critical ranges, the
//! α and δ scalings, condition checks, coupling parameters and isolation
//! probabilities.

mod conditions;
mod isolation;

use std::f64::consts::PI;
use std::fmt;

use crate::combinatorics::{key_share_probability, KeyScheme};
use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::graph_models::NetworkParams;

pub use conditions::{check_theorem1_conditions, check_theorem2_conditions, ConditionConstants, Verdict};
pub use isolation::{
    isolated_prob_square, isolated_prob_torus, pair_isolation_second_moment, pair_isolation_torus,
    SecondMoment, SquareIsolation,
};

/// Which of the two square-region scalings applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeBranch {
    /// `K²/P · n^(1/3) · ln n ≥ 1`.
    Dense,
    Sparse,
}

impl fmt::Display for RegimeBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeBranch::Dense => "dense",
            RegimeBranch::Sparse => "sparse",
        })
    }
}

impl RegimeBranch {
    /// Branch for a pairwise key-sharing scale `q` (either `K²/P` or `p_s`).
    pub fn select(n: f64, q: f64) -> Self {
        if q * n.cbrt() * n.ln() >= 1.0 {
            RegimeBranch::Dense
        } else {
            RegimeBranch::Sparse
        }
    }
}

fn check_nodes(quantity: &'static str, n: u64, min: u64) -> Result<f64> {
    if n < min {
        Err(Error::domain(quantity, format!("needs n >= {min}, got {n}")))
    } else {
        Ok(n as f64)
    }
}

/// `ln z − ln ln z`, requiring `z > floor`.
fn log_minus_loglog(quantity: &'static str, z: f64, floor: f64, what: &str) -> Result<f64> {
    if !(z > floor) {
        return Err(Error::domain(
            quantity,
            format!("inner argument {what} = {z} must exceed {floor:.6}"),
        ));
    }
    Ok(z.ln() - z.ln().ln())
}

/// Right-hand side `n · πr² · q` must equal in the square region, minus α:
/// `ln(n/q) − ln ln(n/q)` when dense, `4 ln(1/q) − 4 ln ln(1/q)` when sparse.
fn square_threshold(quantity: &'static str, n: f64, q: f64, branch: RegimeBranch, floor: f64) -> Result<f64> {
    match branch {
        RegimeBranch::Dense => log_minus_loglog(quantity, n / q, floor, "n/scale"),
        RegimeBranch::Sparse => Ok(4.0 * log_minus_loglog(quantity, 1.0 / q, floor, "1/scale")?),
    }
}

/// `r* = sqrt(ln n / (π n) · P/K²)`.
pub fn critical_range_torus(n: u64, scheme: KeyScheme) -> Result<f64> {
    let n = check_nodes("torus critical range", n, 2)?;
    Ok((n.ln() / (PI * n) / scheme.density()).sqrt())
}

/// Critical range on the square and the branch used to compute it.
pub fn critical_range_square(n: u64, scheme: KeyScheme) -> Result<(f64, RegimeBranch)> {
    const QUANTITY: &str = "square critical range";
    let n = check_nodes(QUANTITY, n, 3)?;
    let q = scheme.density();
    let branch = RegimeBranch::select(n, q);
    let threshold = square_threshold(QUANTITY, n, q, branch, std::f64::consts::E)?;
    Ok(((threshold / (PI * n * q)).sqrt(), branch))
}

/// Finite-`n` value of `π r*(S)² · K²/P / (ln n / n)`, whose limit is
/// [`phase_transition_limit`].
pub fn scaled_square_critical_range(n: u64, scheme: KeyScheme) -> Result<f64> {
    let (r, _) = critical_range_square(n, scheme)?;
    let nf = n as f64;
    Ok(PI * r * r * scheme.density() / (nf.ln() / nf))
}

fn alpha_at(n: f64, scheme: KeyScheme, region: Region, r: f64) -> Result<(f64, Option<RegimeBranch>)> {
    let q = scheme.density();
    let scaled = n * PI * r * r * q;
    match region {
        Region::Torus => Ok((scaled - n.ln(), None)),
        Region::Square => {
            let branch = RegimeBranch::select(n, q);
            let threshold = square_threshold("alpha", n, q, branch, 1.0)?;
            Ok((scaled - threshold, Some(branch)))
        }
    }
}

/// Recover α from the radius by inverting the defining scaling; the branch
/// is reported for the square.
pub fn alpha_from_radius(params: &NetworkParams) -> Result<(f64, Option<RegimeBranch>)> {
    let n = check_nodes("alpha", params.n() as u64, 2)?;
    alpha_at(n, params.scheme(), params.region(), params.radius())
}

/// Radius at which α takes the given value.
pub fn radius_for_alpha(n: u64, scheme: KeyScheme, region: Region, alpha: f64) -> Result<f64> {
    const QUANTITY: &str = "radius for alpha";
    let nf = check_nodes(QUANTITY, n, 2)?;
    let q = scheme.density();
    let threshold = match region {
        Region::Torus => nf.ln(),
        Region::Square => square_threshold(QUANTITY, nf, q, RegimeBranch::select(nf, q), 1.0)?,
    };
    let target = threshold + alpha;
    if !(target > 0.0) {
        return Err(Error::domain(QUANTITY, format!("alpha = {alpha} leaves no positive radius")));
    }
    Ok((target / (PI * nf * q)).sqrt())
}

/// δ alongside α for the same parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta {
    pub delta: f64,
    pub alpha: f64,
    /// Branch chosen from `p_s` (square only).
    pub branch: Option<RegimeBranch>,
}

impl Delta {
    pub fn gap(&self) -> f64 {
        (self.delta - self.alpha).abs()
    }
}

/// Same inversion as [`alpha_from_radius`] with the exact `p_s` in place of
/// `K²/P`.
pub fn delta_from_radius(params: &NetworkParams) -> Result<Delta> {
    let n = check_nodes("delta", params.n() as u64, 2)?;
    let r = params.radius();
    let ps = key_share_probability(params.scheme());
    let scaled = n * PI * r * r * ps;
    let (delta, branch) = match params.region() {
        Region::Torus => (scaled - n.ln(), None),
        Region::Square => {
            let branch = RegimeBranch::select(n, ps);
            (scaled - square_threshold("delta", n, ps, branch, 1.0)?, Some(branch))
        }
    };
    let (alpha, _) = alpha_at(n, params.scheme(), params.region(), r)?;
    Ok(Delta { delta, alpha, branch })
}

/// Limit of the scaled square critical range as a function of
/// `a = lim ln(P/K²) / ln n`.
pub fn phase_transition_limit(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::domain("phase transition limit", format!("exponent a must lie in [0, 1], got {a}")));
    }
    Ok(if a <= 1.0 / 3.0 { 1.0 + a } else { 4.0 * a })
}

/// Finite-`n` estimate `ln(P/K²) / ln n` of the exponent `a`.
pub fn implied_exponent(n: u64, scheme: KeyScheme) -> Result<f64> {
    let n = check_nodes("implied exponent", n, 2)?;
    Ok((1.0 / scheme.density()).ln() / n.ln())
}

/// `πr² p_s`, exact on the torus for `r < 1/2`.
pub fn edge_probability_torus(params: &NetworkParams) -> f64 {
    let r = params.radius();
    PI * r * r * key_share_probability(params.scheme())
}

/// `((1 − 2r)² πr² p_s, πr² p_s)`.
pub fn edge_probability_square_bounds(params: &NetworkParams) -> (f64, f64) {
    let upper = edge_probability_torus(params);
    (upper * (1.0 - 2.0 * params.radius()).powi(2), upper)
}

/// Parameters of the coupling between the key graph and an Erdős–Rényi
/// graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    /// Per-key inclusion probability of the intermediate intersection graph.
    pub p_n: f64,
    /// Edge probability of the dominated Erdős–Rényi graph.
    pub s_n: f64,
    pub verdicts: Vec<Verdict>,
}

pub fn coupling_parameters(n: u64, scheme: KeyScheme) -> Result<Coupling> {
    const QUANTITY: &str = "coupling parameters";
    let nf = check_nodes(QUANTITY, n, 2)?;
    let k = f64::from(scheme.ring_size());
    let pool = f64::from(scheme.pool_size());
    let ln_n = nf.ln();
    if !(k > 3.0 * ln_n) {
        return Err(Error::domain(
            QUANTITY,
            format!("p_n is positive only when K > 3 ln n = {:.6}, got K = {k}", 3.0 * ln_n),
        ));
    }
    let p_n = k / pool * (1.0 - (3.0 * ln_n / k).sqrt());
    let mean_ring = p_n * pool;
    let s_n = p_n * p_n * pool * (1.0 - nf * p_n + 2.0 * p_n - p_n * p_n * pool / 2.0);
    let density = scheme.density();
    let verdicts = vec![
        Verdict::new("p_n P > ln n", mean_ring, ln_n, mean_ring > ln_n),
        {
            let rhs = mean_ring + (3.0 * (mean_ring + ln_n) * ln_n).sqrt();
            Verdict::new("K >= p_n P + sqrt(3 (p_n P + ln n) ln n)", k, rhs, k >= rhs)
        },
        Verdict::new("n p_n < 1", nf * p_n, 1.0, nf * p_n < 1.0),
        Verdict::new("p_n^2 P < 1", p_n * p_n * pool, 1.0, p_n * p_n * pool < 1.0),
        Verdict::new("0 < s_n < K^2/P", s_n, density, s_n > 0.0 && s_n < density),
    ];
    Ok(Coupling { p_n, s_n, verdicts })
}

/// Everything the `report` command prints for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticReport {
    pub region: Region,
    pub n: u64,
    pub scheme: KeyScheme,
    pub radius: f64,
    pub p_s: f64,
    pub p_e_torus: f64,
    pub p_e_square_bounds: (f64, f64),
    pub r_star: f64,
    pub branch: Option<RegimeBranch>,
    pub alpha: f64,
    pub implied_exponent: f64,
    /// Present when the implied exponent lies in `[0, 1]`.
    pub phase_limit: Option<f64>,
    pub condition_verdicts: Vec<Verdict>,
    /// Present when `K > 3 ln n`.
    pub coupling: Option<Coupling>,
}

/// Analytic summary at radius `r`, or at the critical range when `r` is
/// `None`.
pub fn analytic_report(
    n: u64,
    scheme: KeyScheme,
    region: Region,
    r: Option<f64>,
    consts: &ConditionConstants,
) -> Result<AnalyticReport> {
    let nf = check_nodes("analytic report", n, 3)?;
    let (r_star, branch) = match region {
        Region::Torus => (critical_range_torus(n, scheme)?, None),
        Region::Square => {
            let (r, b) = critical_range_square(n, scheme)?;
            (r, Some(b))
        }
    };
    let radius = r.unwrap_or(r_star);
    if !(radius > 0.0) {
        return Err(Error::domain("transmission radius", format!("must be positive, got {radius}")));
    }
    let p_s = key_share_probability(scheme);
    let p_e_torus = PI * radius * radius * p_s;
    let (alpha, _) = alpha_at(nf, scheme, region, radius)?;
    let exponent = implied_exponent(n, scheme)?;
    let condition_verdicts = match region {
        Region::Torus => check_theorem1_conditions(n, scheme, consts)?,
        Region::Square => check_theorem2_conditions(n, scheme, consts)?,
    };
    Ok(AnalyticReport {
        region,
        n,
        scheme,
        radius,
        p_s,
        p_e_torus,
        p_e_square_bounds: (p_e_torus * (1.0 - 2.0 * radius).powi(2), p_e_torus),
        r_star,
        branch,
        alpha,
        implied_exponent: exponent,
        phase_limit: phase_transition_limit(exponent).ok(),
        condition_verdicts,
        coupling: coupling_parameters(n, scheme).ok(),
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn scheme(k: u32, p: u32) -> KeyScheme {
        KeyScheme::new(k, p).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn torus_critical_range_examples() {
        let r = critical_range_torus(2000, scheme(40, 10_000)).unwrap();
        // Quoted as ≈ 0.086954; the exact value is 0.08695261634920292.
        assert!(close(r, 0.086954, 1.5e-6), "{r}");
        assert!(close(r, 0.086_952_616_349_202_92, 1e-15));
        // Doubling K²/P halves r*².
        let a = critical_range_torus(5000, scheme(10, 4000)).unwrap();
        let b = critical_range_torus(5000, scheme(10, 2000)).unwrap();
        assert!(close(b * b, a * a / 2.0, 1e-15));
        assert!(critical_range_torus(1, scheme(2, 10)).is_err());
    }

    #[test]
    fn square_critical_range_examples() {
        let (r, branch) = critical_range_square(2000, scheme(40, 10_000)).unwrap();
        assert_eq!(branch, RegimeBranch::Dense);
        // Quoted as ≈ 0.084566; the exact value is 0.08456505085968169.
        assert!(close(r, 0.084566, 1.5e-6), "{r}");
        assert!(close(r, 0.084_565_050_859_681_69, 1e-15));

        let (r, branch) = critical_range_square(2000, scheme(4, 1_000_000)).unwrap();
        assert_eq!(branch, RegimeBranch::Sparse);
        let y: f64 = 1e6 / 16.0;
        let expected = 2.0 * ((y.ln() - y.ln().ln()) / (PI * 2000.0 * 16.0 / 1e6)).sqrt();
        assert!(close(r, expected, 1e-12));

        assert!(matches!(critical_range_square(2, scheme(10, 200)), Err(Error::Domain { .. })));
    }

    #[test]
    fn square_critical_range_rejects_small_inner_argument() {
        // n = 3 with K²/P tiny: sparse branch, P/K² must exceed e.
        let s = scheme(1, 2);
        assert_eq!(RegimeBranch::select(3.0, s.density()), RegimeBranch::Sparse);
        assert!(critical_range_square(3, s).is_err());
    }

    #[test]
    fn alpha_inversion_examples() {
        let s = scheme(40, 10_000);
        let rt = critical_range_torus(2000, s).unwrap();
        let params = NetworkParams::new(2000, s, rt, Region::Torus).unwrap();
        assert!(alpha_from_radius(&params).unwrap().0.abs() < 1e-10);

        let r5 = ((2000f64.ln() + 5.0) / (2000.0 * PI * s.density())).sqrt();
        let params = NetworkParams::new(2000, s, r5, Region::Torus).unwrap();
        assert!(close(alpha_from_radius(&params).unwrap().0, 5.0, 1e-10));

        let (rs, branch) = critical_range_square(2000, s).unwrap();
        let params = NetworkParams::new(2000, s, rs, Region::Square).unwrap();
        let (alpha, got) = alpha_from_radius(&params).unwrap();
        assert!(alpha.abs() < 1e-10);
        assert_eq!(got, Some(branch));
    }

    #[test]
    fn radius_for_alpha_round_trips() {
        let s = scheme(20, 10_000);
        for region in [Region::Torus, Region::Square] {
            for alpha in [-3.0, 0.0, 2.5] {
                let r = radius_for_alpha(1000, s, region, alpha).unwrap();
                let params = NetworkParams::new(1000, s, r, region).unwrap();
                assert!(close(alpha_from_radius(&params).unwrap().0, alpha, 1e-10));
            }
        }
        assert!(radius_for_alpha(1000, s, Region::Torus, -100.0).is_err());
    }

    #[test]
    fn delta_examples() {
        for &(k, p, r) in &[(10u32, 10_000u32, 0.1), (4, 100_000, 0.2), (20, 40_000, 0.05)] {
            let s = scheme(k, p);
            let n = 1000u32;
            let params = NetworkParams::new(n, s, r, Region::Square).unwrap();
            let d = delta_from_radius(&params).unwrap();
            assert!(d.delta.is_finite());
            let q = s.density();
            assert!(q <= 0.01);
            let nf = n as f64;
            let ps = key_share_probability(s);
            let b_alpha = square_threshold("t", nf, q, RegimeBranch::select(nf, q), 1.0).unwrap();
            let b_delta = square_threshold("t", nf, ps, RegimeBranch::select(nf, ps), 1.0).unwrap();
            let bound = nf * PI * r * r * q * q * 2.0 + (b_alpha - b_delta).abs();
            assert!(d.gap() <= bound, "{} > {bound}", d.gap());
        }
    }

    #[test]
    fn delta_equals_alpha_when_scales_coincide() {
        // With the same dense branch, δ − α is exactly the key-sharing
        // substitution in both the area term and the logarithms.
        let s = scheme(40, 10_000);
        let params = NetworkParams::new(2000, s, 0.09, Region::Square).unwrap();
        let d = delta_from_radius(&params).unwrap();
        let (n, r, q, ps) = (2000.0f64, 0.09f64, s.density(), key_share_probability(s));
        let expected = n * PI * r * r * (ps - q) - ((n / ps).ln() - (n / ps).ln().ln()) + ((n / q).ln() - (n / q).ln().ln());
        assert!(close(d.delta - d.alpha, expected, 1e-10));
    }

    #[test]
    fn phase_limit_anchors() {
        assert_eq!(phase_transition_limit(0.0).unwrap(), 1.0);
        assert!(close(phase_transition_limit(1.0 / 3.0).unwrap(), 4.0 / 3.0, 1e-15));
        assert!(close(4.0 * (1.0 / 3.0), 1.0 + 1.0 / 3.0, 1e-15));
        assert_eq!(phase_transition_limit(1.0).unwrap(), 4.0);
        assert!(phase_transition_limit(1.5).is_err());
        assert!(phase_transition_limit(-0.1).is_err());
        let eps = 1e-9;
        let left = phase_transition_limit(1.0 / 3.0 - eps).unwrap();
        let right = phase_transition_limit(1.0 / 3.0 + eps).unwrap();
        assert!(close(left, right, 1e-8));
    }

    #[test]
    fn coupling_example() {
        let c = coupling_parameters(10_000, scheme(1000, 10_000_000)).unwrap();
        assert!(close(c.p_n, 8.3377e-5, 1e-9), "{}", c.p_n);
        let n = 10_000f64;
        let expected = c.p_n * c.p_n * 1e7 * (1.0 - n * c.p_n + 2.0 * c.p_n - c.p_n * c.p_n * 1e7 / 2.0);
        assert!(close(c.s_n, expected, 1e-15));
        assert!(close(c.s_n, 0.00915, 5e-5));
        assert!(c.verdicts.iter().all(|v| v.holds), "{:?}", c.verdicts);
        assert!(coupling_parameters(10_000, scheme(20, 1000)).is_err());
    }

    #[test]
    fn square_versus_torus_predicate() {
        for &(n, k, p) in &[(2000u64, 40u32, 10_000u32), (2000, 4, 1_000_000), (10_000, 30, 1_000_000), (500, 2, 50_000)] {
            let s = scheme(k, p);
            let q = s.density();
            let nf = n as f64;
            let rt = critical_range_torus(n, s).unwrap();
            let (rs, branch) = critical_range_square(n, s).unwrap();
            let predicate = match branch {
                RegimeBranch::Dense => (1.0 / q).ln() >= (nf / q).ln().ln(),
                RegimeBranch::Sparse => 4.0 * (1.0 / q).ln() - 4.0 * (1.0 / q).ln().ln() >= nf.ln(),
            };
            assert_eq!(rs >= rt, predicate, "n={n} K={k} P={p}");
        }
    }

    #[test]
    fn report_fields_are_consistent() {
        let s = scheme(20, 10_000);
        let rep = analytic_report(1000, s, Region::Square, None, &ConditionConstants::default()).unwrap();
        assert!(rep.alpha.abs() < 1e-10);
        assert!(rep.p_e_square_bounds.0 <= rep.p_e_square_bounds.1);
        assert!(rep.r_star > 0.0 && rep.r_star < 2f64.sqrt());
        assert!(rep.coupling.is_none());
        let torus = analytic_report(1000, s, Region::Torus, Some(0.2), &ConditionConstants::default()).unwrap();
        assert_eq!(torus.radius, 0.2);
        assert!(torus.branch.is_none());
    }

    fn valid_scheme() -> impl Strategy<Value = (u64, KeyScheme)> {
        (10u64..1_000_000, 1u32..200, 2u32..20_000).prop_map(|(n, k, extra)| (n, scheme(k, k * k + extra * k)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn critical_ranges_invert_to_zero((n, s) in valid_scheme()) {
            let rt = critical_range_torus(n, s).unwrap();
            let nf = n as f64;
            let (alpha, _) = alpha_at(nf, s, Region::Torus, rt).unwrap();
            prop_assert!(alpha.abs() < 1e-10 * nf.ln().max(1.0));
            if let Ok((rs, _)) = critical_range_square(n, s) {
                let (alpha, _) = alpha_at(nf, s, Region::Square, rs).unwrap();
                prop_assert!(alpha.abs() < 1e-10 * nf.ln().max(1.0));
            }
        }

        #[test]
        fn critical_ranges_decrease_in_density(n in 100u64..1_000_000, k in 2u32..60, p in 5_000u32..2_000_000) {
            prop_assume!(p > (k + 1) * (k + 1));
            let lower = scheme(k, p);
            let higher = scheme(k + 1, p);
            prop_assert!(critical_range_torus(n, higher).unwrap() < critical_range_torus(n, lower).unwrap());
            if let (Ok((a, ba)), Ok((b, bb))) = (critical_range_square(n, lower), critical_range_square(n, higher)) {
                if ba == bb {
                    prop_assert!(b < a);
                }
            }
        }
    }
}
