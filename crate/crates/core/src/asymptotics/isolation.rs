//! Probabilities that one node, or a pair of nodes, has no neighbour when the
//! other nodes form a Poisson process of intensity `n`.

use std::f64::consts::PI;

use crate::combinatorics::{conditional_joint_share, key_share_probability, overlap_distribution};
use crate::error::{Error, Result};
use crate::geometry::{boundary_area, clipped_disk_area, lens_area, Point, Region};
use crate::graph_models::NetworkParams;
use crate::quadrature::Quadrature;

/// One-dimensional integrals.
const LINE_RULE: Quadrature = Quadrature {
    abs_tol: 1e-15,
    rel_tol: 1e-10,
    max_intervals: 4000,
};

/// Iterated two-dimensional integrals.
const AREA_RULE: Quadrature = Quadrature {
    abs_tol: 1e-14,
    rel_tol: 1e-8,
    max_intervals: 2000,
};

fn require_region(params: &NetworkParams, region: Region, quantity: &'static str) -> Result<()> {
    if params.region() == region {
        Ok(())
    } else {
        Err(Error::domain(quantity, format!("defined for the {region} only, got {}", params.region())))
    }
}

/// `exp(−πr² p_s n)`.
pub fn isolated_prob_torus(params: &NetworkParams) -> Result<f64> {
    require_region(params, Region::Torus, "torus isolation probability")?;
    let r = params.radius();
    Ok((-PI * r * r * key_share_probability(params.scheme()) * params.n() as f64).exp())
}

/// Isolation probability on the square split over the four zones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareIsolation {
    pub total: f64,
    /// `T0..T3`: contributions of the interior, the inner and outer halves of
    /// the edge strips, and the corner squares.
    pub zones: [f64; 4],
    /// Sum of the quadrature error estimates.
    pub error: f64,
}

/// `∫ exp(−n p_s |D(v)|) dv` over the unit square, zone by zone.
pub fn isolated_prob_square(params: &NetworkParams) -> Result<SquareIsolation> {
    const QUANTITY: &str = "square isolation probability";
    require_region(params, Region::Square, QUANTITY)?;
    let r = params.radius();
    if r >= 0.25 {
        return Err(Error::domain(QUANTITY, format!("zones overlap unless r < 0.25, got {r}")));
    }
    let rate = key_share_probability(params.scheme()) * params.n() as f64;
    let weight = |area: f64| (-rate * area).exp();
    let strip = 4.0 * (1.0 - 2.0 * r);

    let t0 = (1.0 - 2.0 * r).powi(2) * weight(PI * r * r);
    let t1 = LINE_RULE
        .integrate(|g| weight(boundary_area(g, r).map_or(f64::NAN, |h| h.value)), &[0.0, r / 2.0])
        .map_err(|e| e.within(QUANTITY))?;
    let clipped = |x: f64, y: f64| weight(clipped_disk_area(Region::Square, Point::new(x, y), r).unwrap_or(f64::NAN));
    // Bottom strip between the corners; the other three are congruent.
    let t2 = AREA_RULE
        .integrate_nested(clipped, &[r, 0.5, 1.0 - r], |_| vec![r / 2.0, r])
        .map_err(|e| e.within(QUANTITY))?;
    // Lower-left corner square; the disk reaches the corner inside the arc.
    let t3 = AREA_RULE
        .integrate_nested(clipped, &[0.0, r], |x| vec![0.0, (r * r - x * x).max(0.0).sqrt(), r])
        .map_err(|e| e.within(QUANTITY))?;

    let zones = [t0, strip * t1.value, 4.0 * t2.value, 4.0 * t3.value];
    Ok(SquareIsolation {
        total: zones.iter().sum(),
        zones,
        error: strip * t1.error + 4.0 * (t2.error + t3.error),
    })
}

/// Area shared by two torus disks of radius `r < 1/2` whose centers differ
/// by `(dx, dy)` with both components in `[0, 1/2]`.
fn torus_overlap(dx: f64, dy: f64, r: f64) -> f64 {
    let mut total = 0.0;
    for tx in [0.0, 1.0] {
        for ty in [0.0, 1.0] {
            total += lens_area((dx - tx).hypot(dy - ty), r);
        }
    }
    total
}

fn pair_isolation_at(params: &NetworkParams, u: u32, phi: f64) -> Result<f64> {
    const QUANTITY: &str = "pair isolation probability";
    let r = params.radius();
    let n = params.n() as f64;
    let ps = key_share_probability(params.scheme());
    let disk = PI * r * r;
    let both = |overlap: f64| (-n * (2.0 * ps * disk - phi * overlap)).exp();
    // Adjacent nodes (distance ≤ r with a shared key) are never both isolated.
    let excluded = if u >= 1 { r } else { 0.0 };
    if 2.0 * r <= 0.5 {
        let near = LINE_RULE
            .integrate(|d| 2.0 * PI * d * both(lens_area(d, r)), &[excluded, r, 2.0 * r])
            .map_err(|e| e.within(QUANTITY))?;
        return Ok(near.value + (1.0 - PI * 4.0 * r * r) * both(0.0));
    }
    // Large radius: disks overlap through several translates.
    let mut outer = vec![0.0, 0.5];
    outer.extend([r, 2.0 * r, 1.0 - 2.0 * r].into_iter().filter(|&x| x > 0.0 && x < 0.5));
    outer.sort_by(f64::total_cmp);
    let integrand = |x: f64, y: f64| {
        if u >= 1 && x.hypot(y) <= r {
            0.0
        } else {
            both(torus_overlap(x, y, r))
        }
    };
    let breaks = |x: f64| {
        let mut ys = vec![0.0, 0.5];
        for (cx, radius) in [(0.0, r), (0.0, 2.0 * r), (1.0, 2.0 * r)] {
            for cy in [0.0, 1.0] {
                let h = radius * radius - (x - cx) * (x - cx);
                if h > 0.0 {
                    for y in [cy - h.sqrt(), cy + h.sqrt()] {
                        if y > 0.0 && y < 0.5 {
                            ys.push(y);
                        }
                    }
                }
            }
        }
        ys.sort_by(f64::total_cmp);
        ys
    };
    let quadrant = AREA_RULE
        .integrate_nested(integrand, &outer, breaks)
        .map_err(|e| e.within(QUANTITY))?;
    Ok(4.0 * quadrant.value)
}

/// `P[I_x ∩ I_y | |S_xy| = u]` on the torus.
pub fn pair_isolation_torus(params: &NetworkParams, u: u32) -> Result<f64> {
    require_region(params, Region::Torus, "pair isolation probability")?;
    let phi = conditional_joint_share(params.scheme(), u).map_err(|e| e.within("pair isolation probability"))?;
    pair_isolation_at(params, u, phi)
}

/// Unconditioned joint isolation compared with independence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondMoment {
    /// `Σ_u P[|S_xy| = u] · P[I_x ∩ I_y | u]`.
    pub joint: f64,
    /// `P[I_x]²`.
    pub independent: f64,
    /// `joint / independent − 1`.
    pub epsilon: f64,
}

pub fn pair_isolation_second_moment(params: &NetworkParams) -> Result<SecondMoment> {
    let single = isolated_prob_torus(params)?;
    let overlap = overlap_distribution(params.scheme());
    let mut joint = 0.0;
    for (u, &weight) in overlap.probs().iter().enumerate() {
        if weight > 0.0 {
            joint += weight * pair_isolation_torus(params, u as u32)?;
        }
    }
    let independent = single * single;
    Ok(SecondMoment {
        joint,
        independent,
        epsilon: joint / independent - 1.0,
    })
}
