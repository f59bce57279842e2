//! Distances and disk areas on the unit torus and the unit square.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Deployment region of unit area.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Torus,
    Square,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Torus => "torus",
            Region::Square => "square",
        })
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus" => Ok(Region::Torus),
            "square" => Ok(Region::Square),
            other => Err(Error::domain(
                "region",
                format!("expected `torus` or `square`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Zones of the unit square for a given radius `r`.
///
/// `S0` is farther than `r` from every edge, `S3` is within `r` of two
/// edges, and the remaining boundary strip is split at edge distance `r/2`
/// into `S1` (closer) and `S2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SquareZone {
    S0,
    S1,
    S2,
    S3,
}

impl SquareZone {
    pub const ALL: [SquareZone; 4] = [SquareZone::S0, SquareZone::S1, SquareZone::S2, SquareZone::S3];

    /// Total area of the zone.
    pub fn area(self, r: f64) -> f64 {
        match self {
            SquareZone::S0 => (1.0 - 2.0 * r).powi(2),
            SquareZone::S1 => 4.0 * (1.0 - 2.0 * r) * r / 2.0,
            SquareZone::S2 => 2.0 * r * (1.0 - 2.0 * r),
            SquareZone::S3 => 4.0 * r * r,
        }
    }
}

/// `H(g)` with its first and second derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryArea {
    pub value: f64,
    pub slope: f64,
    pub curvature: f64,
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 0.5 {
        Ok(())
    } else {
        Err(Error::domain(
            "transmission radius",
            format!("r must lie in (0, 0.5), got {r}"),
        ))
    }
}

/// Shortest distance between two points of `region`.
///
/// On the torus this is the minimum over the nine translates of `b`.
pub fn distance(region: Region, a: Point, b: Point) -> f64 {
    match region {
        Region::Square => (a.x - b.x).hypot(a.y - b.y),
        Region::Torus => {
            let mut best = f64::INFINITY;
            for tx in [-1.0, 0.0, 1.0] {
                for ty in [-1.0, 0.0, 1.0] {
                    best = best.min((a.x - b.x - tx).hypot(a.y - b.y - ty));
                }
            }
            best
        }
    }
}

/// Squared distance with per-axis folding on the torus. Hot-path variant of
/// [`distance`].
#[inline]
pub fn distance_sq(region: Region, a: Point, b: Point) -> f64 {
    let mut dx = (a.x - b.x).abs();
    let mut dy = (a.y - b.y).abs();
    if region == Region::Torus {
        dx = dx.min(1.0 - dx);
        dy = dy.min(1.0 - dy);
    }
    dx * dx + dy * dy
}

/// Area of `{x > a}` inside the origin-centered disk of radius `r`.
fn half_plane(a: f64, r: f64) -> f64 {
    if a >= r {
        0.0
    } else if a <= -r {
        PI * r * r
    } else {
        r * r * (a / r).acos() - a * (r * r - a * a).sqrt()
    }
}

/// Area of `{x > a, y > b}` inside the disk, for `a, b >= 0`.
fn corner(a: f64, b: f64, r: f64) -> f64 {
    if a * a + b * b >= r * r {
        return 0.0;
    }
    let antiderivative = |x: f64| 0.5 * (x * (r * r - x * x).max(0.0).sqrt() + r * r * (x / r).clamp(-1.0, 1.0).asin());
    let top = (r * r - b * b).sqrt();
    antiderivative(top) - antiderivative(a) - b * (top - a)
}

/// Area of `{x > a, y > b}` inside the disk, any signs.
fn beyond(a: f64, b: f64, r: f64) -> f64 {
    match (a >= 0.0, b >= 0.0) {
        (true, true) => corner(a, b, r),
        (false, true) => half_plane(b, r) - corner(-a, b, r),
        (true, false) => half_plane(a, r) - corner(a, -b, r),
        (false, false) => PI * r * r - half_plane(-a, r) - half_plane(-b, r) + corner(-a, -b, r),
    }
}

/// Area of the disk of radius `r` at `center` that lies inside the
/// axis-aligned box `[x0, x1] x [y0, y1]`.
pub fn disk_box_area(center: Point, r: f64, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let (ax, bx) = (x0 - center.x, x1 - center.x);
    let (ay, by) = (y0 - center.y, y1 - center.y);
    let area = beyond(ax, ay, r) - beyond(bx, ay, r) - beyond(ax, by, r) + beyond(bx, by, r);
    area.max(0.0)
}

/// `|D_r(center)|`: area of the radius-`r` disk that lies inside the region.
pub fn clipped_disk_area(region: Region, center: Point, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(match region {
        Region::Torus => PI * r * r,
        Region::Square => disk_box_area(center, r, 0.0, 1.0, 0.0, 1.0),
    })
}

/// Disk area inside the square when the center sits at distance `g` from one
/// edge and farther than `r` from the others.
pub fn boundary_area(g: f64, r: f64) -> Result<BoundaryArea> {
    if !(r > 0.0) {
        return Err(Error::domain("boundary area H", format!("radius must be positive, got {r}")));
    }
    if !(0.0..=r / 2.0).contains(&g) {
        return Err(Error::domain(
            "boundary area H",
            format!("edge distance g={g} outside [0, r/2] for r={r}"),
        ));
    }
    let root = (r * r - g * g).sqrt();
    Ok(BoundaryArea {
        value: (PI - (g / r).acos()) * r * r + g * root,
        slope: 2.0 * root,
        curvature: -2.0 * g / root,
    })
}

/// Intersection area of two radius-`r` disks whose centers are `d` apart.
pub fn lens_area(d: f64, r: f64) -> f64 {
    if d >= 2.0 * r {
        0.0
    } else if d <= 0.0 {
        PI * r * r
    } else {
        2.0 * r * r * (d / (2.0 * r)).acos() - 0.5 * d * (4.0 * r * r - d * d).sqrt()
    }
}

/// Zone of `center` in the partition of the unit square for radius `r`.
pub fn classify_square_zone(center: Point, r: f64) -> SquareZone {
    let dx = center.x.min(1.0 - center.x);
    let dy = center.y.min(1.0 - center.y);
    match (dx <= r, dy <= r) {
        (true, true) => SquareZone::S3,
        (false, false) => SquareZone::S0,
        _ if dx.min(dy) <= r / 2.0 => SquareZone::S1,
        _ => SquareZone::S2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn distances() {
        let a = Point::new(0.1, 0.1);
        let b = Point::new(0.9, 0.9);
        assert!((distance(Region::Torus, a, b) - 0.08f64.sqrt()).abs() < 1e-12);
        assert!((distance(Region::Square, a, b) - 1.28f64.sqrt()).abs() < 1e-12);
        for region in [Region::Torus, Region::Square] {
            assert_eq!(distance(region, a, a), 0.0);
        }
    }

    #[test]
    fn clipped_area_examples() {
        let r = 0.1;
        let full = PI * r * r;
        let interior = clipped_disk_area(Region::Square, Point::new(0.5, 0.5), r).unwrap();
        assert!((interior - full).abs() < 1e-15);
        let quarter = clipped_disk_area(Region::Square, Point::new(0.0, 0.0), r).unwrap();
        assert!((quarter - full / 4.0).abs() < 1e-15);
        let half = clipped_disk_area(Region::Square, Point::new(0.0, 0.5), r).unwrap();
        assert!((half - boundary_area(0.0, r).unwrap().value).abs() < 1e-15);
        assert!((half - full / 2.0).abs() < 1e-15);
        assert_eq!(clipped_disk_area(Region::Torus, Point::new(0.0, 0.0), r).unwrap(), full);
        assert!(clipped_disk_area(Region::Square, Point::new(0.5, 0.5), 0.5).is_err());
        assert!(clipped_disk_area(Region::Torus, Point::new(0.5, 0.5), 0.0).is_err());
    }

    #[test]
    fn boundary_area_endpoints() {
        let r = 0.1;
        let at_edge = boundary_area(0.0, r).unwrap();
        assert!((at_edge.value - PI * r * r / 2.0).abs() < 1e-15);
        assert!((at_edge.slope - 0.2).abs() < 1e-15);
        assert_eq!(at_edge.curvature, 0.0);
        let mid = boundary_area(r / 2.0, r).unwrap();
        assert!((mid.value - (2.0 * PI / 3.0 + 3f64.sqrt() / 4.0) * r * r).abs() < 1e-15);
        assert!((mid.value - 0.025_274_0).abs() < 1e-7);
        assert!((mid.slope - 3f64.sqrt() * r).abs() < 1e-15);
        assert!(boundary_area(0.051, r).is_err());
        assert!(boundary_area(-0.001, r).is_err());
    }

    #[test]
    fn boundary_derivatives_match_finite_differences() {
        let r = 0.1;
        let h = 1e-6 * r;
        for i in 1..50 {
            let g = r / 2.0 * i as f64 / 50.0;
            let at = |x: f64| boundary_area(x, r).unwrap();
            let fd1 = (at(g + h).value - at(g - h).value) / (2.0 * h);
            let fd2 = (at(g + h).slope - at(g - h).slope) / (2.0 * h);
            assert!((fd1 - at(g).slope).abs() < 1e-6 * at(g).slope.abs());
            assert!((fd2 - at(g).curvature).abs() < 1e-6 * at(g).curvature.abs());
            assert!(at(g).curvature <= 0.0);
        }
    }

    #[test]
    fn lens_examples() {
        let r = 0.1;
        assert!((lens_area(0.0, r) - PI * r * r).abs() < 1e-15);
        assert_eq!(lens_area(0.2, r), 0.0);
        let want = (2.0 * PI / 3.0 - 3f64.sqrt() / 2.0) * r * r;
        assert!((lens_area(r, r) - want).abs() < 1e-12);
        assert!((want - 0.012_283_7).abs() < 1e-7);
        // Continuity at tangency.
        assert!(lens_area(2.0 * r - 1e-12, r) < 1e-15);
    }

    #[test]
    fn zone_examples() {
        let r = 0.1;
        assert_eq!(classify_square_zone(Point::new(0.5, 0.5), r), SquareZone::S0);
        assert_eq!(classify_square_zone(Point::new(0.04, 0.5), r), SquareZone::S1);
        assert_eq!(classify_square_zone(Point::new(0.07, 0.5), r), SquareZone::S2);
        assert_eq!(classify_square_zone(Point::new(0.05, 0.05), r), SquareZone::S3);
        assert_eq!(classify_square_zone(Point::new(0.95, 0.98), r), SquareZone::S3);
    }

    #[test]
    fn zone_areas_match_grid_census() {
        let r = 0.13;
        let m = 2000;
        let mut counts = [0usize; 4];
        for i in 0..m {
            for j in 0..m {
                let p = Point::new((i as f64 + 0.5) / m as f64, (j as f64 + 0.5) / m as f64);
                counts[classify_square_zone(p, r) as usize] += 1;
            }
        }
        for zone in SquareZone::ALL {
            let frac = counts[zone as usize] as f64 / (m * m) as f64;
            assert!((frac - zone.area(r)).abs() < 2e-3, "{zone:?}: {frac} vs {}", zone.area(r));
        }
    }

    #[test]
    fn region_parsing() {
        assert_eq!("torus".parse::<Region>().unwrap(), Region::Torus);
        assert_eq!("square".parse::<Region>().unwrap(), Region::Square);
        assert!("disk".parse::<Region>().is_err());
        assert_eq!(Region::Square.to_string(), "square");
    }

    fn unit() -> impl Strategy<Value = f64> {
        0.0..1.0f64
    }

    proptest! {
        #[test]
        fn folded_torus_distance_equals_translate_minimum(ax in unit(), ay in unit(), bx in unit(), by in unit()) {
            let (a, b) = (Point::new(ax, ay), Point::new(bx, by));
            let slow = distance(Region::Torus, a, b);
            let fast = distance_sq(Region::Torus, a, b).sqrt();
            prop_assert!((slow - fast).abs() < 1e-12);
            prop_assert!(slow <= distance(Region::Square, a, b) + 1e-15);
            prop_assert!((slow - distance(Region::Torus, b, a)).abs() < 1e-15);
        }

        #[test]
        fn square_area_is_bounded(x in unit(), y in unit(), r in 0.001..0.499f64) {
            let area = clipped_disk_area(Region::Square, Point::new(x, y), r).unwrap();
            prop_assert!(area >= PI * r * r / 4.0 - 1e-15);
            prop_assert!(area <= PI * r * r + 1e-15);
        }

        #[test]
        fn one_edge_centers_use_boundary_area(g_frac in 0.0..=1.0f64, along in 0.0..1.0f64, side in 0usize..4, r in 0.01..0.24f64) {
            let g = g_frac * r / 2.0;
            let t = r + 1e-9 + along * (1.0 - 2.0 * r - 2e-9);
            let center = match side {
                0 => Point::new(g, t),
                1 => Point::new(1.0 - g, t),
                2 => Point::new(t, g),
                _ => Point::new(t, 1.0 - g),
            };
            prop_assert_eq!(classify_square_zone(center, r), SquareZone::S1);
            let clipped = clipped_disk_area(Region::Square, center, r).unwrap();
            let h = boundary_area(g, r).unwrap().value;
            prop_assert!((clipped - h).abs() < 1e-14, "{} vs {}", clipped, h);
        }

        #[test]
        fn lens_is_monotone(d1 in 0.0..0.3f64, d2 in 0.0..0.3f64, r in 0.01..0.15f64) {
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            prop_assert!(lens_area(lo, r) >= lens_area(hi, r));
        }

        #[test]
        fn zone_areas_sum_to_one(r in 0.0001..0.25f64) {
            let total: f64 = SquareZone::ALL.iter().map(|z| z.area(r)).sum();
            prop_assert!((total - 1.0).abs() < 1e-14);
        }
    }
}
