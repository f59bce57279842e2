//! Grid-bucket enumeration of point pairs within a radius.

use crate::geometry::{distance_sq, Point, Region};

/// Points bucketed into an `m × m` grid whose cells are at least `r` wide.
struct Grid {
    start: Vec<u32>,
    order: Vec<u32>,
}

impl Grid {
    fn new(points: &[Point], m: usize) -> Self {
        let cell = |p: &Point| {
            let cx = ((p.x * m as f64) as usize).min(m - 1);
            let cy = ((p.y * m as f64) as usize).min(m - 1);
            cy * m + cx
        };
        let mut start = vec![0u32; m * m + 1];
        for p in points {
            start[cell(p) + 1] += 1;
        }
        for c in 0..m * m {
            start[c + 1] += start[c];
        }
        let mut fill = start.clone();
        let mut order = vec![0u32; points.len()];
        for (i, p) in points.iter().enumerate() {
            let c = cell(p);
            order[fill[c] as usize] = i as u32;
            fill[c] += 1;
        }
        Grid { start, order }
    }

    fn members(&self, c: usize) -> &[u32] {
        &self.order[self.start[c] as usize..self.start[c + 1] as usize]
    }
}

/// Cells per axis: no narrower than `r`, and not many more cells than points.
fn cells_per_axis(n: usize, r: f64) -> usize {
    let by_radius = if r > 0.0 { (1.0 / r).floor().min(1e6) as usize } else { 1_000_000 };
    let by_count = ((2 * n) as f64).sqrt().ceil() as usize;
    by_radius.min(by_count).max(1)
}

/// Call `f(i, j, d²)` with `i < j` for every pair at distance at most `r`.
pub fn for_each_pair_within(region: Region, points: &[Point], r: f64, mut f: impl FnMut(u32, u32, f64)) {
    let r2 = r * r;
    let m = cells_per_axis(points.len(), r);
    let mut emit = |a: u32, b: u32| {
        let d2 = distance_sq(region, points[a as usize], points[b as usize]);
        if d2 <= r2 {
            f(a.min(b), a.max(b), d2);
        }
    };
    if m < 3 {
        for a in 0..points.len() as u32 {
            for b in a + 1..points.len() as u32 {
                emit(a, b);
            }
        }
        return;
    }
    let grid = Grid::new(points, m);
    // Half stencil: each neighbouring cell pair is visited once.
    const OFFSETS: [(isize, isize); 4] = [(1, 0), (-1, 1), (0, 1), (1, 1)];
    for cy in 0..m {
        for cx in 0..m {
            let here = grid.members(cy * m + cx);
            for (x, &a) in here.iter().enumerate() {
                for &b in &here[x + 1..] {
                    emit(a, b);
                }
            }
            for (dx, dy) in OFFSETS {
                let (mut nx, mut ny) = (cx as isize + dx, cy as isize + dy);
                match region {
                    Region::Torus => {
                        nx = nx.rem_euclid(m as isize);
                        ny = ny.rem_euclid(m as isize);
                    }
                    Region::Square => {
                        if nx < 0 || nx >= m as isize || ny >= m as isize {
                            continue;
                        }
                    }
                }
                let there = grid.members(ny as usize * m + nx as usize);
                for &a in here {
                    for &b in there {
                        emit(a, b);
                    }
                }
            }
        }
    }
}

/// Sorted list of pairs within `r`, each with its squared distance.
pub fn pairs_within(region: Region, points: &[Point], r: f64) -> Vec<(u32, u32, f64)> {
    let mut pairs = Vec::new();
    for_each_pair_within(region, points, r, |a, b, d2| pairs.push((a, b, d2)));
    pairs.sort_unstable_by_key(|&(a, b, _)| (a, b));
    pairs
}
