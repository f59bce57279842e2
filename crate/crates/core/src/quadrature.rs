//! Globally adaptive Gauss–Kronrod (7/15) quadrature in one dimension and
//! iterated quadrature over two.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mid = f(center);
    let mut kronrod = mid * KRONROD_WEIGHTS[7];
    let mut gauss = mid * GAUSS_WEIGHTS[3];
    for (i, (&x, &w)) in KRONROD_NODES[..7].iter().zip(&KRONROD_WEIGHTS[..7]).enumerate() {
        let pair = f(center - half * x) + f(center + half * x);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

impl Quadrature {
    pub fn new(abs_tol: f64) -> Self {
        Quadrature {
            abs_tol,
            rel_tol: 0.0,
            max_intervals: 4000,
        }
    }

    /// Integrate `f` over `[points[0], points[last]]`, starting with the
    /// given breakpoints as interval boundaries.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, points: &[f64]) -> Result<Integral> {
        assert!(points.len() >= 2, "need at least the two endpoints");
        let mut heap = BinaryHeap::new();
        let mut evaluations = 0;
        for w in points.windows(2) {
            if w[1] > w[0] {
                let (value, error) = kronrod(&mut f, w[0], w[1]);
                evaluations += 15;
                heap.push(Piece { a: w[0], b: w[1], value, error });
            }
        }
        loop {
            let value: f64 = heap.iter().map(|p| p.value).sum();
            let error: f64 = heap.iter().map(|p| p.error).sum();
            let target = self.abs_tol.max(self.rel_tol * value.abs());
            if error <= target {
                return Ok(Integral { value, error, evaluations });
            }
            let Some(worst) = heap.pop() else {
                return Ok(Integral { value, error, evaluations });
            };
            let mid = 0.5 * (worst.a + worst.b);
            if heap.len() + 2 > self.max_intervals || !(worst.a < mid && mid < worst.b) {
                return Err(Error::Quadrature {
                    quantity: "integral",
                    achieved: error,
                    tolerance: target,
                });
            }
            for (a, b) in [(worst.a, mid), (mid, worst.b)] {
                let (value, error) = kronrod(&mut f, a, b);
                evaluations += 15;
                heap.push(Piece { a, b, value, error });
            }
        }
    }

    /// Iterated integral `∫ dx ∫ f(x, y) dy` where `inner(x)` lists the
    /// inner breakpoints (endpoints included) for each outer abscissa.
    pub fn integrate_nested<F, L>(&self, f: F, outer: &[f64], inner: L) -> Result<Integral>
    where
        F: Fn(f64, f64) -> f64,
        L: Fn(f64) -> Vec<f64>,
    {
        let width = outer.last().unwrap() - outer[0];
        let inner_rule = Quadrature {
            abs_tol: self.abs_tol / (4.0 * width.max(f64::MIN_POSITIVE)),
            rel_tol: self.rel_tol / 4.0,
            max_intervals: self.max_intervals,
        };
        let failure: Cell<Option<Error>> = Cell::new(None);
        let inner_evals = Cell::new(0usize);
        let outer_rule = Quadrature {
            abs_tol: self.abs_tol / 2.0,
            rel_tol: self.rel_tol / 2.0,
            max_intervals: self.max_intervals,
        };
        let result = outer_rule.integrate(
            |x| {
                let points = inner(x);
                if points.len() < 2 || points.last() <= points.first() {
                    return 0.0;
                }
                match inner_rule.integrate(|y| f(x, y), &points) {
                    Ok(integral) => {
                        inner_evals.set(inner_evals.get() + integral.evaluations);
                        integral.value
                    }
                    Err(e) => {
                        failure.set(Some(e));
                        f64::NAN
                    }
                }
            },
            outer,
        );
        if let Some(e) = failure.take() {
            return Err(e);
        }
        let mut integral = result?;
        integral.evaluations += inner_evals.get();
        integral.error += inner_rule.abs_tol * width;
        Ok(integral)
    }
}
