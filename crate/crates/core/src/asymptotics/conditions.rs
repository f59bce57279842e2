//! Finite-`n` evaluation of the parameter conditions of the two zero–one
//! laws. Sequences that are only meaningful asymptotically (`μ_n`, `ν_n`)
//! are replaced by user-supplied values at the evaluated `n`.

use std::fmt;

use crate::combinatorics::KeyScheme;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionConstants {
    pub c1: f64,
    pub c2: f64,
    /// Must lie in `(0, 1)`.
    pub c3: f64,
    pub c4: f64,
    /// Stand-in for the diverging `μ_n`.
    pub mu: f64,
    /// Stand-in for the vanishing `ν_n`.
    pub nu: f64,
    /// De-Poissonization exponent in `(0, 1/2)`.
    pub c0: f64,
    pub eps1: f64,
    pub eps2: f64,
}

impl Default for ConditionConstants {
    fn default() -> Self {
        ConditionConstants {
            c1: 2.0,
            c2: 0.1,
            c3: 0.9,
            c4: 2.0,
            mu: 1.0,
            nu: 0.5,
            c0: 0.25,
            eps1: 0.2,
            eps2: 0.15,
        }
    }
}

impl ConditionConstants {
    pub fn validate(&self) -> Result<()> {
        let positive = [("c1", self.c1), ("c2", self.c2), ("c4", self.c4), ("mu", self.mu), ("nu", self.nu)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain("condition constants", format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.c3 > 0.0 && self.c3 < 1.0) {
            return Err(Error::domain("condition constants", format!("c3 must lie in (0, 1), got {}", self.c3)));
        }
        if !(self.c0 > 0.0 && self.c0 < 0.5) {
            return Err(Error::domain("condition constants", format!("c0 must lie in (0, 0.5), got {}", self.c0)));
        }
        if !(self.eps1.is_finite() && self.eps2.is_finite()) {
            return Err(Error::domain("condition constants", "eps1 and eps2 must be finite"));
        }
        Ok(())
    }
}

/// One inequality evaluated at a single `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub label: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Verdict {
    pub(crate) fn new(label: &'static str, lhs: f64, rhs: f64, holds: bool) -> Self {
        Verdict { label, lhs, rhs, holds }
    }

    fn at_most(label: &'static str, lhs: f64, rhs: f64) -> Self {
        Verdict::new(label, lhs, rhs, lhs <= rhs)
    }

    fn at_least(label: &'static str, lhs: f64, rhs: f64) -> Self {
        Verdict::new(label, lhs, rhs, lhs >= rhs)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<5} {}  [lhs {:.6e}, rhs {:.6e}]",
            if self.holds { "true" } else { "false" },
            self.label,
            self.lhs,
            self.rhs
        )
    }
}

fn prepare(n: u64, consts: &ConditionConstants) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain("condition check", format!("needs n >= 3 so that ln ln n > 0, got {n}")));
    }
    consts.validate()?;
    Ok(n as f64)
}

/// Ring-size bounds for the torus law and the facts (i)–(iii) derived from
/// them.
pub fn check_theorem1_conditions(n: u64, scheme: KeyScheme, consts: &ConditionConstants) -> Result<Vec<Verdict>> {
    let n = prepare(n, consts)?;
    let k = f64::from(scheme.ring_size());
    let p = f64::from(scheme.pool_size());
    let ln_n = n.ln();
    let q = scheme.density();
    let floor = ln_n / ln_n.ln();
    Ok(vec![
        Verdict::at_least("K >= ln n / ln ln n", k, floor),
        Verdict::at_least("K >= mu sqrt(P ln n / n)", k, consts.mu * (p * ln_n / n).sqrt()),
        Verdict::at_most("K <= c1 sqrt(P / ln n)", k, consts.c1 * (p / ln_n).sqrt()),
        Verdict::at_least("(i) K^2/P >= mu^2 ln n / n", q, consts.mu * consts.mu * ln_n / n),
        Verdict::at_most("(ii) K^2/P <= c1^2 / ln n", q, consts.c1 * consts.c1 / ln_n),
        Verdict::at_least("(iii) K >= ln n / ln ln n", k, floor),
    ])
}

/// Ring-size bounds for the square law, the constraints (iv)–(vii) and the
/// `P = Θ(n^(1+ε1))`, `K = Θ(n^ε2)` family test.
pub fn check_theorem2_conditions(n: u64, scheme: KeyScheme, consts: &ConditionConstants) -> Result<Vec<Verdict>> {
    let n = prepare(n, consts)?;
    let ConditionConstants { c2, c3, c4, nu, eps1, eps2, .. } = *consts;
    let k = f64::from(scheme.ring_size());
    let p = f64::from(scheme.pool_size());
    let ln_n = n.ln();
    let q = scheme.density();
    let lower_q = c2 * c2 * ln_n / n.powf(c3);
    let upper_q = nu * nu / ln_n;
    let family = 0.0 < eps1 && eps1 < 1.0 && eps1 / 2.0 < eps2 && eps2 < eps1;
    Ok(vec![
        Verdict::at_least("K >= c2 sqrt(P ln n / n^c3)", k, c2 * (p * ln_n / n.powf(c3)).sqrt()),
        Verdict::at_most("K <= nu sqrt(P / ln n)", k, nu * (p / ln_n).sqrt()),
        Verdict::at_most("K <= c4 P / (n ln n)", k, c4 * p / (n * ln_n)),
        Verdict::at_most("(iv) K/P <= c4 / (n ln n)", k / p, c4 / (n * ln_n)),
        Verdict::new(
            "(v) c2^2 ln n / n^c3 <= K^2/P <= nu^2 / ln n",
            q,
            upper_q,
            lower_q <= q && q <= upper_q,
        ),
        Verdict::at_least(
            "(vi) P >= c2^2 c4^-2 n^(2-c3) (ln n)^3",
            p,
            c2 * c2 / (c4 * c4) * n.powf(2.0 - c3) * ln_n.powi(3),
        ),
        Verdict::at_least("(vii) K >= c2^2 c4^-1 n^(1-c3) (ln n)^2", k, c2 * c2 / c4 * n.powf(1.0 - c3) * ln_n.powi(2)),
        Verdict::new("0 < eps1 < 1 and eps1/2 < eps2 < eps1", eps2, eps1, family),
    ])
}
