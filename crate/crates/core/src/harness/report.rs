use crate::asymptotics::{AnalyticReport, RegimeBranch};

/// Normalise `-0.0` so that a radius exactly at `r*` prints as zero.
fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_owned(),
        _ => s,
    }
}

fn branch_name(branch: RegimeBranch) -> &'static str {
    match branch {
        RegimeBranch::Dense => "Dense",
        RegimeBranch::Sparse => "Sparse",
    }
}

/// Human-readable rendering of an [`AnalyticReport`].
pub fn render_report(report: &AnalyticReport) -> String {
    let mut out = String::new();
    let k = report.scheme.ring_size();
    let p = report.scheme.pool_size();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("region            {}", report.region));
    line(format!("n                 {}", report.n));
    line(format!("K                 {k}"));
    line(format!("P                 {p}"));
    line(format!("r                 {:.9}", report.radius));
    if report.scheme.is_saturated() {
        line(format!("p_s               1  (degenerate pool: P = {p} < 2K = {}, every pair of rings overlaps)", 2 * k));
    } else {
        line(format!("p_s               {:.9e}", report.p_s));
    }
    line(format!("p_e (torus)       {:.9e}", report.p_e_torus));
    let (lo, hi) = report.p_e_square_bounds;
    line(format!("p_e (square)      [{lo:.9e}, {hi:.9e}]"));
    line(format!("r*                {:.9}", report.r_star));
    if let Some(branch) = report.branch {
        line(format!("branch            {}", branch_name(branch)));
    }
    line(format!("alpha             {}", fixed(report.alpha, 9)));
    line(format!("implied exponent  {:.9}", report.implied_exponent));
    match report.phase_limit {
        Some(limit) => line(format!("phase limit       {limit:.9}")),
        None => line("phase limit       n/a (implied exponent outside [0, 1])".to_owned()),
    }
    line("condition checks (finite-n verdicts at this n)".to_owned());
    for v in &report.condition_verdicts {
        line(format!("  {v}"));
    }
    match &report.coupling {
        Some(c) => {
            line(format!("coupling p_n      {:.9e}", c.p_n));
            line(format!("coupling s_n      {:.9e}", c.s_n));
            line("coupling checks (finite-n verdicts at this n)".to_owned());
            for v in &c.verdicts {
                line(format!("  {v}"));
            }
        }
        None => line("coupling          n/a (requires K > 3 ln n)".to_owned()),
    }
    out
}
