//! C interface to `secure_wsn`.
//!
//! Every fallible function returns a [`SwsnStatus`] and writes results
//! through out-pointers. On failure a description is available from
//! [`swsn_last_error`] on the same thread. Handles are opaque and must be
//! released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use secure_wsn::asymptotics::{
    alpha_from_radius, analytic_report, coupling_parameters, critical_range_square, critical_range_torus,
    isolated_prob_square, isolated_prob_torus, pair_isolation_second_moment, phase_transition_limit,
    ConditionConstants, RegimeBranch,
};
use secure_wsn::combinatorics::{key_share_probability, KeyScheme};
use secure_wsn::geometry::Region;
use secure_wsn::graph_analysis::analyze;
use secure_wsn::graph_models::{sample_network, NetworkParams, SampledNetwork, Seed};
use secure_wsn::harness::{emit_csv, render_report, run_sweep, LinkModel, SweepConfig, SweepMode, SweepResult};
use secure_wsn::Error;

pub const SWSN_REGION_TORUS: u32 = 0;
pub const SWSN_REGION_SQUARE: u32 = 1;

pub const SWSN_BRANCH_NONE: i32 = -1;
pub const SWSN_BRANCH_DENSE: i32 = 0;
pub const SWSN_BRANCH_SPARSE: i32 = 1;

/// Result of every fallible call.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwsnStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input lies outside the domain of the requested quantity.
    Domain = 2,
    /// Numerical integration missed its tolerance.
    Quadrature = 3,
    /// Reading or writing a file failed.
    Io = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// An output buffer was too small; the required size was still reported.
    BufferTooSmall = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

struct Failure(SwsnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain { .. } => SwsnStatus::Domain,
            Error::Quadrature { .. } => SwsnStatus::Quadrature,
            Error::Io { .. } | Error::Csv { .. } => SwsnStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(SwsnStatus::NullArgument, format!("{name} must not be null"))
}

/// Run `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SwsnStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SwsnStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(panic) => {
            let what = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal error: {what}"));
            SwsnStatus::Internal
        }
    }
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, name: &str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `handle` must be null or a live pointer produced by this library.
unsafe fn borrow<'a, T>(handle: *const T, name: &str) -> Result<&'a T, Failure> {
    handle.as_ref().ok_or_else(|| null(name))
}

fn region(code: u32) -> Result<Region, Failure> {
    match code {
        SWSN_REGION_TORUS => Ok(Region::Torus),
        SWSN_REGION_SQUARE => Ok(Region::Square),
        other => Err(Failure(SwsnStatus::Domain, format!("region: unknown code {other}"))),
    }
}

fn branch_code(branch: Option<RegimeBranch>) -> i32 {
    match branch {
        None => SWSN_BRANCH_NONE,
        Some(RegimeBranch::Dense) => SWSN_BRANCH_DENSE,
        Some(RegimeBranch::Sparse) => SWSN_BRANCH_SPARSE,
    }
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn swsn_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn swsn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Probability that two key rings of size `ring_size` drawn from `pool_size`
/// keys share at least one key.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_key_share_probability(ring_size: u32, pool_size: u32, out: *mut f64) -> SwsnStatus {
    guard(|| write(out, "out", key_share_probability(KeyScheme::new(ring_size, pool_size)?)))
}

/// Critical transmission range. `out_branch` may be null; it receives a
/// `SWSN_BRANCH_*` code (`SWSN_BRANCH_NONE` on the torus).
///
/// # Safety
/// `out_radius` must be valid for a write; `out_branch` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn swsn_critical_range(
    n: u64,
    ring_size: u32,
    pool_size: u32,
    region_code: u32,
    out_radius: *mut f64,
    out_branch: *mut i32,
) -> SwsnStatus {
    guard(|| {
        let scheme = KeyScheme::new(ring_size, pool_size)?;
        let (r, branch) = match region(region_code)? {
            Region::Torus => (critical_range_torus(n, scheme)?, None),
            Region::Square => {
                let (r, b) = critical_range_square(n, scheme)?;
                (r, Some(b))
            }
        };
        write(out_radius, "out_radius", r)?;
        if !out_branch.is_null() {
            out_branch.write(branch_code(branch));
        }
        Ok(())
    })
}

/// Limit of the connectivity phase boundary for exponent `a` in `[0, 1]`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_phase_transition_limit(a: f64, out: *mut f64) -> SwsnStatus {
    guard(|| write(out, "out", phase_transition_limit(a)?))
}

/// Erdős–Rényi coupling parameters. `out_all_hold` reports whether every
/// validity check passes at this `n`; it may be null.
///
/// # Safety
/// `out_p_n` and `out_s_n` must be valid for writes; `out_all_hold` must be
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn swsn_coupling(
    n: u64,
    ring_size: u32,
    pool_size: u32,
    out_p_n: *mut f64,
    out_s_n: *mut f64,
    out_all_hold: *mut bool,
) -> SwsnStatus {
    guard(|| {
        let c = coupling_parameters(n, KeyScheme::new(ring_size, pool_size)?)?;
        write(out_p_n, "out_p_n", c.p_n)?;
        write(out_s_n, "out_s_n", c.s_n)?;
        if !out_all_hold.is_null() {
            out_all_hold.write(c.verdicts.iter().all(|v| v.holds));
        }
        Ok(())
    })
}

/// Text report for one parameter set with default condition constants.
/// Pass NaN as `radius` to evaluate at the critical range. The string must
/// be released with [`swsn_string_free`].
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_report(
    n: u64,
    ring_size: u32,
    pool_size: u32,
    region_code: u32,
    radius: f64,
    out: *mut *mut c_char,
) -> SwsnStatus {
    guard(|| {
        let r = (!radius.is_nan()).then_some(radius);
        let report = analytic_report(
            n,
            KeyScheme::new(ring_size, pool_size)?,
            region(region_code)?,
            r,
            &ConditionConstants::default(),
        )?;
        let text = CString::new(render_report(&report)).expect("report has no interior nul");
        write(out, "out", text.into_raw())
    })
}

/// Validated network parameters.
pub struct SwsnParams(NetworkParams);

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_params_new(
    n: u32,
    ring_size: u32,
    pool_size: u32,
    radius: f64,
    region_code: u32,
    out: *mut *mut SwsnParams,
) -> SwsnStatus {
    guard(|| {
        let params = NetworkParams::new(n, KeyScheme::new(ring_size, pool_size)?, radius, region(region_code)?)?;
        write(out, "out", Box::into_raw(Box::new(SwsnParams(params))))
    })
}

/// # Safety
/// `params` must be null or a handle from [`swsn_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn swsn_params_free(params: *mut SwsnParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Deviation `alpha` of the radius from the critical scaling.
///
/// # Safety
/// `params` must be a live handle; `out_alpha` must be valid for a write;
/// `out_branch` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn swsn_alpha_from_radius(
    params: *const SwsnParams,
    out_alpha: *mut f64,
    out_branch: *mut i32,
) -> SwsnStatus {
    guard(|| {
        let (alpha, branch) = alpha_from_radius(&borrow(params, "params")?.0)?;
        write(out_alpha, "out_alpha", alpha)?;
        if !out_branch.is_null() {
            out_branch.write(branch_code(branch));
        }
        Ok(())
    })
}

/// Probability that a node is isolated when the other nodes form a Poisson
/// process of intensity `n`.
///
/// # Safety
/// `params` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_isolated_probability(params: *const SwsnParams, out: *mut f64) -> SwsnStatus {
    guard(|| {
        let params = &borrow(params, "params")?.0;
        let p = match params.region() {
            Region::Torus => isolated_prob_torus(params)?,
            Region::Square => isolated_prob_square(params)?.total,
        };
        write(out, "out", p)
    })
}

/// Joint isolation of two nodes on the torus and its ratio to independence.
/// Any of the out-pointers may be null except `out_epsilon`.
///
/// # Safety
/// `params` must be a live handle; out-pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn swsn_pair_isolation(
    params: *const SwsnParams,
    out_joint: *mut f64,
    out_independent: *mut f64,
    out_epsilon: *mut f64,
) -> SwsnStatus {
    guard(|| {
        let m = pair_isolation_second_moment(&borrow(params, "params")?.0)?;
        if !out_joint.is_null() {
            out_joint.write(m.joint);
        }
        if !out_independent.is_null() {
            out_independent.write(m.independent);
        }
        write(out_epsilon, "out_epsilon", m.epsilon)
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SwsnGraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub isolated_count: usize,
    pub min_degree: usize,
    pub is_connected: bool,
}

/// One sampled realisation of the secure network.
pub struct SwsnNetwork(SampledNetwork);

/// # Safety
/// `params` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_network_sample(
    params: *const SwsnParams,
    seed: u64,
    out: *mut *mut SwsnNetwork,
) -> SwsnStatus {
    guard(|| {
        let net = sample_network(&borrow(params, "params")?.0, Seed(seed));
        write(out, "out", Box::into_raw(Box::new(SwsnNetwork(net))))
    })
}

/// # Safety
/// `network` must be null or a handle from [`swsn_network_sample`] not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn swsn_network_free(network: *mut SwsnNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// # Safety
/// `network` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_network_stats(network: *const SwsnNetwork, out: *mut SwsnGraphStats) -> SwsnStatus {
    guard(|| {
        let net = &borrow(network, "network")?.0;
        let s = analyze(net.node_count(), &net.edges)?;
        write(
            out,
            "out",
            SwsnGraphStats {
                node_count: s.node_count,
                edge_count: s.edge_count,
                component_count: s.component_count,
                isolated_count: s.isolated_count,
                min_degree: s.min_degree,
                is_connected: s.is_connected,
            },
        )
    })
}

/// Copy the edges as consecutive `(a, b)` pairs into `buffer`, which holds
/// `capacity` integers. `out_len` always receives the number of integers
/// needed; if it exceeds `capacity` nothing is copied and
/// `BufferTooSmall` is returned. `buffer` may be null when `capacity` is 0.
///
/// # Safety
/// `network` must be a live handle; `buffer` must be valid for `capacity`
/// writes; `out_len` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_network_edges(
    network: *const SwsnNetwork,
    buffer: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> SwsnStatus {
    guard(|| {
        let edges = &borrow(network, "network")?.0.edges;
        let needed = 2 * edges.len();
        write(out_len, "out_len", needed)?;
        if needed > capacity {
            return Err(Failure(
                SwsnStatus::BufferTooSmall,
                format!("edge buffer holds {capacity} integers but {needed} are needed"),
            ));
        }
        if needed > 0 && buffer.is_null() {
            return Err(null("buffer"));
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            buffer.add(2 * i).write(a);
            buffer.add(2 * i + 1).write(b);
        }
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwsnSweepConfig {
    pub n: u32,
    pub ring_size: u32,
    pub pool_size: u32,
    /// `SWSN_REGION_*`.
    pub region: u32,
    pub r_min: f64,
    pub r_max: f64,
    pub r_steps: u32,
    pub trials: u32,
    pub seed: u64,
    /// Reuse one realisation per trial across all radii.
    pub coupled: bool,
    /// Negative for key-ring links; otherwise each geometric pair is kept
    /// with this probability instead.
    pub edge_probability: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SwsnSweepRow {
    pub r: f64,
    pub trials: u32,
    pub connected_count: u32,
    pub connected_frac: f64,
    pub mean_isolated: f64,
    pub mean_edges: f64,
    pub mean_components: f64,
}

/// Aggregated sweep over a grid of radii.
pub struct SwsnSweep(SweepResult);

/// # Safety
/// `config` must point to a valid configuration; `out` must be valid for a
/// write.
#[no_mangle]
pub unsafe extern "C" fn swsn_sweep_run(config: *const SwsnSweepConfig, out: *mut *mut SwsnSweep) -> SwsnStatus {
    guard(|| {
        let c = *borrow(config, "config")?;
        let result = run_sweep(&SweepConfig {
            n: c.n,
            scheme: KeyScheme::new(c.ring_size, c.pool_size)?,
            region: region(c.region)?,
            r_min: c.r_min,
            r_max: c.r_max,
            r_steps: c.r_steps as usize,
            trials: c.trials,
            seed: Seed(c.seed),
            mode: if c.coupled { SweepMode::Coupled } else { SweepMode::Independent },
            links: if c.edge_probability < 0.0 {
                LinkModel::KeyGraph
            } else {
                LinkModel::ErdosRenyi(c.edge_probability)
            },
        })?;
        write(out, "out", Box::into_raw(Box::new(SwsnSweep(result))))
    })
}

/// # Safety
/// `sweep` must be null or a handle from [`swsn_sweep_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn swsn_sweep_free(sweep: *mut SwsnSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `sweep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn swsn_sweep_len(sweep: *const SwsnSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.0.rows.len())
}

/// # Safety
/// `sweep` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn swsn_sweep_row(sweep: *const SwsnSweep, index: usize, out: *mut SwsnSweepRow) -> SwsnStatus {
    guard(|| {
        let rows = &borrow(sweep, "sweep")?.0.rows;
        let row = rows.get(index).ok_or_else(|| {
            Failure(SwsnStatus::Domain, format!("row index {index} out of range for {} rows", rows.len()))
        })?;
        write(
            out,
            "out",
            SwsnSweepRow {
                r: row.r,
                trials: row.trials,
                connected_count: row.connected_count,
                connected_frac: row.connected_frac,
                mean_isolated: row.mean_isolated,
                mean_edges: row.mean_edges,
                mean_components: row.mean_components,
            },
        )
    })
}

/// Write the sweep as CSV to the UTF-8 path `path`.
///
/// # Safety
/// `sweep` must be a live handle; `path` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn swsn_sweep_write_csv(sweep: *const SwsnSweep, path: *const c_char) -> SwsnStatus {
    guard(|| {
        let sweep = borrow(sweep, "sweep")?;
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|e| Failure(SwsnStatus::InvalidUtf8, format!("path: {e}")))?;
        Ok(emit_csv(&sweep.0, Path::new(path))?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(swsn_last_error()).to_string_lossy().into_owned() }
    }

    #[test]
    fn panics_become_internal_errors() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, SwsnStatus::Internal);
        assert!(last_error().contains("boom"));
    }

    #[test]
    fn error_kinds_map_to_codes() {
        let mut x = 0.0;
        unsafe {
            assert_eq!(swsn_key_share_probability(0, 10, &mut x), SwsnStatus::Domain);
            assert!(last_error().contains("ring size"));
            assert_eq!(swsn_key_share_probability(2, 10, ptr::null_mut()), SwsnStatus::NullArgument);
            assert_eq!(swsn_critical_range(100, 2, 100, 7, &mut x, ptr::null_mut()), SwsnStatus::Domain);
        }
    }
}
