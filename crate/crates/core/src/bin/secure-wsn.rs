use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use secure_wsn::asymptotics::{
    analytic_report, check_theorem1_conditions, check_theorem2_conditions, coupling_parameters, critical_range_square,
    critical_range_torus, isolated_prob_square, isolated_prob_torus, pair_isolation_second_moment,
    pair_isolation_torus, ConditionConstants,
};
use secure_wsn::combinatorics::{overlap_distribution, KeyScheme};
use secure_wsn::geometry::Region;
use secure_wsn::graph_models::{NetworkParams, Seed};
use secure_wsn::harness::{emit_csv, render_report, run_sweep, write_csv, LinkModel, SweepConfig, SweepMode};
use secure_wsn::{Error, Result};

#[derive(Parser)]
#[command(name = "secure-wsn", version, about = "Connectivity of key-predistribution sensor networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every analytic quantity for one parameter set.
    Report {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long)]
        r: Option<f64>,
        #[command(flatten)]
        consts: ConstArgs,
    },
    /// Critical transmission range r*.
    CriticalRange {
        #[command(flatten)]
        net: NetArgs,
    },
    /// Monte Carlo connectivity sweep over a grid of radii, as CSV.
    Sweep {
        #[command(flatten)]
        net: NetArgs,
        /// Defaults to 0.5 r*.
        #[arg(long)]
        r_min: Option<f64>,
        /// Defaults to 1.5 r*.
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, default_value_t = 20)]
        r_steps: usize,
        #[arg(long, default_value_t = 500)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = SweepMode::Independent)]
        mode: SweepMode,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probability that a given node is isolated.
    Isolated {
        #[command(flatten)]
        net: NetArgs,
        /// Defaults to r*.
        #[arg(long)]
        r: Option<f64>,
    },
    /// Joint isolation of two nodes on the torus, per key overlap.
    PairIsolated {
        #[command(flatten)]
        net: NetArgs,
        /// Defaults to r*.
        #[arg(long)]
        r: Option<f64>,
    },
    /// Finite-n verdicts for the zero-one law conditions of the region.
    CheckConditions {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        consts: ConstArgs,
    },
    /// Parameters of the Erdős–Rényi coupling.
    Coupling {
        #[command(flatten)]
        net: NetArgs,
    },
}

#[derive(Args)]
struct NetArgs {
    #[arg(long, default_value_t = 2000)]
    n: u32,
    /// Key ring size.
    #[arg(long, default_value_t = 40)]
    k: u32,
    /// Key pool size.
    #[arg(long, default_value_t = 10_000)]
    p: u32,
    #[arg(long, default_value_t = Region::Torus)]
    region: Region,
}

impl NetArgs {
    fn scheme(&self) -> Result<KeyScheme> {
        KeyScheme::new(self.k, self.p)
    }

    fn critical_range(&self) -> Result<f64> {
        match self.region {
            Region::Torus => critical_range_torus(u64::from(self.n), self.scheme()?),
            Region::Square => critical_range_square(u64::from(self.n), self.scheme()?).map(|(r, _)| r),
        }
    }

    fn params(&self, r: Option<f64>) -> Result<NetworkParams> {
        let r = match r {
            Some(r) => r,
            None => self.critical_range()?,
        };
        NetworkParams::new(self.n, self.scheme()?, r, self.region)
    }
}

#[derive(Args)]
struct ConstArgs {
    #[arg(long, default_value_t = 2.0)]
    c1: f64,
    #[arg(long, default_value_t = 0.1)]
    c2: f64,
    #[arg(long, default_value_t = 0.9)]
    c3: f64,
    #[arg(long, default_value_t = 2.0)]
    c4: f64,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    #[arg(long, default_value_t = 0.25)]
    c0: f64,
    #[arg(long, default_value_t = 0.2)]
    eps1: f64,
    #[arg(long, default_value_t = 0.15)]
    eps2: f64,
}

impl From<&ConstArgs> for ConditionConstants {
    fn from(a: &ConstArgs) -> Self {
        ConditionConstants {
            c1: a.c1,
            c2: a.c2,
            c3: a.c3,
            c4: a.c4,
            mu: a.mu,
            nu: a.nu,
            c0: a.c0,
            eps1: a.eps1,
            eps2: a.eps2,
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<()> {
    let stdout = |e: io::Error| Error::Io { path: "<stdout>".into(), source: e };
    let text = match command {
        Command::Report { net, r, consts } => {
            let report = analytic_report(u64::from(net.n), net.scheme()?, net.region, r, &(&consts).into())?;
            render_report(&report)
        }
        Command::CriticalRange { net } => match net.region {
            Region::Torus => format!("{:.9}\n", critical_range_torus(u64::from(net.n), net.scheme()?)?),
            Region::Square => {
                let (r, branch) = critical_range_square(u64::from(net.n), net.scheme()?)?;
                format!("{r:.9} {branch}\n")
            }
        },
        Command::Sweep { net, r_min, r_max, r_steps, trials, seed, mode, out: path } => {
            let (r_min, r_max) = match (r_min, r_max) {
                (Some(lo), Some(hi)) => (lo, hi),
                (lo, hi) => {
                    let r_star = net.critical_range()?;
                    (lo.unwrap_or(0.5 * r_star), hi.unwrap_or(1.5 * r_star))
                }
            };
            let config = SweepConfig {
                n: net.n,
                scheme: net.scheme()?,
                region: net.region,
                r_min,
                r_max,
                r_steps,
                trials,
                seed: Seed(seed),
                mode,
                links: LinkModel::KeyGraph,
            };
            let result = run_sweep(&config)?;
            match path {
                Some(path) => emit_csv(&result, &path)?,
                None => write_csv(&result, &mut *out).map_err(stdout)?,
            }
            String::new()
        }
        Command::Isolated { net, r } => {
            let params = net.params(r)?;
            match net.region {
                Region::Torus => format!("{:.9e}\n", isolated_prob_torus(&params)?),
                Region::Square => {
                    let iso = isolated_prob_square(&params)?;
                    let [t0, t1, t2, t3] = iso.zones;
                    format!(
                        "{:.9e}\nzones {t0:.9e} {t1:.9e} {t2:.9e} {t3:.9e}\nquadrature error {:.3e}\n",
                        iso.total, iso.error
                    )
                }
            }
        }
        Command::PairIsolated { net, r } => {
            let params = net.params(r)?;
            let mut text = String::from("u weight joint\n");
            for (u, &w) in overlap_distribution(params.scheme()).probs().iter().enumerate() {
                if w > 0.0 {
                    let joint = pair_isolation_torus(&params, u as u32)?;
                    text += &format!("{u} {w:.9e} {joint:.9e}\n");
                }
            }
            let m = pair_isolation_second_moment(&params)?;
            text += &format!(
                "joint {:.9e}\nindependent {:.9e}\nepsilon {:.9e}\n",
                m.joint, m.independent, m.epsilon
            );
            text
        }
        Command::CheckConditions { net, consts } => {
            let consts = (&consts).into();
            let verdicts = match net.region {
                Region::Torus => check_theorem1_conditions(u64::from(net.n), net.scheme()?, &consts)?,
                Region::Square => check_theorem2_conditions(u64::from(net.n), net.scheme()?, &consts)?,
            };
            let mut text = String::from("finite-n verdicts at this n\n");
            for v in verdicts {
                text += &format!("{v}\n");
            }
            text
        }
        Command::Coupling { net } => {
            let c = coupling_parameters(u64::from(net.n), net.scheme()?)?;
            let mut text = format!("p_n {:.9e}\ns_n {:.9e}\nfinite-n verdicts at this n\n", c.p_n, c.s_n);
            for v in c.verdicts {
                text += &format!("{v}\n");
            }
            text
        }
    };
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(stdout)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command, &mut io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}
