//! Command-line front end: every figure-style dataset the library can
//! produce, emitted as CSV with `#`-prefixed summary lines.
//!
//! Units follow the library conventions (hbar = k = 1, |J| or t as the
//! energy unit). Sweeps and optimizer restarts run on the rayon pool;
//! `RAYON_NUM_THREADS` bounds the thread count.

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::process::ExitCode;

mod table;

use qcorr::capacity::{
    find_p0, maximize_rate, rate_factor, CouplingSpec, OptimizationReport, SystemKind,
};
use qcorr::discord::{
    anchor_pure_state_33, bruteforce_geometric_discord, geometric_discord_mn, mixed_qutrit_family,
    two_state_mixture, werner_discord, werner_state,
};
use qcorr::fermion::{
    dimer_entanglements, maximize_partition_entanglement, trimer_entanglements, NumberSector,
};
use qcorr::measures::{concurrence, eof_from_concurrence};
use qcorr::optim::map_points;
use qcorr::qstate::{from_text, PartitionSpec};
use qcorr::thermal_xx::{monogamy, qd_cc, thermal_state, XXParams};

use table::Table;

#[derive(Parser)]
#[command(
    name = "qcorr",
    about = "Entanglement measures, capacities, fermionic mode entanglement and discord",
    long_about = "Numerical toolkit for geometric entanglement measures, \
entanglement-generation capacities, Hubbard-cluster mode entanglement, thermal \
XX-chain correlations and geometric quantum discord.\n\n\
All quantities are unitless: hbar = k = 1 and |J| (or the hopping t) is the \
energy unit. Output is CSV with a header row; floats carry 9 significant \
digits; summary values appear as #-prefixed comment lines. Runs are \
deterministic for a fixed --seed; RAYON_NUM_THREADS overrides the worker count."
)]
struct Cli {
    /// Write CSV here instead of standard output
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement-generation capacities
    #[command(subcommand)]
    Capacity(CapacityCmd),
    /// Hubbard dimer/trimer entanglement
    #[command(subcommand)]
    Hubbard(HubbardCmd),
    /// Thermal two-qubit XX chain
    #[command(subcommand)]
    Xx(XxCmd),
    /// Geometric quantum discord
    #[command(subcommand)]
    Discord(DiscordCmd),
}

#[derive(Subcommand)]
enum CapacityCmd {
    /// Analytic two-qubit rate family and its optimum
    TwoQubit(TwoQubitArgs),
    /// Numerical two-qutrit maximization
    Qutrit(RateOptArgs),
    /// Numerical three-qubit maximization
    ThreeQubit(RateOptArgs),
}

#[derive(Args)]
struct TwoQubitArgs {
    #[arg(allow_negative_numbers = true, long)]
    mu1: f64,
    #[arg(allow_negative_numbers = true, long)]
    mu2: f64,
    #[arg(allow_negative_numbers = true, long)]
    mu3: f64,
    /// Number of p points on [0, 1]
    #[arg(long, default_value_t = 200)]
    sweep_p: usize,
}

#[derive(Args)]
struct RateOptArgs {
    /// Use equal interaction strengths (the only mode with reference anchors)
    #[arg(long, default_value_t = true)]
    isotropic: bool,
    /// Common interaction strength
    #[arg(allow_negative_numbers = true, long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum HubbardCmd {
    /// Dimer ground-state entanglements over an alpha grid
    Dimer(DimerArgs),
    /// Trimer ground-state entanglements over a beta grid
    Trimer(TrimerArgs),
    /// Maximize the geometric measure over a number sector
    Maximize(SectorMaxArgs),
}

#[derive(Args)]
struct DimerArgs {
    #[arg(allow_negative_numbers = true, long, default_value_t = 1.0)]
    alpha_min: f64,
    #[arg(allow_negative_numbers = true, long, default_value_t = 10.0)]
    alpha_max: f64,
    #[arg(long, default_value_t = 50)]
    steps: usize,
}

#[derive(Args)]
struct TrimerArgs {
    #[arg(allow_negative_numbers = true, long, default_value_t = 0.0)]
    beta_min: f64,
    #[arg(allow_negative_numbers = true, long, default_value_t = 10.0)]
    beta_max: f64,
    #[arg(long, default_value_t = 50)]
    steps: usize,
}

#[derive(Args)]
struct SectorMaxArgs {
    /// Total number of modes (2L)
    #[arg(long)]
    modes: usize,
    /// Particle number N
    #[arg(long)]
    particles: usize,
    /// Partition, e.g. `0,1;2,3` (modes zero-indexed)
    #[arg(long)]
    partition: String,
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum XxCmd {
    /// Correlations against B1 at fixed temperature; B2 = -ratio * B1
    SweepField(SweepFieldArgs),
    /// Correlations against temperature at fixed fields
    SweepTemp(SweepTempArgs),
    /// Monogamy-derived environment quantities
    Monogamy(MonogamyArgs),
}

#[derive(Args)]
struct SweepFieldArgs {
    #[arg(allow_negative_numbers = true, long)]
    temp: f64,
    /// B2 = -ratio * B1 (ignored with --uniform)
    #[arg(allow_negative_numbers = true, long, default_value_t = 1.0)]
    ratio: f64,
    /// Uniform field B2 = B1
    #[arg(long, default_value_t = false)]
    uniform: bool,
    #[arg(allow_negative_numbers = true, long, default_value_t = -3.0)]
    b1_min: f64,
    #[arg(allow_negative_numbers = true, long, default_value_t = 3.0)]
    b1_max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Args)]
struct SweepTempArgs {
    #[arg(allow_negative_numbers = true, long)]
    b1: f64,
    #[arg(allow_negative_numbers = true, long)]
    b2: f64,
    #[arg(allow_negative_numbers = true, long, default_value_t = 0.1)]
    t_min: f64,
    #[arg(allow_negative_numbers = true, long, default_value_t = 3.0)]
    t_max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Args)]
struct MonogamyArgs {
    /// Sweep B1 (with B2 = -B1) at this fixed temperature
    #[arg(allow_negative_numbers = true, long, conflicts_with = "b1")]
    temp: Option<f64>,
    /// Sweep temperature at this fixed B1 (with B2 = -B1)
    #[arg(allow_negative_numbers = true, long)]
    b1: Option<f64>,
    #[arg(allow_negative_numbers = true, long, default_value_t = -3.0)]
    min: f64,
    #[arg(allow_negative_numbers = true, long, default_value_t = 3.0)]
    max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Subcommand)]
enum DiscordCmd {
    /// Evaluate the discord formula on a density-matrix text file
    Geometric(GeometricArgs),
    /// Werner-family closed form against the general formula
    Werner(WernerArgs),
    /// Reference families with known closed-form anchors
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct GeometricArgs {
    #[arg(long)]
    state_file: std::path::PathBuf,
    /// Also run the brute-force measurement search
    #[arg(long, default_value_t = false)]
    bruteforce: bool,
    #[arg(long, default_value_t = 200)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct WernerArgs {
    #[arg(long)]
    m: usize,
    #[arg(allow_negative_numbers = true, long, default_value_t = -1.0)]
    z_min: f64,
    #[arg(allow_negative_numbers = true, long, default_value_t = 1.0)]
    z_max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Args)]
struct ExamplesArgs {
    /// 2: pure-state anchor; 3: mixed family vs lower bound; 4: two-state mixture
    #[arg(long)]
    which: usize,
    #[arg(long, default_value_t = 50)]
    steps: usize,
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

enum CliError {
    Invalid(String),
    NonConverged(String),
}

impl From<qcorr::Error> for CliError {
    fn from(e: qcorr::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn run(cli: Cli) -> Result<Table, CliError> {
    match cli.command {
        Command::Capacity(cmd) => run_capacity(cmd),
        Command::Hubbard(cmd) => run_hubbard(cmd),
        Command::Xx(cmd) => run_xx(cmd),
        Command::Discord(cmd) => run_discord(cmd),
    }
}

fn summarize_report(t: &mut Table, r: &OptimizationReport) {
    t.comment_kv("gamma_max", r.best_value);
    t.comment_kv("entanglement_best", r.best_entanglement);
    if let Some(sc) = &r.schmidt_coefficients {
        for (i, s) in sc.iter().enumerate() {
            t.comment_kv(&format!("schmidt_{}", i + 1), *s);
        }
    }
    if let Some(tan) = r.three_tangle {
        t.comment_kv("three_tangle", tan);
        t.comment(&format!(
            "ghz_class {}",
            if tan > 1e-6 { "yes" } else { "no" }
        ));
    }
    t.comment(&format!("restarts {}", r.restarts));
    t.comment(&format!("seed {}", r.seed));
    t.comment(&format!("iterations {}", r.iterations));
    t.comment(&format!("converged {}", r.converged));
    let mut best_text = String::new();
    for z in r.best_state.amplitudes.iter() {
        if !best_text.is_empty() {
            best_text.push(' ');
        }
        best_text.push_str(&table::fmt_complex(*z));
    }
    t.comment(&format!("best_state {best_text}"));
}

fn rate_opt(kind: SystemKind, a: &RateOptArgs) -> Result<Table, CliError> {
    if a.restarts == 0 {
        return Err(CliError::Invalid("--restarts must be >= 1".into()));
    }
    if !a.isotropic {
        return Err(CliError::Invalid(
            "only isotropic couplings are exposed here; pass --isotropic".into(),
        ));
    }
    let coupling = CouplingSpec::isotropic(kind, a.mu);
    let r = maximize_rate(&coupling, a.restarts, a.seed)?;
    let mut t = Table::new(&["restart", "gamma"]);
    summarize_report(&mut t, &r);
    for (i, v) in r.per_restart_values.iter().enumerate() {
        t.row(&[i as f64, *v]);
    }
    if !r.converged {
        return Err(CliError::NonConverged(
            "restarts hit the iteration cap".into(),
        ));
    }
    Ok(t)
}

fn run_capacity(cmd: CapacityCmd) -> Result<Table, CliError> {
    match cmd {
        CapacityCmd::TwoQubit(a) => {
            let coupling = CouplingSpec::TwoQubit {
                mu: [a.mu1, a.mu2, a.mu3],
            };
            coupling.validate()?;
            if a.sweep_p == 0 {
                return Err(CliError::Invalid("--sweep-p must be >= 1".into()));
            }
            let mut t = Table::new(&["p", "f_p", "gamma_E"]);
            let (p0, gmax_unit) = find_p0();
            t.comment_kv("p0", p0);
            t.comment_kv("gamma_max", gmax_unit * (a.mu1 + a.mu2));
            for p in grid(0.0, 1.0, a.sweep_p) {
                let f = rate_factor(p);
                t.row(&[p, f, f * (a.mu1 + a.mu2)]);
            }
            Ok(t)
        }
        CapacityCmd::Qutrit(a) => rate_opt(SystemKind::TwoQutrit, &a),
        CapacityCmd::ThreeQubit(a) => rate_opt(SystemKind::ThreeQubit, &a),
    }
}

fn run_hubbard(cmd: HubbardCmd) -> Result<Table, CliError> {
    match cmd {
        HubbardCmd::Dimer(a) => {
            if a.alpha_min < 1.0 {
                return Err(CliError::Invalid("alpha must be >= 1".into()));
            }
            let mut t = Table::new(&["alpha", "E_g", "E_s", "E_vn", "E_unequal"]);
            let rows = map_points(grid(a.alpha_min, a.alpha_max, a.steps), |alpha| {
                dimer_entanglements(alpha).map(|e| [alpha, e.e_g, e.e_s, e.e_vn, e.e_unequal])
            });
            for r in rows {
                t.row(&r?);
            }
            Ok(t)
        }
        HubbardCmd::Trimer(a) => {
            if a.beta_min < 0.0 {
                return Err(CliError::Invalid("beta must be >= 0".into()));
            }
            let mut t = Table::new(&["beta", "E_six", "E_site3", "E_bi", "E_vn"]);
            let rows = map_points(grid(a.beta_min, a.beta_max, a.steps), |beta| {
                trimer_entanglements(beta)
                    .map(|e| [beta, e.e_six, e.e_site3, e.e_bi_a_bc, e.e_vn_a_bc])
            });
            for r in rows {
                t.row(&r?);
            }
            Ok(t)
        }
        HubbardCmd::Maximize(a) => {
            let sector = NumberSector::new(a.modes, a.particles)?;
            let dims = vec![2usize; a.modes];
            let partition = PartitionSpec::parse(&a.partition, &dims)?;
            let r = maximize_partition_entanglement(&sector, &partition, a.restarts, a.seed)?;
            let mut t = Table::new(&["restart", "E"]);
            t.comment_kv("E_max", r.best_value);
            t.comment(&format!("modes {}", a.modes));
            t.comment(&format!("particles {}", a.particles));
            t.comment(&format!("partition {}", a.partition));
            t.comment(&format!("restarts {}", r.restarts));
            t.comment(&format!("seed {}", r.seed));
            t.comment(&format!("converged {}", r.converged));
            if r.best_value < 0.0 {
                t.comment("warning: negative maximum reported raw");
            }
            for (i, v) in r.per_restart_values.iter().enumerate() {
                t.row(&[i as f64, *v]);
            }
            if !r.converged {
                return Err(CliError::NonConverged(
                    "restarts hit the iteration cap".into(),
                ));
            }
            Ok(t)
        }
    }
}

fn xx_point(b1: f64, b2: f64, temp: f64) -> Result<[f64; 4], qcorr::Error> {
    let p = XXParams::new(1.0, b1, b2, temp)?;
    let ts = thermal_state(&p)?;
    let q = qd_cc(&ts.rho)?;
    let en = eof_from_concurrence(concurrence(&ts.rho)?)?;
    Ok([b1, q.qd, q.cc, en])
}

fn run_xx(cmd: XxCmd) -> Result<Table, CliError> {
    match cmd {
        XxCmd::SweepField(a) => {
            let mut t = Table::new(&["B1", "QD", "CC", "EN"]);
            t.comment_kv("temp", a.temp);
            if a.uniform {
                t.comment("mode uniform (B2 = B1)");
            } else {
                t.comment_kv("ratio", a.ratio);
            }
            let rows = map_points(grid(a.b1_min, a.b1_max, a.steps), |b1| {
                let b2 = if a.uniform { b1 } else { -a.ratio * b1 };
                xx_point(b1, b2, a.temp)
            });
            for r in rows {
                t.row(&r?);
            }
            Ok(t)
        }
        XxCmd::SweepTemp(a) => {
            if a.t_min <= 0.0 {
                return Err(CliError::Invalid("t-min must be positive".into()));
            }
            let mut t = Table::new(&["T", "QD", "CC", "EN"]);
            t.comment_kv("B1", a.b1);
            t.comment_kv("B2", a.b2);
            let rows = map_points(grid(a.t_min, a.t_max, a.steps), |temp| {
                xx_point(a.b1, a.b2, temp).map(|r| [temp, r[1], r[2], r[3]])
            });
            for r in rows {
                t.row(&r?);
            }
            Ok(t)
        }
        XxCmd::Monogamy(a) => {
            let mut t = Table::new(&[
                "x",
                "EN_AB",
                "QD_AB",
                "CC_AB",
                "S_A",
                "EN_AE",
                "QD_AE",
                "CC_AE",
                "half_I_AB",
                "identity_residual",
            ]);
            let (sweep_temp, fixed) = match (a.temp, a.b1) {
                (Some(temp), None) => (false, temp),
                (None, Some(b1)) => (true, b1),
                _ => {
                    return Err(CliError::Invalid(
                        "pass exactly one of --temp (field sweep) or --b1 (temperature sweep)"
                            .into(),
                    ))
                }
            };
            if sweep_temp {
                t.comment_kv("B1", fixed);
                t.comment("sweep temperature, B2 = -B1");
            } else {
                t.comment_kv("temp", fixed);
                t.comment("sweep B1, B2 = -B1");
            }
            let lo = if sweep_temp { a.min.max(1e-3) } else { a.min };
            let rows = map_points(grid(lo, a.max, a.steps), move |x| {
                let (b1, temp) = if sweep_temp { (fixed, x) } else { (x, fixed) };
                let p = XXParams::new(1.0, b1, -b1, temp)?;
                let m = monogamy(&p)?;
                let q = qd_cc(&thermal_state(&p)?.rho)?;
                Ok::<_, qcorr::Error>([
                    x,
                    m.en_ab,
                    m.qd_ab,
                    m.cc_ab,
                    m.s_a,
                    m.en_ae,
                    m.qd_ae,
                    m.cc_ae,
                    q.mutual_information / 2.0,
                    m.identity_residual,
                ])
            });
            for r in rows {
                t.row(&r?);
            }
            Ok(t)
        }
    }
}

fn run_discord(cmd: DiscordCmd) -> Result<Table, CliError> {
    match cmd {
        DiscordCmd::Geometric(a) => {
            let text = std::fs::read_to_string(&a.state_file)
                .map_err(|e| CliError::Invalid(format!("cannot read state file: {e}")))?;
            let rho = from_text(&text)?;
            let rep = geometric_discord_mn(&rho)?;
            let brute = if a.bruteforce {
                Some(bruteforce_geometric_discord(&rho, a.restarts, a.seed)?)
            } else {
                None
            };
            let mut headers = vec![
                "d_formula".to_string(),
                "d_lower_bound".to_string(),
                "d_bruteforce".to_string(),
            ];
            for i in 1..=rep.g_eigenvalues.len() {
                headers.push(format!("g_{i}"));
            }
            let mut t = Table::new_owned(headers);
            t.comment(&format!("dims {} {}", rho.dims[0], rho.dims[1]));
            if let Some(b) = brute {
                t.comment_kv("gap_bruteforce_minus_formula", b - rep.d_formula);
            }
            let mut row = vec![rep.d_formula, rep.d_lower_bound, brute.unwrap_or(f64::NAN)];
            row.extend(rep.g_eigenvalues.iter());
            t.row(&row);
            Ok(t)
        }
        DiscordCmd::Werner(a) => {
            let mut t = Table::new(&["z", "d_closed_form", "d_formula"]);
            t.comment(&format!("m {}", a.m));
            let rows = map_points(grid(a.z_min, a.z_max, a.steps), |z| {
                let closed = werner_discord(a.m, z)?;
                let formula = geometric_discord_mn(&werner_state(a.m, z)?)?.d_formula;
                Ok::<_, qcorr::Error>([z, closed, formula])
            });
            for r in rows {
                t.row(&r?);
            }
            Ok(t)
        }
        DiscordCmd::Examples(a) => match a.which {
            2 => {
                let rho = anchor_pure_state_33();
                let rep = geometric_discord_mn(&rho)?;
                let mut headers = vec!["d_formula".to_string(), "d_lower_bound".to_string()];
                for i in 1..=rep.g_eigenvalues.len() {
                    headers.push(format!("g_{i}"));
                }
                let mut t = Table::new_owned(headers);
                let mut row = vec![rep.d_formula, rep.d_lower_bound];
                row.extend(rep.g_eigenvalues.iter());
                t.row(&row);
                Ok(t)
            }
            3 | 4 => {
                let mut t = Table::new(&["p", "d_formula", "d_lower_bound"]);
                let rows = map_points(grid(0.0, 1.0, a.steps), |p| {
                    let rho = if a.which == 3 {
                        mixed_qutrit_family(p)?
                    } else {
                        two_state_mixture(p)?
                    };
                    let rep = geometric_discord_mn(&rho)?;
                    Ok::<_, qcorr::Error>([p, rep.d_formula, rep.d_lower_bound])
                });
                for r in rows {
                    t.row(&r?);
                }
                Ok(t)
            }
            other => Err(CliError::Invalid(format!(
                "--which {other}: choose 2, 3 or 4"
            ))),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(table) => {
            let text = table.render();
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    if stdout.write_all(text.as_bytes()).is_err() {
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::NonConverged(msg)) => {
            eprintln!("error: optimizer did not converge: {msg}");
            ExitCode::from(3)
        }
    }
}
