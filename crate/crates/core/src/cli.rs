//! Command-line front end.
//!
//! ```text
//! coherence-shor factor --n 15 --p-prep 1 --p-detect 1 --seed 3
//! coherence-shor exact  --n 15 --x 7 --p-prep 0.5 --p-detect 0.5
//! coherence-shor sample --n 15 --x 7 --trials 100000
//! coherence-shor sweep  --n 15 --x 7 --grid p=0:1:0.05
//! coherence-shor bounds --n 21 --x 2 --p-prep 0.3,0.3,0.3,0.3,0.3,0.3,0.3,0.3,0.3
//! coherence-shor verify
//! ```
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage, 3 domain error,
//! 4 capacity exceeded.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{self, BoundReport, UpperBoundForm};
use crate::channels::{ChannelFamily, QuantumChannel};
use crate::measures::{self, CounterexampleWitness};
use crate::numtheory::{self, Enumeration, FactorInstance};
use crate::protocol::{self, ProtocolConfig};
use crate::report::{self, PValue, RunReport, SweepRow};
use crate::{Error, Result};

/// Stream reserved for drawing bases in `factor`; trial streams count up
/// from zero.
const BASE_DRAW_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum UpperForm {
    #[default]
    DoubleFloor,
    SingleFloor,
}

impl From<UpperForm> for UpperBoundForm {
    fn from(f: UpperForm) -> Self {
        match f {
            UpperForm::DoubleFloor => UpperBoundForm::DoubleFloor,
            UpperForm::SingleFloor => UpperBoundForm::SingleFloor,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "coherence-shor", version, about = "Order finding with resource-limited coherence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Modulus to factor.
    #[arg(long = "n", global = true)]
    pub n: Option<u64>,
    /// Base coprime to N; drawn at random when omitted.
    #[arg(long, global = true)]
    pub x: Option<u64>,
    /// Control-register size L; must be canonical unless --test-mode is set.
    #[arg(long, global = true)]
    pub bits: Option<u32>,
    #[arg(long, global = true)]
    pub test_mode: bool,
    /// Preparation parameter: one value, or a comma list with one entry per block.
    #[arg(long, global = true, default_value = "1")]
    pub p_prep: String,
    /// Detection parameter: one value, or a comma list with one entry per block.
    #[arg(long, global = true, default_value = "1")]
    pub p_detect: String,
    #[arg(long, global = true, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, global = true, env = "COHERENCE_SHOR_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Enumerate every outcome instead of the candidate union.
    #[arg(long, global = true)]
    pub exhaustive: bool,
    #[arg(long, global = true, value_enum, default_value_t = UpperForm::DoubleFloor)]
    pub upper_form: UpperForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Subcommand)]
pub enum Command {
    /// Factor N by repeated order finding.
    Factor {
        #[arg(long, default_value_t = 10_000)]
        max_iterations: u64,
    },
    /// Exact success probability with bounds.
    Exact,
    /// Monte Carlo estimate of the success probability.
    Sample,
    /// Exact value and bounds over a parameter grid.
    Sweep {
        /// `VAR=START:STOP:STEP` with VAR one of p, p_prep, p_detect.
        #[arg(long, default_value = "p=0:1:0.05")]
        grid: GridSpec,
    },
    /// Bounds and classical interval.
    Bounds,
    /// Run the built-in verification suite.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridVar {
    P,
    PPrep,
    PDetect,
}

/// Parsed `--grid` value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub var: GridVar,
    pub start: f64,
    pub stop: f64,
    pub intervals: u64,
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (var, range) = s
            .split_once('=')
            .ok_or_else(|| format!("grid `{s}` must look like p=0:1:0.05"))?;
        let var = match var.trim() {
            "p" => GridVar::P,
            "p_prep" | "p-prep" => GridVar::PPrep,
            "p_detect" | "p-detect" => GridVar::PDetect,
            other => return Err(format!("unknown grid variable `{other}`")),
        };
        let parts: Vec<f64> = range
            .split(':')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
            .collect::<std::result::Result<_, _>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(format!("grid range `{range}` needs START:STOP:STEP"));
        };
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err("grid needs STEP > 0 and STOP >= START".into());
        }
        let n = ((stop - start) / step).round();
        if ((stop - start) - n * step).abs() > 1e-9 * step.max(1.0) {
            return Err(format!("step {step} does not divide [{start}, {stop}]"));
        }
        Ok(GridSpec {
            var,
            start,
            stop,
            intervals: n as u64,
        })
    }
}

impl GridSpec {
    /// `start + (stop - start) i / n` for `i = 0..=n`.
    pub fn points(&self) -> Vec<f64> {
        if self.intervals == 0 {
            return vec![self.start];
        }
        (0..=self.intervals)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / self.intervals as f64)
            .collect()
    }
}

/// Validated parameters for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<u64>,
    pub x: Option<u64>,
    pub bits: Option<u32>,
    pub test_mode: bool,
    pub p_prep: Vec<f64>,
    pub p_detect: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub mode: Enumeration,
    pub upper_form: UpperBoundForm,
}

fn parse_p_list(flag: &str, s: &str) -> Result<Vec<f64>> {
    let ps = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Usage(format!("--{flag} `{t}`: {e}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    for &p in &ps {
        ChannelFamily::prep(p)?;
    }
    Ok(ps)
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let format = cli.format.unwrap_or(match cli.command {
            Command::Sweep { .. } => Format::Csv,
            _ => Format::Json,
        });
        if cli.trials == 0 && matches!(cli.command, Command::Sample) {
            return Err(Error::Usage("--trials must be at least 1".into()));
        }
        if cli.threads == Some(0) {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        let needs_n = !matches!(cli.command, Command::Verify);
        if needs_n && cli.n.is_none() {
            return Err(Error::Usage("--n is required".into()));
        }
        Ok(Self {
            command: cli.command,
            n: cli.n,
            x: cli.x,
            bits: cli.bits,
            test_mode: cli.test_mode,
            p_prep: parse_p_list("p-prep", &cli.p_prep)?,
            p_detect: parse_p_list("p-detect", &cli.p_detect)?,
            trials: cli.trials,
            seed: cli.seed,
            threads: cli.threads,
            format,
            out: cli.out.clone(),
            mode: if cli.exhaustive {
                Enumeration::Exhaustive
            } else {
                Enumeration::Candidates
            },
            upper_form: cli.upper_form.into(),
        })
    }

    fn modulus(&self) -> Result<u64> {
        self.n.ok_or_else(|| Error::Usage("--n is required".into()))
    }

    /// Instance for `--n`, `--x` (or a seeded coprime draw) and `--bits`.
    pub fn instance(&self) -> Result<FactorInstance> {
        let n = self.modulus()?;
        let x = match self.x {
            Some(x) => x,
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(BASE_DRAW_STREAM);
                draw_base(n, &mut rng)?
            }
        };
        FactorInstance::build(n, x, self.bits, self.test_mode)
    }

    pub fn protocol(&self, instance: FactorInstance) -> Result<ProtocolConfig> {
        ProtocolConfig::from_families(instance, &self.p_prep, &self.p_detect, self.seed)
    }
}

/// Uniform draw from `[2, N)` conditioned on `gcd(x, N) = 1`.
fn draw_base<R: Rng>(n: u64, rng: &mut R) -> Result<u64> {
    if n < 4 {
        return Err(Error::InvalidN {
            n,
            reason: "no base in [2, N) to draw".into(),
        });
    }
    loop {
        let x = rng.random_range(2..n);
        if numtheory::gcd(x, n) == 1 {
            return Ok(x);
        }
    }
}

/// Command output together with its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            exit_code: 0,
        }
    }
}

/// Run `config` on a pool of the requested size.
pub fn execute(config: &RunConfig) -> Result<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::Io(e.to_string()))?;
    pool.install(|| dispatch(config))
}

fn dispatch(config: &RunConfig) -> Result<Outcome> {
    match config.command {
        Command::Factor { max_iterations } => {
            let t = cmd_factor(config, max_iterations)?;
            Ok(Outcome::ok(report::to_json(&t)?))
        }
        Command::Exact => cmd_exact(config).map(Outcome::ok),
        Command::Sample => cmd_sample(config).map(Outcome::ok),
        Command::Sweep { grid } => cmd_sweep(config, &grid).map(Outcome::ok),
        Command::Bounds => cmd_bounds(config).map(Outcome::ok),
        Command::Verify => {
            let v = cmd_verify(config, &CounterexampleWitness::standard());
            Ok(Outcome {
                output: report::to_json(&v)?,
                exit_code: if v.passed { 0 } else { 1 },
            })
        }
    }
}

/// Parse, run and write output; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = RunConfig::from_cli(&cli).and_then(|cfg| {
        let outcome = execute(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &outcome.output).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
            None => print!("{}", outcome.output),
        }
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_report(config: &RunConfig, pc: &ProtocolConfig, exact: Option<f64>) -> RunReport {
    let inst = pc.instance();
    let b = BoundReport::new(pc, exact, config.upper_form);
    let classical = protocol::classical_limit_ratio(inst);
    RunReport {
        n: inst.n(),
        x: inst.x(),
        r: inst.order(),
        bits: inst.bits(),
        p_prep: Some(PValue::from_list(&config.p_prep)),
        p_detect: Some(PValue::from_list(&config.p_detect)),
        exact,
        classical: *classical.numer() as f64 / *classical.denom() as f64,
        classical_fraction: report::ratio_string(classical),
        lower_bound: b.lower,
        upper_bound: b.upper,
    }
}

/// Single-row CSV for commands that report one configuration.
fn single_row(config: &RunConfig, pc: &ProtocolConfig, exact: f64) -> Result<String> {
    let ([pp], [pd]) = (&config.p_prep[..], &config.p_detect[..]) else {
        return Err(Error::Usage("CSV output needs scalar --p-prep and --p-detect".into()));
    };
    if pp != pd {
        return Err(Error::Usage("CSV output needs --p-prep equal to --p-detect".into()));
    }
    Ok(report::to_csv(&[sweep_row(*pp, pc, exact, config.upper_form)]))
}

fn sweep_row(p: f64, pc: &ProtocolConfig, exact: f64, form: UpperBoundForm) -> SweepRow {
    let b = BoundReport::new(pc, Some(exact), form);
    let (c, m) = pc.per_block_measures()[0];
    SweepRow {
        p,
        cohering_power: c,
        nsid: m,
        lower: b.lower,
        exact,
        upper: b.upper,
        classical_lo: b.classical_lo,
        classical_hi: b.classical_hi,
    }
}

pub fn cmd_exact(config: &RunConfig) -> Result<String> {
    let pc = config.protocol(config.instance()?)?;
    let s = protocol::exact_success_probability(&pc, config.mode)?;
    match config.format {
        Format::Json => report::to_json(&run_report(config, &pc, Some(s.exact))),
        Format::Csv => single_row(config, &pc, s.exact),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    #[serde(flatten)]
    pub run: RunReport,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub frequency: f64,
    pub stderr: f64,
}

pub fn cmd_sample(config: &RunConfig) -> Result<String> {
    let pc = config.protocol(config.instance()?)?;
    let summary = protocol::sample_trials(&pc, config.trials)?;
    let exact = protocol::exact_success_probability(&pc, config.mode)?.exact;
    let out = SampleReport {
        run: run_report(config, &pc, Some(exact)),
        seed: config.seed,
        trials: summary.trials,
        successes: summary.successes,
        frequency: summary.frequency,
        stderr: summary.stderr,
    };
    match config.format {
        Format::Json => report::to_json(&out),
        Format::Csv => Err(Error::Usage("sample supports JSON output only".into())),
    }
}

/// Rows in grid order.
pub fn sweep_rows(config: &RunConfig, grid: &GridSpec) -> Result<Vec<SweepRow>> {
    let inst = config.instance()?;
    grid.points()
        .into_iter()
        .map(|p| {
            let (pp, pd) = match grid.var {
                GridVar::P => (vec![p], vec![p]),
                GridVar::PPrep => (vec![p], config.p_detect.clone()),
                GridVar::PDetect => (config.p_prep.clone(), vec![p]),
            };
            let pc = ProtocolConfig::from_families(inst, &pp, &pd, config.seed)?;
            let exact = protocol::exact_success_probability(&pc, config.mode)?.exact;
            Ok(sweep_row(p, &pc, exact, config.upper_form))
        })
        .collect()
}

pub fn cmd_sweep(config: &RunConfig, grid: &GridSpec) -> Result<String> {
    let rows = sweep_rows(config, grid)?;
    match config.format {
        Format::Csv => Ok(report::to_csv(&rows)),
        Format::Json => report::to_json(&rows),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsOutput {
    #[serde(flatten)]
    pub run: RunReport,
    pub classical_lo: f64,
    pub classical_hi: f64,
    pub classical_interval: [String; 2],
    pub upper_bound_single_floor: f64,
    pub per_block_factors: Vec<(f64, f64)>,
}

pub fn cmd_bounds(config: &RunConfig) -> Result<String> {
    let pc = config.protocol(config.instance()?)?;
    let inst = pc.instance();
    let measures = pc.per_block_measures();
    let (lo, hi) = bounds::classical_bounds_ratio(inst);
    let b = BoundReport::new(&pc, None, config.upper_form);
    let out = BoundsOutput {
        run: run_report(config, &pc, None),
        classical_lo: b.classical_lo,
        classical_hi: b.classical_hi,
        classical_interval: [report::ratio_string(lo), report::ratio_string(hi)],
        upper_bound_single_floor: bounds::upper_bound(inst, &measures, UpperBoundForm::SingleFloor),
        per_block_factors: measures,
    };
    match config.format {
        Format::Json => report::to_json(&out),
        Format::Csv => {
            let exact = protocol::exact_success_probability(&pc, config.mode)?.exact;
            single_row(config, &pc, exact)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorTrial {
    pub index: u64,
    pub k: u64,
    pub estimate: Option<u64>,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorAttempt {
    #[serde(rename = "N")]
    pub n: u64,
    pub x: u64,
    pub trials: Vec<FactorTrial>,
    /// `factors`, `odd_order` or `trivial_root`.
    pub result: String,
    pub found: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorTranscript {
    #[serde(rename = "N")]
    pub n: u64,
    pub factors: Vec<u64>,
    pub total_trials: u64,
    pub attempts: Vec<FactorAttempt>,
}

fn check_factorable(n: u64) -> Result<()> {
    let invalid = |reason: &str| Error::InvalidN {
        n,
        reason: reason.into(),
    };
    if n >= numtheory::MODULUS_CAP {
        return Err(Error::ModulusTooLarge(n));
    }
    if n < 3 || n.is_multiple_of(2) {
        return Err(invalid("must be odd and at least 3"));
    }
    if numtheory::is_prime(n) {
        return Err(invalid("is prime"));
    }
    if numtheory::prime_power_base(n).is_some() {
        return Err(invalid("is a prime power"));
    }
    Ok(())
}

/// Repeated order finding until every factor is prime or a prime power.
pub fn cmd_factor(config: &RunConfig, max_iterations: u64) -> Result<FactorTranscript> {
    let n = config.modulus()?;
    check_factorable(n)?;
    let mut base_rng = ChaCha8Rng::seed_from_u64(config.seed);
    base_rng.set_stream(BASE_DRAW_STREAM);

    let mut pending = vec![n];
    let mut done = Vec::new();
    let mut attempts = Vec::new();
    let mut trial_index = 0u64;
    let mut given_x = config.x;

    while let Some(m) = pending.pop() {
        loop {
            let x = match given_x.take() {
                Some(x) if m == n => x,
                _ => draw_base(m, &mut base_rng)?,
            };
            let bits = if m == n { config.bits } else { None };
            let inst = FactorInstance::build(m, x, bits, config.test_mode)?;
            let pc = ProtocolConfig::from_families(inst, &config.p_prep, &config.p_detect, config.seed)?;
            let mut trials = Vec::new();
            loop {
                if trial_index >= max_iterations {
                    return Err(Error::MaxIterations(max_iterations));
                }
                let t = protocol::run_trial(&pc, trial_index);
                trials.push(FactorTrial {
                    index: trial_index,
                    k: t.k,
                    estimate: t.estimate,
                    success: t.success,
                });
                trial_index += 1;
                if t.success {
                    break;
                }
            }
            let (result, found) = match numtheory::extract_factor(&inst) {
                Ok(f) => ("factors", f),
                Err(Error::OddOrder(_)) => ("odd_order", vec![]),
                Err(Error::TrivialRoot) => ("trivial_root", vec![]),
                Err(e) => return Err(e),
            };
            attempts.push(FactorAttempt {
                n: m,
                x,
                trials,
                result: result.into(),
                found: found.clone(),
            });
            if let Some(&d) = found.first() {
                for part in [d, m / d] {
                    if numtheory::prime_power_base(part).is_some() {
                        done.push(part);
                    } else {
                        pending.push(part);
                    }
                }
                break;
            }
        }
    }
    done.sort_unstable();
    Ok(FactorTranscript {
        n,
        factors: done,
        total_trials: trial_index,
        attempts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, passed: bool, detail: serde_json::Value) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

/// Oracle grid used by `verify`.
pub const ORACLE_GRID: [(u64, u64, u32); 4] = [(15, 7, 6), (15, 7, 8), (21, 2, 6), (15, 2, 8)];
pub const ORACLE_PS: [f64; 4] = [0.0, 0.3, 0.7, 1.0];

/// Largest per-outcome gap between the factorised simulation and the oracle.
pub fn oracle_gap(n: u64, x: u64, bits: u32, p: f64) -> Result<f64> {
    let inst = FactorInstance::with_bits(n, x, bits)?;
    let pc = ProtocolConfig::uniform(inst, p, 0)?;
    let oracle = protocol::brute_force_oracle(&pc)?;
    let fact = protocol::averaged_distribution(&pc)?;
    Ok(oracle
        .distribution
        .iter()
        .zip(&fact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

pub fn cmd_verify(config: &RunConfig, witness: &CounterexampleWitness) -> Verification {
    let mut checks = Vec::new();

    checks.push(match measures::verify_witness(witness) {
        Ok(r) => {
            let eig_ok = r
                .phi_choi_eigenvalues
                .iter()
                .zip([0.0, 0.0, 0.0, 1.0, 1.0, 1.0])
                .all(|(a, b)| (a - b).abs() <= 1e-9);
            let ok = (r.d_theta - 1.0).abs() <= 1e-9
                && (r.d_composed - 4.0 / 3.0).abs() <= 1e-9
                && r.phi_is_di
                && r.phi_is_cptp
                && eig_ok;
            check("counterexample", ok, serde_json::to_value(&r).unwrap_or_default())
        }
        Err(e) => check("counterexample", false, serde_json::json!({ "error": e.to_string() })),
    });

    let v30 = bounds::viete_product(30);
    let gap = v30 - bounds::FOUR_OVER_PI_SQ;
    checks.push(check(
        "viete",
        (0.0..=1e-6).contains(&gap),
        serde_json::json!({ "viete_30": v30, "gap": gap }),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let failures = (0..500)
        .filter(|_| {
            let len = rng.random_range(1..=12);
            let a: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
            !bounds::product_sandwich_check(&a)
        })
        .count();
    checks.push(check(
        "product_sandwich",
        failures == 0,
        serde_json::json!({ "vectors": 500, "failures": failures }),
    ));

    let h = QuantumChannel::hadamard();
    let mut closed_form_gap: f64 = 0.0;
    let hadamard_ok = measures::cohering_power(&h).map(|m| (m.value - 1.0).abs()).unwrap_or(1.0) <= 1e-12
        && measures::nsid_qubit(&h).map(|m| (m.value - 1.0).abs()).unwrap_or(1.0) <= 1e-12;
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let c = ChannelFamily::prep(p).map(|f| f.channel());
        let d = ChannelFamily::detect(p).map(|f| f.channel());
        if let (Ok(c), Ok(d)) = (c, d) {
            let cm = measures::cohering_power(&c).map(|m| m.value).unwrap_or(f64::NAN);
            let dm = measures::nsid_qubit(&d).map(|m| m.value).unwrap_or(f64::NAN);
            closed_form_gap = closed_form_gap.max((cm - p).abs()).max((dm - p).abs());
        }
    }
    checks.push(check(
        "measure_closed_forms",
        hadamard_ok && closed_form_gap <= 1e-12,
        serde_json::json!({ "family_gap": closed_form_gap }),
    ));

    let mut worst: f64 = 0.0;
    let mut errors = Vec::new();
    for &(n, x, bits) in &ORACLE_GRID {
        for &p in &ORACLE_PS {
            match oracle_gap(n, x, bits, p) {
                Ok(g) => worst = worst.max(g),
                Err(e) => errors.push(e.to_string()),
            }
        }
    }
    checks.push(check(
        "oracle_equivalence",
        errors.is_empty() && worst <= 1e-9,
        serde_json::json!({ "max_gap": worst, "errors": errors }),
    ));

    let sandwich = (|| -> Result<(usize, usize)> {
        let inst = FactorInstance::new(15, 7)?;
        let grid: GridSpec = "p=0:1:0.05".parse().map_err(Error::Usage)?;
        let mut violations = 0;
        let mut points = 0;
        for p in grid.points() {
            let pc = ProtocolConfig::uniform(inst, p, 0)?;
            let exact = protocol::exact_success_probability(&pc, Enumeration::Candidates)?.exact;
            let b = BoundReport::new(&pc, Some(exact), UpperBoundForm::DoubleFloor);
            points += 1;
            if !b.sandwich_holds(0.0) {
                violations += 1;
            }
        }
        Ok((points, violations))
    })();
    checks.push(match sandwich {
        Ok((points, violations)) => check(
            "bound_sandwich",
            violations == 0,
            serde_json::json!({ "points": points, "violations": violations }),
        ),
        Err(e) => check("bound_sandwich", false, serde_json::json!({ "error": e.to_string() })),
    });

    let classical = (|| -> Result<(bool, String)> {
        let inst = FactorInstance::new(15, 7)?;
        let pc = ProtocolConfig::uniform(inst, 0.0, 0)?;
        let exact = protocol::exact_success_probability(&pc, Enumeration::Candidates)?.exact;
        let ratio = protocol::classical_limit_ratio(&inst);
        let f = numtheory::count_f(&inst, Enumeration::Exhaustive);
        let (lo, hi) = numtheory::f_bounds(&inst);
        let exact_matches = exact * inst.q() as f64 == f as f64;
        Ok((exact_matches && lo <= f && f <= hi, report::ratio_string(ratio)))
    })();
    checks.push(match classical {
        Ok((ok, ratio)) => check("classical_limit", ok, serde_json::json!({ "classical": ratio })),
        Err(e) => check("classical_limit", false, serde_json::json!({ "error": e.to_string() })),
    });

    Verification {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
