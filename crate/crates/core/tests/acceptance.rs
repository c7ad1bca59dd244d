//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::time::Instant;

use coherence_shor::bounds::{self, BoundReport, UpperBoundForm, FOUR_OVER_PI_SQ};
use coherence_shor::channels::{ChannelFamily, QuantumChannel};
use coherence_shor::cli::{self, Cli, GridSpec, RunConfig, ORACLE_GRID, ORACLE_PS};
use coherence_shor::measures;
use coherence_shor::numtheory::{self, Enumeration, FactorInstance};
use coherence_shor::protocol::{self, ProtocolConfig};
use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for &(n, x, bits) in &ORACLE_GRID {
        for &p in &ORACLE_PS {
            let gap = cli::oracle_gap(n, x, bits, p).map_err(e2s)?;
            ensure(gap <= 1e-9, format!("({n},{x},{bits}) p={p}: gap {gap:e}"))?;
            worst = worst.max(gap);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, format!("took {secs:.1} s"))?;
    Ok(format!("16 configurations, max gap {worst:.2e}, {secs:.2} s"))
}

fn bound_sandwich() -> Outcome {
    let inst = FactorInstance::new(15, 7).map_err(e2s)?;
    let grid: GridSpec = "p=0:1:0.05".parse()?;
    let mut points = 0;
    for p in grid.points() {
        let pc = ProtocolConfig::uniform(inst, p, 0).map_err(e2s)?;
        let exact = protocol::exact_success_probability(&pc, Enumeration::Candidates)
            .map_err(e2s)?
            .exact;
        let b = BoundReport::new(&pc, Some(exact), UpperBoundForm::DoubleFloor);
        ensure(
            b.lower <= exact && exact <= b.upper,
            format!("p={p}: {} <= {exact} <= {} fails", b.lower, b.upper),
        )?;
        points += 1;
    }
    let full = ProtocolConfig::uniform(inst, 1.0, 0).map_err(e2s)?;
    let lower = bounds::lower_bound(&inst, &full.per_block_measures());
    ensure(
        (lower - FOUR_OVER_PI_SQ * 0.5).abs() <= 1e-12,
        format!("lower at p=1 is {lower}"),
    )?;
    let exact = protocol::exact_success_probability(&full, Enumeration::Candidates)
        .map_err(e2s)?
        .exact;
    let oracle = protocol::brute_force_oracle(&full).map_err(e2s)?.success;
    ensure((exact - 0.5).abs() <= 1e-10, format!("exact at p=1 is {exact}"))?;
    ensure((exact - oracle).abs() <= 1e-10, format!("oracle {oracle} vs exact {exact}"))?;
    Ok(format!("{points} points sandwiched, lower(1) = {lower:.12}, exact(1) = {exact:.12}"))
}

fn classical_limit() -> Outcome {
    let inst = FactorInstance::new(15, 7).map_err(e2s)?;
    let pc = ProtocolConfig::uniform(inst, 0.0, 0).map_err(e2s)?;
    let f = numtheory::count_f(&inst, Enumeration::Exhaustive);
    let ratio = protocol::classical_limit_ratio(&inst);
    for mode in [Enumeration::Candidates, Enumeration::Exhaustive] {
        let exact = protocol::exact_success_probability(&pc, mode).map_err(e2s)?.exact;
        // Products of halves and their sums are exact in binary floating point.
        ensure(exact * inst.q() as f64 == f as f64, format!("{mode:?}: {exact} * q != {f}"))?;
    }
    ensure((28..=66).contains(&f), format!("f = {f} outside [28, 66]"))?;
    Ok(format!("f = {f}, exact = {}/{} = {}", ratio.numer(), ratio.denom(), f as f64 / 256.0))
}

fn counterexample() -> Outcome {
    let r = measures::verify_counterexample().map_err(e2s)?;
    ensure((r.d_theta - 1.0).abs() <= 1e-9, format!("d_theta = {}", r.d_theta))?;
    ensure((r.d_composed - 4.0 / 3.0).abs() <= 1e-9, format!("d_composed = {}", r.d_composed))?;
    for (a, b) in r.phi_choi_eigenvalues.iter().zip([0.0, 0.0, 0.0, 1.0, 1.0, 1.0]) {
        ensure((a - b).abs() <= 1e-9, format!("Choi eigenvalues {:?}", r.phi_choi_eigenvalues))?;
    }
    Ok(format!("d_theta = {:.12}, d_composed = {:.12}", r.d_theta, r.d_composed))
}

fn measure_closed_forms() -> Outcome {
    let h = QuantumChannel::hadamard();
    let ch = measures::cohering_power(&h).map_err(e2s)?.value;
    let nh = measures::nsid_qubit(&h).map_err(e2s)?.value;
    ensure((ch - 1.0).abs() <= 1e-12 && (nh - 1.0).abs() <= 1e-12, "Hadamard measures")?;
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let c = measures::cohering_power(&ChannelFamily::prep(p).map_err(e2s)?.channel())
            .map_err(e2s)?
            .value;
        let m = measures::nsid_qubit(&ChannelFamily::detect(p).map_err(e2s)?.channel())
            .map_err(e2s)?
            .value;
        ensure((c - p).abs() <= 1e-12 && (m - p).abs() <= 1e-12, format!("p={p}: {c}, {m}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rank = rng.random_range(1..=4);
        let ch = QuantumChannel::random(2, 2, rank, &mut rng);
        let d = measures::d_functional(&ch).map_err(e2s)?.value;
        let n = measures::nsid_qubit(&ch).map_err(e2s)?.value;
        worst = worst.max((d - n).abs());
    }
    ensure(worst <= 1e-10, format!("d_functional vs nsid gap {worst:e}"))?;
    Ok(format!("11 family points exact, 100 random channels within {worst:.1e}"))
}

fn viete() -> Outcome {
    let gap = bounds::viete_product(30) - FOUR_OVER_PI_SQ;
    ensure((0.0..=1e-6).contains(&gap), format!("gap {gap:e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..500 {
        let len = rng.random_range(1..=12);
        let a: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
        ensure(bounds::product_sandwich_check(&a), format!("vector {i}: {a:?}"))?;
    }
    Ok(format!("gap {gap:.3e}, 500 vectors pass"))
}

fn parse(args: &[&str]) -> Result<RunConfig, String> {
    let mut full = vec!["coherence-shor"];
    full.extend_from_slice(args);
    let cli = Cli::try_parse_from(full).map_err(e2s)?;
    RunConfig::from_cli(&cli).map_err(e2s)
}

fn monte_carlo() -> Outcome {
    let cfg = parse(&["sample", "--n", "15", "--x", "7", "--trials", "100000", "--seed", "31"])?;
    let first = cli::cmd_sample(&cfg).map_err(e2s)?;
    let second = cli::cmd_sample(&cfg).map_err(e2s)?;
    ensure(first == second, "outputs differ between identical runs")?;

    let inst = FactorInstance::new(15, 7).map_err(e2s)?;
    let pc = ProtocolConfig::uniform(inst, 1.0, 31).map_err(e2s)?;
    let s = protocol::sample_trials(&pc, 100_000).map_err(e2s)?;
    let exact = protocol::exact_success_probability(&pc, Enumeration::Candidates)
        .map_err(e2s)?
        .exact;
    let z = (s.frequency - exact).abs() / s.stderr;
    ensure(z <= 3.0, format!("frequency {} vs {exact}: {z:.2} stderr", s.frequency))?;
    Ok(format!("frequency {:.5} (exact {exact:.5}, {z:.2} stderr), byte-identical rerun", s.frequency))
}

fn d_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let slack = 1e-9;
    for i in 0..200 {
        let lambda = QuantumChannel::random(2, 2, rng.random_range(1..=4), &mut rng);
        let phi = QuantumChannel::random_di(2, 2, &mut rng);
        let before = measures::d_functional(&lambda).map_err(e2s)?.value;
        let after = measures::d_functional(&phi.compose(&lambda)).map_err(e2s)?.value;
        ensure(after <= before + slack, format!("post-processing case {i}: {after} > {before}"))?;
    }
    for i in 0..200 {
        let lambda = QuantumChannel::random(2, 2, rng.random_range(1..=4), &mut rng);
        let single = measures::d_functional(&lambda).map_err(e2s)?.value;
        let joint = measures::d_functional(&lambda.tensor(&QuantumChannel::identity(2)))
            .map_err(e2s)?
            .value;
        ensure((joint - single).abs() <= slack, format!("parallel case {i}: {joint} vs {single}"))?;
    }
    for i in 0..200 {
        let a = QuantumChannel::random(2, 2, rng.random_range(1..=4), &mut rng);
        let b = QuantumChannel::random(2, 2, rng.random_range(1..=4), &mut rng);
        let t: f64 = rng.random();
        let mixed = measures::d_functional(&a.mix(t, &b).map_err(e2s)?).map_err(e2s)?.value;
        let da = measures::d_functional(&a).map_err(e2s)?.value;
        let db = measures::d_functional(&b).map_err(e2s)?.value;
        ensure(
            mixed <= t * da + (1.0 - t) * db + slack,
            format!("convexity case {i}: {mixed} > {}", t * da + (1.0 - t) * db),
        )?;
    }
    let r = measures::verify_counterexample().map_err(e2s)?;
    ensure(
        (r.violation() - 1.0 / 3.0).abs() <= 1e-9,
        format!("violation {}", r.violation()),
    )?;
    Ok(format!("3 x 200 random channels pass, violation = {:.12}", r.violation()))
}

/// Expected counts per bin (1, 2, ..., tail) for a geometric law, merged so
/// every bin expects at least five observations.
fn geometric_bins(theta: f64, runs: f64) -> Vec<(u64, Option<u64>, f64)> {
    let mut bins = Vec::new();
    let mut t = 1u64;
    let mut lo = 1u64;
    let mut acc = 0.0;
    loop {
        let tail = (1.0 - theta).powi(t as i32 - 1) * runs;
        if tail < 10.0 {
            // Everything from `lo` on, merged into the previous bin if small.
            let rest = acc + tail;
            if rest < 5.0 {
                let (l, _, e) = bins.pop().expect("at least one bin");
                bins.push((l, None, e + rest));
            } else {
                bins.push((lo, None, rest));
            }
            return bins;
        }
        acc += theta * (1.0 - theta).powi(t as i32 - 1) * runs;
        if acc >= 5.0 {
            bins.push((lo, Some(t), acc));
            acc = 0.0;
            lo = t + 1;
        }
        t += 1;
    }
}

fn end_to_end_factoring() -> Outcome {
    let full = parse(&["factor", "--n", "15", "--seed", "5"])?;
    let t = cli::cmd_factor(&full, 10_000).map_err(e2s)?;
    ensure(t.factors == vec![3, 5], format!("factors {:?}", t.factors))?;

    let inst = FactorInstance::new(15, 7).map_err(e2s)?;
    let theta = protocol::classical_limit_probability(&inst);
    let runs = 200;
    let mut counts = Vec::with_capacity(runs);
    for seed in 0..runs {
        let cfg = parse(&[
            "factor", "--n", "15", "--x", "7", "--p-prep", "0", "--p-detect", "0", "--seed",
            &seed.to_string(),
        ])?;
        let t = cli::cmd_factor(&cfg, 100_000).map_err(e2s)?;
        ensure(t.factors == vec![3, 5], format!("seed {seed}: factors {:?}", t.factors))?;
        counts.push(t.total_trials);
    }
    let bins = geometric_bins(theta, runs as f64);
    let stat: f64 = bins
        .iter()
        .map(|&(lo, hi, expected)| {
            let observed = counts
                .iter()
                .filter(|&&c| c >= lo && hi.is_none_or(|h| c <= h))
                .count() as f64;
            (observed - expected).powi(2) / expected
        })
        .sum();
    let df = (bins.len() - 1) as f64;
    let p_value = 1.0 - ChiSquared::new(df).map_err(e2s)?.cdf(stat);
    ensure(p_value > 0.01, format!("chi-square {stat:.2} on {df} df, p = {p_value:.4}"))?;
    let mean = counts.iter().sum::<u64>() as f64 / runs as f64;
    Ok(format!(
        "{{3, 5}} at full coherence; p=0 mean trials {mean:.2} (1/theta = {:.2}), chi-square p = {p_value:.3}",
        1.0 / theta
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("bound sandwich", bound_sandwich),
        ("classical limit", classical_limit),
        ("counterexample reproduction", counterexample),
        ("measure closed forms", measure_closed_forms),
        ("viete product", viete),
        ("monte carlo consistency", monte_carlo),
        ("d monotonicity properties", d_monotonicity),
        ("end-to-end factoring", end_to_end_factoring),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
