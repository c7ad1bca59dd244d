//! The sequential single-control-qubit order-finding protocol.
//!
//! Block `l` (1-based) prepares the control qubit with `theta_l`, lets the
//! controlled `U_B^{2^{L-l}}` act, applies the feedback rotation built from the
//! bits already measured, detects with `lambda_l` and emits bit `k_{l-1}`.
//! Conditioned on the eigenphase index `j`, the control evolves independently
//! block by block, so `p_k^{(j)}` is an ordered product of 2x2 evaluations.
//! [`brute_force_oracle`] simulates the joint control/auxiliary system instead
//! and serves as the reference.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{self, ChannelFamily, DensityMatrix, QubitChannel};
use crate::linalg::{self, CMatrix};
use crate::measures;
use crate::numtheory::{self, Enumeration, FactorInstance};
use crate::{Error, Result};

/// Largest `L` for full enumeration of `[0, 2^L)`.
pub const EXHAUSTIVE_BITS_CAP: u32 = 16;
/// Largest `L` for the joint-system oracle.
pub const ORACLE_BITS_CAP: u32 = 12;
/// Largest `N` for the joint-system oracle.
pub const ORACLE_MODULUS_CAP: u64 = 36;

type M2 = Matrix2<Complex64>;

fn to_m2(m: &CMatrix) -> M2 {
    M2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

/// Precomputed data for one block.
#[derive(Debug, Clone)]
pub struct BlockSetup {
    prep: QubitChannel,
    detect: QubitChannel,
    input: usize,
    state: M2,
    effects: [M2; 2],
    cohering_power: f64,
    nsid: f64,
}

impl BlockSetup {
    /// The incoherent input is the basis state that maximises the coherence
    /// `prep` creates.
    pub fn new(prep: QubitChannel, detect: QubitChannel) -> Result<Self> {
        let power = measures::cohering_power(&prep)?;
        let nsid = measures::nsid_qubit(&detect)?.value;
        if !detect.is_unital() {
            return Err(Error::NotUnital);
        }
        let input = match power.witness {
            Some(measures::Witness::BasisInput(n)) => n,
            _ => 0,
        };
        let standardized = channels::prep_standardize(&prep, &DensityMatrix::basis(2, input))?;
        let detector = channels::hadamard_like(&detect)?;
        let effects = [0, 1].map(|b| {
            let projector = linalg::matrix_unit(2, b, b);
            to_m2(&detector.adjoint_apply(&projector).expect("qubit effect"))
        });
        Ok(Self {
            prep,
            detect,
            input,
            state: to_m2(standardized.matrix()),
            effects,
            cohering_power: power.value,
            nsid,
        })
    }

    pub fn from_family(p_prep: f64, p_detect: f64) -> Result<Self> {
        Self::new(
            ChannelFamily::prep(p_prep)?.channel(),
            ChannelFamily::detect(p_detect)?.channel(),
        )
    }

    pub fn prep(&self) -> &QubitChannel {
        &self.prep
    }

    pub fn detect(&self) -> &QubitChannel {
        &self.detect
    }

    /// Index of the incoherent input `sigma_l`.
    pub fn input(&self) -> usize {
        self.input
    }

    /// `c` in the standardized control state `1/2 + c sigma_x`.
    pub fn coherence(&self) -> f64 {
        self.state[(0, 1)].re
    }

    pub fn cohering_power(&self) -> f64 {
        self.cohering_power
    }

    pub fn nsid(&self) -> f64 {
        self.nsid
    }

    /// Standardized control state of this block.
    pub fn control_state(&self) -> &Matrix2<Complex64> {
        &self.state
    }

    /// Rotate the standardized state by `diag(1, e^{i angle})`, detect, and
    /// read out both outcomes.
    pub fn distribution(&self, angle: f64) -> [f64; 2] {
        let phase = Complex64::from_polar(1.0, angle);
        let mut rho = self.state;
        rho[(0, 1)] *= phase.conj();
        rho[(1, 0)] *= phase;
        self.effects.map(|e| (e * rho).trace().re)
    }

    /// `1/2 [1 + C M cos(angle + pi b)]`.
    pub fn closed_form(&self, angle: f64) -> [f64; 2] {
        let a = self.cohering_power * self.nsid;
        [0.5 * (1.0 + a * angle.cos()), 0.5 * (1.0 - a * angle.cos())]
    }
}

/// Everything that defines a simulation run.
#[derive(Debug, Clone)]
pub struct ProtocolConfig {
    instance: FactorInstance,
    blocks: Vec<BlockSetup>,
    seed: u64,
}

impl ProtocolConfig {
    pub fn new(instance: FactorInstance, blocks: Vec<BlockSetup>, seed: u64) -> Result<Self> {
        let expected = instance.bits() as usize;
        if blocks.len() != expected {
            return Err(Error::BlockCountMismatch {
                expected,
                actual: blocks.len(),
            });
        }
        Ok(Self {
            instance,
            blocks,
            seed,
        })
    }

    /// Per-block channels; each list has length `L`.
    pub fn from_channels(
        instance: FactorInstance,
        prep: Vec<QubitChannel>,
        detect: Vec<QubitChannel>,
        seed: u64,
    ) -> Result<Self> {
        let expected = instance.bits() as usize;
        for len in [prep.len(), detect.len()] {
            if len != expected {
                return Err(Error::BlockCountMismatch {
                    expected,
                    actual: len,
                });
            }
        }
        let blocks = prep
            .into_iter()
            .zip(detect)
            .map(|(t, l)| BlockSetup::new(t, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(instance, blocks, seed)
    }

    /// Family parameters per block; a single value is shared by every block.
    pub fn from_families(instance: FactorInstance, p_prep: &[f64], p_detect: &[f64], seed: u64) -> Result<Self> {
        let l = instance.bits() as usize;
        let expand = |ps: &[f64]| -> Result<Vec<f64>> {
            match ps.len() {
                1 => Ok(vec![ps[0]; l]),
                n if n == l => Ok(ps.to_vec()),
                n => Err(Error::BlockCountMismatch {
                    expected: l,
                    actual: n,
                }),
            }
        };
        let (pp, pd) = (expand(p_prep)?, expand(p_detect)?);
        // Identical parameters reuse one setup.
        let mut blocks: Vec<BlockSetup> = Vec::with_capacity(l);
        for i in 0..l {
            let reuse = (i > 0 && pp[i] == pp[i - 1] && pd[i] == pd[i - 1]).then(|| blocks[i - 1].clone());
            blocks.push(match reuse {
                Some(b) => b,
                None => BlockSetup::from_family(pp[i], pd[i])?,
            });
        }
        Self::new(instance, blocks, seed)
    }

    /// `p_prep = p_detect = p` in every block.
    pub fn uniform(instance: FactorInstance, p: f64, seed: u64) -> Result<Self> {
        Self::from_families(instance, &[p], &[p], seed)
    }

    pub fn instance(&self) -> &FactorInstance {
        &self.instance
    }

    pub fn blocks(&self) -> &[BlockSetup] {
        &self.blocks
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// `(C(theta_l), M(lambda_l))` for each block.
    pub fn per_block_measures(&self) -> Vec<(f64, f64)> {
        self.blocks
            .iter()
            .map(|b| (b.cohering_power, b.nsid))
            .collect()
    }
}

/// `(j 2^{L-l} mod r) / r`, the encoding rotation in turns.
pub fn encoding_turns(j: u64, l: u32, instance: &FactorInstance) -> Ratio<u64> {
    Ratio::new(encoding_numerator(j, l, instance), instance.order())
}

/// `j 2^{L-l} mod r`.
fn encoding_numerator(j: u64, l: u32, instance: &FactorInstance) -> u64 {
    let r = instance.order();
    let shift = numtheory::mod_pow(2, (instance.bits() - l) as u64, r);
    (j as u128 * shift as u128 % r as u128) as u64
}

/// Encoding phase `2 pi j 2^{L-l} / r` reduced to `[0, 2 pi)`.
pub fn encoding_phase(j: u64, l: u32, instance: &FactorInstance) -> f64 {
    let t = encoding_turns(j, l, instance);
    2.0 * PI * (*t.numer() as f64 / *t.denom() as f64)
}

/// Integer value of the bits `k_0 .. k_{l-2}`.
fn prefix_value(bits: &[u8]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | ((b as u64 & 1) << i))
}

/// `sum_{a=2}^{l} k_{l-a} / 2^a`; equal to the prefix value over `2^l`.
pub fn feedback_turns(bits: &[u8], l: u32) -> Ratio<u64> {
    let used = &bits[..bits.len().min(l.saturating_sub(1) as usize)];
    Ratio::new(prefix_value(used), 1u64 << l)
}

pub fn feedback_phase(bits: &[u8], l: u32) -> f64 {
    let t = feedback_turns(bits, l);
    2.0 * PI * (*t.numer() as f64 / *t.denom() as f64)
}

/// Net rotation angle of block `l` given the measured prefix, formed as one
/// exact fraction over `r 2^l` before conversion.
fn block_angle(j: u64, prefix: u64, l: u32, instance: &FactorInstance) -> f64 {
    let r = instance.order() as i128;
    let den = r << l;
    let num = (encoding_numerator(j, l, instance) as i128) * (1i128 << l) - prefix as i128 * r;
    let reduced = num.rem_euclid(den);
    2.0 * PI * (reduced as f64 / den as f64)
}

/// `(p_0, p_1)` of block `l` with `theta`, `lambda`, eigenphase index `j` and
/// previously measured bits `k_0 .. k_{l-2}`.
pub fn block_distribution(
    theta: &QubitChannel,
    lambda: &QubitChannel,
    j: u64,
    bits: &[u8],
    l: u32,
    instance: &FactorInstance,
) -> Result<[f64; 2]> {
    let block = BlockSetup::new(theta.clone(), lambda.clone())?;
    let used = &bits[..bits.len().min(l.saturating_sub(1) as usize)];
    Ok(block.distribution(block_angle(j, prefix_value(used), l, instance)))
}

/// `p_k^{(j)}`.
pub fn outcome_probability(k: u64, j: u64, config: &ProtocolConfig) -> Result<f64> {
    let inst = &config.instance;
    if k >= inst.q() {
        return Err(Error::OutcomeOutOfRange { k, q: inst.q() });
    }
    let mut p = 1.0;
    for (i, block) in config.blocks.iter().enumerate() {
        let l = i as u32 + 1;
        let prefix = k & ((1u64 << i) - 1);
        let bit = (k >> i & 1) as usize;
        p *= block.distribution(block_angle(j, prefix, l, inst))[bit];
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    pub j: u64,
    /// `probs[k] = p_k^{(j)}`.
    pub probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

fn require_exhaustive(instance: &FactorInstance) -> Result<()> {
    if instance.bits() > EXHAUSTIVE_BITS_CAP {
        return Err(Error::TooLarge {
            what: "L",
            value: instance.bits() as u64,
            cap: EXHAUSTIVE_BITS_CAP as u64,
        });
    }
    Ok(())
}

/// Full distribution over `[0, 2^L)` for one `j`, by walking the outcome tree.
pub fn outcome_distribution(j: u64, config: &ProtocolConfig) -> Result<OutcomeDistribution> {
    let inst = &config.instance;
    require_exhaustive(inst)?;
    let mut probs = vec![0.0; inst.q() as usize];
    walk(config, j, 0, 0, 1.0, &mut probs);
    Ok(OutcomeDistribution { j, probs })
}

fn walk(config: &ProtocolConfig, j: u64, depth: usize, prefix: u64, p: f64, out: &mut [f64]) {
    if depth == config.blocks.len() {
        out[prefix as usize] = p;
        return;
    }
    let angle = block_angle(j, prefix, depth as u32 + 1, &config.instance);
    let dist = config.blocks[depth].distribution(angle);
    for (b, pb) in dist.into_iter().enumerate() {
        walk(config, j, depth + 1, prefix | ((b as u64) << depth), p * pb, out);
    }
}

/// `(1/r) sum_j p_k^{(j)}` for every `k`.
pub fn averaged_distribution(config: &ProtocolConfig) -> Result<Vec<f64>> {
    let inst = &config.instance;
    require_exhaustive(inst)?;
    let r = inst.order();
    let dists = (0..r)
        .into_par_iter()
        .map(|j| outcome_distribution(j, config).map(|d| d.probs))
        .collect::<Result<Vec<_>>>()?;
    let mut avg = vec![0.0; inst.q() as usize];
    for d in &dists {
        for (a, p) in avg.iter_mut().zip(d) {
            *a += p;
        }
    }
    avg.iter_mut().for_each(|a| *a /= r as f64);
    Ok(avg)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuccessReport {
    pub exact: f64,
    pub classical: f64,
    /// Conditional success probability for each `j` in `[0, r)`.
    pub per_j: Vec<f64>,
    pub candidates_examined: u64,
}

/// `(1/r) sum_j sum_{k succeeds} p_k^{(j)}`.
pub fn exact_success_probability(config: &ProtocolConfig, mode: Enumeration) -> Result<SuccessReport> {
    let inst = &config.instance;
    let r = inst.order();
    let (per_j, examined) = match mode {
        Enumeration::Candidates => {
            let examined = numtheory::permitted_outcomes(inst).len() as u64;
            let good = numtheory::successful_outcomes(inst, Enumeration::Candidates);
            let per_j = (0..r)
                .into_par_iter()
                .map(|j| {
                    good.iter()
                        .map(|&k| outcome_probability(k, j, config))
                        .sum::<Result<f64>>()
                })
                .collect::<Result<Vec<f64>>>()?;
            (per_j, examined)
        }
        Enumeration::Exhaustive => {
            require_exhaustive(inst)?;
            let good = numtheory::successful_outcomes(inst, Enumeration::Exhaustive);
            let per_j = (0..r)
                .into_par_iter()
                .map(|j| {
                    let d = outcome_distribution(j, config)?;
                    Ok(good.iter().map(|&k| d.probs[k as usize]).sum())
                })
                .collect::<Result<Vec<f64>>>()?;
            (per_j, inst.q())
        }
    };
    let exact = per_j.iter().sum::<f64>() / r as f64;
    Ok(SuccessReport {
        exact,
        classical: classical_limit_probability(inst),
        per_j,
        candidates_examined: examined,
    })
}

/// `f(N, r) / 2^L` as an exact fraction.
pub fn classical_limit_ratio(instance: &FactorInstance) -> Ratio<u64> {
    Ratio::new(numtheory::count_f(instance, Enumeration::Candidates), instance.q())
}

pub fn classical_limit_probability(instance: &FactorInstance) -> f64 {
    let r = classical_limit_ratio(instance);
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    /// Probability of each outcome `k`, averaged over the auxiliary system.
    pub distribution: Vec<f64>,
    pub success: f64,
}

/// Joint control (x) auxiliary simulation with the auxiliary register started
/// in `|1>` and the controlled powers of `U_B |y> = |x y mod N>` applied
/// directly. Both outcomes are followed at every block.
pub fn brute_force_oracle(config: &ProtocolConfig) -> Result<OracleReport> {
    let inst = &config.instance;
    if inst.bits() > ORACLE_BITS_CAP {
        return Err(Error::TooLarge {
            what: "L",
            value: inst.bits() as u64,
            cap: ORACLE_BITS_CAP as u64,
        });
    }
    if inst.n() > ORACLE_MODULUS_CAP {
        return Err(Error::TooLarge {
            what: "N",
            value: inst.n(),
            cap: ORACLE_MODULUS_CAP,
        });
    }
    let n = inst.n() as usize;
    let big_l = inst.bits();

    // Permutation for U_B^{2^{L-l}}, block l = index + 1.
    let perms: Vec<Vec<usize>> = (1..=big_l)
        .map(|l| {
            let mult = numtheory::mod_pow(inst.x(), 1u64 << (big_l - l), inst.n());
            (0..n).map(|y| (y as u64 * mult % inst.n()) as usize).collect()
        })
        .collect();
    let controls: Vec<(CMatrix, Vec<CMatrix>)> = config
        .blocks
        .iter()
        .map(|b| {
            let tau = channels::prep_standardize(&b.prep, &DensityMatrix::basis(2, b.input))?;
            let detector = channels::hadamard_like(&b.detect)?;
            Ok((tau.into_matrix(), detector.kraus().to_vec()))
        })
        .collect::<Result<_>>()?;

    let mut aux = CMatrix::zeros(n, n);
    aux[(1 % n, 1 % n)] = linalg::ONE;
    let mut distribution = vec![0.0; inst.q() as usize];
    let ctx = OracleContext {
        perms: &perms,
        controls: &controls,
    };
    ctx.descend(0, 0, aux, &mut distribution);

    let good = numtheory::successful_outcomes(inst, Enumeration::Candidates);
    let success = good.iter().map(|&k| distribution[k as usize]).sum();
    Ok(OracleReport {
        distribution,
        success,
    })
}

struct OracleContext<'a> {
    perms: &'a [Vec<usize>],
    controls: &'a [(CMatrix, Vec<CMatrix>)],
}

impl OracleContext<'_> {
    fn descend(&self, depth: usize, prefix: u64, aux: CMatrix, out: &mut [f64]) {
        if depth == self.perms.len() {
            out[prefix as usize] = aux.trace().re;
            return;
        }
        let l = depth as u32 + 1;
        let perm = &self.perms[depth];
        let (tau, kraus) = &self.controls[depth];

        // V rho and V rho V^dagger for the permutation V.
        let n = aux.nrows();
        let v_rho = CMatrix::from_fn(n, n, |a, b| aux[(inverse(perm, a), b)]);
        let rho_vd = CMatrix::from_fn(n, n, |a, b| aux[(a, inverse(perm, b))]);
        let v_rho_vd = CMatrix::from_fn(n, n, |a, b| aux[(inverse(perm, a), inverse(perm, b))]);

        // Feedback rotation diag(1, e^{-2 pi i prefix / 2^l}) on the control.
        let fb = Complex64::from_polar(1.0, -2.0 * PI * prefix as f64 / (1u64 << l) as f64);
        let blocks = [
            [&aux * tau[(0, 0)], rho_vd * (tau[(0, 1)] * fb.conj())],
            [v_rho * (tau[(1, 0)] * fb), v_rho_vd * tau[(1, 1)]],
        ];

        for bit in 0..2usize {
            let mut next = CMatrix::zeros(n, n);
            for k in kraus {
                for a in 0..2 {
                    for b in 0..2 {
                        let w = k[(bit, a)] * k[(bit, b)].conj();
                        if w.norm() != 0.0 {
                            next += &blocks[a][b] * w;
                        }
                    }
                }
            }
            self.descend(depth + 1, prefix | ((bit as u64) << depth), next, out);
        }
    }
}

/// Preimage of `y` under a permutation, by search; `N <= 36`.
fn inverse(perm: &[usize], y: usize) -> usize {
    perm.iter().position(|&p| p == y).expect("permutation")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub j: u64,
    pub k: u64,
    pub estimate: Option<u64>,
    pub success: bool,
}

/// Trial `index` under `config.seed`, on its own generator stream.
pub fn run_trial(config: &ProtocolConfig, index: u64) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    let inst = &config.instance;
    let j = rng.random_range(0..inst.order());
    let mut k = 0u64;
    for (i, block) in config.blocks.iter().enumerate() {
        let dist = block.distribution(block_angle(j, k, i as u32 + 1, inst));
        let u: f64 = rng.random();
        if u >= dist[0] {
            k |= 1 << i;
        }
    }
    let outcome = numtheory::cfa_estimate_order(k, inst).expect("k < q");
    TrialRecord {
        j,
        k,
        estimate: outcome.estimate,
        success: outcome.success,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleSummary {
    pub trials: u64,
    pub successes: u64,
    pub frequency: f64,
    pub stderr: f64,
}

pub fn sample_trials(config: &ProtocolConfig, n_trials: u64) -> Result<SampleSummary> {
    if n_trials == 0 {
        return Err(Error::Usage("number of trials must be at least 1".into()));
    }
    let successes: u64 = (0..n_trials)
        .into_par_iter()
        .map(|i| run_trial(config, i).success as u64)
        .sum();
    let f = successes as f64 / n_trials as f64;
    Ok(SampleSummary {
        trials: n_trials,
        successes,
        frequency: f,
        stderr: (f * (1.0 - f) / n_trials as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::QuantumChannel;

    fn inst(n: u64, x: u64, bits: u32) -> FactorInstance {
        FactorInstance::with_bits(n, x, bits).unwrap()
    }

    #[test]
    fn phases() {
        let i4 = inst(15, 7, 8);
        let i2 = inst(15, 14, 8);
        assert_eq!(encoding_phase(0, 3, &i4), 0.0);
        assert!((encoding_phase(1, 8, &i2) - PI).abs() < 1e-15);
        assert!((encoding_phase(1, 7, &i4) - PI).abs() < 1e-15);
        assert_eq!(feedback_phase(&[], 1), 0.0);
        assert!((feedback_phase(&[1], 2) - 2.0 * PI * 0.25).abs() < 1e-15);
        assert!((feedback_phase(&[1, 1], 3) - 2.0 * PI * 0.375).abs() < 1e-15);
        assert_eq!(feedback_turns(&[1, 1], 3), Ratio::new(3, 8));
    }

    #[test]
    fn block_examples() {
        let h = QuantumChannel::hadamard();
        let i4 = inst(15, 7, 8);
        for l in 1..=8 {
            let p = block_distribution(&h, &h, 0, &[], l, &i4).unwrap();
            assert!((p[0] - 1.0).abs() < 1e-15 && p[1].abs() < 1e-15);
        }
        let delta = QuantumChannel::dephasing(2);
        assert_eq!(block_distribution(&delta, &delta, 1, &[1, 0], 3, &i4).unwrap(), [0.5, 0.5]);
        let i2 = inst(15, 14, 8);
        let p = block_distribution(&h, &h, 1, &[0; 7], 8, &i2).unwrap();
        assert!(p[0].abs() < 1e-15 && (p[1] - 1.0).abs() < 1e-15);

        let reset = QuantumChannel::measure_prepare(&[DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 0)]).unwrap();
        assert_eq!(block_distribution(&h, &reset, 0, &[], 1, &i4), Err(Error::NotUnital));
    }

    #[test]
    fn matrix_algebra_matches_closed_form() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let prep = QuantumChannel::random(2, 2, 2, &mut rng);
            let detect = QuantumChannel::random_mixed_unitary(2, 3, &mut rng);
            let block = BlockSetup::new(prep, detect).unwrap();
            for step in 0..16 {
                let angle = step as f64 * PI / 8.0;
                let a = block.distribution(angle);
                let b = block.closed_form(angle);
                assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn full_coherence_statistics() {
        let cfg = ProtocolConfig::uniform(inst(15, 7, 8), 1.0, 0).unwrap();
        assert!((outcome_probability(64, 1, &cfg).unwrap() - 1.0).abs() < 1e-12);
        let d = outcome_distribution(3, &cfg).unwrap();
        assert!((d.probs[192] - 1.0).abs() < 1e-12);
        assert!((d.total() - 1.0).abs() < 1e-12);
        let report = exact_success_probability(&cfg, Enumeration::Candidates).unwrap();
        assert!((report.exact - 0.5).abs() < 1e-10);
    }

    #[test]
    fn incoherent_protocol_is_uniform() {
        let cfg = ProtocolConfig::uniform(inst(15, 7, 6), 0.0, 0).unwrap();
        for k in [0, 5, 63] {
            assert_eq!(outcome_probability(k, 1, &cfg).unwrap(), 1.0 / 64.0);
        }
        let report = exact_success_probability(&cfg, Enumeration::Exhaustive).unwrap();
        assert_eq!(report.exact, report.classical);
        assert_eq!(report.classical, 12.0 / 64.0);
    }

    #[test]
    fn oracle_agrees_on_small_instance() {
        let cfg = ProtocolConfig::from_families(inst(15, 7, 6), &[0.5], &[0.8], 0).unwrap();
        let oracle = brute_force_oracle(&cfg).unwrap();
        let fact = averaged_distribution(&cfg).unwrap();
        for (a, b) in oracle.distribution.iter().zip(&fact) {
            assert!((a - b).abs() < 1e-12);
        }
        let exact = exact_success_probability(&cfg, Enumeration::Candidates).unwrap();
        assert!((oracle.success - exact.exact).abs() < 1e-12);
    }

    #[test]
    fn oracle_caps() {
        let cfg = ProtocolConfig::uniform(inst(15, 7, 13), 1.0, 0).unwrap();
        assert!(matches!(brute_force_oracle(&cfg), Err(Error::TooLarge { .. })));
        let cfg = ProtocolConfig::uniform(inst(15, 7, 17), 1.0, 0).unwrap();
        assert!(matches!(
            exact_success_probability(&cfg, Enumeration::Exhaustive),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn trials_are_reproducible() {
        let cfg = ProtocolConfig::uniform(inst(15, 7, 8), 0.7, 42).unwrap();
        assert_eq!(run_trial(&cfg, 3), run_trial(&cfg, 3));
        assert_eq!(sample_trials(&cfg, 1).unwrap(), sample_trials(&cfg, 1).unwrap());
        assert!(matches!(sample_trials(&cfg, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn block_count_is_checked() {
        let i = inst(15, 7, 8);
        assert_eq!(
            ProtocolConfig::from_families(i, &[0.1, 0.2], &[1.0], 0).unwrap_err(),
            Error::BlockCountMismatch { expected: 8, actual: 2 }
        );
    }
}
