//! Coherence measures for channels.
//!
//! - cohering power `C(theta)`: the largest robustness of coherence that
//!   `theta` produces from an incoherent input;
//! - the NSID measure, `2 |Lambda_00^01|` for qubits;
//! - the functional `D(Lambda) = max_rho || Delta Lambda (1 - Delta) rho ||_1`,
//!   evaluated as a maximum over sign vectors of top eigenvalues.

use serde::Serialize;

use crate::channels::{ChoiMatrix, DensityMatrix, QuantumChannel, QubitChannel};
use crate::linalg::{self, c, CMatrix};
use crate::tolerance::FAITHFUL;
use crate::{Error, Result};

/// Largest output dimension accepted by [`d_functional`].
pub const SIGN_VECTOR_DIM_CAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureName {
    CoheringPower,
    Nsid,
    DFunctional,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Index `n` of the incoherent input `|n><n|`.
    BasisInput(usize),
    /// Entries in `{-1, +1}`.
    SignVector(Vec<i8>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureValue {
    pub name: MeasureName,
    pub value: f64,
    pub witness: Option<Witness>,
}

impl MeasureValue {
    /// Zero within the faithfulness threshold.
    pub fn vanishes(&self) -> bool {
        self.value <= FAITHFUL
    }
}

/// `2 |rho_01|`, which equals the robustness of coherence on a qubit.
pub fn robustness_qubit(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::WrongDimension(rho.dim()));
    }
    Ok(2.0 * rho.matrix()[(0, 1)].norm())
}

fn require_qubit(ch: &QuantumChannel) -> Result<()> {
    if ch.is_qubit() {
        Ok(())
    } else {
        Err(Error::WrongDimension(ch.in_dim().max(ch.out_dim())))
    }
}

/// Robustness is convex, so the two incoherent pure inputs suffice. Ties go to
/// `|0><0|`.
pub fn cohering_power(theta: &QubitChannel) -> Result<MeasureValue> {
    require_qubit(theta)?;
    let values = [0, 1].map(|n| 2.0 * theta.index(0, 1, n, n).norm());
    let best = if values[1] > values[0] { 1 } else { 0 };
    Ok(MeasureValue {
        name: MeasureName::CoheringPower,
        value: values[best],
        witness: Some(Witness::BasisInput(best)),
    })
}

pub fn nsid_qubit(lambda: &QubitChannel) -> Result<MeasureValue> {
    require_qubit(lambda)?;
    Ok(MeasureValue {
        name: MeasureName::Nsid,
        value: 2.0 * lambda.index(0, 0, 0, 1).norm(),
        witness: None,
    })
}

/// `max_s lambda_max((1 - Delta) Lambda^dagger(S_s))` over sign vectors `s`.
pub fn d_functional(lambda: &QuantumChannel) -> Result<MeasureValue> {
    let d = lambda.out_dim();
    if d > SIGN_VECTOR_DIM_CAP {
        return Err(Error::DimensionTooLarge(d));
    }
    let mut best = (f64::NEG_INFINITY, 0usize);
    for bits in 0..(1usize << d) {
        let signs = CMatrix::from_fn(d, d, |i, j| {
            if i != j {
                c(0.0, 0.0)
            } else if bits >> i & 1 == 1 {
                c(-1.0, 0.0)
            } else {
                c(1.0, 0.0)
            }
        });
        let heis = lambda.adjoint_apply(&signs)?;
        let offdiag = &heis - linalg::diagonal_part(&heis);
        let top = linalg::max_eigenvalue(&offdiag);
        if top > best.0 {
            best = (top, bits);
        }
    }
    let signs = (0..d)
        .map(|i| if best.1 >> i & 1 == 1 { -1 } else { 1 })
        .collect();
    Ok(MeasureValue {
        name: MeasureName::DFunctional,
        value: best.0.max(0.0),
        witness: Some(Witness::SignVector(signs)),
    })
}

/// Hard-coded data for the failure of `D`-monotonicity under
/// detection-incoherent pre-processing.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleWitness {
    /// Kraus operators of the qubit channel `theta`.
    pub theta_kraus: Vec<CMatrix>,
    /// Diagonal Choi block `X_nn` of the 3 -> 2 channel `phi`.
    pub phi_diagonal_block: CMatrix,
    /// Off-diagonal Choi block `X_nm`, `n != m`.
    pub phi_offdiagonal_block: CMatrix,
    /// Input state on the three-level system.
    pub sigma: CMatrix,
}

impl CounterexampleWitness {
    pub fn standard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let third = 1.0 / 3.0;
        Self {
            theta_kraus: vec![
                linalg::from_rows(2, 2, &[(0.0, s), (s, 0.0), (0.0, 0.0), (0.0, 0.0)]),
                linalg::from_rows(2, 2, &[(0.0, 0.0), (0.0, 0.0), (s, 0.0), (0.0, s)]),
            ],
            phi_diagonal_block: linalg::from_rows(
                2,
                2,
                &[(0.5, 0.0), (0.0, 1.0 / 6.0), (0.0, -1.0 / 6.0), (0.5, 0.0)],
            ),
            phi_offdiagonal_block: linalg::from_rows(
                2,
                2,
                &[(0.0, 0.0), (0.0, -third), (0.0, third), (0.0, 0.0)],
            ),
            sigma: CMatrix::from_element(3, 3, c(third, 0.0)),
        }
    }

    pub fn theta(&self) -> Result<QuantumChannel> {
        QuantumChannel::from_kraus(self.theta_kraus.clone())
            .map_err(|e| Error::WitnessInvalid(format!("theta: {e}")))
    }

    pub fn phi_choi(&self) -> Result<ChoiMatrix> {
        ChoiMatrix::from_blocks(3, 2, |n, m| {
            if n == m {
                self.phi_diagonal_block.clone()
            } else {
                self.phi_offdiagonal_block.clone()
            }
        })
        .map_err(|e| Error::WitnessInvalid(format!("phi: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub d_theta: f64,
    pub d_composed: f64,
    pub phi_is_di: bool,
    pub phi_is_cptp: bool,
    /// Robustness-style `l1` coherence of the input state.
    pub sigma_coherence: f64,
    pub phi_choi_eigenvalues: Vec<f64>,
}

impl CounterexampleReport {
    pub fn violation(&self) -> f64 {
        self.d_composed - self.d_theta
    }
}

pub fn verify_counterexample() -> Result<CounterexampleReport> {
    verify_witness(&CounterexampleWitness::standard())
}

/// Rebuilds every channel from `witness` and evaluates both sides.
pub fn verify_witness(witness: &CounterexampleWitness) -> Result<CounterexampleReport> {
    let theta = witness.theta()?;
    let choi = witness.phi_choi()?;
    let phi_is_cptp = choi.validate().is_ok();
    if !phi_is_cptp {
        return Err(Error::WitnessInvalid("phi is not CPTP".into()));
    }
    let phi = QuantumChannel::from_choi(&choi)
        .map_err(|e| Error::WitnessInvalid(format!("phi: {e}")))?;
    let phi_is_di = phi.is_di();
    if !phi_is_di {
        return Err(Error::WitnessInvalid("phi is not detection-incoherent".into()));
    }
    let sigma = DensityMatrix::new(witness.sigma.clone())
        .map_err(|e| Error::WitnessInvalid(format!("sigma: {e}")))?;

    let d_theta = d_functional(&theta)?.value;
    let coherent_part = sigma.matrix() - linalg::diagonal_part(sigma.matrix());
    let sigma_coherence = coherent_part.iter().map(|z| z.norm()).sum();
    let image = theta.apply_operator(&phi.apply_operator(&coherent_part));
    let d_composed = linalg::trace_norm(&linalg::diagonal_part(&image));

    Ok(CounterexampleReport {
        d_theta,
        d_composed,
        phi_is_di,
        phi_is_cptp,
        sigma_coherence,
        phi_choi_eigenvalues: choi.eigenvalues(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::ChannelFamily;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn robustness_values() {
        assert!((robustness_qubit(&DensityMatrix::plus()).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(robustness_qubit(&DensityMatrix::basis(2, 0)).unwrap(), 0.0);
        let rho = DensityMatrix::new(linalg::from_rows(
            2,
            2,
            &[(0.5, 0.0), (0.3, 0.0), (0.3, 0.0), (0.5, 0.0)],
        ))
        .unwrap();
        assert!((robustness_qubit(&rho).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(
            robustness_qubit(&DensityMatrix::basis(3, 0)),
            Err(Error::WrongDimension(3))
        );
    }

    #[test]
    fn qubit_measures() {
        let h = QuantumChannel::hadamard();
        assert!((cohering_power(&h).unwrap().value - 1.0).abs() < 1e-15);
        assert!((nsid_qubit(&h).unwrap().value - 1.0).abs() < 1e-15);
        assert!((d_functional(&h).unwrap().value - 1.0).abs() < 1e-12);
        let delta = QuantumChannel::dephasing(2);
        assert_eq!(cohering_power(&delta).unwrap().value, 0.0);
        assert_eq!(nsid_qubit(&QuantumChannel::identity(2)).unwrap().value, 0.0);
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            let ch = ChannelFamily::prep(p).unwrap().channel();
            assert!((cohering_power(&ch).unwrap().value - p).abs() < 1e-12);
            assert!((nsid_qubit(&ch).unwrap().value - p).abs() < 1e-12);
        }
    }

    #[test]
    fn witness_prefers_coherent_input() {
        // |0> -> |0>, |1> -> |+>: only the second input creates coherence.
        let ch = QuantumChannel::measure_prepare(&[DensityMatrix::basis(2, 0), DensityMatrix::plus()]).unwrap();
        let m = cohering_power(&ch).unwrap();
        assert!((m.value - 1.0).abs() < 1e-12);
        assert_eq!(m.witness, Some(Witness::BasisInput(1)));
    }

    #[test]
    fn sign_vector_matches_qubit_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let ch = QuantumChannel::random(2, 2, 3, &mut rng);
            let a = d_functional(&ch).unwrap().value;
            let b = nsid_qubit(&ch).unwrap().value;
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        let big = QuantumChannel::identity(5);
        assert_eq!(d_functional(&big), Err(Error::DimensionTooLarge(5)));
    }

    #[test]
    fn counterexample() {
        let report = verify_counterexample().unwrap();
        assert!((report.d_theta - 1.0).abs() < 1e-9);
        assert!((report.d_composed - 4.0 / 3.0).abs() < 1e-9);
        assert!(report.phi_is_di && report.phi_is_cptp);
        assert!((report.sigma_coherence - 2.0).abs() < 1e-12);
        let expected = [0.0, 0.0, 0.0, 1.0, 1.0, 1.0];
        for (a, b) in report.phi_choi_eigenvalues.iter().zip(expected) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn corrupted_witness_is_rejected() {
        let mut w = CounterexampleWitness::standard();
        w.phi_diagonal_block[(1, 1)] = c(0.6, 0.0);
        assert!(matches!(verify_witness(&w), Err(Error::WitnessInvalid(_))));

        let mut w = CounterexampleWitness::standard();
        w.phi_offdiagonal_block[(0, 0)] = c(0.1, 0.0);
        assert!(matches!(verify_witness(&w), Err(Error::WitnessInvalid(_))));

        let mut w = CounterexampleWitness::standard();
        w.theta_kraus[0][(0, 0)] = c(0.0, 0.9);
        assert!(matches!(verify_witness(&w), Err(Error::WitnessInvalid(_))));
    }
}
