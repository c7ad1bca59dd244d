//! States and channels on small Hilbert spaces.
//!
//! A channel is stored by its Kraus operators; the index representation
//! `Lambda_kl^nm = <k| Lambda(|n><m|) |l>` is materialised at construction.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, c, dagger, CMatrix, ONE};
use crate::tolerance::{HERMITIAN, PHASE_ZERO, PSD_FLOOR};
use crate::{Error, Result};

/// Kraus operators with squared Frobenius norm below this are dropped.
const KRAUS_DROP: f64 = 1e-28;

#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    data: CMatrix,
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix{}", self.data)
    }
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(data: CMatrix) -> Result<Self> {
        if !data.is_square() || data.nrows() == 0 {
            return Err(Error::InvalidState(format!("shape {:?}", data.shape())));
        }
        if !linalg::is_hermitian(&data, HERMITIAN) {
            return Err(Error::InvalidState("not Hermitian".into()));
        }
        let tr = data.trace();
        if (tr - ONE).norm() > HERMITIAN {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let min = linalg::eigenvalues(&data)[0];
        if min < PSD_FLOOR {
            return Err(Error::InvalidState(format!("eigenvalue {min}")));
        }
        Ok(Self { data })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_matrix_unchecked(data: CMatrix) -> Self {
        Self { data }
    }

    pub fn basis(dim: usize, n: usize) -> Self {
        Self {
            data: linalg::matrix_unit(dim, n, n),
        }
    }

    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let v = CMatrix::from_column_slice(amplitudes.len(), 1, amplitudes);
        let norm2 = v.norm_squared();
        if norm2 == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Self::new((&v * v.adjoint()).unscale(norm2))
    }

    /// `|+><+|`.
    pub fn plus() -> Self {
        Self {
            data: CMatrix::from_element(2, 2, c(0.5, 0.0)),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            data: linalg::identity(dim).unscale(dim as f64),
        }
    }

    /// Random full-rank state `G G^dagger / Tr`.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let g = gaussian_matrix(dim, dim, rng);
        let m = &g * g.adjoint();
        let tr = m.trace().re;
        Self {
            data: linalg::hermitian_part(&m.unscale(tr)),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_matrix(self) -> CMatrix {
        self.data
    }

    pub fn is_incoherent(&self, tol: f64) -> bool {
        linalg::max_abs_diff(&self.data, &linalg::diagonal_part(&self.data)) <= tol
    }
}

/// Total dephasing in the computational basis.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix {
        data: linalg::diagonal_part(&rho.data),
    }
}

#[derive(Clone, PartialEq)]
pub struct QuantumChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<CMatrix>,
    /// `index_rep[n * in_dim + m] = Lambda(|n><m|)`.
    index_rep: Vec<CMatrix>,
}

impl fmt::Debug for QuantumChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuantumChannel")
            .field("in_dim", &self.in_dim)
            .field("out_dim", &self.out_dim)
            .field("kraus", &self.kraus.len())
            .finish()
    }
}

pub type QubitChannel = QuantumChannel;

impl QuantumChannel {
    /// Builds a channel from Kraus operators and checks trace preservation.
    pub fn from_kraus(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::NotCptp("no Kraus operators".into()))?;
        let (out_dim, in_dim) = first.shape();
        for k in &kraus {
            if k.shape() != (out_dim, in_dim) {
                return Err(Error::DimensionMismatch {
                    expected: out_dim * in_dim,
                    actual: k.nrows() * k.ncols(),
                });
            }
        }
        let kraus: Vec<CMatrix> = kraus
            .into_iter()
            .filter(|k| k.norm_squared() > KRAUS_DROP)
            .collect();
        if kraus.is_empty() {
            return Err(Error::NotCptp("all Kraus operators vanish".into()));
        }
        let sum: CMatrix = kraus
            .iter()
            .fold(CMatrix::zeros(in_dim, in_dim), |acc, k| acc + k.adjoint() * k);
        let dev = linalg::max_abs_diff(&sum, &linalg::identity(in_dim));
        if dev > HERMITIAN {
            return Err(Error::NotCptp(format!("sum K^dagger K deviates by {dev:e}")));
        }
        Ok(Self::assemble(in_dim, out_dim, kraus))
    }

    fn assemble(in_dim: usize, out_dim: usize, kraus: Vec<CMatrix>) -> Self {
        let mut channel = Self {
            in_dim,
            out_dim,
            kraus,
            index_rep: Vec::new(),
        };
        channel.index_rep = (0..in_dim * in_dim)
            .map(|nm| channel.apply_operator(&linalg::matrix_unit(in_dim, nm / in_dim, nm % in_dim)))
            .collect();
        channel
    }

    pub fn unitary(u: CMatrix) -> Result<Self> {
        Self::from_kraus(vec![u])
    }

    pub fn identity(dim: usize) -> Self {
        Self::assemble(dim, dim, vec![linalg::identity(dim)])
    }

    /// Total dephasing `Delta`.
    pub fn dephasing(dim: usize) -> Self {
        Self::assemble(
            dim,
            dim,
            (0..dim).map(|n| linalg::matrix_unit(dim, n, n)).collect(),
        )
    }

    pub fn hadamard() -> Self {
        Self::assemble(2, 2, vec![linalg::hadamard()])
    }

    /// Measure in the computational basis and prepare `states[n]` on outcome `n`.
    pub fn measure_prepare(states: &[DensityMatrix]) -> Result<Self> {
        let in_dim = states.len();
        let out_dim = states.first().map(DensityMatrix::dim).unwrap_or(0);
        let mut kraus = Vec::new();
        for (n, s) in states.iter().enumerate() {
            if s.dim() != out_dim {
                return Err(Error::DimensionMismatch {
                    expected: out_dim,
                    actual: s.dim(),
                });
            }
            let (values, vectors) = linalg::eigh(s.matrix());
            for (i, &v) in values.iter().enumerate() {
                if v <= 0.0 {
                    continue;
                }
                let mut k = CMatrix::zeros(out_dim, in_dim);
                for b in 0..out_dim {
                    k[(b, n)] = vectors[(b, i)] * v.sqrt();
                }
                kraus.push(k);
            }
        }
        Self::from_kraus(kraus)
    }

    /// Haar-like random channel with `rank` Kraus operators, from a random
    /// isometry `in -> out (x) rank`.
    pub fn random<R: Rng + ?Sized>(in_dim: usize, out_dim: usize, rank: usize, rng: &mut R) -> Self {
        assert!(out_dim * rank >= in_dim, "isometry needs out_dim * rank >= in_dim");
        let g = gaussian_matrix(out_dim * rank, in_dim, rng);
        let v = g.qr().q();
        let kraus = (0..rank)
            .map(|i| v.rows(i * out_dim, out_dim).into_owned())
            .collect();
        Self::assemble(in_dim, out_dim, kraus)
    }

    pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        Self::random(dim, dim, 1, rng)
    }

    /// Random unital channel as a mixture of `terms` random unitaries.
    pub fn random_mixed_unitary<R: Rng + ?Sized>(dim: usize, terms: usize, rng: &mut R) -> Self {
        let weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-3).collect();
        let total: f64 = weights.iter().sum();
        let kraus = weights
            .iter()
            .flat_map(|w| {
                let u = Self::random_unitary(dim, rng);
                let s = (w / total).sqrt();
                u.kraus.into_iter().map(move |k| k.scale(s))
            })
            .collect();
        Self::assemble(dim, dim, kraus)
    }

    /// Random detection-incoherent channel: either a random channel after
    /// total dephasing, or a mixture of basis permutations and dephasing.
    pub fn random_di<R: Rng + ?Sized>(in_dim: usize, out_dim: usize, rng: &mut R) -> Self {
        if in_dim == out_dim && rng.random::<bool>() {
            Self::random_free_mixture(in_dim, rng)
        } else {
            let rank = in_dim.div_ceil(out_dim) + 1;
            Self::random(in_dim, out_dim, rank, rng).compose(&Self::dephasing(in_dim))
        }
    }

    /// Random maximally incoherent channel: dephasing after a random channel,
    /// or a mixture of basis permutations and dephasing.
    pub fn random_mio<R: Rng + ?Sized>(in_dim: usize, out_dim: usize, rng: &mut R) -> Self {
        if in_dim == out_dim && rng.random::<bool>() {
            Self::random_free_mixture(in_dim, rng)
        } else {
            let rank = in_dim.div_ceil(out_dim) + 1;
            Self::dephasing(out_dim).compose(&Self::random(in_dim, out_dim, rank, rng))
        }
    }

    /// Convex mixture of permutation unitaries and total dephasing; free in
    /// both theories.
    fn random_free_mixture<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let terms = 1 + rng.random_range(0..3);
        let mut parts: Vec<(f64, Self)> = Vec::new();
        for _ in 0..terms {
            let w = rng.random::<f64>() + 1e-3;
            let channel = if rng.random::<f64>() < 0.3 {
                Self::dephasing(dim)
            } else {
                let mut perm: Vec<usize> = (0..dim).collect();
                for i in (1..dim).rev() {
                    perm.swap(i, rng.random_range(0..=i));
                }
                let mut u = CMatrix::zeros(dim, dim);
                for (n, &p) in perm.iter().enumerate() {
                    u[(p, n)] = ONE;
                }
                Self::assemble(dim, dim, vec![u])
            };
            parts.push((w, channel));
        }
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        let kraus = parts
            .into_iter()
            .flat_map(|(w, ch)| {
                let s = (w / total).sqrt();
                ch.kraus.into_iter().map(move |k| k.scale(s))
            })
            .collect();
        Self::assemble(dim, dim, kraus)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn is_qubit(&self) -> bool {
        self.in_dim == 2 && self.out_dim == 2
    }

    /// `<k| Lambda(|n><m|) |l>`.
    pub fn index(&self, k: usize, l: usize, n: usize, m: usize) -> Complex64 {
        self.index_rep[n * self.in_dim + m][(k, l)]
    }

    /// `Lambda(|n><m|)`.
    pub fn image_of_unit(&self, n: usize, m: usize) -> &CMatrix {
        &self.index_rep[n * self.in_dim + m]
    }

    /// `sum K X K^dagger` for an arbitrary operator `X`.
    pub fn apply_operator(&self, x: &CMatrix) -> CMatrix {
        self.kraus
            .iter()
            .fold(CMatrix::zeros(self.out_dim, self.out_dim), |acc, k| {
                acc + k * x * k.adjoint()
            })
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.in_dim {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim,
                actual: rho.dim(),
            });
        }
        Ok(DensityMatrix {
            data: linalg::hermitian_part(&self.apply_operator(&rho.data)),
        })
    }

    /// Heisenberg picture `sum K^dagger H K`.
    pub fn adjoint_apply(&self, h: &CMatrix) -> Result<CMatrix> {
        if h.nrows() != self.out_dim {
            return Err(Error::DimensionMismatch {
                expected: self.out_dim,
                actual: h.nrows(),
            });
        }
        Ok(self
            .kraus
            .iter()
            .fold(CMatrix::zeros(self.in_dim, self.in_dim), |acc, k| {
                acc + k.adjoint() * h * k
            }))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &QuantumChannel) -> QuantumChannel {
        self.try_compose(first).expect("dimension mismatch in compose")
    }

    pub fn try_compose(&self, first: &QuantumChannel) -> Result<QuantumChannel> {
        if first.out_dim != self.in_dim {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim,
                actual: first.out_dim,
            });
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| first.kraus.iter().map(move |b| a * b))
            .filter(|k| k.norm_squared() > KRAUS_DROP)
            .collect();
        Ok(Self::assemble(first.in_dim, self.out_dim, kraus))
    }

    /// `self (x) other`.
    pub fn tensor(&self, other: &QuantumChannel) -> QuantumChannel {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| linalg::kron(a, b)))
            .collect();
        Self::assemble(
            self.in_dim * other.in_dim,
            self.out_dim * other.out_dim,
            kraus,
        )
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, lambda: f64, other: &QuantumChannel) -> Result<QuantumChannel> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidProbability(lambda));
        }
        if (self.in_dim, self.out_dim) != (other.in_dim, other.out_dim) {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim * self.out_dim,
                actual: other.in_dim * other.out_dim,
            });
        }
        let (a, b) = (lambda.sqrt(), (1.0 - lambda).sqrt());
        let kraus = self
            .kraus
            .iter()
            .map(|k| k.scale(a))
            .chain(other.kraus.iter().map(|k| k.scale(b)))
            .filter(|k| k.norm_squared() > KRAUS_DROP)
            .collect();
        Ok(Self::assemble(self.in_dim, self.out_dim, kraus))
    }

    pub fn choi(&self) -> ChoiMatrix {
        let (din, dout) = (self.in_dim, self.out_dim);
        let mut j = CMatrix::zeros(din * dout, din * dout);
        for n in 0..din {
            for m in 0..din {
                let block = self.image_of_unit(n, m);
                j.view_mut((n * dout, m * dout), (dout, dout)).copy_from(block);
            }
        }
        ChoiMatrix {
            in_dim: din,
            out_dim: dout,
            data: j,
        }
    }

    /// Kraus form from a validated Choi matrix.
    pub fn from_choi(choi: &ChoiMatrix) -> Result<QuantumChannel> {
        choi.validate()?;
        let (din, dout) = (choi.in_dim, choi.out_dim);
        let (values, vectors) = linalg::eigh(&choi.data);
        let kraus: Vec<CMatrix> = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| {
                let s = v.sqrt();
                CMatrix::from_fn(dout, din, |b, a| vectors[(a * dout + b, i)] * s)
            })
            .collect();
        Self::from_kraus(kraus)
    }

    /// `Phi Delta = Delta Phi Delta` on every matrix unit.
    pub fn is_mio(&self) -> bool {
        (0..self.in_dim).all(|n| {
            let out = self.image_of_unit(n, n);
            linalg::max_abs_diff(out, &linalg::diagonal_part(out)) <= HERMITIAN
        })
    }

    /// `Delta Phi = Delta Phi Delta` on every matrix unit.
    pub fn is_di(&self) -> bool {
        (0..self.in_dim).all(|n| {
            (0..self.in_dim)
                .filter(|&m| m != n)
                .all(|m| (0..self.out_dim).all(|k| self.index(k, k, n, m).norm() <= HERMITIAN))
        })
    }

    pub fn is_unital(&self) -> bool {
        self.in_dim == self.out_dim
            && linalg::max_abs_diff(
                &self.apply_operator(&linalg::identity(self.in_dim)),
                &linalg::identity(self.out_dim),
            ) <= HERMITIAN
    }

    /// Trace preservation plus a PSD Choi matrix.
    pub fn is_cptp(&self) -> bool {
        self.choi().validate().is_ok()
    }
}

/// `J = sum_{nm} |n><m| (x) Phi(|n><m|)`, input factor first.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    in_dim: usize,
    out_dim: usize,
    data: CMatrix,
}

impl ChoiMatrix {
    pub fn new(in_dim: usize, out_dim: usize, data: CMatrix) -> Result<Self> {
        let d = in_dim * out_dim;
        if data.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: data.nrows(),
            });
        }
        Ok(Self {
            in_dim,
            out_dim,
            data,
        })
    }

    /// Assemble from output blocks `X_nm = Phi(|n><m|)`.
    pub fn from_blocks(in_dim: usize, out_dim: usize, block: impl Fn(usize, usize) -> CMatrix) -> Result<Self> {
        let mut data = CMatrix::zeros(in_dim * out_dim, in_dim * out_dim);
        for n in 0..in_dim {
            for m in 0..in_dim {
                let b = block(n, m);
                if b.shape() != (out_dim, out_dim) {
                    return Err(Error::DimensionMismatch {
                        expected: out_dim,
                        actual: b.nrows(),
                    });
                }
                data.view_mut((n * out_dim, m * out_dim), (out_dim, out_dim))
                    .copy_from(&b);
            }
        }
        Self::new(in_dim, out_dim, data)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigenvalues(&self.data)
    }

    /// Hermitian, PSD, and `Tr_out J = 1_in`.
    pub fn validate(&self) -> Result<()> {
        if !linalg::is_hermitian(&self.data, HERMITIAN) {
            return Err(Error::NotCptp("Choi matrix not Hermitian".into()));
        }
        let min = self.eigenvalues()[0];
        if min < PSD_FLOOR {
            return Err(Error::NotCptp(format!("Choi eigenvalue {min:e}")));
        }
        let reduced = linalg::partial_trace_second(&self.data, self.in_dim, self.out_dim);
        let dev = linalg::max_abs_diff(&reduced, &linalg::identity(self.in_dim));
        if dev > HERMITIAN {
            return Err(Error::NotCptp(format!("partial trace deviates by {dev:e}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Prep,
    Detect,
}

/// `p H . H^dagger + (1 - p) Delta`, used both for preparation and detection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelFamily {
    pub kind: FamilyKind,
    pub p: f64,
}

impl ChannelFamily {
    pub fn new(kind: FamilyKind, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(Self { kind, p })
    }

    pub fn prep(p: f64) -> Result<Self> {
        Self::new(FamilyKind::Prep, p)
    }

    pub fn detect(p: f64) -> Result<Self> {
        Self::new(FamilyKind::Detect, p)
    }

    pub fn channel(&self) -> QuantumChannel {
        let a = self.p.sqrt();
        let b = (1.0 - self.p).sqrt();
        let kraus = vec![
            linalg::hadamard().scale(a),
            linalg::matrix_unit(2, 0, 0).scale(b),
            linalg::matrix_unit(2, 1, 1).scale(b),
        ]
        .into_iter()
        .filter(|k| k.norm_squared() > KRAUS_DROP)
        .collect();
        QuantumChannel::assemble(2, 2, kraus)
    }
}

/// JSON description of a channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    /// Each matrix is `out x in`, flattened row-major into `[re, im]` pairs.
    Kraus {
        dims: [usize; 2],
        matrices: Vec<Vec<[f64; 2]>>,
    },
    Family { family: FamilyKind, p: f64 },
}

impl ChannelSpec {
    pub fn from_channel(channel: &QuantumChannel) -> Self {
        let matrices = channel
            .kraus
            .iter()
            .map(|k| {
                let mut flat = Vec::with_capacity(k.len());
                for row in 0..k.nrows() {
                    for col in 0..k.ncols() {
                        let z = k[(row, col)];
                        flat.push([z.re, z.im]);
                    }
                }
                flat
            })
            .collect();
        ChannelSpec::Kraus {
            dims: [channel.in_dim, channel.out_dim],
            matrices,
        }
    }

    pub fn to_channel(&self) -> Result<QuantumChannel> {
        match self {
            ChannelSpec::Family { family, p } => Ok(ChannelFamily::new(*family, *p)?.channel()),
            ChannelSpec::Kraus { dims, matrices } => {
                let [din, dout] = *dims;
                let kraus = matrices
                    .iter()
                    .map(|flat| {
                        if flat.len() != din * dout {
                            return Err(Error::DimensionMismatch {
                                expected: din * dout,
                                actual: flat.len(),
                            });
                        }
                        Ok(CMatrix::from_row_iterator(
                            dout,
                            din,
                            flat.iter().map(|&[re, im]| c(re, im)),
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                QuantumChannel::from_kraus(kraus)
            }
        }
    }
}

/// Phase convention shared by the two block super-channels: the argument of
/// `z`, or 0 when `|z|` is numerically zero.
pub(crate) fn phase_of(z: Complex64) -> f64 {
    if z.norm() < PHASE_ZERO {
        0.0
    } else {
        z.arg()
    }
}

/// Apply `theta` to the incoherent input `sigma`, rotate the phase of the
/// off-diagonal element to zero, then twirl with `X`. The result is
/// `1/2 + c sigma_x` with `c = |[theta(sigma)]_01|`.
pub fn prep_standardize(theta: &QubitChannel, sigma: &DensityMatrix) -> Result<DensityMatrix> {
    if !theta.is_qubit() {
        return Err(Error::WrongDimension(theta.in_dim.max(theta.out_dim)));
    }
    if sigma.dim() != 2 {
        return Err(Error::WrongDimension(sigma.dim()));
    }
    if !sigma.is_incoherent(HERMITIAN) {
        return Err(Error::NotIncoherent);
    }
    let rho = theta.apply(sigma)?.into_matrix();
    let u = linalg::phase_gate(phase_of(rho[(0, 1)]));
    let rotated = &u * &rho * dagger(&u);
    let x = linalg::pauli_x();
    let twirled = (&rotated + &x * &rotated * &x).scale(0.5);
    Ok(DensityMatrix::from_matrix_unchecked(linalg::hermitian_part(&twirled)))
}

/// `Lambda` after the phase unitary `diag(1, e^{i lambda})` with
/// `lambda = arg Lambda_00^01`, which makes `Lambda_00^01` real and
/// non-negative.
pub fn hadamard_like(lambda: &QubitChannel) -> Result<QubitChannel> {
    if !lambda.is_qubit() {
        return Err(Error::WrongDimension(lambda.in_dim.max(lambda.out_dim)));
    }
    let phase = phase_of(lambda.index(0, 0, 0, 1));
    let phi2 = QuantumChannel::assemble(2, 2, vec![linalg::phase_gate(phase)]);
    lambda.try_compose(&phi2)
}

pub(crate) fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}
