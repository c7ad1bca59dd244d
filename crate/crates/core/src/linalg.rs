//! Dense complex matrix helpers on top of `nalgebra`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// `|n><m|` in dimension `d`.
pub fn matrix_unit(d: usize, n: usize, m: usize) -> CMatrix {
    let mut e = CMatrix::zeros(d, d);
    e[(n, m)] = ONE;
    e
}

/// Row-major construction from a slice of `(re, im)` pairs.
pub fn from_rows(rows: usize, cols: usize, entries: &[(f64, f64)]) -> CMatrix {
    assert_eq!(entries.len(), rows * cols);
    CMatrix::from_row_iterator(rows, cols, entries.iter().map(|&(re, im)| c(re, im)))
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.trace()
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &m.adjoint()) <= tol
}

/// Hermitian part `(m + m^dagger) / 2`, used to clean rounding noise before
/// eigendecomposition.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(hermitian_part(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Eigenpairs of a Hermitian matrix; eigenvectors are the columns.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(hermitian_part(m));
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

pub fn max_eigenvalue(m: &CMatrix) -> f64 {
    eigenvalues(m).last().copied().unwrap_or(0.0)
}

/// Trace norm of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> f64 {
    eigenvalues(m).iter().map(|v| v.abs()).sum()
}

/// Zero every off-diagonal entry.
pub fn diagonal_part(m: &CMatrix) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| if i == j { m[(i, j)] } else { ZERO })
}

/// `Tr_B` of an operator on `A (x) B` with `dim A = da`, `dim B = db`.
pub fn partial_trace_second(m: &CMatrix, da: usize, db: usize) -> CMatrix {
    assert_eq!(m.nrows(), da * db);
    CMatrix::from_fn(da, da, |i, j| {
        (0..db).map(|b| m[(i * db + b, j * db + b)]).sum()
    })
}

/// `Tr_A` of an operator on `A (x) B`.
pub fn partial_trace_first(m: &CMatrix, da: usize, db: usize) -> CMatrix {
    assert_eq!(m.nrows(), da * db);
    CMatrix::from_fn(db, db, |i, j| {
        (0..da).map(|a| m[(a * db + i, a * db + j)]).sum()
    })
}

pub fn hadamard() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    from_rows(2, 2, &[(s, 0.0), (s, 0.0), (s, 0.0), (-s, 0.0)])
}

pub fn pauli_x() -> CMatrix {
    from_rows(2, 2, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)])
}

/// `diag(1, e^{i theta})`.
pub fn phase_gate(theta: f64) -> CMatrix {
    let mut m = identity(2);
    m[(1, 1)] = Complex64::from_polar(1.0, theta);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_and_partial_traces() {
        let a = from_rows(2, 2, &[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)]);
        let b = matrix_unit(3, 0, 0) + matrix_unit(3, 2, 2).scale(2.0);
        let ab = kron(&a, &b);
        assert_eq!(ab.shape(), (6, 6));
        assert!(max_abs_diff(&partial_trace_second(&ab, 2, 3), &a.scale(3.0)) < 1e-15);
        assert!(max_abs_diff(&partial_trace_first(&ab, 2, 3), &b.scale(5.0)) < 1e-15);
    }

    #[test]
    fn spectra() {
        let x = pauli_x();
        let v = eigenvalues(&x);
        assert!((v[0] + 1.0).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12);
        assert!((trace_norm(&x) - 2.0).abs() < 1e-12);
        let y = from_rows(2, 2, &[(0.0, 0.0), (0.0, -1.0), (0.0, 1.0), (0.0, 0.0)]);
        assert!((max_eigenvalue(&y) - 1.0).abs() < 1e-12);
        assert!(is_hermitian(&y, 1e-15));
    }

    #[test]
    fn hadamard_is_unitary() {
        let h = hadamard();
        assert!(max_abs_diff(&(&h * dagger(&h)), &identity(2)) < 1e-15);
    }
}
