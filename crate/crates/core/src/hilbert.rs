//! Dense complex linear algebra for small N-dimensional Hilbert spaces:
//! normalized state vectors, Hermitian and unitary operators, the Bloch map,
//! Haar-random generation, and time evolution.

use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Tolerance for state normalization after construction or evolution.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance for the Hermiticity check, in max-norm.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance for the unitarity check `U U† = 1`, in max-norm.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum HilbertError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("Hilbert space dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("state vector has near-zero norm")]
    ZeroNorm,
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("input contains non-finite entries")]
    NotFinite,
    #[error("operation requires a qubit (N = 2), got N = {0}")]
    NotQubit(usize),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// A normalized pure state in an N-dimensional Hilbert space, N >= 2.
///
/// The constructor rescales the input to unit norm, so `Σ_k |amplitudes_k|² = 1`
/// holds within [`NORM_TOL`] for every value of this type.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: DVector<Complex64>,
}

impl QuantumState {
    /// Builds a state from amplitudes, normalizing them.
    ///
    /// Fails if fewer than two amplitudes are given or the vector is
    /// numerically null.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, HilbertError> {
        if amplitudes.len() < 2 {
            return Err(HilbertError::DimensionTooSmall(amplitudes.len()));
        }
        if amplitudes
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(HilbertError::NotFinite);
        }
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if !norm.is_finite() || norm < 1e-14 {
            return Err(HilbertError::ZeroNorm);
        }
        Ok(Self {
            amplitudes: v / Complex64::new(norm, 0.0),
        })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self, HilbertError> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The computational basis state |k⟩ in dimension `dim`.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self, HilbertError> {
        if dim < 2 {
            return Err(HilbertError::DimensionTooSmall(dim));
        }
        if index >= dim {
            return Err(HilbertError::IndexOutOfRange { index, dim });
        }
        let mut v = vec![Complex64::ZERO; dim];
        v[index] = Complex64::ONE;
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, k: usize) -> Complex64 {
        self.amplitudes[k]
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// The state `(-conj(a1), conj(a0))`, exactly orthogonal to a qubit state.
    pub fn orthogonal_qubit(&self) -> Result<Self, HilbertError> {
        if self.dim() != 2 {
            return Err(HilbertError::NotQubit(self.dim()));
        }
        Self::new(vec![-self.amplitudes[1].conj(), self.amplitudes[0].conj()])
    }
}

/// A Hermitian operator on an N-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    matrix: DMatrix<Complex64>,
}

impl HermitianOp {
    /// Validates Hermiticity within [`HERMITIAN_TOL`] in max-norm.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self, HilbertError> {
        if matrix.nrows() != matrix.ncols() {
            return Err(HilbertError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(HilbertError::NotFinite);
        }
        let dev = (&matrix - matrix.adjoint())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if dev > HERMITIAN_TOL {
            return Err(HilbertError::NotHermitian(dev));
        }
        Ok(Self { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }
}

/// A unitary operator on an N-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOp {
    matrix: DMatrix<Complex64>,
}

impl UnitaryOp {
    /// Validates `U U† = 1` within [`UNITARY_TOL`] in max-norm.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self, HilbertError> {
        if matrix.nrows() != matrix.ncols() {
            return Err(HilbertError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(HilbertError::NotFinite);
        }
        let n = matrix.nrows();
        let dev = (&matrix * matrix.adjoint() - DMatrix::<Complex64>::identity(n, n))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if dev > UNITARY_TOL {
            return Err(HilbertError::NotUnitary(dev));
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// The product `self · other` (apply `other` first).
    pub fn compose(&self, other: &UnitaryOp) -> Result<UnitaryOp, HilbertError> {
        if self.dim() != other.dim() {
            return Err(HilbertError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(UnitaryOp {
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Column `k` as a quantum state; columns of a unitary are orthonormal.
    pub fn column_state(&self, k: usize) -> Result<QuantumState, HilbertError> {
        if k >= self.dim() {
            return Err(HilbertError::IndexOutOfRange {
                index: k,
                dim: self.dim(),
            });
        }
        QuantumState::new(self.matrix.column(k).iter().copied().collect())
    }
}

/// The Bloch vector of a qubit pure state; unit length for pure states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub Vector3<f64>);

impl BlochVector {
    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

/// The inner product ⟨φ|ψ⟩ = Σ_k conj(φ_k) ψ_k.
pub fn inner(phi: &QuantumState, psi: &QuantumState) -> Result<Complex64, HilbertError> {
    if phi.dim() != psi.dim() {
        return Err(HilbertError::DimensionMismatch {
            left: phi.dim(),
            right: psi.dim(),
        });
    }
    Ok(phi.amplitudes.dotc(&psi.amplitudes))
}

/// The Born probability |⟨φ|ψ⟩|².
pub fn born_probability(phi: &QuantumState, psi: &QuantumState) -> Result<f64, HilbertError> {
    Ok(inner(phi, psi)?.norm_sqr())
}

/// The Bloch vector of a qubit state `(a0, a1)`:
/// `w = (2 Re(a0* a1), 2 Im(a0* a1), |a0|² − |a1|²)`.
///
/// The first amplitude carries Bloch +z; the map is global-phase invariant.
pub fn bloch_vector(psi: &QuantumState) -> Result<BlochVector, HilbertError> {
    if psi.dim() != 2 {
        return Err(HilbertError::NotQubit(psi.dim()));
    }
    let a0 = psi.amplitude(0);
    let a1 = psi.amplitude(1);
    let z = a0.conj() * a1;
    Ok(BlochVector(Vector3::new(
        2.0 * z.re,
        2.0 * z.im,
        a0.norm_sqr() - a1.norm_sqr(),
    )))
}

/// The evolution operator `exp(-i H t)` (ħ = 1), computed by Hermitian
/// eigendecomposition so the result is unitary to machine precision.
pub fn unitary_from_hamiltonian(hamiltonian: &HermitianOp, t: f64) -> UnitaryOp {
    let n = hamiltonian.dim();
    let eig = hamiltonian.matrix.clone().symmetric_eigen();
    let phases = DVector::from_iterator(
        n,
        eig.eigenvalues
            .iter()
            .map(|&lam| (Complex64::new(0.0, -lam * t)).exp()),
    );
    let v = eig.eigenvectors;
    let matrix = &v * DMatrix::from_diagonal(&phases) * v.adjoint();
    UnitaryOp { matrix }
}

/// Applies a unitary to a state: `ψ → U ψ`, re-normalized against roundoff.
pub fn evolve_state(psi: &QuantumState, u: &UnitaryOp) -> Result<QuantumState, HilbertError> {
    if psi.dim() != u.dim() {
        return Err(HilbertError::DimensionMismatch {
            left: psi.dim(),
            right: u.dim(),
        });
    }
    QuantumState::new((u.matrix() * psi.amplitudes()).iter().copied().collect())
}

fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A Haar-distributed pure state: a vector of independent standard complex
/// Gaussians, normalized. Deterministic given the generator state.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<QuantumState, HilbertError> {
    if dim < 2 {
        return Err(HilbertError::DimensionTooSmall(dim));
    }
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| standard_complex(rng)).collect();
        if let Ok(state) = QuantumState::new(v) {
            return Ok(state);
        }
    }
}

/// A Haar-distributed unitary: modified Gram-Schmidt orthonormalization of a
/// complex Gaussian matrix. The diagonal of the implicit R factor is real and
/// positive, which makes the decomposition canonical and the Q factor Haar.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<UnitaryOp, HilbertError> {
    if dim < 2 {
        return Err(HilbertError::DimensionTooSmall(dim));
    }
    let mut m = DMatrix::from_fn(dim, dim, |_, _| standard_complex(rng));
    for j in 0..dim {
        for k in 0..j {
            let proj = m.column(k).dotc(&m.column(j));
            let col_k = m.column(k).clone_owned();
            let mut col_j = m.column_mut(j);
            col_j.axpy(-proj, &col_k, Complex64::ONE);
        }
        let norm = m.column(j).norm();
        debug_assert!(norm > 1e-12, "Gaussian matrix numerically singular");
        let mut col_j = m.column_mut(j);
        col_j /= Complex64::new(norm, 0.0);
    }
    Ok(UnitaryOp { matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn state(amps: &[(f64, f64)]) -> QuantumState {
        QuantumState::new(amps.iter().map(|&(re, im)| c(re, im)).collect()).unwrap()
    }

    #[test]
    fn inner_identity_and_orthogonality() {
        let e0 = state(&[(1.0, 0.0), (0.0, 0.0)]);
        let e1 = state(&[(0.0, 0.0), (1.0, 0.0)]);
        let plus = state(&[(1.0, 0.0), (1.0, 0.0)]);
        assert_abs_diff_eq!(inner(&e0, &e0).unwrap().re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(inner(&e0, &e0).unwrap().im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(inner(&e0, &e1).unwrap().norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            inner(&plus, &e0).unwrap().re,
            1.0 / 2.0_f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn inner_is_conjugate_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_state(3, &mut rng).unwrap();
            let b = random_state(3, &mut rng).unwrap();
            let ab = inner(&a, &b).unwrap();
            let ba = inner(&b, &a).unwrap();
            assert_abs_diff_eq!(ab.re, ba.re, epsilon = 1e-14);
            assert_abs_diff_eq!(ab.im, -ba.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn inner_rejects_dimension_mismatch() {
        let a = QuantumState::basis_state(2, 0).unwrap();
        let b = QuantumState::basis_state(3, 0).unwrap();
        assert!(matches!(
            inner(&a, &b),
            Err(HilbertError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn born_probability_examples() {
        let e0 = state(&[(1.0, 0.0), (0.0, 0.0)]);
        let e1 = state(&[(0.0, 0.0), (1.0, 0.0)]);
        let plus = state(&[(1.0, 0.0), (1.0, 0.0)]);
        assert_abs_diff_eq!(born_probability(&e0, &e0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(born_probability(&e1, &e0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(born_probability(&plus, &e0).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn bloch_vector_poles_and_equator() {
        let north = bloch_vector(&state(&[(1.0, 0.0), (0.0, 0.0)])).unwrap();
        let south = bloch_vector(&state(&[(0.0, 0.0), (1.0, 0.0)])).unwrap();
        let east = bloch_vector(&state(&[(1.0, 0.0), (1.0, 0.0)])).unwrap();
        assert_abs_diff_eq!(north.0, Vector3::new(0.0, 0.0, 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(south.0, Vector3::new(0.0, 0.0, -1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(east.0, Vector3::new(1.0, 0.0, 0.0), epsilon = 1e-15);
        let plus_i = bloch_vector(&state(&[(1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert_abs_diff_eq!(plus_i.0, Vector3::new(0.0, 1.0, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn bloch_vector_is_phase_invariant_and_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let psi = random_state(2, &mut rng).unwrap();
            let w = bloch_vector(&psi).unwrap();
            assert_abs_diff_eq!(w.norm(), 1.0, epsilon = 1e-12);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let phase = Complex64::from_polar(1.0, theta);
            let rotated = QuantumState::new(
                psi.amplitudes().iter().map(|&a| a * phase).collect(),
            )
            .unwrap();
            let w2 = bloch_vector(&rotated).unwrap();
            assert_abs_diff_eq!((w.0 - w2.0).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn orthogonal_states_have_antipodal_bloch_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let psi = random_state(2, &mut rng).unwrap();
            let perp = psi.orthogonal_qubit().unwrap();
            assert!(born_probability(&perp, &psi).unwrap() < 1e-20);
            let dot = bloch_vector(&psi).unwrap().dot(&bloch_vector(&perp).unwrap());
            assert_abs_diff_eq!(dot, -1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn unitary_from_zero_hamiltonian_is_identity() {
        let u = unitary_from_hamiltonian(&HermitianOp::zero(4), 5.0);
        let dev = (u.matrix() - DMatrix::<Complex64>::identity(4, 4))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-14);
    }

    #[test]
    fn unitary_from_pauli_hamiltonians() {
        // exp(-i σ3 π) = -1 for either sign convention of σ3.
        let sigma3 = HermitianOp::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ))
        .unwrap();
        let u = unitary_from_hamiltonian(&sigma3, std::f64::consts::PI);
        let dev = (u.matrix() + DMatrix::<Complex64>::identity(2, 2))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-12, "exp(-i σ3 π) should be -1, dev {dev}");

        // exp(-i σ1 π/2) = -i σ1.
        let sigma1 = HermitianOp::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ))
        .unwrap();
        let u = unitary_from_hamiltonian(&sigma1, std::f64::consts::FRAC_PI_2);
        let expected = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0)],
        );
        let dev = (u.matrix() - expected)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-12, "exp(-i σ1 π/2) should be -i σ1, dev {dev}");
    }

    #[test]
    fn unitary_group_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let m = DMatrix::from_fn(3, 3, |_, _| standard_complex(&mut rng));
            let h = HermitianOp::new(m.clone() + m.adjoint()).unwrap();
            let t1: f64 = rng.random_range(-2.0..2.0);
            let t2: f64 = rng.random_range(-2.0..2.0);
            let u1 = unitary_from_hamiltonian(&h, t1);
            let u2 = unitary_from_hamiltonian(&h, t2);
            let u12 = unitary_from_hamiltonian(&h, t1 + t2);
            let dev = (u1.compose(&u2).unwrap().matrix() - u12.matrix())
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-9, "group property violated: dev {dev}");
        }
    }

    #[test]
    fn evolve_state_identity_and_bit_flip() {
        let psi = state(&[(0.6, 0.0), (0.0, 0.8)]);
        let evolved = evolve_state(&psi, &UnitaryOp::identity(2)).unwrap();
        assert_abs_diff_eq!(
            (evolved.amplitudes() - psi.amplitudes()).norm(),
            0.0,
            epsilon = 1e-15
        );

        let flip = UnitaryOp::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ))
        .unwrap();
        let e0 = QuantumState::basis_state(2, 0).unwrap();
        let flipped = evolve_state(&e0, &flip).unwrap();
        assert_abs_diff_eq!(flipped.amplitude(1).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn evolution_preserves_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let psi = random_state(4, &mut rng).unwrap();
            let u = random_unitary(4, &mut rng).unwrap();
            let evolved = evolve_state(&psi, &u).unwrap();
            assert_abs_diff_eq!(evolved.amplitudes().norm(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn random_state_is_deterministic_and_normalized() {
        let a = random_state(4, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = random_state(4, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
        assert_abs_diff_eq!(a.amplitudes().norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn random_state_mean_bloch_vector_vanishes() {
        // Haar symmetry: the ensemble-mean Bloch vector is zero; the bound is
        // four standard errors (4/sqrt(n)) plus margin.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let n = 100_000;
        let mut sum = Vector3::zeros();
        for _ in 0..n {
            sum += bloch_vector(&random_state(2, &mut rng).unwrap()).unwrap().0;
        }
        let mean = sum / n as f64;
        assert!(mean.norm() < 0.02, "mean Bloch vector {:?}", mean);
    }

    #[test]
    fn random_unitary_is_deterministic_and_unitary() {
        let a = random_unitary(3, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_unitary(3, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        let dev = (a.matrix() * a.matrix().adjoint() - DMatrix::<Complex64>::identity(3, 3))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-10);
    }

    #[test]
    fn random_unitary_first_moment_matches_haar() {
        // E|U_ij|² = 1/N for Haar; N = 2 here.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|_| random_unitary(2, &mut rng).unwrap().matrix()[(0, 0)].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "E|U11|² = {mean}");
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(matches!(
            QuantumState::new(vec![Complex64::ONE]),
            Err(HilbertError::DimensionTooSmall(1))
        ));
        assert!(matches!(
            QuantumState::new(vec![Complex64::ZERO, Complex64::ZERO]),
            Err(HilbertError::ZeroNorm)
        ));
        let not_hermitian = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)],
        );
        assert!(matches!(
            HermitianOp::new(not_hermitian),
            Err(HilbertError::NotHermitian(_))
        ));
        let not_unitary = DMatrix::from_row_slice(
            2,
            2,
            &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            UnitaryOp::new(not_unitary),
            Err(HilbertError::NotUnitary(_))
        ));
        assert!(random_state(1, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        assert!(random_unitary(1, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn constructors_reject_non_finite_input() {
        assert!(QuantumState::new(vec![c(f64::NAN, 0.0), Complex64::ONE]).is_err());
        let nan_matrix = DMatrix::from_row_slice(
            2,
            2,
            &[c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert!(HermitianOp::new(nan_matrix.clone()).is_err());
        assert!(UnitaryOp::new(nan_matrix).is_err());
    }

    #[test]
    fn domain_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<QuantumState>();
        assert_send_sync::<HermitianOp>();
        assert_send_sync::<UnitaryOp>();
        assert_send_sync::<BlochVector>();
    }
}
