//! Ontological model of a two-state system: a hemisphere density on the unit
//! sphere, rigid-rotation dynamics driven by a Pauli Hamiltonian, and a
//! Heaviside measurement rule, plus the linear-response variant whose
//! preparation is a point mass at the Bloch vector.

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex64;
use rand::{Rng, RngCore};

use thiserror::Error;

use crate::hilbert::{
    bloch_vector, born_probability, HermitianOp, HilbertError, QuantumState, UnitaryOp,
};
use crate::model::{OntologicalModel, PreparationModel};
use crate::quadrature::{integrate_sphere_zonal, SPHERE_AZIMUTH_NODES, SPHERE_POLAR_NODES};

#[derive(Debug, Error)]
pub enum QubitError {
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("sphere quadrature did not converge (error estimate {estimate:.3e})")]
    QuadratureNotConverged { estimate: f64 },
}

/// The ontic state: a unit 3-vector. The constructor normalizes, so the unit
/// invariant holds within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnticDirection(Vector3<f64>);

impl OnticDirection {
    pub fn new(v: Vector3<f64>) -> Option<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm < 1e-14 {
            return None;
        }
        Some(Self(v / norm))
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.0
    }
}

/// Real drive coefficients of the Hamiltonian `H = Σ_k h_k σ_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliDrive(pub Vector3<f64>);

impl PauliDrive {
    pub fn new(h1: f64, h2: f64, h3: f64) -> Self {
        Self(Vector3::new(h1, h2, h3))
    }
}

/// Which measurement/preparation pair the model uses.
///
/// `DispersionFree` (support parameter 1/2): hemisphere preparation density
/// with a 0/1 Heaviside kernel. `LinearResponse` (support parameter 0): point
/// preparation at the Bloch vector with the kernel `(1 + w(φ)·v)/2`.
/// Intermediate support parameters have no measurement rule and are excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitVariant {
    DispersionFree,
    LinearResponse,
}

impl QubitVariant {
    pub fn support_parameter(&self) -> f64 {
        match self {
            QubitVariant::DispersionFree => 0.5,
            QubitVariant::LinearResponse => 0.0,
        }
    }
}

/// Pauli matrices in the fixed basis ordering of this crate.
///
/// The first amplitude carries Bloch +z, so σ3 is diag(-1, +1); σ2 follows
/// from the algebra [σ1, σ2] = 2i σ3. With these forms the Bloch map of
/// `hilbert` and the rotation rule of [`rotate`] agree for every drive.
pub fn pauli_matrices() -> [HermitianOp; 3] {
    let c = Complex64::new;
    let sigma1 =
        DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let sigma2 =
        DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)]);
    let sigma3 =
        DMatrix::from_row_slice(2, 2, &[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    [
        HermitianOp::new(sigma1).expect("sigma1 is Hermitian"),
        HermitianOp::new(sigma2).expect("sigma2 is Hermitian"),
        HermitianOp::new(sigma3).expect("sigma3 is Hermitian"),
    ]
}

/// The Hamiltonian `Σ_k h_k σ_k` for a constant drive.
pub fn drive_hamiltonian(h: &PauliDrive) -> HermitianOp {
    let [s1, s2, s3] = pauli_matrices();
    HermitianOp::new(
        s1.matrix() * Complex64::new(h.0.x, 0.0)
            + s2.matrix() * Complex64::new(h.0.y, 0.0)
            + s3.matrix() * Complex64::new(h.0.z, 0.0),
    )
    .expect("real combination of Hermitian matrices is Hermitian")
}

/// Preparation density of the dispersion-free variant:
/// `ρ(v|ψ) = (1/π) (v·w(ψ)) θ(v·w(ψ))`, supported on the open hemisphere
/// around the Bloch vector and normalized over the sphere.
pub fn density(v: &OnticDirection, psi: &QuantumState) -> Result<f64, HilbertError> {
    let w = bloch_vector(psi)?;
    let dot = v.vector().dot(&w.0);
    Ok(if dot > 0.0 {
        dot / std::f64::consts::PI
    } else {
        0.0
    })
}

/// Maps the hemisphere inverse-transform variables to a direction: `u` sets
/// the polar angle from `w` via cos α = sqrt(1 - u), `phi` the azimuth.
fn hemisphere_direction(w: Vector3<f64>, u: f64, phi: f64) -> Vector3<f64> {
    let cos_a = (1.0 - u).sqrt();
    let sin_a = (1.0 - cos_a * cos_a).max(0.0).sqrt();
    // Orthonormal frame (e1, e2, w); seed axis picks the smallest component
    // of w to stay well-conditioned.
    let seed = if w.x.abs() <= w.y.abs() && w.x.abs() <= w.z.abs() {
        Vector3::x()
    } else if w.y.abs() <= w.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let e1 = seed.cross(&w).normalize();
    let e2 = w.cross(&e1);
    (sin_a * (phi.cos() * e1 + phi.sin() * e2) + cos_a * w).normalize()
}

/// Draws an ontic direction from the hemisphere density by inverse transform:
/// cos α = sqrt(1 - u) makes the polar pdf sin 2α on [0, π/2].
pub fn sample_direction<R: Rng + ?Sized>(
    psi: &QuantumState,
    rng: &mut R,
) -> Result<OnticDirection, HilbertError> {
    let w = bloch_vector(psi)?;
    let u: f64 = rng.random();
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Ok(OnticDirection(hemisphere_direction(w.0, u, phi)))
}

/// Advances the ontic direction under a constant drive for time `dt`.
///
/// The flow is the exact rotation solving the rigid Bloch dynamics: axis
/// `(h1, -h2, -h3)` (the drive seen through the basis ordering, which flips
/// the y and z generator components), angle `2 |h| dt`, applied by the
/// Rodrigues formula. Norm is preserved exactly up to roundoff.
pub fn rotate(v: &OnticDirection, h: &PauliDrive, dt: f64) -> OnticDirection {
    debug_assert!(h.0.iter().all(|c| c.is_finite()), "drive must be finite");
    let magnitude = h.0.norm();
    if magnitude == 0.0 {
        return *v;
    }
    let axis = Vector3::new(h.0.x, -h.0.y, -h.0.z) / magnitude;
    let angle = 2.0 * magnitude * dt;
    let (sin, cos) = angle.sin_cos();
    let rotated = v.0 * cos + axis.cross(&v.0) * sin + axis * (axis.dot(&v.0)) * (1.0 - cos);
    OnticDirection(rotated.normalize())
}

/// Advances the ontic direction through piecewise-constant drive segments
/// `(h, dt)`, each solved exactly; arbitrary controls are approximated by
/// refining the segmentation.
pub fn rotate_piecewise(v: &OnticDirection, segments: &[(PauliDrive, f64)]) -> OnticDirection {
    segments
        .iter()
        .fold(*v, |current, (h, dt)| rotate(&current, h, *dt))
}

/// Probability of the event associated with `φ` given the ontic direction.
///
/// Dispersion-free: `θ[w(φ)·v]` with θ(0) = 1 (the tie set has measure zero).
/// Linear response: `(1 + w(φ)·v)/2`.
pub fn measure_event(
    phi: &QuantumState,
    v: &OnticDirection,
    variant: QubitVariant,
) -> Result<f64, HilbertError> {
    let w = bloch_vector(phi)?;
    let dot = w.0.dot(&v.0);
    Ok(match variant {
        QubitVariant::DispersionFree => {
            if dot >= 0.0 {
                1.0
            } else {
                0.0
            }
        }
        QubitVariant::LinearResponse => 0.5 * (1.0 + dot),
    })
}

/// Deterministic evaluation of `∫ P(φ|v) ρ(v|ψ) dv`, which must equal the
/// Born probability |⟨φ|ψ⟩|².
///
/// The dispersion-free variant integrates with the 128x256 product rule over
/// the kernel's support hemisphere (polar axis aligned with w(φ), so the
/// Heaviside becomes the zone boundary and only the C⁰ kink of the density
/// sits on the grid). Convergence is checked against a half-resolution pass.
/// The linear-response preparation is a point mass at w(ψ), so its integral
/// reduces to one kernel evaluation.
pub fn born_check_exact(
    phi: &QuantumState,
    psi: &QuantumState,
    variant: QubitVariant,
) -> Result<f64, QubitError> {
    match variant {
        QubitVariant::DispersionFree => {
            let w_phi = bloch_vector(phi)?.0;
            let w_psi = bloch_vector(psi)?.0;
            let integrand = |v: Vector3<f64>| v.dot(&w_psi).max(0.0) / std::f64::consts::PI;
            let fine = integrate_sphere_zonal(
                w_phi,
                integrand,
                0.0,
                1.0,
                SPHERE_POLAR_NODES,
                SPHERE_AZIMUTH_NODES,
            );
            let coarse = integrate_sphere_zonal(
                w_phi,
                integrand,
                0.0,
                1.0,
                SPHERE_POLAR_NODES / 2,
                SPHERE_AZIMUTH_NODES / 2,
            );
            let estimate = (fine - coarse).abs();
            if estimate > 1e-4 {
                return Err(QubitError::QuadratureNotConverged { estimate });
            }
            Ok(fine)
        }
        QubitVariant::LinearResponse => {
            let w = bloch_vector(psi)?;
            Ok(measure_event(phi, &OnticDirection(w.0), variant)?)
        }
    }
}

/// Quadrature of the preparation density over the whole sphere, split at the
/// equator of w(ψ) where the density is non-smooth. Used to verify
/// normalization.
pub fn density_normalization(psi: &QuantumState) -> Result<f64, HilbertError> {
    let w = bloch_vector(psi)?.0;
    let rho = |v: Vector3<f64>| density(&OnticDirection(v), psi).expect("qubit checked");
    let upper = integrate_sphere_zonal(w, rho, 0.0, 1.0, SPHERE_POLAR_NODES, SPHERE_AZIMUTH_NODES);
    let lower = integrate_sphere_zonal(w, rho, -1.0, 0.0, SPHERE_POLAR_NODES, SPHERE_AZIMUTH_NODES);
    Ok(upper + lower)
}

/// The SO(3) rotation a unitary induces on Bloch vectors,
/// `R_ij = Re tr(σ_i U σ_j U†) / 2` with the standard Pauli forms matching
/// the Bloch map (first amplitude at +z).
pub fn bloch_rotation_matrix(u: &UnitaryOp) -> Result<Matrix3<f64>, HilbertError> {
    if u.dim() != 2 {
        return Err(HilbertError::NotQubit(u.dim()));
    }
    let c = Complex64::new;
    let paulis = [
        DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
    ];
    let mut r = Matrix3::zeros();
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            let m = si * u.matrix() * sj * u.matrix().adjoint();
            r[(i, j)] = 0.5 * (m[(0, 0)] + m[(1, 1)]).re;
        }
    }
    Ok(r)
}

/// The two-state model behind the common contract.
#[derive(Debug, Clone, Copy)]
pub struct QubitModel {
    pub variant: QubitVariant,
}

impl QubitModel {
    pub fn dispersion_free() -> Self {
        Self {
            variant: QubitVariant::DispersionFree,
        }
    }

    pub fn linear_response() -> Self {
        Self {
            variant: QubitVariant::LinearResponse,
        }
    }
}

impl PreparationModel for QubitModel {
    type Prep = QuantumState;
    type Ontic = OnticDirection;

    fn name(&self) -> &'static str {
        match self.variant {
            QubitVariant::DispersionFree => "qubit-df",
            QubitVariant::LinearResponse => "qubit-b0",
        }
    }

    fn hilbert_dim(&self) -> Option<usize> {
        Some(2)
    }

    fn ontic_dim(&self) -> usize {
        2
    }

    fn sample_ontic(&self, prep: &QuantumState, rng: &mut dyn RngCore) -> OnticDirection {
        match self.variant {
            QubitVariant::DispersionFree => {
                sample_direction(prep, rng).expect("preparation must be a qubit state")
            }
            QubitVariant::LinearResponse => OnticDirection(
                bloch_vector(prep)
                    .expect("preparation must be a qubit state")
                    .0,
            ),
        }
    }

    fn density_or_support(&self, x: &OnticDirection, prep: &QuantumState) -> f64 {
        match self.variant {
            QubitVariant::DispersionFree => {
                density(x, prep).expect("preparation must be a qubit state")
            }
            QubitVariant::LinearResponse => {
                let w = bloch_vector(prep).expect("preparation must be a qubit state");
                // point support at the Bloch vector
                if x.vector().dot(&w.0) > 1.0 - 1e-10 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

impl OntologicalModel for QubitModel {
    type Motion = UnitaryOp;
    type Event = QuantumState;

    fn evolve_ontic(&self, x: &OnticDirection, motion: &UnitaryOp) -> OnticDirection {
        let r = bloch_rotation_matrix(motion).expect("motion must be a qubit unitary");
        OnticDirection::new(r * x.vector()).expect("rotation preserves the norm")
    }

    fn evolve_prep(&self, prep: &QuantumState, motion: &UnitaryOp) -> QuantumState {
        crate::hilbert::evolve_state(prep, motion).expect("dimension checked by motion")
    }

    fn event_probability(&self, x: &OnticDirection, event: &QuantumState) -> f64 {
        measure_event(event, x, self.variant).expect("event must be a qubit state")
    }

    fn exact_probability(&self, prep: &QuantumState, event: &QuantumState) -> f64 {
        born_probability(event, prep).expect("dimensions checked on construction")
    }
}
