//! The Husimi Q pseudo-model of a qubit: a positive, normalized phase-space
//! function whose supports for orthogonal states overlap.
//!
//! It implements only the preparation side of the contract, deliberately: a
//! strictly positive distribution on the whole sphere admits no measurement
//! kernel reproducing quantum statistics, so positivity alone does not make a
//! representation ontological. The support checks use it as a failing control.

use nalgebra::Vector3;
use rand::{Rng, RngCore};

use crate::hilbert::{bloch_vector, HilbertError, QuantumState};
use crate::model::PreparationModel;
use crate::qubit::OnticDirection;

/// The spin coherent-state overlap density `Q(v|ψ) = (1 + v·w(ψ)) / (4π)`,
/// strictly positive except at the single antipodal point.
pub fn q_density(v: &OnticDirection, psi: &QuantumState) -> Result<f64, HilbertError> {
    let w = bloch_vector(psi)?;
    Ok((1.0 + v.vector().dot(&w.0)) / (4.0 * std::f64::consts::PI))
}

/// Inverse-transform sampling of the Q density: the polar CDF about w(ψ)
/// inverts to cos α = 2 sqrt(1 - u) - 1.
pub fn sample_q<R: Rng + ?Sized>(
    psi: &QuantumState,
    rng: &mut R,
) -> Result<OnticDirection, HilbertError> {
    let w = bloch_vector(psi)?.0;
    let u: f64 = rng.random();
    let cos_a = (2.0 * (1.0 - u).sqrt() - 1.0).clamp(-1.0, 1.0);
    let sin_a = (1.0 - cos_a * cos_a).max(0.0).sqrt();
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let seed = if w.x.abs() <= w.y.abs() && w.x.abs() <= w.z.abs() {
        Vector3::x()
    } else if w.y.abs() <= w.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let e1 = seed.cross(&w).normalize();
    let e2 = w.cross(&e1);
    Ok(OnticDirection::new(
        sin_a * (phi.cos() * e1 + phi.sin() * e2) + cos_a * w,
    )
    .expect("unit by construction"))
}

/// The pseudo-model: preparation side only.
#[derive(Debug, Clone, Copy, Default)]
pub struct HusimiQubit;

impl PreparationModel for HusimiQubit {
    type Prep = QuantumState;
    type Ontic = OnticDirection;

    fn name(&self) -> &'static str {
        "husimi-q"
    }

    fn hilbert_dim(&self) -> Option<usize> {
        Some(2)
    }

    fn ontic_dim(&self) -> usize {
        2
    }

    fn sample_ontic(&self, prep: &QuantumState, rng: &mut dyn RngCore) -> OnticDirection {
        sample_q(prep, rng).expect("preparation must be a qubit state")
    }

    fn density_or_support(&self, x: &OnticDirection, prep: &QuantumState) -> f64 {
        q_density(x, prep).expect("preparation must be a qubit state")
    }
}
