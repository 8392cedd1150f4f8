//! The common contract all hidden-variable models implement.
//!
//! A model maps preparations to probability densities over its ontic state
//! space, transports ontic states alongside the quantum evolution, and
//! assigns each (ontic state, event) pair a response probability whose
//! average over the preparation density reproduces the quantum prediction.
//!
//! The preparation side is split out as [`PreparationModel`] so that positive
//! phase-space representations that fail the measurement axioms (the Husimi
//! control) can still be run through the support checks.

use rand::RngCore;

/// Preparation side of a model: densities over the ontic space.
///
/// Methods take pre-validated domain types and panic on dimension mismatch;
/// fallible validation lives in the constructors of those types.
pub trait PreparationModel {
    /// Preparation label (a quantum state, or a restricted parameter family).
    type Prep: Clone;
    /// A point of the ontic state space.
    type Ontic: Clone;

    /// Stable identifier used in reports.
    fn name(&self) -> &'static str;

    /// Hilbert dimension of the described system; `None` when the carrier
    /// space is infinite-dimensional and the model covers a restricted
    /// manifold of states.
    fn hilbert_dim(&self) -> Option<usize>;

    /// Number of continuous ontic variables.
    fn ontic_dim(&self) -> usize;

    /// Whether the model only represents a restricted manifold of quantum
    /// states and measurements rather than the full Hilbert space.
    fn restricted_manifold(&self) -> bool {
        false
    }

    /// Draws an ontic state from the preparation density.
    fn sample_ontic(&self, prep: &Self::Prep, rng: &mut dyn RngCore) -> Self::Ontic;

    /// The preparation density at `x`, or a support indicator for point-mass
    /// preparations. Non-negative everywhere; zero outside the support.
    fn density_or_support(&self, x: &Self::Ontic, prep: &Self::Prep) -> f64;
}

/// Full ontological model: preparation, Markovian evolution, measurement.
pub trait OntologicalModel: PreparationModel {
    /// Label of an evolution (a unitary, or a generator with a duration).
    type Motion: Clone;
    /// Label of a measurement event.
    type Event: Clone;

    /// Transports an ontic state along the evolution.
    fn evolve_ontic(&self, x: &Self::Ontic, motion: &Self::Motion) -> Self::Ontic;

    /// The evolved preparation label (the quantum side of the same motion).
    fn evolve_prep(&self, prep: &Self::Prep, motion: &Self::Motion) -> Self::Prep;

    /// Response probability of the event given the ontic state, in [0, 1].
    /// Dispersion-free models take only the values 0 and 1.
    fn event_probability(&self, x: &Self::Ontic, event: &Self::Event) -> f64;

    /// The quantum prediction the model must reproduce for this pair.
    fn exact_probability(&self, prep: &Self::Prep, event: &Self::Event) -> f64;
}
