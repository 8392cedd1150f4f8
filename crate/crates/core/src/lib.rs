//! Concrete hidden-variable (ontological) models of small quantum systems.
//!
//! Three models are implemented behind one contract and verified against the
//! Born rule and the structural properties an ontological model must satisfy:
//!
//! - [`qubit`]: the hemisphere model of a two-state system, with rigid-rotation
//!   dynamics and a Heaviside measurement rule (plus its linear-response variant);
//! - [`bell`]: the dispersion-free contextual model for N-dimensional systems
//!   and its trivial non-dispersion-free reduction;
//! - [`phase_space`]: Gaussian Wigner sampling of one bosonic mode with exact
//!   affine symplectic evolution and quadrature measurements.
//!
//! [`checks`] runs Born-rule Monte Carlo, support-disjointness, and flow checks
//! over any model implementing the [`model`] traits; [`husimi`] provides the
//! deliberately failing positive-representation control.

pub mod bell;
pub mod checks;
pub mod hilbert;
pub mod husimi;
pub mod model;
pub mod phase_space;
pub mod qubit;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod stats;

pub use hilbert::{BlochVector, HermitianOp, HilbertError, QuantumState, UnitaryOp};
pub use model::{OntologicalModel, PreparationModel};
