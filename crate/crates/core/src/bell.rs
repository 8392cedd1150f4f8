//! Bell's dispersion-free contextual model for N-dimensional systems, and its
//! trivial non-dispersion-free reduction.
//!
//! The ontic state carries the state vector itself plus a uniform variable
//! λ ∈ [0, 1). Measurement in an ordered orthonormal context fires the unique
//! outcome whose cumulative Born weight cell contains λ, which makes the
//! outcome depend on the ordering: the model is contextual for N ≥ 3.

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::hilbert::{
    born_probability, evolve_state, inner, HilbertError, QuantumState, UnitaryOp,
};
use crate::model::{OntologicalModel, PreparationModel};

/// Tolerance for the orthonormality of a measurement context.
pub const CONTEXT_TOL: f64 = 1e-10;
/// Two normalized vectors are the same ray when `1 - |⟨a|b⟩|` is below this.
pub const RAY_TOL: f64 = 1e-10;
/// Grid resolution of the contextuality witness search.
pub const WITNESS_GRID: usize = 1000;

#[derive(Debug, Error)]
pub enum BellError {
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("context vectors are not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("context needs {dim} vectors to be complete, got {got}")]
    IncompleteContext { dim: usize, got: usize },
    #[error("lambda {0} outside [0, 1]")]
    LambdaOutOfRange(f64),
    #[error("permutation {0:?} is not a bijection on 0..{1}")]
    BadPermutation(Vec<usize>, usize),
    #[error("cumulative weight {total} cannot cover lambda {lambda}; context is inconsistent")]
    InternalConsistency { lambda: f64, total: f64 },
    #[error("witness search requires N >= 3, got {0}")]
    DimensionTooSmallForWitness(usize),
}

/// Ontic state of the dispersion-free model: the transported state vector and
/// the constant of motion λ.
#[derive(Debug, Clone, PartialEq)]
pub struct BellOnticState {
    pub chi: QuantumState,
    pub lambda: f64,
}

impl BellOnticState {
    pub fn new(chi: QuantumState, lambda: f64) -> Result<Self, BellError> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(BellError::LambdaOutOfRange(lambda));
        }
        Ok(Self { chi, lambda })
    }
}

/// An ordered, complete orthonormal basis. The order is the context.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementContext {
    basis: Vec<QuantumState>,
}

impl MeasurementContext {
    /// Validates completeness and pairwise orthonormality within
    /// [`CONTEXT_TOL`].
    pub fn new(basis: Vec<QuantumState>) -> Result<Self, BellError> {
        let dim = basis
            .first()
            .map(QuantumState::dim)
            .ok_or(BellError::IncompleteContext { dim: 0, got: 0 })?;
        if basis.len() != dim {
            return Err(BellError::IncompleteContext {
                dim,
                got: basis.len(),
            });
        }
        let mut max_dev: f64 = 0.0;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let overlap = inner(a, b)?;
                let target = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((overlap.norm() - target).abs());
            }
        }
        if max_dev > CONTEXT_TOL {
            return Err(BellError::NotOrthonormal(max_dev));
        }
        Ok(Self { basis })
    }

    /// The computational basis in dimension `dim`.
    pub fn computational(dim: usize) -> Result<Self, BellError> {
        let basis = (0..dim)
            .map(|k| QuantumState::basis_state(dim, k))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(basis)
    }

    /// The columns of a unitary as an ordered context.
    pub fn from_unitary(u: &UnitaryOp) -> Result<Self, BellError> {
        let basis = (0..u.dim())
            .map(|k| u.column_state(k))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(basis)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vector(&self, k: usize) -> &QuantumState {
        &self.basis[k]
    }

    pub fn vectors(&self) -> &[QuantumState] {
        &self.basis
    }

    /// The same vectors in a new order: slot `k` holds `vector(perm[k])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, BellError> {
        let n = self.dim();
        let mut seen = vec![false; n];
        if perm.len() != n
            || !perm
                .iter()
                .all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
        {
            return Err(BellError::BadPermutation(perm.to_vec(), n));
        }
        Self::new(perm.iter().map(|&p| self.basis[p].clone()).collect())
    }

    /// The context with every vector evolved by `u`.
    pub fn transformed(&self, u: &UnitaryOp) -> Result<Self, BellError> {
        Self::new(
            self.basis
                .iter()
                .map(|b| evolve_state(b, u))
                .collect::<Result<Vec<_>, _>>()?,
        )
    }
}

/// Ray equality: global phase is unphysical, so two normalized vectors are
/// the same outcome when `1 - |⟨a|b⟩| < RAY_TOL`.
pub fn rays_equal(a: &QuantumState, b: &QuantumState) -> bool {
    match inner(a, b) {
        Ok(overlap) => 1.0 - overlap.norm() < RAY_TOL,
        Err(_) => false,
    }
}

/// Draws an ontic state for a preparation: χ = ψ exactly (a point mass), λ
/// uniform on [0, 1).
pub fn sample<R: Rng + ?Sized>(psi: &QuantumState, rng: &mut R) -> BellOnticState {
    BellOnticState {
        chi: psi.clone(),
        lambda: rng.random(),
    }
}

/// Schrödinger transport of the ontic state: χ' = Uχ, λ' = λ.
pub fn evolve(x: &BellOnticState, u: &UnitaryOp) -> Result<BellOnticState, BellError> {
    Ok(BellOnticState {
        chi: evolve_state(&x.chi, u)?,
        lambda: x.lambda,
    })
}

/// Born weights `|⟨χ|φ(k)⟩|²` of a context, in slot order.
pub fn outcome_weights(
    chi: &QuantumState,
    ctx: &MeasurementContext,
) -> Result<Vec<f64>, BellError> {
    ctx.basis
        .iter()
        .map(|phi| Ok(born_probability(phi, chi)?))
        .collect()
}

/// Deterministic measurement: the outcome is the slot `k` whose cumulative
/// cell `C_{k-1} < λ <= C_k` contains λ.
///
/// λ = 0 falls in no left-open cell and is assigned to the first non-empty
/// one; the conventions differ only on a measure-zero set. Fails if λ
/// exceeds the total weight by more than 1e-12, which a complete context
/// cannot produce.
pub fn measure(x: &BellOnticState, ctx: &MeasurementContext) -> Result<usize, BellError> {
    if x.chi.dim() != ctx.dim() {
        return Err(HilbertError::DimensionMismatch {
            left: x.chi.dim(),
            right: ctx.dim(),
        }
        .into());
    }
    let weights = outcome_weights(&x.chi, ctx)?;
    let mut cumulative = 0.0;
    let mut last_nonempty = None;
    for (k, &w) in weights.iter().enumerate() {
        let prev = cumulative;
        cumulative += w;
        if w > 0.0 {
            last_nonempty = Some(k);
        }
        if (x.lambda > prev && x.lambda <= cumulative) || (x.lambda <= 0.0 && cumulative > 0.0) {
            return Ok(k);
        }
    }
    // Roundoff can leave the total a few ulps below λ; beyond 1e-12 something
    // is genuinely wrong with the context.
    if x.lambda <= cumulative + 1e-12 {
        if let Some(k) = last_nonempty {
            return Ok(k);
        }
    }
    Err(BellError::InternalConsistency {
        lambda: x.lambda,
        total: cumulative,
    })
}

/// A value of λ where the two orderings of the same context fire different
/// outcome vectors. Outcome indices label vectors in the *original* basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub lambda: f64,
    pub outcome_original: usize,
    pub outcome_permuted: usize,
}

/// Searches a λ-grid of [`WITNESS_GRID`] midpoints for an ordering-dependent
/// outcome; `None` when every grid point agrees (e.g. concentrated χ or the
/// identity permutation).
pub fn contextuality_witness(
    chi: &QuantumState,
    ctx: &MeasurementContext,
    perm: &[usize],
) -> Result<Option<Witness>, BellError> {
    if ctx.dim() < 3 {
        return Err(BellError::DimensionTooSmallForWitness(ctx.dim()));
    }
    let permuted = ctx.permuted(perm)?;
    for i in 0..WITNESS_GRID {
        let lambda = (i as f64 + 0.5) / WITNESS_GRID as f64;
        let x = BellOnticState {
            chi: chi.clone(),
            lambda,
        };
        let slot_original = measure(&x, ctx)?;
        let slot_permuted = measure(&x, &permuted)?;
        let fired_original = ctx.vector(slot_original);
        let fired_permuted = permuted.vector(slot_permuted);
        if !rays_equal(fired_original, fired_permuted) {
            return Ok(Some(Witness {
                lambda,
                outcome_original: slot_original,
                outcome_permuted: perm[slot_permuted],
            }));
        }
    }
    Ok(None)
}

/// One Bernoulli draw of the event `φ` in the non-dispersion-free model:
/// success probability |⟨φ|χ⟩|².
pub fn measure_ndf<R: Rng + ?Sized>(
    chi: &QuantumState,
    phi: &QuantumState,
    rng: &mut R,
) -> Result<bool, HilbertError> {
    let p = born_probability(phi, chi)?;
    Ok(rng.random::<f64>() < p)
}

/// Measurement event for the dispersion-free model: a context and a slot.
#[derive(Debug, Clone)]
pub struct BellEvent {
    pub context: MeasurementContext,
    pub outcome: usize,
}

/// The dispersion-free model (ontic dimension 2N-1: the ray of χ plus λ).
#[derive(Debug, Clone, Copy)]
pub struct BellModel {
    dim: usize,
}

impl BellModel {
    pub fn new(dim: usize) -> Result<Self, HilbertError> {
        if dim < 2 {
            return Err(HilbertError::DimensionTooSmall(dim));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl PreparationModel for BellModel {
    type Prep = QuantumState;
    type Ontic = BellOnticState;

    fn name(&self) -> &'static str {
        "bell-df"
    }

    fn hilbert_dim(&self) -> Option<usize> {
        Some(self.dim)
    }

    fn ontic_dim(&self) -> usize {
        2 * self.dim - 1
    }

    fn sample_ontic(&self, prep: &QuantumState, rng: &mut dyn RngCore) -> BellOnticState {
        sample(prep, rng)
    }

    fn density_or_support(&self, x: &BellOnticState, prep: &QuantumState) -> f64 {
        if rays_equal(&x.chi, prep) {
            1.0
        } else {
            0.0
        }
    }
}

impl OntologicalModel for BellModel {
    type Motion = UnitaryOp;
    type Event = BellEvent;

    fn evolve_ontic(&self, x: &BellOnticState, motion: &UnitaryOp) -> BellOnticState {
        evolve(x, motion).expect("motion dimension must match the model")
    }

    fn evolve_prep(&self, prep: &QuantumState, motion: &UnitaryOp) -> QuantumState {
        evolve_state(prep, motion).expect("motion dimension must match the model")
    }

    fn event_probability(&self, x: &BellOnticState, event: &BellEvent) -> f64 {
        let fired = measure(x, &event.context).expect("context validated on construction");
        if fired == event.outcome {
            1.0
        } else {
            0.0
        }
    }

    fn exact_probability(&self, prep: &QuantumState, event: &BellEvent) -> f64 {
        born_probability(event.context.vector(event.outcome), prep)
            .expect("dimensions validated on construction")
    }
}

/// The non-dispersion-free reduction: drop λ, keep the ray of χ (2N-2 ontic
/// dimensions), and answer events with the Born weight itself.
#[derive(Debug, Clone, Copy)]
pub struct BellNdfModel {
    dim: usize,
}

impl BellNdfModel {
    pub fn new(dim: usize) -> Result<Self, HilbertError> {
        if dim < 2 {
            return Err(HilbertError::DimensionTooSmall(dim));
        }
        Ok(Self { dim })
    }
}

impl PreparationModel for BellNdfModel {
    type Prep = QuantumState;
    type Ontic = QuantumState;

    fn name(&self) -> &'static str {
        "bell-ndf"
    }

    fn hilbert_dim(&self) -> Option<usize> {
        Some(self.dim)
    }

    fn ontic_dim(&self) -> usize {
        2 * self.dim - 2
    }

    fn sample_ontic(&self, prep: &QuantumState, _rng: &mut dyn RngCore) -> QuantumState {
        prep.clone()
    }

    fn density_or_support(&self, x: &QuantumState, prep: &QuantumState) -> f64 {
        if rays_equal(x, prep) {
            1.0
        } else {
            0.0
        }
    }
}

impl OntologicalModel for BellNdfModel {
    type Motion = UnitaryOp;
    type Event = QuantumState;

    fn evolve_ontic(&self, x: &QuantumState, motion: &UnitaryOp) -> QuantumState {
        evolve_state(x, motion).expect("motion dimension must match the model")
    }

    fn evolve_prep(&self, prep: &QuantumState, motion: &UnitaryOp) -> QuantumState {
        evolve_state(prep, motion).expect("motion dimension must match the model")
    }

    fn event_probability(&self, x: &QuantumState, event: &QuantumState) -> f64 {
        born_probability(event, x).expect("dimensions validated on construction")
    }

    fn exact_probability(&self, prep: &QuantumState, event: &QuantumState) -> f64 {
        born_probability(event, prep).expect("dimensions validated on construction")
    }
}
