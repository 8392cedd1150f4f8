//! Machine-checkable versions of the structural requirements on an
//! ontological model: Born-rule reproduction, disjoint supports for
//! orthogonal preparations, support transport under evolution, and the lower
//! bound on the number of continuous ontic variables.

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::hilbert::{inner, HilbertError, QuantumState};
use crate::model::{OntologicalModel, PreparationModel};
use crate::stats::z_score;

/// Densities above this count as "in support".
pub const SUPPORT_EPS: f64 = 1e-12;
/// Two-sided z threshold for the Monte Carlo batteries.
pub const Z_THRESHOLD: f64 = 4.0;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("preparations are not orthogonal: |⟨ψ|ψ⊥⟩| = {0:.3e}")]
    NotOrthogonal(f64),
    #[error("dimension bound needs N >= 2, got {0}")]
    DimensionTooSmall(usize),
}

/// Outcome of one Born-rule Monte Carlo comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BornTestReport {
    pub estimate: f64,
    pub exact: f64,
    pub n: u64,
    pub z_score: f64,
    pub seed: u64,
}

impl BornTestReport {
    pub fn passes(&self) -> bool {
        self.z_score.abs() < Z_THRESHOLD
    }
}

/// Outcome of a support-membership scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportOverlapReport {
    pub n_samples: u64,
    pub overlap_count: u64,
    pub max_foreign_density: f64,
}

/// Monte Carlo Born check: draw n ontic states from the preparation, draw the
/// measurement response of each (a Bernoulli with the model's kernel
/// probability; deterministic for dispersion-free kernels), and compare the
/// event frequency with the quantum prediction by a z-score.
pub fn check_born_rule<M: OntologicalModel>(
    model: &M,
    prep: &M::Prep,
    event: &M::Event,
    n: u64,
    rng: &mut dyn RngCore,
    seed: u64,
) -> BornTestReport {
    let exact = model.exact_probability(prep, event);
    let mut hits = 0u64;
    for _ in 0..n {
        let x = model.sample_ontic(prep, rng);
        let p = model.event_probability(&x, event);
        if rng.random::<f64>() < p {
            hits += 1;
        }
    }
    let estimate = hits as f64 / n as f64;
    // Unbiased Bernoulli sample variance: p̂(1-p̂) n/(n-1).
    let variance = estimate * (1.0 - estimate) * n as f64 / (n - 1) as f64;
    BornTestReport {
        estimate,
        exact,
        n,
        z_score: z_score(estimate, exact, variance, n),
        seed,
    }
}

/// Disjoint-support check for orthogonal preparations: every ontic state
/// sampled from ρ(·|ψ) must have zero density under ρ(·|ψ⊥).
pub fn check_property3<M>(
    model: &M,
    psi: &QuantumState,
    psi_perp: &QuantumState,
    n: u64,
    rng: &mut dyn RngCore,
) -> Result<SupportOverlapReport, CheckError>
where
    M: PreparationModel<Prep = QuantumState>,
{
    let overlap = inner(psi, psi_perp)?.norm();
    if overlap > 1e-10 {
        return Err(CheckError::NotOrthogonal(overlap));
    }
    let mut overlap_count = 0u64;
    let mut max_foreign_density: f64 = 0.0;
    for _ in 0..n {
        let x = model.sample_ontic(psi, rng);
        let foreign = model.density_or_support(&x, psi_perp);
        max_foreign_density = max_foreign_density.max(foreign);
        if foreign > SUPPORT_EPS {
            overlap_count += 1;
        }
    }
    Ok(SupportOverlapReport {
        n_samples: n,
        overlap_count,
        max_foreign_density,
    })
}

/// Support-transport check: ontic states sampled in the support of a
/// preparation must land in the support of the evolved preparation.
/// `overlap_count` holds the number of violations (samples that escaped).
pub fn check_property1_flow<M: OntologicalModel>(
    model: &M,
    prep: &M::Prep,
    motion: &M::Motion,
    n: u64,
    rng: &mut dyn RngCore,
) -> SupportOverlapReport {
    let evolved_prep = model.evolve_prep(prep, motion);
    let mut violations = 0u64;
    let mut min_density = f64::INFINITY;
    for _ in 0..n {
        let x = model.sample_ontic(prep, rng);
        let moved = model.evolve_ontic(&x, motion);
        let density = model.density_or_support(&moved, &evolved_prep);
        min_density = min_density.min(density);
        if density <= SUPPORT_EPS {
            violations += 1;
        }
    }
    SupportOverlapReport {
        n_samples: n,
        overlap_count: violations,
        max_foreign_density: min_density,
    }
}

/// The failing control: the Husimi Q distributions of two orthogonal qubit
/// states overlap on a region of full measure, so the support scan reports
/// nearly every sample as foreign-positive.
pub fn q_function_counterexample(
    psi: &QuantumState,
    psi_perp: &QuantumState,
    n: u64,
    rng: &mut dyn RngCore,
) -> Result<SupportOverlapReport, CheckError> {
    check_property3(&crate::husimi::HusimiQubit, psi, psi_perp, n, rng)
}

/// The lower bound on the number of continuous ontic variables for an
/// N-dimensional system: 2N - 2.
pub fn min_ontic_dimension(n: usize) -> Result<usize, CheckError> {
    if n < 2 {
        return Err(CheckError::DimensionTooSmall(n));
    }
    Ok(2 * n - 2)
}

/// One row of the dimension audit.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionAudit {
    pub model: String,
    pub ontic_dim: usize,
    pub hilbert_dim: Option<usize>,
    pub bound: Option<usize>,
    pub satisfies: bool,
    pub restricted_manifold: bool,
}

/// Compares a model's declared count of continuous ontic variables with the
/// 2N-2 bound. Models on a restricted manifold (no finite N) are flagged as
/// exceptions rather than violations.
pub fn audit_dimension<M: PreparationModel>(model: &M) -> DimensionAudit {
    let hilbert_dim = model.hilbert_dim();
    let bound = hilbert_dim.and_then(|n| min_ontic_dimension(n).ok());
    let satisfies = match bound {
        Some(b) => model.ontic_dim() >= b,
        None => true,
    };
    DimensionAudit {
        model: model.name().to_string(),
        ontic_dim: model.ontic_dim(),
        hilbert_dim,
        bound,
        satisfies,
        restricted_manifold: model.restricted_manifold(),
    }
}
