//! Gaussian Wigner-function model of one bosonic mode: the Wigner density of
//! a Gaussian state is a genuine probability distribution on phase space,
//! quadratic Hamiltonians move it by the exact affine symplectic flow, and
//! quadrature measurements read off linear combinations of (q, p).

use nalgebra::{Matrix2, Matrix3, Vector2};
use rand::{Rng, RngCore};
use rand_distr::StandardNormal;
use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::model::{OntologicalModel, PreparationModel};

#[derive(Debug, Error)]
pub enum PhaseSpaceError {
    #[error("position variance scale must be positive and finite, got {0}")]
    InvalidWidth(f64),
    #[error("parameter {name} is not finite: {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("quadratic form is not symmetric (deviation {0:.3e})")]
    NotSymmetric(f64),
    #[error("covariance is not a pure squeezed-state covariance (det {0}, expected 1/4)")]
    NotMinimumUncertainty(f64),
}

/// Parameters of a Gaussian state: means (q0, p0), width scale `a > 0`, and
/// chirp/shear `b`. The Wigner density is
/// `W(q, p) = (1/π) exp(-(q-q0)²/a - a [p - p0 - 2b(q-q0)]²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianStateParams {
    pub q0: f64,
    pub p0: f64,
    pub a: f64,
    pub b: f64,
}

impl GaussianStateParams {
    pub fn new(q0: f64, p0: f64, a: f64, b: f64) -> Result<Self, PhaseSpaceError> {
        for (name, value) in [("q0", q0), ("p0", p0), ("b", b)] {
            if !value.is_finite() {
                return Err(PhaseSpaceError::NotFinite { name, value });
            }
        }
        if !a.is_finite() || a <= 0.0 {
            return Err(PhaseSpaceError::InvalidWidth(a));
        }
        Ok(Self { q0, p0, a, b })
    }

    /// The vacuum-like state centered at the origin.
    pub fn standard() -> Self {
        Self {
            q0: 0.0,
            p0: 0.0,
            a: 1.0,
            b: 0.0,
        }
    }

    pub fn mean(&self) -> Vector2<f64> {
        Vector2::new(self.q0, self.p0)
    }

    /// Covariance matrix of the Wigner density, read off the exponent:
    /// Var q = a/2, Cov(q,p) = ab, Var p = (1/a + 4ab²)/2. Its determinant is
    /// exactly 1/4 (minimum uncertainty).
    pub fn covariance(&self) -> Matrix2<f64> {
        let (a, b) = (self.a, self.b);
        Matrix2::new(a / 2.0, a * b, a * b, (1.0 / a + 4.0 * a * b * b) / 2.0)
    }

    /// Rebuilds parameters from moments; the covariance must have determinant
    /// 1/4 within 1e-6 (the family is closed under symplectic maps, which
    /// preserve that determinant).
    pub fn from_moments(mean: Vector2<f64>, cov: Matrix2<f64>) -> Result<Self, PhaseSpaceError> {
        let sym_dev = (cov[(0, 1)] - cov[(1, 0)]).abs();
        if sym_dev > 1e-9 {
            return Err(PhaseSpaceError::NotSymmetric(sym_dev));
        }
        let det = cov[(0, 0)] * cov[(1, 1)] - cov[(0, 1)] * cov[(1, 0)];
        if (det - 0.25).abs() > 1e-6 {
            return Err(PhaseSpaceError::NotMinimumUncertainty(det));
        }
        let a = 2.0 * cov[(0, 0)];
        Self::new(mean.x, mean.y, a, cov[(0, 1)] / a)
    }

    /// Mean of the quadrature `cos θ q + sin θ p`.
    pub fn quadrature_mean(&self, theta: f64) -> f64 {
        theta.cos() * self.q0 + theta.sin() * self.p0
    }

    /// Variance of the quadrature `cos θ q + sin θ p`, from the covariance
    /// quadratic form.
    pub fn quadrature_variance(&self, theta: f64) -> f64 {
        let u = Vector2::new(theta.cos(), theta.sin());
        (u.transpose() * self.covariance() * u)[(0, 0)]
    }
}

/// A point of the phase plane, the ontic state of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }

    pub fn vector(&self) -> Vector2<f64> {
        Vector2::new(self.q, self.p)
    }
}

/// A Hamiltonian quadratic in (q, p): `H(z) = z·A·z/2 + c·z` with symmetric A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticHamiltonian {
    quad: Matrix2<f64>,
    linear: Vector2<f64>,
}

impl QuadraticHamiltonian {
    pub fn new(quad: Matrix2<f64>, linear: Vector2<f64>) -> Result<Self, PhaseSpaceError> {
        let dev = (quad[(0, 1)] - quad[(1, 0)]).abs();
        if dev > 1e-12 {
            return Err(PhaseSpaceError::NotSymmetric(dev));
        }
        for v in quad.iter().chain(linear.iter()) {
            if !v.is_finite() {
                return Err(PhaseSpaceError::NotFinite {
                    name: "hamiltonian coefficient",
                    value: *v,
                });
            }
        }
        Ok(Self { quad, linear })
    }

    /// The harmonic oscillator `H = (q² + p²)/2`.
    pub fn harmonic() -> Self {
        Self {
            quad: Matrix2::identity(),
            linear: Vector2::zeros(),
        }
    }

    /// The free particle `H = p²/2`.
    pub fn free_particle() -> Self {
        Self {
            quad: Matrix2::new(0.0, 0.0, 0.0, 1.0),
            linear: Vector2::zeros(),
        }
    }

    /// Builds `H = (qq q² + pp p²)/2 + qp q p + cq q + cp p` from plain
    /// coefficients.
    pub fn from_coefficients(qq: f64, qp: f64, pp: f64, cq: f64, cp: f64) -> Result<Self, PhaseSpaceError> {
        Self::new(Matrix2::new(qq, qp, qp, pp), Vector2::new(cq, cp))
    }

    pub fn quad(&self) -> Matrix2<f64> {
        self.quad
    }

    pub fn linear(&self) -> Vector2<f64> {
        self.linear
    }

    /// The exact time-t flow of Hamilton's equations ż = J(Az + c):
    /// the matrix exponential of the augmented generator [[JA, Jc], [0, 0]].
    ///
    /// J A is traceless for symmetric A, so the linear part has unit
    /// determinant: the flow preserves phase-space volume.
    pub fn flow(&self, t: f64) -> AffineFlow {
        let j = Matrix2::new(0.0, 1.0, -1.0, 0.0);
        let ja = j * self.quad;
        let jc = j * self.linear;
        let mut gen = Matrix3::zeros();
        gen.view_mut((0, 0), (2, 2)).copy_from(&(ja * t));
        gen.view_mut((0, 2), (2, 1)).copy_from(&(jc * t));
        let exp = gen.exp();
        AffineFlow {
            linear: exp.fixed_view::<2, 2>(0, 0).into_owned(),
            offset: exp.fixed_view::<2, 1>(0, 2).into_owned(),
        }
    }
}

/// An affine symplectic map `z → M z + d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineFlow {
    pub linear: Matrix2<f64>,
    pub offset: Vector2<f64>,
}

impl AffineFlow {
    pub fn apply(&self, pt: &PhasePoint) -> PhasePoint {
        let z = self.linear * pt.vector() + self.offset;
        PhasePoint::new(z.x, z.y)
    }

    pub fn det(&self) -> f64 {
        self.linear.determinant()
    }

    /// Pushforward of a Gaussian: mean → M μ + d, covariance → M Σ Mᵀ.
    pub fn push_gaussian(
        &self,
        g: &GaussianStateParams,
    ) -> Result<GaussianStateParams, PhaseSpaceError> {
        GaussianStateParams::from_moments(
            self.linear * g.mean() + self.offset,
            self.linear * g.covariance() * self.linear.transpose(),
        )
    }
}

/// The Wigner density `W(q, p | q0, p0, a, b)`; strictly positive on the
/// whole plane, normalized to 1.
pub fn wigner_density(pt: &PhasePoint, g: &GaussianStateParams) -> f64 {
    let dq = pt.q - g.q0;
    let dp = pt.p - g.p0 - 2.0 * g.b * dq;
    (-dq * dq / g.a - g.a * dp * dp).exp() / std::f64::consts::PI
}

/// Exact Gaussian sampling of the Wigner density, factorized along the
/// exponent: q = q0 + sqrt(a/2) ξ1, p = p0 + 2b(q - q0) + ξ2/sqrt(2a).
pub fn sample<R: Rng + ?Sized>(g: &GaussianStateParams, rng: &mut R) -> PhasePoint {
    let xi1: f64 = rng.sample(StandardNormal);
    let xi2: f64 = rng.sample(StandardNormal);
    let q = g.q0 + (g.a / 2.0).sqrt() * xi1;
    let p = g.p0 + 2.0 * g.b * (q - g.q0) + xi2 / (2.0 * g.a).sqrt();
    PhasePoint::new(q, p)
}

/// Moves a phase point along the exact affine flow for time `t`.
pub fn evolve(pt: &PhasePoint, h: &QuadraticHamiltonian, t: f64) -> PhasePoint {
    h.flow(t).apply(pt)
}

/// The quadrature value `cos θ q + sin θ p` of a phase point. The
/// dispersion-free measurement kernel is a delta at this value.
pub fn quadrature(pt: &PhasePoint, theta: f64) -> f64 {
    theta.cos() * pt.q + theta.sin() * pt.p
}

/// The closed-form q-marginal `∫ dp W(q, p) = (πa)^{-1/2} exp(-(x-q0)²/a)`,
/// independent of the shear `b`.
pub fn marginal_q_density(x: f64, g: &GaussianStateParams) -> f64 {
    let dq = x - g.q0;
    (-dq * dq / g.a).exp() / (std::f64::consts::PI * g.a).sqrt()
}

/// A motion label: a quadratic generator applied for a duration.
#[derive(Debug, Clone, Copy)]
pub struct WignerMotion {
    pub hamiltonian: QuadraticHamiltonian,
    pub time: f64,
}

/// An interval event: the quadrature at angle `theta` lands at or below
/// `upper`. Its quantum probability is the Gaussian CDF of the marginal.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureWindow {
    pub theta: f64,
    pub upper: f64,
}

/// The Gaussian Wigner model behind the common contract. It covers the
/// restricted manifold of Gaussian states with quadrature measurements, not a
/// finite-dimensional Hilbert space.
#[derive(Debug, Clone, Copy, Default)]
pub struct WignerGaussianModel;

impl PreparationModel for WignerGaussianModel {
    type Prep = GaussianStateParams;
    type Ontic = PhasePoint;

    fn name(&self) -> &'static str {
        "wigner-gaussian"
    }

    fn hilbert_dim(&self) -> Option<usize> {
        None
    }

    fn ontic_dim(&self) -> usize {
        2
    }

    fn restricted_manifold(&self) -> bool {
        true
    }

    fn sample_ontic(&self, prep: &GaussianStateParams, rng: &mut dyn RngCore) -> PhasePoint {
        sample(prep, rng)
    }

    fn density_or_support(&self, x: &PhasePoint, prep: &GaussianStateParams) -> f64 {
        wigner_density(x, prep)
    }
}

impl OntologicalModel for WignerGaussianModel {
    type Motion = WignerMotion;
    type Event = QuadratureWindow;

    fn evolve_ontic(&self, x: &PhasePoint, motion: &WignerMotion) -> PhasePoint {
        evolve(x, &motion.hamiltonian, motion.time)
    }

    fn evolve_prep(
        &self,
        prep: &GaussianStateParams,
        motion: &WignerMotion,
    ) -> GaussianStateParams {
        motion
            .hamiltonian
            .flow(motion.time)
            .push_gaussian(prep)
            .expect("symplectic flow preserves the Gaussian family")
    }

    fn event_probability(&self, x: &PhasePoint, event: &QuadratureWindow) -> f64 {
        if quadrature(x, event.theta) <= event.upper {
            1.0
        } else {
            0.0
        }
    }

    fn exact_probability(&self, prep: &GaussianStateParams, event: &QuadratureWindow) -> f64 {
        let mean = prep.quadrature_mean(event.theta);
        let sd = prep.quadrature_variance(event.theta).sqrt();
        Normal::new(mean, sd)
            .expect("variance is positive for valid parameters")
            .cdf(event.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_box, integrate_interval};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_params<R: Rng>(rng: &mut R) -> GaussianStateParams {
        GaussianStateParams::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(0.3..3.0),
            rng.random_range(-1.0..1.0),
        )
        .unwrap()
    }

    fn random_hamiltonian<R: Rng>(rng: &mut R) -> QuadraticHamiltonian {
        let (aa, ab, bb) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        QuadraticHamiltonian::new(
            Matrix2::new(aa, ab, ab, bb),
            Vector2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        )
        .unwrap()
    }

    #[test]
    fn density_center_and_unit_offset() {
        let g = GaussianStateParams::new(0.7, -1.2, 1.0, 0.0).unwrap();
        let center = wigner_density(&PhasePoint::new(0.7, -1.2), &g);
        assert_abs_diff_eq!(center, 1.0 / std::f64::consts::PI, epsilon = 1e-15);
        let offset = wigner_density(&PhasePoint::new(1.7, -1.2), &g);
        assert_abs_diff_eq!(
            offset,
            (-1.0_f64).exp() / std::f64::consts::PI,
            epsilon = 1e-15
        );
    }

    #[test]
    fn density_normalizes_over_wide_box() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let g = random_params(&mut rng);
            let sq = (g.a / 2.0).sqrt();
            let sp = g.covariance()[(1, 1)].sqrt();
            let total = integrate_box(
                |q, p| wigner_density(&PhasePoint::new(q, p), &g),
                (g.q0 - 8.0 * sq, g.q0 + 8.0 * sq),
                (g.p0 - 12.0 * sp, g.p0 + 12.0 * sp),
                128,
                128,
            );
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn sample_moments_match_parameters() {
        let g = GaussianStateParams::new(1.5, -0.5, 2.0, 0.7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let n = 100_000;
        let (mut sum_q, mut sum_p, mut sum_qq, mut sum_qp) = (0.0, 0.0, 0.0, 0.0);
        for _ in 0..n {
            let pt = sample(&g, &mut rng);
            sum_q += pt.q;
            sum_p += pt.p;
            sum_qq += (pt.q - g.q0) * (pt.q - g.q0);
            sum_qp += (pt.q - g.q0) * (pt.p - g.p0);
        }
        let nf = n as f64;
        let se_q = (g.a / 2.0 / nf).sqrt();
        assert!((sum_q / nf - g.q0).abs() < 4.0 * se_q);
        // p-mean has variance Var(p)/n
        let var_p = g.covariance()[(1, 1)];
        assert!((sum_p / nf - g.p0).abs() < 4.0 * (var_p / nf).sqrt());
        let var_q = sum_qq / nf;
        assert!((var_q - g.a / 2.0).abs() < 0.05 * (g.a / 2.0), "Var q {var_q}");
        let cov_qp = sum_qp / nf;
        let expected = g.covariance()[(0, 1)];
        assert!((cov_qp - expected).abs() < 0.05 * expected.abs().max(0.1));
    }

    #[test]
    fn factorized_gaussian_has_no_covariance() {
        let g = GaussianStateParams::new(0.0, 0.0, 1.0, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let n = 100_000;
        let cov: f64 = (0..n)
            .map(|_| {
                let pt = sample(&g, &mut rng);
                pt.q * pt.p
            })
            .sum::<f64>()
            / n as f64;
        // Var(qp) = Var q Var p = 1/4 for the standard state
        let se = (0.25_f64 / n as f64).sqrt();
        assert!(cov.abs() < 4.0 * se, "covariance {cov}");
    }

    #[test]
    fn zero_hamiltonian_flow_is_identity() {
        let h = QuadraticHamiltonian::new(Matrix2::zeros(), Vector2::zeros()).unwrap();
        let pt = PhasePoint::new(1.3, -0.4);
        assert_eq!(evolve(&pt, &h, 2.5), pt);
    }

    #[test]
    fn harmonic_quarter_period_rotates_phase_space() {
        // (q, p) → (p, -q) at t = π/2
        let pt = PhasePoint::new(0.8, -0.3);
        let out = evolve(&pt, &QuadraticHamiltonian::harmonic(), std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(out.q, -0.3, epsilon = 1e-10);
        assert_abs_diff_eq!(out.p, -0.8, epsilon = 1e-10);
    }

    #[test]
    fn free_particle_flow_is_a_shear() {
        let pt = PhasePoint::new(0.5, 1.5);
        let t = 1.7;
        let out = evolve(&pt, &QuadraticHamiltonian::free_particle(), t);
        assert_abs_diff_eq!(out.q, 0.5 + 1.5 * t, epsilon = 1e-10);
        assert_abs_diff_eq!(out.p, 1.5, epsilon = 1e-10);
    }

    #[test]
    fn flow_preserves_phase_space_volume() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..20 {
            let h = random_hamiltonian(&mut rng);
            let t: f64 = rng.random_range(-3.0..3.0);
            let flow = h.flow(t);
            assert!(
                (flow.det() - 1.0).abs() < 1e-10,
                "det {} for t {t}",
                flow.det()
            );
        }
    }

    #[test]
    fn quadrature_projections() {
        let pt = PhasePoint::new(1.0, 1.0);
        assert_abs_diff_eq!(quadrature(&pt, 0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            quadrature(&pt, std::f64::consts::FRAC_PI_2),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            quadrature(&pt, std::f64::consts::FRAC_PI_4),
            2.0_f64.sqrt(),
            epsilon = 1e-15
        );
        let pt2 = PhasePoint::new(0.4, -2.0);
        assert_abs_diff_eq!(
            quadrature(&pt2, std::f64::consts::FRAC_PI_2),
            -2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn marginal_matches_numeric_p_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..10 {
            let g = random_params(&mut rng);
            for _ in 0..10 {
                let x: f64 = rng.random_range(-4.0..4.0);
                // window centered on the sheared conditional mean of p at q = x
                let p_center = g.p0 + 2.0 * g.b * (x - g.q0);
                let sp = (1.0 / (2.0 * g.a)).sqrt();
                let numeric = integrate_interval(
                    |p| wigner_density(&PhasePoint::new(x, p), &g),
                    p_center - 12.0 * sp,
                    p_center + 12.0 * sp,
                    200,
                );
                assert_abs_diff_eq!(numeric, marginal_q_density(x, &g), epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn marginal_peak_and_shear_independence() {
        let g0 = GaussianStateParams::new(0.3, 0.9, 1.7, 0.0).unwrap();
        let g3 = GaussianStateParams::new(0.3, 0.9, 1.7, 3.0).unwrap();
        assert_abs_diff_eq!(
            marginal_q_density(0.3, &g0),
            1.0 / (std::f64::consts::PI * 1.7).sqrt(),
            epsilon = 1e-15
        );
        for x in [-1.0, 0.0, 0.3, 2.5] {
            assert_abs_diff_eq!(
                marginal_q_density(x, &g0),
                marginal_q_density(x, &g3),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn gaussian_family_is_closed_under_flow() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        for _ in 0..20 {
            let g = random_params(&mut rng);
            let h = random_hamiltonian(&mut rng);
            let t: f64 = rng.random_range(-2.0..2.0);
            let flow = h.flow(t);
            let pushed = flow.push_gaussian(&g).unwrap();
            // round trip through the moment map is consistent
            let cov = flow.linear * g.covariance() * flow.linear.transpose();
            assert_abs_diff_eq!(
                (pushed.covariance() - cov).norm(),
                0.0,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn evolved_samples_match_pushed_forward_gaussian() {
        let g = GaussianStateParams::new(0.5, -1.0, 1.4, 0.3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let h = random_hamiltonian(&mut rng);
        let t = 1.3;
        let flow = h.flow(t);
        let pushed = flow.push_gaussian(&g).unwrap();

        let n = 100_000;
        let mut mean = Vector2::zeros();
        let mut m2 = Matrix2::zeros();
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            let z = evolve(&sample(&g, &mut rng), &h, t).vector();
            mean += z;
            points.push(z);
        }
        mean /= n as f64;
        for z in &points {
            let d = z - mean;
            m2 += d * d.transpose();
        }
        m2 /= n as f64;

        assert!((mean - pushed.mean()).norm() < 0.03, "mean {mean:?}");
        for i in 0..2 {
            for j in 0..2 {
                let expected = pushed.covariance()[(i, j)];
                let got = m2[(i, j)];
                let scale = expected.abs().max(0.05);
                assert!(
                    (got - expected).abs() < 0.05 * scale,
                    "cov[{i}{j}]: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(GaussianStateParams::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(GaussianStateParams::new(0.0, 0.0, -1.0, 0.0).is_err());
        assert!(GaussianStateParams::new(f64::NAN, 0.0, 1.0, 0.0).is_err());
        assert!(QuadraticHamiltonian::new(
            Matrix2::new(0.0, 1.0, 0.5, 0.0),
            Vector2::zeros()
        )
        .is_err());
        assert!(GaussianStateParams::from_moments(
            Vector2::zeros(),
            Matrix2::new(1.0, 0.0, 0.0, 1.0)
        )
        .is_err());
    }
}
