//! Statistical helpers for the verification batteries: binomial z-scores and
//! a one-sample Kolmogorov-Smirnov test against an analytic CDF.

use statrs::distribution::{ContinuousCDF, Normal};

/// The normal CDF Φ((x - mean)/sd).
pub fn normal_cdf(x: f64, mean: f64, sd: f64) -> f64 {
    Normal::new(mean, sd)
        .expect("standard deviation must be positive and finite")
        .cdf(x)
}

/// Result of a one-sample Kolmogorov-Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

impl KsResult {
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }
}

/// Complement of the Kolmogorov CDF, `Q(z) = 1 - K(z)`, by the two power
/// series of Numerical Recipes (Press et al., 3rd ed.).
fn kolmogorov_cdf_complement(z: f64) -> f64 {
    if z <= 0.0 {
        return 1.0;
    }
    if z < 1.18 {
        let factor = (2.0 * std::f64::consts::PI).sqrt() / z;
        let term = (-std::f64::consts::PI * std::f64::consts::PI / (8.0 * z * z)).exp();
        1.0 - factor * (term + term.powi(9) + term.powi(25) + term.powi(49))
    } else {
        let term = (-2.0 * z * z).exp();
        2.0 * (term - term.powi(4) + term.powi(9))
    }
}

/// One-sample KS test of `samples` against the continuous CDF `cdf`.
/// The p-value uses the finite-n corrected asymptotic distribution.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> KsResult {
    assert!(!samples.is_empty(), "KS test needs samples");
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("samples must not contain NaN"));
    let n = sorted.len();
    let nf = n as f64;
    let mut statistic: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        statistic = statistic
            .max((f - i as f64 / nf).abs())
            .max(((i + 1) as f64 / nf - f).abs());
    }
    let sqrt_n = nf.sqrt();
    let p_value = kolmogorov_cdf_complement((sqrt_n + 0.12 + 0.11 / sqrt_n) * statistic);
    KsResult {
        statistic,
        p_value,
        n,
    }
}

/// Mean and unbiased sample variance.
pub fn mean_and_variance(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    assert!(n >= 2, "variance needs at least two samples");
    let mean = samples.iter().sum::<f64>() / n as f64;
    let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, ss / (n - 1) as f64)
}

/// The z-score `(estimate - exact) / sqrt(s²/n)`.
///
/// A degenerate sample (zero variance, e.g. a frequency of exactly 0 or 1)
/// falls back to the null binomial variance `exact (1 - exact)`; if that is
/// also zero the z-score is 0 when the estimate agrees with the exact value
/// to 1e-9 and +∞ otherwise. Point-mass preparations reproduce their
/// expectation exactly, which is a pass, not a divide error.
pub fn z_score(estimate: f64, exact: f64, sample_variance: f64, n: u64) -> f64 {
    let variance = if sample_variance > 0.0 {
        sample_variance
    } else {
        exact * (1.0 - exact)
    };
    if variance <= 0.0 {
        return if (estimate - exact).abs() < 1e-9 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    (estimate - exact) / (variance / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kolmogorov_complement_reference_points() {
        // Reference values from the asymptotic Kolmogorov distribution.
        assert_abs_diff_eq!(kolmogorov_cdf_complement(0.0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            kolmogorov_cdf_complement(1.0),
            0.26999967168,
            epsilon = 1e-7
        );
        assert_abs_diff_eq!(
            kolmogorov_cdf_complement(2.0),
            6.7092525578e-4,
            epsilon = 1e-9
        );
    }

    #[test]
    fn ks_accepts_true_distribution_and_rejects_wrong_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let samples: Vec<f64> = (0..20_000).map(|_| rng.random::<f64>()).collect();
        let uniform = ks_test(&samples, |x| x.clamp(0.0, 1.0));
        assert!(uniform.passes(0.01), "p = {}", uniform.p_value);

        let wrong = ks_test(&samples, |x| normal_cdf(x, 0.5, 0.5));
        assert!(!wrong.passes(0.01), "p = {}", wrong.p_value);
    }

    #[test]
    fn ks_statistic_hand_computed() {
        // Single sample at 0.3 against U[0,1]: D = max(0.3, 0.7) = 0.7.
        let r = ks_test(&[0.3], |x| x);
        assert_abs_diff_eq!(r.statistic, 0.7, epsilon = 1e-15);
    }

    #[test]
    fn z_score_degenerate_conventions() {
        // doubly degenerate: certain events
        assert_eq!(z_score(1.0, 1.0, 0.0, 1000), 0.0);
        assert_eq!(z_score(0.5, 1.0, 0.0, 1000), f64::INFINITY);
        // zero sample variance with a nonzero null variance: null fallback.
        // Zero hits out of 1000 at p = 6.8e-4 is an unremarkable outcome.
        let z = z_score(0.0, 6.8e-4, 0.0, 1000);
        assert!(z.abs() < 1.0, "z = {z}");
        let z = z_score(0.52, 0.5, 0.25, 10_000);
        assert_abs_diff_eq!(z, 0.02 / (0.25f64 / 10_000.0).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn mean_and_variance_of_bernoulli_draws() {
        let xs = [1.0, 0.0, 1.0, 1.0];
        let (m, v) = mean_and_variance(&xs);
        assert_abs_diff_eq!(m, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.25, epsilon = 1e-12);
    }
}
