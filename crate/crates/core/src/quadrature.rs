//! Deterministic quadrature used by the exact Born-rule checks and the test
//! oracles: Gauss-Legendre nodes on [-1, 1], a product rule on the unit
//! sphere, and tensor rules on boxes.

use nalgebra::Vector3;

/// Polar node count for the sphere product rule.
pub const SPHERE_POLAR_NODES: usize = 128;
/// Azimuthal node count for the sphere product rule.
pub const SPHERE_AZIMUTH_NODES: usize = 256;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence. Exact for polynomials of degree 2n-1.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Symmetric rule: compute one half, mirror the other.
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integral of `f` over [lo, hi] with an n-node Gauss-Legendre rule.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Integral of `f(v)` over the unit sphere with the product rule:
/// Gauss-Legendre in cos(theta), trapezoid (equal weights) in the periodic
/// azimuth.
pub fn integrate_sphere<F: Fn(Vector3<f64>) -> f64>(
    f: F,
    n_polar: usize,
    n_azimuth: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(n_polar);
    let dphi = std::f64::consts::TAU / n_azimuth as f64;
    let mut total = 0.0;
    for (&u, &w) in nodes.iter().zip(&weights) {
        let s = (1.0 - u * u).max(0.0).sqrt();
        let mut ring = 0.0;
        for j in 0..n_azimuth {
            let phi = dphi * j as f64;
            ring += f(Vector3::new(s * phi.cos(), s * phi.sin(), u));
        }
        total += w * ring * dphi;
    }
    total
}

/// Integral of `f(v)` over the spherical zone `u_lo <= v·axis <= u_hi`, with
/// the polar coordinate measured from `axis`.
///
/// Splitting a sphere integral into zones at the non-smooth latitudes of the
/// integrand restores the spectral accuracy of the product rule.
pub fn integrate_sphere_zonal<F: Fn(Vector3<f64>) -> f64>(
    axis: Vector3<f64>,
    f: F,
    u_lo: f64,
    u_hi: f64,
    n_polar: usize,
    n_azimuth: usize,
) -> f64 {
    let axis = axis.normalize();
    let seed = if axis.x.abs() <= axis.y.abs() && axis.x.abs() <= axis.z.abs() {
        Vector3::x()
    } else if axis.y.abs() <= axis.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let e1 = seed.cross(&axis).normalize();
    let e2 = axis.cross(&e1);

    let (nodes, weights) = gauss_legendre(n_polar);
    let mid = 0.5 * (u_lo + u_hi);
    let half = 0.5 * (u_hi - u_lo);
    let dphi = std::f64::consts::TAU / n_azimuth as f64;
    let mut total = 0.0;
    for (&x, &w) in nodes.iter().zip(&weights) {
        let u = mid + half * x;
        let s = (1.0 - u * u).max(0.0).sqrt();
        let mut ring = 0.0;
        for j in 0..n_azimuth {
            let phi = dphi * j as f64;
            ring += f(s * (phi.cos() * e1 + phi.sin() * e2) + u * axis);
        }
        total += w * ring * dphi;
    }
    total * half
}

/// Integral of `f(q, p)` over a rectangle with a tensor Gauss-Legendre rule.
pub fn integrate_box<F: Fn(f64, f64) -> f64>(
    f: F,
    q_range: (f64, f64),
    p_range: (f64, f64),
    nq: usize,
    np: usize,
) -> f64 {
    let (qn, qw) = gauss_legendre(nq);
    let (pn, pw) = gauss_legendre(np);
    let (q_mid, q_half) = (0.5 * (q_range.0 + q_range.1), 0.5 * (q_range.1 - q_range.0));
    let (p_mid, p_half) = (0.5 * (p_range.0 + p_range.1), 0.5 * (p_range.1 - p_range.0));
    let mut total = 0.0;
    for (&xq, &wq) in qn.iter().zip(&qw) {
        for (&xp, &wp) in pn.iter().zip(&pw) {
            total += wq * wp * f(q_mid + q_half * xq, p_mid + p_half * xp);
        }
    }
    total * q_half * p_half
}
