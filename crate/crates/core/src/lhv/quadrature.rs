//! Numerical sphere integration of the response products.
//!
//! Product rule: Gauss-Legendre nodes in the polar coordinate times a
//! uniform periodic trapezoid in azimuth. The quadrature pole is aligned
//! with Bob's direction and the polar integral is split at its equator, so
//! the sign discontinuity of Bob's response never crosses a panel.

use super::{sgn, LhvError, LhvModel};
use crate::stats::{JointDistribution, Scenario};

/// Minimum polar node count (per hemisphere).
pub const MIN_POLAR: usize = 8;
/// Minimum azimuthal node count.
pub const MIN_AZIMUTHAL: usize = 16;

/// Node counts of the product rule: `polar` Gauss-Legendre nodes per
/// hemisphere and `azimuthal` uniformly spaced azimuth nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureOrder {
    pub polar: usize,
    pub azimuthal: usize,
}

impl Default for QuadratureOrder {
    fn default() -> Self {
        QuadratureOrder {
            polar: 64,
            azimuthal: 128,
        }
    }
}

impl QuadratureOrder {
    pub fn new(polar: usize, azimuthal: usize) -> Self {
        QuadratureOrder { polar, azimuthal }
    }

    pub fn doubled(&self) -> Self {
        QuadratureOrder {
            polar: self.polar * 2,
            azimuthal: self.azimuthal * 2,
        }
    }
}

/// Legendre polynomial value and derivative at `x` by the three-term
/// recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0f64;
    let mut p = x;
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    let dp = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// nodes in ascending order. Newton iteration from the Chebyshev-like
/// initial guess.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // The guess enumerates roots in descending order.
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    (nodes, weights)
}

/// An orthonormal completion (e1, e2) of the unit vector `b`, with
/// e1 x e2 = b.
fn orthonormal_frame(b: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    // Start from the coordinate axis least aligned with b.
    let seed = if b[0].abs() <= b[1].abs() && b[0].abs() <= b[2].abs() {
        [1.0, 0.0, 0.0]
    } else if b[1].abs() <= b[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let d = seed[0] * b[0] + seed[1] * b[1] + seed[2] * b[2];
    let raw = [seed[0] - d * b[0], seed[1] - d * b[1], seed[2] - d * b[2]];
    let norm = (raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]).sqrt();
    let e1 = [raw[0] / norm, raw[1] / norm, raw[2] / norm];
    let e2 = [
        b[1] * e1[2] - b[2] * e1[1],
        b[2] * e1[0] - b[0] * e1[2],
        b[0] * e1[1] - b[1] * e1[0],
    ];
    (e1, e2)
}

/// Integrates the four response products over the uniform sphere with the
/// split product rule. Agrees with
/// [`exact_lhv_joint`](super::exact_lhv_joint) to 1e-6 at the default
/// order; this is the independent numerical check of the closed form.
pub fn quadrature_lhv_joint(
    model: &LhvModel,
    s: &Scenario,
    order: QuadratureOrder,
) -> Result<JointDistribution, LhvError> {
    if order.polar < MIN_POLAR || order.azimuthal < MIN_AZIMUTHAL {
        return Err(LhvError::QuadratureOrderTooSmall {
            polar: order.polar,
            azimuthal: order.azimuthal,
        });
    }
    model.check_admissible(s)?;
    let (c_a, c_b) = model.coefficients(s)?;
    let a0 = s.alice.a0();
    let b0 = s.bob.a0();

    let b = s.bob.dir().components();
    let (e1, e2) = orthonormal_frame(&b);
    let a = s.alice.dir().components();
    let a_e1 = a[0] * e1[0] + a[1] * e1[1] + a[2] * e1[2];
    let a_e2 = a[0] * e2[0] + a[1] * e2[1] + a[2] * e2[2];
    let a_b = s.alice.dir().dot(&s.bob.dir());

    let (gl_nodes, gl_weights) = gauss_legendre(order.polar);
    let n_phi = order.azimuthal;
    let phis: Vec<(f64, f64)> = (0..n_phi)
        .map(|j| (std::f64::consts::TAU * j as f64 / n_phi as f64).sin_cos())
        .collect();

    let mut cells = [0.0f64; 4];
    // Lower hemisphere (b.lambda < 0) first, then upper; within each
    // hemisphere the polar nodes come from the [-1,1] rule mapped onto it.
    for hemisphere in [-1.0f64, 1.0] {
        for (x, w) in gl_nodes.iter().zip(gl_weights.iter()) {
            // Map [-1,1] onto [0,1], then orient.
            let z = hemisphere * 0.5 * (x + 1.0);
            let wz = 0.5 * w;
            let st = (1.0 - z * z).max(0.0).sqrt();
            let pb = 0.5 * b0 - c_b * sgn(z);
            let qb = 1.0 - pb;
            let weight = wz / (2.0 * n_phi as f64);
            for (sin_phi, cos_phi) in &phis {
                let a_dot = st * (a_e1 * cos_phi + a_e2 * sin_phi) + a_b * z;
                let pa = 0.5 * a0 + c_a * a_dot;
                let qa = 1.0 - pa;
                cells[0] += weight * (pa * pb);
                cells[1] += weight * (pa * qb);
                cells[2] += weight * (qa * pb);
                cells[3] += weight * (qa * qb);
            }
        }
    }
    Ok(JointDistribution {
        p_yy: cells[0],
        p_yn: cells[1],
        p_ny: cells[2],
        p_nn: cells[3],
    })
}
