//! Effect-space algebra for two-outcome qubit POVMs.
//!
//! A two-outcome POVM `{E, I - E}` on a qubit is fixed by a bias scalar
//! `a0`, an unsharpness magnitude `mu`, and a unit direction, with
//! `E = [a0*I + mu*(dir . sigma)] / 2`. The pairs `(a0, mu)` that yield a
//! well-defined effect form a closed triangle: `0 <= a0 <= 2` and
//! `0 <= mu <= min(a0, 2 - a0)`. Everything in this module is immutable
//! after construction.

use thiserror::Error;

/// Absolute tolerance for comparisons against parameter-region boundaries.
///
/// The feasible region, admissibility conditions, and the joint-measurability
/// criterion are all closed; the tolerance keeps boundary points (for example
/// `mu = 1/sqrt(2)` expressed in binary) inside the region they belong to.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Norm threshold below which a direction vector is rejected as zero.
const ZERO_NORM: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PovmError {
    /// `(a0, mu)` falls outside the feasible triangle.
    #[error("effect parameters a0={a0}, mu={mu} lie outside the feasible region: need 0 <= a0 <= 2 and 0 <= mu <= min(a0, 2 - a0)")]
    InvalidRegion { a0: f64, mu: f64 },
    /// The direction vector is too short to normalize.
    #[error("direction norm {norm:e} is below {ZERO_NORM:e}; a nonzero vector is required")]
    ZeroDirection { norm: f64 },
    #[error("direction components must be finite")]
    NonFiniteDirection,
}

/// Unit vector in R^3. Inputs are normalized at construction; the stored
/// norm is 1 to within 1e-9.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction {
    pub const X: Direction = Direction { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Direction = Direction { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Direction = Direction { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(x, y, z)`. Rejects non-finite input and vectors with
    /// norm below 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, PovmError> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(PovmError::NonFiniteDirection);
        }
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() {
            return Err(PovmError::NonFiniteDirection);
        }
        if norm < ZERO_NORM {
            return Err(PovmError::ZeroDirection { norm });
        }
        Ok(Direction {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// The antipodal direction. Component negation is exact, so flipping
    /// twice returns the original bits.
    pub fn flipped(&self) -> Direction {
        Direction {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn norm_deviation(&self) -> f64 {
        ((self.x * self.x + self.y * self.y + self.z * self.z).sqrt() - 1.0).abs()
    }
}

/// Whether `(a0, mu)` lies in the closed feasible triangle, to within
/// [`BOUNDARY_TOL`].
pub fn region_contains(a0: f64, mu: f64) -> bool {
    a0 >= -BOUNDARY_TOL
        && a0 <= 2.0 + BOUNDARY_TOL
        && mu >= -BOUNDARY_TOL
        && mu <= a0.min(2.0 - a0) + BOUNDARY_TOL
}

/// One effect of a two-outcome qubit POVM, parameterized by bias `a0`,
/// unsharpness `mu`, and a unit direction.
///
/// The bias is stored internally as the offset `a0 - 1`, so that
/// [`Effect::complement`] is a pure sign flip and composing it with itself
/// reproduces the original parameters bit for bit. The offset is fixed once
/// at construction; `a0()` returns `1 + offset` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Effect {
    bias_offset: f64,
    mu: f64,
    dir: Direction,
}

impl Effect {
    /// Validates `(a0, mu)` against the feasible triangle and builds the
    /// effect. The boundary is inclusive to within [`BOUNDARY_TOL`].
    pub fn new(a0: f64, mu: f64, dir: Direction) -> Result<Self, PovmError> {
        if !region_contains(a0, mu) {
            return Err(PovmError::InvalidRegion { a0, mu });
        }
        Ok(Effect {
            bias_offset: a0 - 1.0,
            mu,
            dir,
        })
    }

    /// Builds an effect from raw direction components; the direction is
    /// normalized first.
    pub fn from_vector(a0: f64, mu: f64, dir: [f64; 3]) -> Result<Self, PovmError> {
        let dir = Direction::new(dir[0], dir[1], dir[2])?;
        Effect::new(a0, mu, dir)
    }

    /// Effect of an unsharp spin observable: bias fixed at 1, so the pair
    /// is `{(I + mu dir.sigma)/2, (I - mu dir.sigma)/2}`. Requires
    /// `0 <= mu <= 1`.
    pub fn unsharp(mu: f64, dir: Direction) -> Result<Self, PovmError> {
        Effect::new(1.0, mu, dir)
    }

    pub fn a0(&self) -> f64 {
        1.0 + self.bias_offset
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn dir(&self) -> Direction {
        self.dir
    }

    /// Bias relative to the unbiased midpoint, `a0 - 1`. Exact by storage.
    pub(crate) fn bias_offset(&self) -> f64 {
        self.bias_offset
    }

    /// The effect representing `I - E`, i.e. `(2 - a0, mu, -dir)`.
    /// An involution: applying it twice returns identical parameters.
    pub fn complement(&self) -> Effect {
        Effect {
            bias_offset: -self.bias_offset,
            mu: self.mu,
            dir: self.dir.flipped(),
        }
    }

    /// Eigen-decomposition of the effect operator: weights `(a0 +- mu)/2`
    /// on the spin projectors along the effect axis.
    pub fn spectral(&self) -> SpectralForm {
        let a0 = self.a0();
        SpectralForm {
            weight_plus: (a0 + self.mu) / 2.0,
            weight_minus: (a0 - self.mu) / 2.0,
            axis: self.dir,
        }
    }
}

/// Spectral weights of an effect: the eigenvalues `(a0 + mu)/2` and
/// `(a0 - mu)/2` attached to the spin projectors along `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralForm {
    pub weight_plus: f64,
    pub weight_minus: f64,
    pub axis: Direction,
}

/// Left-hand side of the joint-measurability criterion for two unsharp
/// spin observables: `|mu1 d1 + mu2 d2| + |mu1 d1 - mu2 d2|`.
pub fn jm_criterion(mu1: f64, dir1: &Direction, mu2: f64, dir2: &Direction) -> f64 {
    let sx = mu1 * dir1.x + mu2 * dir2.x;
    let sy = mu1 * dir1.y + mu2 * dir2.y;
    let sz = mu1 * dir1.z + mu2 * dir2.z;
    let dx = mu1 * dir1.x - mu2 * dir2.x;
    let dy = mu1 * dir1.y - mu2 * dir2.y;
    let dz = mu1 * dir1.z - mu2 * dir2.z;
    (sx * sx + sy * sy + sz * sz).sqrt() + (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Whether the unsharp spin observables `(mu1, dir1)` and `(mu2, dir2)` are
/// jointly measurable: the criterion value must not exceed 2. The boundary
/// counts as measurable (closed, to within [`BOUNDARY_TOL`]).
///
/// Callers are expected to pass `mu1, mu2` in `[0, 1]`.
pub fn jointly_measurable(mu1: f64, dir1: &Direction, mu2: f64, dir2: &Direction) -> bool {
    jm_criterion(mu1, dir1, mu2, dir2) <= 2.0 + BOUNDARY_TOL
}
