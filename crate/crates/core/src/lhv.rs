//! Hidden-variable protocols that reproduce singlet statistics for
//! restricted observables.
//!
//! Both model families share one shape: a unit vector `lambda`, uniform on
//! the sphere, is shared between the parties; Alice answers yes with
//! probability `a0/2 + cA (a.lambda)` and Bob with probability
//! `b0/2 - cB sgn(b.lambda)`. Averaging over the sphere gives
//! `a0 b0/4 - (cA cB / 2)(a.b)` for the yes/yes cell, which equals the
//! quantum prediction exactly whenever `cA cB = muA muB / 2`.
//!
//! * The kappa family sets `cA = muA/(2 kappa)`, `cB = kappa muB` and is
//!   admissible when `muA <= kappa min(a0, 2-a0)` and
//!   `muB <= min(b0, 2-b0)/(2 kappa)`.
//! * The eta family sets `cA = 1/(2 eta)`, `cB = eta muA muB` with `muA`
//!   fixed as a protocol constant; it is admissible when
//!   `1/eta <= a0 <= 2 - 1/eta` and `muA muB <= min(b0, 2-b0)/(2 eta)`.
//!
//! These bounds are exactly what keeps the response probabilities inside
//! `[0, 1]` for every `lambda`.

mod monte_carlo;
mod quadrature;

pub use monte_carlo::{simulate_lhv, SimulationResult};
pub use quadrature::{quadrature_lhv_joint, QuadratureOrder, MIN_AZIMUTHAL, MIN_POLAR};

use thiserror::Error;

use crate::povm::{Direction, Effect, BOUNDARY_TOL};
use crate::stats::{JointDistribution, Scenario};

/// Sign convention used by the response functions: `sgn(x) = +1` for
/// `x >= 0` and `-1` for `x < 0`. The tie at zero is fixed for determinism.
pub(crate) fn sgn(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// A named admissibility failure; the display string spells out the
/// violated inequality with the offending numbers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdmissibilityViolation {
    #[error("Alice's unsharpness exceeds the kappa-family bound: mu_a = {mu_a} > kappa * min(a0, 2-a0) = {bound}")]
    AliceUnsharpness { mu_a: f64, bound: f64 },
    #[error("Bob's unsharpness exceeds the kappa-family bound: mu_b = {mu_b} > min(b0, 2-b0) / (2*kappa) = {bound}")]
    BobUnsharpness { mu_b: f64, bound: f64 },
    #[error("Alice's bias lies outside the eta-family window: a0 = {a0} not in [{lo}, {hi}]")]
    AliceBias { a0: f64, lo: f64, hi: f64 },
    #[error("unsharpness product exceeds the eta-family bound: mu_a * mu_b = {product} > min(b0, 2-b0) / (2*eta) = {bound}")]
    UnsharpnessProduct { product: f64, bound: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LhvError {
    #[error("model not admissible for this scenario: {0}")]
    NotAdmissible(AdmissibilityViolation),
    #[error("scenario Alice unsharpness {actual} differs from the protocol constant {expected}")]
    ProtocolMismatch { expected: f64, actual: f64 },
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("kappa must be strictly positive and finite, got {kappa}")]
    InvalidKappa { kappa: f64 },
    #[error("eta must be finite and at least 1, got {eta}")]
    InvalidEta { eta: f64 },
    #[error("protocol Alice unsharpness must lie in [0, 1], got {mu}")]
    InvalidProtocolMu { mu: f64 },
    #[error("quadrature order ({polar}, {azimuthal}) below the minimum ({MIN_POLAR}, {MIN_AZIMUTHAL})")]
    QuadratureOrderTooSmall { polar: usize, azimuthal: usize },
}

/// The shared local variable: a unit vector, uniform over the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiddenVariable {
    pub lambda: Direction,
}

impl HiddenVariable {
    pub fn new(lambda: Direction) -> Self {
        HiddenVariable { lambda }
    }
}

/// Kappa-family model. `kappa = 1` restricts only Bob, `kappa = 1/2` only
/// Alice, and `kappa = 1/sqrt(2)` restricts both parties equally. The model
/// is undefined at `kappa = 0` (Alice's response divides by kappa).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaModel {
    kappa: f64,
}

impl KappaModel {
    pub fn new(kappa: f64) -> Result<Self, LhvError> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(LhvError::InvalidKappa { kappa });
        }
        Ok(KappaModel { kappa })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    fn alice_bound(&self, alice: &Effect) -> f64 {
        self.kappa * alice.a0().min(2.0 - alice.a0())
    }

    fn bob_bound(&self, bob: &Effect) -> f64 {
        bob.a0().min(2.0 - bob.a0()) / (2.0 * self.kappa)
    }

    /// Checks both restriction inequalities (inclusive boundaries).
    pub fn check_admissible(&self, s: &Scenario) -> Result<(), LhvError> {
        let alice_bound = self.alice_bound(&s.alice);
        if s.alice.mu() > alice_bound + BOUNDARY_TOL {
            return Err(LhvError::NotAdmissible(
                AdmissibilityViolation::AliceUnsharpness {
                    mu_a: s.alice.mu(),
                    bound: alice_bound,
                },
            ));
        }
        let bob_bound = self.bob_bound(&s.bob);
        if s.bob.mu() > bob_bound + BOUNDARY_TOL {
            return Err(LhvError::NotAdmissible(
                AdmissibilityViolation::BobUnsharpness {
                    mu_b: s.bob.mu(),
                    bound: bob_bound,
                },
            ));
        }
        Ok(())
    }

    pub fn admissible(&self, s: &Scenario) -> bool {
        self.check_admissible(s).is_ok()
    }

    /// Alice's yes-probability `a0/2 + (muA/(2 kappa)) cos(alpha)` for the
    /// shared variable `lam`. In `[0, 1]` whenever her restriction holds.
    pub fn alice_response(&self, e: &Effect, lam: &HiddenVariable) -> f64 {
        0.5 * e.a0() + (e.mu() / (2.0 * self.kappa)) * e.dir().dot(&lam.lambda)
    }

    /// Bob's yes-probability `b0/2 - kappa muB sgn(cos(beta))`.
    pub fn bob_response(&self, e: &Effect, lam: &HiddenVariable) -> f64 {
        0.5 * e.a0() - (self.kappa * e.mu()) * sgn(e.dir().dot(&lam.lambda))
    }
}

/// Eta-family model: a single pair of restrictions couples Alice's bias to
/// `eta` and the unsharpness product to Bob's bias. Locality requires
/// Alice's unsharpness to be a protocol constant, carried here; scenarios
/// with a different `muA` are rejected rather than silently simulated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaModel {
    eta: f64,
    mu_a_protocol: f64,
}

impl EtaModel {
    pub fn new(eta: f64, mu_a_protocol: f64) -> Result<Self, LhvError> {
        if !eta.is_finite() || eta < 1.0 {
            return Err(LhvError::InvalidEta { eta });
        }
        if !mu_a_protocol.is_finite() || !(0.0..=1.0).contains(&mu_a_protocol) {
            return Err(LhvError::InvalidProtocolMu { mu: mu_a_protocol });
        }
        Ok(EtaModel { eta, mu_a_protocol })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn mu_a_protocol(&self) -> f64 {
        self.mu_a_protocol
    }

    fn check_protocol(&self, s: &Scenario) -> Result<(), LhvError> {
        if s.alice.mu() != self.mu_a_protocol {
            return Err(LhvError::ProtocolMismatch {
                expected: self.mu_a_protocol,
                actual: s.alice.mu(),
            });
        }
        Ok(())
    }

    /// Truth of the two restriction conditions (inclusive boundaries).
    /// Errors when the scenario's Alice unsharpness is not the protocol
    /// constant.
    pub fn admissible(&self, s: &Scenario) -> Result<bool, LhvError> {
        self.check_protocol(s)?;
        Ok(self.check_admissible(s).is_ok())
    }

    pub fn check_admissible(&self, s: &Scenario) -> Result<(), LhvError> {
        self.check_protocol(s)?;
        let inv = 1.0 / self.eta;
        let (lo, hi) = (inv, 2.0 - inv);
        let a0 = s.alice.a0();
        if a0 < lo - BOUNDARY_TOL || a0 > hi + BOUNDARY_TOL {
            return Err(LhvError::NotAdmissible(AdmissibilityViolation::AliceBias {
                a0,
                lo,
                hi,
            }));
        }
        let product = s.alice.mu() * s.bob.mu();
        let bound = s.bob.a0().min(2.0 - s.bob.a0()) / (2.0 * self.eta);
        if product > bound + BOUNDARY_TOL {
            return Err(LhvError::NotAdmissible(
                AdmissibilityViolation::UnsharpnessProduct { product, bound },
            ));
        }
        Ok(())
    }

    /// The pair of yes-probabilities
    /// `(a0/2 + cos(alpha)/(2 eta), b0/2 - eta muA muB sgn(cos(beta)))`.
    /// Alice's response carries no `muA`; the unsharpness product enters on
    /// Bob's side through the protocol constant.
    pub fn responses(&self, s: &Scenario, lam: &HiddenVariable) -> Result<(f64, f64), LhvError> {
        self.check_protocol(s)?;
        let c_a = 1.0 / (2.0 * self.eta);
        let c_b = self.eta * self.mu_a_protocol * s.bob.mu();
        Ok((
            0.5 * s.alice.a0() + c_a * s.alice.dir().dot(&lam.lambda),
            0.5 * s.bob.a0() - c_b * sgn(s.bob.dir().dot(&lam.lambda)),
        ))
    }
}

/// A model-family descriptor: either family evaluates, integrates, and
/// simulates through the same generic response shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LhvModel {
    Kappa(KappaModel),
    Eta(EtaModel),
}

impl From<KappaModel> for LhvModel {
    fn from(m: KappaModel) -> Self {
        LhvModel::Kappa(m)
    }
}

impl From<EtaModel> for LhvModel {
    fn from(m: EtaModel) -> Self {
        LhvModel::Eta(m)
    }
}

impl LhvModel {
    pub fn check_admissible(&self, s: &Scenario) -> Result<(), LhvError> {
        match self {
            LhvModel::Kappa(m) => m.check_admissible(s),
            LhvModel::Eta(m) => m.check_admissible(s),
        }
    }

    /// Response coefficients `(cA, cB)` for this scenario.
    pub(crate) fn coefficients(&self, s: &Scenario) -> Result<(f64, f64), LhvError> {
        match self {
            LhvModel::Kappa(m) => Ok((
                s.alice.mu() / (2.0 * m.kappa),
                m.kappa * s.bob.mu(),
            )),
            LhvModel::Eta(m) => {
                m.check_protocol(s)?;
                Ok((
                    1.0 / (2.0 * m.eta),
                    m.eta * m.mu_a_protocol * s.bob.mu(),
                ))
            }
        }
    }

    /// The pair of local yes-probabilities for a given shared variable.
    /// Admissibility is the caller's obligation; only the eta-family
    /// protocol constant is enforced here.
    pub fn responses(&self, s: &Scenario, lam: &HiddenVariable) -> Result<(f64, f64), LhvError> {
        let (c_a, c_b) = self.coefficients(s)?;
        Ok((
            0.5 * s.alice.a0() + c_a * s.alice.dir().dot(&lam.lambda),
            0.5 * s.bob.a0() - c_b * sgn(s.bob.dir().dot(&lam.lambda)),
        ))
    }
}

/// The set of kappa values admitting a scenario, as a closed interval.
///
/// `lo == 0` encodes "all kappa down to (but excluding) zero"; `hi` may be
/// infinite when Bob's unsharpness vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaInterval {
    pub lo: f64,
    pub hi: f64,
}

impl KappaInterval {
    pub fn contains(&self, kappa: f64) -> bool {
        kappa > 0.0 && kappa >= self.lo - BOUNDARY_TOL && kappa <= self.hi + BOUNDARY_TOL
    }

    pub fn intersect(&self, other: &KappaInterval) -> Option<KappaInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if hi <= 0.0 || lo > hi + BOUNDARY_TOL {
            return None;
        }
        Some(KappaInterval { lo, hi })
    }
}

/// The kappa values for which the scenario is admissible:
/// `[muA / min(a0, 2-a0), min(b0, 2-b0) / (2 muB)]`, empty iff
/// `2 muA muB > min(a0, 2-a0) min(b0, 2-b0)`. Returns `None` when empty.
pub fn find_kappa(s: &Scenario) -> Option<KappaInterval> {
    let min_a = s.alice.a0().min(2.0 - s.alice.a0());
    let min_b = s.bob.a0().min(2.0 - s.bob.a0());
    let mu_a = s.alice.mu();
    let mu_b = s.bob.mu();
    let lo = if mu_a <= 0.0 { 0.0 } else { mu_a / min_a };
    let hi = if mu_b <= 0.0 {
        f64::INFINITY
    } else {
        min_b / (2.0 * mu_b)
    };
    if hi <= 0.0 || lo > hi + BOUNDARY_TOL {
        return None;
    }
    Some(KappaInterval { lo, hi })
}

/// Closed-form value of the sphere integral of the response product:
/// `p_yy = a0 b0 / 4 - (cA cB / 2)(a.b)`, the other cells by the
/// complement substitutions. Equals the quantum prediction
/// [`singlet_joint`](crate::stats::singlet_joint) whenever the model is
/// admissible.
pub fn exact_lhv_joint(model: &LhvModel, s: &Scenario) -> Result<JointDistribution, LhvError> {
    model.check_admissible(s)?;
    let (c_a, c_b) = model.coefficients(s)?;
    let a0 = s.alice.a0();
    let b0 = s.bob.a0();
    let cross = 0.5 * (c_a * c_b) * s.alice.dir().dot(&s.bob.dir());
    Ok(JointDistribution {
        p_yy: 0.25 * (a0 * b0) - cross,
        p_yn: 0.25 * (a0 * (2.0 - b0)) + cross,
        p_ny: 0.25 * ((2.0 - a0) * b0) + cross,
        p_nn: 0.25 * ((2.0 - a0) * (2.0 - b0)) - cross,
    })
}
