//! Restricted two-outcome qubit POVMs, exact singlet measurement
//! statistics, and local hidden-variable protocols that reproduce them.
//!
//! The crate is organized around four pieces:
//!
//! * [`povm`] — construction and validation of two-outcome effects, their
//!   complements and spectral decompositions, and the joint-measurability
//!   criterion for unsharp spin observables.
//! * [`stats`] — the closed-form joint distribution of a pair of effects
//!   measured on the singlet, an independent matrix-trace oracle for it,
//!   correlators, and CHSH values with a direction optimizer.
//! * [`lhv`] — the hidden-variable model families (kappa and eta), their
//!   admissibility regions, local response functions, the exact sphere
//!   integral, a spherical quadrature check, and seeded Monte Carlo.
//! * [`analysis`] — areas of the restriction regions, the percentage
//!   restriction measure, and kappa sweeps.
//!
//! All values are immutable after construction and safe to share across
//! threads. The Monte Carlo engine is bit-reproducible for a fixed
//! `(seed, samples)` pair regardless of thread count.

pub mod analysis;
pub mod lhv;
pub mod povm;
pub mod stats;

pub use analysis::{
    kappa_sweep, region_area, restriction_crossing, restriction_measure, AnalysisError,
    RegionSpec, SweepRow,
};
pub use lhv::{
    exact_lhv_joint, find_kappa, quadrature_lhv_joint, simulate_lhv, AdmissibilityViolation,
    EtaModel, HiddenVariable, KappaInterval, KappaModel, LhvError, LhvModel, QuadratureOrder,
    SimulationResult,
};
pub use povm::{
    jm_criterion, jointly_measurable, region_contains, Direction, Effect, PovmError, SpectralForm,
    BOUNDARY_TOL,
};
pub use stats::{
    chsh_max, chsh_value, correlator, correlator_closed_form, singlet_joint, singlet_joint_oracle,
    ChshMaxConfig, ChshMaxResult, ChshParams, ChshSetting, EffectParams, JointDistribution,
    Scenario,
};
