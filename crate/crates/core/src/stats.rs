//! Exact quantum predictions for singlet measurements.
//!
//! The joint outcome distribution of a pair of two-outcome POVMs measured on
//! the two halves of a singlet has a closed form in the effect parameters:
//! the four cells depend on the directions only through `a.b`. This module
//! provides that closed form, an independent matrix-trace oracle for it,
//! outcome correlators, CHSH combinations, and a direction-optimizing CHSH
//! search.

mod optimize;
mod oracle;

pub use optimize::{chsh_max, ChshMaxConfig, ChshMaxResult, ChshParams, EffectParams};
pub use oracle::singlet_joint_oracle;

use crate::povm::Effect;

/// A measurement scenario: one effect per party, applied to the singlet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub alice: Effect,
    pub bob: Effect,
}

impl Scenario {
    pub fn new(alice: Effect, bob: Effect) -> Self {
        Scenario { alice, bob }
    }
}

/// Joint outcome table over {yes, no} x {yes, no}.
///
/// For valid scenarios the cells are probabilities: each lies in `[0, 1]`,
/// they sum to 1, and the marginals do not signal (`p_yy + p_yn = a0/2`,
/// `p_yy + p_ny = b0/2`), all up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDistribution {
    pub p_yy: f64,
    pub p_yn: f64,
    pub p_ny: f64,
    pub p_nn: f64,
}

impl JointDistribution {
    pub fn cells(&self) -> [f64; 4] {
        [self.p_yy, self.p_yn, self.p_ny, self.p_nn]
    }

    pub fn sum(&self) -> f64 {
        self.p_yy + self.p_yn + self.p_ny + self.p_nn
    }

    /// Expectation of the product of +-1-valued outcomes under the
    /// convention yes -> +1, no -> -1.
    pub fn correlator(&self) -> f64 {
        self.p_yy + self.p_nn - self.p_yn - self.p_ny
    }

    /// Largest absolute cell difference against another table.
    pub fn max_abs_diff(&self, other: &JointDistribution) -> f64 {
        self.cells()
            .iter()
            .zip(other.cells().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Closed-form joint distribution of a scenario on the singlet:
///
/// ```text
/// p_yy = [a0*b0       - muA*muB a.b] / 4      p_yn = [a0*(2-b0)     + muA*muB a.b] / 4
/// p_ny = [(2-a0)*b0   + muA*muB a.b] / 4      p_nn = [(2-a0)*(2-b0) - muA*muB a.b] / 4
/// ```
pub fn singlet_joint(s: &Scenario) -> JointDistribution {
    let a0 = s.alice.a0();
    let b0 = s.bob.a0();
    let cross = s.alice.mu() * s.bob.mu() * s.alice.dir().dot(&s.bob.dir());
    JointDistribution {
        p_yy: 0.25 * (a0 * b0 - cross),
        p_yn: 0.25 * (a0 * (2.0 - b0) + cross),
        p_ny: 0.25 * ((2.0 - a0) * b0 + cross),
        p_nn: 0.25 * ((2.0 - a0) * (2.0 - b0) - cross),
    }
}

/// Outcome correlator of a scenario (yes -> +1, no -> -1), computed as the
/// signed sum of the four joint probabilities.
pub fn correlator(s: &Scenario) -> f64 {
    singlet_joint(s).correlator()
}

/// Algebraic form of the correlator, `(a0-1)(b0-1) - muA*muB a.b`.
/// Agrees with [`correlator`] up to rounding; kept as a second route for
/// cross-checking.
pub fn correlator_closed_form(s: &Scenario) -> f64 {
    s.alice.bias_offset() * s.bob.bias_offset()
        - s.alice.mu() * s.bob.mu() * s.alice.dir().dot(&s.bob.dir())
}

/// Four observables of a CHSH experiment: two per party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSetting {
    pub alice0: Effect,
    pub alice1: Effect,
    pub bob0: Effect,
    pub bob1: Effect,
}

/// Signed CHSH combination `E(A0,B0) + E(A0,B1) + E(A1,B0) - E(A1,B1)`.
/// No absolute value is taken; callers may scan sign conventions.
pub fn chsh_value(c: &ChshSetting) -> f64 {
    correlator(&Scenario::new(c.alice0, c.bob0))
        + correlator(&Scenario::new(c.alice0, c.bob1))
        + correlator(&Scenario::new(c.alice1, c.bob0))
        - correlator(&Scenario::new(c.alice1, c.bob1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::povm::Direction;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    pub(crate) fn random_direction(rng: &mut impl Rng) -> Direction {
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - z * z).max(0.0).sqrt();
        Direction::new(r * phi.cos(), r * phi.sin(), z).unwrap()
    }

    fn random_effect(rng: &mut impl Rng) -> Effect {
        let a0: f64 = rng.random_range(0.0..2.0);
        let mu: f64 = rng.random_range(0.0..=1.0) * a0.min(2.0 - a0);
        Effect::new(a0, mu, random_direction(rng)).unwrap()
    }

    pub(crate) fn random_scenario(rng: &mut impl Rng) -> Scenario {
        Scenario::new(random_effect(rng), random_effect(rng))
    }

    #[test]
    fn parallel_projective_measurements_anticorrelate() {
        let e = Effect::new(1.0, 1.0, Direction::Z).unwrap();
        let d = singlet_joint(&Scenario::new(e, e));
        assert_abs_diff_eq!(d.p_yy, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.p_yn, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.p_ny, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.p_nn, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn antiparallel_projective_measurements_correlate() {
        let up = Effect::new(1.0, 1.0, Direction::Z).unwrap();
        let down = Effect::new(1.0, 1.0, Direction::Z.flipped()).unwrap();
        let d = singlet_joint(&Scenario::new(up, down));
        assert_abs_diff_eq!(d.p_yy, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.p_yn, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.p_ny, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.p_nn, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn biased_unsharp_scenario_matches_trace_oracle() {
        // cos(angle) = 0.25 between the two directions
        let dir_a = Direction::Z;
        let dir_b = Direction::new((1.0f64 - 0.0625).sqrt(), 0.0, 0.25).unwrap();
        assert_abs_diff_eq!(dir_a.dot(&dir_b), 0.25, epsilon = 1e-15);
        let s = Scenario::new(
            Effect::new(1.2, 0.5, dir_a).unwrap(),
            Effect::new(0.6, 0.3, dir_b).unwrap(),
        );
        let d = singlet_joint(&s);
        assert_abs_diff_eq!(d.p_yy, 0.170625, epsilon = 1e-15);
        assert_abs_diff_eq!(d.max_abs_diff(&singlet_joint_oracle(&s)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn correlator_of_parallel_projective_pair() {
        let e = Effect::new(1.0, 1.0, Direction::Z).unwrap();
        assert_abs_diff_eq!(correlator(&Scenario::new(e, e)), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn correlator_vanishes_for_orthogonal_unbiased_pair() {
        let s = Scenario::new(
            Effect::new(1.0, 0.7, Direction::Z).unwrap(),
            Effect::new(1.0, 0.4, Direction::X).unwrap(),
        );
        assert_abs_diff_eq!(correlator(&s), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn correlator_with_bias_terms() {
        let s = Scenario::new(
            Effect::new(1.5, 0.4, Direction::Z).unwrap(),
            Effect::new(0.5, 0.4, Direction::Z).unwrap(),
        );
        assert_abs_diff_eq!(correlator(&s), -0.41, epsilon = 1e-15);
        assert_abs_diff_eq!(correlator_closed_form(&s), -0.41, epsilon = 1e-15);
    }

    #[test]
    fn correlator_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let s = random_scenario(&mut rng);
            assert_abs_diff_eq!(correlator(&s), correlator_closed_form(&s), epsilon = 1e-12);
        }
    }

    /// Standard optimal coplanar setting: Alice along z and x, Bob along
    /// the two diagonals.
    pub(crate) fn optimal_setting(mu: f64) -> ChshSetting {
        let diag_p = Direction::new(1.0, 0.0, 1.0).unwrap();
        let diag_m = Direction::new(-1.0, 0.0, 1.0).unwrap();
        ChshSetting {
            alice0: Effect::new(1.0, mu, Direction::Z).unwrap(),
            alice1: Effect::new(1.0, mu, Direction::X).unwrap(),
            bob0: Effect::new(1.0, mu, diag_p).unwrap(),
            bob1: Effect::new(1.0, mu, diag_m).unwrap(),
        }
    }

    #[test]
    fn chsh_at_optimal_projective_directions() {
        assert_abs_diff_eq!(chsh_value(&optimal_setting(1.0)), -2.0 * SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn chsh_vanishes_for_trivial_observables() {
        let c = ChshSetting {
            alice0: Effect::new(1.0, 0.0, Direction::Z).unwrap(),
            alice1: Effect::new(1.0, 0.0, Direction::X).unwrap(),
            bob0: Effect::new(1.0, 0.0, Direction::Y).unwrap(),
            bob1: Effect::new(1.0, 0.0, Direction::Z).unwrap(),
        };
        assert_abs_diff_eq!(chsh_value(&c), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn chsh_scales_with_unsharpness_product() {
        // The unsharpness product muA*muB = 1/2 scales every correlator,
        // so the optimum scales from -2 sqrt(2) to -sqrt(2).
        let scaled = FRAC_1_SQRT_2 * FRAC_1_SQRT_2 * chsh_value(&optimal_setting(1.0));
        assert_abs_diff_eq!(scaled, -SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(
            chsh_value(&optimal_setting(FRAC_1_SQRT_2)),
            scaled,
            epsilon = 1e-12
        );
    }

    #[test]
    fn joint_normalization_and_no_signaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10_000 {
            let s = random_scenario(&mut rng);
            let d = singlet_joint(&s);
            assert_abs_diff_eq!(d.sum(), 1.0, epsilon = 1e-12);
            for c in d.cells() {
                assert!((-1e-12..=1.0 + 1e-12).contains(&c), "cell {c} out of range");
            }
            assert_abs_diff_eq!(d.p_yy + d.p_yn, s.alice.a0() / 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(d.p_yy + d.p_ny, s.bob.a0() / 2.0, epsilon = 1e-12);
        }
    }

    /// Rotate a direction about an axis by angle (Rodrigues), test-side helper.
    pub(crate) fn rotate(d: &Direction, axis: &Direction, angle: f64) -> Direction {
        let (s, c) = angle.sin_cos();
        let [x, y, z] = d.components();
        let [ux, uy, uz] = axis.components();
        let dot = ux * x + uy * y + uz * z;
        let cross = [uy * z - uz * y, uz * x - ux * z, ux * y - uy * x];
        Direction::new(
            x * c + cross[0] * s + ux * dot * (1.0 - c),
            y * c + cross[1] * s + uy * dot * (1.0 - c),
            z * c + cross[2] * s + uz * dot * (1.0 - c),
        )
        .unwrap()
    }

    #[test]
    fn joint_distribution_is_rotation_covariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..500 {
            let s = random_scenario(&mut rng);
            let axis = random_direction(&mut rng);
            let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let rotated = Scenario::new(
                Effect::new(s.alice.a0(), s.alice.mu(), rotate(&s.alice.dir(), &axis, angle))
                    .unwrap(),
                Effect::new(s.bob.a0(), s.bob.mu(), rotate(&s.bob.dir(), &axis, angle)).unwrap(),
            );
            let diff = singlet_joint(&s).max_abs_diff(&singlet_joint(&rotated));
            assert!(diff < 1e-12, "rotation changed the distribution by {diff}");
        }
    }
}
