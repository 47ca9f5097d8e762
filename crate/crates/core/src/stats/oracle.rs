//! Matrix-trace oracle for the singlet joint distribution.
//!
//! Builds the explicit 2x2 effect operators and the 4x4 singlet density
//! matrix and evaluates `Tr[rho (F_A (x) F_B)]` for the four outcome pairs.
//! This route shares no arithmetic with the closed form in the parent
//! module and serves as its independent check.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use super::{JointDistribution, Scenario};
use crate::povm::Effect;

type M2 = Matrix2<Complex64>;
type M4 = Matrix4<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn identity2() -> M2 {
    M2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
}

fn sigma_x() -> M2 {
    M2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}

fn sigma_y() -> M2 {
    M2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0))
}

fn sigma_z() -> M2 {
    M2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0))
}

/// `E = [a0 I + mu (dx sx + dy sy + dz sz)] / 2` as an explicit matrix.
fn effect_matrix(e: &Effect) -> M2 {
    let [dx, dy, dz] = e.dir().components();
    let spin = sigma_x() * c(dx, 0.0) + sigma_y() * c(dy, 0.0) + sigma_z() * c(dz, 0.0);
    (identity2() * c(e.a0(), 0.0) + spin * c(e.mu(), 0.0)) * c(0.5, 0.0)
}

/// The singlet density matrix `[I(x)I - sx(x)sx - sy(x)sy - sz(x)sz] / 4`.
fn singlet_density() -> M4 {
    let i2 = identity2();
    let rho = i2.kronecker(&i2)
        - sigma_x().kronecker(&sigma_x())
        - sigma_y().kronecker(&sigma_y())
        - sigma_z().kronecker(&sigma_z());
    rho * c(0.25, 0.0)
}

/// Joint distribution via `Tr[rho (F_A (x) F_B)]` with `F` ranging over the
/// effect and its complement on each side. Agrees with
/// [`singlet_joint`](super::singlet_joint) to 1e-12 on valid scenarios.
pub fn singlet_joint_oracle(s: &Scenario) -> JointDistribution {
    let ea = effect_matrix(&s.alice);
    let eb = effect_matrix(&s.bob);
    let na = identity2() - ea;
    let nb = identity2() - eb;
    let rho = singlet_density();
    let prob = |fa: &M2, fb: &M2| (rho * fa.kronecker(fb)).trace().re;
    JointDistribution {
        p_yy: prob(&ea, &eb),
        p_yn: prob(&ea, &nb),
        p_ny: prob(&na, &eb),
        p_nn: prob(&na, &nb),
    }
}
