//! Geometry of the restriction regions and the percentage measure built
//! on it.
//!
//! A model restricts a party's observables to the sub-triangle
//! `mu <= c * min(t0, 2 - t0)` of the full parameter triangle. Under the
//! uniform distribution over the triangle the restriction is quantified by
//! the excluded area fraction, in percent.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("slope cap must be finite and nonnegative, got {cap}")]
    InvalidSlopeCap { cap: f64 },
    #[error("invalid sweep range: need 0 < kappa_min <= kappa_max and steps >= 2 (got [{kappa_min}, {kappa_max}], {steps} steps)")]
    InvalidRange {
        kappa_min: f64,
        kappa_max: f64,
        steps: usize,
    },
}

/// The sub-region `{(t0, mu): 0 <= t0 <= 2, mu <= c min(t0, 2-t0),
/// mu <= min(t0, 2-t0)}` of the parameter triangle, described by the slope
/// cap `c`. Caps at or above 1 leave the triangle unrestricted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec {
    slope_cap: f64,
}

impl RegionSpec {
    pub fn new(slope_cap: f64) -> Result<Self, AnalysisError> {
        if !slope_cap.is_finite() || slope_cap < 0.0 {
            return Err(AnalysisError::InvalidSlopeCap { cap: slope_cap });
        }
        Ok(RegionSpec { slope_cap })
    }

    pub fn slope_cap(&self) -> f64 {
        self.slope_cap
    }
}

/// Area of the region relative to the full triangle (whose area is 1 in
/// these coordinates): a triangle with base 2 and apex height `min(c, 1)`,
/// hence `min(c, 1)`.
pub fn region_area(r: &RegionSpec) -> f64 {
    r.slope_cap.min(1.0)
}

/// Percentage of the parameter triangle excluded by the region:
/// `(1 - area ratio) * 100`.
pub fn restriction_measure(r: &RegionSpec) -> f64 {
    (1.0 - region_area(r)) * 100.0
}

/// One row of a kappa sweep: the restriction percentages both parties face
/// under the kappa-family model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub kappa: f64,
    pub r_alice_pct: f64,
    pub r_bob_pct: f64,
}

impl SweepRow {
    /// Evaluates both restriction curves at `kappa`: Alice's cap is `kappa`
    /// itself, Bob's is `1/(2 kappa)`.
    pub fn at(kappa: f64) -> SweepRow {
        let alice = RegionSpec::new(kappa).expect("kappa validated by caller");
        let bob = RegionSpec::new(1.0 / (2.0 * kappa)).expect("positive kappa");
        SweepRow {
            kappa,
            r_alice_pct: restriction_measure(&alice),
            r_bob_pct: restriction_measure(&bob),
        }
    }
}

/// Restriction percentages on a uniform kappa grid, endpoints included.
/// A collapsed range (`kappa_min == kappa_max`) yields a single row.
pub fn kappa_sweep(
    kappa_min: f64,
    kappa_max: f64,
    steps: usize,
) -> Result<Vec<SweepRow>, AnalysisError> {
    let invalid = AnalysisError::InvalidRange {
        kappa_min,
        kappa_max,
        steps,
    };
    if !kappa_min.is_finite() || !kappa_max.is_finite() || kappa_min <= 0.0 || kappa_min > kappa_max
    {
        return Err(invalid);
    }
    if steps < 2 {
        return Err(invalid);
    }
    if kappa_min == kappa_max {
        return Ok(vec![SweepRow::at(kappa_min)]);
    }
    let step = (kappa_max - kappa_min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let kappa = if i == steps - 1 {
                kappa_max
            } else {
                kappa_min + i as f64 * step
            };
            SweepRow::at(kappa)
        })
        .collect())
}

/// Locates the crossing of the two restriction curves by bisection on
/// their difference. Returns `None` when the difference does not change
/// sign over `[kappa_lo, kappa_hi]`.
pub fn restriction_crossing(kappa_lo: f64, kappa_hi: f64, tol: f64) -> Option<f64> {
    let diff = |k: f64| {
        let row = SweepRow::at(k);
        row.r_alice_pct - row.r_bob_pct
    };
    let (mut lo, mut hi) = (kappa_lo, kappa_hi);
    let (d_lo, d_hi) = (diff(lo), diff(hi));
    if d_lo == 0.0 {
        return Some(lo);
    }
    if d_hi == 0.0 {
        return Some(hi);
    }
    if d_lo.signum() == d_hi.signum() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let d_mid = diff(mid);
        if d_mid == 0.0 {
            return Some(mid);
        }
        if d_mid.signum() == d_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
