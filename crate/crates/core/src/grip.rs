//! Grip coefficient as a function of drive-wheel slip.
//!
//! The skid model only needs a grip coefficient; these laws map a relative
//! slip `S_x` onto one so slip can be swept directly.

use crate::error::{Result, SkidError};
use crate::params::DEFAULT_PHI_MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GripModel {
    /// Slip-independent grip.
    Constant { phi: f64 },
    /// `phi_max * min(S / s_crit, 1)`.
    LinearSaturating { phi_max: f64, s_crit: f64 },
    /// `c1 (1 - exp(-c2 S)) - c3 S`.
    Burckhardt { c1: f64, c2: f64, c3: f64 },
}

impl GripModel {
    /// Burckhardt coefficients for dry asphalt.
    pub const DRY_ASPHALT: GripModel = GripModel::Burckhardt {
        c1: 1.2801,
        c2: 23.99,
        c3: 0.52,
    };

    pub fn validate(&self) -> Result<()> {
        match *self {
            GripModel::Constant { phi } => {
                if !(0.0..=DEFAULT_PHI_MAX).contains(&phi) {
                    return Err(SkidError::params(
                        "phi",
                        format!("constant grip {phi} outside [0, 1.5]"),
                    ));
                }
            }
            GripModel::LinearSaturating { phi_max, s_crit } => {
                if !(0.0..=DEFAULT_PHI_MAX).contains(&phi_max) {
                    return Err(SkidError::params(
                        "phi_max",
                        format!("{phi_max} outside [0, 1.5]"),
                    ));
                }
                if !(s_crit > 0.0 && s_crit <= 1.0) {
                    return Err(SkidError::params(
                        "s_crit",
                        format!("{s_crit} outside (0, 1]"),
                    ));
                }
            }
            GripModel::Burckhardt { c1, c2, c3 } => {
                if !(c1 > 0.0 && c1.is_finite()) {
                    return Err(SkidError::params("c1", "must be positive"));
                }
                if !(c2 > 0.0 && c2.is_finite()) {
                    return Err(SkidError::params("c2", "must be positive"));
                }
                if !(c3 >= 0.0 && c3.is_finite()) {
                    return Err(SkidError::params("c3", "must be non-negative"));
                }
                // concave with phi(0) = 0, so the minimum on [0, 1] is at an end
                let at_full = c1 * (1.0 - (-c2).exp()) - c3;
                if at_full < 0.0 {
                    return Err(SkidError::params(
                        "c3",
                        format!("grip turns negative at full slip ({at_full})"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Grip coefficient at relative slip `s_x` in [0, 1].
    pub fn grip_coefficient(&self, s_x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s_x) {
            return Err(SkidError::InvalidSlip(s_x));
        }
        Ok(match *self {
            GripModel::Constant { phi } => phi,
            GripModel::LinearSaturating { phi_max, s_crit } => phi_max * (s_x / s_crit).min(1.0),
            GripModel::Burckhardt { c1, c2, c3 } => c1 * (1.0 - (-c2 * s_x).exp()) - c3 * s_x,
        })
    }
}

impl Default for GripModel {
    fn default() -> Self {
        GripModel::DRY_ASPHALT
    }
}
