//! Skid damping classification and the self-stabilisation speed boundary.
//!
//! A skid damps itself when the yaw angular acceleration is non-positive.
//! `V_stab` is the speed at which `eps_z(V_X1)` changes sign; it is located
//! by scanning the bracket and bisecting the first sign change.

use rayon::prelude::*;

use crate::error::{Result, SkidError};
use crate::model::yaw_angular_acceleration;
use crate::params::{Environment, MotionState, VehicleParams};

/// Uniform samples taken across the bracket before bisection.
pub const SCAN_POINTS: usize = 64;
/// Bisection stops once the bracket is narrower than this, m/s.
pub const SPEED_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityVerdict {
    pub eps_z: f64,
    /// `eps_z <= 0`.
    pub damping: bool,
}

pub fn classify(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
) -> Result<StabilityVerdict> {
    let eps_z = yaw_angular_acceleration(state, params, env)?;
    Ok(StabilityVerdict {
        eps_z,
        damping: eps_z <= 0.0,
    })
}

/// Result of a search for `V_stab` on a speed bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VStab {
    /// `eps_z` changes sign at `v_stab`; `bracket` is the final bisection
    /// interval, which still straddles the sign change.
    Crossing {
        v_stab: f64,
        bracket: (f64, f64),
        multi_root: bool,
    },
    /// Damping at every sampled speed; reported as the upper bracket end.
    StableThroughout { v_hi: f64 },
    /// Diverging at every sampled speed.
    NotBracketed,
}

impl VStab {
    pub fn v_stab(&self) -> Option<f64> {
        match *self {
            VStab::Crossing { v_stab, .. } => Some(v_stab),
            VStab::StableThroughout { v_hi } => Some(v_hi),
            VStab::NotBracketed => None,
        }
    }
}

/// Skid conditions held fixed while the speed varies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkidOnset {
    pub omega_z: f64,
    pub delta_1: f64,
    pub gamma_b: f64,
}

impl SkidOnset {
    fn at_speed(&self, v_x1: f64) -> MotionState {
        MotionState {
            v_x1,
            omega_z: self.omega_z,
            delta_1: self.delta_1,
            gamma_b: self.gamma_b,
            s_x: 0.0,
        }
    }
}

fn scan(eval: &impl Fn(f64) -> Result<f64>, v_lo: f64, v_hi: f64) -> Result<Vec<(f64, f64)>> {
    let step = (v_hi - v_lo) / (SCAN_POINTS - 1) as f64;
    let mut samples = Vec::with_capacity(SCAN_POINTS);
    for i in 0..SCAN_POINTS {
        let v = if i + 1 == SCAN_POINTS {
            v_hi
        } else {
            v_lo + i as f64 * step
        };
        match eval(v) {
            Ok(e) => samples.push((v, e)),
            Err(err) if err.is_singular() => {
                // retry once half a step towards the interior
                let nudged = if i + 1 == SCAN_POINTS {
                    v - step / 2.0
                } else {
                    v + step / 2.0
                };
                match eval(nudged) {
                    Ok(e) => samples.push((nudged, e)),
                    Err(_) => return Err(SkidError::SingularInBracket(v)),
                }
            }
            Err(err) => return Err(err),
        }
    }
    Ok(samples)
}

fn bisect(
    eval: &impl Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    lo_damping: bool,
) -> Result<(f64, f64)> {
    while hi - lo > SPEED_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let e = eval(mid).map_err(|err| {
            if err.is_singular() {
                SkidError::SingularInBracket(mid)
            } else {
                err
            }
        })?;
        if (e <= 0.0) == lo_damping {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Locates the speed at which the skid stops damping itself.
pub fn find_v_stab(
    params: &VehicleParams,
    env: &Environment,
    onset: SkidOnset,
    bracket: (f64, f64),
) -> Result<VStab> {
    let (v_lo, v_hi) = bracket;
    if !(v_lo > 0.0 && v_hi > v_lo && v_hi.is_finite()) {
        return Err(SkidError::state(
            "V_X1",
            format!("invalid speed bracket [{v_lo}, {v_hi}]"),
        ));
    }
    let eval = |v: f64| yaw_angular_acceleration(&onset.at_speed(v), params, env);
    let samples = scan(&eval, v_lo, v_hi)?;

    let flips: Vec<usize> = samples
        .windows(2)
        .enumerate()
        .filter(|(_, w)| (w[0].1 <= 0.0) != (w[1].1 <= 0.0))
        .map(|(i, _)| i)
        .collect();

    let Some(&first) = flips.first() else {
        return Ok(if samples[0].1 <= 0.0 {
            VStab::StableThroughout { v_hi }
        } else {
            VStab::NotBracketed
        });
    };
    let (lo, hi) = (samples[first].0, samples[first + 1].0);
    let (lo, hi) = bisect(&eval, lo, hi, samples[first].1 <= 0.0)?;
    Ok(VStab::Crossing {
        v_stab: 0.5 * (lo + hi),
        bracket: (lo, hi),
        multi_root: flips.len() > 1,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeRow {
    pub delta_1: f64,
    pub outcome: Result<VStab>,
    /// Set when this row reverses the direction of change of `V_stab`
    /// relative to the preceding rows.
    pub non_monotone: bool,
}

/// `V_stab` for each slip angle in `deltas`, in input order.
pub fn stability_envelope(
    params: &VehicleParams,
    env: &Environment,
    omega_z: f64,
    deltas: &[f64],
    gamma_b: f64,
    bracket: (f64, f64),
) -> Vec<EnvelopeRow> {
    let outcomes: Vec<Result<VStab>> = deltas
        .par_iter()
        .map(|&delta_1| {
            find_v_stab(
                params,
                env,
                SkidOnset {
                    omega_z,
                    delta_1,
                    gamma_b,
                },
                bracket,
            )
        })
        .collect();

    let mut rows = Vec::with_capacity(deltas.len());
    let mut prev: Option<f64> = None;
    let mut direction = 0.0f64;
    for (&delta_1, outcome) in deltas.iter().zip(outcomes) {
        let mut non_monotone = false;
        if let Some(v) = outcome.as_ref().ok().and_then(VStab::v_stab) {
            if let Some(p) = prev {
                let d = (v - p).signum() * ((v - p).abs() > SPEED_TOL) as i32 as f64;
                if d != 0.0 {
                    if direction != 0.0 && d != direction {
                        non_monotone = true;
                    }
                    direction = d;
                }
            }
            prev = Some(v);
        }
        rows.push(EnvelopeRow {
            delta_1,
            outcome,
            non_monotone,
        });
    }
    rows
}
