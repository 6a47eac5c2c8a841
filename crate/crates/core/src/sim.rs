//! Fixed-step RK4 integration of a developing skid.
//!
//! The yaw rate evolves with the closed-form yaw acceleration and the body
//! speed with the longitudinal body acceleration at that same `eps_z`. Slip
//! angle, rear reaction direction and wheel slip stay at their initial
//! values. Position is a visualisation aid: speed `V_X1` along heading `psi`.

use crate::error::{Result, SkidError};
use crate::model::{body_accelerations, rear_vertical_reaction, yaw_angular_acceleration};
use crate::params::{Environment, MotionState, VehicleParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Stop once the yaw rate crosses zero.
    pub stop_on_damped: bool,
    pub record_every: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_end: 5.0,
            stop_on_damped: true,
            record_every: 1,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(SkidError::params(
                "dt",
                format!("time step must be positive, got {}", self.dt),
            ));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(SkidError::params(
                "t_end",
                format!("end time must be positive, got {}", self.t_end),
            ));
        }
        if self.record_every == 0 {
            return Err(SkidError::params("record_every", "must be at least 1"));
        }
        Ok(())
    }

    /// Number of steps; `t_end` is rounded to a whole number of steps.
    pub fn steps(&self) -> usize {
        ((self.t_end / self.dt).round() as usize).max(1)
    }
}

/// Integrated quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub omega_z: f64,
    pub v_x1: f64,
    /// Heading, rad.
    pub psi: f64,
    pub x: f64,
    pub y: f64,
}

/// Time derivatives of yaw rate and body speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rates {
    pub d_omega_z: f64,
    pub d_v_x1: f64,
}

pub fn derivative(state: &MotionState, params: &VehicleParams, env: &Environment) -> Result<Rates> {
    let eps_z = yaw_angular_acceleration(state, params, env)?;
    let accel = body_accelerations(state, params, eps_z)?;
    Ok(Rates {
        d_omega_z: eps_z,
        d_v_x1: accel.ax,
    })
}

#[derive(Clone, Copy)]
struct Slope([f64; 5]);

fn full_slope(omega_z: f64, v_x1: f64, psi: f64, rates: Rates) -> Slope {
    Slope([
        rates.d_omega_z,
        rates.d_v_x1,
        omega_z,
        v_x1 * psi.cos(),
        v_x1 * psi.sin(),
    ])
}

fn offset(s: &SimState, k: &Slope, h: f64) -> [f64; 5] {
    [
        s.omega_z + h * k.0[0],
        s.v_x1 + h * k.0[1],
        s.psi + h * k.0[2],
        s.x + h * k.0[3],
        s.y + h * k.0[4],
    ]
}

/// One classical RK4 step of size `dt`. `rates` maps `(omega_z, v_x1)` to
/// their derivatives.
pub fn step_rk4<F>(state: &SimState, dt: f64, rates: F) -> Result<SimState>
where
    F: Fn(f64, f64) -> Result<Rates>,
{
    let stage =
        |y: [f64; 5]| -> Result<Slope> { Ok(full_slope(y[0], y[1], y[2], rates(y[0], y[1])?)) };
    let k1 = stage([state.omega_z, state.v_x1, state.psi, state.x, state.y])?;
    let k2 = stage(offset(state, &k1, dt / 2.0))?;
    let k3 = stage(offset(state, &k2, dt / 2.0))?;
    let k4 = stage(offset(state, &k3, dt))?;
    let mut next = [0.0; 5];
    let current = [state.omega_z, state.v_x1, state.psi, state.x, state.y];
    for i in 0..5 {
        next[i] = current[i] + dt / 6.0 * (k1.0[i] + 2.0 * k2.0[i] + 2.0 * k3.0[i] + k4.0[i]);
    }
    Ok(SimState {
        t: state.t + dt,
        omega_z: next[0],
        v_x1: next[1],
        psi: next[2],
        x: next[3],
        y: next[4],
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub omega_z: f64,
    pub v_x1: f64,
    pub psi: f64,
    pub x: f64,
    pub y: f64,
    pub eps_z: f64,
    /// Lateral body acceleration, recorded but not integrated.
    pub ay_body: f64,
    pub r_b: f64,
    pub r_z2: f64,
    pub damping: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    TimeEnd,
    /// The yaw rate crossed zero at `t_cross`, found by linear interpolation
    /// between the bracketing steps.
    SkidDamped {
        t_cross: f64,
    },
    /// A model evaluation became singular; the last good state is kept.
    Singular {
        t: f64,
        error: SkidError,
    },
}

impl Termination {
    pub fn label(&self) -> &'static str {
        match self {
            Termination::TimeEnd => "TimeEnd",
            Termination::SkidDamped { .. } => "SkidDamped",
            Termination::Singular { .. } => "Singular",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub rows: Vec<TrajectoryRow>,
    pub termination: Termination,
    pub final_state: SimState,
}

fn observe(
    s: &SimState,
    base: &MotionState,
    params: &VehicleParams,
    env: &Environment,
) -> Result<TrajectoryRow> {
    let state = MotionState {
        v_x1: s.v_x1,
        omega_z: s.omega_z,
        ..*base
    };
    let eps_z = yaw_angular_acceleration(&state, params, env)?;
    let accel = body_accelerations(&state, params, eps_z)?;
    let r_z2 = rear_vertical_reaction(&state, params, env, accel.ax);
    Ok(TrajectoryRow {
        t: s.t,
        omega_z: s.omega_z,
        v_x1: s.v_x1,
        psi: s.psi,
        x: s.x,
        y: s.y,
        eps_z,
        ay_body: accel.ay,
        r_b: env.phi * r_z2,
        r_z2,
        damping: eps_z <= 0.0,
    })
}

fn crossing_from_rates<F>(
    current: &SimState,
    row: &TrajectoryRow,
    dt: f64,
    rates: &F,
) -> Option<SimResult>
where
    F: Fn(f64, f64) -> Result<Rates>,
{
    let eps = row.eps_z;
    if current.omega_z * eps >= 0.0 {
        return None;
    }
    let tau = -current.omega_z / eps;
    if tau > dt {
        return None;
    }
    let d = rates(current.omega_z, current.v_x1).ok()?;
    let (sin_p, cos_p) = current.psi.sin_cos();
    let t_cross = current.t + tau;
    Some(SimResult {
        rows: Vec::new(),
        termination: Termination::SkidDamped { t_cross },
        final_state: SimState {
            t: t_cross,
            omega_z: 0.0,
            v_x1: (current.v_x1 + tau * d.d_v_x1).max(0.0),
            psi: current.psi + tau * current.omega_z,
            x: current.x + tau * current.v_x1 * cos_p,
            y: current.y + tau * current.v_x1 * sin_p,
        },
    })
}

/// Integrates from `initial` until `t_end`, a yaw-rate zero crossing (when
/// enabled) or a singular evaluation.
pub fn simulate(
    initial: &MotionState,
    params: &VehicleParams,
    env: &Environment,
    config: &SimConfig,
) -> Result<SimResult> {
    config.validate()?;
    initial.validate()?;
    let mut current = SimState {
        t: 0.0,
        omega_z: initial.omega_z,
        v_x1: initial.v_x1,
        psi: 0.0,
        x: 0.0,
        y: 0.0,
    };
    let first = observe(&current, initial, params, env)?;
    let mut rows = vec![first];
    let mut last_row = first;
    let mut last_recorded = true;

    let rates = |omega_z: f64, v_x1: f64| {
        derivative(
            &MotionState {
                omega_z,
                v_x1,
                ..*initial
            },
            params,
            env,
        )
    };
    let initial_sign = initial.omega_z.signum();
    let steps = config.steps();

    for k in 1..=steps {
        let mut next = match step_rk4(&current, config.dt, rates) {
            Ok(next) => next,
            Err(error) => {
                // Below the stability boundary yaw rate and speed reach zero
                // together, so the stages of the crossing step can leave the
                // model's domain. Locate the crossing from the last good state.
                if config.stop_on_damped {
                    if let Some(result) =
                        crossing_from_rates(&current, &last_row, config.dt, &rates)
                    {
                        if !last_recorded {
                            rows.push(last_row);
                        }
                        return Ok(SimResult { rows, ..result });
                    }
                }
                if !last_recorded {
                    rows.push(last_row);
                }
                return Ok(SimResult {
                    rows,
                    termination: Termination::Singular {
                        t: current.t,
                        error,
                    },
                    final_state: current,
                });
            }
        };
        next.t = k as f64 * config.dt;

        if ![next.omega_z, next.v_x1, next.psi, next.x, next.y]
            .iter()
            .all(|v| v.is_finite())
        {
            if !last_recorded {
                rows.push(last_row);
            }
            return Ok(SimResult {
                rows,
                termination: Termination::Singular {
                    t: next.t,
                    error: SkidError::state("omega_z", "integration produced a non-finite state"),
                },
                final_state: current,
            });
        }

        if config.stop_on_damped && (next.omega_z == 0.0 || next.omega_z.signum() != initial_sign) {
            let frac = current.omega_z / (current.omega_z - next.omega_z);
            let lerp = |a: f64, b: f64| a + frac * (b - a);
            let t_cross = lerp(current.t, next.t);
            if !last_recorded {
                rows.push(last_row);
            }
            return Ok(SimResult {
                rows,
                termination: Termination::SkidDamped { t_cross },
                final_state: SimState {
                    t: t_cross,
                    omega_z: 0.0,
                    v_x1: lerp(current.v_x1, next.v_x1),
                    psi: lerp(current.psi, next.psi),
                    x: lerp(current.x, next.x),
                    y: lerp(current.y, next.y),
                },
            });
        }

        let row = match observe(&next, initial, params, env) {
            Ok(row) => row,
            Err(error) => {
                if !last_recorded {
                    rows.push(last_row);
                }
                return Ok(SimResult {
                    rows,
                    termination: Termination::Singular { t: next.t, error },
                    final_state: current,
                });
            }
        };
        last_recorded = k % config.record_every == 0 || k == steps;
        if last_recorded {
            rows.push(row);
        }
        last_row = row;
        current = next;
    }

    Ok(SimResult {
        rows,
        termination: Termination::TimeEnd,
        final_state: current,
    })
}
