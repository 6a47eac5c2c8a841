//! Self-checks of a configured model: parameter invariants, agreement of the
//! closed form with the independent balance solve, and the residuals of the
//! force balances it is derived from.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SkidError;
use crate::model::{
    accel_components, body_accelerations, compose_body_accelerations, course_angle,
    default_rolling_resistance, front_lateral_reaction, lateral_residual, longitudinal_residual,
    rear_traction_reaction, yaw_angular_acceleration,
};
use crate::oracle::yaw_accel_oracle;
use crate::params::{Environment, MotionState, VehicleParams};

pub const ORACLE_TOL: f64 = 1e-9;
pub const SUBSTITUTION_TOL: f64 = 1e-10;
pub const CONSISTENCY_TOL: f64 = 1e-8;

/// Sampling box for randomized checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateBox {
    pub v_x1: (f64, f64),
    pub omega_z: (f64, f64),
    pub delta_1: (f64, f64),
    pub gamma_b: (f64, f64),
    pub phi: (f64, f64),
}

impl Default for StateBox {
    fn default() -> Self {
        Self {
            v_x1: (0.5, 35.0),
            omega_z: (0.01, 0.5),
            delta_1: (0.0, 0.15),
            gamma_b: (0.0, 0.3),
            phi: (0.05, 0.9),
        }
    }
}

/// A state together with the grip coefficient it is evaluated at.
pub type Sample = (MotionState, f64);

pub fn random_states(bounds: &StateBox, seed: u64, n: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |(lo, hi): (f64, f64)| if hi > lo { rng.gen_range(lo..=hi) } else { lo };
    (0..n)
        .map(|_| {
            let state = MotionState {
                v_x1: draw(bounds.v_x1),
                omega_z: draw(bounds.omega_z),
                delta_1: draw(bounds.delta_1),
                gamma_b: draw(bounds.gamma_b),
                s_x: 0.0,
            };
            (state, draw(bounds.phi))
        })
        .collect()
}

/// Worst-case error over a sample set; singular samples are counted, not scored.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorStats {
    pub max_error: f64,
    pub evaluated: usize,
    pub singular: usize,
}

impl ErrorStats {
    fn record(&mut self, err: f64) {
        self.evaluated += 1;
        if err > self.max_error || err.is_nan() {
            self.max_error = err;
        }
    }
}

fn fold<F>(samples: &[Sample], params: &VehicleParams, env: &Environment, f: F) -> ErrorStats
where
    F: Fn(&MotionState, &Environment) -> Result<f64, SkidError>,
{
    let mut stats = ErrorStats::default();
    for (state, phi) in samples {
        let env = env.with_phi(*phi);
        match f(state, &env) {
            Ok(err) => stats.record(err),
            Err(e) if e.is_singular() => stats.singular += 1,
            Err(_) => stats.record(f64::NAN),
        }
    }
    let _ = params;
    stats
}

/// `|oracle - closed| / max(1, |closed|)`.
pub fn oracle_equivalence(
    samples: &[Sample],
    params: &VehicleParams,
    env: &Environment,
) -> ErrorStats {
    fold(samples, params, env, |s, env| {
        let closed = yaw_angular_acceleration(s, params, env)?;
        let oracle = yaw_accel_oracle(s, params, env)?;
        Ok((oracle - closed).abs() / closed.abs().max(1.0))
    })
}

/// Body accelerations with the course angle eliminated versus their
/// composition from normal/tangential components, relative to the larger
/// component.
pub fn substitution_identity(
    samples: &[Sample],
    params: &VehicleParams,
    env: &Environment,
) -> ErrorStats {
    fold(samples, params, env, |s, env| {
        let eps = yaw_angular_acceleration(s, params, env)?;
        let direct = body_accelerations(s, params, eps)?;
        let (n, t) = accel_components(s, params, eps)?;
        let composed = compose_body_accelerations(n, t, course_angle(s, params)?);
        let scale = n.abs().max(t.abs()).max(f64::MIN_POSITIVE);
        Ok((direct.ax - composed.ax)
            .abs()
            .max((direct.ay - composed.ay).abs())
            / scale)
    })
}

/// Lateral force balance residual after back-computing the front reaction
/// from the yaw balance, relative to the largest term.
pub fn system_consistency(
    samples: &[Sample],
    params: &VehicleParams,
    env: &Environment,
) -> ErrorStats {
    fold(samples, params, env, |s, env| {
        let eps = yaw_angular_acceleration(s, params, env)?;
        let r_d = front_lateral_reaction(s, params, env, eps)?;
        let residual = lateral_residual(s, params, env, eps, r_d)?;
        let accel = body_accelerations(s, params, eps)?;
        let r_b = rear_traction_reaction(s, params, env, eps)?;
        let m = params.m_a;
        let terms = [
            m * params.a * eps,
            m * eps * s.v_x1 / s.omega_z * s.delta_1.tan(),
            m * s.omega_z * s.v_x1,
            m * accel.ay,
            r_d * s.delta_1.cos(),
            r_b * s.gamma_b.cos(),
        ];
        let scale = terms
            .iter()
            .fold(f64::MIN_POSITIVE, |acc, t| acc.max(t.abs()));
        Ok(residual.abs() / scale)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    /// Reported value with no threshold.
    Info,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub checks: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

fn invariant_name(symbol: &str) -> &'static str {
    match symbol {
        "L" | "a" | "b" => "wheelbase invariant (L = a + b)",
        "I_zc" | "i_z" => "inertia invariant (I_zc = m_a i_z^2)",
        "h" | "r_o" => "lever arm (h > r_o >= 0)",
        "kF" => "drag consistency (kF = c_X rho / 2 F)",
        _ => "parameter bounds",
    }
}

const INVARIANTS: [&str; 5] = [
    "wheelbase invariant (L = a + b)",
    "inertia invariant (I_zc = m_a i_z^2)",
    "lever arm (h > r_o >= 0)",
    "drag consistency (kF = c_X rho / 2 F)",
    "parameter bounds",
];

type StatFn = fn(&[Sample], &VehicleParams, &Environment) -> ErrorStats;

/// Runs every check over `n` randomized states drawn with `seed`.
pub fn run_checks(params: &VehicleParams, env: &Environment, seed: u64, n: usize) -> CheckReport {
    let mut violations = params.violations();
    if let Err(e) = params.check_drag_consistency(env.rho) {
        violations.push(e);
    }
    if let Err(e) = env.validate() {
        violations.push(e);
    }

    let mut report = CheckReport::default();
    for name in INVARIANTS {
        let failed: Vec<String> = violations
            .iter()
            .filter_map(|v| match v {
                SkidError::InvalidParams { symbol, .. } if invariant_name(symbol) == name => {
                    Some(v.to_string())
                }
                _ => None,
            })
            .collect();
        report.checks.push(CheckOutcome {
            name,
            status: if failed.is_empty() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: if failed.is_empty() {
                "ok".into()
            } else {
                failed.join("; ")
            },
        });
    }

    let numeric: [(&'static str, f64, StatFn); 3] = [
        ("oracle equivalence", ORACLE_TOL, oracle_equivalence),
        (
            "substitution identity",
            SUBSTITUTION_TOL,
            substitution_identity,
        ),
        ("system consistency", CONSISTENCY_TOL, system_consistency),
    ];
    if !violations.is_empty() {
        for (name, _, _) in numeric {
            report.checks.push(CheckOutcome {
                name,
                status: CheckStatus::Skipped,
                detail: "parameters invalid".into(),
            });
        }
        return report;
    }

    let samples = random_states(&StateBox::default(), seed, n);
    for (name, tol, check) in numeric {
        let stats = check(&samples, params, env);
        let ok = stats.evaluated > 0 && stats.max_error <= tol;
        report.checks.push(CheckOutcome {
            name,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: format!(
                "max error {:.3e} (tolerance {tol:e}) over {} states, {} singular",
                stats.max_error, stats.evaluated, stats.singular
            ),
        });
    }

    let probe = MotionState::new(10.0, 0.1, 0.05);
    let detail = (|| -> Result<String, SkidError> {
        let eps = yaw_angular_acceleration(&probe, params, env)?;
        let r_d = front_lateral_reaction(&probe, params, env, eps)?;
        let accel = body_accelerations(&probe, params, eps)?;
        let r_z2 = crate::model::rear_vertical_reaction(&probe, params, env, accel.ax);
        let p_f1 = default_rolling_resistance(params, env, r_z2);
        let res = longitudinal_residual(&probe, params, env, eps, p_f1, r_d)?;
        Ok(format!("{res:.6e} N at V_X1 = 10 m/s, omega_z = 0.1 rad/s, delta_1 = 0.05 rad (P_f1 = {p_f1:.6e} N)"))
    })()
    .unwrap_or_else(|e| format!("not evaluable: {e}"));
    report.checks.push(CheckOutcome {
        name: "longitudinal residual",
        status: CheckStatus::Info,
        detail,
    });
    report
}
