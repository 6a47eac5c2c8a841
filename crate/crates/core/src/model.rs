//! Closed-form planar skid model for a rear-drive vehicle in traction mode.
//!
//! The chain runs from the course angle of the centre of mass through its
//! normal and tangential accelerations, the body-frame accelerations, the
//! rear-axle vertical and traction reactions, to the yaw angular
//! acceleration `eps_z = d(omega_z)/dt`. A skid damps itself when
//! `eps_z <= 0`.

use crate::error::{Result, SkidError};
use crate::params::{Environment, MotionState, VehicleParams};

/// Smallest yaw rate magnitude the model accepts, rad/s. The model divides by
/// `omega_z`; a vanishing yaw rate means there is no skid to describe.
pub const OMEGA_MIN: f64 = 1e-6;
/// Denominator guard, relative to `a^2 + i_z^2`.
pub const D_MIN_REL: f64 = 1e-9;
/// Smallest `|cos Theta_C|` / `|cos delta_1|` treated as non-singular.
pub const COS_MIN: f64 = 1e-9;

fn require_yaw_rate(omega_z: f64) -> Result<()> {
    if omega_z.abs() < OMEGA_MIN || !omega_z.is_finite() {
        Err(SkidError::SingularYawRate(omega_z))
    } else {
        Ok(())
    }
}

/// Angle between the normal acceleration of the centre of mass and the
/// lateral body axis: `tan Theta_C = tan delta_1 + a omega_z / V_X1`.
pub fn course_angle(state: &MotionState, params: &VehicleParams) -> Result<f64> {
    if state.v_x1 == 0.0 {
        return Err(SkidError::DegenerateState);
    }
    state.validate()?;
    Ok((state.delta_1.tan() + params.a * state.omega_z / state.v_x1).atan())
}

/// Normal and tangential accelerations `(a_c^n, a_c^t)` of the centre of mass.
pub fn accel_components(
    state: &MotionState,
    params: &VehicleParams,
    eps_z: f64,
) -> Result<(f64, f64)> {
    require_yaw_rate(state.omega_z)?;
    let theta = course_angle(state, params)?;
    let cos_theta = theta.cos();
    if cos_theta.abs() < COS_MIN {
        return Err(SkidError::SingularCourseAngle(theta));
    }
    let normal = state.omega_z * state.v_x1 / cos_theta;
    let tangential = eps_z * state.v_x1 / (state.omega_z * cos_theta);
    Ok((normal, tangential))
}

/// Body-frame accelerations of the centre of mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyAccel {
    /// Longitudinal, `d^2 x_1 / dt^2`, m/s^2.
    pub ax: f64,
    /// Lateral, `d^2 y_1 / dt^2`, m/s^2.
    pub ay: f64,
}

/// Body-frame accelerations with the course angle eliminated.
pub fn body_accelerations(
    state: &MotionState,
    params: &VehicleParams,
    eps_z: f64,
) -> Result<BodyAccel> {
    require_yaw_rate(state.omega_z)?;
    let MotionState {
        v_x1: v,
        omega_z: w,
        delta_1,
        ..
    } = *state;
    let tan_d = delta_1.tan();
    let a = params.a;
    Ok(BodyAccel {
        ax: a * w * w + w * v * tan_d + eps_z * v / w,
        ay: a * eps_z + eps_z * (v / w) * tan_d - w * v,
    })
}

/// Projects normal/tangential accelerations onto the body axes given the
/// course angle.
pub fn compose_body_accelerations(normal: f64, tangential: f64, theta_c: f64) -> BodyAccel {
    let (sin_t, cos_t) = theta_c.sin_cos();
    BodyAccel {
        ax: normal * sin_t + tangential * cos_t,
        ay: tangential * sin_t - normal * cos_t,
    }
}

/// Aerodynamic forces, N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AeroForces {
    /// Longitudinal drag `kF V^2`.
    pub x: f64,
    /// Lateral force `c_Y rho / 2 F V^2`.
    pub y: f64,
}

/// Aerodynamic drag and side force at body speed `v_x1`.
pub fn aero_forces(v_x1: f64, params: &VehicleParams, env: &Environment) -> AeroForces {
    let v2 = v_x1 * v_x1;
    let area = params.frontal_area.unwrap_or(0.0);
    AeroForces {
        x: params.kf * v2,
        y: params.c_y * env.rho / 2.0 * area * v2,
    }
}

/// Total vertical reaction on the rear axle in traction mode, N.
///
/// A negative value means the rear axle has lifted and the model no longer
/// applies; callers flag it rather than clamp it.
pub fn rear_vertical_reaction(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
    ax_body: f64,
) -> f64 {
    let l = params.wheelbase;
    let p_w = aero_forces(state.v_x1, params, env).x;
    let p_j = params.m_a * ax_body;
    params.m_a * env.g * params.a / l
        + p_w * (params.h_w - params.r_o) / l
        + p_j * (params.h - params.r_o) / l
}

/// Grip-limited traction reaction of the rear axle, `R_B = phi R_z2`, with the
/// longitudinal acceleration taken from `eps_z`.
pub fn rear_traction_reaction(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
    eps_z: f64,
) -> Result<f64> {
    let accel = body_accelerations(state, params, eps_z)?;
    Ok(env.phi * rear_vertical_reaction(state, params, env, accel.ax))
}

/// `Omega = phi cos(gamma_B) (h - r_o)`, m.
pub fn omega_factor(env: &Environment, params: &VehicleParams, gamma_b: f64) -> f64 {
    env.phi * gamma_b.cos() * params.lever_arm()
}

/// Numerator and denominator of the closed-form yaw acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YawFraction {
    pub numerator: f64,
    pub denominator: f64,
}

/// Closed-form numerator and denominator of `eps_z`, before guards.
///
/// The drag term uses the aerodynamic lever arm `h_w - r_o`; with `h_w = h`
/// it reduces to the common `Omega` factor.
pub fn yaw_fraction(state: &MotionState, params: &VehicleParams, env: &Environment) -> YawFraction {
    let MotionState {
        v_x1: v,
        omega_z: w,
        delta_1,
        gamma_b,
        ..
    } = *state;
    let a = params.a;
    let m = params.m_a;
    let tan_d = delta_1.tan();
    let omega = omega_factor(env, params, gamma_b);
    let omega_aero = env.phi * gamma_b.cos() * (params.h_w - params.r_o);
    let p_wy = aero_forces(v, params, env).y;

    let numerator = a * (w * v + p_wy / m)
        - a * env.g * omega / params.lever_arm()
        - (a * w * w + w * v * tan_d) * omega
        - params.kf / m * v * v * omega_aero;
    let denominator = a * a + params.i_z * params.i_z + (v / w) * (a * tan_d + omega);
    YawFraction {
        numerator,
        denominator,
    }
}

fn check_preconditions(state: &MotionState, params: &VehicleParams) -> Result<()> {
    state.validate()?;
    require_yaw_rate(state.omega_z)?;
    if !(params.lever_arm() > 0.0) {
        return Err(SkidError::params("h", "lever arm h - r_o must be positive"));
    }
    Ok(())
}

/// Denominator guard `D_min = 1e-9 (a^2 + i_z^2)`.
pub fn denominator_floor(params: &VehicleParams) -> f64 {
    D_MIN_REL * (params.a * params.a + params.i_z * params.i_z)
}

/// Yaw angular acceleration `eps_z`, rad/s^2.
pub fn yaw_angular_acceleration(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
) -> Result<f64> {
    check_preconditions(state, params)?;
    let frac = yaw_fraction(state, params, env);
    if !(frac.denominator.abs() >= denominator_floor(params)) {
        return Err(SkidError::SingularDenominator(frac.denominator));
    }
    Ok(frac.numerator / frac.denominator)
}

/// Front-axle lateral reaction back-computed from the yaw moment balance.
pub fn front_lateral_reaction(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
    eps_z: f64,
) -> Result<f64> {
    let cos_d = state.delta_1.cos();
    if cos_d.abs() < COS_MIN {
        return Err(SkidError::SingularSlipAngle(cos_d));
    }
    let r_b = rear_traction_reaction(state, params, env, eps_z)?;
    Ok((params.i_zc * eps_z + r_b * params.b * state.gamma_b.cos()) / (params.a * cos_d))
}

/// Lateral force balance residual: `m ay - (-R_d1 cos d1 - R_B cos gB + P_WY1)`, N.
pub fn lateral_residual(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
    eps_z: f64,
    r_delta1: f64,
) -> Result<f64> {
    let accel = body_accelerations(state, params, eps_z)?;
    let r_b = rear_traction_reaction(state, params, env, eps_z)?;
    let p_wy = aero_forces(state.v_x1, params, env).y;
    Ok(
        params.m_a * accel.ay
            - (-r_delta1 * state.delta_1.cos() - r_b * state.gamma_b.cos() + p_wy),
    )
}

/// Default rolling resistance on the front axle, `f_roll (m_a g - R_z2)`, N.
pub fn default_rolling_resistance(params: &VehicleParams, env: &Environment, r_z2: f64) -> f64 {
    params.f_roll * (params.m_a * env.g - r_z2)
}

/// Longitudinal force imbalance `m ax - (-P_f1 + R_d1 sin d1 + R_B sin gB - P_WX1)`, N.
///
/// The yaw acceleration does not constrain `P_f1`, so this is a diagnostic
/// of the longitudinal balance implied by the chosen rolling resistance.
pub fn longitudinal_residual(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
    eps_z: f64,
    p_f1: f64,
    r_delta1: f64,
) -> Result<f64> {
    let accel = body_accelerations(state, params, eps_z)?;
    let r_b = rear_traction_reaction(state, params, env, eps_z)?;
    let p_wx = aero_forces(state.v_x1, params, env).x;
    Ok(params.m_a * accel.ax
        - (-p_f1 + r_delta1 * state.delta_1.sin() + r_b * state.gamma_b.sin() - p_wx))
}

/// Every intermediate quantity of one model evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkidDerived {
    /// Course angle; `None` at `V_X1 = 0` where it is undefined.
    pub theta_c: Option<f64>,
    pub a_c_n: Option<f64>,
    pub a_c_t: Option<f64>,
    pub ax_body: f64,
    pub ay_body: f64,
    pub p_w_x1: f64,
    pub p_w_y1: f64,
    pub p_j: f64,
    pub r_z2: f64,
    pub r_b: f64,
    pub omega_factor: f64,
    pub denominator: f64,
    pub eps_z: f64,
    pub r_delta1: f64,
}

impl SkidDerived {
    /// False when the rear axle is unloaded and the result is outside the
    /// model's domain.
    pub fn load_valid(&self) -> bool {
        self.r_z2 >= 0.0
    }

    pub fn damping(&self) -> bool {
        self.eps_z <= 0.0
    }
}

/// Evaluates the full model at one state.
pub fn evaluate(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
) -> Result<SkidDerived> {
    let eps_z = yaw_angular_acceleration(state, params, env)?;
    let frac = yaw_fraction(state, params, env);
    let accel = body_accelerations(state, params, eps_z)?;
    let aero = aero_forces(state.v_x1, params, env);
    let r_z2 = rear_vertical_reaction(state, params, env, accel.ax);
    let (theta_c, a_c_n, a_c_t) = if state.v_x1 > 0.0 {
        let theta = course_angle(state, params)?;
        let (n, t) = accel_components(state, params, eps_z)?;
        (Some(theta), Some(n), Some(t))
    } else {
        (None, None, None)
    };
    Ok(SkidDerived {
        theta_c,
        a_c_n,
        a_c_t,
        ax_body: accel.ax,
        ay_body: accel.ay,
        p_w_x1: aero.x,
        p_w_y1: aero.y,
        p_j: params.m_a * accel.ax,
        r_z2,
        r_b: env.phi * r_z2,
        omega_factor: omega_factor(env, params, state.gamma_b),
        denominator: frac.denominator,
        eps_z,
        r_delta1: front_lateral_reaction(state, params, env, eps_z)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::yaw_accel_oracle;

    fn base() -> (VehicleParams, Environment) {
        (VehicleParams::baseline(), Environment::baseline())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn course_angle_straight() {
        let (p, _) = base();
        assert_eq!(
            course_angle(&MotionState::new(10.0, 0.0, 0.0), &p).unwrap(),
            0.0
        );
    }

    #[test]
    fn course_angle_values() {
        let (p, _) = base();
        let t = course_angle(&MotionState::new(12.0, 0.1, 0.0), &p).unwrap();
        assert!((t - 0.009_999_666_686_665_238).abs() < 1e-15);
        let t = course_angle(&MotionState::new(5.0, 0.1, 0.05), &p).unwrap();
        assert!((t - (0.05f64.tan() + 0.024).atan()).abs() < 1e-15);
    }

    #[test]
    fn course_angle_zero_speed() {
        let (p, _) = base();
        assert_eq!(
            course_angle(&MotionState::new(0.0, 0.1, 0.0), &p),
            Err(SkidError::DegenerateState)
        );
    }

    #[test]
    fn accel_components_values() {
        let (p, _) = base();
        let (n, t) =
            accel_components(&MotionState::new(10.0, 0.1, -(0.012f64).atan()), &p, 0.0).unwrap();
        assert!((n - 1.0).abs() < 1e-12);
        assert_eq!(t, 0.0);

        // delta_1 chosen so Theta_C = 0.1
        let delta = (0.1f64.tan() - 1.2 * 0.2 / 20.0).atan();
        let s = MotionState::new(20.0, 0.2, delta);
        assert!((course_angle(&s, &p).unwrap() - 0.1).abs() < 1e-14);
        let (n, t) = accel_components(&s, &p, 0.05).unwrap();
        assert!(rel(n, 4.0 / 0.1f64.cos()) < 1e-13);
        assert!(rel(t, 5.0 / 0.1f64.cos()) < 1e-13);
    }

    #[test]
    fn accel_components_singular_yaw() {
        let (p, _) = base();
        assert!(matches!(
            accel_components(&MotionState::new(10.0, 0.0, 0.0), &p, 0.0),
            Err(SkidError::SingularYawRate(_))
        ));
    }

    #[test]
    fn body_accel_pure_rotation() {
        let (p, _) = base();
        let acc = body_accelerations(&MotionState::new(10.0, 0.3, 0.0), &p, 0.0).unwrap();
        assert!((acc.ax - 1.2 * 0.09).abs() < 1e-15);
        assert!((acc.ay + 3.0).abs() < 1e-15);
    }

    #[test]
    fn body_accel_value() {
        let (p, _) = base();
        let acc = body_accelerations(&MotionState::new(10.0, 0.1, 0.0), &p, 0.02).unwrap();
        assert!((acc.ax - 2.012).abs() < 1e-12);
    }

    #[test]
    fn body_accel_matches_composition() {
        let (p, _) = base();
        for &(v, w, d, e) in &[
            (10.0, 0.1, 0.0, 0.02),
            (3.0, 0.4, 0.1, -1.3),
            (30.0, 0.02, 0.05, 0.7),
        ] {
            let s = MotionState::new(v, w, d);
            let direct = body_accelerations(&s, &p, e).unwrap();
            let (n, t) = accel_components(&s, &p, e).unwrap();
            let composed = compose_body_accelerations(n, t, course_angle(&s, &p).unwrap());
            let scale = n.abs().max(t.abs());
            assert!((direct.ax - composed.ax).abs() <= 1e-10 * scale);
            assert!((direct.ay - composed.ay).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn aero_values() {
        let (p, env) = base();
        assert_eq!(aero_forces(0.0, &p, &env), AeroForces { x: 0.0, y: 0.0 });
        assert!((aero_forces(10.0, &p, &env).x - 58.0).abs() < 1e-12);
        let f1 = aero_forces(7.3, &p, &env).x;
        let f2 = aero_forces(14.6, &p, &env).x;
        assert!(rel(f2, 4.0 * f1) < 1e-15);
    }

    #[test]
    fn lateral_aero_uses_area() {
        let (mut p, env) = base();
        p.frontal_area = Some(2.0);
        p.c_y = 0.5;
        let f = aero_forces(10.0, &p, &env);
        assert!((f.y - 0.5 * 0.61 * 2.0 * 100.0).abs() < 1e-12);
    }

    #[test]
    fn rear_vertical_reaction_values() {
        let (p, env) = base();
        let r = rear_vertical_reaction(&MotionState::new(0.0, 0.1, 0.0), &p, &env, 0.0);
        assert!((r - 7063.2).abs() < 1e-9);
        let r = rear_vertical_reaction(&MotionState::new(10.0, 0.1, 0.0), &p, &env, 2.012);
        assert!((r - (7063.2 + 58.0 * 0.084 + 3018.0 * 0.084)).abs() < 1e-9);

        let sym = VehicleParams {
            a: 1.25,
            b: 1.25,
            ..p
        };
        let r = rear_vertical_reaction(&MotionState::new(0.0, 0.1, 0.0), &sym, &env, 0.0);
        assert!((r - 1500.0 * 9.81 / 2.0).abs() < 1e-9);
    }

    #[test]
    fn rear_traction_values() {
        let (p, env) = base();
        let s = MotionState::new(12.0, 0.2, 0.05);
        assert_eq!(
            rear_traction_reaction(&s, &p, &env.with_phi(0.0), 0.3).unwrap(),
            0.0
        );

        // V = 0 and eps_z = -a omega^2 V... at V = 0 the body acceleration is a omega^2;
        // pick omega tiny so the static value dominates to within rounding.
        let s = MotionState::new(0.0, 1e-5, 0.0);
        let r_b = rear_traction_reaction(&s, &p, &env, 0.0).unwrap();
        assert!((r_b - 5650.56).abs() < 1e-6);
    }

    #[test]
    fn rear_traction_expanded_form() {
        let (p, env) = base();
        for &(v, w, d, e) in &[
            (10.0, 0.1, 0.0, 0.02),
            (25.0, 0.3, 0.1, -0.4),
            (2.0, 0.05, 0.02, 1.1),
        ] {
            let s = MotionState::new(v, w, d);
            let tan_d: f64 = d.tan();
            let expanded = p.m_a
                * env.phi
                * (env.g * p.a / p.wheelbase
                    + (p.a * w * w + w * v * tan_d + e * v / w + p.kf / p.m_a * v * v)
                        * (p.h - p.r_o)
                        / p.wheelbase);
            let direct = env.phi
                * rear_vertical_reaction(&s, &p, &env, body_accelerations(&s, &p, e).unwrap().ax);
            assert!(rel(expanded, direct) < 1e-12);
            assert_eq!(direct, rear_traction_reaction(&s, &p, &env, e).unwrap());
        }
    }

    #[test]
    fn omega_factor_values() {
        let (p, env) = base();
        assert_eq!(omega_factor(&env.with_phi(0.0), &p, 0.0), 0.0);
        assert!((omega_factor(&env, &p, 0.0) - 0.168).abs() < 1e-15);
        let half = omega_factor(&env, &p, std::f64::consts::FRAC_PI_3);
        assert!(rel(half, 0.084) < 1e-14);
    }

    #[test]
    fn zero_grip_collapse() {
        let (p, env) = base();
        let env = env.with_phi(0.0);
        for &(v, w, d) in &[(10.0, 0.1, 0.0), (30.0, 0.4, 0.1), (1.0, 0.01, 0.05)] {
            let s = MotionState::new(v, w, d);
            let eps = yaw_angular_acceleration(&s, &p, &env).unwrap();
            let expected = p.a * w * v / (p.a * p.a + p.i_z * p.i_z + p.a * (v / w) * d.tan());
            assert!(rel(eps, expected) < 1e-14);
            assert!(eps > 0.0);
        }
    }

    #[test]
    fn zero_speed_limit() {
        let (p, env) = base();
        let w = 0.1;
        let omega = omega_factor(&env, &p, 0.0);
        // sign follows the elimination of R_B between the lateral and yaw balances
        let expected = -omega * p.a * (env.g / p.lever_arm() + w * w) / (p.a * p.a + p.i_z * p.i_z);
        let at_zero = yaw_angular_acceleration(&MotionState::new(0.0, w, 0.0), &p, &env).unwrap();
        assert!(rel(at_zero, expected) < 1e-14);
        let near = yaw_angular_acceleration(&MotionState::new(1e-9, w, 0.0), &p, &env).unwrap();
        assert!((near - expected).abs() < 1e-7);
        assert!(
            rel(
                yaw_accel_oracle(&MotionState::new(1e-9, w, 0.0), &p, &env).unwrap(),
                near
            ) < 1e-9
        );
    }

    #[test]
    fn singular_yaw_rate_is_error() {
        let (p, env) = base();
        assert!(matches!(
            yaw_angular_acceleration(&MotionState::new(10.0, 5e-7, 0.0), &p, &env),
            Err(SkidError::SingularYawRate(_))
        ));
        assert!(yaw_angular_acceleration(&MotionState::new(10.0, -2e-6, 0.0), &p, &env).is_ok());
    }

    #[test]
    fn singular_denominator_is_error() {
        let (p, env) = base();
        // negative slip angle drives a tan(delta) + Omega negative; pick V so D = 0
        let env = env.with_phi(0.0);
        let d = -0.1f64;
        let w = 0.1;
        let v = -(p.a * p.a + p.i_z * p.i_z) * w / (p.a * d.tan());
        let res = yaw_angular_acceleration(&MotionState::new(v, w, d), &p, &env);
        assert!(
            matches!(res, Err(SkidError::SingularDenominator(_))),
            "{res:?}"
        );
    }

    #[test]
    fn invalid_state_is_error() {
        let (p, env) = base();
        assert!(matches!(
            yaw_angular_acceleration(&MotionState::new(-1.0, 0.1, 0.0), &p, &env),
            Err(SkidError::InvalidState { symbol: "V_X1", .. })
        ));
    }

    #[test]
    fn front_lateral_reaction_zero() {
        let (p, env) = base();
        let r = front_lateral_reaction(
            &MotionState::new(10.0, 0.1, 0.05),
            &p,
            &env.with_phi(0.0),
            0.0,
        )
        .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn system_consistency() {
        let (p, env) = base();
        for &(v, w, d, g) in &[
            (5.0, 0.1, 0.05, 0.0),
            (20.0, 0.5, 0.1, 0.2),
            (33.0, 0.02, 0.0, 0.1),
        ] {
            let s = MotionState::new(v, w, d).with_gamma_b(g);
            let eps = yaw_angular_acceleration(&s, &p, &env).unwrap();
            let r_d = front_lateral_reaction(&s, &p, &env, eps).unwrap();
            let res = lateral_residual(&s, &p, &env, eps, r_d).unwrap();
            let r_b = rear_traction_reaction(&s, &p, &env, eps).unwrap();
            let scale = [
                p.m_a * p.a * eps,
                p.m_a * eps * v / w * d.tan(),
                p.m_a * w * v,
                r_d,
                r_b,
            ]
            .iter()
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
            assert!(res.abs() <= 1e-8 * scale, "residual {res} scale {scale}");
        }
    }

    #[test]
    fn front_reaction_by_hand() {
        let (p, env) = base();
        let s = MotionState::new(10.0, 0.1, 0.05);
        let d = evaluate(&s, &p, &env).unwrap();
        let expected = (2535.0 * d.eps_z + d.r_b * 1.3) / (1.2 * 0.05f64.cos());
        assert!(rel(d.r_delta1, expected) < 1e-13);
    }

    #[test]
    fn longitudinal_residual_zero_forces() {
        let (mut p, env) = base();
        p.kf = 0.0;
        let s = MotionState::new(5.0, 0.1, 0.0);
        // eps_z chosen so the longitudinal acceleration vanishes
        let eps = -p.a * 0.1f64.powi(3) / 5.0;
        assert!(body_accelerations(&s, &p, eps).unwrap().ax.abs() < 1e-15);
        let res = longitudinal_residual(&s, &p, &env, eps, 0.0, 0.0).unwrap();
        assert!(res.abs() < 1e-10);
        let res = longitudinal_residual(&s, &p, &env.with_phi(0.0), eps, 0.0, 0.0).unwrap();
        assert!(res.abs() < 1e-10);
    }

    #[test]
    fn evaluate_fields_consistent() {
        let (p, env) = base();
        let s = MotionState::new(10.0, 0.1, 0.0);
        let d = evaluate(&s, &p, &env).unwrap();
        assert_eq!(d.r_b, env.phi * d.r_z2);
        assert!(d.load_valid());
        assert!(d.damping());
        assert_eq!(d.p_j, p.m_a * d.ax_body);
        assert!(d.theta_c.is_some());
        let at_rest = evaluate(&MotionState::new(0.0, 0.1, 0.0), &p, &env).unwrap();
        assert!(at_rest.theta_c.is_none());
    }

    #[test]
    fn aero_lever_override_reaches_closed_form() {
        let (mut p, env) = base();
        p.h_w = 0.9;
        let s = MotionState::new(30.0, 0.2, 0.05);
        let closed = yaw_angular_acceleration(&s, &p, &env).unwrap();
        let oracle = yaw_accel_oracle(&s, &p, &env).unwrap();
        assert!(rel(closed, oracle) < 1e-9);
        p.h_w = p.h;
        assert!(rel(yaw_angular_acceleration(&s, &p, &env).unwrap(), closed) > 1e-6);
    }
}
