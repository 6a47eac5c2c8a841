//! Independent yaw acceleration solve used to cross-check the closed form.
//!
//! The lateral force balance, the yaw moment balance and the grip-limited
//! rear reaction are kept as separate relations. With the yaw acceleration
//! as unknown `x`, the rear reaction is affine in `x`, so eliminating the
//! front reaction leaves a scalar affine residual `r(x)` whose root is found
//! from two evaluations.

use crate::error::{Result, SkidError};
use crate::model::{denominator_floor, OMEGA_MIN};
use crate::params::{Environment, MotionState, VehicleParams};

struct Balances<'a> {
    state: &'a MotionState,
    params: &'a VehicleParams,
    env: &'a Environment,
}

impl Balances<'_> {
    fn longitudinal_accel(&self, x: f64) -> f64 {
        let (v, w) = (self.state.v_x1, self.state.omega_z);
        self.params.a * w * w + w * v * self.state.delta_1.tan() + x * v / w
    }

    fn lateral_accel(&self, x: f64) -> f64 {
        let (v, w) = (self.state.v_x1, self.state.omega_z);
        self.params.a * x + x * (v / w) * self.state.delta_1.tan() - w * v
    }

    fn drag(&self) -> f64 {
        self.params.kf * self.state.v_x1 * self.state.v_x1
    }

    fn side_force(&self) -> f64 {
        let area = self.params.frontal_area.unwrap_or(0.0);
        self.params.c_y * self.env.rho / 2.0 * area * self.state.v_x1 * self.state.v_x1
    }

    fn rear_reaction(&self, x: f64) -> f64 {
        let p = self.params;
        let l = p.wheelbase;
        let vertical = p.m_a * self.env.g * p.a / l
            + self.drag() * (p.h_w - p.r_o) / l
            + p.m_a * self.longitudinal_accel(x) * (p.h - p.r_o) / l;
        self.env.phi * vertical
    }

    /// `R_d1 cos(d1)` from the lateral force balance.
    fn front_lateral(&self, x: f64) -> f64 {
        -self.params.m_a * self.lateral_accel(x) - self.rear_reaction(x) * self.state.gamma_b.cos()
            + self.side_force()
    }

    /// Yaw moment balance with the front reaction eliminated.
    fn residual(&self, x: f64) -> f64 {
        let p = self.params;
        p.i_zc * x - self.front_lateral(x) * p.a
            + self.rear_reaction(x) * p.b * self.state.gamma_b.cos()
    }
}

/// Yaw angular acceleration from the force and moment balances, rad/s^2.
pub fn yaw_accel_oracle(
    state: &MotionState,
    params: &VehicleParams,
    env: &Environment,
) -> Result<f64> {
    state.validate()?;
    if state.omega_z.abs() < OMEGA_MIN || !state.omega_z.is_finite() {
        return Err(SkidError::SingularYawRate(state.omega_z));
    }
    if !(params.h > params.r_o) {
        return Err(SkidError::params("h", "lever arm h - r_o must be positive"));
    }
    let balances = Balances { state, params, env };
    let r0 = balances.residual(0.0);
    let slope = balances.residual(1.0) - r0;
    // slope / m_a is the closed-form denominator when L = a + b
    let effective = slope / params.m_a;
    if !(effective.abs() >= denominator_floor(params)) {
        return Err(SkidError::SingularDenominator(effective));
    }
    let x = -r0 / slope;
    // one Newton correction absorbs the rounding of the two-point slope
    Ok(x - balances.residual(x) / slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::yaw_angular_acceleration;

    #[test]
    fn zero_grip_matches_collapse() {
        let p = VehicleParams::baseline();
        let env = Environment::baseline().with_phi(0.0);
        let s = MotionState::new(15.0, 0.2, 0.07);
        let expected =
            p.a * 0.2 * 15.0 / (p.a * p.a + p.i_z * p.i_z + p.a * (15.0 / 0.2) * 0.07f64.tan());
        let x = yaw_accel_oracle(&s, &p, &env).unwrap();
        assert!((x - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn agrees_with_closed_form() {
        let p = VehicleParams::baseline();
        let env = Environment::baseline();
        for &(v, w, d, g) in &[
            (0.5, 0.01, 0.0, 0.0),
            (10.0, 0.1, 0.05, 0.1),
            (35.0, 0.5, 0.15, 0.3),
        ] {
            let s = MotionState::new(v, w, d).with_gamma_b(g);
            let closed = yaw_angular_acceleration(&s, &p, &env).unwrap();
            let oracle = yaw_accel_oracle(&s, &p, &env).unwrap();
            assert!((closed - oracle).abs() / closed.abs().max(1.0) < 1e-9);
        }
    }

    #[test]
    fn same_singularities() {
        let p = VehicleParams::baseline();
        let env = Environment::baseline();
        assert!(matches!(
            yaw_accel_oracle(&MotionState::new(10.0, 0.0, 0.0), &p, &env),
            Err(SkidError::SingularYawRate(_))
        ));
    }
}
