//! Vehicle, environment and kinematic-state inputs of the skid model.
//!
//! All quantities are SI: metres, kilograms, seconds, newtons, radians.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Result, SkidError};

/// Absolute tolerance on `L = a + b`, metres.
pub const WHEELBASE_TOL: f64 = 1e-9;
/// Relative tolerance on `I_zc = m_a * i_z^2`.
pub const INERTIA_REL_TOL: f64 = 1e-9;
/// Relative tolerance on `kF = c_X * rho / 2 * F`.
pub const DRAG_REL_TOL: f64 = 1e-6;
/// Default upper plausibility bound on the grip coefficient.
pub const DEFAULT_PHI_MAX: f64 = 1.5;

/// Geometry, mass, inertia and aerodynamic constants of a rear-drive vehicle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleParams {
    /// Mass, kg.
    pub m_a: f64,
    /// Centre of mass to front axle, m.
    pub a: f64,
    /// Centre of mass to rear axle, m.
    pub b: f64,
    /// Wheelbase `L`, m.
    pub wheelbase: f64,
    /// Centre-of-mass height, m.
    pub h: f64,
    /// Height of the aerodynamic pressure centre, m. Usually equal to `h`.
    pub h_w: f64,
    /// Dynamic wheel radius, m.
    pub r_o: f64,
    /// Radius of inertia about the vertical axis through the centre of mass, m.
    pub i_z: f64,
    /// Yaw moment of inertia, kg m^2.
    pub i_zc: f64,
    /// Lumped longitudinal drag factor, N s^2 / m^2.
    pub kf: f64,
    /// Frontal projected area, m^2.
    pub frontal_area: Option<f64>,
    /// Longitudinal drag coefficient.
    pub c_x: Option<f64>,
    /// Lateral drag coefficient.
    pub c_y: f64,
    /// Rolling-resistance coefficient, used only by the longitudinal balance diagnostic.
    pub f_roll: f64,
}

/// Either of the two equivalent ways to state yaw inertia.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Inertia {
    Radius(f64),
    Moment(f64),
}

/// Converts between radius of inertia and yaw moment of inertia,
/// returning `(i_z, I_zc)`.
pub fn inertia_conversions(m_a: f64, given: Inertia) -> Result<(f64, f64)> {
    if !(m_a > 0.0) || !m_a.is_finite() {
        return Err(SkidError::params(
            "m_a",
            format!("mass must be positive, got {m_a}"),
        ));
    }
    match given {
        Inertia::Radius(i_z) => {
            if !(i_z > 0.0) || !i_z.is_finite() {
                return Err(SkidError::params(
                    "i_z",
                    format!("must be positive, got {i_z}"),
                ));
            }
            Ok((i_z, m_a * i_z * i_z))
        }
        Inertia::Moment(i_zc) => {
            if !(i_zc > 0.0) || !i_zc.is_finite() {
                return Err(SkidError::params(
                    "I_zc",
                    format!("must be positive, got {i_zc}"),
                ));
            }
            Ok(((i_zc / m_a).sqrt(), i_zc))
        }
    }
}

impl VehicleParams {
    /// Conventional rear-drive passenger car: a = 1.2 m, L = 2.5 m,
    /// h = 0.5 m, r_o = 0.29 m, i_z = 1.3 m, m_a = 1500 kg, kF = 0.58 N s^2/m^2.
    pub fn baseline() -> Self {
        let (i_z, i_zc) = inertia_conversions(1500.0, Inertia::Radius(1.3)).expect("valid");
        Self {
            m_a: 1500.0,
            a: 1.2,
            b: 1.3,
            wheelbase: 2.5,
            h: 0.5,
            h_w: 0.5,
            r_o: 0.29,
            i_z,
            i_zc,
            kf: 0.58,
            frontal_area: None,
            c_x: None,
            c_y: 0.0,
            f_roll: 0.015,
        }
    }

    /// Lever arm `h - r_o` of the inertia force about the wheel centres.
    pub fn lever_arm(&self) -> f64 {
        self.h - self.r_o
    }

    /// Every violated parameter invariant, checked independently.
    pub fn violations(&self) -> Vec<SkidError> {
        let mut out = Vec::new();
        let finite = [
            ("m_a", self.m_a),
            ("a", self.a),
            ("b", self.b),
            ("L", self.wheelbase),
            ("h", self.h),
            ("h_w", self.h_w),
            ("r_o", self.r_o),
            ("i_z", self.i_z),
            ("I_zc", self.i_zc),
            ("kF", self.kf),
            ("c_Y", self.c_y),
            ("f_roll", self.f_roll),
        ];
        for (symbol, v) in finite {
            if !v.is_finite() {
                out.push(SkidError::params(
                    symbol,
                    format!("must be finite, got {v}"),
                ));
            }
        }
        if !(self.m_a > 0.0) {
            out.push(SkidError::params("m_a", "mass must be positive"));
        }
        if !(self.a > 0.0) {
            out.push(SkidError::params(
                "a",
                "front axle distance must be positive",
            ));
        }
        if !(self.b > 0.0) {
            out.push(SkidError::params(
                "b",
                "rear axle distance must be positive",
            ));
        }
        if !((self.wheelbase - (self.a + self.b)).abs() <= WHEELBASE_TOL) {
            out.push(SkidError::params(
                "L",
                format!(
                    "wheelbase invariant L = a + b violated: L = {}, a + b = {}",
                    self.wheelbase,
                    self.a + self.b
                ),
            ));
        }
        if !(self.r_o >= 0.0) {
            out.push(SkidError::params(
                "r_o",
                "wheel radius must be non-negative",
            ));
        }
        if !(self.h > self.r_o) {
            out.push(SkidError::params(
                "h",
                format!(
                    "lever arm h - r_o must be positive, got {}",
                    self.h - self.r_o
                ),
            ));
        }
        if !(self.i_z > 0.0) {
            out.push(SkidError::params(
                "i_z",
                "radius of inertia must be positive",
            ));
        }
        let expected = self.m_a * self.i_z * self.i_z;
        if !((self.i_zc - expected).abs() <= INERTIA_REL_TOL * expected.abs()) {
            out.push(SkidError::params(
                "I_zc",
                format!(
                    "inertia invariant I_zc = m_a * i_z^2 violated: I_zc = {}, m_a * i_z^2 = {expected}",
                    self.i_zc
                ),
            ));
        }
        if !(self.kf >= 0.0) {
            out.push(SkidError::params("kF", "drag factor must be non-negative"));
        }
        if let Some(area) = self.frontal_area {
            if !(area > 0.0) || !area.is_finite() {
                out.push(SkidError::params("F", "frontal area must be positive"));
            }
        }
        if let Some(c_x) = self.c_x {
            if !(c_x >= 0.0) || !c_x.is_finite() {
                out.push(SkidError::params(
                    "c_X",
                    "drag coefficient must be non-negative",
                ));
            }
        }
        if self.c_y != 0.0 && self.frontal_area.is_none() {
            out.push(SkidError::params(
                "c_Y",
                "lateral drag needs the frontal area F",
            ));
        }
        if !(self.f_roll >= 0.0) {
            out.push(SkidError::params("f_roll", "must be non-negative"));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            Some(err) => Err(err),
            None => Ok(()),
        }
    }

    /// Checks `kF = c_X * rho / 2 * F` when both `c_X` and `F` are present.
    /// Without them `kF` is taken as given.
    pub fn check_drag_consistency(&self, rho: f64) -> Result<()> {
        let (Some(c_x), Some(area)) = (self.c_x, self.frontal_area) else {
            return Ok(());
        };
        let implied = c_x * rho / 2.0 * area;
        if (self.kf - implied).abs() <= DRAG_REL_TOL * implied.abs().max(self.kf.abs()) {
            Ok(())
        } else {
            Err(SkidError::params(
                "kF",
                format!(
                    "drag consistency kF = c_X * rho / 2 * F violated: kF = {}, c_X * rho / 2 * F = {implied}",
                    self.kf
                ),
            ))
        }
    }

    /// Full validation including the drag cross-check against `env`.
    pub fn validate_with(&self, env: &Environment) -> Result<()> {
        self.validate()?;
        self.check_drag_consistency(env.rho)
    }
}

/// Road and air context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    /// Grip coefficient.
    pub phi: f64,
    /// Air density, kg/m^3.
    pub rho: f64,
    /// Gravitational acceleration, m/s^2.
    pub g: f64,
}

impl Environment {
    /// Dry road, sea-level air: phi = 0.8, rho = 1.22 kg/m^3, g = 9.81 m/s^2.
    pub fn baseline() -> Self {
        Self {
            phi: 0.8,
            rho: 1.22,
            g: 9.81,
        }
    }

    pub fn with_phi(self, phi: f64) -> Self {
        Self { phi, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with_bound(DEFAULT_PHI_MAX)
    }

    pub fn validate_with_bound(&self, phi_max: f64) -> Result<()> {
        if !(self.phi >= 0.0 && self.phi <= phi_max) {
            return Err(SkidError::params(
                "phi",
                format!(
                    "grip coefficient must lie in [0, {phi_max}], got {}",
                    self.phi
                ),
            ));
        }
        if !(self.rho > 0.0) || !self.rho.is_finite() {
            return Err(SkidError::params("rho", "air density must be positive"));
        }
        if !(self.g > 0.0) || !self.g.is_finite() {
            return Err(SkidError::params("g", "gravity must be positive"));
        }
        Ok(())
    }
}

/// Instantaneous kinematic state at skid onset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionState {
    /// Longitudinal body-frame speed, m/s.
    pub v_x1: f64,
    /// Yaw rate, rad/s.
    pub omega_z: f64,
    /// Front slip (drift) angle, rad.
    pub delta_1: f64,
    /// Direction of the rear-axle resultant reaction, rad.
    pub gamma_b: f64,
    /// Drive-wheel relative slip in [0, 1].
    pub s_x: f64,
}

impl MotionState {
    pub fn new(v_x1: f64, omega_z: f64, delta_1: f64) -> Self {
        Self {
            v_x1,
            omega_z,
            delta_1,
            gamma_b: 0.0,
            s_x: 0.0,
        }
    }

    pub fn with_gamma_b(self, gamma_b: f64) -> Self {
        Self { gamma_b, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("V_X1", self.v_x1),
            ("omega_z", self.omega_z),
            ("delta_1", self.delta_1),
            ("gamma_B", self.gamma_b),
            ("S_x", self.s_x),
        ];
        for (symbol, v) in fields {
            if !v.is_finite() {
                return Err(SkidError::state(symbol, format!("must be finite, got {v}")));
            }
        }
        if self.v_x1 < 0.0 {
            return Err(SkidError::state(
                "V_X1",
                format!("must be non-negative, got {}", self.v_x1),
            ));
        }
        if self.delta_1.abs() >= FRAC_PI_2 {
            return Err(SkidError::state("delta_1", "|delta_1| must be below pi/2"));
        }
        if self.gamma_b.abs() >= FRAC_PI_2 {
            return Err(SkidError::state("gamma_B", "|gamma_B| must be below pi/2"));
        }
        if !(0.0..=1.0).contains(&self.s_x) {
            return Err(SkidError::state("S_x", "must lie in [0, 1]"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_inertia() {
        let (_, i_zc) = inertia_conversions(1500.0, Inertia::Radius(1.3)).unwrap();
        assert!((i_zc - 2535.0).abs() < 1e-9);
        assert!(VehicleParams::baseline().validate().is_ok());
    }

    #[test]
    fn inertia_round_trip() {
        let (_, i_zc) = inertia_conversions(1500.0, Inertia::Radius(1.3)).unwrap();
        let (i_z, _) = inertia_conversions(1500.0, Inertia::Moment(i_zc)).unwrap();
        assert!((i_z - 1.3).abs() <= 1e-12 * 1.3);
    }

    #[test]
    fn unit_radius() {
        let (i_z, _) = inertia_conversions(800.0, Inertia::Moment(800.0)).unwrap();
        assert_eq!(i_z, 1.0);
    }

    #[test]
    fn nonpositive_inertia_rejected() {
        assert!(matches!(
            inertia_conversions(1500.0, Inertia::Radius(0.0)),
            Err(SkidError::InvalidParams { symbol: "i_z", .. })
        ));
        assert!(matches!(
            inertia_conversions(-1.0, Inertia::Moment(10.0)),
            Err(SkidError::InvalidParams { symbol: "m_a", .. })
        ));
    }

    #[test]
    fn wheelbase_mismatch_is_named() {
        let p = VehicleParams {
            wheelbase: 2.6,
            ..VehicleParams::baseline()
        };
        let errs = p.violations();
        assert_eq!(errs.len(), 1);
        assert!(matches!(
            errs[0],
            SkidError::InvalidParams { symbol: "L", .. }
        ));
    }

    #[test]
    fn lever_arm_must_be_positive() {
        let p = VehicleParams {
            r_o: 0.5,
            ..VehicleParams::baseline()
        };
        assert!(matches!(
            p.validate(),
            Err(SkidError::InvalidParams { symbol: "h", .. })
        ));
    }

    #[test]
    fn drag_consistency() {
        let env = Environment::baseline();
        let area = 2.0;
        let c_x = 0.58 / (env.rho / 2.0 * area);
        let mut p = VehicleParams {
            frontal_area: Some(area),
            c_x: Some(c_x),
            ..VehicleParams::baseline()
        };
        assert!(p.validate_with(&env).is_ok());
        p.kf = 0.60;
        assert!(matches!(
            p.validate_with(&env),
            Err(SkidError::InvalidParams { symbol: "kF", .. })
        ));
    }

    #[test]
    fn state_bounds() {
        assert!(MotionState::new(-1.0, 0.1, 0.0).validate().is_err());
        assert!(MotionState::new(1.0, 0.1, FRAC_PI_2).validate().is_err());
        assert!(MotionState::new(0.0, 0.1, 0.0).validate().is_ok());
        assert!(Environment::baseline().with_phi(1.6).validate().is_err());
        assert!(Environment::baseline()
            .with_phi(1.6)
            .validate_with_bound(2.0)
            .is_ok());
    }
}
