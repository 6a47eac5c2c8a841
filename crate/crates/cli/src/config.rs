//! JSON run configuration. The accepted keys are described, with units, in
//! `schema/config.schema.json`; unknown keys are rejected.

use std::path::Path;

use serde::Deserialize;
use skidsim_core::params::{inertia_conversions, DEFAULT_PHI_MAX};
use skidsim_core::{Environment, GripModel, Inertia, MotionState, VehicleParams};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub vehicle: VehicleBlock,
    pub environment: EnvironmentBlock,
    #[serde(default)]
    pub grip: Option<GripBlock>,
    #[serde(default)]
    pub state: StateBlock,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleBlock {
    pub m_a: f64,
    pub a: f64,
    pub b: Option<f64>,
    pub wheelbase: Option<f64>,
    pub h: f64,
    pub h_w: Option<f64>,
    pub r_o: f64,
    pub i_z: Option<f64>,
    pub i_zc: Option<f64>,
    pub kf: Option<f64>,
    pub frontal_area: Option<f64>,
    pub c_x: Option<f64>,
    #[serde(default)]
    pub c_y: f64,
    #[serde(default = "default_f_roll")]
    pub f_roll: f64,
}

fn default_f_roll() -> f64 {
    0.015
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentBlock {
    pub phi: f64,
    pub rho: f64,
    pub g: f64,
    #[serde(default = "default_phi_max")]
    pub phi_max: f64,
}

fn default_phi_max() -> f64 {
    DEFAULT_PHI_MAX
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum GripBlock {
    Constant { phi: f64 },
    LinearSaturating { phi_max: f64, s_crit: f64 },
    Burckhardt { c1: f64, c2: f64, c3: f64 },
}

impl From<GripBlock> for GripModel {
    fn from(b: GripBlock) -> Self {
        match b {
            GripBlock::Constant { phi } => GripModel::Constant { phi },
            GripBlock::LinearSaturating { phi_max, s_crit } => {
                GripModel::LinearSaturating { phi_max, s_crit }
            }
            GripBlock::Burckhardt { c1, c2, c3 } => GripModel::Burckhardt { c1, c2, c3 },
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateBlock {
    #[serde(default = "default_speed")]
    pub v_x1: f64,
    #[serde(default = "default_yaw_rate")]
    pub omega_z: f64,
    #[serde(default)]
    pub delta_1_deg: f64,
    #[serde(default)]
    pub gamma_b_deg: f64,
    #[serde(default)]
    pub s_x: f64,
}

fn default_speed() -> f64 {
    10.0
}

fn default_yaw_rate() -> f64 {
    0.1
}

impl Default for StateBlock {
    fn default() -> Self {
        Self {
            v_x1: default_speed(),
            omega_z: default_yaw_rate(),
            delta_1_deg: 0.0,
            gamma_b_deg: 0.0,
            s_x: 0.0,
        }
    }
}

/// Configuration resolved into model types. Parameter invariants are not yet
/// enforced; see [`Setup::validate`].
#[derive(Debug, Clone)]
pub struct Setup {
    pub params: VehicleParams,
    pub env: Environment,
    pub phi_max: f64,
    pub grip: Option<GripModel>,
    pub state: MotionState,
}

fn missing(symbol: &str, reason: &str) -> CliError {
    CliError::Validation(format!("config: `{symbol}` {reason}"))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn resolve(&self) -> Result<Setup, CliError> {
        let v = &self.vehicle;
        let (b, wheelbase) = match (v.b, v.wheelbase) {
            (Some(b), Some(l)) => (b, l),
            (Some(b), None) => (b, v.a + b),
            (None, Some(l)) => (l - v.a, l),
            (None, None) => return Err(missing("b", "or `wheelbase` is required")),
        };
        let (i_z, i_zc) = match (v.i_z, v.i_zc) {
            (Some(i_z), Some(i_zc)) => (i_z, i_zc),
            (Some(i_z), None) => inertia_conversions(v.m_a, Inertia::Radius(i_z))?,
            (None, Some(i_zc)) => inertia_conversions(v.m_a, Inertia::Moment(i_zc))?,
            (None, None) => return Err(missing("i_z", "or `i_zc` is required")),
        };
        let rho = self.environment.rho;
        let kf = match (v.kf, v.c_x, v.frontal_area) {
            (Some(kf), _, _) => kf,
            (None, Some(c_x), Some(area)) => c_x * rho / 2.0 * area,
            _ => {
                return Err(missing(
                    "kf",
                    "is required unless both `c_x` and `frontal_area` are given",
                ))
            }
        };
        let params = VehicleParams {
            m_a: v.m_a,
            a: v.a,
            b,
            wheelbase,
            h: v.h,
            h_w: v.h_w.unwrap_or(v.h),
            r_o: v.r_o,
            i_z,
            i_zc,
            kf,
            frontal_area: v.frontal_area,
            c_x: v.c_x,
            c_y: v.c_y,
            f_roll: v.f_roll,
        };
        let e = &self.environment;
        let env = Environment {
            phi: e.phi,
            rho: e.rho,
            g: e.g,
        };
        let s = &self.state;
        let state = MotionState {
            v_x1: s.v_x1,
            omega_z: s.omega_z,
            delta_1: s.delta_1_deg.to_radians(),
            gamma_b: s.gamma_b_deg.to_radians(),
            s_x: s.s_x,
        };
        Ok(Setup {
            params,
            env,
            phi_max: e.phi_max,
            grip: self.grip.map(GripModel::from),
            state,
        })
    }
}

impl Setup {
    pub fn validate(&self) -> Result<(), CliError> {
        self.params.validate_with(&self.env)?;
        self.env.validate_with_bound(self.phi_max)?;
        if let Some(grip) = &self.grip {
            grip.validate()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "vehicle": {"m_a": 1500, "a": 1.2, "wheelbase": 2.5, "h": 0.5, "r_o": 0.29, "i_z": 1.3, "kf": 0.58},
        "environment": {"phi": 0.8, "rho": 1.22, "g": 9.81}
    }"#;

    #[test]
    fn minimal_config_matches_baseline() {
        let setup = RunConfig::parse(MINIMAL).unwrap().resolve().unwrap();
        let base = VehicleParams::baseline();
        assert!((setup.params.b - base.b).abs() < 1e-15);
        assert!((setup.params.i_zc - base.i_zc).abs() < 1e-9);
        assert_eq!(setup.params.h_w, 0.5);
        assert_eq!(setup.env, Environment::baseline());
        setup.validate().unwrap();
    }

    #[test]
    fn unknown_key_rejected() {
        let text = MINIMAL.replace("\"kf\"", "\"kF\"");
        let err = RunConfig::parse(&text).unwrap_err();
        assert!(err.to_string().contains("kF"), "{err}");
    }

    #[test]
    fn unknown_grip_key_rejected() {
        let text = MINIMAL.replace(
            "\"environment\"",
            "\"grip\": {\"model\": \"constant\", \"phi\": 0.5, \"psi\": 1}, \"environment\"",
        );
        assert!(RunConfig::parse(&text).is_err());
    }

    #[test]
    fn kf_from_drag_coefficient() {
        let text = MINIMAL.replace("\"kf\": 0.58", "\"c_x\": 0.4, \"frontal_area\": 2.0");
        let setup = RunConfig::parse(&text).unwrap().resolve().unwrap();
        assert!((setup.params.kf - 0.4 * 0.61 * 2.0).abs() < 1e-15);
    }

    #[test]
    fn missing_inertia() {
        let text = MINIMAL.replace(", \"i_z\": 1.3", "");
        assert!(RunConfig::parse(&text).unwrap().resolve().is_err());
    }
}
