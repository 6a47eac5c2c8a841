//! Grid evaluation of the yaw angular acceleration over one swept variable,
//! optionally repeated for a list of values of a second variable.

use rayon::prelude::*;

use crate::error::{Result, SkidError};
use crate::grip::GripModel;
use crate::model::{yaw_angular_acceleration, OMEGA_MIN};
use crate::params::{Environment, MotionState, VehicleParams};

/// Upper bound on grid size along the swept axis.
pub const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVar {
    VX1,
    OmegaZ,
    Phi,
    SX,
    Delta1,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::VX1 => "v_x1",
            SweepVar::OmegaZ => "omega_z",
            SweepVar::Phi => "phi",
            SweepVar::SX => "s_x",
            SweepVar::Delta1 => "delta_1",
        }
    }

    fn apply(self, value: f64, state: &mut MotionState, env: &mut Environment) {
        match self {
            SweepVar::VX1 => state.v_x1 = value,
            SweepVar::OmegaZ => state.omega_z = value,
            SweepVar::Phi => env.phi = value,
            SweepVar::SX => state.s_x = value,
            SweepVar::Delta1 => state.delta_1 = value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl SweepRange {
    pub fn points(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.hi
                } else {
                    self.lo + i as f64 * step
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub var: SweepVar,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub name: String,
    pub x_var: SweepVar,
    pub x_range: SweepRange,
    pub series: Option<Series>,
    pub base_state: MotionState,
    pub params: VehicleParams,
    pub env: Environment,
    /// When present, each cell's grip coefficient is `grip(s_x)`; otherwise
    /// `env.phi` (possibly swept) is used.
    pub grip: Option<GripModel>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let r = self.x_range;
        if !(r.lo.is_finite() && r.hi.is_finite() && r.lo < r.hi) {
            return Err(SkidError::params(
                "x_range",
                format!("need lo < hi, got [{}, {}]", r.lo, r.hi),
            ));
        }
        if !(2..=MAX_POINTS).contains(&r.n) {
            return Err(SkidError::params(
                "n",
                format!("grid size must be in [2, {MAX_POINTS}], got {}", r.n),
            ));
        }
        if let Some(series) = &self.series {
            if series.var == self.x_var {
                return Err(SkidError::params(
                    "series",
                    "series variable must differ from the swept one",
                ));
            }
            if series.values.is_empty() || series.values.iter().any(|v| !v.is_finite()) {
                return Err(SkidError::params(
                    "series",
                    "series values must be finite and non-empty",
                ));
            }
        }
        if let Some(grip) = &self.grip {
            grip.validate()?;
        }
        self.params.validate_with(&self.env)
    }

    fn cell(&self, x: f64, series_value: Option<f64>) -> Result<f64> {
        let mut state = self.base_state;
        let mut env = self.env;
        self.x_var.apply(x, &mut state, &mut env);
        if let (Some(series), Some(v)) = (&self.series, series_value) {
            series.var.apply(v, &mut state, &mut env);
        }
        if let Some(grip) = &self.grip {
            env.phi = grip.grip_coefficient(state.s_x)?;
        }
        env.validate()?;
        yaw_angular_acceleration(&state, &self.params, &env)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub x_var: SweepVar,
    pub series: Option<Series>,
    pub x: Vec<f64>,
    /// `cells[i][j]`: swept value `i`, series value `j`.
    pub cells: Vec<Vec<Result<f64>>>,
}

impl SweepTable {
    pub fn columns(&self) -> usize {
        self.series.as_ref().map_or(1, |s| s.values.len())
    }

    pub fn singular_cells(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_err()).count()
    }

    /// Column `j` as plain numbers; `NaN` marks failed cells.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.cells
            .iter()
            .map(|row| *row[j].as_ref().unwrap_or(&f64::NAN))
            .collect()
    }
}

/// Evaluates every grid cell. Cells are independent and may run in parallel;
/// the table order is always the grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let x = spec.x_range.points();
    let series_values: Vec<Option<f64>> = match &spec.series {
        Some(series) => series.values.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let cols = series_values.len();
    let flat: Vec<Result<f64>> = (0..x.len() * cols)
        .into_par_iter()
        .map(|k| spec.cell(x[k / cols], series_values[k % cols]))
        .collect();
    let mut cells = Vec::with_capacity(x.len());
    let mut it = flat.into_iter();
    for _ in 0..x.len() {
        cells.push(it.by_ref().take(cols).collect());
    }
    Ok(SweepTable {
        x_var: spec.x_var,
        series: spec.series.clone(),
        x,
        cells,
    })
}

/// Slip-angle series used by the speed and slip panels, rad.
pub fn slip_angle_series() -> Vec<f64> {
    [0.0f64, 2.0, 4.0, 8.0]
        .iter()
        .map(|d| d.to_radians())
        .collect()
}

/// Initial-speed series used by the grip, yaw-rate panels, m/s.
pub const SPEED_SERIES: [f64; 3] = [5.0, 20.0, 35.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fig2Panel {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Fig2Panel {
    pub const ALL: [Fig2Panel; 6] = [Self::A, Self::B, Self::C, Self::D, Self::E, Self::F];

    pub fn name(self) -> &'static str {
        match self {
            Self::A => "fig2a",
            Self::B => "fig2b",
            Self::C => "fig2c",
            Self::D => "fig2d",
            Self::E => "fig2e",
            Self::F => "fig2f",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// Builds one panel preset on the given vehicle and environment. `grip` is
/// only used by the slip panel, which defaults to dry-asphalt Burckhardt.
pub fn fig2_preset(
    panel: Fig2Panel,
    params: VehicleParams,
    env: Environment,
    grip: Option<GripModel>,
) -> SweepSpec {
    let speed = |omega_z: f64| SweepSpec {
        name: panel.name().to_string(),
        x_var: SweepVar::VX1,
        x_range: SweepRange {
            lo: 1.0,
            hi: 35.0,
            n: 69,
        },
        series: Some(Series {
            var: SweepVar::Delta1,
            values: slip_angle_series(),
        }),
        base_state: MotionState::new(1.0, omega_z, 0.0),
        params,
        env,
        grip: None,
    };
    match panel {
        Fig2Panel::A => speed(0.1),
        Fig2Panel::B => speed(0.01),
        Fig2Panel::D => speed(0.5),
        Fig2Panel::C => SweepSpec {
            name: panel.name().to_string(),
            x_var: SweepVar::Phi,
            x_range: SweepRange {
                lo: 0.05,
                hi: 0.9,
                n: 86,
            },
            series: Some(Series {
                var: SweepVar::VX1,
                values: SPEED_SERIES.to_vec(),
            }),
            base_state: MotionState::new(SPEED_SERIES[0], 0.2, 0.0),
            params,
            env,
            grip: None,
        },
        Fig2Panel::E => SweepSpec {
            name: panel.name().to_string(),
            x_var: SweepVar::OmegaZ,
            x_range: SweepRange {
                lo: 0.01,
                hi: 0.5,
                n: 50,
            },
            series: Some(Series {
                var: SweepVar::VX1,
                values: SPEED_SERIES.to_vec(),
            }),
            base_state: MotionState::new(SPEED_SERIES[0], 0.01_f64.max(OMEGA_MIN), 0.0),
            params,
            env,
            grip: None,
        },
        Fig2Panel::F => SweepSpec {
            name: panel.name().to_string(),
            x_var: SweepVar::SX,
            x_range: SweepRange {
                lo: 0.0,
                hi: 1.0,
                n: 101,
            },
            series: Some(Series {
                var: SweepVar::Delta1,
                values: slip_angle_series(),
            }),
            base_state: MotionState::new(20.0, 0.1, 0.0),
            params,
            env,
            grip: Some(grip.unwrap_or_default()),
        },
    }
}

/// The six panels on the baseline vehicle and dry road.
pub fn fig2_presets() -> Vec<SweepSpec> {
    Fig2Panel::ALL
        .into_iter()
        .map(|p| fig2_preset(p, VehicleParams::baseline(), Environment::baseline(), None))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_grip_two_point_sweep() {
        let spec = SweepSpec {
            name: "free".into(),
            x_var: SweepVar::VX1,
            x_range: SweepRange {
                lo: 5.0,
                hi: 25.0,
                n: 2,
            },
            series: None,
            base_state: MotionState::new(1.0, 0.1, 0.02),
            params: VehicleParams::baseline(),
            env: Environment::baseline().with_phi(0.0),
            grip: None,
        };
        let t = run_sweep(&spec).unwrap();
        assert_eq!(t.x, vec![5.0, 25.0]);
        assert!(t.column(0).iter().all(|&e| e > 0.0));
    }

    #[test]
    fn constant_grip_columns_flat_in_slip() {
        let spec = fig2_preset(
            Fig2Panel::F,
            VehicleParams::baseline(),
            Environment::baseline(),
            Some(GripModel::Constant { phi: 0.6 }),
        );
        let t = run_sweep(&spec).unwrap();
        for j in 0..t.columns() {
            let col = t.column(j);
            assert!(col.iter().all(|&e| e == col[0]));
        }
    }

    #[test]
    fn presets_shape() {
        let presets = fig2_presets();
        assert_eq!(presets.len(), 6);
        assert_eq!(presets[0].x_var, SweepVar::VX1);
        assert_eq!(presets[0].base_state.omega_z, 0.1);
        assert_eq!(presets[1].base_state.omega_z, 0.01);
        assert_eq!(presets[2].x_var, SweepVar::Phi);
        assert_eq!(presets[2].base_state.omega_z, 0.2);
        assert_eq!(presets[3].base_state.omega_z, 0.5);
        assert_eq!(presets[4].x_var, SweepVar::OmegaZ);
        assert_eq!(presets[5].x_var, SweepVar::SX);
        for p in &presets {
            assert_eq!(p.params, VehicleParams::baseline());
            let t = run_sweep(p).unwrap();
            assert_eq!(t.x.len(), p.x_range.n);
            assert_eq!(t.singular_cells(), 0, "{}", p.name);
            assert!(t.x.windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn singular_cells_are_marked() {
        let spec = SweepSpec {
            name: "yaw".into(),
            x_var: SweepVar::OmegaZ,
            x_range: SweepRange {
                lo: 0.0,
                hi: 0.1,
                n: 3,
            },
            series: None,
            base_state: MotionState::new(10.0, 0.1, 0.0),
            params: VehicleParams::baseline(),
            env: Environment::baseline(),
            grip: None,
        };
        let t = run_sweep(&spec).unwrap();
        assert!(matches!(t.cells[0][0], Err(SkidError::SingularYawRate(_))));
        assert_eq!(t.singular_cells(), 1);
        assert!(t.column(0)[0].is_nan());
    }

    #[test]
    fn rejects_bad_spec() {
        let mut spec = fig2_presets().remove(0);
        spec.x_range.n = 1;
        assert!(run_sweep(&spec).is_err());
        let mut spec = fig2_presets().remove(0);
        spec.x_range.hi = spec.x_range.lo;
        assert!(run_sweep(&spec).is_err());
    }
}
