//! Planar model of a rear-drive vehicle skidding in traction mode.
//!
//! The central quantity is the yaw angular acceleration `eps_z` at skid
//! onset. A skid damps itself when `eps_z <= 0`; the speed at which that
//! stops holding is the self-stabilisation boundary `V_stab`.

// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod grip;
pub mod model;
pub mod oracle;
pub mod params;
pub mod sim;
pub mod stability;
pub mod sweep;
pub mod units;

pub use error::{Result, SkidError};
pub use grip::GripModel;
pub use model::{evaluate, yaw_angular_acceleration, SkidDerived};
pub use oracle::yaw_accel_oracle;
pub use params::{Environment, Inertia, MotionState, VehicleParams};
pub use sim::{simulate, SimConfig, SimResult, Termination, TrajectoryRow};
pub use stability::{
    classify, find_v_stab, stability_envelope, SkidOnset, StabilityVerdict, VStab,
};
pub use sweep::{fig2_preset, fig2_presets, run_sweep, Fig2Panel, SweepSpec, SweepTable, SweepVar};
