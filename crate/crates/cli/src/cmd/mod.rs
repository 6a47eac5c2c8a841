mod check;
mod eval;
mod simulate;
mod sweep;
mod vstab;

use skidsim_core::units::kmh_to_mps;
use skidsim_core::{Environment, MotionState};

use crate::cli::{Cli, Command, ConfigArg, StateArgs};
use crate::config::{RunConfig, Setup};
use crate::CliError;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval(a) => eval::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Vstab(a) => vstab::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Check(a) => check::run(a),
    }
}

/// Loads and resolves a configuration without enforcing parameter invariants.
fn load(arg: &ConfigArg) -> Result<Setup, CliError> {
    RunConfig::load(&arg.config)?.resolve()
}

/// Loads a configuration that must satisfy every parameter invariant.
fn load_valid(arg: &ConfigArg) -> Result<Setup, CliError> {
    let setup = load(arg)?;
    setup.validate()?;
    Ok(setup)
}

/// Applies command-line overrides to the configured state and grip.
///
/// The grip coefficient comes from the configuration, is replaced by the
/// configured grip model when `--s-x` is given, and finally by `--phi`.
fn apply_state(setup: &Setup, args: &StateArgs) -> Result<(MotionState, Environment), CliError> {
    let mut state = setup.state;
    let mut env = setup.env;
    if let Some(v) = args.v {
        state.v_x1 = v;
    }
    if let Some(v) = args.v_kmh {
        state.v_x1 = kmh_to_mps(v);
    }
    if let Some(w) = args.omega {
        state.omega_z = w;
    }
    if let Some(d) = args.delta {
        state.delta_1 = d.to_radians();
    }
    if let Some(g) = args.gamma {
        state.gamma_b = g.to_radians();
    }
    if let Some(s) = args.s_x {
        state.s_x = s;
        if let Some(grip) = &setup.grip {
            env.phi = grip.grip_coefficient(s)?;
        }
    }
    if let Some(phi) = args.phi {
        env.phi = phi;
    }
    state.validate()?;
    env.validate_with_bound(setup.phi_max)?;
    Ok((state, env))
}
